#include "alibi/testkit.hpp"

#include <algorithm>
#include <random>

#include "alibi/error.hpp"

namespace alibi {

std::vector<ApproxMatch> naive_find_all(std::string_view text, std::string_view pattern,
                                        uint32_t k) {
    if (pattern.empty()) throw ParameterError("empty pattern");
    const size_t n = text.size();
    const size_t m = pattern.size();
    std::vector<ApproxMatch> out;

    // next separator at or after each position, as 0-based index (n if none)
    std::vector<size_t> next_sep(n + 1, n);
    for (size_t i = n; i-- > 0;)
        next_sep[i] = static_cast<uint8_t>(text[i]) == kSeparator ? i : next_sep[i + 1];

    if (k == 0) {
        for (size_t s = 0; s + m <= n; ++s) {
            if (next_sep[s] < s + m) continue;
            if (text.compare(s, m, pattern) == 0)
                out.push_back({s + 1, s + m, 0});
        }
        return out;
    }

    // banded DP per start: row i = pattern prefix length, offset j = window
    // width used, D[i][j] = edit(P[1..i], T[s+1..s+j]) with |j - i| <= k
    const size_t band = 2 * static_cast<size_t>(k) + 1;
    std::vector<uint32_t> cur(band), nxt(band);
    const uint32_t inf = 1u << 30;
    for (size_t s = 0; s < n; ++s) {
        size_t window = std::min(m + k, n - s);
        // row 0: D[0][j] = j for j <= k
        for (size_t b = 0; b < band; ++b) cur[b] = inf;
        for (size_t j = 0; j <= std::min<size_t>(k, window); ++j) cur[j + k] = static_cast<uint32_t>(j);
        bool alive = true;
        for (size_t i = 1; i <= m && alive; ++i) {
            alive = false;
            size_t jlo = i > k ? i - k : 0;
            size_t jhi = std::min(i + static_cast<size_t>(k), window);
            for (size_t b = 0; b < band; ++b) nxt[b] = inf;
            for (size_t j = jlo; j <= jhi; ++j) {
                size_t b = j + k - i;  // band slot
                uint32_t best = inf;
                if (j > 0) {
                    // cur row holds i-1: slot of column j-1 there is (j-1)+k-(i-1) = b
                    uint32_t diag = cur[b];
                    if (diag != inf)
                        best = diag + (pattern[i - 1] == text[s + j - 1] ? 0 : 1);
                    // deletion from text: nxt[j-1] at slot b-1
                    if (b > 0 && nxt[b - 1] != inf) best = std::min(best, nxt[b - 1] + 1);
                }
                // insertion into text (skip pattern char): cur row column j, slot j+k-(i-1) = b+1
                if (b + 1 < band && cur[b + 1] != inf) best = std::min(best, cur[b + 1] + 1);
                nxt[b] = best;
                if (best <= k) alive = true;
            }
            cur.swap(nxt);
        }
        if (!alive) continue;
        size_t jlo = m > k ? m - k : 1;
        size_t jhi = std::min(m + static_cast<size_t>(k), window);
        for (size_t j = std::max<size_t>(jlo, 1); j <= jhi; ++j) {
            uint32_t d = cur[j + k - m];
            if (d <= k && next_sep[s] >= s + j)
                out.push_back({s + 1, s + j, d});
        }
    }
    std::sort(out.begin(), out.end(), [](const ApproxMatch& a, const ApproxMatch& b) {
        return std::tie(a.start, a.end) < std::tie(b.start, b.end);
    });
    return out;
}

std::vector<size_t> naive_covering_sources(std::span<const SourceInterval> sources,
                                           uint64_t l, uint64_t r) {
    std::vector<size_t> out;
    for (size_t i = 0; i < sources.size(); ++i)
        if (sources[i].start <= l && r <= sources[i].end) out.push_back(i);
    return out;
}

namespace {

// uniform draw without std::uniform_int_distribution, whose output is
// implementation-defined; plain rejection keeps collections reproducible
uint64_t rand_below(std::mt19937_64& rng, uint64_t n) {
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

bool rand_event(std::mt19937_64& rng, double p) {
    if (p <= 0.0) return false;
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

}  // namespace

SyntheticCollection gen_synthetic(const SyntheticSpec& spec) {
    if (spec.base_length == 0 || spec.genome_count == 0)
        throw ParameterError("synthetic spec needs a base length and at least one genome");
    if (spec.snp_rate < 0 || spec.snp_rate > 1 || spec.indel_rate < 0 || spec.indel_rate > 1)
        throw ParameterError("mutation rates must lie in [0, 1]");
    std::mt19937_64 rng(spec.seed);

    std::string ref(spec.base_length, 'A');
    for (auto& c : ref) c = kBases[rand_below(rng, 4)];

    std::vector<GenomeRecord> genomes;
    std::vector<AlignmentScript> scripts;
    genomes.push_back({"g1", ref});
    scripts.push_back({"g1", {{EditOp::Kind::match, spec.base_length, {}}}});

    for (uint32_t g = 2; g <= spec.genome_count; ++g) {
        AlignmentScript script;
        script.genome_id = "g" + std::to_string(g);
        uint64_t match_run = 0;
        auto flush = [&] {
            if (match_run > 0) {
                script.ops.push_back({EditOp::Kind::match, match_run, {}});
                match_run = 0;
            }
        };
        uint64_t i = 1;
        while (i <= spec.base_length) {
            if (rand_event(rng, spec.indel_rate)) {
                uint64_t len = 1;
                while (len < spec.max_indel_len && rand_below(rng, 2) == 0) ++len;
                flush();
                if (rand_below(rng, 2) == 0) {
                    std::string ins(len, 'A');
                    for (auto& c : ins) c = kBases[rand_below(rng, 4)];
                    script.ops.push_back({EditOp::Kind::ins, len, std::move(ins)});
                    // the reference position is not consumed; fall through
                } else {
                    len = std::min<uint64_t>(len, spec.base_length - i + 1);
                    script.ops.push_back({EditOp::Kind::del, len, {}});
                    i += len;
                    continue;
                }
            }
            if (rand_event(rng, spec.snp_rate)) {
                flush();
                char orig = ref[i - 1];
                char repl = orig;
                while (repl == orig) repl = kBases[rand_below(rng, 4)];
                script.ops.push_back({EditOp::Kind::subst, 1, std::string(1, repl)});
            } else {
                ++match_run;
            }
            ++i;
        }
        flush();
        genomes.push_back({script.genome_id, apply_alignment(ref, script)});
        scripts.push_back(std::move(script));
    }

    SyntheticCollection out;
    out.fasta = format_fasta(genomes);
    for (const AlignmentScript& s : scripts) {
        out.alignments += format_alignment_script(s);
        out.alignments += '\n';
    }
    return out;
}

ClassifiedMatches classify_occurrences(std::string_view text, std::span<const uint64_t> cuts,
                                       std::string_view pattern, uint32_t k) {
    ClassifiedMatches out;
    for (const ApproxMatch& m : naive_find_all(text, pattern, k)) {
        // primary <=> some cut c with start <= c <= end-1
        auto it = std::lower_bound(cuts.begin(), cuts.end(), m.start);
        bool primary = it != cuts.end() && *it + 1 <= m.end;
        (primary ? out.primary : out.secondary).push_back(m);
    }
    return out;
}

ClassifiedMatches classify_occurrences(std::string_view genome,
                                       const MarkedRegions& extended_regions,
                                       std::string_view pattern, uint32_t k) {
    ClassifiedMatches out;
    for (const ApproxMatch& m : naive_find_all(genome, pattern, k)) {
        bool secondary = false;
        for (const UnmarkedRegion& u : extended_regions.unmarked) {
            if (u.genome_start <= m.start && m.end <= u.genome_end()) {
                secondary = true;
                break;
            }
        }
        (secondary ? out.secondary : out.primary).push_back(m);
    }
    return out;
}

}  // namespace alibi
