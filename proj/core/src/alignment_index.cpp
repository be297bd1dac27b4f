#include "alibi/alignment_index.hpp"

#include <algorithm>
#include <unordered_map>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"

namespace alibi {

// --- marking -------------------------------------------------------------

MarkedRegions mark(std::string_view reference, const AlignmentScript& script,
                   uint32_t M, uint32_t K) {
    if (M < 1) throw ParameterError("M must be at least 1");
    if (script.ref_length() != reference.size())
        throw ValidationError("alignment script for " + script.genome_id +
                              " does not cover the reference");
    const int64_t w = static_cast<int64_t>(M) + K - 1;

    struct Segment { uint64_t gen_start, ref_start, len; };
    std::vector<Segment> match_segments;
    std::vector<std::pair<int64_t, int64_t>> spans;  // marked genome spans, may be unclipped
    std::vector<uint64_t> refproj;                   // refproj[g-1] for genome position g
    uint64_t gen_pos = 0, ref_pos = 0;

    for (const EditOp& op : script.ops) {
        switch (op.kind) {
            case EditOp::Kind::match:
                match_segments.push_back({gen_pos + 1, ref_pos + 1, op.length});
                for (uint64_t i = 1; i <= op.length; ++i) refproj.push_back(ref_pos + i);
                gen_pos += op.length;
                ref_pos += op.length;
                break;
            case EditOp::Kind::subst:
                for (uint64_t i = 1; i <= op.length; ++i) {
                    int64_t d = static_cast<int64_t>(gen_pos + i);
                    spans.push_back({d - w, d + w});
                    refproj.push_back(ref_pos + i);
                }
                gen_pos += op.length;
                ref_pos += op.length;
                break;
            case EditOp::Kind::ins:
                for (uint64_t i = 1; i <= op.length; ++i) {
                    int64_t d = static_cast<int64_t>(gen_pos + i);
                    spans.push_back({d - w, d + w});
                    refproj.push_back(ref_pos + 1);
                }
                gen_pos += op.length;
                break;
            case EditOp::Kind::del: {
                // zero-width difference between genome positions p and p+1
                int64_t p = static_cast<int64_t>(gen_pos);
                if (w >= 1) spans.push_back({p - w + 1, p + w});
                ref_pos += op.length;
                break;
            }
        }
    }

    MarkedRegions out;
    out.genome_id = script.genome_id;
    out.genome_length = gen_pos;

    // merge the spans into disjoint marked intervals
    std::sort(spans.begin(), spans.end());
    for (auto [lo, hi] : spans) {
        lo = std::max<int64_t>(lo, 1);
        hi = std::min<int64_t>(hi, static_cast<int64_t>(gen_pos));
        if (lo > hi) continue;
        if (!out.marked.empty() && static_cast<int64_t>(out.marked.back().end) + 1 >= lo)
            out.marked.back().end = std::max<uint64_t>(out.marked.back().end, hi);
        else
            out.marked.push_back({static_cast<uint64_t>(lo), static_cast<uint64_t>(hi), 0});
    }
    for (MarkedInterval& mi : out.marked) mi.ref_projected_start = refproj[mi.start - 1];

    // unmarked regions: complement of the marked set within each match segment
    for (const Segment& seg : match_segments) {
        uint64_t seg_end = seg.gen_start + seg.len - 1;
        uint64_t cur = seg.gen_start;
        auto run = [&](uint64_t from, uint64_t to) {
            out.unmarked.push_back({seg.ref_start + (from - seg.gen_start),
                                    seg.ref_start + (to - seg.gen_start), from});
        };
        auto it = std::lower_bound(out.marked.begin(), out.marked.end(), cur,
                                   [](const MarkedInterval& m, uint64_t p) { return m.end < p; });
        for (; it != out.marked.end() && it->start <= seg_end && cur <= seg_end; ++it) {
            if (it->start > cur) run(cur, it->start - 1);
            cur = std::max(cur, it->end + 1);
        }
        if (cur <= seg_end) run(cur, seg_end);
    }
    return out;
}

MarkedRegions extend_unmarked(MarkedRegions regions, uint32_t M, uint32_t K) {
    const uint64_t w = static_cast<uint64_t>(M) + K - 1;
    if (w == 0) return regions;
    auto containing_marked = [&](uint64_t pos) -> const MarkedInterval* {
        auto it = std::upper_bound(regions.marked.begin(), regions.marked.end(), pos,
                                   [](uint64_t p, const MarkedInterval& m) { return p < m.start; });
        if (it == regions.marked.begin()) return nullptr;
        const MarkedInterval& m = *std::prev(it);
        return pos <= m.end ? &m : nullptr;
    };
    for (UnmarkedRegion& u : regions.unmarked) {
        if (u.genome_start > 1) {
            if (const MarkedInterval* m = containing_marked(u.genome_start - 1)) {
                uint64_t new_start = std::max(u.genome_start >= w ? u.genome_start - w : 1,
                                              m->start);
                uint64_t shift = u.genome_start - new_start;
                u.genome_start = new_start;
                u.ref_start -= shift;
            }
        }
        uint64_t gend = u.genome_end();
        if (gend < regions.genome_length) {
            if (const MarkedInterval* m = containing_marked(gend + 1)) {
                uint64_t new_end = std::min(gend + w, m->end);
                u.ref_end += new_end - gend;
            }
        }
    }
    return regions;
}

// --- pointer compression ---------------------------------------------------

std::string compress_pointers(std::span<const PointerEntry> occurrences) {
    if (occurrences.empty()) throw ParameterError("empty occurrence list");
    std::string out;
    put_varint(out, occurrences.size());
    uint32_t prev_genome = 0;
    int64_t prev_rps = 0;
    for (const PointerEntry& p : occurrences) {
        if (p.genome < prev_genome)
            throw ParameterError("occurrence list must be sorted by genome");
        put_varint(out, p.genome - prev_genome);
        put_varint(out, zigzag_encode(static_cast<int64_t>(p.ref_projected_start) - prev_rps));
        put_varint(out, zigzag_encode(static_cast<int64_t>(p.genome_start) -
                                      static_cast<int64_t>(p.ref_projected_start)));
        prev_genome = p.genome;
        prev_rps = static_cast<int64_t>(p.ref_projected_start);
    }
    return out;
}

std::vector<PointerEntry> decompress_pointers(std::string_view block) {
    ByteReader in(block, "pointer block");
    uint64_t n = in.varint();
    std::vector<PointerEntry> out;
    out.reserve(n);
    uint32_t genome = 0;
    int64_t rps = 0;
    for (uint64_t i = 0; i < n; ++i) {
        genome += static_cast<uint32_t>(in.varint());
        rps += zigzag_decode(in.varint());
        int64_t off = zigzag_decode(in.varint());
        out.push_back({genome, static_cast<uint64_t>(rps + off), static_cast<uint64_t>(rps)});
    }
    in.expect_done();
    return out;
}

// --- RegionGrid ------------------------------------------------------------

RegionGrid RegionGrid::build(std::vector<Marker> markers, uint32_t gap_sample_rate) {
    std::stable_sort(markers.begin(), markers.end(),
                     [](const Marker& x, const Marker& y) { return x.a < y.a; });
    RegionGrid out;
    std::vector<uint64_t> starts, ends;
    for (const Marker& m : markers) {
        if (m.a == 0 || m.b < m.a) throw ParameterError("bad grid marker");
        starts.push_back(m.a);
        ends.push_back(m.b);
        out.lengths_.push_back(m.b - m.a + 1);
        out.deltas_.push_back(m.delta);
        out.genome_.push_back(m.genome);
    }
    out.a_starts_ = GapList::build(starts, GapList::Order::non_decreasing, gap_sample_rate);
    if (!ends.empty()) out.b_rmq_ = RangeMaxIndex::build(ends);
    return out;
}

RegionGrid::Marker RegionGrid::marker(uint64_t rank) const {
    if (rank == 0 || rank > genome_.size()) throw BoundsError("grid rank out of range");
    uint64_t a = a_starts_.at(rank);
    return {a, a + lengths_[rank - 1] - 1, deltas_[rank - 1], genome_[rank - 1]};
}

std::vector<uint64_t> RegionGrid::report_covering(uint64_t l, uint64_t r) const {
    if (l == 0 || r < l) throw BoundsError("bad covering query");
    std::vector<uint64_t> out;
    if (genome_.empty()) return out;
    auto pred = a_starts_.predecessor(l);
    if (!pred) return out;
    std::vector<std::pair<uint64_t, uint64_t>> pending{{1, pred->first}};
    while (!pending.empty()) {
        auto [lo, hi] = pending.back();
        pending.pop_back();
        if (lo > hi) continue;
        uint64_t p = b_rmq_.query(lo, hi);
        if (a_starts_.at(p) + lengths_[p - 1] - 1 < r) continue;
        out.push_back(p);
        if (p > lo) pending.push_back({lo, p - 1});
        if (p < hi) pending.push_back({p + 1, hi});
    }
    return out;
}

void RegionGrid::serialize(std::string& out) const {
    put_varint(out, genome_.size());
    a_starts_.serialize(out);
    for (uint64_t v : lengths_) put_varint(out, v);
    for (int64_t v : deltas_) put_varint(out, zigzag_encode(v));
    for (uint32_t v : genome_) put_varint(out, v);
    b_rmq_.serialize(out);
}

RegionGrid RegionGrid::deserialize(ByteReader& in) {
    RegionGrid out;
    uint64_t n = in.varint();
    out.a_starts_ = GapList::deserialize(in);
    out.lengths_.resize(n);
    for (auto& v : out.lengths_) {
        v = in.varint();
        if (v == 0) throw FormatError("zero-length grid marker in section " + in.section());
    }
    out.deltas_.resize(n);
    for (auto& v : out.deltas_) v = zigzag_decode(in.varint());
    out.genome_.resize(n);
    for (auto& v : out.genome_) v = static_cast<uint32_t>(in.varint());
    out.b_rmq_ = RangeMaxIndex::deserialize(in);
    if (out.a_starts_.size() != n || out.b_rmq_.size() != n)
        throw FormatError("grid arrays disagree in section " + in.section());
    return out;
}

// --- AlibiIndex --------------------------------------------------------------

AlibiIndex AlibiIndex::build(const std::vector<GenomeRecord>& genomes,
                             const std::vector<AlignmentScript>& scripts,
                             std::string_view reference_id, uint32_t M, uint32_t K,
                             const AlibiBuildOptions& options) {
    if (M < 1) throw ParameterError("M must be at least 1");
    AlibiIndex ix;
    ix.m_ = M;
    ix.k_ = K;
    ix.include_reference_ = options.include_reference;

    ConcatenatedText text = concatenate(genomes);
    ix.genomes_.assign(text.genomes().begin(), text.genomes().end());
    ix.text_len_ = text.size();

    bool ref_found = false;
    for (size_t i = 0; i < genomes.size(); ++i) {
        if (genomes[i].id == reference_id) {
            ix.ref_index_ = static_cast<uint32_t>(i);
            ref_found = true;
            break;
        }
    }
    if (!ref_found)
        throw ValidationError("reference genome " + std::string(reference_id) +
                              " is not in the collection");
    const std::string& ref = genomes[ix.ref_index_].bases;
    ix.ref_len_ = ref.size();

    std::unordered_map<std::string_view, const AlignmentScript*> by_id;
    for (const AlignmentScript& s : scripts) by_id[s.genome_id] = &s;

    std::string kernel = ref;
    std::unordered_map<std::string, size_t> seen;
    std::vector<std::string> contents;
    std::vector<RegionGrid::Marker> markers;

    for (size_t g = 0; g < genomes.size(); ++g) {
        if (g == ix.ref_index_) continue;
        auto it = by_id.find(genomes[g].id);
        if (it == by_id.end())
            throw ValidationError("no alignment script for genome " + genomes[g].id);
        const AlignmentScript& script = *it->second;
        if (apply_alignment(ref, script) != genomes[g].bases)
            throw ValidationError("alignment script for genome " + genomes[g].id +
                                  " does not reconstruct its sequence");
        MarkedRegions regions = extend_unmarked(mark(ref, script, M, K), M, K);

        for (const MarkedInterval& m : regions.marked) {
            std::string content = genomes[g].bases.substr(m.start - 1, m.end - m.start + 1);
            auto [pos, inserted] = seen.try_emplace(std::move(content), ix.catalog_.size());
            if (inserted) {
                ix.catalog_.push_back({0, m.end - m.start + 1, {}});
                contents.push_back(pos->first);
            }
            ix.catalog_[pos->second].occurrences.push_back(
                {static_cast<uint32_t>(g), m.start, m.ref_projected_start});
        }
        for (const UnmarkedRegion& u : regions.unmarked) {
            markers.push_back({u.ref_start, u.ref_end,
                               static_cast<int64_t>(u.genome_start) -
                                   static_cast<int64_t>(u.ref_start),
                               static_cast<uint32_t>(g)});
        }
    }

    for (size_t e = 0; e < ix.catalog_.size(); ++e) {
        kernel.append(K + 1, static_cast<char>(kSeparator));
        ix.catalog_[e].kernel_start = kernel.size() + 1;
        kernel += contents[e];
    }

    ix.grid_ = RegionGrid::build(std::move(markers), options.gap_sample_rate);
    ix.kernel_index_ = SelfIndex::build(kernel, options.sa_sample_rate);
    return ix;
}

void AlibiIndex::validate_query(std::string_view pattern, uint32_t k) const {
    if (pattern.empty()) throw ParameterError("empty pattern");
    if (pattern.size() > m_)
        throw ParameterError("pattern length " + std::to_string(pattern.size()) +
                             " exceeds M (index built with M=" + std::to_string(m_) +
                             ", K=" + std::to_string(k_) + ")");
    if (k > k_)
        throw ParameterError("edit distance " + std::to_string(k) +
                             " exceeds K (index built with M=" + std::to_string(m_) +
                             ", K=" + std::to_string(k_) + ")");
    if (pattern.find(static_cast<char>(kSeparator)) != std::string_view::npos)
        throw ReservedByteError("pattern contains the reserved separator byte");
}

std::vector<Occurrence> AlibiIndex::query(std::string_view pattern, uint32_t k,
                                          bool with_secondaries) const {
    validate_query(pattern, k);
    const uint64_t w = static_cast<uint64_t>(m_) + k_ - 1;
    std::vector<Occurrence> out;
    for (const ApproxMatch& m : kernel_index_.bounded_edit_search(pattern, k)) {
        if (m.end <= ref_len_) {
            if (include_reference_)
                out.push_back({genomes_[ref_index_].global_start + m.start - 1,
                               m.end - m.start + 1, m.dist});
            if (with_secondaries) {
                // every reference match seeds grid expansion, reported or not
                for (uint64_t rank : grid_.report_covering(m.start, m.end)) {
                    RegionGrid::Marker mk = grid_.marker(rank);
                    uint64_t local =
                        static_cast<uint64_t>(static_cast<int64_t>(m.start) + mk.delta);
                    out.push_back({genomes_[mk.genome].global_start + local - 1,
                                   m.end - m.start + 1, m.dist});
                }
            }
            continue;
        }
        // locate the catalog entry holding the match, if any
        auto it = std::upper_bound(catalog_.begin(), catalog_.end(), m.start,
                                   [](uint64_t s, const CatalogEntry& e) { return s < e.kernel_start; });
        if (it == catalog_.begin()) continue;
        const CatalogEntry& entry = *std::prev(it);
        if (m.end > entry.kernel_start + entry.length - 1)
            continue;  // touches a separator block
        uint64_t d1 = m.start - entry.kernel_start;
        uint64_t d2 = m.end - entry.kernel_start;
        uint64_t margin = std::min(w, entry.length);
        for (const PointerEntry& occ : entry.occurrences) {
            if (w >= 1) {
                bool has_left = occ.genome_start > 1;
                bool has_right = occ.genome_start + entry.length - 1 < genome_length(occ.genome);
                if (has_left && d2 + 1 <= margin) continue;
                if (has_right && d1 + margin >= entry.length) continue;
            }
            out.push_back({genomes_[occ.genome].global_start + occ.genome_start + d1 - 1,
                           m.end - m.start + 1, m.dist});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Occurrence& a, const Occurrence& b) {
                              return a.global_start == b.global_start && a.length == b.length;
                          }),
              out.end());
    return out;
}

std::vector<Occurrence> AlibiIndex::find_primary(std::string_view pattern, uint32_t k) const {
    return query(pattern, k, false);
}

std::vector<Occurrence> AlibiIndex::find_all(std::string_view pattern, uint32_t k) const {
    return query(pattern, k, true);
}

void AlibiIndex::save(std::ostream& outstream) const {
    SectionWriter w(outstream);
    std::string params;
    put_u32(params, m_);
    put_u32(params, k_);
    params.push_back(include_reference_ ? 1 : 0);
    put_u32(params, ref_index_);
    put_varint(params, ref_len_);
    put_varint(params, text_len_);
    w.section("PRMA", params);

    std::string goff;
    put_varint(goff, genomes_.size());
    for (const GenomeSpan& g : genomes_) {
        put_str(goff, g.id);
        put_varint(goff, g.global_start);
        put_varint(goff, g.length);
    }
    w.section("GOFF", goff);

    std::string acat;
    put_varint(acat, catalog_.size());
    for (const CatalogEntry& e : catalog_) {
        put_varint(acat, e.kernel_start);
        put_varint(acat, e.length);
        put_str(acat, compress_pointers(e.occurrences));
    }
    w.section("ACAT", acat);

    std::string sidx;
    kernel_index_.serialize(sidx);
    w.section("SIDX", sidx);

    std::string agrd;
    grid_.serialize(agrd);
    w.section("AGRD", agrd);
}

AlibiIndex AlibiIndex::load_sections(const std::vector<Section>& sections) {
    AlibiIndex ix;
    bool have[5] = {};
    for (const Section& s : sections) {
        ByteReader in(s.payload, s.tag);
        if (s.tag == "PRMA") {
            ix.m_ = in.u32();
            ix.k_ = in.u32();
            ix.include_reference_ = in.u8() != 0;
            ix.ref_index_ = in.u32();
            ix.ref_len_ = in.varint();
            ix.text_len_ = in.varint();
            in.expect_done();
            have[0] = true;
        } else if (s.tag == "GOFF") {
            uint64_t ng = in.varint();
            ix.genomes_.resize(ng);
            for (auto& g : ix.genomes_) {
                g.id = in.str();
                g.global_start = in.varint();
                g.length = in.varint();
            }
            in.expect_done();
            have[1] = true;
        } else if (s.tag == "ACAT") {
            uint64_t nc = in.varint();
            ix.catalog_.resize(nc);
            for (auto& e : ix.catalog_) {
                e.kernel_start = in.varint();
                e.length = in.varint();
                e.occurrences = decompress_pointers(in.str());
            }
            in.expect_done();
            have[2] = true;
        } else if (s.tag == "SIDX") {
            ix.kernel_index_ = SelfIndex::deserialize(in);
            in.expect_done();
            have[3] = true;
        } else if (s.tag == "AGRD") {
            ix.grid_ = RegionGrid::deserialize(in);
            in.expect_done();
            have[4] = true;
        } else {
            throw FormatError("unknown section " + s.tag + " in alignment index");
        }
    }
    const char* names[5] = {"PRMA", "GOFF", "ACAT", "SIDX", "AGRD"};
    for (int i = 0; i < 5; ++i)
        if (!have[i]) throw FormatError(std::string("missing section ") + names[i]);
    if (ix.ref_index_ >= ix.genomes_.size())
        throw FormatError("reference index outside genome table");
    return ix;
}

}  // namespace alibi
