#include "alibi/bench.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "alibi/container.hpp"
#include "alibi/error.hpp"

namespace alibi {

namespace {

uint64_t serialized_bytes(const SelfIndex& ix) {
    std::string blob;
    ix.serialize(blob);
    return blob.size() + 8 + 12;  // container header and one section header
}

template <class Index>
uint64_t serialized_bytes(const Index& ix) {
    std::ostringstream out(std::ios::binary);
    ix.save(out);
    return out.str().size();
}

}  // namespace

std::vector<BenchRow> run_scaling_bench(const BenchSpec& spec) {
    if (spec.sizes.empty()) throw ParameterError("benchmark needs at least one collection size");
    std::vector<BenchRow> rows;
    for (uint32_t genomes : spec.sizes) {
        SyntheticSpec synth{spec.base_length, genomes, spec.snp_rate, spec.indel_rate,
                            spec.max_indel_len, spec.seed};
        SyntheticCollection coll = gen_synthetic(synth);
        std::vector<GenomeRecord> records = parse_fasta(coll.fasta);
        std::vector<AlignmentScript> scripts = parse_alignment_file(coll.alignments);
        ConcatenatedText text = concatenate(records);

        SelfIndex baseline = SelfIndex::build(text.bytes());
        HybridIndex hybrid = HybridIndex::build(text, spec.m, spec.k);
        AlibiIndex alibi = AlibiIndex::build(records, scripts, records.front().id,
                                             spec.m, spec.k);

        BenchRow row{};
        row.genome_count = genomes;
        row.baseline_bytes = serialized_bytes(baseline);
        row.hybrid_bytes = serialized_bytes(hybrid);
        row.alibi_bytes = serialized_bytes(alibi);

        if (spec.with_timing) {
            // patterns sampled from the text, separator-free
            std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
            std::vector<std::string> patterns;
            while (patterns.size() < spec.pattern_count) {
                uint64_t pos = rng() % (text.size() - spec.pattern_length);
                std::string p = text.bytes().substr(pos, spec.pattern_length);
                if (p.find(static_cast<char>(kSeparator)) != std::string::npos) continue;
                patterns.push_back(std::move(p));
            }
            uint64_t hybrid_occ = 0, baseline_occ = 0;
            auto t0 = std::chrono::steady_clock::now();
            for (const std::string& p : patterns) hybrid_occ += hybrid.find_all(p, 0).size();
            auto t1 = std::chrono::steady_clock::now();
            for (const std::string& p : patterns) baseline_occ += baseline.locate(p).size();
            auto t2 = std::chrono::steady_clock::now();
            auto ns = [](auto a, auto b) {
                return static_cast<double>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
            };
            row.hybrid_ns_per_occ = hybrid_occ ? ns(t0, t1) / hybrid_occ : 0.0;
            row.baseline_ns_per_occ = baseline_occ ? ns(t1, t2) / baseline_occ : 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out =
        "collection_size,baseline_index_bytes,hybrid_bytes,alibi_bytes,"
        "mean_query_time_per_occurrence_ns\n";
    for (const BenchRow& r : rows) {
        out += std::to_string(r.genome_count);
        out += ',';
        out += std::to_string(r.baseline_bytes);
        out += ',';
        out += std::to_string(r.hybrid_bytes);
        out += ',';
        out += std::to_string(r.alibi_bytes);
        out += ',';
        out += std::to_string(static_cast<uint64_t>(r.hybrid_ns_per_occ + 0.5));
        out += '\n';
    }
    return out;
}

}  // namespace alibi
