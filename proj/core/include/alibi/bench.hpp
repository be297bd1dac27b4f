#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alibi/testkit.hpp"

// Scaling benchmark: one synthetic collection per genome count, indexed three
// ways (whole-text self-index baseline, LZ77 hybrid, alignment index), with
// serialized sizes and mean query time per reported occurrence.

namespace alibi {

struct BenchSpec {
    uint64_t base_length = 20000;
    double snp_rate = 0.0003;
    double indel_rate = 0.00005;
    uint32_t max_indel_len = 8;
    uint64_t seed = 42;
    uint32_t m = 8;
    uint32_t k = 0;
    std::vector<uint32_t> sizes = {10, 20, 30, 40};
    uint32_t pattern_count = 40;     // per collection, sampled from the text
    uint32_t pattern_length = 8;
    bool with_timing = true;
};

struct BenchRow {
    uint32_t genome_count;
    uint64_t baseline_bytes;
    uint64_t hybrid_bytes;
    uint64_t alibi_bytes;
    double hybrid_ns_per_occ;    // 0 when timing is disabled
    double baseline_ns_per_occ;  // not part of the CSV, kept for reports
};

std::vector<BenchRow> run_scaling_bench(const BenchSpec& spec);

// collection_size,baseline_index_bytes,hybrid_bytes,alibi_bytes,mean_query_time_per_occurrence_ns
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace alibi
