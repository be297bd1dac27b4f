#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alibi/alignment_index.hpp"
#include "alibi/self_index.hpp"
#include "alibi/seq.hpp"

// Brute-force reference implementations and the synthetic collection
// generator backing the property and acceptance tests.

namespace alibi {

// Full dynamic-programming scan: every interval of T within edit distance
// <= k of the pattern, minimal distance per (start, end), separator-spanning
// intervals excluded. Sorted by (start, end).
std::vector<ApproxMatch> naive_find_all(std::string_view text, std::string_view pattern,
                                        uint32_t k);

struct SourceInterval {
    uint64_t start;
    uint64_t end;
};

// Linear filter: intervals with start <= l and r <= end.
std::vector<size_t> naive_covering_sources(std::span<const SourceInterval> sources,
                                           uint64_t l, uint64_t r);

struct SyntheticSpec {
    uint64_t base_length = 10000;
    uint32_t genome_count = 10;
    double snp_rate = 0.001;
    double indel_rate = 0.0001;
    uint32_t max_indel_len = 8;
    uint64_t seed = 1;
};

struct SyntheticCollection {
    std::string fasta;       // genome 1 is the reference
    std::string alignments;  // one script line per genome, g1 gets the identity
};

// Deterministic for a fixed spec: same bytes on every run and platform.
SyntheticCollection gen_synthetic(const SyntheticSpec& spec);

struct ClassifiedMatches {
    std::vector<ApproxMatch> primary;
    std::vector<ApproxMatch> secondary;
};

// LZ77 mode: a match is primary when it crosses a phrase cut.
ClassifiedMatches classify_occurrences(std::string_view text, std::span<const uint64_t> cuts,
                                       std::string_view pattern, uint32_t k);

// Alignment mode, for one aligned genome: a match is secondary when it lies
// wholly inside an extended unmarked region.
ClassifiedMatches classify_occurrences(std::string_view genome,
                                       const MarkedRegions& extended_regions,
                                       std::string_view pattern, uint32_t k);

}  // namespace alibi
