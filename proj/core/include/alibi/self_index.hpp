#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "alibi/bit_vector.hpp"
#include "alibi/seq.hpp"

namespace alibi {

struct ApproxMatch {
    uint64_t start;  // 1-based, inclusive
    uint64_t end;
    uint32_t dist;

    friend bool operator==(const ApproxMatch&, const ApproxMatch&) = default;
};

/*
 * BWT-based self-index over a byte string: count, locate, extract, and
 * bounded-edit-distance search by backtracking over backward search.
 *
 * An end-of-string sentinel smaller than every byte is appended internally,
 * so the indexed text may not contain NUL. Rank is a sampled occurrence table
 * over the remapped BWT; locate walks LF to sampled suffixes (text positions
 * divisible by the sample rate), extract walks LF from inverse samples.
 */
class SelfIndex {
public:
    SelfIndex() = default;
    static SelfIndex build(std::string_view text, uint32_t sa_sample_rate = 32);

    uint64_t text_length() const { return text_len_; }

    uint64_t count(std::string_view pattern) const;

    // Start positions of the exact occurrences, 1-based ascending.
    std::vector<uint64_t> locate(std::string_view pattern) const;

    // text[start .. start+len-1], 1-based.
    std::string extract(uint64_t start, uint64_t len) const;

    // Every interval of the indexed text within edit distance <= k of the
    // pattern, each (start, end) once with its exact distance. Separator
    // bytes never match a pattern byte; patterns may not contain one.
    std::vector<ApproxMatch> bounded_edit_search(std::string_view pattern, uint32_t k) const;

    void serialize(std::string& out) const;
    static SelfIndex deserialize(class ByteReader& in);

private:
    void build_rank_support();
    void check_pattern(std::string_view pattern) const;
    uint64_t rank(int symbol, uint64_t i) const;
    uint64_t lf(uint64_t row) const;
    bool backward_extend(int symbol, uint64_t& lo, uint64_t& hi) const;
    std::pair<uint64_t, uint64_t> match_range(std::string_view pattern) const;
    uint64_t suffix_position(uint64_t row) const;  // 0-based text position of the row's suffix
    uint64_t isa_row_of(uint64_t q) const;

    uint64_t text_len_ = 0;
    uint32_t sample_rate_ = 32;
    std::string bwt_;

    // rank support, rebuilt after deserialize
    std::vector<int16_t> alphabet_;   // byte -> compact symbol, -1 if absent
    std::vector<uint8_t> symbol_of_;  // compact symbol -> byte
    std::vector<uint8_t> compact_;    // remapped bwt
    std::vector<uint64_t> c_;
    std::vector<uint32_t> occ_;
    int sigma_ = 0;

    BitVector marked_;
    std::vector<uint64_t> sa_samples_;
    std::vector<uint64_t> isa_samples_;
};

}  // namespace alibi
