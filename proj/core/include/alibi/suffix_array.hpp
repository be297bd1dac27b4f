#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

// Suffix array by prefix doubling with radix-sorted rank pairs, plus Kasai's
// LCP array. Shared by the LZ77 factorizer and the self-index builder.

namespace alibi {

// 0-based suffix array of `text` (no sentinel is appended).
std::vector<uint32_t> build_suffix_array(std::string_view text);

// lcp[r] = length of the common prefix of suffixes sa[r-1] and sa[r]; lcp[0] = 0.
std::vector<uint32_t> build_lcp_array(std::string_view text, const std::vector<uint32_t>& sa);

}  // namespace alibi
