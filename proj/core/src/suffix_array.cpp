#include "alibi/suffix_array.hpp"

#include <algorithm>
#include <numeric>

namespace alibi {

std::vector<uint32_t> build_suffix_array(std::string_view text) {
    const uint32_t n = static_cast<uint32_t>(text.size());
    std::vector<uint32_t> sa(n), rank(n), tmp(n), cnt;
    if (n == 0) return sa;

    // initial order: counting sort by byte
    cnt.assign(257, 0);
    for (uint32_t i = 0; i < n; ++i) ++cnt[static_cast<uint8_t>(text[i]) + 1];
    for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
    for (uint32_t i = 0; i < n; ++i) sa[cnt[static_cast<uint8_t>(text[i])]++] = i;
    rank[sa[0]] = 0;
    for (uint32_t r = 1; r < n; ++r)
        rank[sa[r]] = rank[sa[r - 1]] + (text[sa[r]] != text[sa[r - 1]] ? 1 : 0);

    for (uint32_t h = 1; h < n && rank[sa[n - 1]] != n - 1; h <<= 1) {
        // order by second key: suffixes with i+h >= n first, then by rank order of i+h
        uint32_t idx = 0;
        for (uint32_t i = n - h; i < n; ++i) tmp[idx++] = i;
        for (uint32_t r = 0; r < n; ++r)
            if (sa[r] >= h) tmp[idx++] = sa[r] - h;
        // stable counting sort by first key
        cnt.assign(rank[sa[n - 1]] + 2, 0);
        for (uint32_t i = 0; i < n; ++i) ++cnt[rank[i] + 1];
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        for (uint32_t i = 0; i < n; ++i) sa[cnt[rank[tmp[i]]]++] = tmp[i];
        // recompute ranks
        std::vector<uint32_t> next_rank(n);
        next_rank[sa[0]] = 0;
        for (uint32_t r = 1; r < n; ++r) {
            uint32_t a = sa[r - 1], b = sa[r];
            bool same = rank[a] == rank[b] && a + h < n && b + h < n && rank[a + h] == rank[b + h];
            // a+h >= n sorts before b+h >= n only if both exceed; rank pairs with
            // missing second key are distinct from any complete pair of equal first key
            if (rank[a] == rank[b] && a + h >= n && b + h >= n) same = true;
            next_rank[b] = next_rank[a] + (same ? 0 : 1);
        }
        rank.swap(next_rank);
    }
    return sa;
}

std::vector<uint32_t> build_lcp_array(std::string_view text, const std::vector<uint32_t>& sa) {
    const uint32_t n = static_cast<uint32_t>(text.size());
    std::vector<uint32_t> lcp(n, 0), inv(n);
    for (uint32_t r = 0; r < n; ++r) inv[sa[r]] = r;
    uint32_t h = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (inv[i] == 0) {
            h = 0;
            continue;
        }
        uint32_t j = sa[inv[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[inv[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace alibi
