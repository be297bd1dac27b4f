#include "alibi/range_max.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"

namespace alibi {

RangeMaxIndex RangeMaxIndex::build(std::span<const uint64_t> values) {
    if (values.empty()) throw ParameterError("range-max index needs a non-empty array");
    const size_t n = values.size();
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a > b;  // equal values: smaller index gets the higher rank
    });
    RangeMaxIndex out;
    out.value_rank_.resize(n);
    for (size_t j = 0; j < n; ++j) out.value_rank_[order[j]] = static_cast<uint32_t>(j);
    out.build_table();
    return out;
}

void RangeMaxIndex::build_table() {
    const size_t n = value_rank_.size();
    size_t levels = n > 1 ? std::bit_width(n) - 1 : 0;
    table_.resize(levels);
    auto better = [&](uint32_t a, uint32_t b) { return value_rank_[a] >= value_rank_[b] ? a : b; };
    for (size_t k = 0; k < levels; ++k) {
        size_t half = size_t{1} << k;
        size_t sz = (k == 0 ? n : table_[k - 1].size()) - half;
        table_[k].resize(sz);
        for (size_t i = 0; i < sz; ++i) {
            uint32_t a = k == 0 ? static_cast<uint32_t>(i) : table_[k - 1][i];
            uint32_t b = k == 0 ? static_cast<uint32_t>(i + half) : table_[k - 1][i + half];
            table_[k][i] = better(a, b);
        }
    }
}

uint64_t RangeMaxIndex::query(uint64_t l, uint64_t r) const {
    if (l == 0 || r < l || r > value_rank_.size())
        throw BoundsError("range-max query outside [1, size]");
    size_t l0 = l - 1, r0 = r - 1;
    if (l0 == r0) return l;
    size_t span = r0 - l0 + 1;
    size_t k = std::bit_width(span) - 1;  // >= 1 since span >= 2
    const auto& row = table_[k - 1];
    uint32_t a = row[l0];
    uint32_t b = row[r0 + 1 - (size_t{1} << k)];
    return (value_rank_[a] >= value_rank_[b] ? a : b) + 1;
}

void RangeMaxIndex::serialize(std::string& out) const {
    put_varint(out, value_rank_.size());
    for (uint32_t v : value_rank_) put_u32(out, v);
}

RangeMaxIndex RangeMaxIndex::deserialize(ByteReader& in) {
    RangeMaxIndex out;
    uint64_t n = in.varint();
    out.value_rank_.resize(n);
    std::vector<bool> seen(n, false);
    for (uint64_t i = 0; i < n; ++i) {
        uint32_t v = in.u32();
        if (v >= n || seen[v])
            throw FormatError("range-max rank permutation corrupt in section " + in.section());
        seen[v] = true;
        out.value_rank_[i] = v;
    }
    out.build_table();
    return out;
}

}  // namespace alibi
