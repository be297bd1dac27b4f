#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Argmax over index ranges of a conceptual value array. The array itself is
// discarded after construction: positions are compared through a rank
// permutation (value ascending, index descending), so queries never touch the
// values and ties resolve to the smallest index. Dyadic-block argmax indices
// form a sparse table on top.

namespace alibi {

class RangeMaxIndex {
public:
    RangeMaxIndex() = default;
    static RangeMaxIndex build(std::span<const uint64_t> values);

    uint64_t size() const { return value_rank_.size(); }

    // Index p in [l, r] (1-based, inclusive) whose value is maximal; smallest
    // such index on ties.
    uint64_t query(uint64_t l, uint64_t r) const;

    void serialize(std::string& out) const;
    static RangeMaxIndex deserialize(class ByteReader& in);

private:
    void build_table();

    std::vector<uint32_t> value_rank_;
    std::vector<std::vector<uint32_t>> table_;  // table_[k][i] = argmax of [i, i+2^(k+1)-1]
};

}  // namespace alibi
