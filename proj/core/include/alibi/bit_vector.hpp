#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Plain bit vector with sampled rank support.

namespace alibi {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

    uint64_t size() const { return size_; }

    void set(uint64_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    bool get(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    // Call once after the last set(); builds the rank blocks.
    void finalize();

    // Number of set bits in [0, i), i <= size.
    uint64_t rank1(uint64_t i) const;
    uint64_t ones() const { return size_ ? rank1(size_) : 0; }

    void serialize(std::string& out) const;
    static BitVector deserialize(class ByteReader& in);

private:
    uint64_t size_ = 0;
    std::vector<uint64_t> words_;
    std::vector<uint64_t> rank_blocks_;  // prefix popcounts per word
};

}  // namespace alibi
