#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Gap-encoded sorted integer list with sample tables: values are stored as
// LEB128 gaps, every sample_rate-th absolute value is kept alongside its byte
// offset so access and binary search decode at most one block.

namespace alibi {

class GapList {
public:
    enum class Order { strictly_increasing, non_decreasing };

    GapList() = default;
    static GapList build(std::span<const uint64_t> values,
                         Order order = Order::strictly_increasing,
                         uint32_t sample_rate = 64);

    uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    // Value of the rank-th entry, ranks are 1-based.
    uint64_t at(uint64_t rank) const;

    // Values at rank and rank+1 in one block walk; second is 0 when rank is
    // the last entry.
    std::pair<uint64_t, uint64_t> pair_at(uint64_t rank) const;

    // Smallest entry >= x as (rank, value); for duplicates the first such rank.
    std::optional<std::pair<uint64_t, uint64_t>> successor(uint64_t x) const;

    // Largest entry <= x as (rank, value); for duplicates the last such rank.
    std::optional<std::pair<uint64_t, uint64_t>> predecessor(uint64_t x) const;

    std::vector<uint64_t> to_vector() const;

    // Query-local view holding a handful of decoded sample blocks in a
    // direct-mapped cache; repeated access to warm ranks costs O(1).
    class Reader {
    public:
        explicit Reader(const GapList& list) : list_(&list) {}

        uint64_t at(uint64_t rank) {
            size_t block = static_cast<size_t>((rank - 1) / list_->sample_rate_);
            return slot(block).values[(rank - 1) % list_->sample_rate_];
        }

        // Largest entry <= x as (rank, value), like GapList::predecessor.
        std::optional<std::pair<uint64_t, uint64_t>> last_leq(uint64_t x);

    private:
        static constexpr size_t kSlots = 16;

        struct Slot {
            size_t block = static_cast<size_t>(-1);
            uint64_t in_block = 0;
            std::vector<uint64_t> values;
        };

        Slot& slot(size_t block);

        const GapList* list_;
        std::array<Slot, kSlots> slots_;
    };

    std::span<const uint8_t> raw_deltas() const { return deltas_; }
    uint32_t sample_rate() const { return sample_rate_; }

    void serialize(std::string& out) const;
    static GapList deserialize(class ByteReader& in);

private:
    uint64_t decode_at(size_t byte_offset, uint64_t& pos) const;

    std::vector<uint8_t> deltas_;
    std::vector<uint64_t> sample_values_;   // value of entry s*rate+1
    std::vector<uint64_t> sample_offsets_;  // byte offset of that entry's delta
    uint64_t count_ = 0;
    uint32_t sample_rate_ = 64;
};

}  // namespace alibi
