#include "alibi/gap_list.hpp"

#include <algorithm>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"

namespace alibi {

GapList GapList::build(std::span<const uint64_t> values, Order order, uint32_t sample_rate) {
    if (sample_rate == 0) throw ParameterError("gap list sample rate must be positive");
    GapList out;
    out.sample_rate_ = sample_rate;
    out.count_ = values.size();
    uint64_t prev = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        uint64_t v = values[i];
        if (v == 0) throw StructuralError("gap list values must be positive");
        if (i > 0) {
            if (order == Order::strictly_increasing && v <= prev)
                throw StructuralError("gap list input not strictly increasing at rank " +
                                      std::to_string(i + 1));
            if (order == Order::non_decreasing && v < prev)
                throw StructuralError("gap list input not sorted at rank " + std::to_string(i + 1));
        }
        if (i % sample_rate == 0) {
            out.sample_values_.push_back(v);
            out.sample_offsets_.push_back(out.deltas_.size());
        }
        put_varint(out.deltas_, v - prev);
        prev = v;
    }
    return out;
}

uint64_t GapList::decode_at(size_t byte_offset, uint64_t& pos) const {
    uint64_t v = 0;
    int shift = 0;
    while (true) {
        uint8_t b = deltas_[byte_offset + pos++];
        v |= static_cast<uint64_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
}

uint64_t GapList::at(uint64_t rank) const {
    if (rank == 0 || rank > count_) throw BoundsError("gap list rank out of range");
    size_t block = static_cast<size_t>((rank - 1) / sample_rate_);
    uint64_t value = sample_values_[block];
    uint64_t steps = (rank - 1) % sample_rate_;
    uint64_t pos = 0;
    decode_at(sample_offsets_[block], pos);  // skip the sampled entry's own delta
    for (uint64_t s = 0; s < steps; ++s) value += decode_at(sample_offsets_[block], pos);
    return value;
}

std::pair<uint64_t, uint64_t> GapList::pair_at(uint64_t rank) const {
    if (rank == 0 || rank > count_) throw BoundsError("gap list rank out of range");
    size_t block = static_cast<size_t>((rank - 1) / sample_rate_);
    uint64_t value = sample_values_[block];
    uint64_t steps = (rank - 1) % sample_rate_;
    uint64_t pos = 0;
    decode_at(sample_offsets_[block], pos);
    for (uint64_t s = 0; s < steps; ++s) value += decode_at(sample_offsets_[block], pos);
    if (rank == count_) return {value, 0};
    uint64_t next = steps + 1 == sample_rate_
                        ? sample_values_[block + 1]
                        : value + decode_at(sample_offsets_[block], pos);
    return {value, next};
}

std::optional<std::pair<uint64_t, uint64_t>> GapList::successor(uint64_t x) const {
    if (count_ == 0) return std::nullopt;
    // first sample >= x; the answer lies in the preceding block or at that sample
    size_t lo = 0, hi = sample_values_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (sample_values_[mid] >= x) hi = mid; else lo = mid + 1;
    }
    size_t block = lo > 0 ? lo - 1 : 0;
    uint64_t rank = static_cast<uint64_t>(block) * sample_rate_ + 1;
    uint64_t value = sample_values_[block];
    uint64_t pos = 0;
    decode_at(sample_offsets_[block], pos);
    while (value < x) {
        if (rank == count_) return std::nullopt;
        if (rank % sample_rate_ == 0) {
            // continue into the next block
            size_t next = static_cast<size_t>(rank / sample_rate_);
            value = sample_values_[next];
            pos = 0;
            decode_at(sample_offsets_[next], pos);
            ++rank;
            block = next;
            continue;
        }
        value += decode_at(sample_offsets_[block], pos);
        ++rank;
    }
    return std::make_pair(rank, value);
}

std::optional<std::pair<uint64_t, uint64_t>> GapList::predecessor(uint64_t x) const {
    if (count_ == 0 || sample_values_[0] > x) return std::nullopt;
    // last sample <= x, then walk forward while values stay <= x
    size_t lo = 0, hi = sample_values_.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (sample_values_[mid] <= x) lo = mid; else hi = mid - 1;
    }
    size_t block = lo;
    uint64_t rank = static_cast<uint64_t>(block) * sample_rate_ + 1;
    uint64_t value = sample_values_[block];
    uint64_t pos = 0;
    decode_at(sample_offsets_[block], pos);
    uint64_t best_rank = rank, best_value = value;
    while (rank < count_) {
        uint64_t next_value;
        if (rank % sample_rate_ == 0) {
            size_t next = static_cast<size_t>(rank / sample_rate_);
            next_value = sample_values_[next];
            pos = 0;
            decode_at(sample_offsets_[next], pos);
            block = next;
        } else {
            next_value = value + decode_at(sample_offsets_[block], pos);
        }
        if (next_value > x) break;
        value = next_value;
        ++rank;
        best_rank = rank;
        best_value = value;
    }
    return std::make_pair(best_rank, best_value);
}

GapList::Reader::Slot& GapList::Reader::slot(size_t block) {
    Slot& s = slots_[block % kSlots];
    if (s.block == block) return s;
    s.block = block;
    s.in_block = std::min<uint64_t>(list_->sample_rate_,
                                    list_->count_ - block * list_->sample_rate_);
    if (s.values.size() < list_->sample_rate_) s.values.resize(list_->sample_rate_);
    uint64_t value = list_->sample_values_[block];
    uint64_t pos = 0;
    list_->decode_at(list_->sample_offsets_[block], pos);
    s.values[0] = value;
    for (uint64_t i = 1; i < s.in_block; ++i) {
        value += list_->decode_at(list_->sample_offsets_[block], pos);
        s.values[i] = value;
    }
    return s;
}

std::optional<std::pair<uint64_t, uint64_t>> GapList::Reader::last_leq(uint64_t x) {
    const auto& samples = list_->sample_values_;
    if (list_->count_ == 0 || samples[0] > x) return std::nullopt;
    // last block whose sampled first entry is <= x; later blocks start above x
    size_t lo = 0, hi = samples.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (samples[mid] <= x) lo = mid; else hi = mid - 1;
    }
    Slot& s = slot(lo);
    auto it = std::upper_bound(s.values.begin(), s.values.begin() + s.in_block, x);
    uint64_t offset = static_cast<uint64_t>(it - s.values.begin());  // >= 1
    return std::make_pair(static_cast<uint64_t>(lo) * list_->sample_rate_ + offset,
                          *std::prev(it));
}

std::vector<uint64_t> GapList::to_vector() const {
    std::vector<uint64_t> out;
    out.reserve(count_);
    uint64_t value = 0, pos = 0;
    for (uint64_t i = 0; i < count_; ++i) {
        value += decode_at(0, pos);
        out.push_back(value);
    }
    return out;
}

void GapList::serialize(std::string& out) const {
    put_varint(out, count_);
    put_u32(out, sample_rate_);
    put_varint(out, deltas_.size());
    out.append(reinterpret_cast<const char*>(deltas_.data()), deltas_.size());
    // samples are rebuilt on load
}

GapList GapList::deserialize(ByteReader& in) {
    GapList out;
    out.count_ = in.varint();
    out.sample_rate_ = in.u32();
    if (out.sample_rate_ == 0) throw FormatError("zero sample rate in section " + in.section());
    std::string blob = in.bytes(in.varint());
    out.deltas_.assign(blob.begin(), blob.end());
    // rebuild sample tables, validating the varint stream as we go
    uint64_t value = 0;
    size_t pos = 0;
    for (uint64_t i = 0; i < out.count_; ++i) {
        if (i % out.sample_rate_ == 0) out.sample_offsets_.push_back(pos);
        uint64_t delta = 0;
        int shift = 0;
        while (true) {
            if (pos >= out.deltas_.size())
                throw FormatError("truncated gap list in section " + in.section());
            uint8_t b = out.deltas_[pos++];
            delta |= static_cast<uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
            if (shift > 63) throw FormatError("overlong gap in section " + in.section());
        }
        value += delta;
        if (i % out.sample_rate_ == 0) out.sample_values_.push_back(value);
    }
    if (pos != out.deltas_.size())
        throw FormatError("gap list length mismatch in section " + in.section());
    return out;
}

}  // namespace alibi
