#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "alibi/gap_list.hpp"
#include "alibi/kernel.hpp"
#include "alibi/range_max.hpp"
#include "alibi/self_index.hpp"

// The LZ77 hybrid: a self-index over the kernel answers primary matches, and
// 2-sided range reporting over phrase sources recovers every secondary
// occurrence from the primaries, without looking at the pattern again.

namespace alibi {

// Markers (i, j) for source intervals, one per copy phrase (plus one per
// dummy phrase after kernel dedup). Start points live in a gap-encoded list;
// end points are never stored: a real phrase's length is the gap between its
// pointed-to boundary and the next one, so ends reconstruct on demand, and a
// range-maximum index over them drives the recursive reporting.
class SourceGrid {
public:
    struct Entry {
        uint64_t source_start;
        uint64_t phrase_start;
        uint64_t length;

        uint64_t source_end() const { return source_start + length - 1; }
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    SourceGrid() = default;
    static SourceGrid build(const Lz77Parse& parse, const std::vector<DummyPhrase>& dummies,
                            uint32_t gap_sample_rate = 64);

    uint64_t size() const { return ptr_.size(); }
    uint64_t phrase_count() const { return boundaries_.size() + 1; }
    bool has_dummies() const { return !dummies_.empty(); }
    Entry entry(uint64_t rank) const;  // 1-based

    // All entries whose source interval contains [l, r]: predecessor search on
    // the start list, then recursive argmax splitting on the end RMQ.
    std::vector<uint64_t> report_covering(uint64_t l, uint64_t r) const;

    // Block-decode state shared across the covering queries of one find_all.
    struct Cursor {
        GapList::Reader starts;
        GapList::Reader boundaries;
        std::vector<std::pair<uint64_t, uint64_t>> pending;
    };
    Cursor make_cursor() const {
        return {GapList::Reader(starts_), GapList::Reader(boundaries_), {}};
    }

    // Same traversal without materializing ranks; hands each covering entry
    // to the callback.
    template <class Fn>
    void for_each_covering(uint64_t l, uint64_t r, Cursor& cursor, Fn&& fn) const;

    template <class Fn>
    void for_each_covering(uint64_t l, uint64_t r, Fn&& fn) const {
        Cursor cursor = make_cursor();
        for_each_covering(l, r, cursor, std::forward<Fn>(fn));
    }

    void serialize(std::string& out) const;
    static SourceGrid deserialize(class ByteReader& in);

private:
    GapList starts_;       // non-decreasing source start points
    GapList boundaries_;   // every phrase boundary of the parse, in T
    uint64_t text_len_ = 0;
    std::vector<int32_t> ptr_;  // >=1: boundary rank; <=-1: ~index into dummies
    std::vector<DummyPhrase> dummies_;
    RangeMaxIndex end_rmq_;
};

template <class Fn>
void SourceGrid::for_each_covering(uint64_t l, uint64_t r, Cursor& cursor, Fn&& fn) const {
    if (l == 0 || r < l) throw BoundsError("bad covering query");
    if (ptr_.empty()) return;
    auto pred = cursor.starts.last_leq(l);
    if (!pred) return;
    auto cached_entry = [&](uint64_t rank) -> Entry {
        int32_t p = ptr_[rank - 1];
        uint64_t start = cursor.starts.at(rank);
        if (p < 0) {
            const DummyPhrase& d = dummies_[~p];
            return {start, d.phrase_start, d.length};
        }
        uint64_t boundary = cursor.boundaries.at(p);
        uint64_t next = static_cast<uint64_t>(p) < boundaries_.size()
                            ? cursor.boundaries.at(p + 1)
                            : text_len_;
        return {start, boundary + 1, next - boundary};
    };
    auto& pending = cursor.pending;
    pending.clear();
    pending.push_back({1, pred->first});
    while (!pending.empty()) {
        auto [lo, hi] = pending.back();
        pending.pop_back();
        uint64_t p = end_rmq_.query(lo, hi);
        Entry e = cached_entry(p);
        if (e.source_end() < r) continue;
        fn(p, e);
        if (p > lo) pending.push_back({lo, p - 1});
        if (p < hi) pending.push_back({p + 1, hi});
    }
}

struct HybridBuildOptions {
    bool dedup = false;
    uint32_t gap_sample_rate = 64;
    uint32_t sa_sample_rate = 32;
};

class HybridIndex {
public:
    HybridIndex() = default;

    static HybridIndex build(const ConcatenatedText& text, uint32_t M, uint32_t K,
                             const HybridBuildOptions& options = {});

    // Matches that cross a phrase boundary, via the kernel self-index.
    std::vector<Occurrence> find_primary(std::string_view pattern, uint32_t k) const;

    // The complete occurrence set, each interval exactly once, sorted by
    // global start. Secondary occurrences come from the worklist expansion:
    // a pointer walks the occurrence list while newly found copies append to
    // its tail.
    std::vector<Occurrence> find_all(std::string_view pattern, uint32_t k) const;

    uint32_t max_pattern_length() const { return m_; }
    uint32_t max_edit_distance() const { return k_; }
    uint64_t text_length() const { return text_len_; }
    bool dedup_enabled() const { return dedup_; }
    const KernelText& kernel() const { return kernel_; }
    const SelfIndex& kernel_index() const { return kernel_index_; }
    const SourceGrid& grid() const { return grid_; }
    const std::vector<GenomeSpan>& genomes() const { return genomes_; }

    void save(std::ostream& out) const;
    static HybridIndex load_sections(const std::vector<struct Section>& sections);

private:
    void validate_query(std::string_view pattern, uint32_t k) const;

    uint64_t text_len_ = 0;
    uint32_t m_ = 0;
    uint32_t k_ = 0;
    bool dedup_ = false;
    std::vector<GenomeSpan> genomes_;
    KernelText kernel_;
    SelfIndex kernel_index_;
    SourceGrid grid_;
};

}  // namespace alibi
