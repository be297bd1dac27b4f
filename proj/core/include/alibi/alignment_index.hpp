#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alibi/gap_list.hpp"
#include "alibi/range_max.hpp"
#include "alibi/self_index.hpp"
#include "alibi/seq.hpp"

// Alignment-based index: characters near alignment differences are marked,
// the distinct marked substrings (plus the whole reference) form the indexed
// kernel, and everything that agrees with the reference is recovered from
// reference matches through a region grid bounded by reference coordinates.

namespace alibi {

struct MarkedInterval {
    uint64_t start;  // genome-local, 1-based, inclusive
    uint64_t end;
    uint64_t ref_projected_start;  // reference coordinate aligned to `start`

    friend bool operator==(const MarkedInterval&, const MarkedInterval&) = default;
};

struct UnmarkedRegion {
    uint64_t ref_start;  // the genome bytes equal reference[ref_start..ref_end]
    uint64_t ref_end;
    uint64_t genome_start;

    uint64_t length() const { return ref_end - ref_start + 1; }
    uint64_t genome_end() const { return genome_start + length() - 1; }
    friend bool operator==(const UnmarkedRegion&, const UnmarkedRegion&) = default;
};

// One aligned genome's marked/unmarked structure.
struct MarkedRegions {
    std::string genome_id;
    uint64_t genome_length = 0;
    std::vector<MarkedInterval> marked;     // sorted, disjoint
    std::vector<UnmarkedRegion> unmarked;   // sorted; after extend_unmarked they
                                            // overlap the marked runs by M+K-1
};

// Marks every genome character within distance M+K-1 of an alignment
// difference. Substituted and inserted characters are differences at distance
// zero; a deletion is a zero-width difference between its two flanking
// characters, so it marks the M+K-1 characters on each side of the junction.
MarkedRegions mark(std::string_view reference, const AlignmentScript& script,
                   uint32_t M, uint32_t K);

// Grows every unmarked region into its neighbouring marked runs by M+K-1
// characters (clipped at the far ends), so any pattern-length substring that
// agrees with the reference lies wholly inside some region.
MarkedRegions extend_unmarked(MarkedRegions regions, uint32_t M, uint32_t K);

// Where one distinct marked substring occurs.
struct PointerEntry {
    uint32_t genome;     // index into the genome table
    uint64_t genome_start;
    uint64_t ref_projected_start;

    friend bool operator==(const PointerEntry&, const PointerEntry&) = default;
};

// Delta compression of an occurrence list (sorted by genome): genome index
// deltas, then zigzag deltas of the projected starts, then the zigzag offset
// genome_start - ref_projected_start, which is near zero when a substring
// sits in roughly the same place in every genome.
std::string compress_pointers(std::span<const PointerEntry> occurrences);
std::vector<PointerEntry> decompress_pointers(std::string_view block);

struct CatalogEntry {
    uint64_t kernel_start;  // 1-based offset of the substring in the kernel
    uint64_t length;
    std::vector<PointerEntry> occurrences;
};

// 2-sided range reporting grid over reference coordinates: one marker (a, b)
// per extended unmarked region with satellite (genome, offset).
class RegionGrid {
public:
    struct Marker {
        uint64_t a;
        uint64_t b;
        int64_t delta;    // genome_start - a
        uint32_t genome;
    };

    RegionGrid() = default;
    static RegionGrid build(std::vector<Marker> markers, uint32_t gap_sample_rate = 64);

    uint64_t size() const { return genome_.size(); }
    Marker marker(uint64_t rank) const;  // 1-based

    // Ranks of all markers with a <= l and r <= b.
    std::vector<uint64_t> report_covering(uint64_t l, uint64_t r) const;

    void serialize(std::string& out) const;
    static RegionGrid deserialize(class ByteReader& in);

private:
    GapList a_starts_;
    std::vector<uint64_t> lengths_;
    std::vector<int64_t> deltas_;
    std::vector<uint32_t> genome_;
    RangeMaxIndex b_rmq_;
};

struct AlibiBuildOptions {
    bool include_reference = true;  // report reference occurrences to the user
    uint32_t gap_sample_rate = 64;
    uint32_t sa_sample_rate = 32;
};

class AlibiIndex {
public:
    AlibiIndex() = default;

    // genomes[ref_index] is the reference; every other genome needs a script
    // against it. Scripts are matched to genomes by id.
    static AlibiIndex build(const std::vector<GenomeRecord>& genomes,
                            const std::vector<AlignmentScript>& scripts,
                            std::string_view reference_id, uint32_t M, uint32_t K,
                            const AlibiBuildOptions& options = {});

    // Kernel matches mapped through the occurrence lists; matches wholly
    // inside a margin of a marked substring are secondary and dropped here.
    std::vector<Occurrence> find_primary(std::string_view pattern, uint32_t k) const;

    // Primary matches plus, for every primary match inside the reference,
    // one copy per covering grid marker. Single level: all sources live in
    // the reference.
    std::vector<Occurrence> find_all(std::string_view pattern, uint32_t k) const;

    uint32_t max_pattern_length() const { return m_; }
    uint32_t max_edit_distance() const { return k_; }
    bool include_reference() const { return include_reference_; }
    uint64_t reference_length() const { return ref_len_; }
    uint32_t reference_index() const { return ref_index_; }
    const std::vector<GenomeSpan>& genomes() const { return genomes_; }
    const std::vector<CatalogEntry>& catalog() const { return catalog_; }
    const RegionGrid& grid() const { return grid_; }
    const SelfIndex& kernel_index() const { return kernel_index_; }
    uint64_t text_length() const { return text_len_; }

    void save(std::ostream& out) const;
    static AlibiIndex load_sections(const std::vector<struct Section>& sections);

private:
    void validate_query(std::string_view pattern, uint32_t k) const;
    std::vector<Occurrence> query(std::string_view pattern, uint32_t k,
                                  bool with_secondaries) const;
    uint64_t genome_length(uint32_t idx) const { return genomes_[idx].length; }

    uint32_t m_ = 0;
    uint32_t k_ = 0;
    bool include_reference_ = true;
    uint32_t ref_index_ = 0;
    uint64_t ref_len_ = 0;
    uint64_t text_len_ = 0;
    std::vector<GenomeSpan> genomes_;
    std::vector<CatalogEntry> catalog_;
    SelfIndex kernel_index_;
    RegionGrid grid_;
};

}  // namespace alibi
