#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alibi/error.hpp"

// Sequence model: FASTA ingestion, the concatenated text T with per-genome
// coordinate tables, and reference-relative alignment scripts.
//
// All positions are 1-based and inclusive, in the library as well as on the
// command line.

namespace alibi {

// Reserved genome separator. Sequences may use any other byte value.
inline constexpr uint8_t kSeparator = '#';

struct GenomeRecord {
    std::string id;
    std::string bases;
};

struct GenomeSpan {
    std::string id;
    uint64_t global_start;  // 1-based position of the genome's first byte in T
    uint64_t length;
};

// An approximate match reported against T.
struct Occurrence {
    uint64_t global_start;
    uint64_t length;
    uint32_t edit_distance;

    uint64_t global_end() const { return global_start + length - 1; }
    friend bool operator==(const Occurrence&, const Occurrence&) = default;
    friend auto operator<=>(const Occurrence& a, const Occurrence& b) {
        return std::tie(a.global_start, a.length, a.edit_distance) <=>
               std::tie(b.global_start, b.length, b.edit_distance);
    }
};

// The genomes joined with single separator bytes: g1 # g2 # ... # gm.
class ConcatenatedText {
public:
    const std::string& bytes() const { return bytes_; }
    uint64_t size() const { return bytes_.size(); }
    std::span<const GenomeSpan> genomes() const { return genomes_; }

    // Maps a separator-free global interval onto (genome_id, local_start).
    std::pair<std::string_view, uint64_t> project(uint64_t global_start, uint64_t length) const;

    // Inverse of project for the start coordinate.
    uint64_t to_global(std::string_view genome_id, uint64_t local_start) const;

    bool interval_has_separator(uint64_t global_start, uint64_t length) const;

    friend ConcatenatedText concatenate(const std::vector<GenomeRecord>& genomes);

private:
    std::string bytes_;
    std::vector<GenomeSpan> genomes_;
};

ConcatenatedText concatenate(const std::vector<GenomeRecord>& genomes);

std::vector<GenomeRecord> parse_fasta(std::string_view text);
std::vector<GenomeRecord> load_fasta(const std::filesystem::path& path);
std::string format_fasta(const std::vector<GenomeRecord>& genomes, size_t line_width = 70);

// --- alignment scripts ---------------------------------------------------
//
// One genome per line: `genome_id <TAB> token+`, tokens space-separated,
// token ::= <len>= | <len>X<bases> | <len>I<bases> | <len>D
// Lengths are decimal and count reference bases, except for I where the
// length counts inserted bases.

struct EditOp {
    enum class Kind { match, subst, ins, del };
    Kind kind;
    uint64_t length;
    std::string bases;  // replacement (subst) or inserted (ins) bases

    friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct AlignmentScript {
    std::string genome_id;
    std::vector<EditOp> ops;

    // Number of reference bases the script consumes.
    uint64_t ref_length() const;

    friend bool operator==(const AlignmentScript&, const AlignmentScript&) = default;
};

// Replays the script against the reference, producing the aligned genome.
std::string apply_alignment(std::string_view reference, const AlignmentScript& script);

std::vector<AlignmentScript> parse_alignment_file(std::string_view text);
std::vector<AlignmentScript> load_alignment_file(const std::filesystem::path& path);
std::string format_alignment_script(const AlignmentScript& script);

}  // namespace alibi
