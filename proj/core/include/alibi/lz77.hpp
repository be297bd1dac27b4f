#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "alibi/seq.hpp"

// LZ77 variant used throughout: a phrase is either the first occurrence of a
// distinct character (one literal byte) or the longest substring that already
// occurs starting strictly earlier, copied from its leftmost occurrence.
// No literal character is appended to copy phrases.

namespace alibi {

struct Phrase {
    uint64_t start;   // 1-based position in the text
    uint64_t length;
    bool is_literal;
    uint8_t literal;  // valid when is_literal
    uint64_t source;  // valid when !is_literal: leftmost occurrence, 1-based

    friend bool operator==(const Phrase&, const Phrase&) = default;
};

inline Phrase literal_phrase(uint64_t start, uint8_t byte) {
    return {start, 1, true, byte, 0};
}
inline Phrase copy_phrase(uint64_t start, uint64_t length, uint64_t source) {
    return {start, length, false, 0, source};
}

struct Lz77Parse {
    std::vector<Phrase> phrases;
    uint64_t text_length = 0;

    uint64_t phrase_count() const { return phrases.size(); }

    // Positions c such that one phrase ends at c and the next begins at c+1;
    // z-1 entries, sorted.
    std::vector<uint64_t> cuts() const;

    friend bool operator==(const Lz77Parse&, const Lz77Parse&) = default;
};

// Suffix-array based factorization; emits leftmost sources.
Lz77Parse parse(const ConcatenatedText& text);
Lz77Parse parse_bytes(std::string_view text);

// Quadratic reference factorizer with the same output contract; the semantic
// oracle for parse().
Lz77Parse brute_force_parse(std::string_view text);

// Re-materializes the text; throws StructuralError on gaps, overlaps or bad
// sources. Self-overlapping copies resolve left to right.
std::string decode(const Lz77Parse& parse);

// Debug dump, one line per phrase: `start<TAB>len<TAB>(LIT byte | CPY src)`.
std::string dump_parse(const Lz77Parse& parse);

}  // namespace alibi
