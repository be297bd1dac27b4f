#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alibi/gap_list.hpp"
#include "alibi/lz77.hpp"
#include "alibi/seq.hpp"

// The filtered string T_{M,K}: characters near phrase cuts, with kept
// segments joined by K+1 separator bytes, plus the two aligned cut-position
// lists used to classify kernel matches as primary and map them back to T.
//
// A character of T survives the filter when some cut c puts it inside
// [c-(M+K)+2, c+(M+K)-1]; the two characters flanking a cut are always kept
// so the degenerate M+K=1 windows stay non-empty. Overlapping or adjacent
// windows merge, so no character enters the kernel twice.

namespace alibi {

struct KernelSegment {
    uint64_t t_start;       // 1-based position in T of the segment's first byte
    uint64_t kernel_start;  // 1-based position in T_{M,K}
    uint64_t length;

    friend bool operator==(const KernelSegment&, const KernelSegment&) = default;
};

struct KernelText {
    std::string bytes;        // T_{M,K}
    GapList cuts_in_t;        // cut positions in T, ascending
    GapList cuts_in_kernel;   // the same cuts' positions in T_{M,K}
    std::vector<KernelSegment> segments;
    uint32_t m = 0;
    uint32_t k = 0;

    void serialize(std::string& out) const;
    static KernelText deserialize(class ByteReader& in);
};

KernelText build_kernel(const ConcatenatedText& text, const Lz77Parse& parse,
                        uint32_t M, uint32_t K);
KernelText build_kernel_bytes(std::string_view text, const Lz77Parse& parse,
                              uint32_t M, uint32_t K);

// Classifies a separator-free kernel match [s, e]: if the first cut at or
// after s lies before e, the match is primary and maps to T by aligning the
// match the same distance before the corresponding T-side cut. Returns the
// T interval, or nullopt for non-primary matches (those are copies and will
// be recovered through phrase sources).
std::optional<std::pair<uint64_t, uint64_t>> map_kernel_match(const KernelText& kernel,
                                                              uint64_t s, uint64_t e);

// A phrase added outside the parse proper: the interval of a removed
// duplicate segment, sourced at the surviving copy.
struct DummyPhrase {
    uint64_t source_start;
    uint64_t phrase_start;
    uint64_t length;

    friend bool operator==(const DummyPhrase&, const DummyPhrase&) = default;
};

// Removes kept segments whose bytes equal an earlier kept segment; every
// removed segment turns into one dummy phrase so its matches come back as
// secondary occurrences. Query results are unchanged.
std::pair<KernelText, std::vector<DummyPhrase>> dedup_kernel(const KernelText& kernel);

}  // namespace alibi
