#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "alibi/alignment_index.hpp"
#include "alibi/hybrid_index.hpp"

// One container file format for both index kinds. Layout:
//   "ALBI" | u32 version | [ tag(4) | u64 len | payload ]*
// Hybrid indexes carry PRMH/GOFF/KERN/SIDX/GRID sections, alignment indexes
// PRMA/GOFF/ACAT/SIDX/AGRD.

namespace alibi {

enum class IndexKind { hybrid, alibi };

using AnyIndex = std::variant<HybridIndex, AlibiIndex>;

void save_index(const HybridIndex& index, const std::filesystem::path& path);
void save_index(const AlibiIndex& index, const std::filesystem::path& path);

AnyIndex load_index(const std::filesystem::path& path);

struct SectionInfo {
    std::string tag;
    uint64_t bytes;
};

struct ContainerStats {
    uint32_t version;
    IndexKind kind;
    uint64_t file_bytes;
    uint64_t header_bytes;  // magic + version + per-section tag/length headers
    std::vector<SectionInfo> sections;
};

ContainerStats index_stats(const std::filesystem::path& path);

}  // namespace alibi
