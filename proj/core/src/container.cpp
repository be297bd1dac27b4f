#include "alibi/container.hpp"

#include <fstream>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"

namespace alibi {

std::vector<Section> read_sections(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kContainerMagic, 4) != 0)
        throw FormatError("bad magic bytes: not an index container");
    char verbuf[4];
    in.read(verbuf, 4);
    if (in.gcount() != 4) throw FormatError("truncated container header");
    uint32_t version = 0;
    for (int i = 0; i < 4; ++i) version |= static_cast<uint32_t>(static_cast<uint8_t>(verbuf[i])) << (8 * i);
    if (version != kContainerVersion)
        throw FormatError("unsupported format version: expected " +
                          std::to_string(kContainerVersion) + ", found " + std::to_string(version));

    std::vector<Section> sections;
    while (true) {
        char tag[4];
        in.read(tag, 4);
        if (in.gcount() == 0 && in.eof()) break;
        if (in.gcount() != 4) throw FormatError("truncated section header");
        std::string tag_str(tag, 4);
        char lenbuf[8];
        in.read(lenbuf, 8);
        if (in.gcount() != 8) throw FormatError("truncated section " + tag_str);
        uint64_t len = 0;
        for (int i = 0; i < 8; ++i)
            len |= static_cast<uint64_t>(static_cast<uint8_t>(lenbuf[i])) << (8 * i);
        std::string payload(len, '\0');
        in.read(payload.data(), static_cast<std::streamsize>(len));
        if (static_cast<uint64_t>(in.gcount()) != len)
            throw FormatError("truncated section " + tag_str);
        sections.push_back({std::move(tag_str), std::move(payload)});
    }
    if (sections.empty()) throw FormatError("container holds no sections");
    return sections;
}

namespace {

template <class Index>
void save_to(const Index& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    index.save(out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void save_index(const HybridIndex& index, const std::filesystem::path& path) {
    save_to(index, path);
}

void save_index(const AlibiIndex& index, const std::filesystem::path& path) {
    save_to(index, path);
}

AnyIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open index file: " + path.string());
    std::vector<Section> sections = read_sections(in);
    for (const Section& s : sections) {
        if (s.tag == "PRMH") return HybridIndex::load_sections(sections);
        if (s.tag == "PRMA") return AlibiIndex::load_sections(sections);
    }
    throw FormatError("container holds neither a hybrid nor an alignment index");
}

ContainerStats index_stats(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open index file: " + path.string());
    std::vector<Section> sections = read_sections(in);
    ContainerStats stats;
    stats.version = kContainerVersion;
    stats.kind = IndexKind::hybrid;
    bool known = false;
    for (const Section& s : sections) {
        if (s.tag == "PRMH") { stats.kind = IndexKind::hybrid; known = true; }
        if (s.tag == "PRMA") { stats.kind = IndexKind::alibi; known = true; }
        stats.sections.push_back({s.tag, s.payload.size()});
    }
    if (!known) throw FormatError("container holds neither a hybrid nor an alignment index");
    stats.header_bytes = 8 + 12 * sections.size();  // magic+version and per-section tag+length
    stats.file_bytes = std::filesystem::file_size(path);
    return stats;
}

}  // namespace alibi
