#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "alibi/error.hpp"

// Little-endian primitives, LEB128 varints and the sectioned container format
// shared by the index serializers.

namespace alibi {

inline void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_varint(std::string& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>(0x80 | (v & 0x7f)));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

inline void put_varint(std::vector<uint8_t>& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<uint8_t>(0x80 | (v & 0x7f)));
        v >>= 7;
    }
    out.push_back(static_cast<uint8_t>(v));
}

inline uint64_t zigzag_encode(int64_t v) {
    return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

inline int64_t zigzag_decode(uint64_t v) {
    return static_cast<int64_t>(v >> 1) ^ -static_cast<int64_t>(v & 1);
}

// Cursor over an in-memory byte blob. Throws FormatError on underrun, tagging
// the message with the section being decoded.
class ByteReader {
public:
    ByteReader(std::span<const uint8_t> data, std::string section)
        : data_(data), section_(std::move(section)) {}
    ByteReader(std::string_view data, std::string section)
        : data_(reinterpret_cast<const uint8_t*>(data.data()), data.size()),
          section_(std::move(section)) {}

    uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    uint64_t varint() {
        uint64_t v = 0;
        int shift = 0;
        while (true) {
            need(1);
            uint8_t b = data_[pos_++];
            v |= static_cast<uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) return v;
            shift += 7;
            if (shift > 63) throw FormatError("overlong varint in section " + section_);
        }
    }

    std::string bytes(size_t len) {
        need(len);
        std::string out(reinterpret_cast<const char*>(data_.data() + pos_), len);
        pos_ += len;
        return out;
    }

    std::string str() { return bytes(varint()); }

    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }
    const std::string& section() const { return section_; }

    void expect_done() const {
        if (!done()) throw FormatError("trailing bytes in section " + section_);
    }

private:
    void need(size_t len) const {
        if (pos_ + len > data_.size())
            throw FormatError("truncated section " + section_);
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
    std::string section_;
};

inline void put_str(std::string& out, std::string_view s) {
    put_varint(out, s.size());
    out.append(s);
}

// --- sectioned container -----------------------------------------------
//
//   "ALBI" | u32 version | [ tag(4) | u64 payload_len | payload ]*

inline constexpr char kContainerMagic[4] = {'A', 'L', 'B', 'I'};
inline constexpr uint32_t kContainerVersion = 1;

class SectionWriter {
public:
    explicit SectionWriter(std::ostream& out) : out_(out) {
        out_.write(kContainerMagic, 4);
        std::string hdr;
        put_u32(hdr, kContainerVersion);
        out_.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
    }

    void section(const char tag[4], std::string_view payload) {
        out_.write(tag, 4);
        std::string len;
        put_u64(len, payload.size());
        out_.write(len.data(), static_cast<std::streamsize>(len.size()));
        out_.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out_) throw IoError("failed writing index section");
    }

private:
    std::ostream& out_;
};

struct Section {
    std::string tag;
    std::string payload;
};

std::vector<Section> read_sections(std::istream& in);

}  // namespace alibi
