#include "alibi/lz77.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "alibi/error.hpp"
#include "alibi/suffix_array.hpp"

namespace alibi {

std::vector<uint64_t> Lz77Parse::cuts() const {
    std::vector<uint64_t> out;
    out.reserve(phrases.empty() ? 0 : phrases.size() - 1);
    for (size_t i = 0; i + 1 < phrases.size(); ++i)
        out.push_back(phrases[i].start + phrases[i].length - 1);
    return out;
}

namespace {

// Range-min sparse table over a uint32 array; internal to the factorizer.
class MinTable {
public:
    explicit MinTable(std::vector<uint32_t> values) : values_(std::move(values)) {
        const size_t n = values_.size();
        size_t levels = n > 1 ? std::bit_width(n) - 1 : 0;
        table_.resize(levels);
        const uint32_t* prev = values_.data();
        size_t prev_size = n;
        for (size_t k = 0; k < levels; ++k) {
            size_t half = size_t{1} << k;
            size_t sz = prev_size - half;
            table_[k].resize(sz);
            for (size_t i = 0; i < sz; ++i)
                table_[k][i] = std::min(prev[i], prev[i + half]);
            prev = table_[k].data();
            prev_size = sz;
        }
    }

    // min over values[l..r], inclusive, 0-based, l <= r
    uint32_t min(size_t l, size_t r) const {
        if (l == r) return values_[l];
        size_t k = std::bit_width(r - l + 1) - 1;
        if (k == 0) return std::min(values_[l], values_[r]);
        const auto& row = table_[k - 1];
        return std::min(row[l], row[r + 1 - (size_t{1} << k)]);
    }

private:
    std::vector<uint32_t> values_;
    std::vector<std::vector<uint32_t>> table_;
};

}  // namespace

Lz77Parse parse_bytes(std::string_view text) {
    if (text.empty()) throw ParameterError("cannot parse empty text");
    const uint32_t n = static_cast<uint32_t>(text.size());

    std::vector<uint32_t> sa = build_suffix_array(text);
    std::vector<uint32_t> lcp = build_lcp_array(text, sa);
    std::vector<uint32_t> inv(n);
    for (uint32_t r = 0; r < n; ++r) inv[sa[r]] = r;

    // psv/nsv over suffix-array values: nearest SA neighbour with smaller text
    // position, i.e. a candidate previous occurrence.
    constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();
    std::vector<uint32_t> psv(n, kNone), nsv(n, kNone);
    {
        std::vector<uint32_t> stack;
        for (uint32_t r = 0; r < n; ++r) {
            while (!stack.empty() && sa[stack.back()] > sa[r]) stack.pop_back();
            psv[r] = stack.empty() ? kNone : stack.back();
            stack.push_back(r);
        }
        stack.clear();
        for (uint32_t r = n; r-- > 0;) {
            while (!stack.empty() && sa[stack.back()] > sa[r]) stack.pop_back();
            nsv[r] = stack.empty() ? kNone : stack.back();
            stack.push_back(r);
        }
    }

    MinTable lcp_min(lcp);
    MinTable sa_min(sa);

    auto range_lcp = [&](uint32_t r1, uint32_t r2) -> uint32_t {
        // lcp between suffixes at SA ranks r1 < r2
        return lcp_min.min(r1 + 1, r2);
    };

    Lz77Parse out;
    out.text_length = n;
    uint32_t i = 0;
    while (i < n) {
        uint32_t r = inv[i];
        uint32_t best = 0;
        if (psv[r] != kNone) best = std::max(best, range_lcp(psv[r], r));
        if (nsv[r] != kNone) best = std::max(best, range_lcp(r, nsv[r]));
        if (best == 0) {
            out.phrases.push_back(literal_phrase(i + 1, static_cast<uint8_t>(text[i])));
            ++i;
            continue;
        }
        // SA interval of suffixes sharing a prefix of length `best` with suffix i,
        // found by binary search on the lcp minima around rank r.
        uint32_t lo = r, hi = r;
        {
            uint32_t a = 0, b = r;  // smallest lo with min lcp(lo+1..r) >= best
            while (a < b) {
                uint32_t mid = (a + b) / 2;
                if (lcp_min.min(mid + 1, r) >= best) b = mid; else a = mid + 1;
            }
            lo = a;
            a = r; b = n - 1;  // largest hi with min lcp(r+1..hi) >= best
            while (a < b) {
                uint32_t mid = (a + b + 1) / 2;
                if (lcp_min.min(r + 1, mid) >= best) a = mid; else b = mid - 1;
            }
            hi = a;
        }
        uint32_t src = sa_min.min(lo, hi);
        out.phrases.push_back(copy_phrase(i + 1, best, src + 1));
        i += best;
    }
    return out;
}

Lz77Parse parse(const ConcatenatedText& text) { return parse_bytes(text.bytes()); }

Lz77Parse brute_force_parse(std::string_view text) {
    if (text.empty()) throw ParameterError("cannot parse empty text");
    const size_t n = text.size();
    Lz77Parse out;
    out.text_length = n;
    size_t i = 0;
    while (i < n) {
        size_t best = 0, src = 0;
        for (size_t p = 0; p < i; ++p) {
            size_t l = 0;
            while (i + l < n && text[p + l] == text[i + l]) ++l;
            if (l > best) {
                best = l;
                src = p;
            }
        }
        if (best == 0) {
            out.phrases.push_back(literal_phrase(i + 1, static_cast<uint8_t>(text[i])));
            ++i;
        } else {
            out.phrases.push_back(copy_phrase(i + 1, best, src + 1));
            i += best;
        }
    }
    return out;
}

std::string decode(const Lz77Parse& parse) {
    std::string out;
    out.reserve(parse.text_length);
    for (const Phrase& ph : parse.phrases) {
        if (ph.start != out.size() + 1)
            throw StructuralError("phrase tiling gap or overlap at position " +
                                  std::to_string(ph.start));
        if (ph.is_literal) {
            if (ph.length != 1) throw StructuralError("literal phrase with length != 1");
            out.push_back(static_cast<char>(ph.literal));
        } else {
            if (ph.length == 0 || ph.source == 0 || ph.source >= ph.start)
                throw StructuralError("copy phrase with invalid source at position " +
                                      std::to_string(ph.start));
            for (uint64_t j = 0; j < ph.length; ++j)
                out.push_back(out[ph.source - 1 + j]);
        }
    }
    if (out.size() != parse.text_length)
        throw StructuralError("decoded length disagrees with recorded text length");
    return out;
}

std::string dump_parse(const Lz77Parse& parse) {
    std::string out;
    for (const Phrase& ph : parse.phrases) {
        out += std::to_string(ph.start);
        out += '\t';
        out += std::to_string(ph.length);
        out += '\t';
        if (ph.is_literal) {
            out += "LIT ";
            out += static_cast<char>(ph.literal);
        } else {
            out += "CPY ";
            out += std::to_string(ph.source);
        }
        out += '\n';
    }
    return out;
}

}  // namespace alibi
