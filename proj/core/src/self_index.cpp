#include "alibi/self_index.hpp"

#include <algorithm>
#include <bit>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"
#include "alibi/suffix_array.hpp"

namespace alibi {

// --- BitVector -----------------------------------------------------------

void BitVector::finalize() {
    rank_blocks_.resize(words_.size() + 1);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
        rank_blocks_[w] = acc;
        acc += std::popcount(words_[w]);
    }
    rank_blocks_[words_.size()] = acc;
}

uint64_t BitVector::rank1(uint64_t i) const {
    uint64_t w = i >> 6, off = i & 63;
    uint64_t r = rank_blocks_[w];
    if (off) r += std::popcount(words_[w] & ((uint64_t{1} << off) - 1));
    return r;
}

void BitVector::serialize(std::string& out) const {
    put_varint(out, size_);
    for (uint64_t w : words_) put_u64(out, w);
}

BitVector BitVector::deserialize(ByteReader& in) {
    BitVector out;
    out.size_ = in.varint();
    out.words_.resize((out.size_ + 63) / 64);
    for (auto& w : out.words_) w = in.u64();
    out.finalize();
    return out;
}

// --- SelfIndex -----------------------------------------------------------

namespace {
constexpr uint8_t kSentinel = 0;
constexpr uint32_t kRankBlock = 64;
}  // namespace

SelfIndex SelfIndex::build(std::string_view text, uint32_t sa_sample_rate) {
    if (sa_sample_rate == 0) throw ParameterError("locate sample rate must be positive");
    if (text.find('\0') != std::string_view::npos)
        throw ParameterError("indexed text may not contain the NUL byte");

    SelfIndex ix;
    ix.text_len_ = text.size();
    ix.sample_rate_ = sa_sample_rate;

    // text plus sentinel, smaller than every byte
    std::string padded(text);
    padded.push_back(static_cast<char>(kSentinel));
    const uint64_t n = padded.size();

    std::vector<uint32_t> sa = build_suffix_array(padded);

    ix.bwt_.resize(n);
    for (uint64_t r = 0; r < n; ++r)
        ix.bwt_[r] = sa[r] == 0 ? padded[n - 1] : padded[sa[r] - 1];

    ix.build_rank_support();

    // locate samples: rows whose suffix starts at a multiple of the rate
    ix.marked_ = BitVector(n);
    std::vector<uint64_t> samples;
    for (uint64_t r = 0; r < n; ++r) {
        if (sa[r] % sa_sample_rate == 0) ix.marked_.set(r);
    }
    ix.marked_.finalize();
    for (uint64_t r = 0; r < n; ++r)
        if (ix.marked_.get(r)) samples.push_back(sa[r]);
    ix.sa_samples_ = std::move(samples);

    // extract samples: row of the suffix starting at q, for q = 0, rate, 2*rate...
    ix.isa_samples_.assign((n + sa_sample_rate - 1) / sa_sample_rate, 0);
    for (uint64_t r = 0; r < n; ++r)
        if (sa[r] % sa_sample_rate == 0) ix.isa_samples_[sa[r] / sa_sample_rate] = r;

    return ix;
}

void SelfIndex::build_rank_support() {
    const uint64_t n = bwt_.size();
    alphabet_.assign(256, -1);
    std::array<uint64_t, 256> freq{};
    for (char c : bwt_) ++freq[static_cast<uint8_t>(c)];
    sigma_ = 0;
    for (int b = 0; b < 256; ++b)
        if (freq[b]) alphabet_[b] = sigma_++;
    symbol_of_.resize(sigma_);
    for (int b = 0; b < 256; ++b)
        if (alphabet_[b] >= 0) symbol_of_[alphabet_[b]] = static_cast<uint8_t>(b);

    compact_.resize(n);
    for (uint64_t i = 0; i < n; ++i) compact_[i] = static_cast<uint8_t>(alphabet_[static_cast<uint8_t>(bwt_[i])]);

    c_.assign(sigma_ + 1, 0);
    for (uint64_t i = 0; i < n; ++i) ++c_[compact_[i] + 1];
    for (int s = 0; s < sigma_; ++s) c_[s + 1] += c_[s];

    const uint64_t blocks = n / kRankBlock + 1;
    occ_.assign(static_cast<size_t>(blocks) * sigma_, 0);
    std::vector<uint32_t> counters(sigma_, 0);
    for (uint64_t i = 0; i < n; ++i) {
        if (i % kRankBlock == 0)
            std::copy(counters.begin(), counters.end(), occ_.begin() + (i / kRankBlock) * sigma_);
        ++counters[compact_[i]];
    }
    if (n % kRankBlock == 0)
        std::copy(counters.begin(), counters.end(), occ_.begin() + (n / kRankBlock) * sigma_);
}

uint64_t SelfIndex::rank(int symbol, uint64_t i) const {
    uint64_t block = i / kRankBlock;
    uint64_t r = occ_[block * sigma_ + symbol];
    for (uint64_t j = block * kRankBlock; j < i; ++j)
        if (compact_[j] == symbol) ++r;
    return r;
}

uint64_t SelfIndex::lf(uint64_t row) const {
    int s = compact_[row];
    return c_[s] + rank(s, row);
}

bool SelfIndex::backward_extend(int symbol, uint64_t& lo, uint64_t& hi) const {
    lo = c_[symbol] + rank(symbol, lo);
    hi = c_[symbol] + rank(symbol, hi);
    return lo < hi;
}

std::pair<uint64_t, uint64_t> SelfIndex::match_range(std::string_view pattern) const {
    uint64_t lo = 0, hi = bwt_.size();
    for (size_t i = pattern.size(); i-- > 0;) {
        int s = alphabet_[static_cast<uint8_t>(pattern[i])];
        if (s < 0) return {0, 0};
        if (!backward_extend(s, lo, hi)) return {0, 0};
    }
    return {lo, hi};
}

uint64_t SelfIndex::suffix_position(uint64_t row) const {
    uint64_t steps = 0;
    while (!marked_.get(row)) {
        row = lf(row);
        ++steps;
    }
    return sa_samples_[marked_.rank1(row)] + steps;
}

void SelfIndex::check_pattern(std::string_view pattern) const {
    if (pattern.empty()) throw ParameterError("empty pattern");
    if (pattern.find(static_cast<char>(kSeparator)) != std::string_view::npos)
        throw ReservedByteError("pattern contains the reserved separator byte");
    if (pattern.find('\0') != std::string_view::npos)
        throw ReservedByteError("pattern contains the NUL byte");
}

uint64_t SelfIndex::count(std::string_view pattern) const {
    check_pattern(pattern);
    auto [lo, hi] = match_range(pattern);
    return hi - lo;
}

std::vector<uint64_t> SelfIndex::locate(std::string_view pattern) const {
    check_pattern(pattern);
    auto [lo, hi] = match_range(pattern);
    std::vector<uint64_t> out;
    out.reserve(hi - lo);
    for (uint64_t r = lo; r < hi; ++r) out.push_back(suffix_position(r) + 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::string SelfIndex::extract(uint64_t start, uint64_t len) const {
    if (start == 0 || len == 0 || start + len - 1 > text_len_)
        throw BoundsError("extract interval outside the indexed text");
    // walk backwards from the nearest sampled suffix at or after start+len-1
    uint64_t end0 = start + len - 1;  // 0-based position one past the last wanted char
    uint64_t q = ((end0 + sample_rate_ - 1) / sample_rate_) * sample_rate_;
    uint64_t row;
    if (q >= text_len_ + 1) {
        q = text_len_;  // suffix holding only the sentinel
        row = isa_row_of(q);
    } else {
        row = isa_samples_[q / sample_rate_];
    }
    std::string out;
    out.reserve(len + (q - end0));
    for (uint64_t pos = q; pos > start - 1; --pos) {
        out.push_back(bwt_[row]);
        row = lf(row);
    }
    std::reverse(out.begin(), out.end());
    return out.substr(0, len);
}

uint64_t SelfIndex::isa_row_of(uint64_t q) const {
    // row of the suffix starting at text position q (0-based); q may be text_len_
    // (the sentinel suffix, always row 0)
    if (q == text_len_) {
        return 0;
    }
    if (q % sample_rate_ == 0) return isa_samples_[q / sample_rate_];
    // walk from the next sample backwards via LF
    uint64_t next = std::min(((q + sample_rate_ - 1) / sample_rate_) * sample_rate_,
                             text_len_);
    uint64_t row = next == text_len_ ? 0 : isa_samples_[next / sample_rate_];
    for (uint64_t pos = next; pos > q; --pos) row = lf(row);
    return row;
}

std::vector<ApproxMatch> SelfIndex::bounded_edit_search(std::string_view pattern,
                                                        uint32_t k) const {
    check_pattern(pattern);
    std::vector<ApproxMatch> out;
    if (k == 0) {
        for (uint64_t s : locate(pattern))
            out.push_back({s, s + pattern.size() - 1, 0});
        return out;
    }

    const size_t m = pattern.size();
    // Column DP over the pattern suffix lengths: col[j] = edit distance between
    // the current candidate (built right to left) and the last j pattern chars.
    std::vector<uint32_t> col(m + 1);
    for (size_t j = 0; j <= m; ++j) col[j] = static_cast<uint32_t>(j);

    struct Frame {
        uint64_t lo, hi;
        uint64_t depth;
        std::vector<uint32_t> col;
    };
    std::vector<Frame> stack;
    stack.push_back({0, bwt_.size(), 0, col});

    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        for (int s = 1; s < sigma_; ++s) {  // skip the sentinel
            uint64_t lo = f.lo, hi = f.hi;
            if (!backward_extend(s, lo, hi)) continue;
            uint8_t byte = symbol_of_[s];
            std::vector<uint32_t> next(m + 1);
            next[0] = static_cast<uint32_t>(f.depth + 1);
            uint32_t best = next[0];
            for (size_t j = 1; j <= m; ++j) {
                uint32_t sub = f.col[j - 1] + (pattern[m - j] == static_cast<char>(byte) ? 0 : 1);
                uint32_t ins = f.col[j] + 1;      // drop the candidate char
                uint32_t del = next[j - 1] + 1;   // drop the pattern char
                next[j] = std::min({sub, ins, del});
                best = std::min(best, next[j]);
            }
            if (next[m] <= k) {
                for (uint64_t r = lo; r < hi; ++r) {
                    uint64_t start = suffix_position(r) + 1;
                    out.push_back({start, start + f.depth, next[m]});
                }
            }
            if (best <= k)
                stack.push_back({lo, hi, f.depth + 1, std::move(next)});
        }
    }
    std::sort(out.begin(), out.end(), [](const ApproxMatch& a, const ApproxMatch& b) {
        return std::tie(a.start, a.end) < std::tie(b.start, b.end);
    });
    return out;
}

void SelfIndex::serialize(std::string& out) const {
    put_varint(out, text_len_);
    put_u32(out, sample_rate_);
    put_str(out, bwt_);
    marked_.serialize(out);
    put_varint(out, sa_samples_.size());
    for (uint64_t v : sa_samples_) put_varint(out, v);
    put_varint(out, isa_samples_.size());
    for (uint64_t v : isa_samples_) put_varint(out, v);
}

SelfIndex SelfIndex::deserialize(ByteReader& in) {
    SelfIndex ix;
    ix.text_len_ = in.varint();
    ix.sample_rate_ = in.u32();
    if (ix.sample_rate_ == 0) throw FormatError("zero sample rate in section " + in.section());
    ix.bwt_ = in.str();
    if (ix.bwt_.size() != ix.text_len_ + 1)
        throw FormatError("BWT length mismatch in section " + in.section());
    ix.marked_ = BitVector::deserialize(in);
    uint64_t ns = in.varint();
    ix.sa_samples_.resize(ns);
    for (auto& v : ix.sa_samples_) v = in.varint();
    uint64_t ni = in.varint();
    ix.isa_samples_.resize(ni);
    for (auto& v : ix.isa_samples_) v = in.varint();
    ix.build_rank_support();
    if (ix.marked_.size() != ix.bwt_.size() || ix.marked_.ones() != ix.sa_samples_.size())
        throw FormatError("locate samples inconsistent in section " + in.section());
    return ix;
}

}  // namespace alibi
