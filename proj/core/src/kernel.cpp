#include "alibi/kernel.hpp"

#include <algorithm>
#include <unordered_map>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"

namespace alibi {

namespace {

KernelText assemble(std::string_view text, const std::vector<std::pair<uint64_t, uint64_t>>& keep,
                    const std::vector<uint64_t>& cuts, uint32_t M, uint32_t K) {
    KernelText out;
    out.m = M;
    out.k = K;
    std::vector<uint64_t> cuts_t, cuts_k;
    size_t next_cut = 0;
    for (const auto& [lo, hi] : keep) {
        if (!out.bytes.empty())
            out.bytes.append(K + 1, static_cast<char>(kSeparator));
        uint64_t kernel_start = out.bytes.size() + 1;
        out.segments.push_back({lo, kernel_start, hi - lo + 1});
        out.bytes.append(text.substr(lo - 1, hi - lo + 1));
        while (next_cut < cuts.size() && cuts[next_cut] <= hi) {
            // every cut lies inside a kept window by construction
            cuts_t.push_back(cuts[next_cut]);
            cuts_k.push_back(kernel_start + (cuts[next_cut] - lo));
            ++next_cut;
        }
    }
    out.cuts_in_t = GapList::build(cuts_t);
    out.cuts_in_kernel = GapList::build(cuts_k);
    return out;
}

}  // namespace

KernelText build_kernel_bytes(std::string_view text, const Lz77Parse& parse,
                              uint32_t M, uint32_t K) {
    if (M < 1) throw ParameterError("M must be at least 1");
    if (text.empty()) throw ParameterError("cannot build a kernel over empty text");
    if (parse.text_length != text.size())
        throw ParameterError("parse does not belong to this text");
    const uint64_t n = text.size();
    const uint64_t w = static_cast<uint64_t>(M) + K;  // window reach is w-1 per side of a cut

    std::vector<uint64_t> cuts = parse.cuts();
    std::vector<std::pair<uint64_t, uint64_t>> keep;
    for (uint64_t c : cuts) {
        uint64_t lo = w >= 2 ? (c + 2 > w ? c + 2 - w : 1) : c;
        uint64_t hi = std::min<uint64_t>(n, std::max(c + w - 1, c + 1));
        if (!keep.empty() && lo <= keep.back().second + 1)
            keep.back().second = std::max(keep.back().second, hi);
        else
            keep.push_back({lo, hi});
    }
    return assemble(text, keep, cuts, M, K);
}

KernelText build_kernel(const ConcatenatedText& text, const Lz77Parse& parse,
                        uint32_t M, uint32_t K) {
    return build_kernel_bytes(text.bytes(), parse, M, K);
}

std::optional<std::pair<uint64_t, uint64_t>> map_kernel_match(const KernelText& kernel,
                                                              uint64_t s, uint64_t e) {
    if (s == 0 || e < s || e > kernel.bytes.size())
        throw BoundsError("kernel match outside T_{M,K}");
    if (kernel.bytes.find(static_cast<char>(kSeparator), s - 1) < e)
        throw StructuralError("kernel match spans a separator; filter before mapping");
    auto succ = kernel.cuts_in_kernel.successor(s);
    if (!succ || succ->second > e - 1) return std::nullopt;
    uint64_t c_k = succ->second;
    uint64_t c_t = kernel.cuts_in_t.at(succ->first);
    uint64_t s_t = c_t - (c_k - s);
    return std::make_pair(s_t, s_t + (e - s));
}

std::pair<KernelText, std::vector<DummyPhrase>> dedup_kernel(const KernelText& kernel) {
    std::vector<DummyPhrase> dummies;
    std::vector<KernelSegment> kept;
    std::unordered_map<std::string_view, const KernelSegment*> first_seen;
    for (const KernelSegment& seg : kernel.segments) {
        std::string_view content(kernel.bytes.data() + (seg.kernel_start - 1),
                                 seg.length);
        auto [it, inserted] = first_seen.try_emplace(content, &seg);
        if (inserted) {
            kept.push_back(seg);
        } else {
            dummies.push_back({it->second->t_start, seg.t_start, seg.length});
        }
    }
    if (dummies.empty()) return {kernel, {}};

    KernelText out;
    out.m = kernel.m;
    out.k = kernel.k;
    std::vector<uint64_t> cuts_t = kernel.cuts_in_t.to_vector();
    std::vector<uint64_t> new_cuts_t, new_cuts_k;
    size_t next_cut = 0;
    for (const KernelSegment& seg : kept) {
        if (!out.bytes.empty())
            out.bytes.append(kernel.k + 1, static_cast<char>(kSeparator));
        uint64_t kernel_start = out.bytes.size() + 1;
        out.segments.push_back({seg.t_start, kernel_start, seg.length});
        out.bytes.append(kernel.bytes, seg.kernel_start - 1, seg.length);
        uint64_t seg_end = seg.t_start + seg.length - 1;
        while (next_cut < cuts_t.size() && cuts_t[next_cut] <= seg_end) {
            if (cuts_t[next_cut] >= seg.t_start) {
                new_cuts_t.push_back(cuts_t[next_cut]);
                new_cuts_k.push_back(kernel_start + (cuts_t[next_cut] - seg.t_start));
            }
            ++next_cut;
        }
    }
    // cuts inside removed segments disappear with them
    out.cuts_in_t = GapList::build(new_cuts_t);
    out.cuts_in_kernel = GapList::build(new_cuts_k);
    return {std::move(out), std::move(dummies)};
}

void KernelText::serialize(std::string& out) const {
    put_u32(out, m);
    put_u32(out, k);
    put_str(out, bytes);
    cuts_in_t.serialize(out);
    cuts_in_kernel.serialize(out);
    put_varint(out, segments.size());
    for (const KernelSegment& s : segments) {
        put_varint(out, s.t_start);
        put_varint(out, s.kernel_start);
        put_varint(out, s.length);
    }
}

KernelText KernelText::deserialize(ByteReader& in) {
    KernelText out;
    out.m = in.u32();
    out.k = in.u32();
    out.bytes = in.str();
    out.cuts_in_t = GapList::deserialize(in);
    out.cuts_in_kernel = GapList::deserialize(in);
    uint64_t ns = in.varint();
    out.segments.resize(ns);
    for (auto& s : out.segments) {
        s.t_start = in.varint();
        s.kernel_start = in.varint();
        s.length = in.varint();
    }
    if (out.cuts_in_t.size() != out.cuts_in_kernel.size())
        throw FormatError("cut lists disagree in section " + in.section());
    return out;
}

}  // namespace alibi
