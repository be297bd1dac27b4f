#include "alibi/hybrid_index.hpp"

#include <algorithm>
#include <unordered_set>

#include "alibi/error.hpp"
#include "alibi/serial.hpp"

namespace alibi {

// --- SourceGrid ----------------------------------------------------------

SourceGrid SourceGrid::build(const Lz77Parse& parse, const std::vector<DummyPhrase>& dummies,
                             uint32_t gap_sample_rate) {
    SourceGrid out;
    out.text_len_ = parse.text_length;
    out.boundaries_ = GapList::build(parse.cuts(), GapList::Order::strictly_increasing,
                                     gap_sample_rate);
    out.dummies_ = dummies;

    struct Raw {
        uint64_t source_start;
        int32_t ptr;
        uint64_t length;
    };
    std::vector<Raw> raw;
    for (size_t j = 0; j < parse.phrases.size(); ++j) {
        const Phrase& ph = parse.phrases[j];
        if (ph.is_literal) continue;
        raw.push_back({ph.source, static_cast<int32_t>(j), ph.length});
    }
    for (size_t d = 0; d < dummies.size(); ++d)
        raw.push_back({dummies[d].source_start, static_cast<int32_t>(~d), dummies[d].length});
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Raw& a, const Raw& b) { return a.source_start < b.source_start; });

    std::vector<uint64_t> starts, ends;
    starts.reserve(raw.size());
    ends.reserve(raw.size());
    for (const Raw& r : raw) {
        starts.push_back(r.source_start);
        ends.push_back(r.source_start + r.length - 1);
        out.ptr_.push_back(r.ptr);
    }
    out.starts_ = GapList::build(starts, GapList::Order::non_decreasing, gap_sample_rate);
    if (!ends.empty()) out.end_rmq_ = RangeMaxIndex::build(ends);
    return out;
}

SourceGrid::Entry SourceGrid::entry(uint64_t rank) const {
    if (rank == 0 || rank > ptr_.size()) throw BoundsError("source grid rank out of range");
    int32_t p = ptr_[rank - 1];
    uint64_t start = starts_.at(rank);
    if (p < 0) {
        const DummyPhrase& d = dummies_[~p];
        return {start, d.phrase_start, d.length};
    }
    auto [boundary, next] = boundaries_.pair_at(p);
    if (next == 0) next = text_len_;
    return {start, boundary + 1, next - boundary};
}

std::vector<uint64_t> SourceGrid::report_covering(uint64_t l, uint64_t r) const {
    std::vector<uint64_t> out;
    for_each_covering(l, r, [&](uint64_t rank, const Entry&) { out.push_back(rank); });
    return out;
}

void SourceGrid::serialize(std::string& out) const {
    put_varint(out, text_len_);
    starts_.serialize(out);
    boundaries_.serialize(out);
    put_varint(out, ptr_.size());
    for (int32_t p : ptr_) put_varint(out, zigzag_encode(p));
    put_varint(out, dummies_.size());
    for (const DummyPhrase& d : dummies_) {
        put_varint(out, d.source_start);
        put_varint(out, d.phrase_start);
        put_varint(out, d.length);
    }
    end_rmq_.serialize(out);
}

SourceGrid SourceGrid::deserialize(ByteReader& in) {
    SourceGrid out;
    out.text_len_ = in.varint();
    out.starts_ = GapList::deserialize(in);
    out.boundaries_ = GapList::deserialize(in);
    uint64_t np = in.varint();
    out.ptr_.resize(np);
    for (auto& p : out.ptr_) p = static_cast<int32_t>(zigzag_decode(in.varint()));
    uint64_t nd = in.varint();
    out.dummies_.resize(nd);
    for (auto& d : out.dummies_) {
        d.source_start = in.varint();
        d.phrase_start = in.varint();
        d.length = in.varint();
    }
    out.end_rmq_ = RangeMaxIndex::deserialize(in);
    if (out.starts_.size() != np || out.end_rmq_.size() != np)
        throw FormatError("source grid start list mismatch in section " + in.section());
    for (int32_t p : out.ptr_) {
        if (p >= 0 && (p < 1 || static_cast<uint64_t>(p) > out.boundaries_.size()))
            throw FormatError("source grid boundary pointer corrupt in section " + in.section());
        if (p < 0 && static_cast<size_t>(~p) >= out.dummies_.size())
            throw FormatError("source grid dummy pointer corrupt in section " + in.section());
    }
    return out;
}

// --- HybridIndex ---------------------------------------------------------

HybridIndex HybridIndex::build(const ConcatenatedText& text, uint32_t M, uint32_t K,
                               const HybridBuildOptions& options) {
    if (M < 1) throw ParameterError("M must be at least 1");
    HybridIndex ix;
    ix.text_len_ = text.size();
    ix.m_ = M;
    ix.k_ = K;
    ix.dedup_ = options.dedup;
    ix.genomes_.assign(text.genomes().begin(), text.genomes().end());

    Lz77Parse lz = parse(text);
    KernelText kernel = build_kernel(text, lz, M, K);
    std::vector<DummyPhrase> dummies;
    if (options.dedup)
        std::tie(kernel, dummies) = dedup_kernel(kernel);
    ix.kernel_ = std::move(kernel);
    ix.grid_ = SourceGrid::build(lz, dummies, options.gap_sample_rate);
    ix.kernel_index_ = SelfIndex::build(ix.kernel_.bytes, options.sa_sample_rate);
    return ix;
}

void HybridIndex::validate_query(std::string_view pattern, uint32_t k) const {
    if (pattern.empty()) throw ParameterError("empty pattern");
    if (pattern.size() > m_)
        throw ParameterError("pattern length " + std::to_string(pattern.size()) +
                             " exceeds M (index built with M=" + std::to_string(m_) +
                             ", K=" + std::to_string(k_) + ")");
    if (k > k_)
        throw ParameterError("edit distance " + std::to_string(k) +
                             " exceeds K (index built with M=" + std::to_string(m_) +
                             ", K=" + std::to_string(k_) + ")");
    if (pattern.find(static_cast<char>(kSeparator)) != std::string_view::npos)
        throw ReservedByteError("pattern contains the reserved separator byte");
}

std::vector<Occurrence> HybridIndex::find_primary(std::string_view pattern, uint32_t k) const {
    validate_query(pattern, k);
    std::vector<Occurrence> out;
    if (kernel_.bytes.empty()) return out;
    for (const ApproxMatch& m : kernel_index_.bounded_edit_search(pattern, k)) {
        // matches touching a separator cannot correspond to occurrences in T
        bool has_sep = false;
        for (uint64_t p = m.start; p <= m.end && !has_sep; ++p)
            has_sep = static_cast<uint8_t>(kernel_.bytes[p - 1]) == kSeparator;
        if (has_sep) continue;
        if (auto mapped = map_kernel_match(kernel_, m.start, m.end))
            out.push_back({mapped->first, mapped->second - mapped->first + 1, m.dist});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Occurrence> HybridIndex::find_all(std::string_view pattern, uint32_t k) const {
    std::vector<Occurrence> list = find_primary(pattern, k);

    // Without dummy phrases every copy is generated exactly once, so the seen
    // set is only needed after kernel dedup, where an occurrence inside a
    // removed segment can arrive both through the dummy and through a real
    // phrase chain.
    auto key = [](uint64_t start, uint64_t end) { return (start << 32) | end; };
    std::unordered_set<uint64_t> seen;
    const bool guard = grid_.has_dummies();
    if (guard) {
        seen.reserve(list.size() * 2);
        for (const Occurrence& o : list) seen.insert(key(o.global_start, o.global_end()));
    }

    const uint64_t iteration_cap = (text_len_ + 1) * (2 * uint64_t{k} + 2);
    SourceGrid::Cursor cursor = grid_.make_cursor();
    size_t head = 0;
    while (head < list.size()) {
        if (head > iteration_cap)
            throw StructuralError("secondary expansion failed to terminate");
        Occurrence occ = list[head++];
        uint64_t l = occ.global_start, r = occ.global_end();
        grid_.for_each_covering(l, r, cursor, [&](uint64_t, const SourceGrid::Entry& e) {
            uint64_t copy_start = e.phrase_start + (l - e.source_start);
            uint64_t copy_end = e.phrase_start + (r - e.source_start);
            if (!guard || seen.insert(key(copy_start, copy_end)).second)
                list.push_back({copy_start, copy_end - copy_start + 1, occ.edit_distance});
        });
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());  // no-op by construction
    return list;
}

void HybridIndex::save(std::ostream& out) const {
    SectionWriter w(out);
    std::string params;
    put_u32(params, m_);
    put_u32(params, k_);
    put_varint(params, text_len_);
    params.push_back(dedup_ ? 1 : 0);
    w.section("PRMH", params);

    std::string goff;
    put_varint(goff, genomes_.size());
    for (const GenomeSpan& g : genomes_) {
        put_str(goff, g.id);
        put_varint(goff, g.global_start);
        put_varint(goff, g.length);
    }
    w.section("GOFF", goff);

    std::string kern;
    kernel_.serialize(kern);
    w.section("KERN", kern);

    std::string sidx;
    kernel_index_.serialize(sidx);
    w.section("SIDX", sidx);

    std::string grid;
    grid_.serialize(grid);
    w.section("GRID", grid);
}

HybridIndex HybridIndex::load_sections(const std::vector<Section>& sections) {
    HybridIndex ix;
    bool have[5] = {};
    for (const Section& s : sections) {
        ByteReader in(s.payload, s.tag);
        if (s.tag == "PRMH") {
            ix.m_ = in.u32();
            ix.k_ = in.u32();
            ix.text_len_ = in.varint();
            ix.dedup_ = in.u8() != 0;
            in.expect_done();
            have[0] = true;
        } else if (s.tag == "GOFF") {
            uint64_t ng = in.varint();
            ix.genomes_.resize(ng);
            for (auto& g : ix.genomes_) {
                g.id = in.str();
                g.global_start = in.varint();
                g.length = in.varint();
            }
            in.expect_done();
            have[1] = true;
        } else if (s.tag == "KERN") {
            ix.kernel_ = KernelText::deserialize(in);
            in.expect_done();
            have[2] = true;
        } else if (s.tag == "SIDX") {
            ix.kernel_index_ = SelfIndex::deserialize(in);
            in.expect_done();
            have[3] = true;
        } else if (s.tag == "GRID") {
            ix.grid_ = SourceGrid::deserialize(in);
            in.expect_done();
            have[4] = true;
        } else {
            throw FormatError("unknown section " + s.tag + " in hybrid index");
        }
    }
    const char* names[5] = {"PRMH", "GOFF", "KERN", "SIDX", "GRID"};
    for (int i = 0; i < 5; ++i)
        if (!have[i]) throw FormatError(std::string("missing section ") + names[i]);
    return ix;
}

}  // namespace alibi
