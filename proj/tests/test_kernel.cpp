#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "alibi/kernel.hpp"
#include "alibi/error.hpp"
#include "alibi/serial.hpp"
#include "alibi/testkit.hpp"
#include "fixtures.hpp"

using namespace alibi;

namespace {

// direct evaluation of the keep rule, including the degenerate M+K=1 windows
std::set<uint64_t> kept_positions(uint64_t n, const std::vector<uint64_t>& cuts,
                                  uint64_t M, uint64_t K) {
    std::set<uint64_t> kept;
    uint64_t w = M + K;
    for (uint64_t c : cuts) {
        uint64_t lo = w >= 2 ? (c + 2 > w ? c + 2 - w : 1) : c;
        uint64_t hi = std::min(n, std::max(c + w - 1, c + 1));
        for (uint64_t p = lo; p <= hi; ++p) kept.insert(p);
    }
    return kept;
}

std::set<uint64_t> kernel_kept(const KernelText& kernel) {
    std::set<uint64_t> kept;
    for (const KernelSegment& seg : kernel.segments)
        for (uint64_t i = 0; i < seg.length; ++i) kept.insert(seg.t_start + i);
    return kept;
}

std::string random_text(std::mt19937_64& rng, size_t len, int sigma) {
    std::string s(len, 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
    return s;
}

}  // namespace

TEST_CASE("running example kernel") {
    Lz77Parse p = parse_bytes(fixtures::kRunningText);
    KernelText kernel = build_kernel_bytes(fixtures::kRunningText, p, 2, 0);
    CHECK(kernel.bytes == "abaa#ab");
    CHECK(kernel_kept(kernel) == std::set<uint64_t>{1, 2, 3, 4, 6, 7});
    CHECK(kernel.cuts_in_t.to_vector() == std::vector<uint64_t>{1, 2, 3, 6});
    CHECK(kernel.cuts_in_kernel.to_vector() == std::vector<uint64_t>{1, 2, 3, 6});
}

TEST_CASE("M at least n keeps everything") {
    Lz77Parse p = parse_bytes(fixtures::kRunningText);
    KernelText kernel = build_kernel_bytes(fixtures::kRunningText, p, 7, 0);
    CHECK(kernel.bytes == fixtures::kRunningText);
    CHECK(kernel.segments.size() == 1);
}

TEST_CASE("degenerate M=1 K=0 window keeps the cut flanks") {
    Lz77Parse p = parse_bytes("aaaa");
    KernelText kernel = build_kernel_bytes("aaaa", p, 1, 0);
    CHECK(kernel.bytes == "aa");
    CHECK(kernel_kept(kernel) == std::set<uint64_t>{1, 2});
}

TEST_CASE("kept set equals the keep rule on random texts") {
    std::mt19937_64 rng(19);
    for (int iter = 0; iter < 40; ++iter) {
        std::string text = random_text(rng, 2 + rng() % 200, 2 + rng() % 3);
        Lz77Parse p = parse_bytes(text);
        uint32_t M = 1 + static_cast<uint32_t>(rng() % 6);
        uint32_t K = static_cast<uint32_t>(rng() % 3);
        KernelText kernel = build_kernel_bytes(text, p, M, K);
        CHECK(kernel_kept(kernel) == kept_positions(text.size(), p.cuts(), M, K));
        // segments carry the text bytes and K+1 separators sit between them
        std::string rebuilt;
        for (const KernelSegment& seg : kernel.segments) {
            if (!rebuilt.empty()) rebuilt.append(K + 1, '#');
            rebuilt += text.substr(seg.t_start - 1, seg.length);
        }
        CHECK(rebuilt == kernel.bytes);
        CHECK(kernel.cuts_in_t.size() == kernel.cuts_in_kernel.size());
    }
}

TEST_CASE("position arithmetic law around cuts") {
    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 20; ++iter) {
        std::string text = random_text(rng, 50 + rng() % 150, 3);
        Lz77Parse p = parse_bytes(text);
        uint32_t M = 2 + static_cast<uint32_t>(rng() % 4);
        uint32_t K = static_cast<uint32_t>(rng() % 2);
        KernelText kernel = build_kernel_bytes(text, p, M, K);
        auto cuts_t = kernel.cuts_in_t.to_vector();
        auto cuts_k = kernel.cuts_in_kernel.to_vector();
        // the kept window left of a cut spans offsets 0..M+K-2
        for (size_t i = 0; i < cuts_t.size(); ++i) {
            for (uint64_t d = 0; d + 1 < static_cast<uint64_t>(M) + K && d < cuts_t[i] &&
                                 d < cuts_k[i]; ++d) {
                CHECK(kernel.bytes[cuts_k[i] - d - 1] == text[cuts_t[i] - d - 1]);
            }
        }
    }
}

TEST_CASE("map_kernel_match on the running example") {
    Lz77Parse p = parse_bytes(fixtures::kRunningText);
    KernelText kernel = build_kernel_bytes(fixtures::kRunningText, p, 2, 0);

    auto m1 = map_kernel_match(kernel, 1, 2);
    REQUIRE(m1.has_value());
    CHECK(*m1 == std::make_pair(uint64_t{1}, uint64_t{2}));

    auto m2 = map_kernel_match(kernel, 6, 7);
    REQUIRE(m2.has_value());
    CHECK(*m2 == std::make_pair(uint64_t{6}, uint64_t{7}));

    auto m3 = map_kernel_match(kernel, 3, 4);
    REQUIRE(m3.has_value());
    CHECK(*m3 == std::make_pair(uint64_t{3}, uint64_t{4}));

    CHECK_FALSE(map_kernel_match(kernel, 4, 4).has_value());
    CHECK_THROWS_AS(map_kernel_match(kernel, 4, 6), StructuralError);
    CHECK_THROWS_AS(map_kernel_match(kernel, 0, 2), BoundsError);
}

TEST_CASE("map_kernel_match is injective over primary matches") {
    std::mt19937_64 rng(53);
    for (int iter = 0; iter < 10; ++iter) {
        std::string text = random_text(rng, 100 + rng() % 100, 2);
        Lz77Parse p = parse_bytes(text);
        KernelText kernel = build_kernel_bytes(text, p, 4, 1);
        std::set<std::pair<uint64_t, uint64_t>> images;
        for (uint64_t s = 1; s <= kernel.bytes.size(); ++s) {
            for (uint64_t e = s; e <= std::min<uint64_t>(kernel.bytes.size(), s + 5); ++e) {
                bool sep = false;
                for (uint64_t i = s; i <= e; ++i) sep |= kernel.bytes[i - 1] == '#';
                if (sep) continue;
                auto mapped = map_kernel_match(kernel, s, e);
                if (!mapped) continue;
                CHECK(images.insert(*mapped).second);
                // the mapped interval carries the same bytes
                for (uint64_t d = 0; d <= e - s; ++d)
                    CHECK(text[mapped->first + d - 1] == kernel.bytes[s + d - 1]);
            }
        }
    }
}

TEST_CASE("primary occurrences stay inside kept characters") {
    std::mt19937_64 rng(59);
    for (int iter = 0; iter < 20; ++iter) {
        std::string text = random_text(rng, 100 + rng() % 200, 2);
        Lz77Parse p = parse_bytes(text);
        uint32_t M = 3 + static_cast<uint32_t>(rng() % 3);
        uint32_t K = static_cast<uint32_t>(rng() % 2);
        KernelText kernel = build_kernel_bytes(text, p, M, K);
        auto kept = kernel_kept(kernel);
        auto cuts = p.cuts();
        for (int q = 0; q < 10; ++q) {
            size_t len = 1 + rng() % M;
            if (len > text.size()) continue;
            size_t pos = rng() % (text.size() - len + 1);
            std::string pattern = text.substr(pos, len);
            for (const ApproxMatch& m : naive_find_all(text, pattern, K)) {
                auto it = std::lower_bound(cuts.begin(), cuts.end(), m.start);
                bool primary = it != cuts.end() && *it + 1 <= m.end;
                if (!primary) continue;
                for (uint64_t i = m.start; i <= m.end; ++i) CHECK(kept.count(i) == 1);
            }
        }
    }
}

TEST_CASE("segments merge when cut windows touch") {
    // cuts at 1,2,3,6 with M=2,K=0 merge into two segments around {1,2,3} and {6}
    Lz77Parse p = parse_bytes(fixtures::kRunningText);
    KernelText kernel = build_kernel_bytes(fixtures::kRunningText, p, 2, 0);
    REQUIRE(kernel.segments.size() == 2);
    CHECK(kernel.segments[0] == KernelSegment{1, 1, 4});
    CHECK(kernel.segments[1] == KernelSegment{6, 6, 2});
}

TEST_CASE("dedup removes duplicate segments and adds dummies") {
    // near-identical copies repeat kept segments around the copy boundaries
    SyntheticCollection coll = gen_synthetic({2000, 10, 0.002, 0.0, 4, 77});
    ConcatenatedText t = concatenate(parse_fasta(coll.fasta));
    Lz77Parse p = parse(t);
    KernelText kernel = build_kernel(t, p, 8, 0);
    auto [deduped, dummies] = dedup_kernel(kernel);
    REQUIRE(!dummies.empty());
    CHECK(deduped.bytes.size() < kernel.bytes.size());
    CHECK(deduped.segments.size() + dummies.size() == kernel.segments.size());
    for (const DummyPhrase& d : dummies) {
        CHECK(d.source_start < d.phrase_start);
        CHECK(t.bytes().substr(d.source_start - 1, d.length) ==
              t.bytes().substr(d.phrase_start - 1, d.length));
    }
    // a kernel without duplicate segments is left alone
    auto [same, none] = dedup_kernel(deduped);
    CHECK(none.empty());
    CHECK(same.bytes == deduped.bytes);
}

TEST_CASE("kernel serialization round-trip") {
    Lz77Parse p = parse_bytes(fixtures::kRunningText);
    KernelText kernel = build_kernel_bytes(fixtures::kRunningText, p, 2, 0);
    std::string blob;
    kernel.serialize(blob);
    ByteReader in(blob, "test");
    KernelText back = KernelText::deserialize(in);
    CHECK(back.bytes == kernel.bytes);
    CHECK(back.cuts_in_t.to_vector() == kernel.cuts_in_t.to_vector());
    CHECK(back.segments == kernel.segments);
}

TEST_CASE("build_kernel validates parameters") {
    Lz77Parse p = parse_bytes("ab");
    CHECK_THROWS_AS(build_kernel_bytes("ab", p, 0, 0), ParameterError);
    CHECK_THROWS_AS(build_kernel_bytes("abc", p, 2, 0), ParameterError);
}
