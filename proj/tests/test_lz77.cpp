#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "alibi/lz77.hpp"
#include "alibi/error.hpp"
#include "fixtures.hpp"

using namespace alibi;

namespace {

std::string random_text(std::mt19937_64& rng, size_t max_len, int sigma) {
    size_t len = 1 + rng() % max_len;
    std::string s(len, 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
    return s;
}

// binary de Bruijn sequence of order n via the standard greedy construction
std::string de_bruijn(int n) {
    std::vector<int> a(2 * n, 0);
    std::string seq;
    auto db = [&](auto&& self, int t, int p) -> void {
        if (t > n) {
            if (n % p == 0)
                for (int i = 1; i <= p; ++i) seq += static_cast<char>('a' + a[i]);
        } else {
            a[t] = a[t - p];
            self(self, t + 1, p);
            for (int j = a[t - p] + 1; j < 2; ++j) {
                a[t] = j;
                self(self, t + 1, t);
            }
        }
    };
    db(db, 1, 1);
    return seq;
}

}  // namespace

TEST_CASE("brute force parse basics") {
    Lz77Parse a = brute_force_parse("a");
    REQUIRE(a.phrases.size() == 1);
    CHECK(a.phrases[0] == literal_phrase(1, 'a'));

    Lz77Parse ab = brute_force_parse("ab");
    REQUIRE(ab.phrases.size() == 2);
    CHECK(ab.phrases[1] == literal_phrase(2, 'b'));

    Lz77Parse abab = brute_force_parse("abab");
    REQUIRE(abab.phrases.size() == 3);
    CHECK(abab.phrases[2] == copy_phrase(3, 2, 1));
}

TEST_CASE("parse of aaaa uses a self-overlapping source") {
    Lz77Parse p = parse_bytes("aaaa");
    REQUIRE(p.phrases.size() == 2);
    CHECK(p.phrases[0] == literal_phrase(1, 'a'));
    CHECK(p.phrases[1] == copy_phrase(2, 3, 1));
}

TEST_CASE("parse of the running example") {
    Lz77Parse p = parse_bytes(fixtures::kRunningText);
    REQUIRE(p.phrases.size() == 5);
    CHECK(p.phrases[0] == literal_phrase(1, 'a'));
    CHECK(p.phrases[1] == literal_phrase(2, 'b'));
    CHECK(p.phrases[2] == copy_phrase(3, 1, 1));
    CHECK(p.phrases[3] == copy_phrase(4, 3, 1));
    CHECK(p.phrases[4] == copy_phrase(7, 1, 2));
    CHECK(p.cuts() == std::vector<uint64_t>{1, 2, 3, 6});
}

TEST_CASE("decode round-trips and resolves overlaps") {
    Lz77Parse manual;
    manual.text_length = 4;
    manual.phrases = {literal_phrase(1, 'a'), copy_phrase(2, 3, 1)};
    CHECK(decode(manual) == "aaaa");
    CHECK(decode(parse_bytes(fixtures::kRunningText)) == fixtures::kRunningText);
}

TEST_CASE("decode rejects malformed parses") {
    Lz77Parse gap;
    gap.text_length = 3;
    gap.phrases = {literal_phrase(1, 'a'), literal_phrase(3, 'b')};
    CHECK_THROWS_AS(decode(gap), StructuralError);

    Lz77Parse bad_src;
    bad_src.text_length = 2;
    bad_src.phrases = {literal_phrase(1, 'a'), copy_phrase(2, 1, 2)};
    CHECK_THROWS_AS(decode(bad_src), StructuralError);
}

TEST_CASE("parse equals brute force on random and adversarial texts") {
    std::mt19937_64 rng(11);
    auto check_text = [&](const std::string& text) {
        Lz77Parse fast = parse_bytes(text);
        Lz77Parse slow = brute_force_parse(text);
        REQUIRE(fast.phrases.size() == slow.phrases.size());
        for (size_t i = 0; i < fast.phrases.size(); ++i) CHECK(fast.phrases[i] == slow.phrases[i]);
        CHECK(decode(fast) == text);
        for (const Phrase& ph : fast.phrases)
            if (!ph.is_literal) CHECK(ph.source < ph.start);
    };
    for (int iter = 0; iter < 60; ++iter) check_text(random_text(rng, 400, 2));
    for (int iter = 0; iter < 60; ++iter) check_text(random_text(rng, 400, 4));
    check_text(std::string(300, 'a'));                       // unary
    std::string periodic;
    while (periodic.size() < 240) periodic += "abc";
    check_text(periodic);
    check_text(de_bruijn(8));
}

TEST_CASE("phrases tile the text") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 20; ++iter) {
        std::string text = random_text(rng, 300, 3);
        Lz77Parse p = parse_bytes(text);
        uint64_t next = 1;
        for (const Phrase& ph : p.phrases) {
            CHECK(ph.start == next);
            next += ph.length;
        }
        CHECK(next == text.size() + 1);
        CHECK(p.cuts().size() == p.phrases.size() - 1);
    }
}

TEST_CASE("parse rejects empty input") {
    CHECK_THROWS_AS(parse_bytes(""), ParameterError);
    CHECK_THROWS_AS(brute_force_parse(""), ParameterError);
}

TEST_CASE("dump_parse format") {
    CHECK(dump_parse(parse_bytes("aaaa")) == "1\t1\tLIT a\n2\t3\tCPY 1\n");
}

TEST_CASE("separators parse as ordinary characters") {
    Lz77Parse p = parse_bytes("ab#ab#ab");
    CHECK(decode(p) == "ab#ab#ab");
    CHECK(p.phrases[2] == literal_phrase(3, '#'));
}
