#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "alibi/seq.hpp"
#include "fixtures.hpp"

using namespace alibi;

TEST_CASE("parse_fasta single record") {
    auto records = parse_fasta(">g1\nACGT\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].id == "g1");
    CHECK(records[0].bases == "ACGT");
}

TEST_CASE("parse_fasta folds lines and uppercases") {
    auto records = parse_fasta(">g1\nAC\ngt\n>g2\nTT\n");
    REQUIRE(records.size() == 2);
    CHECK(records[0].bases == "ACGT");
    CHECK(records[1].bases == "TT");
}

TEST_CASE("parse_fasta rejects the reserved byte") {
    CHECK_THROWS_AS(parse_fasta(">g1\nAC#T\n"), ReservedByteError);
}

TEST_CASE("parse_fasta reports the offending line") {
    try {
        parse_fasta(">g1\nACGT\nAC GT\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("parse_fasta rejects data before a header and empty input") {
    CHECK_THROWS_AS(parse_fasta("ACGT\n"), ParseError);
    CHECK_THROWS_AS(parse_fasta("\n\n"), ParseError);
    CHECK_THROWS_AS(parse_fasta(">g1\n>g2\nAC\n"), ParseError);
}

TEST_CASE("concatenate one and two genomes") {
    ConcatenatedText one = concatenate({{"g1", "AC"}});
    CHECK(one.bytes() == "AC");
    CHECK(one.size() == 2);

    ConcatenatedText two = concatenate({{"g1", "AC"}, {"g2", "GT"}});
    CHECK(two.bytes() == "AC#GT");
    CHECK(two.size() == 5);
    REQUIRE(two.genomes().size() == 2);
    CHECK(two.genomes()[1].global_start == 4);
}

TEST_CASE("concatenate running example") {
    ConcatenatedText t = concatenate({{"g1", fixtures::kRunningText}});
    CHECK(t.bytes() == "abaabab");
    CHECK(t.size() == 7);
}

TEST_CASE("concatenate rejects an empty collection") {
    CHECK_THROWS_AS(concatenate({}), ValidationError);
}

TEST_CASE("project maps separator-free intervals") {
    ConcatenatedText t = concatenate({{"g1", "AC"}, {"g2", "GT"}});
    auto [id2, local2] = t.project(4, 2);
    CHECK(id2 == "g2");
    CHECK(local2 == 1);
    auto [id1, local1] = t.project(1, 2);
    CHECK(id1 == "g1");
    CHECK(local1 == 1);
    CHECK_THROWS_AS(t.project(2, 2), ProjectionError);
    CHECK_THROWS_AS(t.project(3, 1), ProjectionError);
}

TEST_CASE("project round-trips with to_global over random collections") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<GenomeRecord> genomes;
        int count = 1 + static_cast<int>(rng() % 5);
        for (int g = 0; g < count; ++g) {
            std::string bases(1 + rng() % 40, 'A');
            for (auto& c : bases) c = "ACGT"[rng() % 4];
            genomes.push_back({"g" + std::to_string(g + 1), bases});
        }
        ConcatenatedText t = concatenate(genomes);
        uint64_t expected = 0;
        for (const auto& g : genomes) expected += g.bases.size();
        expected += genomes.size() - 1;
        CHECK(t.size() == expected);  // length law
        for (const GenomeSpan& span : t.genomes()) {
            for (int probe = 0; probe < 5; ++probe) {
                uint64_t local = 1 + rng() % span.length;
                uint64_t len = 1 + rng() % (span.length - local + 1);
                uint64_t global = t.to_global(span.id, local);
                auto [id, back] = t.project(global, len);
                CHECK(id == span.id);
                CHECK(back == local);
            }
        }
    }
}

TEST_CASE("apply_alignment identity and substitution") {
    CHECK(apply_alignment("ACGT", {"g", {{EditOp::Kind::match, 4, {}}}}) == "ACGT");
    AlignmentScript s{"g",
                      {{EditOp::Kind::match, 1, {}},
                       {EditOp::Kind::subst, 1, "G"},
                       {EditOp::Kind::match, 2, {}}}};
    CHECK(apply_alignment("ACGT", s) == "AGGT");
}

TEST_CASE("apply_alignment reproduces the toy aligned genome") {
    auto scripts = parse_alignment_file(fixtures::kToyScriptLine);
    REQUIRE(scripts.size() == 1);
    CHECK(scripts[0].genome_id == "g2");
    CHECK(apply_alignment(fixtures::kToyReference, scripts[0]) == fixtures::kToyGenome);
}

TEST_CASE("apply_alignment rejects length mismatches") {
    CHECK_THROWS_AS(apply_alignment("ACGT", {"g", {{EditOp::Kind::match, 3, {}}}}),
                    ValidationError);
}

TEST_CASE("alignment script text round-trips") {
    auto scripts = parse_alignment_file("g2\t10= 3ICAC 13= 1XT 10= 3D 11=\n");
    REQUIRE(scripts.size() == 1);
    CHECK(format_alignment_script(scripts[0]) == "g2\t10= 3ICAC 13= 1XT 10= 3D 11=");
}

TEST_CASE("alignment script parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_alignment_file("g1\t4Q\n"), ParseError);
    CHECK_THROWS_AS(parse_alignment_file("no-tab-here\n"), ParseError);
    CHECK_THROWS_AS(parse_alignment_file("g1\t2IAC 0=\n"), ParseError);
    try {
        parse_alignment_file("g1\t4=\ng2\t4?\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("interval_has_separator") {
    ConcatenatedText t = concatenate({{"g1", "AC"}, {"g2", "GT"}});
    CHECK(t.interval_has_separator(2, 3));
    CHECK_FALSE(t.interval_has_separator(1, 2));
    CHECK_FALSE(t.interval_has_separator(4, 2));
}
