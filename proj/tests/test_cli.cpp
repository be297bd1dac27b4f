#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "alibi/container.hpp"
#include "alibi/testkit.hpp"
#include "commands.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace alibi;

namespace {

struct RunResult {
    int status;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        size_t eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "alibi_cli_tests";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
}

}  // namespace

TEST_CASE("build-lz over the running example reports z=5") {
    fs::path dir = temp_dir();
    write_file(dir / "run.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "run.idx";
    RunResult r = run({"build-lz", "--fasta", (dir / "run.fasta").string(), "--M", "2",
                       "--K", "0", "--out", idx.string()});
    REQUIRE(r.status == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["n"] == "7");
    CHECK(kv["z"] == "5");
    CHECK(kv["kernel_length"] == "7");
    CHECK(fs::exists(idx));
}

TEST_CASE("build-lz without --M is a usage error") {
    fs::path dir = temp_dir();
    write_file(dir / "u.fasta", ">g1\nACGT\n");
    RunResult r = run({"build-lz", "--fasta", (dir / "u.fasta").string(), "--out",
                       (dir / "u.idx").string()});
    CHECK(r.status != 0);
    CHECK(r.err.find("--M") != std::string::npos);
}

TEST_CASE("build-lz with an unwritable output path fails") {
    fs::path dir = temp_dir();
    write_file(dir / "w.fasta", ">g1\nACGTACGT\n");
    RunResult r = run({"build-lz", "--fasta", (dir / "w.fasta").string(), "--M", "2",
                       "--out", "/nonexistent-dir/x.idx"});
    CHECK(r.status == 1);
    CHECK(!r.err.empty());
}

TEST_CASE("query prints sorted TSV matching the library") {
    fs::path dir = temp_dir();
    write_file(dir / "q.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "q.idx";
    REQUIRE(run({"build-lz", "--fasta", (dir / "q.fasta").string(), "--M", "2", "--out",
                 idx.string()}).status == 0);

    RunResult r = run({"query", "--index", idx.string(), "--pattern", "AB"});
    REQUIRE(r.status == 0);
    CHECK(r.out == "g1\t1\t2\t0\ng1\t4\t2\t0\ng1\t6\t2\t0\n");

    RunResult counted = run({"query", "--index", idx.string(), "--pattern", "AB", "--count"});
    CHECK(counted.out == "3\n");
}

TEST_CASE("query validates k against the stored parameters") {
    fs::path dir = temp_dir();
    write_file(dir / "k.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "k.idx";
    REQUIRE(run({"build-lz", "--fasta", (dir / "k.fasta").string(), "--M", "2", "--out",
                 idx.string()}).status == 0);
    RunResult r = run({"query", "--index", idx.string(), "--pattern", "AB", "--k", "1"});
    CHECK(r.status == 1);
    CHECK(r.err.find("K") != std::string::npos);
    CHECK(r.err.find("M=2") != std::string::npos);
}

TEST_CASE("query reads multiple patterns from a file") {
    fs::path dir = temp_dir();
    write_file(dir / "mp.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "mp.idx";
    REQUIRE(run({"build-lz", "--fasta", (dir / "mp.fasta").string(), "--M", "2", "--out",
                 idx.string()}).status == 0);
    write_file(dir / "pats.txt", "AB\nAA\nZZ\n");
    RunResult r = run({"query", "--index", idx.string(), "--patterns",
                       (dir / "pats.txt").string()});
    REQUIRE(r.status == 0);
    CHECK(r.out == "g1\t1\t2\t0\ng1\t4\t2\t0\ng1\t6\t2\t0\ng1\t3\t2\t0\n");
    RunResult counted = run({"query", "--index", idx.string(), "--patterns",
                             (dir / "pats.txt").string(), "--count"});
    CHECK(counted.out == "3\n1\n0\n");
}

TEST_CASE("query with an empty pattern file prints nothing and exits zero") {
    fs::path dir = temp_dir();
    write_file(dir / "e.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "e.idx";
    REQUIRE(run({"build-lz", "--fasta", (dir / "e.fasta").string(), "--M", "2", "--out",
                 idx.string()}).status == 0);
    write_file(dir / "empty.txt", "");
    RunResult r = run({"query", "--index", idx.string(), "--patterns",
                       (dir / "empty.txt").string()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    CHECK(r.err.empty());
}

TEST_CASE("build-alibi on the paper toy lists the marked substrings") {
    fs::path dir = temp_dir();
    write_file(dir / "toy.fasta", fixtures::kToyFasta);
    write_file(dir / "toy.aln", fixtures::kToyAlignments);
    fs::path idx = dir / "toy.idx";
    RunResult r = run({"build-alibi", "--fasta", (dir / "toy.fasta").string(), "--aln",
                       (dir / "toy.aln").string(), "--M", "2", "--K", "1", "--out",
                       idx.string(), "--verbose"});
    REQUIRE(r.status == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["distinct_marked_substrings"] == "3");
    CHECK(kv["reference"] == "g1");
    CHECK(r.out.find("marked_substring=GACACAT\n") != std::string::npos);
    CHECK(r.out.find("marked_substring=TTTTG\n") != std::string::npos);
    CHECK(r.out.find("marked_substring=TACC\n") != std::string::npos);
}

TEST_CASE("build-alibi fails when a script is missing") {
    fs::path dir = temp_dir();
    write_file(dir / "m.fasta", fixtures::kToyFasta);
    write_file(dir / "m.aln", "g1\t48=\n");
    RunResult r = run({"build-alibi", "--fasta", (dir / "m.fasta").string(), "--aln",
                       (dir / "m.aln").string(), "--M", "2", "--K", "1", "--out",
                       (dir / "m.idx").string()});
    CHECK(r.status == 1);
    CHECK(r.err.find("g2") != std::string::npos);
}

TEST_CASE("identical genomes build a reference-sized alibi kernel") {
    fs::path dir = temp_dir();
    write_file(dir / "id.fasta", ">g1\nACGTACGTACGT\n>g2\nACGTACGTACGT\n");
    write_file(dir / "id.aln", "g1\t12=\ng2\t12=\n");
    RunResult r = run({"build-alibi", "--fasta", (dir / "id.fasta").string(), "--aln",
                       (dir / "id.aln").string(), "--M", "4", "--K", "0", "--out",
                       (dir / "id.idx").string()});
    REQUIRE(r.status == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["kernel_length"] == "12");
    CHECK(kv["distinct_marked_substrings"] == "0");
}

TEST_CASE("stats sections sum to the file size") {
    fs::path dir = temp_dir();
    write_file(dir / "s.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "s.idx";
    REQUIRE(run({"build-lz", "--fasta", (dir / "s.fasta").string(), "--M", "2", "--out",
                 idx.string()}).status == 0);
    RunResult r = run({"stats", "--index", idx.string()});
    REQUIRE(r.status == 0);
    auto kv = parse_kv(r.out);
    CHECK(kv["kind"] == "hybrid");
    CHECK(std::stoull(kv["sections_total"]) + std::stoull(kv["header_bytes"]) ==
          std::stoull(kv["file_bytes"]));
    CHECK(kv.count("section.KERN") == 1);
    CHECK(kv.count("section.GRID") == 1);
}

TEST_CASE("stats distinguishes alibi sections") {
    fs::path dir = temp_dir();
    write_file(dir / "a.fasta", fixtures::kToyFasta);
    write_file(dir / "a.aln", fixtures::kToyAlignments);
    fs::path idx = dir / "a.idx";
    REQUIRE(run({"build-alibi", "--fasta", (dir / "a.fasta").string(), "--aln",
                 (dir / "a.aln").string(), "--M", "2", "--K", "1", "--out",
                 idx.string()}).status == 0);
    RunResult r = run({"stats", "--index", idx.string()});
    auto kv = parse_kv(r.out);
    CHECK(kv["kind"] == "alibi");
    CHECK(kv.count("section.ACAT") == 1);
    CHECK(kv.count("section.AGRD") == 1);
}

TEST_CASE("stats names the truncated section") {
    fs::path dir = temp_dir();
    write_file(dir / "t.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "t.idx";
    REQUIRE(run({"build-lz", "--fasta", (dir / "t.fasta").string(), "--M", "2", "--out",
                 idx.string()}).status == 0);
    auto size = fs::file_size(idx);
    fs::resize_file(idx, size - 3);
    RunResult r = run({"stats", "--index", idx.string()});
    CHECK(r.status == 1);
    CHECK(r.err.find("truncated section GRID") != std::string::npos);
}

TEST_CASE("query output equals the library across an alibi index") {
    fs::path dir = temp_dir();
    write_file(dir / "x.fasta", fixtures::kToyFasta);
    write_file(dir / "x.aln", fixtures::kToyAlignments);
    fs::path idx = dir / "x.idx";
    REQUIRE(run({"build-alibi", "--fasta", (dir / "x.fasta").string(), "--aln",
                 (dir / "x.aln").string(), "--M", "2", "--K", "1", "--out",
                 idx.string()}).status == 0);
    RunResult r = run({"query", "--index", idx.string(), "--pattern", "AC"});
    REQUIRE(r.status == 0);
    AlibiIndex ix = std::get<AlibiIndex>(load_index(idx));
    ConcatenatedText text = concatenate(parse_fasta(fixtures::kToyFasta));
    std::string expected;
    for (const Occurrence& o : ix.find_all("AC", 0)) {
        auto [id, local] = text.project(o.global_start, o.length);
        expected += std::string(id) + "\t" + std::to_string(local) + "\t" +
                    std::to_string(o.length) + "\t" + std::to_string(o.edit_distance) + "\n";
    }
    CHECK(r.out == expected);
}

TEST_CASE("gen writes a loadable deterministic collection") {
    fs::path dir = temp_dir();
    fs::path prefix = dir / "synth";
    RunResult r1 = run({"gen", "--len", "400", "--genomes", "4", "--snp", "0.01", "--indel",
                        "0.001", "--seed", "7", "--out-prefix", prefix.string()});
    REQUIRE(r1.status == 0);
    auto fasta1 = load_fasta(prefix.string() + ".fasta");
    CHECK(fasta1.size() == 4);
    auto scripts = load_alignment_file(prefix.string() + ".aln");
    CHECK(scripts.size() == 4);
    for (size_t i = 0; i < fasta1.size(); ++i)
        CHECK(apply_alignment(fasta1[0].bases, scripts[i]) == fasta1[i].bases);

    RunResult r2 = run({"gen", "--len", "400", "--genomes", "4", "--snp", "0.01", "--indel",
                        "0.001", "--seed", "7", "--out-prefix", (dir / "synth2").string()});
    REQUIRE(r2.status == 0);
    std::ifstream a(prefix.string() + ".fasta"), b((dir / "synth2").string() + ".fasta");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("bench emits one CSV row per size with deterministic sizes") {
    RunResult r1 = run({"bench", "--len", "600", "--sizes", "2,3", "--M", "4", "--seed", "5",
                        "--no-timing", "--patterns", "2"});
    REQUIRE(r1.status == 0);
    std::stringstream ss(r1.out);
    std::string header, row1, row2, extra;
    REQUIRE(std::getline(ss, header));
    REQUIRE(std::getline(ss, row1));
    REQUIRE(std::getline(ss, row2));
    CHECK_FALSE(std::getline(ss, extra));
    CHECK(header.find("collection_size") == 0);
    CHECK(row1.substr(0, 2) == "2,");
    CHECK(row2.substr(0, 2) == "3,");

    RunResult r2 = run({"bench", "--len", "600", "--sizes", "2,3", "--M", "4", "--seed", "5",
                        "--no-timing", "--patterns", "2"});
    CHECK(r1.out == r2.out);  // sizes are deterministic; timing is disabled
}

TEST_CASE("the installed binary runs end to end") {
    fs::path dir = temp_dir();
    write_file(dir / "bin.fasta", ">g1\nabaabab\n");
    fs::path idx = dir / "bin.idx";
    std::string build_cmd = std::string(ALIBI_CLI_PATH) + " build-lz --fasta " +
                            (dir / "bin.fasta").string() + " --M 2 --out " + idx.string() +
                            " > /dev/null 2>&1";
    REQUIRE(std::system(build_cmd.c_str()) == 0);
    std::string query_cmd = std::string(ALIBI_CLI_PATH) + " query --index " + idx.string() +
                            " --pattern AB > " + (dir / "bin.out").string() + " 2>/dev/null";
    REQUIRE(std::system(query_cmd.c_str()) == 0);
    std::ifstream f(dir / "bin.out");
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == "g1\t1\t2\t0\ng1\t4\t2\t0\ng1\t6\t2\t0\n");
    std::string bad_cmd = std::string(ALIBI_CLI_PATH) + " query --index " + idx.string() +
                          " > /dev/null 2>&1";
    CHECK(std::system(bad_cmd.c_str()) != 0);
}
