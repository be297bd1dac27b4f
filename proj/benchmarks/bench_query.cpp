#include <benchmark/benchmark.h>

#include <random>

#include "alibi/alignment_index.hpp"
#include "alibi/hybrid_index.hpp"
#include "alibi/testkit.hpp"

using namespace alibi;

namespace {

struct QueryFixture {
    ConcatenatedText text;
    HybridIndex hybrid;
    AlibiIndex alibi;
    SelfIndex baseline;
    std::vector<std::string> patterns;

    explicit QueryFixture(uint32_t genomes) {
        SyntheticCollection coll = gen_synthetic({10000, genomes, 0.0005, 0.00005, 8, 23});
        std::vector<GenomeRecord> records = parse_fasta(coll.fasta);
        std::vector<AlignmentScript> scripts = parse_alignment_file(coll.alignments);
        text = concatenate(records);
        hybrid = HybridIndex::build(text, 16, 0);
        alibi = AlibiIndex::build(records, scripts, "g1", 16, 0);
        baseline = SelfIndex::build(text.bytes());
        std::mt19937_64 rng(31);
        while (patterns.size() < 32) {
            uint64_t pos = rng() % (text.size() - 8);
            std::string p = text.bytes().substr(pos, 8);
            if (p.find('#') == std::string::npos) patterns.push_back(std::move(p));
        }
    }
};

const QueryFixture& fixture(uint32_t genomes) {
    static QueryFixture small(10);
    static QueryFixture large(40);
    return genomes == 10 ? small : large;
}

}  // namespace

static void BM_HybridFindAll(benchmark::State& state) {
    const QueryFixture& f = fixture(static_cast<uint32_t>(state.range(0)));
    size_t i = 0;
    uint64_t occ = 0;
    for (auto _ : state) {
        occ += f.hybrid.find_all(f.patterns[i % f.patterns.size()], 0).size();
        ++i;
    }
    state.counters["occ/iter"] = static_cast<double>(occ) / state.iterations();
}
BENCHMARK(BM_HybridFindAll)->Arg(10)->Arg(40);

static void BM_AlibiFindAll(benchmark::State& state) {
    const QueryFixture& f = fixture(static_cast<uint32_t>(state.range(0)));
    size_t i = 0;
    uint64_t occ = 0;
    for (auto _ : state) {
        occ += f.alibi.find_all(f.patterns[i % f.patterns.size()], 0).size();
        ++i;
    }
    state.counters["occ/iter"] = static_cast<double>(occ) / state.iterations();
}
BENCHMARK(BM_AlibiFindAll)->Arg(10)->Arg(40);

static void BM_BaselineLocate(benchmark::State& state) {
    const QueryFixture& f = fixture(static_cast<uint32_t>(state.range(0)));
    size_t i = 0;
    uint64_t occ = 0;
    for (auto _ : state) {
        occ += f.baseline.locate(f.patterns[i % f.patterns.size()]).size();
        ++i;
    }
    state.counters["occ/iter"] = static_cast<double>(occ) / state.iterations();
}
BENCHMARK(BM_BaselineLocate)->Arg(10)->Arg(40);
