#include <benchmark/benchmark.h>

#include <random>

#include "alibi/gap_list.hpp"
#include "alibi/lz77.hpp"
#include "alibi/range_max.hpp"
#include "alibi/testkit.hpp"

using namespace alibi;

namespace {

std::string synthetic_text(uint64_t base, uint32_t genomes) {
    SyntheticCollection coll = gen_synthetic({base, genomes, 0.001, 0.0001, 8, 17});
    return concatenate(parse_fasta(coll.fasta)).bytes();
}

}  // namespace

static void BM_Lz77Parse(benchmark::State& state) {
    std::string text = synthetic_text(10000, static_cast<uint32_t>(state.range(0)));
    for (auto _ : state) {
        Lz77Parse p = parse_bytes(text);
        benchmark::DoNotOptimize(p.phrases.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Lz77Parse)->Arg(5)->Arg(20);

static void BM_GapListAccess(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<uint64_t> values;
    uint64_t v = 0;
    for (int i = 0; i < 100000; ++i) values.push_back(v += 1 + rng() % 16);
    GapList list = GapList::build(values, GapList::Order::strictly_increasing,
                                  static_cast<uint32_t>(state.range(0)));
    uint64_t rank = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(list.at(rank));
        rank = rank % values.size() + 7919 % values.size();
        if (rank == 0 || rank > values.size()) rank = 1;
    }
}
BENCHMARK(BM_GapListAccess)->Arg(16)->Arg(64)->Arg(256);

static void BM_GapListPredecessor(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::vector<uint64_t> values;
    uint64_t v = 0;
    for (int i = 0; i < 100000; ++i) values.push_back(v += 1 + rng() % 16);
    GapList list = GapList::build(values);
    uint64_t x = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(list.predecessor(x));
        x = (x + 104729) % values.back() + 1;
    }
}
BENCHMARK(BM_GapListPredecessor);

static void BM_RangeMaxQuery(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::vector<uint64_t> values(static_cast<size_t>(state.range(0)));
    for (auto& x : values) x = rng();
    RangeMaxIndex rmq = RangeMaxIndex::build(values);
    uint64_t l = 1;
    for (auto _ : state) {
        uint64_t r = l + (rng() % (values.size() - l + 1));
        benchmark::DoNotOptimize(rmq.query(l, r));
        l = l % (values.size() - 1) + 1;
    }
}
BENCHMARK(BM_RangeMaxQuery)->Arg(1024)->Arg(65536);
