#include <benchmark/benchmark.h>

#include <random>

#include "ordlim/cone.hpp"
#include "ordlim/kernels.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/rewriting.hpp"

using namespace ordlim;

namespace {

const ChainSpec kSpec = ChainSpec::constant(2, 3);

std::vector<Word> frontier(std::size_t n) {
  std::vector<Word> out;
  const auto e = cone::enumerate_cone(kSpec, 1, n);
  for (const auto& entry : e) out.push_back(entry.nf);
  return out;
}

std::vector<Word> generators(int m) {
  std::vector<Word> out;
  for (const ConeGenId& id : cone_generator_ids(m)) out.push_back(cone_generator(kSpec, id));
  return out;
}

template <bool Parallel>
void BM_expand(benchmark::State& state) {
  const auto fr = frontier(static_cast<std::size_t>(state.range(0)));
  const auto gens = generators(1);
  const auto tn = rewriting::TreeNormalizer::for_chain(kSpec);
  const kernels::Normalizer nf = [&tn](const Word& w) { return tn.normalize(w); };
  for (auto _ : state) {
    auto c = Parallel ? kernels::expand_parallel(fr, gens, nf) : kernels::expand_serial(fr, gens, nf);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fr.size() * gens.size()));
}

template <cone::Exec E>
void BM_sign_batch(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> level(-1, 1), exp(-2, 2);
  std::vector<Word> words;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    std::vector<Letter> ls;
    for (int k = 0; k < 4; ++k) ls.push_back({level(rng), exp(rng)});
    words.push_back(Word::from_letters(ls));
  }
  cone::sign_batch(kSpec, words, 1, 20000, E);  // warm the shared table
  for (auto _ : state) {
    auto r = cone::sign_batch(kSpec, words, 1, 20000, E);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_expand<false>)->Name("expand/serial")->Arg(256)->Arg(2048);
BENCHMARK(BM_expand<true>)->Name("expand/parallel")->Arg(256)->Arg(2048);
BENCHMARK(BM_sign_batch<cone::Exec::Serial>)->Name("sign_batch/serial")->Arg(64)->Arg(512);
BENCHMARK(BM_sign_batch<cone::Exec::Parallel>)->Name("sign_batch/parallel")->Arg(64)->Arg(512);

BENCHMARK_MAIN();
