#include <benchmark/benchmark.h>

#include <random>

#include "gbs/embed.hpp"
#include "gbs/poly.hpp"
#include "gbs/tree.hpp"
#include "gbs/words.hpp"

using namespace gbs;

namespace {

Word random_word(std::mt19937_64& rng, const std::vector<Letter>& gens, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    Letter l = gens[rng() % gens.size()];
    w.letters.push_back((rng() & 1) ? l : l.inverse());
  }
  return w;
}

void BM_NormalForm(benchmark::State& state) {
  const Gbs g = builtin("bs", {2, 3});
  std::mt19937_64 rng(1);
  const Word w = random_word(rng, standard_generators(g), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(g, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormalForm)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Ball(benchmark::State& state) {
  const Gbs g = builtin("bs", {2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(ball(g, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_Ball)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_TreeBall(benchmark::State& state) {
  const Gbs g = builtin("bs", {2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(tree_ball(g, base_vertex(g), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TreeBall)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ClassifyRootModuli(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<Rat> c;
  for (int i = 0; i <= state.range(0); ++i) c.emplace_back(static_cast<long>(rng() % 11) - 5);
  c.back() = 1;
  const QPoly p(c);
  for (auto _ : state) benchmark::DoNotOptimize(classify_root_moduli(p));
}
BENCHMARK(BM_ClassifyRootModuli)->DenseRange(2, 10, 4);

void BM_CompressionEstimate(benchmark::State& state) {
  const Gbs g = builtin("bs", {2, 3});
  const EmbeddingMap map(g, EmbeddingCase::Generic);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_compression(map, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompressionEstimate)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
