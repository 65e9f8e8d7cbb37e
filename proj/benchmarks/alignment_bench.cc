#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ttseval/alignment.h"
#include "ttseval/distance.h"

namespace {

std::vector<std::string> phrases(std::size_t n, std::uint64_t seed) {
  static const char* kWords[] = {
      "fever",    "rash", "blood", "pressure", "low", "septic",  "shock",
      "admitted", "no",   "cough", "history",  "of",  "lactate", "elevated"};
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    for (int w = 1 + static_cast<int>(rng() % 4); w > 0; --w) {
      if (!s.empty()) s += ' ';
      s += kWords[rng() % std::size(kWords)];
    }
    out.push_back(s);
  }
  return out;
}

void BM_Levenshtein(benchmark::State& state) {
  auto words = phrases(64, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ttseval::levenshtein(words[i % 64], words[(i * 7 + 3) % 64]));
    ++i;
  }
}
BENCHMARK(BM_Levenshtein);

void BM_BestMatchMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  ttseval::DistanceMatrix m{n, n, std::vector<double>(n * n)};
  for (double& v : m.values) v = static_cast<double>(rng() % 1000) / 1000.0;
  std::vector<double> times(n, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ttseval::best_match_matrix(m, times, times));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_BestMatchMatrix)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_DistanceMatrixFallback(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto ref = phrases(n, 3);
  auto pred = phrases(n, 4);
  ttseval::DistanceSpec spec{ttseval::DistanceKind::kEmbeddingCosine,
                             std::make_shared<ttseval::FallbackEmbedder>(256)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ttseval::compute_distance_matrix(ref, pred, spec));
  }
}
BENCHMARK(BM_DistanceMatrixFallback)->Arg(32)->Arg(128);

}  // namespace
