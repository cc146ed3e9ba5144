#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "gradient_check.hpp"
#include "repoprint/analytics/distribution.hpp"
#include "repoprint/core/random.hpp"
#include "repoprint/features/lda.hpp"
#include "repoprint/learn/knn.hpp"
#include "repoprint/learn/logreg.hpp"
#include "repoprint/seqembed/vrae.hpp"

using namespace repoprint;

namespace {

seqembed::VraeConfig bench_config() {
  seqembed::VraeConfig cfg;
  cfg.hidden_size = 32;
  cfg.latent_dim = 8;
  return cfg;
}

void BM_VraeForward(benchmark::State& state) {
  const auto model = seqembed::VraeModel::initialized(bench_config(), 1);
  const auto seq = testing::random_sequence(static_cast<std::size_t>(state.range(0)), 2);
  const std::vector<double> eps(8, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seqembed::loss(model, seq, eps, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VraeForward)->Arg(50)->Arg(200)->Arg(500);

void BM_VraeBackward(benchmark::State& state) {
  const auto model = seqembed::VraeModel::initialized(bench_config(), 1);
  const auto seq = testing::random_sequence(static_cast<std::size_t>(state.range(0)), 2);
  const std::vector<double> eps(8, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(seqembed::backward(model, seq, eps, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VraeBackward)->Arg(50)->Arg(200)->Arg(500);

void BM_LdaFit(benchmark::State& state) {
  Rng rng(3);
  const std::vector<std::string> vocab = {"web",   "server", "client", "model", "train",
                                          "tensor", "chart", "plot",   "parser", "lexer"};
  std::vector<std::vector<std::string>> docs(static_cast<std::size_t>(state.range(0)));
  for (auto& d : docs) {
    for (int i = 0; i < 8; ++i) d.push_back(vocab[uniform_index(rng, vocab.size())]);
  }
  features::LdaConfig cfg;
  cfg.iters = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(features::fit_lda(docs, cfg));
  }
}
BENCHMARK(BM_LdaFit)->Arg(200)->Arg(1000);

void BM_KlDivergence(benchmark::State& state) {
  Rng rng(4);
  std::vector<double> p(14), q(14);
  for (std::size_t i = 0; i < 14; ++i) {
    p[i] = uniform01(rng);
    q[i] = uniform01(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytics::kl_divergence(p, q));
  }
}
BENCHMARK(BM_KlDivergence);

void BM_KnnQuery(benchmark::State& state) {
  Rng rng(5);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  learn::Matrix train(n, 30);
  for (auto& v : train.data) v = standard_normal(rng);
  std::vector<double> query(30);
  for (auto& v : query) v = standard_normal(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(learn::nearest_neighbors(train, query, 5));
  }
}
BENCHMARK(BM_KnnQuery)->Arg(100)->Arg(1000);

void BM_LogRegFit(benchmark::State& state) {
  Rng rng(6);
  learn::Matrix X(800, 30);
  std::vector<int> y(800);
  for (std::size_t i = 0; i < 800; ++i) {
    y[i] = static_cast<int>(i % 2);
    for (std::size_t j = 0; j < 30; ++j) X(i, j) = standard_normal(rng) + (j == 0 ? y[i] : 0);
  }
  learn::LogRegConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(learn::fit_logreg(X, y, cfg));
  }
}
BENCHMARK(BM_LogRegFit);

}  // namespace

BENCHMARK_MAIN();
