#include "repoprint/features/lda.hpp"

#include "repoprint/core/error.hpp"
#include "repoprint/core/random.hpp"

namespace repoprint::features {
namespace {

std::size_t sample_discrete(Rng& rng, std::span<const double> weights,
                            double total) {
  double u = uniform01(rng) * total;
  for (std::size_t t = 0; t + 1 < weights.size(); ++t) {
    if (u < weights[t]) return t;
    u -= weights[t];
  }
  return weights.size() - 1;
}

}  // namespace

LdaFit fit_lda_detailed(const std::vector<std::vector<std::string>>& docs,
                        const LdaConfig& cfg) {
  if (cfg.k < 2) fail(Errc::InvalidConfig, "LDA needs k >= 2");
  if (!(cfg.beta > 0.0)) fail(Errc::InvalidConfig, "LDA beta must be positive");

  LdaFit fit;
  LdaModel& m = fit.model;
  m.k = cfg.k;
  m.alpha = cfg.resolved_alpha();
  m.beta = cfg.beta;

  std::vector<std::vector<std::size_t>> words(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& tok : docs[d]) {
      auto [it, inserted] = m.vocab.try_emplace(tok, m.vocab.size());
      words[d].push_back(it->second);
    }
    fit.token_count += docs[d].size();
  }
  if (fit.token_count == 0) fail(Errc::EmptyCorpus, "LDA corpus has no tokens");

  const std::size_t K = m.k;
  const std::size_t V = m.vocab.size();
  const double vbeta = static_cast<double>(V) * m.beta;
  std::vector<std::size_t> n_kw(K * V, 0), n_k(K, 0);
  std::vector<std::vector<std::size_t>> n_dk(docs.size(), std::vector<std::size_t>(K, 0));
  std::vector<std::vector<std::size_t>> z(docs.size());

  Rng rng(cfg.seed);
  for (std::size_t d = 0; d < words.size(); ++d) {
    z[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const std::size_t t = uniform_index(rng, K);
      z[d][i] = t;
      ++n_kw[t * V + words[d][i]];
      ++n_k[t];
      ++n_dk[d][t];
    }
  }

  std::vector<double> weights(K);
  fit.sweep_assignment_totals.reserve(cfg.iters);
  for (std::size_t sweep = 0; sweep < cfg.iters; ++sweep) {
    for (std::size_t d = 0; d < words.size(); ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const std::size_t w = words[d][i];
        std::size_t t = z[d][i];
        --n_kw[t * V + w];
        --n_k[t];
        --n_dk[d][t];
        double total = 0.0;
        for (std::size_t s = 0; s < K; ++s) {
          weights[s] = (static_cast<double>(n_kw[s * V + w]) + m.beta) /
                       (static_cast<double>(n_k[s]) + vbeta) *
                       (static_cast<double>(n_dk[d][s]) + m.alpha);
          total += weights[s];
        }
        t = sample_discrete(rng, weights, total);
        z[d][i] = t;
        ++n_kw[t * V + w];
        ++n_k[t];
        ++n_dk[d][t];
      }
    }
    std::size_t assigned = 0;
    for (std::size_t c : n_k) assigned += c;
    fit.sweep_assignment_totals.push_back(assigned);
  }

  m.topic_word.assign(K, std::vector<double>(V));
  for (std::size_t t = 0; t < K; ++t) {
    for (std::size_t w = 0; w < V; ++w) {
      m.topic_word[t][w] = (static_cast<double>(n_kw[t * V + w]) + m.beta) /
                           (static_cast<double>(n_k[t]) + vbeta);
    }
  }
  fit.doc_topic.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const double denom = static_cast<double>(words[d].size()) +
                         static_cast<double>(K) * m.alpha;
    std::vector<double> theta(K);
    for (std::size_t t = 0; t < K; ++t) {
      theta[t] = (static_cast<double>(n_dk[d][t]) + m.alpha) / denom;
    }
    fit.doc_topic.push_back(std::move(theta));
  }
  return fit;
}

LdaModel fit_lda(const std::vector<std::vector<std::string>>& docs,
                 const LdaConfig& cfg) {
  return fit_lda_detailed(docs, cfg).model;
}

std::vector<double> infer_topics(const LdaModel& model,
                                 std::span<const std::string> tokens,
                                 const InferConfig& cfg) {
  const std::size_t K = model.k;
  std::vector<std::size_t> words;
  for (const auto& tok : tokens) {
    if (auto it = model.vocab.find(tok); it != model.vocab.end()) {
      words.push_back(it->second);
    }
  }
  std::vector<double> theta(K, 1.0 / static_cast<double>(K));
  if (words.empty() || K == 0) return theta;

  Rng rng(cfg.seed);
  std::vector<std::size_t> z(words.size());
  std::vector<std::size_t> n_dk(K, 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    z[i] = uniform_index(rng, K);
    ++n_dk[z[i]];
  }
  const double denom =
      static_cast<double>(words.size()) + static_cast<double>(K) * model.alpha;
  std::vector<double> weights(K), acc(K, 0.0);
  std::size_t samples = 0;
  const std::size_t burn_in = std::min(cfg.burn_in, cfg.iters > 0 ? cfg.iters - 1 : 0);
  for (std::size_t sweep = 0; sweep < std::max<std::size_t>(cfg.iters, 1); ++sweep) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      --n_dk[z[i]];
      double total = 0.0;
      for (std::size_t t = 0; t < K; ++t) {
        weights[t] = model.topic_word[t][words[i]] *
                     (static_cast<double>(n_dk[t]) + model.alpha);
        total += weights[t];
      }
      z[i] = sample_discrete(rng, weights, total);
      ++n_dk[z[i]];
    }
    if (sweep >= burn_in) {
      for (std::size_t t = 0; t < K; ++t) {
        acc[t] += (static_cast<double>(n_dk[t]) + model.alpha) / denom;
      }
      ++samples;
    }
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < K; ++t) {
    theta[t] = acc[t] / static_cast<double>(samples);
    sum += theta[t];
  }
  for (double& v : theta) v /= sum;
  return theta;
}

}  // namespace repoprint::features
