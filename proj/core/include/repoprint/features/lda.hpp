#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace repoprint::features {

struct LdaConfig {
  std::size_t k = 2;
  /// Document-topic prior; a non-positive value selects 50 / k.
  double alpha = 0.0;
  double beta = 0.01;
  std::size_t iters = 500;
  std::uint64_t seed = 1;

  double resolved_alpha() const {
    return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(k);
  }
};

struct LdaModel {
  std::map<std::string, std::size_t, std::less<>> vocab;
  std::vector<std::vector<double>> topic_word;  // k rows of |vocab| probs
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t k = 0;
};

/// Fit output with sampler diagnostics.
struct LdaFit {
  LdaModel model;
  /// Per training document, (n_dk + alpha) / (n_d + k alpha) at the end.
  std::vector<std::vector<double>> doc_topic;
  /// Σ_k n_k after each sweep; always equals the corpus token count.
  std::vector<std::size_t> sweep_assignment_totals;
  std::size_t token_count = 0;
};

/// Collapsed Gibbs sampling over tokenized documents; deterministic for a
/// given seed. Throws Error(EmptyCorpus) when no document has a token and
/// Error(InvalidConfig) when k < 2.
LdaFit fit_lda_detailed(const std::vector<std::vector<std::string>>& docs,
                        const LdaConfig& cfg);
LdaModel fit_lda(const std::vector<std::vector<std::string>>& docs,
                 const LdaConfig& cfg);

struct InferConfig {
  std::size_t iters = 100;
  std::size_t burn_in = 50;
  std::uint64_t seed = 0x6c6461;
};

/// Fold-in Gibbs with the topic-word rows held fixed. Out-of-vocabulary
/// tokens are skipped; a document with no known token gets the uniform
/// vector. The result averages the post-burn-in sweeps and sums to 1.
std::vector<double> infer_topics(const LdaModel& model,
                                 std::span<const std::string> tokens,
                                 const InferConfig& cfg = {});

}  // namespace repoprint::features
