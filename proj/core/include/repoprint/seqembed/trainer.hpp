#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "repoprint/core/event.hpp"
#include "repoprint/seqembed/vrae.hpp"

namespace repoprint::seqembed {

struct TrainConfig {
  std::size_t latent_dim = 8;
  std::size_t hidden_size = 32;
  std::size_t max_seq_len = 500;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t epochs = 50;
  std::size_t batch_size = 8;
  /// Fraction of epochs over which the KL weight ramps linearly from 0 to 1.
  double kl_warmup_fraction = 0.2;
  std::uint64_t seed = 1;
  bool include_watch = false;
  unsigned threads = 1;

  VraeConfig model_config() const;
  /// Throws Error(InvalidConfig).
  void validate() const;
  /// KL weight used during `epoch` (0-based).
  double kl_weight(std::size_t epoch) const;
};

struct EpochStats {
  std::size_t epoch = 0;
  double mean_total = 0.0;
  double mean_recon = 0.0;
  double mean_kl = 0.0;
  double kl_weight = 0.0;
};

struct TrainingSequence {
  std::string repo_id;
  std::vector<Event> events;
};

struct TrainResult {
  VraeModel model;
  std::vector<EpochStats> curve;
};

/// Mini-batch Adam over the preprocessed sequences. Deterministic for a given
/// config and input regardless of `threads`. Throws Error(EmptyTrainingSet)
/// when no sequence survives preprocessing.
TrainResult train(const TrainConfig& cfg,
                  std::span<const TrainingSequence> sequences);

/// Same, on already-preprocessed type sequences.
TrainResult train_sequences(const TrainConfig& cfg,
                            std::span<const std::vector<EventType>> sequences);

/// CSV `epoch,mean_total,mean_recon,mean_kl`.
std::string format_training_log(std::span<const EpochStats> curve);

}  // namespace repoprint::seqembed
