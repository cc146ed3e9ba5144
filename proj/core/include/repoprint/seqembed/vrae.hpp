#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repoprint/core/event.hpp"
#include "repoprint/features/feature_vector.hpp"
#include "repoprint/seqembed/lstm.hpp"

namespace repoprint::seqembed {

/// Encoder-to-latent affine maps: mu = W_muᵀ h_n + b_mu and
/// log sigma = W_sigmaᵀ h_n + b_sigma, with W (hidden x latent).
struct LatentHead {
  Tensor W_mu, b_mu, W_sigma, b_sigma;

  friend bool operator==(const LatentHead&, const LatentHead&) = default;
};

/// h_0 = tanh(W_zᵀ z + b_z), zero-input LSTM, then per-step
/// sigm(W_outᵀ h_t + b_out) over the 14 event channels.
struct DecoderParams {
  Tensor W_z, b_z;
  LstmParams lstm;
  Tensor W_out, b_out;

  friend bool operator==(const DecoderParams&, const DecoderParams&) = default;
};

/// Every learnable tensor of the autoencoder. Also used, zero-filled, as the
/// gradient and optimizer-moment containers.
struct VraeParams {
  LstmParams encoder;
  LatentHead head;
  DecoderParams decoder;

  static VraeParams zeros(std::size_t latent_dim, std::size_t hidden_size);

  /// Calls fn(name, tensor) for each tensor in a fixed order
  /// (checkpoint order).
  template <typename Fn>
  void for_each(Fn&& fn) {
    visit_impl(*this, fn);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    visit_impl(*this, fn);
  }

  std::size_t parameter_count() const;
  void set_zero();

  friend bool operator==(const VraeParams&, const VraeParams&) = default;

 private:
  template <typename Self, typename Fn>
  static void visit_impl(Self& s, Fn& fn) {
    auto lstm = [&](std::string_view prefix, auto& p) {
      fn(std::string(prefix) + ".W", p.W);
      fn(std::string(prefix) + ".U", p.U);
      fn(std::string(prefix) + ".b", p.b);
    };
    lstm("encoder", s.encoder);
    fn(std::string("head.W_mu"), s.head.W_mu);
    fn(std::string("head.b_mu"), s.head.b_mu);
    fn(std::string("head.W_sigma"), s.head.W_sigma);
    fn(std::string("head.b_sigma"), s.head.b_sigma);
    fn(std::string("decoder.W_z"), s.decoder.W_z);
    fn(std::string("decoder.b_z"), s.decoder.b_z);
    lstm("decoder", s.decoder.lstm);
    fn(std::string("decoder.W_out"), s.decoder.W_out);
    fn(std::string("decoder.b_out"), s.decoder.b_out);
  }
};

struct VraeConfig {
  std::size_t latent_dim = 8;
  std::size_t hidden_size = 32;
  std::size_t max_seq_len = 500;
  bool include_watch = false;

  friend bool operator==(const VraeConfig&, const VraeConfig&) = default;
};

struct VraeModel {
  VraeConfig config;
  VraeParams params;

  static VraeModel zeros(const VraeConfig& config);
  /// Weights uniform in (-0.08, 0.08), biases 0 except forget-gate biases 1.
  static VraeModel initialized(const VraeConfig& config, std::uint64_t seed);

  friend bool operator==(const VraeModel&, const VraeModel&) = default;
};

inline constexpr std::size_t kChannels = kEventTypeCount;

std::array<double, kChannels> one_hot(EventType t);

/// Drops Watch events unless the model includes them and subsamples with a
/// uniform stride down to max_seq_len (index floor(i * n / max)).
std::vector<EventType> preprocess(std::span<const Event> events,
                                  const VraeConfig& config);

struct Encoding {
  std::vector<double> mu;
  std::vector<double> log_sigma;
  std::vector<double> h_n;
};

/// Throws Error(EmptySequence) or Error(SequenceTooLong).
Encoding encode(const VraeModel& m, std::span<const EventType> seq);

/// z = mu + exp(log_sigma) * epsilon. Throws Error(ShapeMismatch).
std::vector<double> sample_latent(std::span<const double> mu,
                                  std::span<const double> log_sigma,
                                  std::span<const double> epsilon);

/// length x 14 matrix of per-step reconstructions in (0, 1).
Tensor decode(const VraeModel& m, std::span<const double> z, std::size_t length);

struct LossBreakdown {
  double total = 0.0;
  double recon = 0.0;  // mean squared error over steps and channels
  double kl = 0.0;     // KL(q(z|r) || N(0, I)), closed form
};

/// Σ_j ½(mu_j² + sigma_j² − 1 − 2 log sigma_j).
double kl_standard_normal(std::span<const double> mu,
                          std::span<const double> log_sigma);

/// total = recon + kl_weight * kl for one sequence and one fixed epsilon.
LossBreakdown loss(const VraeModel& m, std::span<const EventType> seq,
                   std::span<const double> epsilon, double kl_weight);

struct Gradients {
  LossBreakdown loss;
  VraeParams grad;
};

/// Exact gradients of `loss(...).total` by backpropagation through the
/// decoder, the reparameterized sample and the encoder.
Gradients backward(const VraeModel& m, std::span<const EventType> seq,
                   std::span<const double> epsilon, double kl_weight);

/// Accumulating variant used by the trainer: adds scale * gradient into
/// `grad` (which must have the model's shapes) and returns the loss.
LossBreakdown accumulate_gradients(const VraeModel& m,
                                   std::span<const EventType> seq,
                                   std::span<const double> epsilon,
                                   double kl_weight, double scale,
                                   VraeParams& grad);

/// The noise-free embedding: mu of the encoding.
std::vector<double> embed(const VraeModel& m, std::span<const EventType> seq);

/// Adapter for feature assembly: preprocess, then embed.
features::SequenceEmbedder make_embedder(const VraeModel& m);

}  // namespace repoprint::seqembed
