#include "repoprint/seqembed/vrae.hpp"

#include <algorithm>
#include <cmath>

#include "repoprint/core/error.hpp"
#include "repoprint/core/random.hpp"

namespace repoprint::seqembed {
namespace {

struct ForwardPass {
  std::vector<std::uint8_t> idx;
  LstmTrace enc;
  std::vector<double> h_n, mu, log_sigma, sigma, z, h0;
  LstmTrace dec;
  Tensor y;  // n x 14
  LossBreakdown loss;
};

void check_sequence(const VraeModel& m, std::span<const EventType> seq) {
  if (seq.empty()) fail(Errc::EmptySequence, "empty event sequence");
  if (seq.size() > m.config.max_seq_len) {
    fail(Errc::SequenceTooLong,
         "sequence of " + std::to_string(seq.size()) + " events exceeds " +
             std::to_string(m.config.max_seq_len));
  }
}

void run_encoder(const VraeModel& m, std::span<const EventType> seq,
                 ForwardPass& f) {
  check_sequence(m, seq);
  const auto& p = m.params;
  const std::size_t H = p.encoder.hidden_size;
  const std::size_t k = m.config.latent_dim;
  f.idx.resize(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    f.idx[t] = static_cast<std::uint8_t>(index_of(seq[t]));
  }
  const std::vector<double> zero(H, 0.0);
  LstmInput in{LstmInput::Kind::OneHot, f.idx, nullptr};
  lstm_forward(p.encoder, in, seq.size(), zero, zero, f.enc);
  auto last = f.enc.h.row(seq.size());
  f.h_n.assign(last.begin(), last.end());
  f.mu.assign(p.head.b_mu.data.begin(), p.head.b_mu.data.end());
  f.log_sigma.assign(p.head.b_sigma.data.begin(), p.head.b_sigma.data.end());
  for (std::size_t j = 0; j < H; ++j) {
    const double h = f.h_n[j];
    if (h == 0.0) continue;
    for (std::size_t i = 0; i < k; ++i) {
      f.mu[i] += h * p.head.W_mu(j, i);
      f.log_sigma[i] += h * p.head.W_sigma(j, i);
    }
  }
}

void run_decoder(const VraeModel& m, std::span<const double> z,
                 std::size_t length, ForwardPass& f) {
  const auto& d = m.params.decoder;
  const std::size_t H = d.lstm.hidden_size;
  const std::size_t k = m.config.latent_dim;
  if (z.size() != k) fail(Errc::ShapeMismatch, "latent vector has wrong size");
  if (length == 0) fail(Errc::EmptySequence, "decode length must be >= 1");
  f.h0.assign(d.b_z.data.begin(), d.b_z.data.end());
  for (std::size_t i = 0; i < k; ++i) {
    if (z[i] == 0.0) continue;
    for (std::size_t j = 0; j < H; ++j) f.h0[j] += z[i] * d.W_z(i, j);
  }
  for (double& h : f.h0) h = std::tanh(h);
  const std::vector<double> c0(H, 0.0);
  lstm_forward(d.lstm, LstmInput{}, length, f.h0, c0, f.dec);
  f.y = Tensor(length, kChannels);
  for (std::size_t t = 0; t < length; ++t) {
    auto h = f.dec.h.row(t + 1);
    auto y = f.y.row(t);
    std::copy(d.b_out.data.begin(), d.b_out.data.end(), y.begin());
    for (std::size_t j = 0; j < H; ++j) {
      const double hj = h[j];
      for (std::size_t c = 0; c < kChannels; ++c) y[c] += hj * d.W_out(j, c);
    }
    for (double& v : y) v = sigmoid(v);
  }
}

void run_forward(const VraeModel& m, std::span<const EventType> seq,
                 std::span<const double> epsilon, double kl_weight,
                 ForwardPass& f) {
  run_encoder(m, seq, f);
  f.z = sample_latent(f.mu, f.log_sigma, epsilon);
  f.sigma.resize(f.log_sigma.size());
  for (std::size_t i = 0; i < f.sigma.size(); ++i) {
    f.sigma[i] = std::exp(f.log_sigma[i]);
  }
  run_decoder(m, f.z, seq.size(), f);
  double se = 0.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    for (std::size_t c = 0; c < kChannels; ++c) {
      const double target = c == f.idx[t] ? 1.0 : 0.0;
      const double diff = f.y(t, c) - target;
      se += diff * diff;
    }
  }
  f.loss.recon = se / static_cast<double>(seq.size() * kChannels);
  f.loss.kl = kl_standard_normal(f.mu, f.log_sigma);
  f.loss.total = f.loss.recon + kl_weight * f.loss.kl;
}

void init_uniform(Tensor& t, Rng& rng) {
  for (double& v : t.data) v = (uniform01(rng) * 2.0 - 1.0) * 0.08;
}

void set_forget_bias(LstmParams& p) {
  const std::size_t off = p.gate_offset(LstmParams::kForget);
  for (std::size_t j = 0; j < p.hidden_size; ++j) p.b.data[off + j] = 1.0;
}

}  // namespace

VraeParams VraeParams::zeros(std::size_t latent_dim, std::size_t hidden_size) {
  VraeParams p;
  p.encoder = LstmParams::zeros(kChannels, hidden_size);
  p.head.W_mu = Tensor(hidden_size, latent_dim);
  p.head.b_mu = Tensor(1, latent_dim);
  p.head.W_sigma = Tensor(hidden_size, latent_dim);
  p.head.b_sigma = Tensor(1, latent_dim);
  p.decoder.W_z = Tensor(latent_dim, hidden_size);
  p.decoder.b_z = Tensor(1, hidden_size);
  p.decoder.lstm = LstmParams::zeros(kChannels, hidden_size);
  p.decoder.W_out = Tensor(hidden_size, kChannels);
  p.decoder.b_out = Tensor(1, kChannels);
  return p;
}

std::size_t VraeParams::parameter_count() const {
  std::size_t n = 0;
  for_each([&](const std::string&, const Tensor& t) { n += t.size(); });
  return n;
}

void VraeParams::set_zero() {
  for_each([](const std::string&, Tensor& t) {
    std::fill(t.data.begin(), t.data.end(), 0.0);
  });
}

VraeModel VraeModel::zeros(const VraeConfig& config) {
  if (config.latent_dim == 0 || config.hidden_size == 0 ||
      config.max_seq_len == 0) {
    fail(Errc::InvalidConfig, "latent_dim, hidden_size and max_seq_len must be positive");
  }
  return VraeModel{config, VraeParams::zeros(config.latent_dim, config.hidden_size)};
}

VraeModel VraeModel::initialized(const VraeConfig& config, std::uint64_t seed) {
  VraeModel m = zeros(config);
  Rng rng(mix_seed(seed, 0x7672));
  auto& p = m.params;
  init_uniform(p.encoder.W, rng);
  init_uniform(p.encoder.U, rng);
  set_forget_bias(p.encoder);
  init_uniform(p.head.W_mu, rng);
  init_uniform(p.head.W_sigma, rng);
  init_uniform(p.decoder.W_z, rng);
  init_uniform(p.decoder.lstm.W, rng);
  init_uniform(p.decoder.lstm.U, rng);
  set_forget_bias(p.decoder.lstm);
  init_uniform(p.decoder.W_out, rng);
  return m;
}

std::array<double, kChannels> one_hot(EventType t) {
  std::array<double, kChannels> v{};
  v[index_of(t)] = 1.0;
  return v;
}

std::vector<EventType> preprocess(std::span<const Event> events,
                                  const VraeConfig& config) {
  std::vector<EventType> kept;
  kept.reserve(events.size());
  for (const auto& e : events) {
    if (e.type == EventType::Watch && !config.include_watch) continue;
    kept.push_back(e.type);
  }
  const std::size_t n = kept.size();
  const std::size_t max = config.max_seq_len;
  if (n <= max) return kept;
  std::vector<EventType> out(max);
  for (std::size_t i = 0; i < max; ++i) {
    out[i] = kept[i * n / max];
  }
  return out;
}

Encoding encode(const VraeModel& m, std::span<const EventType> seq) {
  ForwardPass f;
  run_encoder(m, seq, f);
  return Encoding{std::move(f.mu), std::move(f.log_sigma), std::move(f.h_n)};
}

std::vector<double> sample_latent(std::span<const double> mu,
                                  std::span<const double> log_sigma,
                                  std::span<const double> epsilon) {
  if (mu.size() != log_sigma.size() || mu.size() != epsilon.size()) {
    fail(Errc::ShapeMismatch, "mu, log_sigma and epsilon must have equal size");
  }
  std::vector<double> z(mu.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = mu[i] + std::exp(log_sigma[i]) * epsilon[i];
  }
  return z;
}

Tensor decode(const VraeModel& m, std::span<const double> z, std::size_t length) {
  ForwardPass f;
  run_decoder(m, z, length, f);
  return std::move(f.y);
}

double kl_standard_normal(std::span<const double> mu,
                          std::span<const double> log_sigma) {
  if (mu.size() != log_sigma.size()) {
    fail(Errc::ShapeMismatch, "mu and log_sigma must have equal size");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    // exp(2 ls) - 1 - 2 ls is computed with expm1 to stay exact near zero
    const double two_ls = 2.0 * log_sigma[i];
    kl += 0.5 * (mu[i] * mu[i] + std::expm1(two_ls) - two_ls);
  }
  return kl;
}

LossBreakdown loss(const VraeModel& m, std::span<const EventType> seq,
                   std::span<const double> epsilon, double kl_weight) {
  ForwardPass f;
  run_forward(m, seq, epsilon, kl_weight, f);
  return f.loss;
}

LossBreakdown accumulate_gradients(const VraeModel& m,
                                   std::span<const EventType> seq,
                                   std::span<const double> epsilon,
                                   double kl_weight, double scale,
                                   VraeParams& grad) {
  ForwardPass f;
  run_forward(m, seq, epsilon, kl_weight, f);
  const auto& p = m.params;
  const std::size_t n = seq.size();
  const std::size_t H = p.encoder.hidden_size;
  const std::size_t k = m.config.latent_dim;

  // output layer
  Tensor dh_out(n, H);
  const double coef = scale * 2.0 / static_cast<double>(n * kChannels);
  std::array<double, kChannels> dpre{};
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < kChannels; ++c) {
      const double y = f.y(t, c);
      const double target = c == f.idx[t] ? 1.0 : 0.0;
      dpre[c] = coef * (y - target) * y * (1.0 - y);
      grad.decoder.b_out.data[c] += dpre[c];
    }
    auto h = f.dec.h.row(t + 1);
    auto dh = dh_out.row(t);
    for (std::size_t j = 0; j < H; ++j) {
      double* gw = grad.decoder.W_out.data.data() + j * kChannels;
      const double* w = p.decoder.W_out.data.data() + j * kChannels;
      double s = 0.0;
      for (std::size_t c = 0; c < kChannels; ++c) {
        gw[c] += h[j] * dpre[c];
        s += w[c] * dpre[c];
      }
      dh[j] = s;
    }
  }

  // decoder recurrence and initial state
  std::vector<double> dh0(H), dc0(H);
  lstm_backward(p.decoder.lstm, LstmInput{}, f.dec, &dh_out, {},
                grad.decoder.lstm, dh0, dc0);
  std::vector<double> dz(k, 0.0);
  for (std::size_t j = 0; j < H; ++j) {
    const double dpz = dh0[j] * (1.0 - f.h0[j] * f.h0[j]);
    grad.decoder.b_z.data[j] += dpz;
    for (std::size_t i = 0; i < k; ++i) {
      grad.decoder.W_z(i, j) += f.z[i] * dpz;
      dz[i] += p.decoder.W_z(i, j) * dpz;
    }
  }

  // reparameterized sample and KL term
  const double w = scale * kl_weight;
  std::vector<double> dmu(k), dls(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double s = f.sigma[i];
    dmu[i] = dz[i] + w * f.mu[i];
    dls[i] = dz[i] * s * epsilon[i] + w * (s * s - 1.0);
    grad.head.b_mu.data[i] += dmu[i];
    grad.head.b_sigma.data[i] += dls[i];
  }
  std::vector<double> dh_n(H, 0.0);
  for (std::size_t j = 0; j < H; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      grad.head.W_mu(j, i) += f.h_n[j] * dmu[i];
      grad.head.W_sigma(j, i) += f.h_n[j] * dls[i];
      s += p.head.W_mu(j, i) * dmu[i] + p.head.W_sigma(j, i) * dls[i];
    }
    dh_n[j] = s;
  }

  // encoder
  std::vector<double> unused_h(H), unused_c(H);
  LstmInput in{LstmInput::Kind::OneHot, f.idx, nullptr};
  lstm_backward(p.encoder, in, f.enc, nullptr, dh_n, grad.encoder, unused_h,
                unused_c);
  return f.loss;
}

Gradients backward(const VraeModel& m, std::span<const EventType> seq,
                   std::span<const double> epsilon, double kl_weight) {
  Gradients g;
  g.grad = VraeParams::zeros(m.config.latent_dim, m.config.hidden_size);
  g.loss = accumulate_gradients(m, seq, epsilon, kl_weight, 1.0, g.grad);
  return g;
}

std::vector<double> embed(const VraeModel& m, std::span<const EventType> seq) {
  return encode(m, seq).mu;
}

features::SequenceEmbedder make_embedder(const VraeModel& m) {
  return features::SequenceEmbedder{
      m.config.latent_dim, [&m](std::span<const Event> events) {
        return embed(m, preprocess(events, m.config));
      }};
}

}  // namespace repoprint::seqembed
