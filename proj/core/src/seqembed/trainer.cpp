#include "repoprint/seqembed/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "repoprint/core/csv.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/core/parallel.hpp"
#include "repoprint/core/random.hpp"

namespace repoprint::seqembed {
namespace {

class Adam {
 public:
  Adam(const TrainConfig& cfg, const VraeParams& shape)
      : cfg_(cfg), m_(shape), v_(shape) {
    m_.set_zero();
    v_.set_zero();
  }

  void step(VraeParams& params, const VraeParams& grad) {
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    std::vector<Tensor*> ps, ms, vs;
    std::vector<const Tensor*> gs;
    params.for_each([&](const std::string&, Tensor& t) { ps.push_back(&t); });
    m_.for_each([&](const std::string&, Tensor& t) { ms.push_back(&t); });
    v_.for_each([&](const std::string&, Tensor& t) { vs.push_back(&t); });
    grad.for_each([&](const std::string&, const Tensor& t) { gs.push_back(&t); });
    for (std::size_t k = 0; k < ps.size(); ++k) {
      double* p = ps[k]->data.data();
      double* m = ms[k]->data.data();
      double* v = vs[k]->data.data();
      const double* g = gs[k]->data.data();
      for (std::size_t i = 0; i < ps[k]->size(); ++i) {
        m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g[i];
        v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
        p[i] -= cfg_.learning_rate * (m[i] / c1) /
                (std::sqrt(v[i] / c2) + cfg_.adam_eps);
      }
    }
  }

 private:
  const TrainConfig& cfg_;
  VraeParams m_, v_;
  std::uint64_t t_ = 0;
};

void add_into(VraeParams& dst, const VraeParams& src) {
  std::vector<Tensor*> d;
  dst.for_each([&](const std::string&, Tensor& t) { d.push_back(&t); });
  std::size_t k = 0;
  src.for_each([&](const std::string&, const Tensor& t) {
    double* out = d[k++]->data.data();
    for (std::size_t i = 0; i < t.size(); ++i) out[i] += t.data[i];
  });
}

}  // namespace

VraeConfig TrainConfig::model_config() const {
  return VraeConfig{latent_dim, hidden_size, max_seq_len, include_watch};
}

void TrainConfig::validate() const {
  if (latent_dim == 0 || hidden_size == 0 || max_seq_len == 0 || epochs == 0 ||
      batch_size == 0) {
    fail(Errc::InvalidConfig, "training sizes and counts must be positive");
  }
  if (!(learning_rate > 0.0) || !(adam_eps > 0.0)) {
    fail(Errc::InvalidConfig, "learning rate and adam eps must be positive");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    fail(Errc::InvalidConfig, "adam betas must lie in [0, 1)");
  }
  if (!(kl_warmup_fraction >= 0.0 && kl_warmup_fraction <= 1.0)) {
    fail(Errc::InvalidConfig, "kl warm-up fraction must lie in [0, 1]");
  }
}

double TrainConfig::kl_weight(std::size_t epoch) const {
  const auto warm = static_cast<std::size_t>(
      std::ceil(kl_warmup_fraction * static_cast<double>(epochs)));
  if (warm == 0) return 1.0;
  return std::min(1.0, static_cast<double>(epoch) / static_cast<double>(warm));
}

TrainResult train_sequences(const TrainConfig& cfg,
                            std::span<const std::vector<EventType>> sequences) {
  cfg.validate();
  std::vector<const std::vector<EventType>*> data;
  for (const auto& s : sequences) {
    if (s.empty()) continue;
    if (s.size() > cfg.max_seq_len) {
      fail(Errc::SequenceTooLong, "training sequence longer than max_seq_len");
    }
    data.push_back(&s);
  }
  if (data.empty()) fail(Errc::EmptyTrainingSet, "no non-empty training sequences");

  TrainResult out;
  out.model = VraeModel::initialized(cfg.model_config(), cfg.seed);
  const std::size_t k = cfg.latent_dim;
  const std::size_t B = std::min(cfg.batch_size, data.size());
  Adam adam(cfg, out.model.params);
  std::vector<VraeParams> slots(B, VraeParams::zeros(k, cfg.hidden_size));
  std::vector<LossBreakdown> losses(B);
  std::vector<std::vector<double>> eps(B, std::vector<double>(k));
  VraeParams grad = VraeParams::zeros(k, cfg.hidden_size);
  std::vector<std::size_t> order(data.size());

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng rng(mix_seed(cfg.seed, 0x10000 + epoch));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const double w = cfg.kl_weight(epoch);
    EpochStats stats;
    stats.epoch = epoch;
    stats.kl_weight = w;
    for (std::size_t start = 0; start < order.size(); start += B) {
      const std::size_t n = std::min(B, order.size() - start);
      for (std::size_t b = 0; b < n; ++b) {
        for (auto& e : eps[b]) e = standard_normal(rng);
      }
      const double scale = 1.0 / static_cast<double>(n);
      parallel_for(n, cfg.threads, [&](std::size_t b) {
        slots[b].set_zero();
        losses[b] = accumulate_gradients(out.model, *data[order[start + b]],
                                         eps[b], w, scale, slots[b]);
      });
      grad.set_zero();
      for (std::size_t b = 0; b < n; ++b) {
        add_into(grad, slots[b]);
        stats.mean_total += losses[b].total;
        stats.mean_recon += losses[b].recon;
        stats.mean_kl += losses[b].kl;
      }
      adam.step(out.model.params, grad);
    }
    const double count = static_cast<double>(data.size());
    stats.mean_total /= count;
    stats.mean_recon /= count;
    stats.mean_kl /= count;
    out.curve.push_back(stats);
  }
  return out;
}

TrainResult train(const TrainConfig& cfg,
                  std::span<const TrainingSequence> sequences) {
  const VraeConfig mc = cfg.model_config();
  std::vector<std::vector<EventType>> seqs;
  seqs.reserve(sequences.size());
  for (const auto& s : sequences) seqs.push_back(preprocess(s.events, mc));
  return train_sequences(cfg, seqs);
}

std::string format_training_log(std::span<const EpochStats> curve) {
  std::string out = csv::format_row({"epoch", "mean_total", "mean_recon", "mean_kl"});
  for (const auto& s : curve) {
    out += csv::format_row({std::to_string(s.epoch), csv::format_double(s.mean_total),
                            csv::format_double(s.mean_recon),
                            csv::format_double(s.mean_kl)});
  }
  return out;
}

}  // namespace repoprint::seqembed
