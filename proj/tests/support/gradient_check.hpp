#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "repoprint/core/random.hpp"
#include "repoprint/seqembed/vrae.hpp"

namespace repoprint::testing {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst;
  std::size_t checked = 0;
};

/// |a - n| / max(|a|, |n|, floor): relative where the gradient is sizeable,
/// absolute (scaled by the floor) where both sides are near zero.
inline double grad_rel_error(double analytic, double numeric, double floor = 1e-6) {
  return std::fabs(analytic - numeric) /
         std::max({std::fabs(analytic), std::fabs(numeric), floor});
}

/// Compares every analytic gradient entry with a central difference of the
/// total loss at a fixed epsilon.
inline GradCheckResult gradient_check(const seqembed::VraeModel& model,
                                      std::span<const EventType> seq,
                                      std::span<const double> epsilon,
                                      double kl_weight, double h = 1e-5) {
  const auto analytic = seqembed::backward(model, seq, epsilon, kl_weight);
  seqembed::VraeModel probe = model;
  std::vector<seqembed::Tensor*> probe_tensors;
  probe.params.for_each([&](const std::string&, seqembed::Tensor& t) {
    probe_tensors.push_back(&t);
  });
  std::vector<std::pair<std::string, const seqembed::Tensor*>> grads;
  analytic.grad.for_each([&](const std::string& name, const seqembed::Tensor& t) {
    grads.emplace_back(name, &t);
  });

  GradCheckResult out;
  for (std::size_t k = 0; k < probe_tensors.size(); ++k) {
    auto& data = probe_tensors[k]->data;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double orig = data[i];
      data[i] = orig + h;
      const double up = seqembed::loss(probe, seq, epsilon, kl_weight).total;
      data[i] = orig - h;
      const double down = seqembed::loss(probe, seq, epsilon, kl_weight).total;
      data[i] = orig;
      const double numeric = (up - down) / (2.0 * h);
      const double err = grad_rel_error(grads[k].second->data[i], numeric);
      ++out.checked;
      if (err > out.max_rel_error) {
        out.max_rel_error = err;
        out.worst = grads[k].first + "[" + std::to_string(i) + "]";
      }
    }
  }
  return out;
}

/// Every parameter uniform in (-scale, scale); larger than the training
/// initialization so that every gate is exercised away from its linear regime.
inline seqembed::VraeModel random_model(const seqembed::VraeConfig& cfg,
                                        std::uint64_t seed, double scale = 0.5) {
  auto m = seqembed::VraeModel::zeros(cfg);
  Rng rng(seed);
  m.params.for_each([&](const std::string&, seqembed::Tensor& t) {
    for (auto& v : t.data) v = (2.0 * uniform01(rng) - 1.0) * scale;
  });
  return m;
}

inline std::vector<EventType> random_sequence(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EventType> seq(n);
  for (auto& t : seq) t = event_type_at(uniform_index(rng, kEventTypeCount));
  return seq;
}

}  // namespace repoprint::testing
