#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "repoprint/seqembed/tensor.hpp"

namespace repoprint::seqembed {

/// Single-layer LSTM cell. Gate pre-activations are a = Wᵀx + Uᵀh + b with
/// W (input x 4H), U (H x 4H) and b (1 x 4H); the four column blocks are, in
/// order, input, forget, cell candidate and output gates.
struct LstmParams {
  std::size_t input_size = 0;
  std::size_t hidden_size = 0;
  Tensor W;
  Tensor U;
  Tensor b;

  static LstmParams zeros(std::size_t input_size, std::size_t hidden_size);

  enum Gate : std::size_t { kInput = 0, kForget = 1, kCell = 2, kOutput = 3 };

  /// Column offset of a gate block inside a, W, U and b.
  std::size_t gate_offset(Gate g) const noexcept { return g * hidden_size; }

  template <typename Fn>
  void visit(std::string_view prefix, Fn&& fn) {
    fn(prefix, "W", W);
    fn(prefix, "U", U);
    fn(prefix, "b", b);
  }
  template <typename Fn>
  void visit(std::string_view prefix, Fn&& fn) const {
    fn(prefix, "W", W);
    fn(prefix, "U", U);
    fn(prefix, "b", b);
  }

  friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;
};

/// One step: i, f, o = sigm(.), g = tanh(.), c = f*c_prev + i*g,
/// h = o*tanh(c). Throws Error(ShapeMismatch).
LstmState lstm_step(const LstmParams& p, std::span<const double> h_prev,
                    std::span<const double> c_prev, std::span<const double> x);

/// Forward activations of one sequence, kept for backpropagation.
/// Row t of `h`/`c` is the state after t steps (row 0 is the initial state).
struct LstmTrace {
  std::size_t steps = 0;
  Tensor h;       // (steps + 1) x H
  Tensor c;       // (steps + 1) x H
  Tensor gates;   // steps x 4H, post-nonlinearity (i, f, g, o)
  Tensor tanh_c;  // steps x H
};

/// How each step's input enters the pre-activation.
struct LstmInput {
  enum class Kind { Zero, OneHot, Dense } kind = Kind::Zero;
  std::span<const std::uint8_t> one_hot;  // per-step active row of W
  const Tensor* dense = nullptr;           // steps x input_size
};

/// Runs `steps` steps from (h0, c0) and fills `trace`.
void lstm_forward(const LstmParams& p, const LstmInput& input,
                  std::size_t steps, std::span<const double> h0,
                  std::span<const double> c0, LstmTrace& trace);

/// Backpropagation through time. `dh_out` (steps x H) holds the loss
/// gradient w.r.t. each post-step hidden state (row t-1 for step t);
/// `dh_last` is added to the final step. Accumulates into `grad` and writes
/// the gradients w.r.t. the initial state.
void lstm_backward(const LstmParams& p, const LstmInput& input,
                   const LstmTrace& trace, const Tensor* dh_out,
                   std::span<const double> dh_last, LstmParams& grad,
                   std::span<double> dh0, std::span<double> dc0);

inline double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace repoprint::seqembed
