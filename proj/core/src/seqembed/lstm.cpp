#include "repoprint/seqembed/lstm.hpp"

#include <algorithm>
#include <cmath>

#include "repoprint/core/error.hpp"

namespace repoprint::seqembed {
namespace {

inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

inline double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void resize_trace(LstmTrace& t, std::size_t steps, std::size_t H) {
  t.steps = steps;
  auto fit = [](Tensor& x, std::size_t r, std::size_t c) {
    x.rows = r;
    x.cols = c;
    x.data.resize(r * c);
  };
  fit(t.h, steps + 1, H);
  fit(t.c, steps + 1, H);
  fit(t.gates, steps, 4 * H);
  fit(t.tanh_c, steps, H);
}

void add_input(const LstmParams& p, const LstmInput& in, std::size_t t,
               double* a) {
  const std::size_t G = 4 * p.hidden_size;
  switch (in.kind) {
    case LstmInput::Kind::Zero:
      break;
    case LstmInput::Kind::OneHot:
      axpy(1.0, p.W.data.data() + in.one_hot[t] * G, a, G);
      break;
    case LstmInput::Kind::Dense: {
      const double* x = in.dense->data.data() + t * p.input_size;
      for (std::size_t i = 0; i < p.input_size; ++i) {
        if (x[i] != 0.0) axpy(x[i], p.W.data.data() + i * G, a, G);
      }
      break;
    }
  }
}

// Computes one step from h_prev/c_prev into the trace rows for step t.
void step_forward(const LstmParams& p, const double* h_prev,
                  const double* c_prev, double* a, double* h, double* c,
                  double* tanh_c) {
  const std::size_t H = p.hidden_size;
  const std::size_t G = 4 * H;
  for (std::size_t k = 0; k < H; ++k) {
    if (h_prev[k] != 0.0) axpy(h_prev[k], p.U.data.data() + k * G, a, G);
  }
  for (std::size_t j = 0; j < H; ++j) {
    const double ig = sigmoid(a[j]);
    const double fg = sigmoid(a[H + j]);
    const double gg = std::tanh(a[2 * H + j]);
    const double og = sigmoid(a[3 * H + j]);
    a[j] = ig;
    a[H + j] = fg;
    a[2 * H + j] = gg;
    a[3 * H + j] = og;
    c[j] = fg * c_prev[j] + ig * gg;
    tanh_c[j] = std::tanh(c[j]);
    h[j] = og * tanh_c[j];
  }
}

}  // namespace

LstmParams LstmParams::zeros(std::size_t input_size, std::size_t hidden_size) {
  LstmParams p;
  p.input_size = input_size;
  p.hidden_size = hidden_size;
  p.W = Tensor(input_size, 4 * hidden_size);
  p.U = Tensor(hidden_size, 4 * hidden_size);
  p.b = Tensor(1, 4 * hidden_size);
  return p;
}

LstmState lstm_step(const LstmParams& p, std::span<const double> h_prev,
                    std::span<const double> c_prev, std::span<const double> x) {
  const std::size_t H = p.hidden_size;
  if (h_prev.size() != H || c_prev.size() != H || x.size() != p.input_size ||
      p.W.rows != p.input_size || p.W.cols != 4 * H || p.U.rows != H ||
      p.U.cols != 4 * H || p.b.size() != 4 * H) {
    fail(Errc::ShapeMismatch, "lstm_step: inconsistent shapes");
  }
  std::vector<double> a(p.b.data);
  for (std::size_t i = 0; i < p.input_size; ++i) {
    if (x[i] != 0.0) axpy(x[i], p.W.data.data() + i * 4 * H, a.data(), 4 * H);
  }
  LstmState s{std::vector<double>(H), std::vector<double>(H)};
  std::vector<double> tanh_c(H);
  step_forward(p, h_prev.data(), c_prev.data(), a.data(), s.h.data(),
               s.c.data(), tanh_c.data());
  return s;
}

void lstm_forward(const LstmParams& p, const LstmInput& input,
                  std::size_t steps, std::span<const double> h0,
                  std::span<const double> c0, LstmTrace& trace) {
  const std::size_t H = p.hidden_size;
  const std::size_t G = 4 * H;
  resize_trace(trace, steps, H);
  std::copy(h0.begin(), h0.end(), trace.h.data.begin());
  std::copy(c0.begin(), c0.end(), trace.c.data.begin());
  for (std::size_t t = 0; t < steps; ++t) {
    double* a = trace.gates.data.data() + t * G;
    std::copy(p.b.data.begin(), p.b.data.end(), a);
    add_input(p, input, t, a);
    step_forward(p, trace.h.data.data() + t * H, trace.c.data.data() + t * H, a,
                 trace.h.data.data() + (t + 1) * H,
                 trace.c.data.data() + (t + 1) * H,
                 trace.tanh_c.data.data() + t * H);
  }
}

void lstm_backward(const LstmParams& p, const LstmInput& input,
                   const LstmTrace& trace, const Tensor* dh_out,
                   std::span<const double> dh_last, LstmParams& grad,
                   std::span<double> dh0, std::span<double> dc0) {
  const std::size_t H = p.hidden_size;
  const std::size_t G = 4 * H;
  std::vector<double> dh(H), dh_next(H, 0.0), dc_next(H, 0.0), da(G);
  for (std::size_t t = trace.steps; t-- > 0;) {
    for (std::size_t j = 0; j < H; ++j) {
      dh[j] = dh_next[j] + (dh_out ? (*dh_out)(t, j) : 0.0);
    }
    if (t + 1 == trace.steps && !dh_last.empty()) {
      for (std::size_t j = 0; j < H; ++j) dh[j] += dh_last[j];
    }
    const double* gates = trace.gates.data.data() + t * G;
    const double* tc = trace.tanh_c.data.data() + t * H;
    const double* c_prev = trace.c.data.data() + t * H;
    const double* h_prev = trace.h.data.data() + t * H;
    for (std::size_t j = 0; j < H; ++j) {
      const double ig = gates[j];
      const double fg = gates[H + j];
      const double gg = gates[2 * H + j];
      const double og = gates[3 * H + j];
      const double dc = dh[j] * og * (1.0 - tc[j] * tc[j]) + dc_next[j];
      const double d_o = dh[j] * tc[j];
      da[j] = dc * gg * ig * (1.0 - ig);
      da[H + j] = dc * c_prev[j] * fg * (1.0 - fg);
      da[2 * H + j] = dc * ig * (1.0 - gg * gg);
      da[3 * H + j] = d_o * og * (1.0 - og);
      dc_next[j] = dc * fg;
    }
    axpy(1.0, da.data(), grad.b.data.data(), G);
    switch (input.kind) {
      case LstmInput::Kind::Zero:
        break;
      case LstmInput::Kind::OneHot:
        axpy(1.0, da.data(), grad.W.data.data() + input.one_hot[t] * G, G);
        break;
      case LstmInput::Kind::Dense: {
        const double* x = input.dense->data.data() + t * p.input_size;
        for (std::size_t i = 0; i < p.input_size; ++i) {
          if (x[i] != 0.0) axpy(x[i], da.data(), grad.W.data.data() + i * G, G);
        }
        break;
      }
    }
    for (std::size_t k = 0; k < H; ++k) {
      const double* urow = p.U.data.data() + k * G;
      if (h_prev[k] != 0.0) axpy(h_prev[k], da.data(), grad.U.data.data() + k * G, G);
      dh_next[k] = dot(urow, da.data(), G);
    }
  }
  std::copy(dh_next.begin(), dh_next.end(), dh0.begin());
  std::copy(dc_next.begin(), dc_next.end(), dc0.begin());
}

}  // namespace repoprint::seqembed
