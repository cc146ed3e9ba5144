#include "repoprint/learn/logreg.hpp"

#include <cmath>

#include "json.hpp"

namespace repoprint::learn {
namespace {

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

// log(1 + exp(-m)) without overflow
double softplus_neg(double m) {
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

double regularized_loss(const Matrix& Z, std::span<const int> y,
                        const std::vector<double>& w, double b, double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < Z.rows; ++i) {
    double s = b;
    auto z = Z.row(i);
    for (std::size_t j = 0; j < Z.cols; ++j) s += w[j] * z[j];
    loss += softplus_neg(y[i] ? s : -s);
  }
  double reg = 0.0;
  for (double v : w) reg += v * v;
  return loss / static_cast<double>(Z.rows) + 0.5 * lambda * reg;
}

}  // namespace

LogRegFit fit_logreg_detailed(const Matrix& X, std::span<const int> y,
                              const LogRegConfig& cfg) {
  if (X.rows != y.size()) {
    fail(Errc::DimensionMismatch, "feature rows and labels differ in length");
  }
  std::size_t pos = 0;
  for (int v : y) pos += v != 0;
  if (pos == 0 || pos == y.size()) {
    fail(Errc::SingleClassTraining, "training labels contain a single class");
  }
  LogRegFit fit;
  LogRegModel& m = fit.model;
  m.standardizer = Standardizer::fit(X);
  m.l2_lambda = cfg.l2_lambda;
  m.weights.assign(X.cols, 0.0);
  const Matrix Z = m.standardizer.transform(X);
  const double n = static_cast<double>(X.rows);
  std::vector<double> gw(X.cols);
  std::vector<double> score(X.rows);
  fit.loss_history.reserve(cfg.epochs + 1);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    fit.loss_history.push_back(
        regularized_loss(Z, y, m.weights, m.bias, cfg.l2_lambda));
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < Z.rows; ++i) {
      auto z = Z.row(i);
      double s = m.bias;
      for (std::size_t j = 0; j < Z.cols; ++j) s += m.weights[j] * z[j];
      const double r = sigmoid(s) - (y[i] ? 1.0 : 0.0);
      gb += r;
      for (std::size_t j = 0; j < Z.cols; ++j) gw[j] += r * z[j];
    }
    for (std::size_t j = 0; j < Z.cols; ++j) {
      m.weights[j] -= cfg.learning_rate *
                      (gw[j] / n + cfg.l2_lambda * m.weights[j]);
    }
    m.bias -= cfg.learning_rate * gb / n;
  }
  fit.loss_history.push_back(
      regularized_loss(Z, y, m.weights, m.bias, cfg.l2_lambda));
  return fit;
}

LogRegModel fit_logreg(const Matrix& X, std::span<const int> y,
                       const LogRegConfig& cfg) {
  return fit_logreg_detailed(X, y, cfg).model;
}

double predict_proba(const LogRegModel& m, std::span<const double> x) {
  if (x.size() != m.weights.size()) {
    fail(Errc::DimensionMismatch, "model expects " +
                                      std::to_string(m.weights.size()) +
                                      " features, got " + std::to_string(x.size()));
  }
  double s = m.bias;
  for (std::size_t j = 0; j < x.size(); ++j) {
    s += m.weights[j] * (x[j] - m.standardizer.mean[j]) / m.standardizer.std[j];
  }
  return sigmoid(s);
}

int predict(const LogRegModel& m, std::span<const double> x) {
  return predict_proba(m, x) >= 0.5 ? 1 : 0;
}

std::string logreg_to_json(const LogRegModel& m) {
  nlohmann::json j;
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["l2_lambda"] = m.l2_lambda;
  j["standardizer"] = {{"mean", m.standardizer.mean}, {"std", m.standardizer.std}};
  j["feature_names"] = m.feature_names;
  return j.dump(2);
}

}  // namespace repoprint::learn
