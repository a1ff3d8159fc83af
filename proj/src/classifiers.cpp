#include "ratiolaw/classifiers.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ratiolaw/error.hpp"
#include "ratiolaw/rng.hpp"

namespace ratiolaw {

Labels predict_labels(std::span<const double> probs, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold outside [0, 1]");
  Labels out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      throw NumericError("probability outside [0, 1] at index " + std::to_string(i));
    }
    out[i] = probs[i] >= threshold ? 1 : 0;
  }
  return out;
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

LogisticRegression::LogisticRegression(LogisticConfig config) : config_(config) {
  if (!(config_.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(config_.l2_penalty >= 0.0)) throw ConfigError("l2_penalty must be nonnegative");
}

void LogisticRegression::fit(const Dataset& dataset) {
  const ClassCounts counts = class_counts(dataset);
  if (counts.n_minority == 0 || counts.n_majority == 0) throw DataError("degenerate class distribution");

  const std::size_t n = dataset.size();
  const std::size_t p = dataset.dim();
  means_.assign(p, 0.0);
  scales_.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = dataset.row(i);
    for (std::size_t j = 0; j < p; ++j) means_[j] += r[j];
  }
  for (auto& m : means_) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = dataset.row(i);
    for (std::size_t j = 0; j < p; ++j) scales_[j] += (r[j] - means_[j]) * (r[j] - means_[j]);
  }
  for (auto& s : scales_) {
    s = std::sqrt(s / static_cast<double>(n));
    if (s == 0.0) s = 1.0;
  }

  Matrix z(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = dataset.row(i);
    for (std::size_t j = 0; j < p; ++j) z(i, j) = (r[j] - means_[j]) / scales_[j];
  }

  weights_.assign(p, 0.0);
  bias_ = 0.0;
  loss_history_.clear();
  loss_history_.reserve(config_.epochs + 1);

  std::vector<double> grad(p);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t epoch = 0; epoch <= config_.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = z.row(i);
      double logit = bias_;
      for (std::size_t j = 0; j < p; ++j) logit += weights_[j] * r[j];
      const int y = dataset.label(i);
      loss += softplus(logit) - y * logit;
      const double residual = sigmoid(logit) - y;
      for (std::size_t j = 0; j < p; ++j) grad[j] += residual * r[j];
      grad_bias += residual;
    }
    double penalty = 0.0;
    for (double w : weights_) penalty += w * w;
    loss_history_.push_back(loss * inv_n + 0.5 * config_.l2_penalty * penalty);
    if (epoch == config_.epochs) break;

    for (std::size_t j = 0; j < p; ++j) {
      weights_[j] -= config_.learning_rate * (grad[j] * inv_n + config_.l2_penalty * weights_[j]);
    }
    bias_ -= config_.learning_rate * grad_bias * inv_n;
  }
}

std::vector<double> LogisticRegression::predict_proba(const Matrix& features) const {
  if (weights_.empty()) throw ConfigError("model has not been fitted");
  if (features.cols() != weights_.size()) {
    throw DataError("feature dimension " + std::to_string(features.cols()) + " does not match model dimension " +
                    std::to_string(weights_.size()));
  }
  std::vector<double> out(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto r = features.row(i);
    double logit = bias_;
    for (std::size_t j = 0; j < r.size(); ++j) logit += weights_[j] * (r[j] - means_[j]) / scales_[j];
    out[i] = sigmoid(logit);
  }
  return out;
}

namespace {

void write_line(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

std::vector<double> read_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(std::string("model text truncated: missing ") + what);
  std::vector<double> values;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw DataError(std::string("model text: non-numeric value in ") + what + ": '" + cell + "'");
    }
  }
  return values;
}

}  // namespace

void LogisticRegression::save(std::ostream& out) const {
  write_line(out, weights_);
  write_line(out, {bias_});
  write_line(out, means_);
  write_line(out, scales_);
}

LogisticRegression LogisticRegression::load(std::istream& in) {
  LogisticRegression model;
  model.weights_ = read_line(in, "weights");
  const auto bias = read_line(in, "bias");
  model.means_ = read_line(in, "means");
  model.scales_ = read_line(in, "scales");
  if (bias.size() != 1) throw DataError("model text: bias line must hold one value");
  const std::size_t p = model.weights_.size();
  if (p == 0 || model.means_.size() != p || model.scales_.size() != p) {
    throw DataError("model text: weight, mean and scale lines differ in length");
  }
  model.bias_ = bias[0];
  return model;
}

ScoredPredictions dummy_predict(const DummyStrategy& strategy, const ClassCounts& train_counts, std::size_t n_eval) {
  double p1 = 0.5;
  if (strategy.kind == DummyKind::kStratified) {
    if (train_counts.n_minority == 0 || train_counts.n_majority == 0) {
      throw DataError("degenerate class distribution");
    }
    p1 = static_cast<double>(train_counts.n_minority) / static_cast<double>(train_counts.total());
  }
  Rng label_rng(derive_seed(strategy.seed, {0xd0}));
  Rng jitter_rng(derive_seed(strategy.seed, {0xd1}));
  ScoredPredictions out;
  out.scores.resize(n_eval);
  out.labels.resize(n_eval);
  for (std::size_t i = 0; i < n_eval; ++i) {
    out.labels[i] = label_rng.bernoulli(p1) ? 1 : 0;
    out.scores[i] = p1 + jitter_rng.uniform(-kDummyJitter, kDummyJitter);
  }
  return out;
}

}  // namespace ratiolaw
