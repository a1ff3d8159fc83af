#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "ratiolaw/dataset.hpp"

namespace ratiolaw {

// label_i = 1 iff probs_i >= threshold. Throws on probabilities or a
// threshold outside [0, 1].
Labels predict_labels(std::span<const double> probs, double threshold = 0.5);

class ProbabilisticClassifier {
 public:
  virtual ~ProbabilisticClassifier() = default;

  virtual void fit(const Dataset& dataset) = 0;
  // P(y = 1 | x) per row, finite and within [0, 1].
  virtual std::vector<double> predict_proba(const Matrix& features) const = 0;
  virtual std::unique_ptr<ProbabilisticClassifier> clone() const = 0;

  Labels predict(const Matrix& features, double threshold = 0.5) const {
    return predict_labels(predict_proba(features), threshold);
  }
};

struct LogisticConfig {
  double learning_rate = 0.5;
  std::size_t epochs = 200;
  double l2_penalty = 0.0;
  std::uint64_t seed = 0;
};

// Full-batch gradient descent on L2-regularised log-loss. Features are
// standardised with training statistics, which are stored with the model.
class LogisticRegression final : public ProbabilisticClassifier {
 public:
  explicit LogisticRegression(LogisticConfig config = {});

  void fit(const Dataset& dataset) override;
  std::vector<double> predict_proba(const Matrix& features) const override;
  std::unique_ptr<ProbabilisticClassifier> clone() const override {
    return std::make_unique<LogisticRegression>(*this);
  }

  const LogisticConfig& config() const { return config_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const std::vector<double>& feature_means() const { return means_; }
  const std::vector<double>& feature_scales() const { return scales_; }
  // Regularised training loss before each epoch and after the last one.
  const std::vector<double>& loss_history() const { return loss_history_; }

  // Four lines: weights, bias, means, scales; comma separated.
  void save(std::ostream& out) const;
  static LogisticRegression load(std::istream& in);

 private:
  LogisticConfig config_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::vector<double> means_;
  std::vector<double> scales_;
  std::vector<double> loss_history_;
};

inline std::unique_ptr<LogisticRegression> fit_logistic(const Dataset& dataset, const LogisticConfig& config) {
  auto model = std::make_unique<LogisticRegression>(config);
  model->fit(dataset);
  return model;
}

enum class DummyKind { kStratified, kUniform };

struct DummyStrategy {
  DummyKind kind = DummyKind::kUniform;
  std::uint64_t seed = 0;
};

struct ScoredPredictions {
  std::vector<double> scores;
  Labels labels;
};

// Half-width of the uniform jitter added to dummy scores so that their
// ranking is random rather than one large tie.
inline constexpr double kDummyJitter = 1e-6;

// Labels are independent Bernoulli draws with parameter p1 = N1 / (N0 + N1)
// (stratified) or 0.5 (uniform); each score is that parameter plus jitter.
ScoredPredictions dummy_predict(const DummyStrategy& strategy, const ClassCounts& train_counts, std::size_t n_eval);

}  // namespace ratiolaw
