#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ratiolaw {

// Closed forms for an ideal random classifier (predicts 1 with probability
// 0.5) evaluated on data with minority/majority ratio r in (0, 1].
// Positive fraction P_p = r/(1+r), negative fraction P_n = 1/(1+r).
double f1_random(double r);                // 2r / (3r + 1)
double auprc_random(double r);             // r / (1 + r)
double f1_random_derivative(double r);     // 2 / (3r + 1)^2
double auprc_random_derivative(double r);  // 1 / (1 + r)^2

struct ExpectedConfusion {
  double tp = 0.0;
  double fp = 0.0;
  double fn = 0.0;
  double tn = 0.0;
};

// Expected confusion fractions: tp = fn = P_p / 2, fp = tn = P_n / 2.
ExpectedConfusion expected_confusion_random(double r);

// Distance between the exact curves and their linear small-r forms 2r and r.
struct SmallRError {
  double f1_abs_err = 0.0;     // 6r^2 / (3r + 1)
  double auprc_abs_err = 0.0;  // r^2 / (1 + r)
};
SmallRError small_r_error(double r);

struct LinearFit {
  double coefficient = 0.0;  // slope of metric against r
  double intercept = 0.0;    // 0 for through-origin fits
  double pearson_r = 0.0;
  double p_value = 1.0;
  std::size_t n_points = 0;
};

using RatioPoint = std::pair<double, double>;  // (r, metric)

// Least squares with no intercept: sum(metric * r) / sum(r^2). Pearson R and
// its p-value describe the (r, metric) association.
LinearFit fit_ratio_law(std::span<const RatioPoint> points);

// Ordinary least squares with intercept, reported alongside for diagnostics.
LinearFit fit_with_intercept(std::span<const RatioPoint> points);

// Published (task, F1, AUPRC, r) results for ten further binary
// classification tasks; used as a fixture for the correlation pipeline.
struct TaskResult {
  std::string task;
  double f1;
  double auprc;
  double r;
};
const std::vector<TaskResult>& reference_task_results();

}  // namespace ratiolaw
