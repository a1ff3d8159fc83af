#include "ratiolaw/ratio_law.hpp"

#include <cmath>

#include "ratiolaw/error.hpp"
#include "ratiolaw/stats.hpp"

namespace ratiolaw {

namespace {

void check_ratio(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw NumericError("ratio r must lie in (0, 1]");
}

}  // namespace

double f1_random(double r) {
  check_ratio(r);
  return 2.0 * r / (3.0 * r + 1.0);
}

double auprc_random(double r) {
  check_ratio(r);
  return r / (1.0 + r);
}

double f1_random_derivative(double r) {
  check_ratio(r);
  const double d = 3.0 * r + 1.0;
  return 2.0 / (d * d);
}

double auprc_random_derivative(double r) {
  check_ratio(r);
  return 1.0 / ((1.0 + r) * (1.0 + r));
}

ExpectedConfusion expected_confusion_random(double r) {
  check_ratio(r);
  const double positive = r / (1.0 + r);
  const double negative = 1.0 / (1.0 + r);
  return {0.5 * positive, 0.5 * negative, 0.5 * positive, 0.5 * negative};
}

SmallRError small_r_error(double r) {
  check_ratio(r);
  return {6.0 * r * r / (3.0 * r + 1.0), r * r / (1.0 + r)};
}

namespace {

void check_points(std::span<const RatioPoint> points) {
  if (points.size() < 2) throw DataError("ratio-law fit needs at least 2 points");
  bool varies = false;
  for (const auto& [r, m] : points) {
    if (!std::isfinite(r) || !std::isfinite(m)) throw NumericError("ratio-law fit: non-finite point");
    if (r != points.front().first) varies = true;
  }
  if (!varies) throw DataError("ratio-law fit: r values are all identical");
}

void attach_correlation(std::span<const RatioPoint> points, LinearFit& fit) {
  std::vector<double> rs, ms;
  for (const auto& [r, m] : points) {
    rs.push_back(r);
    ms.push_back(m);
  }
  bool metric_varies = false;
  for (double m : ms) metric_varies = metric_varies || m != ms.front();
  if (!metric_varies) return;  // R undefined; leave R = 0, p = 1
  if (points.size() == 2) {
    // Two distinct points are always perfectly correlated; no dof for a test.
    fit.pearson_r = (rs[1] - rs[0]) * (ms[1] - ms[0]) > 0 ? 1.0 : -1.0;
    return;
  }
  const auto result = stats::pearson(rs, ms);
  fit.pearson_r = result.statistic;
  fit.p_value = result.p_value;
}

}  // namespace

LinearFit fit_ratio_law(std::span<const RatioPoint> points) {
  check_points(points);
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [r, m] : points) {
    sxy += m * r;
    sxx += r * r;
  }
  if (sxx == 0.0) throw DataError("ratio-law fit: all r values are zero");
  LinearFit fit;
  fit.coefficient = sxy / sxx;
  fit.n_points = points.size();
  attach_correlation(points, fit);
  return fit;
}

LinearFit fit_with_intercept(std::span<const RatioPoint> points) {
  check_points(points);
  const double n = static_cast<double>(points.size());
  double mr = 0.0, mm = 0.0;
  for (const auto& [r, m] : points) {
    mr += r;
    mm += m;
  }
  mr /= n;
  mm /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [r, m] : points) {
    sxy += (r - mr) * (m - mm);
    sxx += (r - mr) * (r - mr);
  }
  LinearFit fit;
  fit.coefficient = sxy / sxx;
  fit.intercept = mm - fit.coefficient * mr;
  fit.n_points = points.size();
  attach_correlation(points, fit);
  return fit;
}

const std::vector<TaskResult>& reference_task_results() {
  static const std::vector<TaskResult> tasks = {
      {"Antimicrobial", 0.8681, 0.9494, 0.3979},       {"Antibacterial", 0.7814, 0.8547, 0.2411},
      {"Toxic", 0.7859, 0.8797, 0.2209},               {"Anti_gram_pos", 0.7426, 0.8208, 0.1862},
      {"Anti_gram_neg", 0.7152, 0.7814, 0.1547},       {"Metabolic", 0.6513, 0.7608, 0.1225},
      {"Anti_mammalian_cell", 0.6287, 0.6892, 0.0934}, {"Neuropeptide", 0.6109, 0.6753, 0.0617},
      {"Immunological", 0.5565, 0.5771, 0.0518},       {"Anti_inflammatory", 0.5268, 0.5946, 0.0451},
  };
  return tasks;
}

}  // namespace ratiolaw
