#include "ratiolaw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ratiolaw/error.hpp"

namespace ratiolaw::stats {

namespace {

constexpr double kTolerance = 1e-12;
constexpr int kMaxIterations = 300;
constexpr double kTiny = 1e-300;

void check_beta_args(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw NumericError("incomplete beta requires a > 0 and b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw NumericError("incomplete beta requires x in [0, 1]");
}

// Stirling remainder: lgamma(x) - [(x - 1/2) ln x - x + ln(2 pi) / 2], for x >= 10.
double stirling_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680 - inv2 / 1188))));
}

// ln B(a, b). With a large, lgamma(a) and lgamma(a + b) are huge and nearly
// equal, so their difference is taken analytically instead.
double log_beta(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a < 10.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double diff = -(a - 0.5) * std::log1p(b / a) - b * std::log(a + b) + b + stirling_tail(a) -
                      stirling_tail(a + b);  // lgamma(a) - lgamma(a + b)
  return std::lgamma(b) + diff;
}

// x^a y^b / B(a, b) with y = 1 - x, from the logs of x and y.
double beta_front(double log_x, double log_y, double a, double b) {
  return std::exp(a * log_x + b * log_y - log_beta(a, b));
}

// Modified Lentz evaluation of the standard continued fraction for I_x(a,b).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta_continued_fraction(double x, double a, double b) {
  check_beta_args(x, a, b);
  if (x == 0.0 || x == 1.0) return x;
  return beta_front(std::log(x), std::log1p(-x), a, b) * beta_continued_fraction(x, a, b) / a;
}

double incomplete_beta_series(double x, double a, double b) {
  check_beta_args(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) throw NumericError("incomplete beta series diverges at x = 1");
  // I_x(a,b) = x^a / B(a,b) * sum_n (1-b)_n / n! * x^n / (a + n)
  const double front = std::exp(a * std::log(x) - log_beta(a, b));
  double coeff = 1.0;  // (1-b)_n / n! * x^n
  double sum = 1.0 / a;
  for (int n = 1; n < 100000; ++n) {
    coeff *= (n - b) * x / n;
    const double term = coeff / (a + n);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) return front * sum;
  }
  throw NumericError("incomplete beta series did not converge");
}

namespace {

// I_x(a, b) given both x and y = 1 - x (and their logs), so callers that
// know y more accurately than 1 - x can pass it through.
double incomplete_beta_xy(double x, double y, double log_x, double log_y, double a, double b) {
  if (x < (a + 1.0) / (a + b + 2.0)) return beta_front(log_x, log_y, a, b) * beta_continued_fraction(x, a, b) / a;
  return 1.0 - beta_front(log_y, log_x, b, a) * beta_continued_fraction(y, b, a) / b;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  check_beta_args(x, a, b);
  if (x == 0.0 || x == 1.0) return x;
  return incomplete_beta_xy(x, 1.0 - x, std::log(x), std::log1p(-x), a, b);
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw NumericError("degrees of freedom must be positive");
  if (std::isnan(t)) throw NumericError("t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  // x = df / (df + t^2) sits near 1 for large df; pass 1 - x and both logs directly.
  const double t2 = t * t;
  if (std::isinf(t2)) return 0.0;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  const double log_x = -std::log1p(t2 / df);
  const double log_y = std::log(t2) - std::log(df + t2);
  return std::clamp(incomplete_beta_xy(x, y, log_x, log_y, 0.5 * df, 0.5), 0.0, 1.0);
}

double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw NumericError("degrees of freedom must be positive");
  if (t == 0.0) return 0.5;
  const double tail = 0.5 * student_t_two_sided(t, df);
  return t > 0.0 ? tail : 1.0 - tail;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DataError("mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw DataError("variance needs at least two values");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

TestResult pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DataError("pearson: length mismatch");
  if (xs.size() < 3) throw DataError("pearson: need at least 3 points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DataError("correlation undefined: constant input");
  TestResult result;
  result.statistic = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  result.degrees_of_freedom = static_cast<double>(xs.size() - 2);
  const double r2 = result.statistic * result.statistic;
  if (r2 >= 1.0) {
    result.p_value = 0.0;
  } else {
    const double t = result.statistic * std::sqrt(result.degrees_of_freedom / (1.0 - r2));
    result.p_value = student_t_two_sided(t, result.degrees_of_freedom);
  }
  return result;
}

TestResult paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("paired t-test: length mismatch");
  if (a.size() < 2) throw DataError("paired t-test: need at least 2 pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double var = variance(d);
  if (!(var > 0.0)) throw NumericError("test undefined: zero variance");
  TestResult result;
  result.degrees_of_freedom = static_cast<double>(d.size() - 1);
  result.statistic = mean(d) / std::sqrt(var / static_cast<double>(d.size()));
  result.p_value = student_t_two_sided(result.statistic, result.degrees_of_freedom);
  return result;
}

TestResult welch_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DataError("Welch t-test: each sample needs at least 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = variance(a) / na;
  const double vb = variance(b) / nb;
  if (!(va + vb > 0.0)) throw NumericError("test undefined: zero variance");
  TestResult result;
  result.statistic = (mean(a) - mean(b)) / std::sqrt(va + vb);
  result.degrees_of_freedom = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  result.p_value = student_t_two_sided(result.statistic, result.degrees_of_freedom);
  return result;
}

TestResult pooled_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DataError("pooled t-test: each sample needs at least 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  TestResult result;
  result.degrees_of_freedom = na + nb - 2.0;
  const double pooled = ((na - 1.0) * variance(a) + (nb - 1.0) * variance(b)) / result.degrees_of_freedom;
  if (!(pooled > 0.0)) throw NumericError("test undefined: zero variance");
  result.statistic = (mean(a) - mean(b)) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  result.p_value = student_t_two_sided(result.statistic, result.degrees_of_freedom);
  return result;
}

}  // namespace ratiolaw::stats
