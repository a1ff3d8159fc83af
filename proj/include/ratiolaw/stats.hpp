#pragma once

#include <span>

namespace ratiolaw::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double degrees_of_freedom = 0.0;
};

// Regularised incomplete beta I_x(a, b) by Lentz's continued fraction, using
// the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) when x > (a+1)/(a+b+2).
double regularized_incomplete_beta(double x, double a, double b);

// The two evaluation routes, exposed separately so they can be checked
// against each other. The continued fraction is evaluated as-is (no
// symmetry switch) and throws NumericError if it fails to converge; the
// power series is valid for 0 <= x < 1 and converges fastest for small x.
double incomplete_beta_continued_fraction(double x, double a, double b);
double incomplete_beta_series(double x, double a, double b);

// Upper tail P(T > t) of Student's t with df degrees of freedom.
double student_t_sf(double t, double df);
// P(|T| >= |t|).
double student_t_two_sided(double t, double df);

// Product-moment R; p-value from t = R sqrt((n-2)/(1-R^2)) on n-2 dof.
TestResult pearson(std::span<const double> xs, std::span<const double> ys);

// t on the differences a - b with n - 1 dof; two-sided p.
TestResult paired_ttest(std::span<const double> a, std::span<const double> b);

// Unequal-variance t with Welch-Satterthwaite dof; two-sided p.
TestResult welch_ttest(std::span<const double> a, std::span<const double> b);

// Pooled-variance Student t, kept for sensitivity checks against Welch.
TestResult pooled_ttest(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> xs);
// Sample variance (n - 1 denominator).
double variance(std::span<const double> xs);

}  // namespace ratiolaw::stats
