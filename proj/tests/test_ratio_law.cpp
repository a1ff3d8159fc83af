#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "ratiolaw/error.hpp"
#include "ratiolaw/metrics.hpp"
#include "ratiolaw/ratio_law.hpp"
#include "ratiolaw/rng.hpp"

using namespace ratiolaw;

TEST_CASE("random-classifier curves") {
  CHECK(f1_random(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f1_random(1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(f1_random(1e-9) < 1e-8);
  CHECK(auprc_random(1.0) == 0.5);
  CHECK(auprc_random(1.0 / 3.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(auprc_random(1e-9) < 1e-8);
  for (double bad : {0.0, -0.1, 1.0 + 1e-12, double(NAN)}) {
    CHECK_THROWS_AS(f1_random(bad), NumericError);
    CHECK_THROWS_AS(auprc_random(bad), NumericError);
    CHECK_THROWS_AS(f1_random_derivative(bad), NumericError);
  }
}

TEST_CASE("curves increase with r and stay below 1/2") {
  double prev_f1 = 0.0, prev_pr = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double r = i / 1000.0;
    CHECK(f1_random(r) > prev_f1);
    CHECK(auprc_random(r) > prev_pr);
    CHECK(f1_random(r) <= 0.5 + 1e-15);
    // F1 of a random classifier dominates its average precision
    CHECK(f1_random(r) >= auprc_random(r));
    prev_f1 = f1_random(r);
    prev_pr = auprc_random(r);
  }
}

TEST_CASE("derivatives match finite differences") {
  for (int i = 1; i <= 20; ++i) {
    const double r = 0.025 + 0.0475 * (i - 1);  // 0.025 .. 0.9275
    const double h = 1e-5;
    const double fd_f1 = oracle::central_difference([](double x) { return 2.0 * x / (3.0 * x + 1.0); }, r, h);
    const double fd_pr = oracle::central_difference([](double x) { return x / (1.0 + x); }, r, h);
    CHECK(std::abs(f1_random_derivative(r) - fd_f1) / fd_f1 < 1e-6);
    CHECK(std::abs(auprc_random_derivative(r) - fd_pr) / fd_pr < 1e-6);
  }
  CHECK(f1_random_derivative(1.0) == doctest::Approx(0.125));
  CHECK(auprc_random_derivative(1.0) == doctest::Approx(0.25));
}

TEST_CASE("expected confusion of a random classifier") {
  const auto half = expected_confusion_random(1.0);
  CHECK(half.tp == 0.25);
  CHECK(half.fp == 0.25);
  CHECK(half.fn == 0.25);
  CHECK(half.tn == 0.25);
  const auto third = expected_confusion_random(1.0 / 3.0);
  CHECK(third.tp == doctest::Approx(0.125));
  CHECK(third.fn == doctest::Approx(0.125));
  CHECK(third.fp == doctest::Approx(0.375));
  CHECK(third.tn == doctest::Approx(0.375));
  for (int i = 1; i <= 100; ++i) {
    const double r = i / 100.0;
    const auto c = expected_confusion_random(r);
    CHECK(c.tp + c.fp + c.fn + c.tn == doctest::Approx(1.0));
    CHECK(point_metrics(c.tp, c.fp, c.fn, c.tn).f1 == doctest::Approx(f1_random(r)).epsilon(1e-14));
    CHECK(point_metrics(c.tp, c.fp, c.fn, c.tn).precision == doctest::Approx(auprc_random(r)).epsilon(1e-14));
  }
}

TEST_CASE("small-r error bounds") {
  const auto at_001 = small_r_error(0.01);
  CHECK(at_001.f1_abs_err <= 6e-4);
  CHECK(at_001.auprc_abs_err <= 1e-4);
  CHECK(at_001.f1_abs_err == doctest::Approx(std::abs(2 * 0.01 - f1_random(0.01))));
  const auto at_015 = small_r_error(0.15);
  CHECK(at_015.f1_abs_err < 0.1);
  CHECK(at_015.auprc_abs_err < 0.1);
  double prev = INFINITY;
  for (double r : {0.5, 0.1, 0.01, 0.001, 1e-6}) {
    CHECK(small_r_error(r).f1_abs_err < prev);
    prev = small_r_error(r).f1_abs_err;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("through-origin fit") {
  std::vector<RatioPoint> line;
  for (double r : {0.05, 0.1, 0.2, 0.4}) line.emplace_back(r, 2.0 * r);
  const auto fit = fit_ratio_law(line);
  CHECK(fit.coefficient == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == 0.0);
  CHECK(fit.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_points == 4);

  CHECK_THROWS(fit_ratio_law(std::vector<RatioPoint>{{0.1, 0.2}}));
  CHECK_THROWS(fit_ratio_law(std::vector<RatioPoint>{{0.1, 0.2}, {0.1, 0.3}}));

  const auto two = fit_ratio_law(std::vector<RatioPoint>{{0.1, 0.3}, {0.2, 0.1}});
  CHECK(two.pearson_r == -1.0);
  CHECK(two.p_value == 1.0);
}

TEST_CASE("fits are invariant to point order and scale linearly") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RatioPoint> pts;
    for (int i = 0; i < 12; ++i) {
      const double r = rng.uniform(0.01, 1.0);
      pts.emplace_back(r, 3.0 * r + rng.normal() * 0.05);
    }
    const auto base = fit_ratio_law(pts);
    const auto base_ols = fit_with_intercept(pts);
    auto shuffled = pts;
    rng.shuffle(std::span<RatioPoint>(shuffled));
    CHECK(fit_ratio_law(shuffled).coefficient == doctest::Approx(base.coefficient).epsilon(1e-12));
    CHECK(fit_ratio_law(shuffled).pearson_r == doctest::Approx(base.pearson_r).epsilon(1e-12));
    auto scaled = pts;
    for (auto& p : scaled) p.second *= 2.5;
    CHECK(fit_ratio_law(scaled).coefficient == doctest::Approx(2.5 * base.coefficient).epsilon(1e-12));
    CHECK(fit_with_intercept(scaled).intercept == doctest::Approx(2.5 * base_ols.intercept).epsilon(1e-9));

    double num = 0, den = 0;
    for (const auto& [r, m] : pts) {
      num += r * m;
      den += r * r;
    }
    CHECK(base.coefficient == doctest::Approx(num / den).epsilon(1e-13));
  }
}

TEST_CASE("reference task fixture") {
  const auto& tasks = reference_task_results();
  REQUIRE(tasks.size() == 10);
  std::vector<double> rs, f1s, prs;
  std::vector<RatioPoint> f1_points, pr_points;
  for (const auto& t : tasks) {
    rs.push_back(t.r);
    f1s.push_back(t.f1);
    prs.push_back(t.auprc);
    f1_points.emplace_back(t.r, t.f1);
    pr_points.emplace_back(t.r, t.auprc);
  }
  const auto f1_fit = fit_ratio_law(f1_points);
  const auto pr_fit = fit_ratio_law(pr_points);
  CHECK(f1_fit.pearson_r == doctest::Approx(oracle::pearson_sums(rs, f1s)).epsilon(1e-12));
  CHECK(pr_fit.pearson_r == doctest::Approx(oracle::pearson_sums(rs, prs)).epsilon(1e-12));
  // frozen from an independent statistics package
  CHECK(f1_fit.pearson_r == doctest::Approx(0.9542761896215628).epsilon(1e-12));
  CHECK(f1_fit.p_value == doctest::Approx(1.809326151744764e-05).epsilon(1e-8));
  CHECK(pr_fit.pearson_r == doctest::Approx(0.9338446925060848).epsilon(1e-12));
  CHECK(pr_fit.p_value == doctest::Approx(7.732778510728608e-05).epsilon(1e-8));
  CHECK(f1_fit.coefficient == doctest::Approx(3.3279728831995983).epsilon(1e-12));
  CHECK(pr_fit.coefficient == doctest::Approx(3.6725522400000616).epsilon(1e-12));
}
