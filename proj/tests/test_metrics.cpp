#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ratiolaw/metrics.hpp"
#include "ratiolaw/rng.hpp"
#include "test_util.hpp"

using namespace ratiolaw;
using testutil::message_of;

TEST_CASE("confusion counts") {
  CHECK(confusion(Labels{1, 1, 0, 0}, Labels{1, 0, 1, 0}) == ConfusionCounts{1, 1, 1, 1});
  const Labels truth{1, 0, 0, 1, 1, 0};
  const auto same = confusion(truth, truth);
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  Labels inverted;
  for (int y : truth) inverted.push_back(1 - y);
  const auto inv = confusion(truth, inverted);
  CHECK(inv.tp == 0);
  CHECK(inv.tn == 0);
  CHECK_THROWS(confusion(Labels{1, 0}, Labels{1}));
}

TEST_CASE("point metrics") {
  SUBCASE("worked example") {
    const auto m = point_metrics(ConfusionCounts{2, 1, 1, 6});
    CHECK(m.accuracy == doctest::Approx(0.8));
    CHECK(m.precision == doctest::Approx(2.0 / 3.0));
    CHECK(m.recall == doctest::Approx(2.0 / 3.0));
    CHECK(m.fpr == doctest::Approx(1.0 / 7.0));
    CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("no positive predictions") {
    const auto m = point_metrics(ConfusionCounts{0, 0, 4, 6});
    CHECK(m.precision == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK(m.precision_undefined);
    CHECK_FALSE(m.f1_undefined);
  }
  SUBCASE("perfect") {
    const auto m = point_metrics(ConfusionCounts{5, 0, 0, 5});
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
    CHECK(m.fpr == 0.0);
  }
  SUBCASE("all negatives predicted negative") {
    const auto m = point_metrics(ConfusionCounts{0, 0, 0, 5});
    CHECK(m.recall_undefined);
    CHECK(m.f1_undefined);
    CHECK(m.f1 == 0.0);
  }
  SUBCASE("real-valued cells") {
    const auto m = point_metrics(0.125, 0.375, 0.125, 0.375);
    CHECK(m.precision == doctest::Approx(0.25));
    CHECK(m.recall == doctest::Approx(0.5));
  }
}

TEST_CASE("point metrics stay in range") {
  Rng rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const ConfusionCounts c{rng.below(5), rng.below(5), rng.below(5), rng.below(5)};
    if (c.total() == 0) continue;
    const auto m = point_metrics(c);
    for (double v : {m.accuracy, m.precision, m.recall, m.fpr, m.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("auroc examples") {
  const std::vector<double> scores{0.9, 0.8, 0.7, 0.6};
  CHECK(auroc(scores, Labels{1, 1, 0, 0}) == 1.0);
  CHECK(auroc(scores, Labels{0, 0, 1, 1}) == 0.0);
  CHECK(auroc(std::vector<double>(6, 0.3), Labels{1, 0, 1, 0, 0, 0}) == 0.5);
  CHECK(message_of([] { auroc(std::vector<double>{0.1, 0.2}, Labels{1, 1}); }).find("AUROC undefined") == 0);
  CHECK_THROWS(auroc(std::vector<double>{0.1}, Labels{1, 0}));
}

TEST_CASE("auprc examples") {
  const std::vector<double> scores{0.9, 0.8, 0.7, 0.6};
  CHECK(auprc(scores, Labels{1, 1, 0, 0}) == 1.0);
  CHECK(auprc(scores, Labels{0, 0, 1, 1}) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  CHECK(auprc(std::vector<double>(4, 0.5), Labels{1, 1, 0, 0}) == 0.5);
  CHECK(message_of([] { auprc(std::vector<double>{0.1, 0.2}, Labels{0, 0}); }).find("AUPRC undefined") == 0);
}

TEST_CASE("ranking metrics agree with brute force on random inputs") {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.below(60);
    std::vector<double> scores(n);
    Labels labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.below(8)) / 8.0;  // plenty of ties
      labels[i] = rng.bernoulli(0.3) ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;
    CHECK(auroc(scores, labels) == doctest::Approx(oracle::auroc_pairs(scores, labels)).epsilon(1e-12));
    CHECK(auprc(scores, labels) == doctest::Approx(oracle::auprc_thresholds(scores, labels)).epsilon(1e-12));
  }
}

TEST_CASE("ranking metrics are invariant to row order and monotone score maps") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng.below(40);
    std::vector<double> scores(n);
    Labels labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.below(10)) / 10.0;
      labels[i] = i % 3 == 0 ? 1 : 0;
    }
    const double roc = auroc(scores, labels);
    const double pr = auprc(scores, labels);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<double> s2;
    Labels l2;
    for (auto i : order) {
      s2.push_back(scores[i]);
      l2.push_back(labels[i]);
    }
    CHECK(auroc(s2, l2) == doctest::Approx(roc).epsilon(1e-12));
    CHECK(auprc(s2, l2) == doctest::Approx(pr).epsilon(1e-12));

    std::vector<double> mapped;
    for (double s : scores) mapped.push_back(std::exp(3.0 * s) - 7.0);
    CHECK(auroc(mapped, labels) == doctest::Approx(roc).epsilon(1e-12));
    CHECK(auprc(mapped, labels) == doctest::Approx(pr).epsilon(1e-12));

    // reversing scores swaps the role of the classes for AUROC
    std::vector<double> negated;
    for (double s : scores) negated.push_back(-s);
    CHECK(auroc(negated, labels) == doctest::Approx(1.0 - roc).epsilon(1e-12));
  }
}

TEST_CASE("evaluate bundles metrics and flags conventions") {
  const std::vector<double> scores{0.9, 0.2, 0.6, 0.1};
  const Labels truth{1, 0, 1, 0};
  const auto report = evaluate(scores, Labels{1, 0, 0, 0}, truth);
  CHECK(report.accuracy == 0.75);
  CHECK(report.recall == 0.5);
  CHECK(report.auroc == 1.0);
  CHECK(report.auprc == 1.0);
  CHECK_FALSE(report.flagged);
  const auto none = evaluate(scores, Labels{0, 0, 0, 0}, truth);
  CHECK(none.flagged);
  CHECK(none.precision == 0.0);
  CHECK(std::string(kMetricsHeader) == "accuracy,precision,recall,fpr,f1,auroc,auprc,flagged");
  CHECK(metrics_csv_fields(report).find(',') != std::string::npos);
}
