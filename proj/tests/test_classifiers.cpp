#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ratiolaw/classifiers.hpp"
#include "ratiolaw/error.hpp"
#include "test_util.hpp"

using namespace ratiolaw;

namespace {

// x = -1 -> 0 and x = +1 -> 1, fifty of each.
Dataset separable_1d() {
  std::vector<double> xs;
  Labels ys;
  for (int i = 0; i < 50; ++i) {
    xs.push_back(-1.0);
    ys.push_back(0);
    xs.push_back(1.0);
    ys.push_back(1);
  }
  return Dataset(Matrix(xs, 1), ys);
}

}  // namespace

TEST_CASE("predict_labels uses >= at the threshold") {
  const std::vector<double> probs{0.4, 0.5, 0.6};
  CHECK(predict_labels(probs, 0.5) == Labels{0, 1, 1});
  CHECK(predict_labels(probs, 0.0) == Labels{1, 1, 1});
  CHECK(predict_labels(std::vector<double>{0.0, 1.0}, 1.0) == Labels{0, 1});
  CHECK_THROWS(predict_labels(probs, 1.0 + 1e-9));
  CHECK_THROWS(predict_labels(probs, -1e-9));
  CHECK_THROWS(predict_labels(std::vector<double>{0.2, 1.2}));
  CHECK_THROWS(predict_labels(std::vector<double>{NAN}));
}

TEST_CASE("logistic regression with zero epochs predicts 0.5") {
  LogisticRegression model({0.5, 0, 0.0, 0});
  model.fit(separable_1d());
  for (double p : model.predict_proba(separable_1d().features())) CHECK(p == 0.5);
  CHECK(model.loss_history().size() == 1);
  CHECK(model.loss_history()[0] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("logistic regression fits separable data") {
  const Dataset data = separable_1d();
  const auto model = fit_logistic(data, {0.1, 500, 0.0, 0});
  CHECK(model->predict(data.features()) == data.labels());
  CHECK(model->weights()[0] > 0.0);
}

TEST_CASE("logistic regression is deterministic") {
  const Dataset data = generate_synthetic({400, 3, 0.3, 1.0, 5});
  const auto a = fit_logistic(data, {0.5, 50, 0.01, 9});
  const auto b = fit_logistic(data, {0.5, 50, 0.01, 9});
  CHECK(a->weights() == b->weights());
  CHECK(a->bias() == b->bias());
}

TEST_CASE("small learning rate gives a non-increasing loss") {
  const Dataset data = generate_synthetic({300, 2, 0.2, 1.0, 1});
  const auto model = fit_logistic(data, {0.01, 300, 0.0, 0});
  const auto& loss = model->loss_history();
  REQUIRE(loss.size() == 301);
  for (std::size_t i = 1; i < loss.size(); ++i) CHECK(loss[i] <= loss[i - 1] + 1e-15);
}

TEST_CASE("logistic outputs are probabilities and constant features are harmless") {
  std::vector<double> values;
  Labels labels;
  for (int i = 0; i < 40; ++i) {
    values.push_back(3.0);  // constant column
    values.push_back(i < 20 ? -0.5 + 0.01 * i : 0.5 + 0.01 * i);
    labels.push_back(i < 20 ? 0 : 1);
  }
  const Dataset data(Matrix(values, 2), labels);
  const auto model = fit_logistic(data, {0.5, 100, 0.0, 0});
  for (double p : model->predict_proba(data.features())) {
    CHECK(std::isfinite(p));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(model->feature_scales()[0] == 1.0);
}

TEST_CASE("logistic rejects a one-class training set and mismatched inputs") {
  LogisticRegression model;
  CHECK(testutil::message_of([&] { model.fit(Dataset(Matrix({1.0, 2.0}, 1), {0, 0})); }) ==
        "degenerate class distribution");
  CHECK_THROWS(model.predict_proba(Matrix(std::vector<double>{1.0}, 1)));  // not fitted
  model.fit(separable_1d());
  CHECK_THROWS_AS(model.predict_proba(Matrix({1.0, 2.0}, 2)), DataError);
  CHECK_THROWS_AS(LogisticRegression({0.0, 10, 0.0, 0}).fit(separable_1d()), ConfigError);
}

TEST_CASE("logistic save and load reproduce predictions exactly") {
  const Dataset data = generate_synthetic({200, 3, 0.5, 1.0, 2});
  const auto model = fit_logistic(data, {0.5, 30, 0.0, 0});
  std::stringstream ss;
  model->save(ss);
  const LogisticRegression loaded = LogisticRegression::load(ss);
  CHECK(loaded.predict_proba(data.features()) == model->predict_proba(data.features()));

  std::istringstream truncated("1,2\n0.5\n");
  CHECK_THROWS_AS(LogisticRegression::load(truncated), DataError);
}

TEST_CASE("clone keeps the fitted state") {
  const Dataset data = separable_1d();
  const auto model = fit_logistic(data, {0.1, 50, 0.0, 0});
  const auto copy = model->clone();
  CHECK(copy->predict_proba(data.features()) == model->predict_proba(data.features()));
}

TEST_CASE("dummy label frequencies") {
  SUBCASE("uniform") {
    const auto out = dummy_predict({DummyKind::kUniform, 1}, {900, 100}, 100000);
    double ones = 0;
    for (int y : out.labels) ones += y;
    CHECK(std::abs(ones / 100000.0 - 0.5) < 0.005);
    for (double s : out.scores) CHECK(std::abs(s - 0.5) <= kDummyJitter);
  }
  SUBCASE("stratified") {
    const auto out = dummy_predict({DummyKind::kStratified, 1}, {900, 100}, 100000);
    double ones = 0;
    for (int y : out.labels) ones += y;
    CHECK(std::abs(ones / 100000.0 - 0.1) < 0.005);
    for (double s : out.scores) CHECK(std::abs(s - 0.1) <= kDummyJitter);
  }
  SUBCASE("empty evaluation set") {
    const auto out = dummy_predict({DummyKind::kUniform, 1}, {900, 100}, 0);
    CHECK(out.labels.empty());
    CHECK(out.scores.empty());
  }
  SUBCASE("degenerate counts under stratified") {
    CHECK_THROWS(dummy_predict({DummyKind::kStratified, 1}, {10, 0}, 5));
  }
  SUBCASE("deterministic per seed") {
    const auto a = dummy_predict({DummyKind::kUniform, 3}, {5, 5}, 1000);
    const auto b = dummy_predict({DummyKind::kUniform, 3}, {5, 5}, 1000);
    CHECK(a.labels == b.labels);
    CHECK(a.scores == b.scores);
  }
}
