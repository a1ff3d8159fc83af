#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "ratiolaw/classifiers.hpp"
#include "ratiolaw/dataset.hpp"
#include "ratiolaw/error.hpp"
#include "ratiolaw/metrics.hpp"
#include "ratiolaw/rng.hpp"
#include "test_util.hpp"

using namespace ratiolaw;

using testutil::message_of;

namespace {

Dataset from_labels(const Labels& labels) { return testutil::indexed_dataset(labels); }

}  // namespace

TEST_CASE("dataset rejects invalid contents") {
  CHECK_THROWS_AS(Dataset(Matrix({1.0, 2.0}, 1), {0, 2}), DataError);
  CHECK_THROWS_AS(Dataset(Matrix({1.0, NAN}, 1), {0, 1}), DataError);
  CHECK_THROWS_AS(Dataset(Matrix({1.0, 2.0}, 1), {0}), DataError);
  CHECK_THROWS_AS(Dataset(Matrix(), {}), DataError);
}

TEST_CASE("class_counts tallies labels") {
  CHECK(class_counts(from_labels({1, 0, 0, 0})) == ClassCounts{3, 1});
  CHECK(class_counts(from_labels({1, 1, 0, 0})) == ClassCounts{2, 2});
  CHECK(class_counts(from_labels({0, 0, 0})) == ClassCounts{3, 0});
}

TEST_CASE("imbalance_ratio") {
  CHECK(imbalance_ratio({900, 100}) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(imbalance_ratio({500, 500}) == 1.0);
  CHECK(message_of([] { imbalance_ratio({10, 0}); }) == "degenerate class distribution");
  CHECK(message_of([] { imbalance_ratio({3, 5}); }) == "minority label convention violated");
}

TEST_CASE("synthetic generator realises the rounded class split") {
  CHECK(synthetic_counts({1000, 2, 0.25, 1.0, 0}) == ClassCounts{800, 200});
  CHECK(synthetic_counts({1000, 2, 1.0, 1.0, 0}) == ClassCounts{500, 500});
  // n r / (1 + r) = 2.5 and 3.5: ties round to even.
  CHECK(synthetic_counts({5, 1, 1.0, 0.0, 0}).n_minority == 2);
  CHECK(synthetic_counts({7, 1, 1.0, 0.0, 0}).n_minority == 4);
  CHECK(message_of([] { synthetic_counts({10, 1, 0.01, 1.0, 0}); }) == "ratio unrealizable at this n");
  CHECK_THROWS_AS(synthetic_counts({10, 1, 0.0, 1.0, 0}), ConfigError);
  CHECK_THROWS_AS(synthetic_counts({10, 1, 1.5, 1.0, 0}), ConfigError);

  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorConfig config{50 + rng.below(2000), 1 + rng.below(3), rng.uniform(0.02, 1.0), 1.0, rng.next()};
    ClassCounts expected;
    try {
      expected = synthetic_counts(config);
    } catch (const DataError&) {
      continue;
    }
    const Dataset data = generate_synthetic(config);
    CHECK(class_counts(data) == expected);
    CHECK(data.dim() == config.dim);
  }
}

TEST_CASE("synthetic generator is a pure function of its config") {
  const GeneratorConfig config{500, 3, 0.2, 1.5, 99};
  CHECK(generate_synthetic(config) == generate_synthetic(config));
  GeneratorConfig other = config;
  other.seed = 100;
  CHECK_FALSE(generate_synthetic(config) == generate_synthetic(other));
}

TEST_CASE("synthetic classes follow the separation") {
  const Dataset data = generate_synthetic({20000, 2, 1.0, 2.0, 3});
  double sum[2] = {0, 0};
  double cnt[2] = {0, 0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    sum[data.label(i)] += data.row(i)[0];
    cnt[data.label(i)] += 1;
  }
  CHECK(sum[1] / cnt[1] - sum[0] / cnt[0] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("zero separation leaves a trained model at chance") {
  const Dataset data = generate_synthetic({20000, 2, 1.0, 0.0, 11});
  const auto model = fit_logistic(data, {0.5, 100, 0.0, 0});
  const Dataset fresh = generate_synthetic({20000, 2, 1.0, 0.0, 12});
  const auto scores = model->predict_proba(fresh.features());
  CHECK(std::abs(auroc(scores, fresh.labels()) - 0.5) < 0.02);
}

TEST_CASE("stratified_kfold") {
  SUBCASE("10 positives and 90 negatives split evenly") {
    Labels labels(100, 0);
    for (int i = 0; i < 10; ++i) labels[static_cast<std::size_t>(i * 7)] = 1;
    const auto folds = stratified_kfold(from_labels(labels), 10, 5);
    for (std::size_t f = 0; f < 10; ++f) {
      const auto members = folds.members(f);
      std::size_t pos = 0;
      for (auto i : members) pos += labels[i];
      CHECK(pos == 1);
      CHECK(members.size() == 10);
    }
  }
  SUBCASE("k = 2 on a tiny balanced set") {
    const Labels labels{1, 1, 0, 0};
    const auto folds = stratified_kfold(from_labels(labels), 2, 0);
    for (std::size_t f = 0; f < 2; ++f) {
      const auto members = folds.members(f);
      REQUIRE(members.size() == 2);
      CHECK(labels[members[0]] + labels[members[1]] == 1);
    }
  }
  SUBCASE("too few minority samples") {
    Labels labels(50, 0);
    for (std::size_t i = 0; i < 5; ++i) labels[i] = 1;
    CHECK(message_of([&] { stratified_kfold(from_labels(labels), 10, 0); }) ==
          "insufficient samples for stratified folds");
  }
}

TEST_CASE("stratified_kfold invariants on random label sets") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.below(9);
    const std::size_t n_pos = k + rng.below(40);
    const std::size_t n_neg = n_pos + (trial % 4 == 0 ? 0 : rng.below(300));
    Labels labels(n_pos + n_neg, 0);
    std::fill_n(labels.begin(), n_pos, 1);
    rng.shuffle(std::span<int>(labels));
    const auto data = from_labels(labels);
    const std::uint64_t seed = rng.next();
    const auto folds = stratified_kfold(data, k, seed);
    CHECK(folds.fold_index == stratified_kfold(data, k, seed).fold_index);

    const double global = static_cast<double>(n_pos) / static_cast<double>(labels.size());
    std::size_t covered = 0;
    std::size_t smallest = labels.size(), largest = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const auto members = folds.members(f);
      REQUIRE_FALSE(members.empty());
      covered += members.size();
      smallest = std::min(smallest, members.size());
      largest = std::max(largest, members.size());
      std::size_t pos = 0;
      for (auto i : members) pos += labels[i];
      const double frac = static_cast<double>(pos) / static_cast<double>(members.size());
      CHECK(std::abs(frac - global) < 1.0 / static_cast<double>(members.size()));
      // the training side keeps minority <= majority, even when the classes are balanced
      CHECK(n_pos - pos <= n_neg - (members.size() - pos));
    }
    CHECK(covered == labels.size());
    CHECK(largest - smallest <= 2);
  }
}

TEST_CASE("csv round trip is exact") {
  const Dataset data(Matrix({0.1, -2.5e-300, 1.0 / 3.0, 12345.678901234567, -0.0, 6.02214076e23}, 2), {1, 0, 0});
  std::stringstream ss;
  write_csv(data, ss);
  CHECK(read_csv(ss) == data);

  const Dataset generated = generate_synthetic({200, 4, 0.3, 1.0, 8});
  std::stringstream ss2;
  write_csv(generated, ss2);
  CHECK(read_csv(ss2) == generated);
}

TEST_CASE("csv errors name the problem") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return message_of([&] { read_csv(in, "t.csv"); });
  };
  CHECK(parse("a,b\n1,2\n").find("missing `label` column") != std::string::npos);
  CHECK(parse("a,label\n1,2\n").find("label outside {0,1}") != std::string::npos);
  const auto bad = parse("a,b,label\n1,2,0\n3,abc,1\n");
  CHECK(bad.find("non-numeric feature cell") != std::string::npos);
  CHECK(bad.find("row 1") != std::string::npos);
  CHECK(bad.find("'b'") != std::string::npos);
  // label may sit in any column
  std::istringstream in("label,x\n1,0.5\n0,1.5\n");
  const Dataset d = read_csv(in);
  CHECK(d.labels() == Labels{1, 0});
  CHECK(d.row(1)[0] == 1.5);
}
