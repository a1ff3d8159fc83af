#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratiolaw/balancing.hpp"
#include "ratiolaw/classifiers.hpp"
#include "ratiolaw/dataset.hpp"
#include "ratiolaw/ensemble.hpp"
#include "ratiolaw/metrics.hpp"
#include "ratiolaw/stats.hpp"

namespace ratiolaw {

enum class Method { kUnbalanced, kUndersample, kOversample, kSmote, kEnsemble1, kEnsemble2 };
enum class ModelKind { kLogReg, kDummyStratified, kDummyUniform };

std::string to_string(Method method);
std::string to_string(ModelKind model);
Method parse_method(const std::string& text);
ModelKind parse_model(const std::string& text);

struct CvOptions {
  LogisticConfig logistic;
  VoteSpec vote;
  double theta = kDefaultTheta;
  std::size_t smote_k = 5;
};

// What one fold trained on, for leakage checks.
struct FoldTrace {
  std::vector<std::size_t> validation_rows;
  // Source rows (indices into the input dataset) behind every non-synthetic
  // training row, including copies and every ensemble subset.
  std::vector<std::size_t> training_origins;
  std::size_t synthetic_rows = 0;
  std::vector<std::string> warnings;
};

// Stratified k-fold CV: the balancing method is applied to each training
// split only; metrics are computed on the untouched validation split.
std::vector<MetricsReport> cross_validate(const Dataset& dataset, Method method, ModelKind model, std::size_t k,
                                          std::uint64_t seed, const CvOptions& options = {},
                                          std::vector<FoldTrace>* trace = nullptr);

// Same folds and base models, evaluated under several vote specs; result
// [v][fold] belongs to votes[v]. Only meaningful for ensemble methods.
std::vector<std::vector<MetricsReport>> cross_validate_votes(const Dataset& dataset, Method method, ModelKind model,
                                                             std::size_t k, std::uint64_t seed,
                                                             const CvOptions& options,
                                                             std::span<const VoteSpec> votes);

struct ExperimentConfig {
  std::string task;
  std::vector<double> r_grid;
  std::size_t n_total = 5000;
  std::size_t dim = 2;
  double separation = 1.0;
  std::vector<std::uint64_t> seeds{0};
  std::size_t cv_folds = 10;
  std::vector<Method> methods{Method::kUnbalanced};
  std::vector<ModelKind> models{ModelKind::kLogReg};
  VoteSpec vote;
  double theta = kDefaultTheta;
  std::size_t smote_k = 5;
  LogisticConfig logistic;
  // 0 selects std::thread::hardware_concurrency().
  std::size_t threads = 0;
  std::string output_path;

  // Keys accepted by apply(); every one is also a CLI flag.
  static const std::vector<std::string>& keys();
  // Throws ConfigError for an unknown key or a malformed value.
  void apply(const std::string& key, const std::string& value);
  void validate() const;
  CvOptions cv_options() const;
};

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

// "0.1,0.5,1" or "start:stop:step" (inclusive).
std::vector<double> parse_grid(const std::string& text);

struct ResultRow {
  std::string task;
  Method method = Method::kUnbalanced;
  ModelKind model = ModelKind::kLogReg;
  double r = 0.0;
  std::uint64_t seed = 0;
  int fold = 0;  // -1 when the whole method failed for this (r, seed)
  MetricsReport metrics;
  std::string note;
};

inline constexpr const char* kResultHeader =
    "task,method,model,r,seed,fold,accuracy,precision,recall,fpr,f1,auroc,auprc,flagged,note";
void write_results_csv(std::span<const ResultRow> rows, std::ostream& out);

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};

// Synthetic data seed for one (seed, r) cell of an experiment.
std::uint64_t data_seed(std::uint64_t seed, double r);

// For each (method, model, r, seed): generate synthetic data and
// cross-validate. Rows sorted by (model, r, seed, fold, method).
ExperimentOutput run_ratio_sweep(const ExperimentConfig& config);

struct SweepSummary {
  Method method;
  ModelKind model;
  double r;
  std::size_t n;
  MetricsReport mean;
  MetricsReport sd;
};
std::vector<SweepSummary> summarize(std::span<const ResultRow> rows);
void write_summary_csv(std::span<const SweepSummary> summary, std::ostream& out);

struct TTestRow {
  std::string metric;
  Method method_1;
  Method method_2;
  ModelKind model;
  double r;
  std::optional<stats::TestResult> result;  // empty when the test is undefined
  std::string note;
};

inline constexpr const char* kTTestHeader = "comparison,metric,method_1,method_2,model,r,statistic,p_value,df,note";
void write_ttest_csv(std::span<const TTestRow> rows, std::ostream& out);

// Paired t-tests between every method pair on per-seed fold means, for
// AUPRC, F1 and AUROC. Methods with failed rows are reported, not tested.
std::vector<TTestRow> paired_comparisons(std::span<const ResultRow> rows);

struct ComparisonOutput {
  std::vector<ResultRow> rows;
  std::vector<TTestRow> ttests;
  std::vector<std::string> warnings;
};

ComparisonOutput run_balancing_comparison(const ExperimentConfig& config);

// Mean F1 across seeds and folds for each vote spec, using the config's first
// ensemble method (ensemble1 if none is listed), first model and first r.
struct VoteScanRow {
  std::string vote;
  double mean_f1;
  double mean_auprc;
};
std::vector<VoteScanRow> run_vote_scan(const ExperimentConfig& config, std::span<const VoteSpec> votes);

struct CurveRow {
  double r;
  double f1_random;
  double auprc_random;
  double f1_deriv;
  double auprc_deriv;
};

std::vector<CurveRow> tabulate_curves(std::span<const double> r_grid);
void write_curves_csv(std::span<const CurveRow> rows, std::ostream& out);

}  // namespace ratiolaw
