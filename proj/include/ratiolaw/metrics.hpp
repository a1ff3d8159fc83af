#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

namespace ratiolaw {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred);

// Accuracy, precision, recall, FPR and F1 from a confusion table. Zero
// denominators give 0 and set the matching *_undefined flag.
struct PointMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double fpr = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool fpr_undefined = false;
  bool f1_undefined = false;
};

PointMetrics point_metrics(const ConfusionCounts& c);
// Same formulas over real-valued cells (expected fractions, for example).
PointMetrics point_metrics(double tp, double fp, double fn, double tn);

// Mann-Whitney form: P(score_pos > score_neg) with ties counted half.
double auroc(std::span<const double> scores, std::span<const int> labels);

// Average precision: sum over descending distinct score thresholds of
// (recall gain) * (precision at that threshold). Tied scores form one step.
double auprc(std::span<const double> scores, std::span<const int> labels);

struct MetricsReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double fpr = 0.0;
  double f1 = 0.0;
  double auroc = 0.0;
  double auprc = 0.0;
  // Set when any zero-division convention applied.
  bool flagged = false;
};

MetricsReport evaluate(std::span<const double> scores, std::span<const int> predicted, std::span<const int> labels);

// Column order used by every CSV that embeds a report.
inline constexpr const char* kMetricsHeader = "accuracy,precision,recall,fpr,f1,auroc,auprc,flagged";
std::string metrics_csv_fields(const MetricsReport& report);

}  // namespace ratiolaw
