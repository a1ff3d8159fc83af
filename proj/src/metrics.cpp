#include "ratiolaw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ratiolaw/dataset.hpp"
#include "ratiolaw/error.hpp"

namespace ratiolaw {

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw DataError("length mismatch: " + std::to_string(y_true.size()) + " labels vs " +
                    std::to_string(y_pred.size()) + " predictions");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) throw DataError("label outside {0,1} at index " + std::to_string(i));
    if (t == 1) {
      p == 1 ? ++c.tp : ++c.fn;
    } else {
      p == 1 ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

PointMetrics point_metrics(double tp, double fp, double fn, double tn) {
  PointMetrics m;
  const double n = tp + fp + fn + tn;
  if (!(n > 0.0)) throw DataError("confusion table is empty");
  m.accuracy = (tp + tn) / n;
  if (tp + fp > 0.0) {
    m.precision = tp / (tp + fp);
  } else {
    m.precision_undefined = true;
  }
  if (tp + fn > 0.0) {
    m.recall = tp / (tp + fn);
  } else {
    m.recall_undefined = true;
  }
  if (fp + tn > 0.0) {
    m.fpr = fp / (fp + tn);
  } else {
    m.fpr_undefined = true;
  }
  if (m.precision + m.recall > 0.0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  // F1 = 2tp / (2tp + fp + fn) is only genuinely undefined with no positives
  // predicted or present; tp = 0 otherwise gives a true zero.
  m.f1_undefined = !(2.0 * tp + fp + fn > 0.0);
  return m;
}

PointMetrics point_metrics(const ConfusionCounts& c) {
  return point_metrics(static_cast<double>(c.tp), static_cast<double>(c.fp), static_cast<double>(c.fn),
                       static_cast<double>(c.tn));
}

namespace {

struct RankedCounts {
  std::vector<std::size_t> order;  // indices by descending score
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

RankedCounts rank_descending(std::span<const double> scores, std::span<const int> labels, const char* metric) {
  if (scores.size() != labels.size()) throw DataError(std::string(metric) + ": score and label lengths differ");
  RankedCounts rc;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!std::isfinite(scores[i])) throw NumericError(std::string(metric) + ": non-finite score");
    if (labels[i] == 1) {
      ++rc.positives;
    } else if (labels[i] == 0) {
      ++rc.negatives;
    } else {
      throw DataError(std::string(metric) + ": label outside {0,1}");
    }
  }
  if (rc.positives == 0 || rc.negatives == 0) throw DataError(std::string(metric) + " undefined: one-class input");
  rc.order.resize(scores.size());
  std::iota(rc.order.begin(), rc.order.end(), 0);
  std::stable_sort(rc.order.begin(), rc.order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return rc;
}

}  // namespace

double auroc(std::span<const double> scores, std::span<const int> labels) {
  const auto rc = rank_descending(scores, labels, "AUROC");
  // Walk tie groups from the top: each positive beats every negative in
  // later groups and ties with the negatives of its own group.
  double wins = 0.0;  // counted in half-units to stay exact
  std::size_t negatives_above = 0;
  std::size_t i = 0;
  while (i < rc.order.size()) {
    std::size_t j = i;
    std::size_t pos = 0;
    std::size_t neg = 0;
    while (j < rc.order.size() && scores[rc.order[j]] == scores[rc.order[i]]) {
      labels[rc.order[j]] == 1 ? ++pos : ++neg;
      ++j;
    }
    wins += 2.0 * static_cast<double>(pos) * static_cast<double>(rc.negatives - negatives_above - neg);
    wins += static_cast<double>(pos) * static_cast<double>(neg);
    negatives_above += neg;
    i = j;
  }
  return wins / (2.0 * static_cast<double>(rc.positives) * static_cast<double>(rc.negatives));
}

double auprc(std::span<const double> scores, std::span<const int> labels) {
  const auto rc = rank_descending(scores, labels, "AUPRC");
  double area = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  std::size_t i = 0;
  while (i < rc.order.size()) {
    std::size_t j = i;
    std::size_t group_tp = 0;
    while (j < rc.order.size() && scores[rc.order[j]] == scores[rc.order[i]]) {
      group_tp += labels[rc.order[j]] == 1 ? 1 : 0;
      ++j;
    }
    tp += group_tp;
    seen += j - i;
    if (group_tp > 0) {
      const double recall_gain = static_cast<double>(group_tp) / static_cast<double>(rc.positives);
      area += recall_gain * static_cast<double>(tp) / static_cast<double>(seen);
    }
    i = j;
  }
  return area;
}

MetricsReport evaluate(std::span<const double> scores, std::span<const int> predicted, std::span<const int> labels) {
  const auto pm = point_metrics(confusion(labels, predicted));
  MetricsReport r;
  r.accuracy = pm.accuracy;
  r.precision = pm.precision;
  r.recall = pm.recall;
  r.fpr = pm.fpr;
  r.f1 = pm.f1;
  r.flagged = pm.precision_undefined || pm.recall_undefined || pm.fpr_undefined || pm.f1_undefined;
  r.auroc = auroc(scores, labels);
  r.auprc = auprc(scores, labels);
  return r;
}

std::string metrics_csv_fields(const MetricsReport& r) {
  std::string out;
  for (double v : {r.accuracy, r.precision, r.recall, r.fpr, r.f1, r.auroc, r.auprc}) {
    out += format_double(v);
    out += ',';
  }
  out += r.flagged ? '1' : '0';
  return out;
}

}  // namespace ratiolaw
