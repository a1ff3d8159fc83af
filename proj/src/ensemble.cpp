#include "ratiolaw/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ratiolaw/error.hpp"
#include "ratiolaw/rng.hpp"

namespace ratiolaw {

VoteSpec VoteSpec::parse(const std::string& text) {
  VoteSpec spec;
  std::string body = text;
  const std::string suffix = "+votes";
  if (body.size() > suffix.size() && body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
    spec.score = ScoreSource::kVoteFraction;
    body.resize(body.size() - suffix.size());
  }
  const auto colon = body.find(':');
  const std::string family = body.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : body.substr(colon + 1);
  if (family == "hard") {
    spec.family = VoteFamily::kHard;
    if (arg.empty() || arg == "adaptive") return spec;
    try {
      std::size_t used = 0;
      const double q = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("vote threshold outside [0, 1]: " + arg);
      spec.hard_threshold = q;
    } catch (const std::invalid_argument&) {
      throw ConfigError("invalid hard vote threshold: '" + arg + "'");
    }
    return spec;
  }
  if (family == "soft") {
    spec.family = VoteFamily::kSoft;
    if (arg.empty() || arg == "mean") {
      spec.soft_combine = SoftCombine::kMean;
    } else if (arg == "max") {
      spec.soft_combine = SoftCombine::kMax;
    } else {
      throw ConfigError("soft vote combine must be mean or max, got '" + arg + "'");
    }
    return spec;
  }
  throw ConfigError("unknown vote spec '" + text + "'");
}

std::string VoteSpec::to_string() const {
  std::string out;
  if (family == VoteFamily::kHard) {
    out = hard_threshold ? "hard:" + format_double(*hard_threshold) : "hard:adaptive";
  } else {
    out = soft_combine == SoftCombine::kMean ? "soft:mean" : "soft:max";
  }
  if (score == ScoreSource::kVoteFraction) out += "+votes";
  return out;
}

double adaptive_threshold(const ClassCounts& counts) {
  require_nondegenerate(counts);
  return 1.0 - static_cast<double>(counts.n_minority) / static_cast<double>(counts.total());
}

namespace {

template <typename Row>
std::size_t checked_width(const std::vector<Row>& matrix) {
  if (matrix.empty()) throw ConfigError("empty base classifier set");
  const std::size_t n = matrix.front().size();
  for (const auto& row : matrix) {
    if (row.size() != n) throw DataError("base predictions differ in length");
  }
  return n;
}

}  // namespace

std::vector<double> vote_fraction(const VoteMatrix& base_labels) {
  const std::size_t n = checked_width(base_labels);
  std::vector<double> out(n, 0.0);
  for (const auto& row : base_labels) {
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] != 0 && row[i] != 1) throw DataError("base vote outside {0,1}");
      out[i] += row[i];
    }
  }
  const double k = static_cast<double>(base_labels.size());
  for (auto& v : out) v /= k;
  return out;
}

Labels hard_vote(const VoteMatrix& base_labels, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("vote threshold outside [0, 1]");
  const auto fraction = vote_fraction(base_labels);
  // Integer vote counts against the required count, so that 9 of 10 meets
  // 0.9 however 9/10 and 0.9 * 10 happen to round.
  const std::size_t required = votes_required(base_labels.size(), threshold);
  const double k = static_cast<double>(base_labels.size());
  Labels out(fraction.size());
  for (std::size_t i = 0; i < fraction.size(); ++i) {
    const auto votes = static_cast<std::size_t>(std::llround(fraction[i] * k));
    out[i] = votes >= required ? 1 : 0;
  }
  return out;
}

std::vector<double> soft_vote(const ProbMatrix& base_probs, SoftCombine combine) {
  const std::size_t n = checked_width(base_probs);
  std::vector<double> out(n, combine == SoftCombine::kMean ? 0.0 : -1.0);
  for (const auto& row : base_probs) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(row[i] >= 0.0 && row[i] <= 1.0)) throw NumericError("base probability outside [0, 1]");
      out[i] = combine == SoftCombine::kMean ? out[i] + row[i] : std::max(out[i], row[i]);
    }
  }
  if (combine == SoftCombine::kMean) {
    const double k = static_cast<double>(base_probs.size());
    for (auto& v : out) v /= k;
  }
  return out;
}

std::size_t votes_required(std::size_t k, double threshold) {
  const double kd = static_cast<double>(k);
  return static_cast<std::size_t>(std::ceil(threshold * kd - 1e-12 * kd));
}

namespace {

double effective_threshold(const VoteSpec& vote, const ClassCounts& counts) {
  return vote.hard_threshold ? *vote.hard_threshold : adaptive_threshold(counts);
}

}  // namespace

EnsemblePrediction combine_votes(const ProbMatrix& base_probs, const VoteMatrix& base_labels, const VoteSpec& vote,
                                 const ClassCounts& train_counts) {
  EnsemblePrediction out;
  out.vote_fraction = vote_fraction(base_labels);
  out.soft_mean = soft_vote(base_probs, SoftCombine::kMean);
  out.soft_max = soft_vote(base_probs, SoftCombine::kMax);
  if (out.vote_fraction.size() != out.soft_mean.size()) throw DataError("base labels and probabilities differ in length");

  const auto& soft = vote.soft_combine == SoftCombine::kMean ? out.soft_mean : out.soft_max;
  if (vote.family == VoteFamily::kHard) {
    out.final_label = hard_vote(base_labels, effective_threshold(vote, train_counts));
  } else {
    out.final_label = predict_labels(soft, 0.5);
  }
  out.score = vote.score == ScoreSource::kVoteFraction ? out.vote_fraction : soft;
  return out;
}

EnsemblePrediction combine_votes(const ProbMatrix& base_probs, const VoteSpec& vote, const ClassCounts& train_counts) {
  VoteMatrix labels;
  labels.reserve(base_probs.size());
  for (const auto& row : base_probs) labels.push_back(predict_labels(row, 0.5));
  return combine_votes(base_probs, labels, vote, train_counts);
}

EnsembleModel::EnsembleModel(std::vector<LogisticRegression> bases, VoteSpec vote, ClassCounts train_counts)
    : bases_(std::move(bases)), vote_(vote), train_counts_(train_counts) {
  if (bases_.empty()) throw ConfigError("empty base classifier set");
  if (vote_.hard_threshold && !(*vote_.hard_threshold >= 0.0 && *vote_.hard_threshold <= 1.0)) {
    throw ConfigError("vote threshold outside [0, 1]");
  }
}

double EnsembleModel::threshold() const { return effective_threshold(vote_, train_counts_); }

ProbMatrix EnsembleModel::base_probabilities(const Matrix& features) const {
  ProbMatrix probs;
  probs.reserve(bases_.size());
  for (const auto& base : bases_) probs.push_back(base.predict_proba(features));
  return probs;
}

EnsemblePrediction EnsembleModel::predict(const Matrix& features) const {
  return combine_votes(base_probabilities(features), vote_, train_counts_);
}

EnsembleModel train_ensemble(const Dataset& dataset, const SubsetPlan& plan, const LogisticConfig& base_config,
                             const VoteSpec& vote) {
  if (plan.subsets.empty()) throw ConfigError("subset plan is empty");
  std::vector<LogisticRegression> bases;
  bases.reserve(plan.size());
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto rows = plan.training_rows(k);
    for (std::size_t idx : rows) {
      if (idx >= dataset.size()) throw DataError("subset plan index " + std::to_string(idx) + " out of range");
    }
    LogisticConfig config = base_config;
    config.seed = derive_seed(base_config.seed, {k});
    LogisticRegression base(config);
    base.fit(dataset.select(rows));
    bases.push_back(std::move(base));
  }
  return EnsembleModel(std::move(bases), vote, class_counts(dataset));
}

void write_predictions_csv(const EnsemblePrediction& prediction, std::ostream& out) {
  out << "sample_id,base_vote_fraction,soft_mean,soft_max,final_label\n";
  for (std::size_t i = 0; i < prediction.final_label.size(); ++i) {
    out << i << ',' << format_double(prediction.vote_fraction[i]) << ',' << format_double(prediction.soft_mean[i])
        << ',' << format_double(prediction.soft_max[i]) << ',' << prediction.final_label[i] << '\n';
  }
}

}  // namespace ratiolaw
