#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratiolaw/balancing.hpp"
#include "ratiolaw/classifiers.hpp"
#include "ratiolaw/dataset.hpp"

namespace ratiolaw {

enum class VoteFamily { kHard, kSoft };
enum class SoftCombine { kMean, kMax };
// Which ensemble output feeds the ranking metrics.
enum class ScoreSource { kSoft, kVoteFraction };

struct VoteSpec {
  VoteFamily family = VoteFamily::kHard;
  // Fixed hard-vote cutoff q in [0, 1]; nullopt selects the adaptive threshold.
  std::optional<double> hard_threshold;
  SoftCombine soft_combine = SoftCombine::kMean;
  ScoreSource score = ScoreSource::kSoft;

  // "hard:adaptive", "hard:0.9", "soft:mean", "soft:max", optionally
  // suffixed with "+votes" to rank by vote fraction instead of soft score.
  static VoteSpec parse(const std::string& text);
  std::string to_string() const;
};

// Per-row base outputs: outer index is the base model, inner the sample.
using VoteMatrix = std::vector<Labels>;
using ProbMatrix = std::vector<std::vector<double>>;

// N0 / (N0 + N1).
double adaptive_threshold(const ClassCounts& counts);

// 1 iff the fraction of positive votes is >= threshold.
Labels hard_vote(const VoteMatrix& base_labels, double threshold);
std::vector<double> vote_fraction(const VoteMatrix& base_labels);
std::vector<double> soft_vote(const ProbMatrix& base_probs, SoftCombine combine);

struct EnsemblePrediction {
  std::vector<double> vote_fraction;
  std::vector<double> soft_mean;
  std::vector<double> soft_max;
  Labels final_label;
  // Ranking score selected by VoteSpec::score.
  std::vector<double> score;
};

// Combines already-computed base outputs under a vote spec.
// Base labels are the base probabilities thresholded at 0.5.
EnsemblePrediction combine_votes(const ProbMatrix& base_probs, const VoteSpec& vote, const ClassCounts& train_counts);
// Variant for bases that emit their own labels (dummy baselines).
EnsemblePrediction combine_votes(const ProbMatrix& base_probs, const VoteMatrix& base_labels, const VoteSpec& vote,
                                 const ClassCounts& train_counts);

// Number of bases that must agree under the adaptive threshold; the CLI
// warns when this is all of them.
std::size_t votes_required(std::size_t k, double threshold);

class EnsembleModel {
 public:
  EnsembleModel(std::vector<LogisticRegression> bases, VoteSpec vote, ClassCounts train_counts);

  std::size_t size() const { return bases_.size(); }
  const std::vector<LogisticRegression>& bases() const { return bases_; }
  const VoteSpec& vote() const { return vote_; }
  const ClassCounts& train_counts() const { return train_counts_; }
  // The hard-vote cutoff in effect (fixed q or adaptive).
  double threshold() const;

  ProbMatrix base_probabilities(const Matrix& features) const;
  EnsemblePrediction predict(const Matrix& features) const;

 private:
  std::vector<LogisticRegression> bases_;
  VoteSpec vote_;
  ClassCounts train_counts_;
};

// Base k is fit on plan.training_rows(k) with seed derive_seed(base.seed, {k}).
EnsembleModel train_ensemble(const Dataset& dataset, const SubsetPlan& plan, const LogisticConfig& base_config,
                             const VoteSpec& vote);

// CSV: sample_id,base_vote_fraction,soft_mean,soft_max,final_label
void write_predictions_csv(const EnsemblePrediction& prediction, std::ostream& out);

}  // namespace ratiolaw
