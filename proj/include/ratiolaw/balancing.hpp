#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ratiolaw/dataset.hpp"

namespace ratiolaw {

// A rebalanced dataset plus, for every output row, the source row it was
// copied from. Synthetic rows carry kSyntheticOrigin.
struct Resampled {
  static constexpr std::size_t kSyntheticOrigin = static_cast<std::size_t>(-1);

  Dataset data;
  std::vector<std::size_t> origin;
};

// All minority rows plus N1 majority rows drawn without replacement.
// Output rows keep their original relative order.
Resampled undersample(const Dataset& dataset, std::uint64_t seed);

// All original rows followed by N0 - N1 exact minority copies. Copies cycle
// through a seeded shuffle of the minority rows.
Resampled oversample(const Dataset& dataset, std::uint64_t seed);

struct SmoteConfig {
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 0;
};

struct SmoteProvenance {
  std::size_t synthetic_row;  // row in the output dataset
  std::size_t parent_i;       // source row of x_i
  std::size_t parent_k;       // source row of the chosen neighbour
  double lambda;
};

struct SmoteResult {
  Resampled resampled;
  std::vector<SmoteProvenance> provenance;
  std::size_t k_used = 0;
  std::vector<std::string> warnings;
};

// x + lambda * (neighbor - x), coordinate-wise.
std::vector<double> smote_interpolate(std::span<const double> x, std::span<const double> neighbor, double lambda);

// k nearest minority neighbours of each minority row (Euclidean, self
// excluded, ties to the lower row index). Returned as source row indices.
std::vector<std::vector<std::size_t>> minority_neighbors(const Dataset& dataset, std::span<const std::size_t> minority,
                                                         std::size_t k);

SmoteResult smote(const Dataset& dataset, const SmoteConfig& config);

enum class SamplingMode { kWithoutReplacement, kWithReplacement };

inline constexpr double kDefaultTheta = 0.05;

// Without replacement: ceil(N0 / N1). With replacement: the smallest K with
// (1 - N1/N0)^K < theta, or 1 when the classes are already balanced.
std::size_t num_base_classifiers(const ClassCounts& counts, SamplingMode mode, double theta = kDefaultTheta);

struct SubsetPlan {
  SamplingMode mode = SamplingMode::kWithoutReplacement;
  double theta = kDefaultTheta;
  std::vector<std::size_t> minority;              // every minority row, ascending
  std::vector<std::vector<std::size_t>> subsets;  // majority rows per base learner

  std::size_t size() const { return subsets.size(); }
  // Minority rows followed by subset k's majority rows.
  std::vector<std::size_t> training_rows(std::size_t k) const;
};

// With replacement, each subset is N1 distinct majority rows drawn afresh, so
// rows may recur across subsets but not within one.
// Without replacement, the majority rows are shuffled and cut into K chunks
// of N1; when N1 does not divide N0 the final chunk is topped up with rows
// drawn without replacement from those already used.
SubsetPlan plan_balanced_subsets(const Dataset& dataset, SamplingMode mode, double theta, std::uint64_t seed);

// CSV: subset_id,majority_row_index
void write_plan_csv(const SubsetPlan& plan, std::ostream& out);
// CSV: synthetic_row,parent_i,parent_k,lambda
void write_provenance_csv(std::span<const SmoteProvenance> provenance, std::ostream& out);

}  // namespace ratiolaw
