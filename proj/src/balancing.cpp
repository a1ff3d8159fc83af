#include "ratiolaw/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ratiolaw/error.hpp"
#include "ratiolaw/rng.hpp"

namespace ratiolaw {

namespace {

Resampled gather(const Dataset& dataset, std::vector<std::size_t> rows) {
  Dataset data = dataset.select(rows);
  return Resampled{std::move(data), std::move(rows)};
}

}  // namespace

Resampled undersample(const Dataset& dataset, std::uint64_t seed) {
  const ClassCounts counts = class_counts(dataset);
  require_nondegenerate(counts);
  auto majority = indices_of(dataset, 0);
  Rng rng(derive_seed(seed, {0x0d5a}));
  rng.shuffle(std::span<std::size_t>(majority));
  majority.resize(counts.n_minority);

  std::vector<char> keep(dataset.size(), 0);
  for (std::size_t i : majority) keep[i] = 1;
  std::vector<std::size_t> rows;
  rows.reserve(2 * counts.n_minority);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.label(i) == 1 || keep[i]) rows.push_back(i);
  }
  return gather(dataset, std::move(rows));
}

Resampled oversample(const Dataset& dataset, std::uint64_t seed) {
  const ClassCounts counts = class_counts(dataset);
  require_nondegenerate(counts);
  auto minority = indices_of(dataset, 1);
  Rng rng(derive_seed(seed, {0x0e5a}));
  rng.shuffle(std::span<std::size_t>(minority));

  std::vector<std::size_t> rows(dataset.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  const std::size_t extra = counts.n_majority - counts.n_minority;
  for (std::size_t j = 0; j < extra; ++j) rows.push_back(minority[j % minority.size()]);
  return gather(dataset, std::move(rows));
}

std::vector<double> smote_interpolate(std::span<const double> x, std::span<const double> neighbor, double lambda) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + lambda * (neighbor[j] - x[j]);
  return out;
}

std::vector<std::vector<std::size_t>> minority_neighbors(const Dataset& dataset, std::span<const std::size_t> minority,
                                                         std::size_t k) {
  std::vector<std::vector<std::size_t>> out(minority.size());
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t a = 0; a < minority.size(); ++a) {
    dist.clear();
    const auto xa = dataset.row(minority[a]);
    for (std::size_t b = 0; b < minority.size(); ++b) {
      if (a == b) continue;
      const auto xb = dataset.row(minority[b]);
      double d2 = 0.0;
      for (std::size_t j = 0; j < xa.size(); ++j) d2 += (xa[j] - xb[j]) * (xa[j] - xb[j]);
      dist.emplace_back(d2, minority[b]);
    }
    const std::size_t take = std::min(k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());
    for (std::size_t t = 0; t < take; ++t) out[a].push_back(dist[t].second);
  }
  return out;
}

SmoteResult smote(const Dataset& dataset, const SmoteConfig& config) {
  if (config.k_neighbors < 1) throw ConfigError("SMOTE k_neighbors must be >= 1");
  const ClassCounts counts = class_counts(dataset);
  if (counts.n_minority < 2) throw DataError("SMOTE requires >= 2 minority samples");
  require_nondegenerate(counts);

  SmoteResult result{Resampled{dataset, {}}, {}, config.k_neighbors, {}};
  if (counts.n_minority - 1 < config.k_neighbors) {
    result.k_used = counts.n_minority - 1;
    result.warnings.push_back("SMOTE k_neighbors clamped from " + std::to_string(config.k_neighbors) + " to " +
                              std::to_string(result.k_used));
  }

  const auto minority = indices_of(dataset, 1);
  const auto neighbors = minority_neighbors(dataset, minority, result.k_used);
  const std::size_t n_synthetic = counts.n_majority - counts.n_minority;

  Rng rng(derive_seed(config.seed, {0x5307e}));
  std::vector<double> values = dataset.features().values();
  values.reserve(values.size() + n_synthetic * dataset.dim());
  Labels labels = dataset.labels();
  std::vector<std::size_t> origin(dataset.size());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;

  result.provenance.reserve(n_synthetic);
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const std::size_t a = static_cast<std::size_t>(rng.below(minority.size()));
    const auto& nbrs = neighbors[a];
    const std::size_t nb = nbrs[static_cast<std::size_t>(rng.below(nbrs.size()))];
    const double lambda = rng.uniform();
    const auto synthetic = smote_interpolate(dataset.row(minority[a]), dataset.row(nb), lambda);
    values.insert(values.end(), synthetic.begin(), synthetic.end());
    labels.push_back(1);
    origin.push_back(Resampled::kSyntheticOrigin);
    result.provenance.push_back({labels.size() - 1, minority[a], nb, lambda});
  }
  result.resampled = Resampled{Dataset(Matrix(std::move(values), dataset.dim()), std::move(labels)), std::move(origin)};
  return result;
}

std::size_t num_base_classifiers(const ClassCounts& counts, SamplingMode mode, double theta) {
  require_nondegenerate(counts);
  if (mode == SamplingMode::kWithoutReplacement) {
    return (counts.n_majority + counts.n_minority - 1) / counts.n_minority;
  }
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (counts.n_minority == counts.n_majority) return 1;

  const double miss = 1.0 - static_cast<double>(counts.n_minority) / static_cast<double>(counts.n_majority);
  // Start just below the analytic root and step up; pow() decides the boundary.
  auto k = static_cast<std::size_t>(std::max(1.0, std::floor(std::log(theta) / std::log(miss)) - 1.0));
  while (k > 1 && !(std::pow(miss, static_cast<double>(k - 1)) >= theta)) --k;
  while (!(std::pow(miss, static_cast<double>(k)) < theta)) ++k;
  return k;
}

std::vector<std::size_t> SubsetPlan::training_rows(std::size_t k) const {
  std::vector<std::size_t> rows = minority;
  rows.insert(rows.end(), subsets.at(k).begin(), subsets.at(k).end());
  return rows;
}

SubsetPlan plan_balanced_subsets(const Dataset& dataset, SamplingMode mode, double theta, std::uint64_t seed) {
  const ClassCounts counts = class_counts(dataset);
  const std::size_t k_total = num_base_classifiers(counts, mode, theta);
  const std::size_t n1 = counts.n_minority;

  SubsetPlan plan;
  plan.mode = mode;
  plan.theta = theta;
  plan.minority = indices_of(dataset, 1);
  auto majority = indices_of(dataset, 0);
  Rng rng(derive_seed(seed, {0x9a1, static_cast<std::uint64_t>(mode)}));

  if (mode == SamplingMode::kWithReplacement) {
    // Rows repeat across subsets, never within one: each subset is N1
    // distinct rows, so a row is missed by a subset with probability exactly
    // 1 - N1/N0 and the K rule's omission bound holds.
    for (std::size_t k = 0; k < k_total; ++k) {
      for (std::size_t i = 0; i < n1; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(majority.size() - i));
        std::swap(majority[i], majority[j]);
      }
      plan.subsets.emplace_back(majority.begin(), majority.begin() + static_cast<std::ptrdiff_t>(n1));
    }
    return plan;
  }

  rng.shuffle(std::span<std::size_t>(majority));
  for (std::size_t k = 0; k < k_total; ++k) {
    const std::size_t begin = k * n1;
    const std::size_t end = std::min(begin + n1, majority.size());
    std::vector<std::size_t> subset(majority.begin() + static_cast<std::ptrdiff_t>(begin),
                                    majority.begin() + static_cast<std::ptrdiff_t>(end));
    if (subset.size() < n1) {
      // Top-up from rows already used by earlier subsets.
      std::vector<std::size_t> used(majority.begin(), majority.begin() + static_cast<std::ptrdiff_t>(begin));
      rng.shuffle(std::span<std::size_t>(used));
      subset.insert(subset.end(), used.begin(), used.begin() + static_cast<std::ptrdiff_t>(n1 - subset.size()));
    }
    plan.subsets.push_back(std::move(subset));
  }
  return plan;
}

void write_plan_csv(const SubsetPlan& plan, std::ostream& out) {
  out << "subset_id,majority_row_index\n";
  for (std::size_t k = 0; k < plan.subsets.size(); ++k) {
    for (std::size_t idx : plan.subsets[k]) out << k << ',' << idx << '\n';
  }
}

void write_provenance_csv(std::span<const SmoteProvenance> provenance, std::ostream& out) {
  out << "synthetic_row,parent_i,parent_k,lambda\n";
  for (const auto& p : provenance) {
    out << p.synthetic_row << ',' << p.parent_i << ',' << p.parent_k << ',' << format_double(p.lambda) << '\n';
  }
}

}  // namespace ratiolaw
