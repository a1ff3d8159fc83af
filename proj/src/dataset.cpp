#include "ratiolaw/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ratiolaw/error.hpp"
#include "ratiolaw/rng.hpp"

namespace ratiolaw {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : values_(rows * cols, 0.0), rows_(rows), cols_(cols) {}

Matrix::Matrix(std::vector<double> values, std::size_t cols) : values_(std::move(values)), cols_(cols) {
  if (cols_ == 0) throw DataError("matrix must have at least one column");
  if (values_.size() % cols_ != 0) throw DataError("matrix value count is not a multiple of the column count");
  rows_ = values_.size() / cols_;
}

Dataset::Dataset(Matrix features, Labels labels) : features_(std::move(features)), labels_(std::move(labels)) {
  if (labels_.empty()) throw DataError("dataset must contain at least one row");
  if (features_.cols() == 0) throw DataError("dataset must contain at least one feature column");
  if (features_.rows() != labels_.size()) {
    throw DataError("feature row count " + std::to_string(features_.rows()) + " does not match label count " +
                    std::to_string(labels_.size()));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 0 && labels_[i] != 1) {
      throw DataError("label outside {0,1} at row " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < features_.values().size(); ++i) {
    if (!std::isfinite(features_.values()[i])) {
      throw DataError("non-finite feature value at row " + std::to_string(i / features_.cols()) + ", column " +
                      std::to_string(i % features_.cols()));
    }
  }
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * dim());
  Labels labels;
  labels.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx >= size()) throw DataError("row index " + std::to_string(idx) + " out of range");
    const auto r = row(idx);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[idx]);
  }
  return Dataset(Matrix(std::move(values), dim()), std::move(labels));
}

ClassCounts class_counts(std::span<const int> labels) {
  ClassCounts counts;
  for (int y : labels) {
    if (y == 1) {
      ++counts.n_minority;
    } else {
      ++counts.n_majority;
    }
  }
  return counts;
}

void require_nondegenerate(const ClassCounts& counts) {
  if (counts.n_majority == 0 || counts.n_minority == 0) throw DataError("degenerate class distribution");
  if (counts.n_minority > counts.n_majority) throw DataError("minority label convention violated");
}

double imbalance_ratio(const ClassCounts& counts) {
  require_nondegenerate(counts);
  return static_cast<double>(counts.n_minority) / static_cast<double>(counts.n_majority);
}

std::vector<std::size_t> indices_of(const Dataset& dataset, int label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.label(i) == label) out.push_back(i);
  }
  return out;
}

ClassCounts synthetic_counts(const GeneratorConfig& config) {
  if (config.n_total == 0) throw ConfigError("n_total must be positive");
  if (config.dim == 0) throw ConfigError("dim must be positive");
  if (!(config.ratio > 0.0 && config.ratio <= 1.0)) throw ConfigError("ratio must lie in (0, 1]");
  if (!(config.separation >= 0.0) || !std::isfinite(config.separation)) {
    throw ConfigError("separation must be a finite nonnegative real");
  }
  const double target = static_cast<double>(config.n_total) * config.ratio / (1.0 + config.ratio);
  // nearbyint honours the default FE_TONEAREST mode: round half to even.
  const auto minority = static_cast<std::size_t>(std::nearbyint(target));
  ClassCounts counts{config.n_total - std::min(minority, config.n_total), minority};
  if (counts.n_minority == 0 || counts.n_majority == 0) throw DataError("ratio unrealizable at this n");
  return counts;
}

Dataset generate_synthetic(const GeneratorConfig& config) {
  const ClassCounts counts = synthetic_counts(config);
  Labels labels(config.n_total, 0);
  std::fill_n(labels.begin(), counts.n_minority, 1);
  Rng order_rng(derive_seed(config.seed, {1}));
  order_rng.shuffle(std::span<int>(labels));

  Rng feature_rng(derive_seed(config.seed, {2}));
  Matrix features(config.n_total, config.dim);
  const double half = 0.5 * config.separation;
  for (std::size_t i = 0; i < config.n_total; ++i) {
    auto r = features.row(i);
    for (auto& v : r) v = feature_rng.normal();
    r[0] += labels[i] == 1 ? half : -half;
  }
  return Dataset(std::move(features), std::move(labels));
}

std::vector<std::size_t> FoldAssignment::members(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_index.size(); ++i) {
    if (fold_index[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::complement(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_index.size(); ++i) {
    if (fold_index[i] != fold) out.push_back(i);
  }
  return out;
}

FoldAssignment stratified_kfold(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("stratified folds need k >= 2");
  auto minority = indices_of(dataset, 1);
  auto majority = indices_of(dataset, 0);
  if (minority.size() < k || majority.size() < k) throw DataError("insufficient samples for stratified folds");

  Rng rng(derive_seed(seed, {0x5f01d}));
  rng.shuffle(std::span<std::size_t>(minority));
  rng.shuffle(std::span<std::size_t>(majority));

  FoldAssignment folds;
  folds.k = k;
  folds.fold_index.assign(dataset.size(), 0);
  // Both classes are dealt from fold 0. The leftover rows then land in the same low folds,
  // so no training split ends up with more minority than majority rows (r = 1 included).
  for (std::size_t j = 0; j < minority.size(); ++j) folds.fold_index[minority[j]] = j % k;
  for (std::size_t j = 0; j < majority.size(); ++j) folds.fold_index[majority[j]] = j % k;
  return folds;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& text, double& value) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto result = std::from_chars(first, last, value);
  return result.ec == std::errc() && result.ptr == last;
}

}  // namespace

Dataset read_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty file, expected a header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_commas(line);
  const auto label_it = std::find(header.begin(), header.end(), "label");
  if (label_it == header.end()) throw DataError(source + ": missing `label` column");
  const auto label_col = static_cast<std::size_t>(label_it - header.begin());
  if (header.size() < 2) throw DataError(source + ": no feature columns");

  std::vector<double> values;
  Labels labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw DataError(source + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                      " cells, header has " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (c == label_col) {
        if (!parse_double(cells[c], v) || (v != 0.0 && v != 1.0)) {
          throw DataError(source + ": label outside {0,1} at row " + std::to_string(row) + ": '" + cells[c] + "'");
        }
        labels.push_back(static_cast<int>(v));
        continue;
      }
      if (!parse_double(cells[c], v) || !std::isfinite(v)) {
        throw DataError(source + ": non-numeric feature cell at row " + std::to_string(row) + ", column '" +
                        header[c] + "': '" + cells[c] + "'");
      }
      values.push_back(v);
    }
    ++row;
  }
  if (labels.empty()) throw DataError(source + ": no data rows");
  return Dataset(Matrix(std::move(values), header.size() - 1), std::move(labels));
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_csv(in, path.string());
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);  // shortest form that reads back exactly
  return std::string(buf, result.ptr);
}

void write_csv(const Dataset& dataset, std::ostream& out) {
  for (std::size_t j = 0; j < dataset.dim(); ++j) out << 'f' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (double v : dataset.row(i)) out << format_double(v) << ',';
    out << dataset.label(i) << '\n';
  }
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_csv(dataset, out);
}

}  // namespace ratiolaw
