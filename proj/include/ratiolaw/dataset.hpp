#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ratiolaw {

// Dense row-major matrix of finite reals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::vector<double> values, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::vector<double> values_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

// Binary labels: 1 is the minority (positive) class, 0 the majority.
using Labels = std::vector<int>;

class Dataset {
 public:
  // Throws DataError unless features are finite, labels are in {0,1},
  // and there is at least one row and one column.
  Dataset(Matrix features, Labels labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return features_.cols(); }
  const Matrix& features() const { return features_; }
  const Labels& labels() const { return labels_; }
  std::span<const double> row(std::size_t i) const { return features_.row(i); }
  int label(std::size_t i) const { return labels_[i]; }

  // Rows in the given order; indices may repeat.
  Dataset select(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset&) const = default;

 private:
  Matrix features_;
  Labels labels_;
};

struct ClassCounts {
  std::size_t n_majority = 0;
  std::size_t n_minority = 0;

  std::size_t total() const { return n_majority + n_minority; }
  bool operator==(const ClassCounts&) const = default;
};

ClassCounts class_counts(std::span<const int> labels);
inline ClassCounts class_counts(const Dataset& dataset) { return class_counts(dataset.labels()); }

// Throws DataError on an empty class or when the minority outnumbers the majority.
void require_nondegenerate(const ClassCounts& counts);

// N1 / N0 in (0, 1].
double imbalance_ratio(const ClassCounts& counts);

// Indices of rows carrying the given label, ascending.
std::vector<std::size_t> indices_of(const Dataset& dataset, int label);

struct GeneratorConfig {
  std::size_t n_total = 1000;
  std::size_t dim = 2;
  double ratio = 1.0;
  // Distance between the two class means along the first axis.
  double separation = 1.0;
  std::uint64_t seed = 0;
};

// Target class sizes for a config: minority = round_half_even(n * r / (1 + r)).
ClassCounts synthetic_counts(const GeneratorConfig& config);

// Two isotropic unit-variance Gaussians with means at -separation/2 (label 0)
// and +separation/2 (label 1) on axis 0. Row order is a seeded shuffle.
Dataset generate_synthetic(const GeneratorConfig& config);

struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> fold_index;

  std::vector<std::size_t> members(std::size_t fold) const;
  std::vector<std::size_t> complement(std::size_t fold) const;
};

FoldAssignment stratified_kfold(const Dataset& dataset, std::size_t k, std::uint64_t seed);

Dataset load_csv(const std::filesystem::path& path);
Dataset read_csv(std::istream& in, const std::string& source = "<stream>");
void save_csv(const Dataset& dataset, const std::filesystem::path& path);
void write_csv(const Dataset& dataset, std::ostream& out);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace ratiolaw
