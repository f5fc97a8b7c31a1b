#pragma once

// Exact linear algebra over a Field: dense vectors/matrices for small systems,
// sparse vectors and an incremental echelon form for the larger ones.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quadcomp/scalars.hpp"

namespace quadcomp {

using Vec = std::vector<Scalar>;

Vec zero_vec(FieldRef f, std::size_t n);
Vec unit_vec(FieldRef f, std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& v);
bool is_zero(const Vec& v);
Scalar dot(const Vec& a, const Vec& b);

class Mat {
 public:
  Mat() = default;
  Mat(FieldRef f, std::size_t rows, std::size_t cols);
  static Mat identity(FieldRef f, std::size_t n);
  static Mat from_columns(FieldRef f, std::size_t rows, const std::vector<Vec>& cols);
  static Mat from_rows(FieldRef f, std::size_t cols, const std::vector<Vec>& rows);

  FieldRef field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  bool operator==(const Mat& o) const;

 private:
  FieldRef f_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

struct Rref {
  Mat r;
  std::vector<std::size_t> pivots;
};

Rref rref(Mat m);
std::size_t rank(const Mat& m);
/// Basis of {x : m x = 0}.
std::vector<Vec> kernel(const Mat& m);
std::optional<Vec> solve(const Mat& a, const Vec& b);
std::optional<Mat> inverse(const Mat& m);
/// A basis of the span of the given vectors (rows of the reduced echelon form).
std::vector<Vec> span_basis(FieldRef f, std::size_t n, const std::vector<Vec>& vs);

// ---------------------------------------------------------------------------

using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;  // sorted by index

SparseVec to_sparse(const Vec& v);
Vec to_dense(FieldRef f, std::size_t n, const SparseVec& v);
void axpy(Vec& y, const Scalar& a, const SparseVec& x);
SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const Scalar& s, const SparseVec& v);

/// Linear map given by sparse columns: column j is the image of basis vector j.
struct LinearMap {
  FieldRef field = nullptr;
  std::size_t rows = 0;
  std::vector<SparseVec> cols;

  Vec apply(const Vec& x) const;
  LinearMap compose(const LinearMap& inner) const;  ///< this ∘ inner
  Mat dense() const;
  static LinearMap from_dense(const Mat& m);
  static LinearMap identity(FieldRef f, std::size_t n);
};

/// Incremental row-echelon form over column indices [0, ncols). A row's pivot
/// is its largest index, so reduction sweeps from high to low indices and the
/// high indices are eliminated first.
class Echelon {
 public:
  Echelon(FieldRef f, std::size_t ncols);

  /// Adds v to the span; returns false when v was already in it.
  bool insert(const SparseVec& v);
  /// Remainder of v after eliminating every pivot column.
  Vec reduce(const Vec& v) const;
  SparseVec reduce(const SparseVec& v) const;

  std::size_t rank() const { return count_; }
  std::size_t ncols() const { return rows_.size(); }
  bool is_pivot(std::size_t col) const { return !rows_[col].empty(); }

 private:
  void sweep(Vec& acc) const;
  SparseVec sparse_sweep(const SparseVec& v) const;
  FieldRef f_;
  std::vector<SparseVec> rows_;  // indexed by pivot column, pivot coefficient 1
  std::size_t count_ = 0;
};

/// Kernel basis of a sparse linear map with `map.cols.size()` columns.
std::vector<SparseVec> sparse_kernel(const LinearMap& map);
std::size_t sparse_rank(const LinearMap& map);
/// Some x with map(x) = b, if one exists.
std::optional<Vec> sparse_solve(const LinearMap& map, const Vec& b);

}  // namespace quadcomp
