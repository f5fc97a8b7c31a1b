#include "quadcomp/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace quadcomp {

Vec zero_vec(FieldRef f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(FieldRef f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

Vec add(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "vector length mismatch");
  Vec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "vector length mismatch");
  Vec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Scalar& s, const Vec& v) {
  Vec r(v);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

Scalar dot(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "vector length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Mat::Mat(FieldRef f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

Mat Mat::identity(FieldRef f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::from_columns(FieldRef f, std::size_t rows, const std::vector<Vec>& cols) {
  Mat m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::from_rows(FieldRef f, std::size_t cols, const std::vector<Vec>& rows) {
  Mat m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vec Mat::col(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Mat Mat::transpose() const {
  Mat t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  require(cols_ == o.rows_, "matrix shape mismatch");
  Mat r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += x * o(k, j);
    }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  require(cols_ == v.size(), "matrix-vector shape mismatch");
  Vec r = zero_vec(f_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
  Mat r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
  Mat r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

Rref rref(Mat m) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.r = std::move(m);
  return out;
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel(const Mat& m) {
  Rref rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[free] = Scalar::one(m.field());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  require(a.rows() == b.size(), "solve: shape mismatch");
  Mat aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref rr = rref(aug);
  Vec x = zero_vec(a.field(), a.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == a.cols()) return std::nullopt;
    x[rr.pivots[i]] = rr.r(i, a.cols());
  }
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  require(m.rows() == m.cols(), "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  Rref rr = rref(aug);
  if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.r(i, n + j);
  return inv;
}

std::vector<Vec> span_basis(FieldRef f, std::size_t n, const std::vector<Vec>& vs) {
  if (vs.empty()) return {};
  Rref rr = rref(Mat::from_rows(f, n, vs));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) out.push_back(rr.r.row(i));
  return out;
}

// ---------------------------------------------------------------------------

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

Vec to_dense(FieldRef f, std::size_t n, const SparseVec& v) {
  Vec d = zero_vec(f, n);
  for (const auto& [i, x] : v) d[i] = x;
  return d;
}

void axpy(Vec& y, const Scalar& a, const SparseVec& x) {
  if (a.is_zero()) return;
  for (const auto& [i, v] : x) y[i] += a * v;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
  SparseVec r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      Scalar s = a[i].second + b[j].second;
      if (!s.is_zero()) r.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sparse_scale(const Scalar& s, const SparseVec& v) {
  SparseVec r;
  if (s.is_zero()) return r;
  r.reserve(v.size());
  for (const auto& [i, x] : v) r.emplace_back(i, s * x);
  return r;
}

Vec LinearMap::apply(const Vec& x) const {
  require(x.size() == cols.size(), "linear map: argument length mismatch");
  Vec y = zero_vec(field, rows);
  for (std::size_t j = 0; j < cols.size(); ++j) axpy(y, x[j], cols[j]);
  return y;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  require(inner.rows == cols.size(), "linear map: composition shape mismatch");
  LinearMap r{field, rows, {}};
  r.cols.reserve(inner.cols.size());
  for (const auto& c : inner.cols) {
    Vec y = zero_vec(field, rows);
    for (const auto& [i, x] : c) axpy(y, x, cols[i]);
    r.cols.push_back(to_sparse(y));
  }
  return r;
}

Mat LinearMap::dense() const {
  Mat m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, x] : cols[j]) m(i, j) = x;
  return m;
}

LinearMap LinearMap::from_dense(const Mat& m) {
  LinearMap r{m.field(), m.rows(), {}};
  for (std::size_t j = 0; j < m.cols(); ++j) r.cols.push_back(to_sparse(m.col(j)));
  return r;
}

LinearMap LinearMap::identity(FieldRef f, std::size_t n) {
  LinearMap r{f, n, {}};
  for (std::size_t j = 0; j < n; ++j) r.cols.push_back({{static_cast<std::uint32_t>(j), Scalar::one(f)}});
  return r;
}

// ---------------------------------------------------------------------------

Echelon::Echelon(FieldRef f, std::size_t ncols) : f_(f), rows_(ncols) {}

void Echelon::sweep(Vec& acc) const {
  for (std::size_t c = acc.size(); c-- > 0;) {
    if (acc[c].is_zero() || rows_[c].empty()) continue;
    Scalar factor = -acc[c];
    for (const auto& [i, x] : rows_[c]) acc[i] += factor * x;
  }
}

Vec Echelon::reduce(const Vec& v) const {
  require(v.size() == rows_.size(), "echelon: vector length mismatch");
  Vec acc(v);
  sweep(acc);
  return acc;
}

SparseVec Echelon::sparse_sweep(const SparseVec& v) const {
  // highest index first; eliminating a pivot only touches lower indices
  std::map<std::uint32_t, Scalar, std::greater<>> acc;
  for (const auto& [i, x] : v) acc[i] += x;
  SparseVec rem;
  while (!acc.empty()) {
    auto it = acc.begin();
    const std::uint32_t c = it->first;
    Scalar x = it->second;
    acc.erase(it);
    if (x.is_zero()) continue;
    if (rows_[c].empty()) {
      rem.emplace_back(c, x);
      continue;
    }
    for (const auto& [i, y] : rows_[c])
      if (i != c) acc[i] -= x * y;
  }
  std::reverse(rem.begin(), rem.end());
  return rem;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  require(v.empty() || v.back().first < rows_.size(), "echelon: index out of range");
  if (4 * v.size() > rows_.size()) {
    Vec acc = to_dense(f_, rows_.size(), v);
    sweep(acc);
    return to_sparse(acc);
  }
  return sparse_sweep(v);
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec rem = reduce(v);
  if (rem.empty()) return false;
  const std::uint32_t c = rem.back().first;
  Scalar inv = rem.back().second.inverse();
  for (auto& [i, x] : rem) x *= inv;
  rows_[c] = std::move(rem);
  ++count_;
  return true;
}

std::vector<SparseVec> sparse_kernel(const LinearMap& map) {
  // Columns [tag | image]: tags occupy the low indices so pivots land on image entries.
  const std::size_t n = map.cols.size();
  Echelon ech(map.field, n + map.rows);
  std::vector<SparseVec> out;
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec v{{static_cast<std::uint32_t>(j), Scalar::one(map.field)}};
    for (const auto& [i, x] : map.cols[j]) v.emplace_back(static_cast<std::uint32_t>(n + i), x);
    SparseVec red = ech.reduce(v);
    if (!red.empty() && red.back().first < n) {
      out.push_back(red);
      continue;
    }
    ech.insert(red);
  }
  return out;
}

std::size_t sparse_rank(const LinearMap& map) {
  Echelon ech(map.field, map.rows);
  for (const auto& c : map.cols) ech.insert(c);
  return ech.rank();
}

std::optional<Vec> sparse_solve(const LinearMap& map, const Vec& b) {
  const std::size_t n = map.cols.size();
  Echelon ech(map.field, n + map.rows);
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec v{{static_cast<std::uint32_t>(j), Scalar::one(map.field)}};
    for (const auto& [i, x] : map.cols[j]) v.emplace_back(static_cast<std::uint32_t>(n + i), x);
    ech.insert(v);
  }
  SparseVec target;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) target.emplace_back(static_cast<std::uint32_t>(n + i), b[i]);
  SparseVec red = ech.reduce(target);
  if (!red.empty() && red.back().first >= n) return std::nullopt;
  Vec x = zero_vec(map.field, n);
  for (const auto& [i, v] : red) x[i] = -v;
  return x;
}

}  // namespace quadcomp
