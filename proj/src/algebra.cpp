#include "quadcomp/algebra.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace quadcomp {

Vec StructureAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec r = zero();
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      axpy(r, x[i] * y[j], table[i * dim + j]);
    }
  }
  return r;
}

Vec StructureAlgebra::mul_sparse(const SparseVec& x, const SparseVec& y) const {
  Vec r = zero();
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) axpy(r, a * b, table[i * dim + j]);
  return r;
}

LinearMap StructureAlgebra::left_mult(const Vec& x) const {
  LinearMap m{field, dim, {}};
  SparseVec xs = to_sparse(x);
  for (std::size_t j = 0; j < dim; ++j)
    m.cols.push_back(to_sparse(mul_sparse(xs, {{static_cast<std::uint32_t>(j), Scalar::one(field)}})));
  return m;
}

LinearMap StructureAlgebra::right_mult(const Vec& x) const {
  LinearMap m{field, dim, {}};
  SparseVec xs = to_sparse(x);
  for (std::size_t j = 0; j < dim; ++j)
    m.cols.push_back(to_sparse(mul_sparse({{static_cast<std::uint32_t>(j), Scalar::one(field)}}, xs)));
  return m;
}

std::optional<Vec> StructureAlgebra::inverse(const Vec& x) const {
  auto v = sparse_solve(left_mult(x), unit);
  if (!v) return std::nullopt;
  if (mul(*v, x) != unit) return std::nullopt;
  return v;
}

const std::vector<Vec>& StructureAlgebra::gens() const {
  if (!generators.empty()) return generators;
  if (basis_gens_.size() != dim)
    for (std::size_t i = basis_gens_.size(); i < dim; ++i) basis_gens_.push_back(basis(i));
  return basis_gens_;
}

std::string StructureAlgebra::element_to_string(const Vec& x) const {
  std::string out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += x[i].to_string() + "*" + (i < labels.size() ? labels[i] : "b" + std::to_string(i));
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

namespace {

std::string label_of(const StructureAlgebra& a, std::size_t i) {
  return i < a.labels.size() ? a.labels[i] : "b" + std::to_string(i);
}

void check_triple(const StructureAlgebra& a, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t d = a.dim;
  Vec left = a.zero(), right = a.zero();
  for (const auto& [m, x] : a.table[i * d + j]) axpy(left, x, a.table[m * d + k]);
  for (const auto& [m, x] : a.table[j * d + k]) axpy(right, x, a.table[i * d + m]);
  if (left != right)
    fail(ErrorKind::CertificationFailure, "associativity fails at (" + label_of(a, i) + ", " + label_of(a, j) + ", " +
                                              label_of(a, k) + ") in " + a.provenance);
}

// Span of right-nested generator words applied to 1; must be all of A.
bool generators_span(const StructureAlgebra& a) {
  Echelon ech(a.field, a.dim);
  std::vector<Vec> frontier{a.unit};
  ech.insert(to_sparse(a.unit));
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& w : frontier)
      for (const auto& g : a.gens()) {
        Vec p = a.mul(g, w);
        if (ech.insert(to_sparse(p))) next.push_back(std::move(p));
      }
    frontier = std::move(next);
    if (ech.rank() == a.dim) return true;
  }
  return ech.rank() == a.dim;
}

}  // namespace

void verify_unit(const StructureAlgebra& a) {
  require(a.unit.size() == a.dim, "unit has wrong length");
  require(a.table.size() == a.dim * a.dim, "structure constant table has wrong size");
  SparseVec u = to_sparse(a.unit);
  for (std::size_t i = 0; i < a.dim; ++i) {
    SparseVec bi{{static_cast<std::uint32_t>(i), Scalar::one(a.field)}};
    if (a.mul_sparse(u, bi) != a.basis(i) || a.mul_sparse(bi, u) != a.basis(i))
      fail(ErrorKind::CertificationFailure, "unit axiom fails at " + label_of(a, i) + " in " + a.provenance);
  }
}

void verify_associative(const StructureAlgebra& a) {
  const std::size_t d = a.dim;
  // with spanning generators, (g y) z = g (y z) for all g, y, z is a complete check
  if (d <= 16 || (a.generators.empty() && d <= 64)) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) check_triple(a, i, j, k);
    return;
  }
  if (!a.generators.empty() && a.generators.size() * d * d <= (1u << 22)) {
    if (!generators_span(a)) fail(ErrorKind::CertificationFailure, "declared generators do not span " + a.provenance);
    FieldRef f = a.field;
    Vec left = a.zero(), right = a.zero();
    std::vector<std::uint32_t> touched;
    // acc += x·v, remembering which entries may have become nonzero
    auto accumulate = [&](Vec& acc, const Scalar& x, const SparseVec& v) {
      for (const auto& [i, y] : v) {
        acc[i] += x * y;
        touched.push_back(i);
      }
    };
    for (const auto& g : a.generators) {
      // gb[m] = g·b_m; then (g b_j) b_k and g (b_j b_k) are both combinations of table rows
      SparseVec gs = to_sparse(g);
      std::vector<SparseVec> gb(d);
      for (std::size_t m = 0; m < d; ++m) gb[m] = to_sparse(a.mul_sparse(gs, {{static_cast<std::uint32_t>(m), Scalar::one(f)}}));
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          touched.clear();
          for (const auto& [m, x] : gb[j]) accumulate(left, x, a.table[m * d + k]);
          for (const auto& [m, x] : a.table[j * d + k]) accumulate(right, x, gb[m]);
          bool same = true;
          for (auto i : touched) {
            same = same && left[i] == right[i];
            left[i] = Scalar::zero(f);
            right[i] = Scalar::zero(f);
          }
          if (!same)
            fail(ErrorKind::CertificationFailure, "associativity fails at (generator, " + label_of(a, j) + ", " +
                                                      label_of(a, k) + ") in " + a.provenance);
        }
    }
    return;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  for (int t = 0; t < 4096; ++t) check_triple(a, pick(rng), pick(rng), pick(rng));
}

AlgebraRef make_algebra(StructureAlgebra a) {
  verify_unit(a);
  verify_associative(a);
  if (a.trd) {
    const std::size_t d = a.dim;
    auto trd_of = [&](const SparseVec& v) {
      Scalar s = Scalar::zero(a.field);
      for (const auto& [i, x] : v) s += x * (*a.trd)[i];
      return s;
    };
    if (d <= 64) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (trd_of(a.table[i * d + j]) != trd_of(a.table[j * d + i]))
            fail(ErrorKind::CertificationFailure, "Trd(xy) != Trd(yx) at (" + label_of(a, i) + ", " +
                                                      label_of(a, j) + ") in " + a.provenance);
    }
    if (a.degree && dot(*a.trd, a.unit) != Scalar(a.field, static_cast<long>(*a.degree)))
      fail(ErrorKind::CertificationFailure, "Trd(1) differs from the degree in " + a.provenance);
  }
  return std::make_shared<const StructureAlgebra>(std::move(a));
}

AlgebraRef base_field_algebra(FieldRef f) {
  StructureAlgebra a;
  a.field = f;
  a.dim = 1;
  a.labels = {"1"};
  a.table = {{{0, Scalar::one(f)}}};
  a.unit = {Scalar::one(f)};
  a.trd = Vec{Scalar::one(f)};
  a.degree = 1;
  a.provenance = f->name();
  return make_algebra(std::move(a));
}

AlgebraRef matrix_algebra(const AlgebraRef& base, std::size_t n) {
  require(n >= 1, "matrix size must be positive");
  const StructureAlgebra& A = *base;
  const std::size_t d = A.dim, D = n * n * d;
  StructureAlgebra m;
  m.field = A.field;
  m.dim = D;
  m.table.assign(D * D, {});
  auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * d + k; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        m.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1) + (d > 1 ? "*" + label_of(A, k) : ""));
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t k2 = 0; k2 < d; ++k2) {
            SparseVec prod;
            for (const auto& [c, x] : A.table[k * d + k2]) prod.emplace_back(static_cast<std::uint32_t>(idx(i, l, c)), x);
            m.table[idx(i, j, k) * D + idx(j, l, k2)] = std::move(prod);
          }
      }
  m.unit = zero_vec(A.field, D);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) m.unit[idx(i, i, k)] = A.unit[k];
  if (A.trd) {
    Vec t = zero_vec(A.field, D);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) t[idx(i, i, k)] = (*A.trd)[k];
    m.trd = t;
  }
  if (A.degree) m.degree = static_cast<unsigned>(n) * *A.degree;
  m.provenance = "M" + std::to_string(n) + "(" + A.provenance + ")";
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vec e = zero_vec(A.field, D), f = zero_vec(A.field, D);
    for (std::size_t k = 0; k < d; ++k) {
      e[idx(i, i + 1, k)] = A.unit[k];
      f[idx(i + 1, i, k)] = A.unit[k];
    }
    m.generators.push_back(e);
    m.generators.push_back(f);
  }
  for (const auto& g : A.gens()) {
    Vec e = zero_vec(A.field, D);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) e[idx(i, i, k)] = g[k];
    m.generators.push_back(e);
  }
  if (n > 1) {
    Vec e11 = zero_vec(A.field, D);
    for (std::size_t k = 0; k < d; ++k) e11[idx(0, 0, k)] = A.unit[k];
    m.generators.push_back(e11);
  }
  return make_algebra(std::move(m));
}

AlgebraRef matrix_algebra(FieldRef f, std::size_t n) { return matrix_algebra(base_field_algebra(f), n); }

AlgebraRef tensor(const AlgebraRef& pa, const AlgebraRef& pb) {
  const StructureAlgebra &A = *pa, &B = *pb;
  require(A.field == B.field, "tensor product over different fields");
  const std::size_t da = A.dim, db = B.dim, D = da * db;
  StructureAlgebra t;
  t.field = A.field;
  t.dim = D;
  t.table.assign(D * D, {});
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) t.labels.push_back(label_of(A, i) + "(x)" + label_of(B, j));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t i2 = 0; i2 < da; ++i2) {
      const SparseVec& pa_ = A.table[i * da + i2];
      if (pa_.empty()) continue;
      for (std::size_t j = 0; j < db; ++j)
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          const SparseVec& pb_ = B.table[j * db + j2];
          if (pb_.empty()) continue;
          SparseVec prod;
          for (const auto& [x, s] : pa_)
            for (const auto& [y, r] : pb_) prod.emplace_back(static_cast<std::uint32_t>(x * db + y), s * r);
          t.table[(i * db + j) * D + (i2 * db + j2)] = std::move(prod);
        }
    }
  t.unit = zero_vec(A.field, D);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) t.unit[i * db + j] = A.unit[i] * B.unit[j];
  if (A.trd && B.trd) {
    Vec tr = zero_vec(A.field, D);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) tr[i * db + j] = (*A.trd)[i] * (*B.trd)[j];
    t.trd = tr;
  }
  if (A.degree && B.degree) t.degree = *A.degree * *B.degree;
  t.provenance = "(" + A.provenance + ")(x)(" + B.provenance + ")";
  for (const auto& g : A.gens()) {
    Vec e = zero_vec(A.field, D);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) e[i * db + j] = g[i] * B.unit[j];
    t.generators.push_back(e);
  }
  for (const auto& h : B.gens()) {
    Vec e = zero_vec(A.field, D);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) e[i * db + j] = A.unit[i] * h[j];
    t.generators.push_back(e);
  }
  return make_algebra(std::move(t));
}

AlgebraRef opposite(const AlgebraRef& pa) {
  const StructureAlgebra& A = *pa;
  StructureAlgebra o = A;
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j) o.table[i * A.dim + j] = A.table[j * A.dim + i];
  o.provenance = "op(" + A.provenance + ")";
  return make_algebra(std::move(o));
}

AlgebraRef product(const AlgebraRef& pa, const AlgebraRef& pb) {
  const StructureAlgebra &A = *pa, &B = *pb;
  require(A.field == B.field, "product over different fields");
  const std::size_t da = A.dim, D = da + B.dim;
  StructureAlgebra p;
  p.field = A.field;
  p.dim = D;
  p.table.assign(D * D, {});
  for (std::size_t i = 0; i < da; ++i) p.labels.push_back("(" + label_of(A, i) + ",0)");
  for (std::size_t j = 0; j < B.dim; ++j) p.labels.push_back("(0," + label_of(B, j) + ")");
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) p.table[i * D + j] = A.table[i * da + j];
  for (std::size_t i = 0; i < B.dim; ++i)
    for (std::size_t j = 0; j < B.dim; ++j) {
      SparseVec s;
      for (const auto& [c, x] : B.table[i * B.dim + j]) s.emplace_back(static_cast<std::uint32_t>(da + c), x);
      p.table[(da + i) * D + da + j] = std::move(s);
    }
  p.unit = A.unit;
  p.unit.insert(p.unit.end(), B.unit.begin(), B.unit.end());
  if (A.degree && B.degree && *A.degree == *B.degree) p.degree = A.degree;
  p.provenance = "(" + A.provenance + ")x(" + B.provenance + ")";
  return make_algebra(std::move(p));
}

AlgebraRef quaternion(FieldRef f, const Scalar& a, const Scalar& b) {
  require(!a.is_zero() || f->characteristic() == 2, "quaternion parameter a must be nonzero");
  require(!b.is_zero(), "quaternion parameter b must be nonzero");
  const bool c2 = f->characteristic() == 2;
  // S = F[i] with i² = α + β i and θ(i) = t0 + t1 i.
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  const Scalar alpha = a, beta = c2 ? one : zero;
  const Scalar t0 = c2 ? one : zero, t1 = c2 ? one : -one;
  using S = std::pair<Scalar, Scalar>;
  auto smul = [&](const S& x, const S& y) {
    Scalar c0 = x.first * y.first + x.second * y.second * alpha;
    Scalar c1 = x.first * y.second + x.second * y.first + x.second * y.second * beta;
    return S{c0, c1};
  };
  auto theta = [&](const S& x) { return S{x.first + x.second * t0, x.second * t1}; };
  auto sadd = [](const S& x, const S& y) { return S{x.first + y.first, x.second + y.second}; };
  // basis 1, i, j, ij as (u, v) with x = u + v j
  std::vector<std::pair<S, S>> basis = {{{one, zero}, {zero, zero}},
                                        {{zero, one}, {zero, zero}},
                                        {{zero, zero}, {one, zero}},
                                        {{zero, zero}, {zero, one}}};
  StructureAlgebra q;
  q.field = f;
  q.dim = 4;
  q.labels = {"1", "i", "j", "k"};
  q.table.assign(16, {});
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      const auto& [u, v] = basis[x];
      const auto& [u2, v2] = basis[y];
      S bv = smul(v, theta(v2));
      S r0 = sadd(smul(u, u2), S{bv.first * b, bv.second * b});
      S r1 = sadd(smul(u, v2), smul(v, theta(u2)));
      q.table[x * 4 + y] = to_sparse(Vec{r0.first, r0.second, r1.first, r1.second});
    }
  q.unit = {one, zero, zero, zero};
  q.trd = Vec{one + one, c2 ? one : zero, zero, zero};  // Trd(u + vj) = u + θ(u)
  q.degree = 2;
  q.provenance = (c2 ? "[" : "(") + a.to_string() + "," + b.to_string() + ")";
  q.generators = {unit_vec(f, 4, 1), unit_vec(f, 4, 2)};
  return make_algebra(std::move(q));
}

AlgebraRef etale_algebra(const EtaleQuadratic& s) {
  FieldRef f = s.base;
  const bool c2 = f->characteristic() == 2;
  StructureAlgebra e;
  e.field = f;
  e.dim = 2;
  e.labels = {"1", "w"};
  Scalar one = Scalar::one(f);
  e.table = {{{0, one}}, {{1, one}}, {{1, one}}, {}};
  // w² = m, or w² = w + a in characteristic 2
  Vec w2 = c2 ? Vec{s.datum, one} : Vec{s.datum, Scalar::zero(f)};
  e.table[3] = to_sparse(w2);
  e.unit = {one, Scalar::zero(f)};
  e.trd = c2 ? Vec{Scalar::zero(f), one} : Vec{one + one, Scalar::zero(f)};
  e.provenance = s.to_string();
  return make_algebra(std::move(e));
}

LinearMap etale_iota(const EtaleQuadratic& s) {
  FieldRef f = s.base;
  Scalar one = Scalar::one(f);
  LinearMap m{f, 2, {{{0, one}}, {}}};
  if (f->characteristic() == 2)
    m.cols[1] = {{0, one}, {1, one}};
  else
    m.cols[1] = {{1, -one}};
  return m;
}

Scalar reduced_trace_eval(const StructureAlgebra& a, const Vec& x) {
  if (!a.trd) fail(ErrorKind::InvalidInput, "no reduced trace attached; construct via provided constructors");
  return dot(*a.trd, x);
}

// ---------------------------------------------------------------------------

std::vector<Vec> center_basis(const StructureAlgebra& a) {
  const auto& gs = a.gens();
  LinearMap m{a.field, a.dim * gs.size(), {}};
  std::vector<SparseVec> gsp;
  for (const auto& g : gs) gsp.push_back(to_sparse(g));
  for (std::size_t j = 0; j < a.dim; ++j) {
    SparseVec bj{{static_cast<std::uint32_t>(j), Scalar::one(a.field)}};
    SparseVec col;
    for (std::size_t g = 0; g < gs.size(); ++g) {
      Vec c = sub(a.mul_sparse(bj, gsp[g]), a.mul_sparse(gsp[g], bj));
      for (std::size_t i = 0; i < a.dim; ++i)
        if (!c[i].is_zero()) col.emplace_back(static_cast<std::uint32_t>(g * a.dim + i), c[i]);
    }
    m.cols.push_back(std::move(col));
  }
  std::vector<Vec> out;
  for (const auto& k : sparse_kernel(m)) out.push_back(to_dense(a.field, a.dim, k));
  return out;
}

namespace {

// Roots in f of X² − βX − α.
std::vector<Scalar> quadratic_roots(FieldRef f, const Scalar& alpha, const Scalar& beta) {
  std::vector<Scalar> roots;
  if (f->is_rational()) {
    mpq_class disc = beta.rational() * beta.rational() + 4 * alpha.rational();
    if (disc < 0) return roots;
    mpz_class n = disc.get_num(), d = disc.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return roots;
    mpq_class s(sqrt(n), sqrt(d));
    roots.emplace_back(f, mpq_class((beta.rational() + s) / 2));
    roots.emplace_back(f, mpq_class((beta.rational() - s) / 2));
    return roots;
  }
  for (std::uint32_t i = 0; i < f->order(); ++i) {
    Scalar x = Scalar::from_index(f, i);
    if (x * x - beta * x - alpha == Scalar::zero(f)) roots.push_back(x);
  }
  return roots;
}

}  // namespace

CenterInfo center_and_idempotents(const StructureAlgebra& a) {
  CenterInfo info;
  info.basis = center_basis(a);
  if (info.basis.size() != 2) return info;
  FieldRef f = a.field;
  Echelon ech(f, a.dim);
  ech.insert(to_sparse(a.unit));
  for (const auto& z : info.basis)
    if (ech.insert(to_sparse(z))) {
      info.w = z;
      break;
    }
  const Vec& w = *info.w;
  Coordinates coords(f, a.dim, {a.unit, w});
  auto c = coords.of(a.mul(w, w));
  if (!c) fail(ErrorKind::CertificationFailure, "center is not closed under multiplication");
  info.alpha = (*c)[0];
  info.beta = (*c)[1];
  Scalar datum;
  if (f->characteristic() == 2) {
    if (info.beta.is_zero()) return info;  // inseparable center: no étale descriptor
    datum = info.alpha / (info.beta * info.beta);
  } else {
    datum = info.beta * info.beta + Scalar(f, 4L) * info.alpha;
    if (datum.is_zero()) return info;
  }
  info.descriptor = quad_ext_info(f, datum);
  auto roots = quadratic_roots(f, info.alpha, info.beta);
  if (roots.size() == 2 && roots[0] != roots[1]) {
    info.split = true;
    Scalar r = roots[0], r2 = roots[1];
    Vec e = scale((r - r2).inverse(), sub(w, a.scalar(r2)));
    if (a.mul(e, e) != e) fail(ErrorKind::CertificationFailure, "central idempotent check failed");
    info.idempotent = e;
  }
  return info;
}

bool is_closed(const StructureAlgebra& a, const std::vector<Vec>& vs) {
  Echelon ech(a.field, a.dim);
  for (const auto& v : vs) ech.insert(to_sparse(v));
  for (const auto& x : vs)
    for (const auto& y : vs) {
      Vec p = a.mul(x, y);
      if (!is_zero(ech.reduce(p))) return false;
    }
  return true;
}

std::vector<Vec> centralizer(const StructureAlgebra& a, const std::vector<Vec>& s) {
  require(is_closed(a, s), "centralizer: the given subspace is not closed under multiplication");
  LinearMap m{a.field, a.dim * s.size(), {}};
  for (std::size_t j = 0; j < a.dim; ++j) {
    SparseVec col;
    Vec bj = a.basis(j);
    for (std::size_t g = 0; g < s.size(); ++g) {
      Vec c = sub(a.mul(bj, s[g]), a.mul(s[g], bj));
      for (std::size_t i = 0; i < a.dim; ++i)
        if (!c[i].is_zero()) col.emplace_back(static_cast<std::uint32_t>(g * a.dim + i), c[i]);
    }
    m.cols.push_back(std::move(col));
  }
  std::vector<Vec> out;
  for (const auto& k : sparse_kernel(m)) out.push_back(to_dense(a.field, a.dim, k));
  return out;
}

Coordinates::Coordinates(FieldRef f, std::size_t n, const std::vector<Vec>& basis) : f_(f), n_(n), basis_(basis) {
  const std::size_t r = basis.size();
  if (r == 0) return;
  Rref rr = rref(Mat::from_rows(f, n, basis));
  if (rr.pivots.size() != r) fail(ErrorKind::InvalidInput, "coordinates: basis vectors are dependent");
  rows_ = rr.pivots;
  Mat sq(f, r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) sq(i, j) = basis[j][rows_[i]];
  auto inv = quadcomp::inverse(sq);
  if (!inv) fail(ErrorKind::CertificationFailure, "coordinates: singular pivot block");
  inv_ = *inv;
}

std::optional<Vec> Coordinates::of(const Vec& v) const {
  const std::size_t r = basis_.size();
  Vec picked;
  picked.reserve(r);
  for (auto row : rows_) picked.push_back(v[row]);
  Vec c = r ? inv_ * picked : Vec{};
  Vec back = zero_vec(f_, n_);
  for (std::size_t j = 0; j < r; ++j)
    if (!c[j].is_zero())
      for (std::size_t i = 0; i < n_; ++i)
        if (!basis_[j][i].is_zero()) back[i] += c[j] * basis_[j][i];
  if (back != v) return std::nullopt;
  return c;
}

AlgebraRef subalgebra(const StructureAlgebra& a, const std::vector<Vec>& basis, const Vec& unit,
                      const std::string& provenance) {
  Coordinates coords(a.field, a.dim, basis);
  const std::size_t r = basis.size();
  StructureAlgebra s;
  s.field = a.field;
  s.dim = r;
  s.table.assign(r * r, {});
  for (std::size_t i = 0; i < r; ++i) {
    s.labels.push_back("s" + std::to_string(i));
    for (std::size_t j = 0; j < r; ++j) {
      auto c = coords.of(a.mul(basis[i], basis[j]));
      if (!c) fail(ErrorKind::InvalidInput, "subalgebra: span is not closed under multiplication");
      s.table[i * r + j] = to_sparse(*c);
    }
  }
  auto u = coords.of(unit);
  if (!u) fail(ErrorKind::InvalidInput, "subalgebra: unit not in the span");
  s.unit = *u;
  s.provenance = provenance;
  return make_algebra(std::move(s));
}

// ---------------------------------------------------------------------------

const char* to_string(InvolutionType t) {
  switch (t) {
    case InvolutionType::Orthogonal: return "orthogonal";
    case InvolutionType::Symplectic: return "symplectic";
    case InvolutionType::Unitary: return "unitary";
  }
  return "?";
}

InvolutionType parse_involution_type(const std::string& s) {
  if (s == "orthogonal" || s == "+1" || s == "1") return InvolutionType::Orthogonal;
  if (s == "symplectic" || s == "-1") return InvolutionType::Symplectic;
  if (s == "unitary" || s == "0") return InvolutionType::Unitary;
  fail(ErrorKind::InvalidInput, "unknown involution type '" + s + "'");
}

InvolutionType tensor_type(InvolutionType a, InvolutionType b) {
  require(a != InvolutionType::Unitary && b != InvolutionType::Unitary, "tensor_type expects first-kind types");
  return a == b ? InvolutionType::Orthogonal : InvolutionType::Symplectic;
}

void verify_involution(const StructureAlgebra& a, const LinearMap& sigma) {
  require(sigma.rows == a.dim && sigma.cols.size() == a.dim, "not an involution: wrong matrix shape");
  if (sigma.apply(a.unit) != a.unit) fail(ErrorKind::InvalidInput, "not an involution: sigma(1) != 1");
  for (std::size_t j = 0; j < a.dim; ++j)
    if (sigma.apply(to_dense(a.field, a.dim, sigma.cols[j])) != a.basis(j))
      fail(ErrorKind::InvalidInput, "not an involution: sigma^2 != id at " + label_of(a, j));
  const bool all_pairs = a.dim <= 16 || a.generators.empty();
  const auto& left = a.gens();
  const std::size_t nl = all_pairs ? a.dim : left.size();
  for (std::size_t i = 0; i < nl; ++i) {
    Vec x = all_pairs ? a.basis(i) : left[i];
    Vec sx = sigma.apply(x);
    for (std::size_t j = 0; j < a.dim; ++j) {
      Vec y = a.basis(j);
      Vec lhs = sigma.apply(a.mul(x, y));
      Vec rhs = a.mul(to_dense(a.field, a.dim, sigma.cols[j]), sx);
      if (lhs != rhs)
        fail(ErrorKind::InvalidInput, "not an involution: sigma(xy) != sigma(y)sigma(x) at (" +
                                          (all_pairs ? label_of(a, i) : "generator " + std::to_string(i)) + ", " +
                                          label_of(a, j) + ")");
    }
  }
}

namespace {

LinearMap shifted(const LinearMap& s, int sign) {
  // s + sign·I
  LinearMap r = s;
  Scalar c(s.field, static_cast<long>(sign));
  for (std::size_t j = 0; j < r.cols.size(); ++j)
    r.cols[j] = sparse_add(r.cols[j], {{static_cast<std::uint32_t>(j), c}});
  return r;
}

std::vector<Vec> image_basis(const LinearMap& m) {
  Echelon ech(m.field, m.rows);
  std::vector<Vec> out;
  for (const auto& c : m.cols)
    if (ech.insert(c)) out.push_back(to_dense(m.field, m.rows, c));
  return out;
}

std::vector<Vec> kernel_dense(const LinearMap& m) {
  std::vector<Vec> out;
  for (const auto& k : sparse_kernel(m)) out.push_back(to_dense(m.field, m.cols.size(), k));
  return out;
}

}  // namespace

InvolutionType involution_type(const AlgebraWithInvolution& awi) {
  const StructureAlgebra& a = *awi.alg;
  auto z = center_basis(a);
  FieldRef f = a.field;
  if (z.size() > 2) fail(ErrorKind::InvalidInput, "involution_type: not central simple or sigma invalid");
  if (z.size() == 2) {
    for (const auto& v : z)
      if (awi.apply(v) != v) return InvolutionType::Unitary;
  }
  const std::size_t zd = z.size();
  const std::size_t m2 = a.dim / zd;
  const std::size_t m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m2))));
  if (m * m != m2 || m2 * zd != a.dim) fail(ErrorKind::InvalidInput, "involution_type: dimension is not a square over the center");
  if (f->characteristic() == 2) {
    Echelon ech(f, a.dim);
    for (const auto& v : awi.alt) ech.insert(to_sparse(v));
    return is_zero(ech.reduce(a.unit)) ? InvolutionType::Symplectic : InvolutionType::Orthogonal;
  }
  const std::size_t sym = awi.sym.size();
  if (sym == zd * m * (m + 1) / 2) return InvolutionType::Orthogonal;
  if (sym == zd * m * (m - 1) / 2) return InvolutionType::Symplectic;
  fail(ErrorKind::InvalidInput, "involution_type: not central simple or sigma invalid (dim Sym = " + std::to_string(sym) + ")");
}

AlgebraWithInvolution involution_attach(const AlgebraRef& a, const LinearMap& sigma,
                                        std::optional<InvolutionKind> expected) {
  verify_involution(*a, sigma);
  AlgebraWithInvolution awi;
  awi.alg = a;
  awi.inv.map = sigma;
  awi.sym = kernel_dense(shifted(sigma, -1));
  awi.skew = kernel_dense(shifted(sigma, 1));
  awi.symd = image_basis(shifted(sigma, 1));
  LinearMap minus = sigma;
  for (auto& c : minus.cols) c = sparse_scale(Scalar(a->field, -1L), c);
  awi.alt = image_basis(shifted(minus, 1));
  awi.inv.type = involution_type(awi);
  awi.inv.kind = awi.inv.type == InvolutionType::Unitary ? InvolutionKind::Second : InvolutionKind::First;
  if (expected && *expected != awi.inv.kind)
    fail(ErrorKind::InvalidInput, "involution kind differs from the expected kind");
  return awi;
}

LinearMap tensor_map(const LinearMap& f, const LinearMap& g) {
  require(f.field == g.field, "tensor_map over different fields");
  LinearMap r{f.field, f.rows * g.rows, {}};
  r.cols.reserve(f.cols.size() * g.cols.size());
  for (const auto& cf : f.cols)
    for (const auto& cg : g.cols) {
      SparseVec c;
      for (const auto& [i, x] : cf)
        for (const auto& [j, y] : cg) c.emplace_back(static_cast<std::uint32_t>(i * g.rows + j), x * y);
      r.cols.push_back(std::move(c));
    }
  return r;
}

LinearMap transpose_involution(FieldRef f, std::size_t n) {
  LinearMap r{f, n * n, std::vector<SparseVec>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.cols[i * n + j] = {{static_cast<std::uint32_t>(j * n + i), Scalar::one(f)}};
  return r;
}

LinearMap sigma_pm(FieldRef f, int sign) {
  Scalar one = Scalar::one(f), s(f, static_cast<long>(sign));
  return LinearMap{f, 4, {{{3, one}}, {{1, s}}, {{2, s}}, {{0, one}}}};
}

LinearMap quaternion_gamma(const StructureAlgebra& q) {
  LinearMap r{q.field, q.dim, {}};
  for (std::size_t j = 0; j < q.dim; ++j) {
    Vec x = q.basis(j);
    r.cols.push_back(to_sparse(sub(q.scalar(reduced_trace_eval(q, x)), x)));
  }
  return r;
}

LinearMap inner_twist(const StructureAlgebra& a, const LinearMap& sigma, const Vec& u) {
  auto uinv = a.inverse(u);
  if (!uinv) fail(ErrorKind::InvalidInput, "inner_twist: element is not invertible");
  LinearMap r{a.field, a.dim, {}};
  for (std::size_t j = 0; j < a.dim; ++j)
    r.cols.push_back(to_sparse(a.mul(a.mul(u, to_dense(a.field, a.dim, sigma.cols[j])), *uinv)));
  return r;
}

HomVerdict hom_verify(const LinearMap& f, const StructureAlgebra& a, const StructureAlgebra& b,
                      const LinearMap* sigma_a, const LinearMap* tau_b) {
  HomVerdict v;
  if (f.cols.size() != a.dim || f.rows != b.dim) {
    v.ok = false;
    v.detail = "dimension mismatch";
    return v;
  }
  if (f.apply(a.unit) != b.unit) {
    v.ok = false;
    v.detail = "f(1) != 1";
    return v;
  }
  std::vector<Vec> img;
  img.reserve(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) img.push_back(to_dense(b.field, b.dim, f.cols[i]));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      Vec lhs = f.apply(to_dense(a.field, a.dim, a.table[i * a.dim + j]));
      if (lhs != b.mul(img[i], img[j])) {
        v.ok = false;
        v.detail = "f(b_i b_j) != f(b_i) f(b_j) at (" + label_of(a, i) + ", " + label_of(a, j) + ")";
        v.pair = {i, j};
        return v;
      }
    }
  if (sigma_a && tau_b) {
    for (std::size_t i = 0; i < a.dim; ++i) {
      Vec lhs = tau_b->apply(img[i]);
      Vec rhs = f.apply(to_dense(a.field, a.dim, sigma_a->cols[i]));
      if (lhs != rhs) {
        v.ok = false;
        v.detail = "tau(f(x)) != f(sigma(x)) at " + label_of(a, i);
        v.pair = {i, i};
        return v;
      }
    }
  }
  v.detail = "verified";
  return v;
}

LinearMap left_regular(const StructureAlgebra& a) {
  const std::size_t n = a.dim;
  LinearMap r{a.field, n * n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec col;
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [row, x] : a.table[i * n + c]) col.emplace_back(static_cast<std::uint32_t>(row * n + c), x);
    std::sort(col.begin(), col.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    r.cols.push_back(std::move(col));
  }
  return r;
}

std::pair<Scalar, Scalar> quaternion_symbol(const StructureAlgebra& a) {
  FieldRef f = a.field;
  require(a.dim == 4 && f->characteristic() != 2, "quaternion_symbol needs a 4-dimensional algebra in char != 2");
  // trace form of left multiplication; pure quaternions are its kernel
  Mat tr(f, 1, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (const auto& [c, x] : a.table[i * 4 + j])
        if (c == j) tr(0, i) += x;
  auto pure = kernel(tr);
  require(pure.size() == 3, "quaternion_symbol: unexpected trace form");
  auto scalar_of = [&](const Vec& v) -> std::optional<Scalar> {
    Coordinates c(f, 4, {a.unit});
    auto r = c.of(v);
    if (!r) return std::nullopt;
    return (*r)[0];
  };
  const long range[] = {0, 1, -1, 2, -2};
  for (long c0 : range)
    for (long c1 : range)
      for (long c2 : range) {
        Vec x = add(add(scale(Scalar(f, c0), pure[0]), scale(Scalar(f, c1), pure[1])), scale(Scalar(f, c2), pure[2]));
        if (is_zero(x)) continue;
        auto sa = scalar_of(a.mul(x, x));
        if (!sa) fail(ErrorKind::InvalidInput, "quaternion_symbol: algebra is not a quaternion algebra");
        if (sa->is_zero()) return {Scalar::one(f), Scalar::one(f)};  // nilpotent: split
        // y pure with xy + yx = 0
        Mat cond(f, 4, 3);
        for (std::size_t k = 0; k < 3; ++k) {
          Vec ac = add(a.mul(x, pure[k]), a.mul(pure[k], x));
          for (std::size_t r = 0; r < 4; ++r) cond(r, k) = ac[r];
        }
        auto sol = kernel(cond);
        for (const auto& s : sol) {
          Vec y = zero_vec(f, 4);
          for (std::size_t k = 0; k < 3; ++k) y = add(y, scale(s[k], pure[k]));
          auto sb = scalar_of(a.mul(y, y));
          if (!sb) continue;
          if (sb->is_zero()) return {Scalar::one(f), Scalar::one(f)};
          return {*sa, *sb};
        }
      }
  fail(ErrorKind::CertificationFailure, "quaternion_symbol: no symbol found");
}

}  // namespace quadcomp
