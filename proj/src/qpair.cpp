#include "quadcomp/qpair.hpp"

#include "quadcomp/clifford.hpp"

namespace quadcomp {

Scalar QuadraticPair::eval_f(const Vec& s) const {
  Coordinates coords(awi.alg->field, awi.alg->dim, awi.sym);
  auto c = coords.of(s);
  require(c.has_value(), "f evaluated outside Sym(A, sigma)");
  return dot(f, *c);
}

FieldRef ExtendedQuadraticPair::field() const {
  return pair ? pair->awi.alg->field : odd_space->field;
}

ExtendedQuadraticPair extended(QuadraticPair p) {
  FieldRef f = p.awi.alg->field;
  require(!(f->characteristic() == 2 && p.degree % 2 == 1),
          "there are no quadratic pairs of odd degree in characteristic 2");
  ExtendedQuadraticPair e;
  e.degree = p.degree;
  e.pair = std::move(p);
  return e;
}

ExtendedQuadraticPair extended(QuadraticSpace q) {
  require(q.field->characteristic() == 2 && q.n % 2 == 1,
          "an odd space stands for an odd-dimensional form in characteristic 2");
  require(regularity_classify(q).cls == Regularity::Semiregular, "odd space must be semiregular");
  ExtendedQuadraticPair e;
  e.degree = static_cast<unsigned>(q.n);
  e.odd_space = std::move(q);
  return e;
}

namespace {

std::vector<Scalar> trd_row(const StructureAlgebra& a, const Vec& s) {
  // ℓ ↦ Trd(ℓ s) as a row over the basis
  std::vector<Scalar> row;
  for (std::size_t j = 0; j < a.dim; ++j) row.push_back(reduced_trace_eval(a, a.mul(a.basis(j), s)));
  return row;
}

}  // namespace

EllSolution ell_element(const AlgebraWithInvolution& awi, const Vec& f) {
  const StructureAlgebra& a = *awi.alg;
  FieldRef F = a.field;
  require(f.size() == awi.sym.size(), "f has the wrong length");
  const std::size_t d = a.dim, ns = awi.sym.size();
  Mat m(F, ns + d, d);
  Vec rhs = zero_vec(F, ns + d);
  for (std::size_t i = 0; i < ns; ++i) {
    auto row = trd_row(a, awi.sym[i]);
    for (std::size_t j = 0; j < d; ++j) m(i, j) = row[j];
    rhs[i] = f[i];
  }
  for (std::size_t j = 0; j < d; ++j) {
    Vec col = add(a.basis(j), awi.apply(a.basis(j)));
    for (std::size_t i = 0; i < d; ++i) m(ns + i, j) = col[i];
  }
  for (std::size_t i = 0; i < d; ++i) rhs[ns + i] = a.unit[i];
  auto sol = solve(m, rhs);
  if (!sol) fail(ErrorKind::InvalidInput, "f violates f(x + sigma(x)) = Trd(x)");
  auto ker = kernel(m);
  if (ker.size() != awi.alt.size())
    fail(ErrorKind::CertificationFailure, "solution set of ell is not a coset of Alt(A, sigma)");
  return {*sol, awi.alt};
}

PairVerdict pair_validate(const QuadraticPair& p) {
  const StructureAlgebra& a = *p.awi.alg;
  Coordinates coords(a.field, a.dim, p.awi.sym);
  for (std::size_t j = 0; j < a.dim; ++j) {
    Vec x = a.basis(j);
    auto c = coords.of(add(x, p.awi.apply(x)));
    if (!c) return {false, "x + sigma(x) not symmetric at " + a.labels[j], j};
    if (dot(p.f, *c) != reduced_trace_eval(a, x))
      return {false, "f(x + sigma(x)) != Trd(x) at " + a.labels[j], j};
  }
  for (std::size_t i = 0; i < p.awi.sym.size(); ++i)
    if (reduced_trace_eval(a, a.mul(p.ell, p.awi.sym[i])) != p.f[i])
      return {false, "Trd(ell s) != f(s) at Sym basis vector " + std::to_string(i), i};
  if (add(p.ell, p.awi.apply(p.ell)) != a.unit) return {false, "ell + sigma(ell) != 1", std::nullopt};
  return {};
}

QuadraticPair pair_from_ell(const AlgebraWithInvolution& awi, const Vec& ell, const std::string& note) {
  const StructureAlgebra& a = *awi.alg;
  require(add(ell, awi.apply(ell)) == a.unit, "ell + sigma(ell) != 1");
  QuadraticPair p;
  p.awi = awi;
  p.ell = ell;
  for (const auto& s : awi.sym) p.f.push_back(reduced_trace_eval(a, a.mul(ell, s)));
  p.degree = a.degree.value_or(0);
  p.note = note;
  auto v = pair_validate(p);
  if (!v.ok) fail(ErrorKind::CertificationFailure, "pair_from_ell: " + v.detail);
  return p;
}

Vec phi_q(const QuadraticSpace& q, const Vec& v, const Vec& w) {
  Vec bw = q.polar_matrix().transpose() * w;  // row wᵀB
  const std::size_t n = q.n;
  Vec x = zero_vec(q.field, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i * n + j] = v[i] * bw[j];
  return x;
}

QuadraticPair pair_from_form(const QuadraticSpace& q) {
  FieldRef F = q.field;
  require(is_regular(q), "pair_from_form needs a regular form");
  const std::size_t n = q.n;
  Mat b = q.polar_matrix();
  auto binv = inverse(b);
  if (!binv) fail(ErrorKind::CertificationFailure, "regular form with singular polar matrix");
  auto A = matrix_algebra(F, n);
  // σ_q(X) = B⁻¹ Xᵀ B
  LinearMap sigma{F, n * n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat e(F, n, n);
      e(j, i) = Scalar::one(F);
      Mat s = *binv * e * b;
      Vec col;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) col.push_back(s(r, c));
      sigma.cols.push_back(to_sparse(col));
    }
  auto awi = involution_attach(A, sigma, InvolutionKind::First);
  // f_q(φ_q(v ⊗ v)) = q(v) on v = eᵢ and eᵢ + eⱼ, which span Sym
  Coordinates coords(F, n * n, awi.sym);
  std::vector<Vec> rows;
  Vec vals;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec v = unit_vec(F, n, i);
      if (j != i) v = add(v, unit_vec(F, n, j));
      auto c = coords.of(phi_q(q, v, v));
      if (!c) fail(ErrorKind::CertificationFailure, "phi_q(v, v) is not symmetric");
      rows.push_back(*c);
      vals.push_back(q.eval(v));
    }
  auto f = solve(Mat::from_rows(F, awi.sym.size(), rows), vals);
  if (!f) fail(ErrorKind::CertificationFailure, "f_q is not well defined");
  QuadraticPair p;
  p.awi = awi;
  p.f = *f;
  p.degree = static_cast<unsigned>(n);
  p.ell = ell_element(awi, p.f).ell;
  auto v = pair_validate(p);
  if (!v.ok) fail(ErrorKind::CertificationFailure, "pair_from_form: " + v.detail);
  return p;
}

QuadraticPair pair_on_quaternion_tensor(const AlgebraRef& q1, const AlgebraRef& q2) {
  require(q1->field == q2->field, "quaternion algebras over different fields");
  require(q1->dim == 4 && q2->dim == 4, "pair_on_quaternion_tensor expects quaternion algebras");
  FieldRef F = q1->field;
  auto A = tensor(q1, q2);
  auto awi = involution_attach(A, tensor_map(quaternion_gamma(*q1), quaternion_gamma(*q2)), InvolutionKind::First);
  if (F->characteristic() != 2) {
    Vec half = A->scalar(Scalar(F, 2L).inverse());
    return pair_from_ell(awi, half, "f = Trd/2");
  }
  // ℓ ranges over ℓ₀ + Sym; only its class modulo Alt matters
  Vec l0 = A->basis(1 * 4 + 0);  // i ⊗ 1, Trd(i) = 1
  require(add(l0, awi.apply(l0)) == A->unit, "quaternion basis does not have Trd(i) = 1");
  std::vector<Vec> dirs;
  Echelon ech(F, A->dim);
  for (const auto& v : awi.alt) ech.insert(to_sparse(v));
  for (const auto& s : awi.sym)
    if (ech.insert(to_sparse(s))) dirs.push_back(s);
  const std::uint32_t order = F->order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dirs.size() && total <= 4096; ++i) total *= order;
  total = std::min<std::uint64_t>(total, 4096);
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec ell = l0;
    std::uint64_t c = code;
    for (const auto& d : dirs) {
      ell = add(ell, scale(Scalar::from_index(F, static_cast<std::uint32_t>(c % order)), d));
      c /= order;
    }
    auto p = pair_from_ell(awi, ell);
    try {
      auto cl = clifford_of_pair(p);
      auto z = center_and_idempotents(*cl.carrier);
      if (cl.carrier->dim == 8 && z.split) {
        p.note = "characteristic 2: ell chosen by search (candidate " + std::to_string(code) +
                 "), Clifford algebra 8-dimensional with split center";
        return p;
      }
    } catch (const Error&) {
      // candidate rejected; keep searching
    }
  }
  fail(ErrorKind::SearchExhausted, "no ell with a split 8-dimensional Clifford algebra found");
}

}  // namespace quadcomp
