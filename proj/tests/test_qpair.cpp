#include <random>

#include "doctest.h"
#include "quadcomp/qpair.hpp"

using namespace quadcomp;

namespace {
FieldRef Q() { return Field::rationals(); }
Vec fv(FieldRef f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Scalar(f, x));
  return v;
}
}  // namespace

TEST_CASE("pair from a form") {
  auto q = qf_make_diag(Q(), fv(Q(), {1, -1}));
  auto p = pair_from_form(q);
  CHECK(pair_validate(p).ok);
  // φ_q(e₁ ⊗ e₁) = E₁₁·B has f-value q(e₁) = 1
  CHECK(p.eval_f(phi_q(q, fv(Q(), {1, 0}), fv(Q(), {1, 0}))) == Scalar(Q(), 1L));
  CHECK(p.eval_f(phi_q(q, fv(Q(), {1, 1}), fv(Q(), {1, 1}))).is_zero());
  // ½ is a valid ℓ in characteristic ≠ 2
  Vec half = p.awi.alg->scalar(Scalar(Q(), mpq_class(1, 2)));
  Vec diff = sub(p.ell, half);
  Echelon alt(Q(), 4);
  for (const auto& v : p.awi.alt) alt.insert(to_sparse(v));
  CHECK(is_zero(alt.reduce(diff)));
}

TEST_CASE("f is half the reduced trace away from characteristic 2") {
  for (auto diag : {fv(Q(), {1, 1}), fv(Q(), {2, -3, 5}), fv(Q(), {1, 1, 1, 1})}) {
    auto p = pair_from_form(qf_make_diag(Q(), diag));
    for (std::size_t i = 0; i < p.awi.sym.size(); ++i)
      CHECK(p.f[i] == reduced_trace_eval(*p.awi.alg, p.awi.sym[i]) * Scalar(Q(), mpq_class(1, 2)));
  }
}

TEST_CASE("f does not depend on the diagonalizing basis") {
  auto q = qf_make_diag(Q(), fv(Q(), {1, 2, 3}));
  Mat t = Mat::identity(Q(), 3);
  t(0, 1) = Scalar(Q(), 2L);
  t(1, 2) = Scalar(Q(), -1L);
  auto qt = q.transformed(t);
  auto p = pair_from_form(q), pt = pair_from_form(qt);
  // conjugating by T carries (σ_qt, f_qt) to (σ_q, f_q)
  auto tinv = *inverse(t);
  for (const auto& s : pt.awi.sym) {
    Mat x(Q(), 3, 3);
    for (std::size_t i = 0; i < 9; ++i) x(i / 3, i % 3) = s[i];
    Mat y = t * x * tinv;
    Vec yv;
    for (std::size_t i = 0; i < 9; ++i) yv.push_back(y(i / 3, i % 3));
    CHECK(p.eval_f(yv) == pt.eval_f(s));
  }
}

TEST_CASE("characteristic 2 hyperbolic plane") {
  FieldRef F2 = Field::finite(2);
  Mat m(F2, 2, 2);
  m(0, 1) = Scalar::one(F2);
  auto p = pair_from_form(qf_make(F2, m));
  CHECK(p.awi.inv.type == InvolutionType::Symplectic);
  CHECK(pair_validate(p).ok);
  auto sol = ell_element(p.awi, p.f);
  CHECK(sol.coset_directions.size() == p.awi.alt.size());
  Vec l2 = p.awi.alg->mul(sol.ell, sol.ell);
  CHECK(l2.size() == 4);
  // moving ℓ inside its Alt-coset keeps a valid pair
  std::mt19937 rng(1);
  for (int rep = 0; rep < 5; ++rep) {
    Vec a;
    for (int i = 0; i < 4; ++i) a.push_back(Scalar(F2, static_cast<long>(rng() % 2)));
    QuadraticPair moved = p;
    moved.ell = add(p.ell, sub(a, moved.awi.apply(a)));
    CHECK(pair_validate(moved).ok);
  }
  CHECK_THROWS_AS(pair_from_form(qf_make_diag(F2, fv(F2, {1, 1, 1}))), Error);
}

TEST_CASE("validation reports perturbed functionals") {
  auto p = pair_from_form(qf_make_diag(Q(), fv(Q(), {1, 1})));
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    QuadraticPair bad = p;
    bad.f[i] += Scalar(Q(), 1L);
    auto v = pair_validate(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.index.has_value());
  }
}

TEST_CASE("extended pairs") {
  FieldRef F2 = Field::finite(2);
  Mat m(F2, 3, 3);
  m(0, 0) = Scalar::one(F2);
  m(1, 2) = Scalar::one(F2);
  auto e = extended(qf_make(F2, m));
  CHECK(e.degree == 3);
  CHECK_THROWS_AS(extended(qf_make_diag(Q(), fv(Q(), {1, 1, 1}))), Error);
}
