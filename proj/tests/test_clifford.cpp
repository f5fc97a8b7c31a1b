#include <random>

#include "doctest.h"
#include "quadcomp/clifford.hpp"

using namespace quadcomp;

namespace {
FieldRef Q() { return Field::rationals(); }
Vec fv(FieldRef f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Scalar(f, x));
  return v;
}
QuadraticSpace diag(std::initializer_list<long> xs) { return qf_make_diag(Q(), fv(Q(), xs)); }
QuadraticSpace hyperbolic(FieldRef f) {
  Mat m(f, 2, 2);
  m(0, 1) = Scalar::one(f);
  return qf_make(f, m);
}
std::size_t idx(std::initializer_list<std::size_t> gens) {
  std::size_t s = 0;
  for (auto g : gens) s |= std::size_t{1} << (g - 1);
  return s;
}
// class of a 4-dimensional central simple algebra through its norm-form symbol
BrauerClass2 class_of_quaternion(const StructureAlgebra& a) {
  auto [x, y] = quaternion_symbol(a);
  return BrauerClass2::quaternion(Q(), x.rational(), y.rational());
}
}  // namespace

TEST_CASE("full Clifford algebras") {
  auto c1 = clifford_full(diag({5}));
  CHECK(c1.carrier->dim == 2);
  CHECK(c1.carrier->mul(c1.images[0], c1.images[0]) == c1.carrier->scalar(Scalar(Q(), 5L)));
  auto c2 = clifford_full(diag({1, 1}));
  Vec e12 = c2.carrier->basis(idx({1, 2}));
  CHECK(c2.carrier->mul(e12, e12) == c2.carrier->scalar(Scalar(Q(), -1L)));
  FieldRef F2 = Field::finite(2);
  auto h = clifford_full(hyperbolic(F2));
  const auto& A = *h.carrier;
  Vec anti = add(A.mul(h.images[0], h.images[1]), A.mul(h.images[1], h.images[0]));
  CHECK(anti == A.unit);
}

TEST_CASE("dimension counts and canonical involutions") {
  for (FieldRef f : {Q(), Field::finite(3), Field::finite(2)}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      Mat m(f, n, n);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(f, static_cast<long>(i + 1));
      if (f->characteristic() == 2)
        for (std::size_t i = 0; i + 1 < n; i += 2) m(i, i + 1) = Scalar::one(f);
      auto q = qf_make(f, m);
      CHECK(clifford_full(q).carrier->dim == (std::size_t{1} << n));
      auto c0 = clifford_even(q);
      CHECK(c0.carrier->dim == (std::size_t{1} << (n - 1)));
      CHECK(c0.canonical.alg == c0.carrier);
    }
  }
}

TEST_CASE("even Clifford algebra examples") {
  auto hyp = clifford_even(diag({1, -1}));
  auto z = center_and_idempotents(*hyp.carrier);
  CHECK(hyp.carrier->dim == 2);
  CHECK(z.split);
  auto c3 = clifford_even(diag({1, 1, 1}));
  const auto& A = *c3.carrier;
  Vec u = A.basis(even_index(idx({1, 2}))), v = A.basis(even_index(idx({2, 3})));
  CHECK(A.mul(u, u) == A.scalar(Scalar(Q(), -1L)));
  CHECK(A.mul(v, v) == A.scalar(Scalar(Q(), -1L)));
  CHECK(A.mul(u, v) == scale(Scalar(Q(), -1L), A.mul(v, u)));
  CHECK(same_class(class_of_quaternion(A), BrauerClass2::quaternion(Q(), -1, -1)));
}

TEST_CASE("Clifford class formula against structure constants") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int rep = 0; rep < 25; ++rep) {
    long a = 0, b = 0, c = 0;
    while (a == 0) a = d(rng);
    while (b == 0) b = d(rng);
    while (c == 0) c = d(rng);
    auto q = qf_make_diag(Q(), fv(Q(), {a, b, c}));
    auto c0 = clifford_even(q);
    CHECK(same_class(class_of_quaternion(*c0.carrier), clifford_class(q).base_class));
    // even dimension: the split factors of C₀(q ⊥ ⟨1⟩)-free check on binary forms
    auto q2 = qf_make_diag(Q(), fv(Q(), {a, b}));
    auto full = clifford_full(q2);
    CHECK(same_class(class_of_quaternion(*full.carrier), clifford_class(q2).base_class));
  }
}

TEST_CASE("center invariant agrees with the center of C0") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 2 + 2 * (rep % 3);
    Vec a;
    for (std::size_t i = 0; i < n; ++i) {
      long v = 0;
      while (v == 0) v = d(rng);
      a.push_back(Scalar(Q(), v));
    }
    auto q = qf_make_diag(Q(), a);
    auto info = center_and_idempotents(*clifford_even(q).carrier);
    REQUIRE(info.descriptor);
    CHECK(info.split == center_invariant(q).split);
    CHECK(info.descriptor->isomorphic(center_invariant(q)));
  }
  for (FieldRef f : {Field::finite(2), Field::finite(3), Field::finite(2, 2)}) {
    std::uint32_t order = f->order();
    // all binary forms and a sample of 4-dimensional ones
    for (std::uint32_t x = 0; x < order * order * order; ++x) {
      Mat m(f, 2, 2);
      m(0, 0) = Scalar::from_index(f, x % order);
      m(0, 1) = Scalar::from_index(f, (x / order) % order);
      m(1, 1) = Scalar::from_index(f, x / order / order);
      auto q = qf_make(f, m);
      if (!is_regular(q)) continue;
      auto info = center_and_idempotents(*clifford_even(q).carrier);
      CHECK(info.split == center_invariant(q).split);
    }
  }
}

TEST_CASE("sandwich spaces") {
  auto F1 = base_field_algebra(Q());
  auto t1 = involution_attach(F1, LinearMap::identity(Q(), 1));
  auto s1 = sandwich_and_j2(t1);
  CHECK(s1.basis.size() == 1);
  CHECK(s1.sand[0].dense() == Mat::identity(Q(), 1));
  auto M2 = matrix_algebra(Q(), 2);
  auto awi = involution_attach(M2, transpose_involution(Q(), 2));
  auto sw = sandwich_and_j2(awi);
  // Sand : A ⊗ A → End(A) is bijective, and Sand(u) must vanish on Skew (dim 1)
  CHECK(sw.basis.size() == 16 - 4 * awi.skew.size());
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int rep = 0; rep < 10; ++rep) {
    Vec a, b, x;
    for (int i = 0; i < 4; ++i) {
      a.push_back(Scalar(Q(), d(rng)));
      b.push_back(Scalar(Q(), d(rng)));
      x.push_back(Scalar(Q(), d(rng)));
    }
    Vec u;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) u.push_back(a[i] * b[j]);
    CHECK(sandwich(*M2, u).apply(x) == M2->mul(M2->mul(a, x), b));
  }
}

TEST_CASE("Clifford algebras of quadratic pairs") {
  auto p = pair_from_form(diag({1, -1}));
  auto c = clifford_of_pair(p);
  CHECK(c.carrier->dim == 2);
  CHECK(center_and_idempotents(*c.carrier).split);
  auto p4 = pair_from_form(diag({1, 1, 1, 1}));
  auto c4 = clifford_of_pair(p4);
  CHECK(c4.carrier->dim == 8);
  auto s4 = clifford_structure(c4, 4);
  CHECK(s4.center.split);
  CHECK(s4.type == InvolutionType::Symplectic);
}

TEST_CASE("quaternion tensor pair has Clifford algebra Q1 x Q2") {
  auto q1 = quaternion(Q(), Scalar(Q(), -1L), Scalar(Q(), -1L));
  auto q2 = quaternion(Q(), Scalar(Q(), 2L), Scalar(Q(), 5L));
  auto p = pair_on_quaternion_tensor(q1, q2);
  CHECK(p.awi.alg->dim == 16);
  CHECK(p.awi.sym.size() == 10);
  CHECK(p.eval_f(p.awi.alg->unit) == Scalar(Q(), 2L));
  auto c = clifford_of_pair(p);
  CHECK(c.carrier->dim == 8);
  auto s = clifford_structure(c, 4);
  REQUIRE(s.center.split);
  auto cp = class_of_quaternion(**s.plus), cm = class_of_quaternion(**s.minus);
  auto h1 = BrauerClass2::quaternion(Q(), -1, -1), h2 = BrauerClass2::quaternion(Q(), 2, 5);
  CHECK(((same_class(cp, h1) && same_class(cm, h2)) || (same_class(cp, h2) && same_class(cm, h1))));
  FieldRef F2 = Field::finite(2);
  auto g1 = quaternion(F2, Scalar::one(F2), Scalar::one(F2));
  auto pc = pair_on_quaternion_tensor(g1, g1);
  CHECK_FALSE(pc.note.empty());
  auto cc = clifford_of_pair(pc);
  CHECK(cc.carrier->dim == 8);
  CHECK(clifford_structure(cc, 4).center.split);
}

TEST_CASE("split comparison with the even Clifford algebra") {
  for (auto q : {diag({1, -1}), diag({1, 1}), hyperbolic(Field::finite(2)), diag({1, 2, 3, 5})}) {
    auto cmp = split_compare(q);
    CHECK(cmp.verdict.ok);
    CHECK(cmp.bijective);
  }
}

TEST_CASE("structure reports follow the type table") {
  auto c5 = clifford_even(diag({1, 2, 3, 5, 7}));
  auto s5 = clifford_structure(c5, 5);
  CHECK(s5.type == InvolutionType::Symplectic);
  auto c6 = clifford_even(diag({1, 1, 1, 1, 1, 1}));
  CHECK(clifford_structure(c6, 6).type == InvolutionType::Unitary);
  auto c7 = clifford_even(diag({1, 1, 1, 1, 1, 1, 1}));
  CHECK(clifford_structure(c7, 7).type == InvolutionType::Orthogonal);
  FieldRef F2 = Field::finite(2);
  auto c1 = clifford_even(qf_make_diag(F2, fv(F2, {1})));
  CHECK(clifford_structure(c1, 1).type == InvolutionType::Orthogonal);
  CHECK(expected_canonical_type(F2, 3) == InvolutionType::Symplectic);
  CHECK(expected_canonical_type(Q(), 8) == InvolutionType::Orthogonal);
  CHECK(expected_canonical_type(Q(), 12) == InvolutionType::Symplectic);
  CHECK(expected_canonical_type(Q(), 16) == InvolutionType::Orthogonal);
}
