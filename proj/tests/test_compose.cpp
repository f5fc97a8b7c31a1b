#include "doctest.h"
#include "quadcomp/compose.hpp"

using namespace quadcomp;

namespace {
FieldRef Q() { return Field::rationals(); }
Vec fv(FieldRef f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Scalar(f, x));
  return v;
}
QuadraticSpace diag_vec(FieldRef f, std::initializer_list<long> xs) { return qf_make_diag(f, fv(f, xs)); }
BrauerClass2 quat(long a, long b) { return BrauerClass2::quaternion(Q(), a, b); }
BrauerClass2 triv() { return BrauerClass2::trivial(Q()); }
EtaleQuadratic ext(long m) { return quad_ext_info(Q(), Scalar(Q(), m)); }
const InvolutionType kSymp = InvolutionType::Symplectic;
const InvolutionType kOrth = InvolutionType::Orthogonal;

LinearMap first_factor(const AlgebraRef& a, const AlgebraRef& b) {
  LinearMap m{a->field, a->dim * b->dim, {}};
  for (std::size_t i = 0; i < a->dim; ++i) m.cols.push_back({{static_cast<std::uint32_t>(i * b->dim), Scalar::one(a->field)}});
  return m;
}
}  // namespace

TEST_CASE("extending the standard involution of a quaternion factor") {
  auto q1 = quaternion(Q(), Scalar(Q(), -1), Scalar(Q(), -1));
  auto q2 = quaternion(Q(), Scalar(Q(), 2), Scalar(Q(), 5));
  auto a = tensor(q1, q2);
  LinearMap sigma0 = tensor_map(quaternion_gamma(*q1), quaternion_gamma(*q2));
  LinearMap emb = first_factor(q1, q2);
  for (auto want : {kOrth, kSymp}) {
    auto e = extend_involution(a, sigma0, q1, quaternion_gamma(*q1), emb, want, 7);
    CHECK(e.result.inv.type == want);
    CHECK(e.algebra->dim == 16);
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(e.result.apply(emb.apply(q1->basis(j))) == emb.apply(quaternion_gamma(*q1).apply(q1->basis(j))));
  }
}

TEST_CASE("extension over the base field reaches both types on M2") {
  auto m2 = matrix_algebra(Q(), 2);
  auto f = base_field_algebra(Q());
  LinearMap emb{Q(), 4, {to_sparse(m2->unit)}};
  LinearMap id = LinearMap::identity(Q(), 1);
  auto o = extend_involution(m2, transpose_involution(Q(), 2), f, id, emb, kOrth);
  CHECK(o.result.inv.type == kOrth);
  CHECK(o.sign == 1);
  auto s = extend_involution(m2, transpose_involution(Q(), 2), f, id, emb, kSymp);
  CHECK(s.result.inv.type == kSymp);
  CHECK(s.sign == -1);
}

TEST_CASE("explicit extension of the swap involution") {
  auto f = base_field_algebra(Q());
  auto r = fxf_extension(f, LinearMap::identity(Q(), 1), 1, kSymp);
  CHECK(r.sign == -1);
  CHECK(r.result.inv.type == kSymp);
  CHECK(r.big->dim == 4);
  auto o = fxf_extension(f, LinearMap::identity(Q(), 1), 2, kOrth);
  CHECK(o.result.inv.type == kOrth);
  auto h = quaternion(Q(), Scalar(Q(), -1), Scalar(Q(), -1));
  auto hs = fxf_extension(h, quaternion_gamma(*h), 1, kSymp);
  CHECK(hs.sign == 1);
  CHECK(hs.result.inv.type == kSymp);
}

TEST_CASE("witnesses of the minimal degree") {
  SUBCASE("five-dimensional form, symplectic, class of C0") {
    auto p = invariant_profile(diag_vec(Q(), {1, 1, 1, -1, 1}));
    auto w = construct_composition(p, CompositionType::first_kind(kSymp, quat(-1, -1)));
    CHECK(w.degree == 4);
    CHECK(w.verdict.ok);
    CHECK(w.admissible.admissible);
    CHECK(recheck_witness(w).ok);
  }
  SUBCASE("five-dimensional form, orthogonal, trivial class") {
    auto p = invariant_profile(diag_vec(Q(), {1, 1, 1, -1, 1}));
    auto type = CompositionType::first_kind(kOrth, triv());
    auto w = construct_composition(p, type);
    CHECK(w.degree == (1UL << mcd(p, type).log2));
    CHECK(w.target.inv.type == kOrth);
  }
  SUBCASE("ternary form over GF(3)") {
    FieldRef f3 = Field::finite(3);
    auto p = invariant_profile(diag_vec(f3, {1, 1, 1}));
    auto w = construct_composition(p, CompositionType::first_kind(kSymp, BrauerClass2::trivial(f3)));
    CHECK(w.degree == 2);
    CHECK(w.target.inv.type == kSymp);
  }
  SUBCASE("six squares, unitary over the center") {
    auto p = invariant_profile(diag_vec(Q(), {1, 1, 1, 1, 1, 1}));
    auto type = CompositionType::unitary(ext(-1), p.clifford->restrict_to(ext(-1)));
    auto w = construct_composition(p, type);
    CHECK(w.degree == 4);
    CHECK(w.injective);
    CHECK(w.target.inv.type == InvolutionType::Unitary);
  }
  SUBCASE("quaternion tensor with split center") {
    auto p = invariant_profile_tensor(Q(), {-1, -1}, {2, 5});
    auto type = CompositionType::first_kind(kSymp, quat(-1, -1));
    auto w = construct_composition(p, type);
    CHECK(w.degree == (1UL << mcd(p, type).log2));
    CHECK(w.degree == 2);
    CHECK_FALSE(w.injective);
  }
  SUBCASE("excluded configurations raise not-covered") {
    auto p = invariant_profile(diag_vec(Q(), {1, 1, 1, 1, 1, 1}));
    auto pm = invariant_profile(diag_vec(Q(), {1, -1, 1, -1, 1, -1}));
    REQUIRE(pm.center_split());
    try {
      construct_composition(pm, CompositionType::unitary(ext(-1), triv().restrict_to(ext(-1))));
      FAIL("expected not-covered");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotCovered);
    }
    (void)p;
  }
}

TEST_CASE("hermitian composition from a witness") {
  auto q = diag_vec(Q(), {1, 1, 1, -1, 1});
  auto w = construct_composition(invariant_profile(q), CompositionType::first_kind(kSymp, quat(-1, -1)));
  Vec z = unit_vec(Q(), 5, 0);
  auto hc = hermitian_from_hom(w, z);
  const auto& b = *hc.values.alg;
  Vec y = add(b.basis(1), scale(Scalar(Q(), 3), b.basis(5)));
  CHECK(hc.apply_phi(z, y) == y);
  Vec iso = fv(Q(), {1, 0, 0, 1, 0});
  REQUIRE(q.eval(iso).is_zero());
  CHECK(is_zero(hc.apply_h(hc.apply_phi(iso, y), hc.apply_phi(iso, y))));
  CHECK(verify_hermitian_identity(hc, q).ok);

  auto bad = hc;
  bad.multipliers[2] = add(bad.multipliers[2], b.unit);
  auto check = verify_hermitian_identity(bad, q);
  CHECK_FALSE(check.ok);
  REQUIRE(check.x);
  CHECK(hc.apply_h(hc.apply_phi(*check.x, *check.y1), hc.apply_phi(*check.x, *check.y2)) ==
        scale(q.eval(*check.x), hc.apply_h(*check.y1, *check.y2)));
}

TEST_CASE("worked example") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{-1, -1}, {2, 3}, {1, 1}, {5, -7}}) {
    CAPTURE(a);
    CAPTURE(b);
    auto bundle = example1_reproduce(Q(), Scalar(Q(), a), Scalar(Q(), b));
    CHECK(bundle.relations_ok);
    CHECK(bundle.iso_verdict.ok);
    CHECK(bundle.bijective);
    CHECK(bundle.check1.ok);
    CHECK(bundle.check2.ok);
    CHECK(bundle.h1.epsilon == -1);
    CHECK(bundle.h2.epsilon == 1);
    CHECK(bundle.verified());

    // φ by hand: rows (x0 + x1 i + x2 j) y1 + (x3 + x4) y2 and (x3 − x4) y1 + (x0 − x1 i − x2 j) y2
    const auto& H = *bundle.quat;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        Vec x = unit_vec(Q(), 5, i), y = unit_vec(Q(), 8, j);
        Vec y1(y.begin(), y.begin() + 4), y2(y.begin() + 4, y.end());
        Vec l = add(H.scalar(x[0]), add(scale(x[1], H.basis(1)), scale(x[2], H.basis(2))));
        Vec r = sub(H.scalar(x[0]), add(scale(x[1], H.basis(1)), scale(x[2], H.basis(2))));
        Vec row1 = add(H.mul(l, y1), scale(x[3] + x[4], y2));
        Vec row2 = add(scale(x[3] - x[4], y1), H.mul(r, y2));
        Vec want = row1;
        want.insert(want.end(), row2.begin(), row2.end());
        CHECK(bundle.h1.apply_phi(x, y) == want);
      }
  }
}

TEST_CASE("the diagonal images diag(i, i), diag(j, j) violate the relations") {
  auto bundle = example1_reproduce(Q(), Scalar(Q(), -1), Scalar(Q(), -1));
  const auto& M = *bundle.target;
  Vec a2 = bundle.images[0], a3 = bundle.images[1];
  // flip the sign of the (2,2) entries
  for (std::size_t t = 0; t < 4; ++t) {
    a2[12 + t] = -a2[12 + t];
    a3[12 + t] = -a3[12 + t];
  }
  Vec anti = add(M.mul(a2, bundle.images[2]), M.mul(bundle.images[2], a2));
  CHECK_FALSE(is_zero(anti));
  (void)a3;
}

TEST_CASE("witnesses across center configurations") {
  std::vector<std::vector<long>> forms = {{1, 1, 1},       {1, -2, 3},       {1, 1, 1, 2},     {1, -1, 1, -1},
                                          {1, 1, 1, 1},    {1, 1, 1, -3},    {1, 1, 1, 1, 1, 1}, {1, -1, 1, -1, 1, -1},
                                          {1, 2, 3, 5, 7, 1}, {1, 1, -1, 2, 3}};
  std::vector<CompositionType> types;
  for (auto t : {kOrth, kSymp})
    for (auto c : {triv(), quat(-1, -1), quat(2, 3)}) types.push_back(CompositionType::first_kind(t, c));
  for (long m : {-1, 2, 1})
    for (auto c : {triv(), quat(-1, -1), quat(3, 5)}) types.push_back(CompositionType::unitary(ext(m), c.restrict_to(ext(m))));
  int built = 0, skipped = 0;
  for (const auto& xs : forms) {
    Vec d;
    for (long x : xs) d.push_back(Scalar(Q(), x));
    auto p = invariant_profile(qf_make_diag(Q(), d));
    for (const auto& type : types) {
      CAPTURE(p.form->to_string());
      CAPTURE(type.to_string());
      auto r = mcd(p, type);
      if (r.status == McdStatus::NotCovered) {
        CHECK_THROWS(construct_composition(p, type));
        ++skipped;
        continue;
      }
      auto w = construct_composition(p, type);
      ++built;
      CHECK(recheck_witness(w).ok);
      CHECK(w.degree % (1UL << r.log2) == 0);
      if (r.status == McdStatus::Exact) CHECK(w.degree == (1UL << r.log2));
    }
  }
  CHECK(built > 100);
  MESSAGE(built << " witnesses, " << skipped << " not covered");
}
