#include "quadcomp/selftest.hpp"

#include <chrono>
#include <functional>
#include <random>

#include "quadcomp/compose.hpp"

namespace quadcomp {

namespace {

using Check = std::function<std::string()>;  // empty string means pass

SelftestItem timed(const std::string& name, const Check& body) {
  SelftestItem it;
  it.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    it.detail = body();
    it.ok = it.detail.empty();
  } catch (const std::exception& e) {
    it.ok = false;
    it.detail = e.what();
  }
  it.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return it;
}

QuadraticSpace diag_of(FieldRef f, const std::vector<long>& xs) {
  Vec d;
  for (long x : xs) d.push_back(Scalar(f, x));
  return qf_make_diag(f, d);
}

}  // namespace

std::vector<SelftestItem> run_selftest(std::uint64_t seed) {
  FieldRef Q = Field::rationals();
  std::vector<SelftestItem> out;

  out.push_back(timed("example1", [&]() -> std::string {
    for (auto [a, b] : std::vector<std::pair<long, long>>{{-1, -1}, {2, 3}, {1, 1}})
      if (!example1_reproduce(Q, Scalar(Q, a), Scalar(Q, b)).verified())
        return "certificates fail for (" + std::to_string(a) + ", " + std::to_string(b) + ")";
    return "";
  }));

  out.push_back(timed("split coherence", [&]() -> std::string {
    for (const auto& q : {diag_of(Q, {1, -1}), diag_of(Q, {1, 2, 3, 5}), diag_of(Field::finite(3), {1, 1})}) {
      auto cmp = split_compare(q);
      if (!cmp.verdict.ok || !cmp.bijective) return "pair Clifford algebra of " + q.to_string() + " differs from C0";
    }
    return "";
  }));

  out.push_back(timed("metric axioms", [&]() -> std::string {
    std::mt19937_64 rng(seed);
    const std::vector<long> pool = {-1, 2, 3, -3, 5, 6, -7, 10, 11, -13};
    auto pick = [&]() {
      std::vector<Symbol> s;
      for (int i = 0, m = static_cast<int>(rng() % 3); i < m; ++i)
        s.push_back({pool[rng() % pool.size()], pool[rng() % pool.size()]});
      return BrauerClass2::of_symbols(Q, s);
    };
    for (int t = 0; t < 40; ++t) {
      auto a = pick(), b = pick(), c = pick();
      if (metric(a, a) != 0 || metric(a, b) != metric(b, a)) return "symmetry or identity fails";
      if (metric(a, c) > metric(a, b) + metric(b, c)) return "triangle inequality fails";
      if (metric(class_product(a, b), class_product(a, c)) != metric(b, c)) return "translation invariance fails";
      if (invariant_support(a).size() % 2 != 0) return "odd number of ramified places for " + a.to_string();
    }
    return "";
  }));

  out.push_back(timed("mcd and witnesses", [&]() -> std::string {
    std::vector<std::pair<QuadraticSpace, CompositionType>> cases = {
        {diag_of(Q, {1, 1, 1, -1, 1}), CompositionType::first_kind(InvolutionType::Symplectic, BrauerClass2::quaternion(Q, -1, -1))},
        {diag_of(Q, {1, 1, 1}), CompositionType::first_kind(InvolutionType::Orthogonal, BrauerClass2::trivial(Q))},
        {diag_of(Field::finite(3), {1, 1, 1}),
         CompositionType::first_kind(InvolutionType::Symplectic, BrauerClass2::trivial(Field::finite(3)))},
        {diag_of(Q, {1, 1, 1}), CompositionType::unitary(quad_ext_info(Q, Scalar(Q, -1)),
                                                         BrauerClass2::trivial(Q).restrict_to(quad_ext_info(Q, Scalar(Q, -1))))},
        {diag_of(Q, {1, -1, 2, 3}), CompositionType::first_kind(InvolutionType::Symplectic, BrauerClass2::trivial(Q))},
    };
    for (const auto& [q, type] : cases) {
      auto p = invariant_profile(q);
      auto r = mcd(p, type);
      auto w = construct_composition(p, type, {seed, 4});
      if (!recheck_witness(w).ok) return "witness re-check fails for " + q.to_string();
      if (r.status == McdStatus::Exact && w.degree != (1UL << r.log2)) return "degree differs from mcd for " + q.to_string();
      if (r.log2 < lower_bound(p, type).log2) return "mcd below the lower bound for " + q.to_string();
    }
    return "";
  }));

  out.push_back(timed("dbound", [&]() -> std::string {
    auto h = quaternion(Q, Scalar(Q, -1), Scalar(Q, -1));
    auto m4 = matrix_algebra(Q, 4);
    if (!hom_verify(left_regular(*h), *h, *m4).ok) return "regular representation is not a homomorphism";
    if (dbound_degree(2, BrauerClass2::trivial(Q), BrauerClass2::quaternion(Q, -1, -1)) != 4) return "dbound differs from 4";
    return "";
  }));

  out.push_back(timed("exclusions", [&]() -> std::string {
    auto p = invariant_profile(diag_of(Q, {1, -1, 1, -1, 1, -1}));
    auto s = quad_ext_info(Q, Scalar(Q, -1));
    auto r = mcd(p, CompositionType::unitary(s, BrauerClass2::trivial(Q).restrict_to(s)));
    if (r.status != McdStatus::NotCovered) return "excluded configuration reported as " + std::string(to_string(r.status));
    return "";
  }));
  return out;
}

}  // namespace quadcomp
