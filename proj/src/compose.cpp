#include "quadcomp/compose.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <set>

namespace quadcomp {

namespace {

Scalar sc(FieldRef f, long v) { return Scalar(f, v); }

Vec col_of(const LinearMap& m, std::size_t j) { return to_dense(m.field, m.rows, m.cols[j]); }

// v ⊗ 1 in X ⊗ G
Vec kron_unit(const Vec& v, const StructureAlgebra& g) {
  Vec out = zero_vec(g.field, v.size() * g.dim);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero())
      for (std::size_t j = 0; j < g.dim; ++j) out[i * g.dim + j] = v[i] * g.unit[j];
  return out;
}

LinearMap into_tensor(const LinearMap& m, const StructureAlgebra& g) {
  LinearMap r{m.field, m.rows * g.dim, {}};
  for (std::size_t j = 0; j < m.cols.size(); ++j) r.cols.push_back(to_sparse(kron_unit(col_of(m, j), g)));
  return r;
}

Scalar random_scalar(FieldRef f, std::mt19937_64& rng) {
  if (f->is_rational()) return sc(f, static_cast<long>(rng() % 7) - 3);
  return Scalar::from_index(f, static_cast<std::uint32_t>(rng() % f->order()));
}

unsigned long degree_of(const StructureAlgebra& b, std::size_t zdim) {
  auto m = static_cast<unsigned long>(std::llround(std::sqrt(static_cast<double>(b.dim / zdim))));
  if (m * m * zdim != b.dim) fail(ErrorKind::CertificationFailure, "target algebra dimension is not a square over its center");
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Extension of involutions

Extension extend_involution(const AlgebraRef& a_in, const LinearMap& sigma0_in, const AlgebraRef& b,
                            const LinearMap& tau, const LinearMap& emb_in, std::optional<InvolutionType> want,
                            std::uint64_t seed, unsigned budget) {
  FieldRef F = a_in->field;
  require(b->field == F, "extend_involution over different fields");
  require(emb_in.cols.size() == b->dim && emb_in.rows == a_in->dim, "embedding has the wrong shape");
  std::mt19937_64 rng(seed);
  Extension ext;
  AlgebraRef a = a_in;
  LinearMap sigma0 = sigma0_in, emb = emb_in;
  unsigned attempts = 0;
  std::optional<Extension> fallback;
  for (int round = 0; round < 2; ++round) {
    const StructureAlgebra& A = *a;
    const std::size_t n = A.dim;
    std::vector<int> signs = F->characteristic() == 2 ? std::vector<int>{1} : std::vector<int>{1, -1};
    for (int sign : signs) {
      // columns: u = e_j ↦ (e_j σ₀(β b) − β(τ b) e_j)_b ⊕ (σ₀(e_j) − sign e_j)
      std::vector<std::pair<Vec, Vec>> conds;
      for (const auto& g : b->gens()) conds.emplace_back(sigma0.apply(emb.apply(g)), emb.apply(tau.apply(g)));
      LinearMap sys{F, n * (conds.size() + 1), {}};
      for (std::size_t j = 0; j < n; ++j) {
        Vec ej = A.basis(j);
        SparseVec col;
        for (std::size_t c = 0; c < conds.size(); ++c) {
          Vec r = sub(A.mul(ej, conds[c].first), A.mul(conds[c].second, ej));
          for (std::size_t i = 0; i < n; ++i)
            if (!r[i].is_zero()) col.emplace_back(static_cast<std::uint32_t>(c * n + i), r[i]);
        }
        Vec s = sub(sigma0.apply(ej), scale(sc(F, sign), ej));
        for (std::size_t i = 0; i < n; ++i)
          if (!s[i].is_zero()) col.emplace_back(static_cast<std::uint32_t>(conds.size() * n + i), s[i]);
        sys.cols.push_back(std::move(col));
      }
      auto ker = sparse_kernel(sys);
      if (ker.empty()) continue;
      for (unsigned t = 0; t < budget; ++t) {
        ++attempts;
        Vec u = zero_vec(F, n);
        for (const auto& k : ker) axpy(u, random_scalar(F, rng), k);
        if (is_zero(u) || !A.inverse(u)) continue;
        Extension e;
        e.algebra = a;
        e.embedding = emb;
        e.u = u;
        e.sign = sign;
        e.result = involution_attach(a, inner_twist(A, sigma0, u));
        e.trace = ext.trace;
        e.trace.push_back("u found after " + std::to_string(attempts) + " draws, sigma0(u) = " +
                          std::to_string(sign) + " u, type " + to_string(e.result.inv.type));
        for (std::size_t j = 0; j < b->dim; ++j)
          if (e.result.apply(emb.apply(b->basis(j))) != emb.apply(tau.apply(b->basis(j))))
            fail(ErrorKind::CertificationFailure, "extended involution does not restrict to tau");
        e.attempts = attempts;
        if (!want || F->characteristic() == 2 || e.result.inv.type == *want) return e;
        if (!fallback) fallback = e;
        break;
      }
    }
    if (!want || round == 1) break;
    // neither sign reached the type: stabilize by M₂(F) with its symplectic involution
    auto m2 = matrix_algebra(F, 2);
    AlgebraRef big = tensor(a, m2);
    sigma0 = tensor_map(sigma0, sigma_pm(F, -1));
    emb = into_tensor(emb, *m2);
    a = big;
    ext.trace.push_back("no extension of the wanted type; replaced A by A (x) M2(F)");
  }
  if (fallback && !want) return *fallback;
  fail(ErrorKind::SearchExhausted, "no invertible u within the search budget (" + std::to_string(attempts) + " draws)");
}

FxFExtension fxf_extension(const AlgebraRef& d, const LinearMap& bar, std::size_t k, InvolutionType want) {
  FieldRef F = d->field;
  require(want != InvolutionType::Unitary, "the extension is of the first kind");
  auto mk = matrix_algebra(d, k);
  LinearMap star = tensor_map(transpose_involution(F, k), bar);
  FxFExtension r;
  r.small = product(mk, mk);
  r.big = matrix_algebra(mk, 2);
  const std::size_t dm = mk->dim;
  r.embedding = LinearMap{F, r.big->dim, {}};
  r.rho = LinearMap{F, 2 * dm, {}};
  for (std::size_t x = 0; x < dm; ++x) {
    r.embedding.cols.push_back({{static_cast<std::uint32_t>(x), Scalar::one(F)}});
    SparseVec c;
    for (const auto& [i, v] : star.cols[x]) c.emplace_back(static_cast<std::uint32_t>(dm + i), v);
    r.rho.cols.push_back(std::move(c));
  }
  for (std::size_t x = 0; x < dm; ++x) {
    r.embedding.cols.push_back({{static_cast<std::uint32_t>(3 * dm + x), Scalar::one(F)}});
    r.rho.cols.push_back(star.cols[x]);
  }
  for (int sign : {-1, 1}) {
    auto awi = involution_attach(r.big, tensor_map(sigma_pm(F, sign), star));
    if (awi.inv.type != want && F->characteristic() != 2) continue;
    for (std::size_t j = 0; j < r.small->dim; ++j) {
      Vec x = r.small->basis(j);
      if (awi.apply(r.embedding.apply(x)) != r.embedding.apply(r.rho.apply(x)))
        fail(ErrorKind::CertificationFailure, "fxf extension does not restrict to the swap involution");
    }
    r.result = awi;
    r.sign = sign;
    return r;
  }
  fail(ErrorKind::CertificationFailure, "neither sign gives the wanted type");
}

// ---------------------------------------------------------------------------
// Witness construction

CliffordAlgebra composition_source(const InvariantProfile& p, unsigned truncation_cap) {
  switch (p.kind) {
    case ObjectKind::Form:
    case ObjectKind::OddSpace:
      return clifford_even(*p.form);
    case ObjectKind::QuaternionTensor: {
      FieldRef F = p.field;
      const auto& [q1, q2] = *p.quaternions;
      auto pair = pair_on_quaternion_tensor(quaternion(F, Scalar(F, q1.a), Scalar(F, q1.b)),
                                            quaternion(F, Scalar(F, q2.a), Scalar(F, q2.b)));
      return clifford_of_pair(pair, truncation_cap);
    }
    case ObjectKind::Generic:
      break;
  }
  fail(ErrorKind::InvalidInput, "constructions need a form or quaternion-tensor model of the pair");
}

namespace {

struct Source {
  CliffordAlgebra c;
  std::optional<CliffordStructure> st;
};

Source build_source(const InvariantProfile& p, const ConstructOptions& opts) {
  Source s;
  s.c = composition_source(p, opts.truncation_cap);
  s.st = clifford_structure(s.c, p.n);
  return s;
}

// An intermediate (X, ρ-choices) with a hom C → X compatible with σ̲ and ρ.
struct Stage {
  AlgebraRef x;
  std::vector<AlgebraWithInvolution> invs;
  LinearMap map;
  BrauerClass2 cls;  ///< class of X over F
  std::string note;
};

Stage stage_identity(const Source& s, const BrauerClass2& cls) {
  Stage st;
  st.x = s.c.carrier;
  st.invs = {s.c.canonical};
  st.map = LinearMap::identity(s.c.carrier->field, s.c.carrier->dim);
  st.cls = cls;
  st.note = "C is central simple over F";
  return st;
}

Stage stage_projection(const Source& s, bool plus, const BrauerClass2& cls) {
  const StructureAlgebra& C = *s.c.carrier;
  FieldRef F = C.field;
  AlgebraRef part = plus ? *s.st->plus : *s.st->minus;
  Vec e = plus ? *s.st->center.idempotent : sub(C.unit, *s.st->center.idempotent);
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < part->dim; ++i) {
    // subalgebra basis vectors are the chosen spanning elements of eC
    basis.push_back(part->basis(i));
  }
  // coordinates of e·x in the basis of the factor, via the factor's embedding into C
  std::vector<Vec> emb_cols;
  {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < C.dim; ++i) vs.push_back(C.mul(e, C.basis(i)));
    emb_cols = span_basis(F, C.dim, vs);
  }
  if (emb_cols.size() != part->dim) fail(ErrorKind::CertificationFailure, "factor dimension mismatch");
  Coordinates coords(F, C.dim, emb_cols);
  Stage st;
  st.x = part;
  st.map = LinearMap{F, part->dim, {}};
  for (std::size_t i = 0; i < C.dim; ++i) {
    auto c = coords.of(C.mul(e, C.basis(i)));
    if (!c) fail(ErrorKind::CertificationFailure, "projection leaves the factor");
    st.map.cols.push_back(to_sparse(*c));
  }
  LinearMap rho{F, part->dim, {}};
  for (std::size_t i = 0; i < part->dim; ++i) {
    auto c = coords.of(s.c.canonical.apply(emb_cols[i]));
    if (!c) fail(ErrorKind::CertificationFailure, "canonical involution does not preserve the factor");
    rho.cols.push_back(to_sparse(*c));
  }
  st.invs = {involution_attach(part, rho, InvolutionKind::First)};
  st.cls = cls;
  st.note = std::string("projection onto C") + (plus ? "+" : "-");
  return st;
}

BrauerClass2 full_class(const QuadraticSpace& q) {
  if (!q.field->is_rational()) return BrauerClass2::trivial(q.field);
  QuadraticSpace d = q.is_diagonal() ? q : qf_make_diag(q.field, diagonalize(q).diag);
  return clifford_class(d).base_class;
}

std::vector<long> lambda_candidates(const BrauerClass2& x, const EtaleQuadratic& z) {
  std::set<long> primes = {2};
  for (const auto& bp : invariant_support(x))
    if (!bp.v.is_infinite()) primes.insert(static_cast<long>(bp.v.prime));
  if (z.squarefree)
    for (const auto& [pr, e] : factorize(abs(*z.squarefree))) primes.insert(pr.get_si());
  std::vector<long> ps(primes.begin(), primes.end());
  std::vector<long> out;
  std::set<long> seen;
  auto push = [&](long v) {
    if (seen.insert(v).second) out.push_back(v);
  };
  push(1);
  push(-1);
  for (std::size_t mask = 1; mask < (std::size_t{1} << std::min<std::size_t>(ps.size(), 10)); ++mask) {
    long v = 1;
    for (std::size_t i = 0; i < ps.size() && i < 10; ++i)
      if (mask >> i & 1) v *= ps[i];
    push(v);
    push(-v);
  }
  for (long v = 2; v <= 60; ++v) {
    push(v);
    push(-v);
  }
  return out;
}

// C₀(q) ⊂ C(λq) with eₛ ↦ λ^{−|S|/2} e′ₛ, both reversal and conjugation as involutions.
Stage stage_full(const Source& s, const QuadraticSpace& q, const Scalar& lambda) {
  FieldRef F = q.field;
  auto full = clifford_full(q.scaled(lambda));
  const StructureAlgebra& X = *full.carrier;
  Stage st;
  st.x = full.carrier;
  st.map = LinearMap{F, X.dim, {}};
  Scalar linv = lambda.inverse();
  for (auto m : s.c.masks) {
    Scalar c = linv.pow(static_cast<std::uint64_t>(std::popcount(m) / 2));
    st.map.cols.push_back({{m, c}});
  }
  LinearMap conj = full.canonical.inv.map;
  for (std::size_t j = 0; j < conj.cols.size(); ++j)
    if (std::popcount(static_cast<unsigned>(j)) % 2 == 1) conj.cols[j] = sparse_scale(sc(F, -1), conj.cols[j]);
  st.invs = {full.canonical};
  if (F->characteristic() != 2) st.invs.push_back(involution_attach(full.carrier, conj, InvolutionKind::First));
  st.cls = full_class(q.scaled(lambda));
  st.note = "C0(q) inside C(" + lambda.to_string() + " q)";
  return st;
}

// Picks λ minimizing the score of [C(λq)]; stops at score 0.
Stage stage_full_search(const Source& s, const QuadraticSpace& q, const EtaleQuadratic& z,
                        const std::function<unsigned(const BrauerClass2&)>& score, std::vector<std::string>& trace) {
  FieldRef F = q.field;
  if (!F->is_rational()) return stage_full(s, q, Scalar::one(F));
  BrauerClass2 base = full_class(q);
  std::optional<long> best;
  unsigned best_score = ~0u;
  for (long l : lambda_candidates(base, z)) {
    unsigned sc_ = score(full_class(q.scaled(Scalar(F, l))));
    if (sc_ < best_score) {
      best_score = sc_;
      best = l;
    }
    if (sc_ == 0) break;
  }
  trace.push_back("lambda = " + std::to_string(*best) + " (class distance " + std::to_string(best_score) + ")");
  return stage_full(s, q, Scalar(F, *best));
}

struct Twist {
  AlgebraRef g;
  LinearMap tau_g;
  InvolutionType type = InvolutionType::Orthogonal;
};

AlgebraRef quaternion_of(FieldRef F, const BrauerClass2& cls) {
  auto sym = quaternion_representative(cls);
  if (!sym) fail(ErrorKind::SearchExhausted, "no quaternion symbol found for " + cls.to_string());
  return quaternion(F, Scalar(F, sym->a), Scalar(F, sym->b));
}

// The two first-kind involutions γ and Int(i) ∘ γ on a quaternion algebra.
std::vector<Twist> quaternion_twists(const AlgebraRef& g) {
  FieldRef F = g->field;
  std::vector<Twist> out;
  LinearMap gamma = quaternion_gamma(*g);
  out.push_back({g, gamma, involution_attach(g, gamma).inv.type});
  if (F->characteristic() != 2) {
    LinearMap t = inner_twist(*g, gamma, g->basis(1));
    out.push_back({g, t, involution_attach(g, t).inv.type});
  }
  return out;
}

struct Built {
  AlgebraRef b;
  LinearMap tau;
  LinearMap hom;
  BrauerClass2 cls;
  std::vector<std::string> trace;
};

// First kind: B = X ⊗ G with [G] = c·[X], or M₂(F) when only the type is wrong.
Built finish_first_kind(const Stage& st, const BrauerClass2& c, InvolutionType t) {
  FieldRef F = st.x->field;
  const bool char2 = F->characteristic() == 2;
  Built out;
  out.trace.push_back(st.note);
  BrauerClass2 rest = class_product(c, st.cls);
  if (is_trivial(rest)) {
    for (const auto& rho : st.invs)
      if (char2 || rho.inv.type == t) {
        out.b = st.x;
        out.tau = rho.inv.map;
        out.hom = st.map;
        out.cls = st.cls;
        out.trace.push_back(std::string("[X] = c and X carries a ") + to_string(rho.inv.type) + " extension");
        return out;
      }
  }
  AlgebraRef g = is_trivial(rest) ? quaternion(F, Scalar::one(F), Scalar::one(F)) : quaternion_of(F, rest);
  out.trace.push_back(is_trivial(rest) ? "type mismatch at [X] = c: tensor with M2(F)"
                                       : "tensor with a quaternion algebra of class c [X]");
  for (const auto& rho : st.invs)
    for (const auto& tw : quaternion_twists(g))
      if (char2 || tensor_type(rho.inv.type, tw.type) == t) {
        out.b = tensor(st.x, g);
        out.tau = tensor_map(rho.inv.map, tw.tau_g);
        out.hom = into_tensor(st.map, *g);
        out.cls = class_product(st.cls, BrauerClass2::quaternion(F, 1, 1));
        out.cls = c;
        return out;
      }
  fail(ErrorKind::CertificationFailure, "no involution of the requested type on X (x) G");
}

// Unitary: B = X ⊗ G₀ ⊗ S with res_S [X ⊗ G₀] = c′ and τ = ρ ⊗ γ ⊗ ι.
Built finish_unitary(const Stage& st, const EtaleQuadratic& s, const BrauerClass2& c0) {
  FieldRef F = st.x->field;
  Built out;
  out.trace.push_back(st.note);
  BrauerClass2 rest = class_product(c0, st.cls);
  AlgebraRef x = st.x;
  LinearMap tau = st.invs.front().inv.map;
  LinearMap hom = st.map;
  BrauerClass2 cls = st.cls;
  if (!is_trivial(rest.restrict_to(s))) {
    AlgebraRef g = quaternion_of(F, rest);
    hom = into_tensor(hom, *g);
    tau = tensor_map(tau, quaternion_gamma(*g));
    x = tensor(x, g);
    cls = c0;
    out.trace.push_back("tensor with a quaternion algebra of class c' [X]");
  }
  auto salg = etale_algebra(s);
  out.b = tensor(x, salg);
  out.tau = tensor_map(tau, etale_iota(s));
  out.hom = into_tensor(hom, *salg);
  out.cls = cls.restrict_to(s);
  out.trace.push_back("extend scalars to S = " + s.to_string() + " with tau = rho (x) iota");
  return out;
}

}  // namespace

CompositionWitness construct_composition(const InvariantProfile& p, const CompositionType& type,
                                         const ConstructOptions& opts) {
  McdResult r = mcd(p, type);
  if (r.status == McdStatus::NotCovered)
    fail(ErrorKind::NotCovered, r.case_label + ": " + r.detail);
  FieldRef F = p.field;
  Source src = build_source(p, opts);
  CompositionWitness w;
  w.type = type;
  w.mcd = r;
  w.seed = opts.seed;
  w.source = src.c.canonical;
  w.form = p.form;
  w.trace.push_back("case " + r.case_label);
  const bool unitary = type.t == InvolutionType::Unitary;
  std::optional<BrauerClass2> c0;
  if (unitary) c0 = type.c_prime->over() ? type.c_prime->unrestricted() : *type.c_prime;

  // score of a candidate class of X: distance to the target over F or over S
  auto score = [&](const BrauerClass2& cls) -> unsigned {
    if (!unitary) return metric(*type.c, cls);
    return metric(c0->restrict_to(*type.s), cls.restrict_to(*type.s));
  };

  Built built;
  if (unitary && p.parity == ParityCase::TwoMod4 && p.center->isomorphic(*type.s)) {
    // B = C ⊗ G₀ over Z ≅ S with τ = σ̲ ⊗ γ
    BrauerClass2 cz = p.center_split() ? *p.plus : *p.clifford;
    BrauerClass2 rest = class_product(*c0, cz);
    bool need_g = p.center_split() ? !is_trivial(rest) : !is_trivial(rest.restrict_to(*p.center));
    built.trace.push_back("identity route C -> C over Z = S");
    if (!need_g) {
      built.b = src.c.carrier;
      built.tau = src.c.canonical.inv.map;
      built.hom = LinearMap::identity(F, src.c.carrier->dim);
    } else {
      AlgebraRef g = quaternion_of(F, rest);
      built.b = tensor(src.c.carrier, g);
      built.tau = tensor_map(src.c.canonical.inv.map, quaternion_gamma(*g));
      built.hom = into_tensor(LinearMap::identity(F, src.c.carrier->dim), *g);
      built.trace.push_back("tensor with a quaternion algebra of class c' [C]");
    }
    built.cls = type.c_prime->over() ? *type.c_prime : type.c_prime->restrict_to(*type.s);
  } else {
    Stage st;
    if (p.parity == ParityCase::Odd) {
      st = stage_identity(src, *p.clifford);
    } else if (p.center_split() && p.parity == ParityCase::ZeroMod4) {
      bool plus = score(*p.plus) <= score(*p.minus);
      st = stage_projection(src, plus, plus ? *p.plus : *p.minus);
    } else {
      if (!p.form) fail(ErrorKind::InvalidInput, "this center configuration is constructed through the full Clifford algebra of a form");
      st = stage_full_search(src, *p.form, *p.center, score, w.trace);
    }
    built = unitary ? finish_unitary(st, *type.s, *c0) : finish_first_kind(st, *type.c, type.t);
  }
  for (auto& t : built.trace) w.trace.push_back(t);

  w.target = involution_attach(built.b, built.tau);
  w.hom = built.hom;
  w.target_class = built.cls;
  w.degree = degree_of(*built.b, unitary ? 2 : 1);
  w.injective = sparse_rank(w.hom) == src.c.carrier->dim;
  w.verdict = hom_verify(w.hom, *src.c.carrier, *built.b, &src.c.canonical.inv.map, &built.tau);
  if (!w.verdict.ok) fail(ErrorKind::CertificationFailure, "witness is not a homomorphism: " + w.verdict.detail);
  auto v = recheck_witness(w);
  if (!v.ok) fail(ErrorKind::CertificationFailure, v.detail);
  w.admissible = admissible_degree(p, type, w.degree, w.injective);
  if (!w.admissible.admissible)
    fail(ErrorKind::CertificationFailure, "witness degree " + std::to_string(w.degree) + " is not admissible (" +
                                              w.admissible.case_used + ")");
  const unsigned long value = 1UL << r.log2;
  if (r.status == McdStatus::Exact && w.degree != value)
    fail(ErrorKind::CertificationFailure, "witness degree " + std::to_string(w.degree) + " differs from the exact value " +
                                              std::to_string(value));
  if (r.status == McdStatus::MultipleOnly && w.degree % value != 0)
    fail(ErrorKind::CertificationFailure, "witness degree is not a multiple of the minimal value");
  if (w.degree != value) w.trace.push_back("degree " + std::to_string(w.degree) + " is a multiple of the minimal value");
  return w;
}

HomVerdict recheck_witness(const CompositionWitness& w) {
  HomVerdict v = hom_verify(w.hom, *w.source.alg, *w.target.alg, &w.source.inv.map, &w.target.inv.map);
  if (!v.ok) return v;
  const bool unitary = w.type.t == InvolutionType::Unitary;
  FieldRef F = w.source.alg->field;
  InvolutionType got = involution_type(w.target);
  if (unitary && got != InvolutionType::Unitary) return {false, "target involution is not unitary", std::nullopt};
  if (!unitary && got == InvolutionType::Unitary) return {false, "target involution is not of the first kind", std::nullopt};
  if (!unitary && F->characteristic() != 2 && got != w.type.t)
    return {false, std::string("target involution is ") + to_string(got), std::nullopt};
  if (!unitary && !same_class(w.target_class, *w.type.c)) return {false, "target class differs from c", std::nullopt};
  if (unitary) {
    const BrauerClass2& cp = *w.type.c_prime;
    BrauerClass2 want = cp.over() ? cp : cp.restrict_to(*w.type.s);
    if (!same_class(w.target_class, want)) return {false, "target class differs from c'", std::nullopt};
  }
  if (degree_of(*w.target.alg, unitary ? 2 : 1) != w.degree) return {false, "recorded degree is wrong", std::nullopt};
  if (w.mcd.case_label.find("4k+2") != std::string::npos && sparse_rank(w.hom) != w.source.alg->dim)
    return {false, "composition of a 4k+2 pair is not injective", std::nullopt};
  return {};
}

// ---------------------------------------------------------------------------
// Hermitian compositions

Vec HermitianComposition::apply_phi(const Vec& x, const Vec& y) const {
  if (regular) {
    const StructureAlgebra& b = *values.alg;
    Vec m = b.zero();
    for (std::size_t i = 0; i < n; ++i)
      if (!x[i].is_zero()) m = add(m, scale(x[i], multipliers[i]));
    return b.mul(m, y);
  }
  Vec out = zero_vec(field, dim_e);
  for (std::size_t i = 0; i < n; ++i)
    if (!x[i].is_zero())
      for (std::size_t j = 0; j < dim_e; ++j)
        if (!y[j].is_zero()) out = add(out, scale(x[i] * y[j], phi[i][j]));
  return out;
}

Vec HermitianComposition::apply_h(const Vec& y1, const Vec& y2) const {
  const StructureAlgebra& d = *values.alg;
  if (regular) return d.mul(values.apply(y1), y2);
  Vec out = d.zero();
  for (std::size_t a = 0; a < dim_e; ++a)
    if (!y1[a].is_zero())
      for (std::size_t b = 0; b < dim_e; ++b)
        if (!y2[b].is_zero()) out = add(out, scale(y1[a] * y2[b], h_table[a * dim_e + b]));
  return out;
}

namespace {

// z·eᵢ in C₀(q) coordinates, computed in the full Clifford algebra.
std::vector<Vec> z_times_basis(const QuadraticSpace& q, const Vec& z, const CliffordAlgebra& c0) {
  auto full = clifford_full(q);
  const StructureAlgebra& C = *full.carrier;
  Vec zf = C.zero();
  for (std::size_t j = 0; j < q.n; ++j) zf = add(zf, scale(z[j], full.images[j]));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < q.n; ++i) {
    Vec prod = C.mul(zf, full.images[i]);
    Vec even = c0.carrier->zero();
    for (std::size_t m = 0; m < prod.size(); ++m) {
      if (prod[m].is_zero()) continue;
      if (std::popcount(static_cast<unsigned>(m)) % 2 != 0)
        fail(ErrorKind::CertificationFailure, "z x has an odd component");
      even[even_index(static_cast<std::uint32_t>(m))] = prod[m];
    }
    out.push_back(even);
  }
  return out;
}

}  // namespace

HermitianComposition hermitian_from_hom(const CompositionWitness& w, const Vec& z) {
  if (!w.form) fail(ErrorKind::InvalidInput, "hermitian compositions need a split pair (a quadratic form)");
  const QuadraticSpace& q = *w.form;
  require(z.size() == q.n, "z has the wrong length");
  if (!q.eval(z).is_one()) fail(ErrorKind::InvalidInput, "q(z) != 1");
  auto c0 = clifford_even(q);
  if (c0.carrier->dim != w.source.alg->dim) fail(ErrorKind::InvalidInput, "witness source is not C0(V, q)");
  HermitianComposition hc;
  hc.field = q.field;
  hc.n = q.n;
  hc.regular = true;
  hc.values = w.target;
  hc.dim_e = w.target.alg->dim;
  hc.z = z;
  hc.epsilon = 1;
  hc.normalization = Scalar::one(q.field);
  for (const auto& v : z_times_basis(q, z, c0)) hc.multipliers.push_back(w.hom.apply(v));
  auto check = verify_hermitian_identity(hc, q);
  if (!check.ok) fail(ErrorKind::CertificationFailure, "hermitian identity fails: " + check.detail);
  return hc;
}

HermitianCheck verify_hermitian_identity(const HermitianComposition& hc, const QuadraticSpace& q) {
  FieldRef F = hc.field;
  HermitianCheck out;
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < hc.n; ++i) xs.push_back(unit_vec(F, hc.n, i));
  for (std::size_t i = 0; i < hc.n; ++i)
    for (std::size_t j = i + 1; j < hc.n; ++j) xs.push_back(add(unit_vec(F, hc.n, i), unit_vec(F, hc.n, j)));
  std::vector<Vec> ys;
  if (hc.regular) {
    ys.push_back(hc.values.alg->unit);
    if (hc.dim_e <= 16)
      for (std::size_t j = 0; j < hc.dim_e; ++j) ys.push_back(unit_vec(F, hc.dim_e, j));
  } else {
    for (std::size_t j = 0; j < hc.dim_e; ++j) ys.push_back(unit_vec(F, hc.dim_e, j));
  }
  for (const auto& x : xs) {
    Scalar qx = q.eval(x);
    std::vector<Vec> images;
    for (const auto& y : ys) images.push_back(hc.apply_phi(x, y));
    for (std::size_t a = 0; a < ys.size(); ++a)
      for (std::size_t b = 0; b < ys.size(); ++b) {
        ++out.checks;
        Vec lhs = hc.apply_h(images[a], images[b]);
        Vec rhs = scale(qx, hc.apply_h(ys[a], ys[b]));
        if (lhs != rhs) {
          out.ok = false;
          out.x = x;
          out.y1 = ys[a];
          out.y2 = ys[b];
          out.detail = "h(phi(x,y1), phi(x,y2)) != q(x) h(y1,y2) at check " + std::to_string(out.checks);
          return out;
        }
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The worked example

namespace {

// Quaternion entries (basis 1, i, j, ij) into M₂(Q), basis ((r·2 + c)·4 + t).
Vec mat2(const StructureAlgebra& m, const std::vector<Vec>& e) {
  Vec out = m.zero();
  for (std::size_t rc = 0; rc < 4; ++rc)
    for (std::size_t t = 0; t < 4; ++t) out[rc * 4 + t] = e[rc][t];
  return out;
}

Vec entry(const Vec& m, std::size_t r, std::size_t c) {
  return Vec(m.begin() + static_cast<long>((r * 2 + c) * 4), m.begin() + static_cast<long>((r * 2 + c) * 4 + 4));
}

}  // namespace

Example1Bundle example1_reproduce(FieldRef F, const Scalar& a, const Scalar& b) {
  require(F->characteristic() != 2, "the worked example needs characteristic != 2");
  require(!a.is_zero() && !b.is_zero(), "a and b must be nonzero");
  Example1Bundle out;
  out.a = a;
  out.b = b;
  Scalar one = Scalar::one(F), zero = Scalar::zero(F);
  out.q = qf_make_diag(F, {one, -a, -b, -one, one});
  out.q_prime = qf_make_diag(F, {a, b, one, -one});
  out.quat = quaternion(F, a, b);
  const StructureAlgebra& Q = *out.quat;
  out.target = matrix_algebra(out.quat, 2);
  const StructureAlgebra& M = *out.target;
  Vec q0 = Q.zero(), q1 = Q.unit, qi = Q.basis(1), qj = Q.basis(2), qk = Q.basis(3);
  Vec mi = scale(-one, qi), mj = scale(-one, qj), m1 = scale(-one, q1);
  out.images = {mat2(M, {qi, q0, q0, mi}), mat2(M, {qj, q0, q0, mj}), mat2(M, {q0, q1, q1, q0}),
                mat2(M, {q0, q1, m1, q0})};

  // Clifford relations of q′
  out.relations_ok = true;
  for (std::size_t v = 0; v < 4 && out.relations_ok; ++v) {
    if (M.mul(out.images[v], out.images[v]) != M.scalar(out.q_prime.coeffs(v, v))) {
      out.relations_ok = false;
      out.relations_detail = "A" + std::to_string(v + 2) + "^2 != q'(e" + std::to_string(v + 2) + ")";
    }
    for (std::size_t w = v + 1; w < 4 && out.relations_ok; ++w)
      if (!is_zero(add(M.mul(out.images[v], out.images[w]), M.mul(out.images[w], out.images[v])))) {
        out.relations_ok = false;
        out.relations_detail = "A" + std::to_string(v + 2) + " and A" + std::to_string(w + 2) + " do not anticommute";
      }
  }

  // C₀(V, q) → M₂(Q): e₁e_w ↦ A_w, e_v e_w ↦ −A_v A_w
  auto c0 = clifford_even(out.q);
  const StructureAlgebra& C = *c0.carrier;
  auto pair_image = [&](std::size_t u, std::size_t v) {
    if (u == 0) return out.images[v - 1];
    return scale(-one, M.mul(out.images[u - 1], out.images[v - 1]));
  };
  out.iso = LinearMap{F, M.dim, {}};
  for (auto mask : c0.masks) {
    Vec img = M.unit;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 5; ++i)
      if (mask >> i & 1) idx.push_back(i);
    for (std::size_t t = 0; t + 1 < idx.size(); t += 2) img = M.mul(img, pair_image(idx[t], idx[t + 1]));
    out.iso.cols.push_back(to_sparse(img));
  }

  // τ(M) = [[m̃₂₂, −m̃₁₂], [−m̃₂₁, m̃₁₁]] with ã = k ā k⁻¹, k = ij
  LinearMap bar = quaternion_gamma(Q);
  Vec kinv = *Q.inverse(qk);
  LinearMap tilde{F, 4, {}};
  for (std::size_t t = 0; t < 4; ++t) tilde.cols.push_back(to_sparse(Q.mul(Q.mul(qk, bar.apply(Q.basis(t))), kinv)));
  LinearMap tau{F, M.dim, {}};
  for (std::size_t j = 0; j < M.dim; ++j) {
    Vec x = M.basis(j);
    auto tl = [&](std::size_t r, std::size_t c) { return tilde.apply(entry(x, r, c)); };
    tau.cols.push_back(to_sparse(mat2(M, {tl(1, 1), scale(-one, tl(0, 1)), scale(-one, tl(1, 0)), tl(0, 0)})));
  }
  out.iso_verdict = hom_verify(out.iso, C, M, &c0.canonical.inv.map, &tau);
  out.bijective = sparse_rank(out.iso) == C.dim && C.dim == M.dim;

  // φ(x, y) = α(e₁ x)(y) on E = Q² and the two forms
  Vec z = unit_vec(F, 5, 0);
  auto zx = z_times_basis(out.q, z, c0);
  std::vector<Vec> mult;
  for (const auto& v : zx) mult.push_back(out.iso.apply(v));
  auto mat_vec = [&](const Vec& m, const Vec& y) {
    Vec r = zero_vec(F, 8);
    for (std::size_t row = 0; row < 2; ++row) {
      Vec acc = Q.zero();
      for (std::size_t c = 0; c < 2; ++c) acc = add(acc, Q.mul(entry(m, row, c), Vec(y.begin() + c * 4, y.begin() + c * 4 + 4)));
      for (std::size_t t = 0; t < 4; ++t) r[row * 4 + t] = acc[t];
    }
    return r;
  };
  auto make = [&](const LinearMap& inv, const std::function<Vec(const Vec&, const Vec&, const Vec&, const Vec&)>& h) {
    HermitianComposition hc;
    hc.field = F;
    hc.n = 5;
    hc.dim_e = 8;
    hc.z = z;
    hc.values = involution_attach(out.quat, inv);
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<Vec> row;
      for (std::size_t j = 0; j < 8; ++j) row.push_back(mat_vec(mult[i], unit_vec(F, 8, j)));
      hc.phi.push_back(row);
    }
    for (std::size_t s = 0; s < 8; ++s)
      for (std::size_t t = 0; t < 8; ++t) {
        Vec y = unit_vec(F, 8, s), yp = unit_vec(F, 8, t);
        auto part = [](const Vec& v, std::size_t c) { return Vec(v.begin() + c * 4, v.begin() + c * 4 + 4); };
        hc.h_table.push_back(h(part(y, 0), part(y, 1), part(yp, 0), part(yp, 1)));
      }
    // normalize on the first nonzero coordinate of h
    hc.normalization = one;
    for (const auto& v : hc.h_table) {
      auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
      if (it != v.end()) {
        hc.normalization = it->inverse();
        break;
      }
    }
    for (auto& v : hc.h_table) v = scale(hc.normalization, v);
    // ε from h(y′, y) = ε h(y, y′)‾
    hc.epsilon = 0;
    for (int eps : {1, -1}) {
      bool ok = true;
      for (std::size_t s = 0; s < 8 && ok; ++s)
        for (std::size_t t = 0; t < 8 && ok; ++t)
          ok = hc.h_table[t * 8 + s] == scale(Scalar(F, static_cast<long>(eps)), hc.values.apply(hc.h_table[s * 8 + t]));
      if (ok) {
        hc.epsilon = eps;
        break;
      }
    }
    return hc;
  };
  out.h1 = make(tilde, [&](const Vec& y1, const Vec& y2, const Vec& p1, const Vec& p2) {
    return sub(Q.mul(tilde.apply(y1), p2), Q.mul(tilde.apply(y2), p1));
  });
  out.h2 = make(bar, [&](const Vec& y1, const Vec& y2, const Vec& p1, const Vec& p2) {
    return sub(Q.mul(Q.mul(bar.apply(y1), qk), p2), Q.mul(Q.mul(bar.apply(y2), qk), p1));
  });
  out.check1 = verify_hermitian_identity(out.h1, out.q);
  out.check2 = verify_hermitian_identity(out.h2, out.q);
  return out;
}

}  // namespace quadcomp
