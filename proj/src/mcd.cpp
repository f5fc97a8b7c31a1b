#include "quadcomp/mcd.hpp"

#include <algorithm>

#include "quadcomp/clifford.hpp"

namespace quadcomp {

const char* to_string(ParityCase p) {
  switch (p) {
    case ParityCase::Odd: return "2k+1";
    case ParityCase::ZeroMod4: return "4k";
    case ParityCase::TwoMod4: return "4k+2";
  }
  return "?";
}

const char* to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::Form: return "form";
    case ObjectKind::QuaternionTensor: return "quaternion-tensor";
    case ObjectKind::OddSpace: return "odd-space";
    case ObjectKind::Generic: return "pair";
  }
  return "?";
}

const char* to_string(McdStatus s) {
  switch (s) {
    case McdStatus::Exact: return "exact";
    case McdStatus::MultipleOnly: return "multiple-only";
    case McdStatus::LowerBoundOnly: return "lower-bound-only";
    case McdStatus::NotCovered: return "not-covered-by-paper";
  }
  return "?";
}

namespace {

void set_degree(InvariantProfile& p, unsigned n) {
  p.n = n;
  if (n % 2 == 1) {
    p.parity = ParityCase::Odd;
    p.k = (n - 1) / 2;
  } else if (n % 4 == 0) {
    p.parity = ParityCase::ZeroMod4;
    p.k = n / 4;
  } else {
    p.parity = ParityCase::TwoMod4;
    p.k = (n - 2) / 4;
  }
}

bool split_at(const EtaleQuadratic& e, Place v) {
  return e.split || e.splitting_at(v) == LocalSplitting::Split;
}

BrauerClass2 as_base(const BrauerClass2& c) { return c.over() ? c.unrestricted() : c; }

const BrauerClass2& need(const std::optional<BrauerClass2>& c) {
  if (!c) fail(ErrorKind::InvalidInput, "the Clifford class of this pair is not available");
  return *c;
}

// d(c, C) with C the Clifford algebra over its center, c a class over F.
unsigned d_over_center(const InvariantProfile& p, const BrauerClass2& c) {
  if (p.center_split()) return std::max(metric(c, need(p.plus)), metric(c, need(p.minus)));
  return metric(c.restrict_to(*p.center), need(p.over_center));
}

// d(c′, X ⊗ S) for a class X over F.
unsigned d_over_s(const BrauerClass2& c0, const BrauerClass2& x, const EtaleQuadratic& s) {
  return metric(c0.restrict_to(s), x.restrict_to(s));
}

void require_degree(const InvariantProfile& p) {
  require(p.n > 1, "minimal composition degrees need degree n > 1");
}

unsigned epsilon_of(const InvariantProfile& p, InvolutionType t) {
  // orthogonal and symplectic coincide in characteristic 2
  if (p.field->characteristic() == 2) return 0;
  return p.canonical == t ? 0 : 1;
}

bool pow2_multiple(unsigned long deg, unsigned e) { return e < 63 && deg % (1UL << e) == 0; }

// deg = base·(n₁·2^a + n₂·2^b) with n₁ + n₂ ≥ 1 (both ≥ 1 when `both`).
bool sum_form(unsigned long deg, unsigned long base, unsigned a, unsigned b, bool both) {
  if (deg % base != 0) return false;
  unsigned long m = deg / base, ua = 1UL << a, ub = 1UL << b;
  for (unsigned long n1 = 0; n1 * ua <= m; ++n1) {
    unsigned long rest = m - n1 * ua;
    if (rest % ub != 0) continue;
    unsigned long n2 = rest / ub;
    if (n1 + n2 == 0) continue;
    if (both && (n1 == 0 || n2 == 0)) continue;
    return true;
  }
  return false;
}

}  // namespace

void check_profile(const InvariantProfile& p) {
  if (!p.center_split() || !p.plus || !p.minus) return;
  BrauerClass2 prod = class_product(need(p.plus), need(p.minus));
  if ((p.n / 2) % 2 == 0) {
    if (!p.algebra_class) return;
    prod = class_product(prod, *p.algebra_class);
  }
  if (!is_trivial(prod))
    fail(ErrorKind::CertificationFailure, "structure identity for [C+], [C-] fails: " + prod.to_string());
}

InvariantProfile invariant_profile(const QuadraticSpace& q) {
  FieldRef F = q.field;
  require(q.n >= 1, "empty quadratic space");
  InvariantProfile p;
  p.field = F;
  set_degree(p, static_cast<unsigned>(q.n));
  p.algebra_class = BrauerClass2::trivial(F);
  p.form = q;
  auto reg = regularity_classify(q).cls;
  if (F->characteristic() == 2 && q.n % 2 == 1) {
    require(reg == Regularity::Semiregular, "odd-dimensional form in characteristic 2 must be semiregular");
    p.kind = ObjectKind::OddSpace;
  } else {
    require(reg == Regularity::Regular, "quadratic form must be regular");
    p.kind = ObjectKind::Form;
  }
  p.canonical = expected_canonical_type(F, p.n);
  if (q.n % 2 == 0) p.center = center_invariant(q);
  if (!F->is_rational()) {
    BrauerClass2 triv = BrauerClass2::trivial(F);
    p.clifford = triv;
    if (p.center) {
      p.full_clifford = triv;
      if (p.center->split) {
        p.plus = triv;
        p.minus = triv;
      } else {
        p.over_center = triv.restrict_to(*p.center);
      }
    }
    return p;
  }
  QuadraticSpace d = q.is_diagonal() ? q : qf_make_diag(F, diagonalize(q).diag);
  auto cc = clifford_class(d);
  p.clifford = cc.base_class;
  if (q.n % 2 == 0) {
    p.full_clifford = cc.base_class;
    if (p.center->split) {
      p.plus = cc.plus;
      p.minus = cc.minus;
    } else {
      p.over_center = cc.over_center;
    }
  }
  check_profile(p);
  return p;
}

InvariantProfile invariant_profile_tensor(FieldRef f, const Symbol& q1, const Symbol& q2) {
  InvariantProfile p;
  p.field = f;
  set_degree(p, 4);
  p.kind = ObjectKind::QuaternionTensor;
  p.center = split_etale(f);
  p.plus = BrauerClass2::quaternion(f, q1.a, q1.b);
  p.minus = BrauerClass2::quaternion(f, q2.a, q2.b);
  p.algebra_class = class_product(need(p.plus), need(p.minus));
  p.canonical = expected_canonical_type(f, 4);
  p.quaternions = std::make_pair(q1, q2);
  check_profile(p);
  return p;
}

namespace {

BrauerClass2 class_of_factor(FieldRef f, const StructureAlgebra& a) {
  if (!f->is_rational() || a.dim == 1) return BrauerClass2::trivial(f);
  if (a.dim != 4)
    fail(ErrorKind::InvalidInput, "Brauer class of a " + std::to_string(a.dim) +
                                      "-dimensional Clifford factor is not available over Q");
  auto [x, y] = quaternion_symbol(a);
  return BrauerClass2::quaternion(f, x.rational(), y.rational());
}

}  // namespace

InvariantProfile invariant_profile(const ExtendedQuadraticPair& e) {
  if (e.odd_space) return invariant_profile(*e.odd_space);
  const QuadraticPair& pair = *e.pair;
  FieldRef F = e.field();
  InvariantProfile p;
  p.field = F;
  set_degree(p, e.degree);
  p.kind = ObjectKind::Generic;
  const StructureAlgebra& A = *pair.awi.alg;
  auto cl = clifford_of_pair(pair);
  auto st = clifford_structure(cl, p.n);
  p.canonical = st.type;
  if (p.n % 2 == 1) {
    p.clifford = class_of_factor(F, *cl.carrier);
  } else {
    p.center = st.center.descriptor;
    if (!p.center) fail(ErrorKind::CertificationFailure, "Clifford algebra of an even pair without quadratic center");
    if (p.center->split) {
      p.plus = class_of_factor(F, **st.plus);
      p.minus = class_of_factor(F, **st.minus);
    } else if (!F->is_rational()) {
      p.clifford = BrauerClass2::trivial(F);
      p.over_center = p.clifford->restrict_to(*p.center);
    } else {
      // the class of C over Z is not computed for such pairs; formulas needing it reject
    }
  }
  if (!F->is_rational() || A.provenance == "M" + std::to_string(p.n) + "(" + F->name() + ")") {
    p.algebra_class = BrauerClass2::trivial(F);
  } else if (A.dim == 4) {
    auto [x, y] = quaternion_symbol(A);
    p.algebra_class = BrauerClass2::quaternion(F, x.rational(), y.rational());
  } else if (p.center_split() && (p.n / 2) % 2 == 0) {
    p.algebra_class = class_product(need(p.plus), need(p.minus));  // forced by the structure identity
  }
  check_profile(p);
  return p;
}

CompositionType CompositionType::first_kind(InvolutionType t, BrauerClass2 c) {
  require(t != InvolutionType::Unitary, "first-kind composition type must be orthogonal or symplectic");
  CompositionType r;
  r.t = t;
  r.c = std::move(c);
  return r;
}

CompositionType CompositionType::unitary(EtaleQuadratic s, BrauerClass2 c_prime) {
  CompositionType r;
  r.t = InvolutionType::Unitary;
  if (!c_prime.over()) c_prime = c_prime.restrict_to(s);
  require(c_prime.over()->isomorphic(s), "c' must be a class over S");
  r.s = std::move(s);
  r.c_prime = std::move(c_prime);
  return r;
}

std::string CompositionType::to_string() const {
  if (t == InvolutionType::Unitary) return "(" + c_prime->to_string() + ", unitary over " + s->to_string() + ")";
  return "(" + c->to_string() + ", " + quadcomp::to_string(t) + ")";
}

McdResult mcd_first_kind(const InvariantProfile& p, InvolutionType t, const BrauerClass2& c) {
  require_degree(p);
  require(t != InvolutionType::Unitary, "mcd_first_kind needs an orthogonal or symplectic type");
  require(c.field() == p.field, "target class over a different field");
  require(!c.over(), "first-kind target class must lie over the base field");
  // every class we can represent is 2-torsion, so c·c = 1 holds by construction
  McdResult r;
  unsigned eps = epsilon_of(p, t);
  r.epsilon = eps;
  switch (p.parity) {
    case ParityCase::Odd: {
      unsigned d = metric(c, need(p.clifford));
      unsigned delta = (d == 0 && eps == 1) ? 1 : 0;
      r.log2 = p.k + d + delta;
      r.d = d;
      r.delta = delta;
      r.divisibility = true;
      r.case_label = "first-kind/odd";
      break;
    }
    case ParityCase::ZeroMod4: {
      if (p.center_field()) {
        unsigned d = metric(c.restrict_to(*p.center), need(p.over_center));
        unsigned delta = (d == 0 && eps == 1) ? 1 : 0;
        r.log2 = 2 * p.k + d + delta;
        r.d = d;
        r.delta = delta;
        r.status = McdStatus::MultipleOnly;
        r.divisibility = true;
        r.case_label = "first-kind/4k/center-field";
      } else {
        unsigned dp = metric(c, need(p.plus)), dm = metric(c, need(p.minus));
        unsigned d = std::min(dp, dm);
        unsigned delta = ((dp == 0 || dm == 0) && eps == 1) ? 1 : 0;
        r.log2 = 2 * p.k - 1 + d + delta;
        r.d = d;
        r.delta = delta;
        r.case_label = "first-kind/4k/center-split";
      }
      break;
    }
    case ParityCase::TwoMod4: {
      unsigned d = d_over_center(p, c);
      r.log2 = 2 * p.k + 1 + d;
      r.d = d;
      r.delta = 0;
      // deg B = m·2^{2k+d} with m ≥ 2, even when Z is a field
      r.divisibility = p.center_field();
      r.case_label = "first-kind/4k+2";
      break;
    }
  }
  r.detail = "epsilon = " + std::to_string(eps) + ", d = " + std::to_string(*r.d) +
             ", delta = " + std::to_string(*r.delta);
  return r;
}

McdResult mcd_unitary(const InvariantProfile& p, const EtaleQuadratic& s, const BrauerClass2& c_prime) {
  require_degree(p);
  require(s.base == p.field, "S over a different field");
  require(!c_prime.over() || c_prime.over()->isomorphic(s), "c' must be a class over S");
  // norm-triviality holds for every class restricted from F (N ∘ res = squaring)
  BrauerClass2 c0 = as_base(c_prime);
  McdResult r;
  switch (p.parity) {
    case ParityCase::Odd: {
      unsigned d = d_over_s(c0, need(p.clifford), s);
      r.log2 = p.k + d;
      r.d = d;
      r.divisibility = true;
      r.case_label = "unitary/odd";
      break;
    }
    case ParityCase::ZeroMod4: {
      if (p.center_split()) {
        unsigned d = std::min(d_over_s(c0, need(p.plus), s), d_over_s(c0, need(p.minus), s));
        r.log2 = 2 * p.k - 1 + d;
        r.d = d;
        r.case_label = "unitary/4k/center-split";
      } else if (!p.center->isomorphic(s)) {
        unsigned d = compositum_metric(class_product(c0, need(p.clifford)), *p.center, s);
        r.log2 = 2 * p.k + d;
        r.d = d;
        r.status = McdStatus::MultipleOnly;
        r.divisibility = true;
        r.case_label = "unitary/4k/center-field-not-S";
      } else if (p.kind == ObjectKind::Form) {
        // C₀(V, q) ⊂ C(V, q): the odd-degree construction through the full algebra
        unsigned d = d_over_s(c0, need(p.full_clifford), s);
        r.log2 = 2 * p.k + d;
        r.d = d;
        r.case_label = "unitary/4k/center-equals-S/trivial-algebra";
        r.detail = "realized through C0(V, q) inside C(V, q); ";
      } else {
        r.status = McdStatus::NotCovered;
        r.log2 = 2 * p.k - 1;
        r.case_label = "unitary/4k/center-equals-S";
        r.detail = "Z = S is a field: the canonical involution does not extend in general; value is the lower bound";
        return r;
      }
      break;
    }
    case ParityCase::TwoMod4: {
      if (p.center->isomorphic(s)) {
        // C^op has the class of C for 2-torsion classes
        unsigned d = d_over_center(p, c0);
        r.log2 = 2 * p.k + d;
        r.d = d;
        r.case_label = "unitary/4k+2/center-equals-S";
      } else if (!p.center->split) {
        unsigned d = compositum_metric(class_product(c0, need(p.clifford)), *p.center, s);
        r.log2 = 2 * p.k + 1 + d;
        r.d = d;
        r.status = McdStatus::MultipleOnly;
        r.divisibility = true;
        r.case_label = "unitary/4k+2/center-field-not-S";
      } else {
        r.status = McdStatus::NotCovered;
        r.log2 = 2 * p.k;
        r.case_label = "unitary/4k+2/center-split-S-field";
        r.detail = "Z split while S is a field; value is the lower bound";
        return r;
      }
      break;
    }
  }
  r.detail += "d = " + std::to_string(*r.d);
  return r;
}

McdResult mcd(const InvariantProfile& p, const CompositionType& type) {
  if (type.t == InvolutionType::Unitary) return mcd_unitary(p, *type.s, *type.c_prime);
  return mcd_first_kind(p, type.t, *type.c);
}

BoundReport lower_bound(const InvariantProfile& p, const CompositionType& type) {
  require_degree(p);
  BoundReport b;
  if (type.t == InvolutionType::Unitary) {
    const EtaleQuadratic& s = *type.s;
    BrauerClass2 c0 = as_base(*type.c_prime);
    switch (p.parity) {
      case ParityCase::Odd:
        b.log2 = p.k;
        b.equality = d_over_s(c0, need(p.clifford), s) == 0;
        b.condition = "[C ⊗ S] = c'";
        b.case_label = "unitary/odd";
        break;
      case ParityCase::ZeroMod4:
        b.log2 = 2 * p.k - 1;
        b.equality = p.center_split() && (d_over_s(c0, need(p.plus), s) == 0 || d_over_s(c0, need(p.minus), s) == 0);
        b.condition = "Z split and [C+ ⊗ S] = c' or [C- ⊗ S] = c'";
        b.case_label = "unitary/4k";
        break;
      case ParityCase::TwoMod4:
        b.log2 = 2 * p.k;
        b.equality = p.center->isomorphic(s) && d_over_center(p, c0) == 0;
        b.condition = "Z = S and [C] = c'";
        b.case_label = "unitary/4k+2";
        break;
    }
    return b;
  }
  const BrauerClass2& c = *type.c;
  unsigned eps = epsilon_of(p, type.t);
  switch (p.parity) {
    case ParityCase::Odd: {
      b.log2 = p.k + eps;
      unsigned d = metric(c, need(p.clifford));
      b.equality = eps == 0 ? d == 0 : d <= 1;
      b.condition = eps == 0 ? "[C] = c" : "[C ⊗ Q] = c for a quaternion algebra Q";
      b.case_label = "first-kind/odd";
      break;
    }
    case ParityCase::ZeroMod4: {
      b.log2 = 2 * p.k - 1 + eps;
      if (p.center_split()) {
        unsigned dp = metric(c, need(p.plus)), dm = metric(c, need(p.minus));
        b.equality = eps == 0 ? (dp == 0 || dm == 0) : (dp <= 1 || dm <= 1);
      }
      b.condition = eps == 0 ? "Z split and [C+] = c or [C-] = c"
                             : "Z split and [C+ ⊗ Q] = c or [C- ⊗ Q] = c for a quaternion algebra Q";
      b.case_label = "first-kind/4k";
      break;
    }
    case ParityCase::TwoMod4:
      b.log2 = 2 * p.k + 1;
      b.equality = d_over_center(p, c) == 0;
      b.condition = "[C] = [D ⊗ Z]";
      b.case_label = "first-kind/4k+2";
      break;
  }
  return b;
}

AdmissibilityVerdict admissible_degree(const InvariantProfile& p, const CompositionType& type, unsigned long degree,
                                       std::optional<bool> injective) {
  AdmissibilityVerdict v;
  if (degree == 0) {
    v.detail = "degree 0";
    return v;
  }
  McdResult r = mcd(p, type);
  if (r.status == McdStatus::NotCovered) {
    v.case_used = "not-covered";
    v.detail = r.detail;
    return v;
  }
  const unsigned long target = 1UL << r.log2;
  auto multiple_of = [&](unsigned e, const std::string& label) {
    v.case_used = label;
    v.admissible = pow2_multiple(degree, e) && degree >= target;
    v.detail = "deg B must be a multiple of 2^" + std::to_string(e);
  };
  if (type.t != InvolutionType::Unitary) {
    const BrauerClass2& c = *type.c;
    switch (p.parity) {
      case ParityCase::Odd:
        multiple_of(r.log2, "center F: deg B = n deg C 2^d(B, C)");
        break;
      case ParityCase::ZeroMod4:
        if (p.center_field()) {
          multiple_of(r.log2, "Z a field, S = F: deg B = n deg C 2^(d(B Z, C) + 1)");
        } else {
          unsigned dp = metric(c, need(p.plus)), dm = metric(c, need(p.minus));
          unsigned long base = 1UL << (2 * p.k - 1);
          bool ok;
          if (injective == false) {
            v.case_used = "Z split, non-injective: deg B = n deg C 2^d(B, C+-)";
            ok = pow2_multiple(degree, 2 * p.k - 1 + std::min(dp, dm));
          } else {
            v.case_used = "Z split, S = F: deg B = deg C (n1 2^d(B, C+) + n2 2^d(B, C-))";
            ok = sum_form(degree, base, dp, dm, injective == true);
          }
          // the type constraint rules out deg C itself when δ = 1
          v.admissible = ok && degree >= target;
          v.detail = "combined with the type constraint deg B >= 2^" + std::to_string(r.log2);
        }
        break;
      case ParityCase::TwoMod4: {
        unsigned e = 2 * p.k + *r.d;
        v.case_used = "deg B = m 2^(2k + d(D Z, C)) with m >= 2, m even for a field center";
        bool ok = pow2_multiple(degree, e);
        unsigned long m = ok ? degree >> e : 0;
        v.admissible = ok && m >= 2 && (!p.center_field() || m % 2 == 0);
        v.detail = "m = " + std::to_string(m);
        break;
      }
    }
  } else {
    const EtaleQuadratic& s = *type.s;
    BrauerClass2 c0 = as_base(*type.c_prime);
    switch (p.parity) {
      case ParityCase::Odd:
        multiple_of(r.log2, "center F: deg B = n deg C 2^d(B, C S)");
        break;
      case ParityCase::ZeroMod4:
        if (p.center_split()) {
          unsigned dp = d_over_s(c0, need(p.plus), s), dm = d_over_s(c0, need(p.minus), s);
          v.case_used = s.split ? "Z = S split: deg B = deg C (n1 2^d(B+, C+) + n2 2^d(B+, C-))"
                                : "Z split, S a field: deg B = deg C (n1 2^d(B, C+ S) + n2 2^d(B, C- S))";
          v.admissible = sum_form(degree, 1UL << (2 * p.k - 1), dp, dm, false);
        } else if (!p.center->isomorphic(s)) {
          multiple_of(r.log2, "Z a field, Z not S: deg B = n deg C 2^(d(B Z, C S) + 1)");
        } else {
          // trivial-algebra route: both summands are forced since Z maps onto Z(B)
          unsigned d = metric(c0.restrict_to(*p.center), need(p.over_center));
          v.case_used = "Z = S a field: deg B = deg C (n1 2^d(B, C) + n2 2^d(B conj, C)), n1, n2 >= 1";
          v.admissible = sum_form(degree, 1UL << (2 * p.k - 1), d, d, true);
        }
        break;
      case ParityCase::TwoMod4:
        if (p.center->isomorphic(s)) {
          multiple_of(r.log2, "Z = S: deg B = deg C (n1 2^d(B, C) + n2 2^d(B conj, C))");
        } else {
          multiple_of(r.log2, "Z a field, Z not S: deg B = n deg C 2^(d(B Z, C S) + 1)");
        }
        break;
    }
  }
  v.minimal = v.admissible && degree == target;
  return v;
}

unsigned long dbound_degree(unsigned long deg_c, const BrauerClass2& target, const BrauerClass2& c) {
  return deg_c << metric(target, c);
}

unsigned compositum_metric(const BrauerClass2& x, const EtaleQuadratic& z, const EtaleQuadratic& s) {
  BrauerClass2 base = as_base(x);
  if (!base.field()->is_rational()) return 0;
  for (const auto& [place, inv] : local_invariants(base))
    if (inv == -1 && split_at(z, place.v) && split_at(s, place.v)) return 1;
  return 0;
}

}  // namespace quadcomp
