#pragma once

// Invariant profiles of extended quadratic pairs and the minimal degree of an
// algebra with involution receiving a composition of a given type.

#include <optional>
#include <string>

#include "quadcomp/algebra.hpp"
#include "quadcomp/brauer.hpp"
#include "quadcomp/qpair.hpp"
#include "quadcomp/quadform.hpp"

namespace quadcomp {

enum class ParityCase { Odd, ZeroMod4, TwoMod4 };
const char* to_string(ParityCase p);

/// Where a profile came from; constructions need to know the model behind it.
enum class ObjectKind { Form, QuaternionTensor, OddSpace, Generic };
const char* to_string(ObjectKind k);

struct InvariantProfile {
  FieldRef field = nullptr;
  unsigned n = 0;
  unsigned k = 0;  ///< n = 2k+1, 4k or 4k+2
  ParityCase parity = ParityCase::Odd;
  ObjectKind kind = ObjectKind::Generic;
  std::optional<EtaleQuadratic> center;  ///< n even
  /// n odd: [C]. n even with Z a field: a class over F whose restriction to Z is [C].
  /// Class fields stay unset when the class is not computable; formulas that need
  /// them then raise InvalidInput.
  std::optional<BrauerClass2> clifford;
  std::optional<BrauerClass2> plus, minus;  ///< n even, Z split
  std::optional<BrauerClass2> over_center;  ///< n even, Z a field: [C] in Br(Z)
  std::optional<BrauerClass2> full_clifford;  ///< forms of even dimension: [C(V, q)]
  std::optional<BrauerClass2> algebra_class;  ///< [A]; trivial for forms, unset when unknown
  InvolutionType canonical = InvolutionType::Orthogonal;
  std::optional<QuadraticSpace> form;  ///< forms and odd spaces
  std::optional<std::pair<Symbol, Symbol>> quaternions;  ///< quaternion tensors

  bool center_split() const { return center && center->split; }
  bool center_field() const { return center && !center->split; }
};

/// Throws CertificationFailure when the structure identity for split Z fails.
void check_profile(const InvariantProfile& p);

InvariantProfile invariant_profile(const QuadraticSpace& q);
/// (Q₁ ⊗ Q₂, γ₁ ⊗ γ₂, f) for Q₁ = (a₁, b₁), Q₂ = (a₂, b₂).
InvariantProfile invariant_profile_tensor(FieldRef f, const Symbol& q1, const Symbol& q2);
/// Odd spaces go through the form route. Pairs are classified from their Clifford
/// algebra; classes are only available over finite fields or from quaternion factors.
InvariantProfile invariant_profile(const ExtendedQuadraticPair& p);

struct CompositionType {
  InvolutionType t = InvolutionType::Symplectic;
  std::optional<BrauerClass2> c;        ///< first kind: class over F
  std::optional<EtaleQuadratic> s;      ///< unitary: Z(B)
  std::optional<BrauerClass2> c_prime;  ///< unitary: class over S

  static CompositionType first_kind(InvolutionType t, BrauerClass2 c);
  static CompositionType unitary(EtaleQuadratic s, BrauerClass2 c_prime);
  std::string to_string() const;
};

enum class McdStatus { Exact, MultipleOnly, LowerBoundOnly, NotCovered };
const char* to_string(McdStatus s);

struct McdResult {
  McdStatus status = McdStatus::Exact;
  unsigned log2 = 0;
  bool divisibility = false;  ///< every composition degree is a multiple of the value
  std::string case_label;
  std::string detail;
  /// First-kind bookkeeping.
  std::optional<unsigned> epsilon, delta, d;
};

McdResult mcd_first_kind(const InvariantProfile& p, InvolutionType t, const BrauerClass2& c);
McdResult mcd_unitary(const InvariantProfile& p, const EtaleQuadratic& s, const BrauerClass2& c_prime);
McdResult mcd(const InvariantProfile& p, const CompositionType& type);

struct BoundReport {
  unsigned log2 = 0;
  bool equality = false;  ///< whether some composition reaches the bound
  std::string condition;  ///< the equality condition that was evaluated
  std::string case_label;
};

BoundReport lower_bound(const InvariantProfile& p, const CompositionType& type);

struct AdmissibilityVerdict {
  bool admissible = false;
  std::string case_used;
  std::string detail;
  /// Whether the candidate degree is the smallest admissible one.
  bool minimal = false;
};

/// Checks a candidate degree of B (with [B] the class of the type) against the
/// arithmetic forms a homomorphism C(P) → B forces. `injective` selects between the
/// injective and non-injective forms for split Z.
AdmissibilityVerdict admissible_degree(const InvariantProfile& p, const CompositionType& type, unsigned long degree,
                                       std::optional<bool> injective = std::nullopt);

/// Minimal degree of an algebra of class `target` receiving C: deg C · 2^{d(target, [C])}.
unsigned long dbound_degree(unsigned long deg_c, const BrauerClass2& target, const BrauerClass2& c);

/// d(x ⊗ ZS, 1) for a class x over F and the compositum Z ⊗ S of two quadratic
/// étale algebras (a field when Z ≄ S are fields).
unsigned compositum_metric(const BrauerClass2& x, const EtaleQuadratic& z, const EtaleQuadratic& s);

}  // namespace quadcomp
