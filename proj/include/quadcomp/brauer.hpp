#pragma once

// 2-torsion Brauer classes over Q, over quadratic étale Q-algebras (as restrictions
// of Q-classes) and over finite fields (always trivial).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadcomp/scalars.hpp"

namespace quadcomp {

struct Symbol {
  mpq_class a, b;
};

/// A place of the base of a class: a place v of Q and, when v splits in S, which
/// of the two places above it (1 or 2; 0 otherwise).
struct BasePlace {
  Place v;
  int branch = 0;
  bool operator<(const BasePlace& o) const {
    return v.prime != o.v.prime ? v.prime < o.v.prime : branch < o.branch;
  }
  bool operator==(const BasePlace& o) const { return v == o.v && branch == o.branch; }
  std::string to_string() const;
};

using LocalInvariants = std::map<BasePlace, int>;

class BrauerClass2 {
 public:
  /// Trivial class over a field (Q or a finite field).
  static BrauerClass2 trivial(FieldRef f);
  static BrauerClass2 of_symbols(FieldRef f, std::vector<Symbol> symbols);
  static BrauerClass2 quaternion(FieldRef f, const mpq_class& a, const mpq_class& b);

  FieldRef field() const { return field_; }
  const std::optional<EtaleQuadratic>& over() const { return over_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  bool conjugated() const { return conjugated_; }

  BrauerClass2 restrict_to(const EtaleQuadratic& s) const;
  /// Drops the restriction (the underlying Q-class); used by constructions.
  BrauerClass2 unrestricted() const;
  std::string to_string() const;

 private:
  FieldRef field_ = nullptr;
  std::optional<EtaleQuadratic> over_;
  std::vector<Symbol> symbols_;
  bool conjugated_ = false;
  friend BrauerClass2 class_product(const BrauerClass2&, const BrauerClass2&);
  friend BrauerClass2 class_conjugate(const BrauerClass2&);
};

BrauerClass2 class_product(const BrauerClass2& c1, const BrauerClass2& c2);
/// Identity on 2-torsion classes (c·c is trivial).
BrauerClass2 class_opposite(const BrauerClass2& c);
/// ι-conjugate; equal to c for classes restricted from Q.
BrauerClass2 class_conjugate(const BrauerClass2& c);

/// Nontrivial local invariants only are listed with −1; every place that could
/// carry an invariant is present.
LocalInvariants local_invariants(const BrauerClass2& c);
std::vector<BasePlace> invariant_support(const BrauerClass2& c);
bool is_trivial(const BrauerClass2& c);
/// 1 or 2: over Q and quadratic number fields a nontrivial 2-torsion class has index 2.
unsigned class_index(const BrauerClass2& c);
/// d(c₁, c₂) = log₂ ind(c₁ ⊗ c₂^op).
unsigned metric(const BrauerClass2& c1, const BrauerClass2& c2);
bool same_class(const BrauerClass2& c1, const BrauerClass2& c2);

struct Restriction {
  BrauerClass2 cls;
  bool norm_trivial = true;
  std::string justification;
};
Restriction restrict_and_norm(const BrauerClass2& c, const EtaleQuadratic& s);

/// A symbol (a, b) with [(a, b)] = c for a Q-class c (bounded search); nullopt when none found.
std::optional<Symbol> quaternion_representative(const BrauerClass2& c);

}  // namespace quadcomp
