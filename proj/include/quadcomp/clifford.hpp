#pragma once

// Clifford algebras of quadratic spaces (by monomial rewriting) and of
// quadratic pairs (as a certified quotient of a truncated tensor algebra).

#include <cstdint>
#include <optional>
#include <vector>

#include "quadcomp/algebra.hpp"
#include "quadcomp/qpair.hpp"
#include "quadcomp/quadform.hpp"

namespace quadcomp {

struct CliffordAlgebra {
  AlgebraRef carrier;
  /// Full and even algebras: basis i is the ordered monomial masks[i]; images[j] = image of eⱼ
  /// (full only). Pair algebras: images[j] = class of the j-th basis element of A.
  std::vector<std::uint32_t> masks;
  std::vector<Vec> images;
  /// Canonical involution: reversal, τ₀, or σ̲.
  AlgebraWithInvolution canonical;
  /// Pair algebras: truncation degree at which the quotient was certified.
  unsigned truncation = 0;
};

CliffordAlgebra clifford_full(const QuadraticSpace& q);
CliffordAlgebra clifford_even(const QuadraticSpace& q);
/// Index of an even monomial mask in clifford_even's basis.
std::size_t even_index(std::uint32_t mask);

/// Sand(u)(x) = Σ aᵢ x bᵢ for u = Σ aᵢ ⊗ bᵢ, with u in coordinates i·dim + j.
LinearMap sandwich(const StructureAlgebra& a, const Vec& u);

struct SandwichSpace {
  std::vector<Vec> basis;        ///< u ∈ A ⊗ A with Sand(u)(x) = Sand(u)(σ(x)) for all x
  std::vector<LinearMap> sand;   ///< Sand(u) for each basis vector
};

SandwichSpace sandwich_and_j2(const AlgebraWithInvolution& awi);

/// Raises CertificationFailure when the quotient dimension does not reach 2^{n−1}
/// with all normal words shorter than the truncation degree, for every degree up to cap.
CliffordAlgebra clifford_of_pair(const QuadraticPair& p, unsigned cap = 4);

struct SplitComparison {
  LinearMap map;  ///< C(End V, σ_q, f_q) → C₀(V, q)
  HomVerdict verdict;
  bool bijective = false;
};

SplitComparison split_compare(const QuadraticSpace& q);

struct CliffordStructure {
  CenterInfo center;
  std::optional<AlgebraRef> plus, minus;
  InvolutionType type = InvolutionType::Orthogonal;
  InvolutionType expected = InvolutionType::Orthogonal;
  unsigned degree_over_center = 1;
};

/// Canonical-involution type of the Clifford algebra of a pair (or space) of degree n.
InvolutionType expected_canonical_type(FieldRef f, unsigned n);
/// Throws CertificationFailure when the computed type or dimension disagrees with the expected one.
CliffordStructure clifford_structure(const CliffordAlgebra& c, unsigned n);

}  // namespace quadcomp
