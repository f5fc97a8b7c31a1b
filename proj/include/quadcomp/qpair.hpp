#pragma once

// Quadratic pairs (A, σ, f): f is a functional on Sym(A, σ) with
// f(x + σ(x)) = Trd(x), represented by an element ℓ with f(s) = Trd(ℓs).

#include <optional>
#include <string>

#include "quadcomp/algebra.hpp"
#include "quadcomp/quadform.hpp"

namespace quadcomp {

struct QuadraticPair {
  AlgebraWithInvolution awi;
  Vec f;     ///< coordinates of f on the basis awi.sym
  Vec ell;
  unsigned degree = 0;
  std::string note;  ///< how f was chosen, when a choice was made

  Scalar eval_f(const Vec& s) const;  ///< s must lie in Sym
};

/// A quadratic pair or, in characteristic 2, an odd-dimensional semiregular space.
struct ExtendedQuadraticPair {
  std::optional<QuadraticPair> pair;
  std::optional<QuadraticSpace> odd_space;
  unsigned degree = 0;
  FieldRef field() const;
};

ExtendedQuadraticPair extended(QuadraticPair p);
ExtendedQuadraticPair extended(QuadraticSpace q);

/// (End V, σ_q, f_q) on Mₙ(F) with σ_q(X) = B⁻¹XᵀB for the polar matrix B.
QuadraticPair pair_from_form(const QuadraticSpace& q);
/// φ_q(v ⊗ w) = v·wᵀB as an element of Mₙ(F).
Vec phi_q(const QuadraticSpace& q, const Vec& v, const Vec& w);

/// (Q₁ ⊗ Q₂, γ₁ ⊗ γ₂, f). In characteristic 2 the functional comes from an ℓ
/// found by search (see note); the chosen ℓ gives an 8-dimensional Clifford
/// algebra with split center.
QuadraticPair pair_on_quaternion_tensor(const AlgebraRef& q1, const AlgebraRef& q2);

/// The pair determined by ℓ (needs ℓ + σ(ℓ) = 1).
QuadraticPair pair_from_ell(const AlgebraWithInvolution& awi, const Vec& ell, const std::string& note = "");

struct PairVerdict {
  bool ok = true;
  std::string detail;
  std::optional<std::size_t> index;  ///< offending basis element
};

PairVerdict pair_validate(const QuadraticPair& p);

struct EllSolution {
  Vec ell;
  std::vector<Vec> coset_directions;  ///< a basis of Alt(A, σ)
};

/// Solves {Trd(ℓ sᵢ) = f(sᵢ)} ∪ {ℓ + σ(ℓ) = 1}.
EllSolution ell_element(const AlgebraWithInvolution& awi, const Vec& f);

}  // namespace quadcomp
