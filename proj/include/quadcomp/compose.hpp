#pragma once

// Explicit compositions (C(P), σ̲) → (B, τ): extension of involutions, witness
// construction for a given type, hermitian compositions φ(x, y) = α(zx)(y) and
// the worked example with the 5-dimensional form ⟨1, −a, −b, −1, 1⟩.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadcomp/clifford.hpp"
#include "quadcomp/mcd.hpp"

namespace quadcomp {

struct Extension {
  AlgebraRef algebra;        ///< A, or A ⊗ M₂(F) after stabilization
  LinearMap embedding;       ///< B → algebra
  AlgebraWithInvolution result;
  Vec u;                     ///< σ′ = Int(u) ∘ σ₀
  int sign = 1;              ///< σ₀(u) = sign · u
  unsigned attempts = 0;
  std::vector<std::string> trace;
};

/// Finds σ′ = Int(u) ∘ σ₀ on A with σ′ ∘ emb = emb ∘ τ. Candidates u are drawn with
/// small random coordinates from the solution space {u σ₀(emb b) = emb(τ b) u,
/// σ₀(u) = ±u}; `budget` draws per sign. When `want` is given and neither sign
/// reaches it, A is replaced by A ⊗ M₂(F) with σ₀ ⊗ σ₋ and the search repeats.
/// Raises SearchExhausted when no invertible u turns up.
Extension extend_involution(const AlgebraRef& a, const LinearMap& sigma0, const AlgebraRef& b, const LinearMap& tau,
                            const LinearMap& emb, std::optional<InvolutionType> want = std::nullopt,
                            std::uint64_t seed = 1, unsigned budget = 64);

struct FxFExtension {
  AlgebraRef big;      ///< M₂(M_k(D))
  AlgebraRef small;    ///< M_k(D) × M_k(D)
  LinearMap embedding;  ///< (m₁, m₂) ↦ diag(m₁, m₂)
  LinearMap rho;       ///< (m₁, m₂) ↦ (m₂*, m₁*)
  AlgebraWithInvolution result;  ///< ∗ ⊗ σ±
  int sign = -1;
};

/// The explicit extension ∗ ⊗ σ± of the swap involution; the sign is chosen to reach `want`.
FxFExtension fxf_extension(const AlgebraRef& d, const LinearMap& bar, std::size_t k, InvolutionType want);

struct CompositionWitness {
  AlgebraWithInvolution source;  ///< (C(P), σ̲)
  AlgebraWithInvolution target;  ///< (B, τ)
  LinearMap hom;
  CompositionType type;
  BrauerClass2 target_class;     ///< [B], over F or over S
  unsigned long degree = 0;      ///< over the center of B
  bool injective = false;
  McdResult mcd;
  AdmissibilityVerdict admissible;
  HomVerdict verdict;
  std::optional<QuadraticSpace> form;  ///< forms: C(P) = C₀(V, q)
  std::vector<std::string> trace;
  std::uint64_t seed = 1;
};

struct ConstructOptions {
  std::uint64_t seed = 1;
  unsigned truncation_cap = 4;
};

/// (C(P), σ̲) from the model behind a profile: C₀(V, q) for forms, the pair
/// quotient for quaternion tensors. InvalidInput for generic pairs.
CliffordAlgebra composition_source(const InvariantProfile& p, unsigned truncation_cap = 4);

/// Builds a witness following the existence proof case by case and certifies it
/// (homomorphism with involutions, type, degree against the mcd value and the
/// admissible forms). Raises NotCovered for the excluded center configurations.
CompositionWitness construct_composition(const InvariantProfile& p, const CompositionType& type,
                                         const ConstructOptions& opts = {});

/// Re-runs every certificate on a witness; returns the first failure.
HomVerdict recheck_witness(const CompositionWitness& w);

/// φ: V × E → E and h: E × E → D.
struct HermitianComposition {
  FieldRef field = nullptr;
  std::size_t n = 0;           ///< dim V
  std::size_t dim_e = 0;       ///< dim_F E
  AlgebraWithInvolution values;  ///< D with the involution h is hermitian for
  /// Explicit module: phi[i][j] = φ(eᵢ, y_j) in F-coordinates of E and
  /// h_table[a·dim_e + b] = h(y_a, y_b) ∈ D.
  std::vector<std::vector<Vec>> phi;
  std::vector<Vec> h_table;
  /// Regular module E = D = B: φ(x, y) = (Σ xᵢ multipliers[i]) y and h(y, y′) = τ(y) y′.
  bool regular = false;
  std::vector<Vec> multipliers;
  Vec z;
  int epsilon = 1;  ///< h(y′, y) = ε·h(y, y′)‾
  Scalar normalization;  ///< factor applied so that the first nonzero value of h is 1

  Vec apply_phi(const Vec& x, const Vec& y) const;
  Vec apply_h(const Vec& y1, const Vec& y2) const;
};

HermitianComposition hermitian_from_hom(const CompositionWitness& w, const Vec& z);

struct HermitianCheck {
  bool ok = true;
  std::size_t checks = 0;
  std::string detail;
  std::optional<Vec> x, y1, y2;  ///< counterexample
};

/// Checks h(φ(x, y₁), φ(x, y₂)) = q(x) h(y₁, y₂) for x over the basis and all
/// pairwise sums (a quadratic identity vanishing there vanishes everywhere) and
/// y₁, y₂ over a generating set of E (the basis, or {1} for the regular module,
/// which is cyclic and on which both sides are sesquilinear).
HermitianCheck verify_hermitian_identity(const HermitianComposition& hc, const QuadraticSpace& q);

struct Example1Bundle {
  Scalar a, b;
  QuadraticSpace q;        ///< ⟨1, −a, −b, −1, 1⟩
  QuadraticSpace q_prime;  ///< ⟨a, b, 1, −1⟩
  AlgebraRef quat;         ///< (a, b)
  AlgebraRef target;       ///< M₂((a, b))
  std::vector<Vec> images; ///< A₂ … A₅
  bool relations_ok = false;
  std::string relations_detail;
  LinearMap iso;           ///< C₀(V, q) → M₂((a, b))
  HomVerdict iso_verdict;
  bool bijective = false;
  HermitianComposition h1, h2;
  HermitianCheck check1, check2;
  bool verified() const { return relations_ok && iso_verdict.ok && bijective && check1.ok && check2.ok; }
};

Example1Bundle example1_reproduce(FieldRef f, const Scalar& a, const Scalar& b);

}  // namespace quadcomp
