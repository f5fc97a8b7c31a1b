#pragma once

// Finite-dimensional unital algebras given by structure constants, involutions
// on them and the linear-algebra questions asked about both.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadcomp/linalg.hpp"
#include "quadcomp/scalars.hpp"

namespace quadcomp {

class StructureAlgebra;
using AlgebraRef = std::shared_ptr<const StructureAlgebra>;

class StructureAlgebra {
 public:
  FieldRef field = nullptr;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<SparseVec> table;  ///< table[i*dim + j] = b_i b_j
  Vec unit;
  std::optional<Vec> trd;            ///< reduced trace as a row vector
  std::optional<unsigned> degree;    ///< degree over the center, when known by construction
  std::string provenance;
  std::vector<Vec> generators;       ///< generating set as an algebra; empty means "use the basis"

  const SparseVec& basis_product(std::size_t i, std::size_t j) const { return table[i * dim + j]; }
  Vec basis(std::size_t i) const { return unit_vec(field, dim, i); }
  Vec zero() const { return zero_vec(field, dim); }
  Vec scalar(const Scalar& s) const { return quadcomp::scale(s, unit); }
  Vec mul(const Vec& x, const Vec& y) const;
  Vec mul_sparse(const SparseVec& x, const SparseVec& y) const;
  LinearMap left_mult(const Vec& x) const;
  LinearMap right_mult(const Vec& x) const;
  /// Two-sided inverse, if x is invertible.
  std::optional<Vec> inverse(const Vec& x) const;
  const std::vector<Vec>& gens() const;
  std::string element_to_string(const Vec& x) const;

 private:
  mutable std::vector<Vec> basis_gens_;
};

/// Wraps a table and verifies the unit and associativity: exhaustively up to
/// dimension 16 or without generators, on spanning generators otherwise, sampled
/// past 2^22 checks.
AlgebraRef make_algebra(StructureAlgebra a);

/// Throws CertificationFailure naming a violated triple.
void verify_associative(const StructureAlgebra& a);
void verify_unit(const StructureAlgebra& a);

AlgebraRef base_field_algebra(FieldRef f);
/// Mₙ(A); basis index ((i·n + j)·dim A + k) for E_ij ⊗ a_k.
AlgebraRef matrix_algebra(const AlgebraRef& a, std::size_t n);
AlgebraRef matrix_algebra(FieldRef f, std::size_t n);
/// A ⊗ B; basis index i·dim B + j for a_i ⊗ b_j.
AlgebraRef tensor(const AlgebraRef& a, const AlgebraRef& b);
AlgebraRef opposite(const AlgebraRef& a);
AlgebraRef product(const AlgebraRef& a, const AlgebraRef& b);
/// (a, b) with i² = a, j² = b, ij = −ji; in characteristic 2 the algebra [a, b):
/// i² + i = a, j² = b, ji = (i + 1)j. Basis 1, i, j, ij.
AlgebraRef quaternion(FieldRef f, const Scalar& a, const Scalar& b);
/// The étale algebra F[X]/(X² − m) (char ≠ 2) or F[X]/(X² + X + a) (char 2); basis 1, w.
AlgebraRef etale_algebra(const EtaleQuadratic& s);
/// Standard involution ι of an étale quadratic algebra built by etale_algebra.
LinearMap etale_iota(const EtaleQuadratic& s);

Scalar reduced_trace_eval(const StructureAlgebra& a, const Vec& x);

// ---------------------------------------------------------------------------

struct CenterInfo {
  std::vector<Vec> basis;
  std::optional<Vec> w;             ///< second basis vector when dim Z = 2
  Scalar alpha, beta;               ///< w² = α + β w
  bool split = false;               ///< dim Z = 2 and Z ≅ F × F
  std::optional<Vec> idempotent;    ///< nontrivial idempotent when split
  std::optional<EtaleQuadratic> descriptor;  ///< Z as an étale algebra when dim Z = 2
};

std::vector<Vec> center_basis(const StructureAlgebra& a);
CenterInfo center_and_idempotents(const StructureAlgebra& a);
/// C_A(S); throws InvalidInput if the span of s is not closed under multiplication.
std::vector<Vec> centralizer(const StructureAlgebra& a, const std::vector<Vec>& s);
/// Whether the span of vs is closed under multiplication.
bool is_closed(const StructureAlgebra& a, const std::vector<Vec>& vs);

/// Coordinates with respect to a fixed list of independent vectors.
class Coordinates {
 public:
  Coordinates(FieldRef f, std::size_t n, const std::vector<Vec>& basis);
  std::optional<Vec> of(const Vec& v) const;
  std::size_t size() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

 private:
  FieldRef f_;
  std::size_t n_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> rows_;
  Mat inv_;
};

/// The algebra structure on the span of `basis` (closed under products, with
/// `unit` in the span). The result's i-th basis vector is basis[i].
AlgebraRef subalgebra(const StructureAlgebra& a, const std::vector<Vec>& basis, const Vec& unit,
                      const std::string& provenance);

// ---------------------------------------------------------------------------

enum class InvolutionKind { First, Second };
enum class InvolutionType { Orthogonal, Symplectic, Unitary };
const char* to_string(InvolutionType t);
InvolutionType parse_involution_type(const std::string& s);
/// Type of σ₁ ⊗ σ₂ for first-kind involutions.
InvolutionType tensor_type(InvolutionType a, InvolutionType b);

struct Involution {
  LinearMap map;
  InvolutionKind kind = InvolutionKind::First;
  InvolutionType type = InvolutionType::Orthogonal;
};

struct AlgebraWithInvolution {
  AlgebraRef alg;
  Involution inv;
  std::vector<Vec> sym, skew, symd, alt;
  Vec apply(const Vec& x) const { return inv.map.apply(x); }
};

/// Verifies σ² = id, σ(1) = 1, σ(xy) = σ(y)σ(x); throws InvalidInput with the violated identity.
void verify_involution(const StructureAlgebra& a, const LinearMap& sigma);
AlgebraWithInvolution involution_attach(const AlgebraRef& a, const LinearMap& sigma,
                                        std::optional<InvolutionKind> expected = std::nullopt);
/// Kind and type from the action on the center and dim Sym (char ≠ 2) or 1 ∈ Alt (char 2).
InvolutionType involution_type(const AlgebraWithInvolution& awi);

LinearMap tensor_map(const LinearMap& f, const LinearMap& g);
LinearMap transpose_involution(FieldRef f, std::size_t n);
/// σ±([[a,b],[c,d]]) = [[d, ±b], [±c, a]] on M₂(F).
LinearMap sigma_pm(FieldRef f, int sign);
/// Standard involution γ(x) = Trd(x) − x of a quaternion algebra.
LinearMap quaternion_gamma(const StructureAlgebra& q);
/// x ↦ u σ(x) u⁻¹.
LinearMap inner_twist(const StructureAlgebra& a, const LinearMap& sigma, const Vec& u);

// ---------------------------------------------------------------------------

struct HomVerdict {
  bool ok = true;
  std::string detail;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

/// Checks f(1) = 1, multiplicativity on all basis pairs of A, and τ∘f = f∘σ when given.
HomVerdict hom_verify(const LinearMap& f, const StructureAlgebra& a, const StructureAlgebra& b,
                      const LinearMap* sigma_a = nullptr, const LinearMap* tau_b = nullptr);

/// x ↦ left multiplication by x, into M_dim(F).
LinearMap left_regular(const StructureAlgebra& a);

/// A quaternion symbol (a, b) with [A] = (a, b) for a 4-dimensional central simple algebra, char ≠ 2.
std::pair<Scalar, Scalar> quaternion_symbol(const StructureAlgebra& a);

}  // namespace quadcomp
