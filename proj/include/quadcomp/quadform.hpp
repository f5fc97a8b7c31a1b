#pragma once

// Quadratic spaces in any characteristic, stored as q(x) = xᵀMx with M upper
// triangular, and their classical invariants.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadcomp/brauer.hpp"
#include "quadcomp/linalg.hpp"

namespace quadcomp {

struct QuadraticSpace {
  FieldRef field = nullptr;
  std::size_t n = 0;
  Mat coeffs;  ///< upper triangular

  Scalar eval(const Vec& x) const;
  Scalar polar(const Vec& x, const Vec& y) const;
  /// b_q as a matrix: M + Mᵀ.
  Mat polar_matrix() const;
  bool is_diagonal() const;
  Vec diagonal() const;
  /// q ∘ T for a change of basis whose columns are the new basis vectors.
  QuadraticSpace transformed(const Mat& t) const;
  QuadraticSpace scaled(const Scalar& lambda) const;
  std::string to_string() const;
};

/// Accepts an arbitrary square matrix and folds the lower triangle into the upper one.
QuadraticSpace qf_make(FieldRef f, const Mat& m);
QuadraticSpace qf_make_diag(FieldRef f, const Vec& diag);
std::pair<Scalar, Scalar> qf_eval_polar(const QuadraticSpace& q, const Vec& x, const Vec& y);

enum class Regularity { Regular, Semiregular, Singular };
const char* to_string(Regularity r);

struct RegularityReport {
  Regularity cls = Regularity::Regular;
  std::vector<Vec> radical;  ///< of the polar form
};

RegularityReport regularity_classify(const QuadraticSpace& q);
bool is_regular(const QuadraticSpace& q);

struct Diagonalization {
  Mat t;      ///< columns: the new orthogonal basis
  Vec diag;   ///< q-values of the new basis vectors
};

/// Orthogonal basis in characteristic ≠ 2 for a regular form.
Diagonalization diagonalize(const QuadraticSpace& q);

/// Discriminant algebra Z: (−1)^{n(n−1)/2}·det in characteristic ≠ 2, the Arf
/// invariant in characteristic 2. Needs n even and q regular.
EtaleQuadratic center_invariant(const QuadraticSpace& q);

/// Clifford invariant over Q of a regular diagonal form.
struct CliffordClass {
  /// [C₀(q)] for n odd, [C(q)] for n even.
  BrauerClass2 base_class;
  std::optional<EtaleQuadratic> center;           ///< n even
  std::optional<BrauerClass2> plus, minus;        ///< n even, Z split: [C⁺], [C⁻]
  std::optional<BrauerClass2> over_center;        ///< n even, Z a field: [C₀] in Br(Z)
};

CliffordClass clifford_class(const QuadraticSpace& q);

/// Some z with q(z) = 1. Checks the hint first (InvalidInput if it is wrong);
/// otherwise a bounded search, nullopt when nothing was found.
std::optional<Vec> represents_one(const QuadraticSpace& q, const std::optional<Vec>& hint = std::nullopt,
                                  long bound = 10);

}  // namespace quadcomp
