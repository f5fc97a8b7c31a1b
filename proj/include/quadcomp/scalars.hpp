#pragma once

// Exact base fields: the rationals (GMP-backed) and small finite fields GF(p^k).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadcomp/error.hpp"

namespace quadcomp {

class Field;
using FieldRef = const Field*;

/// A base field. Instances are interned and live for the whole process, so a
/// FieldRef can be copied freely and compared by pointer.
class Field {
 public:
  static FieldRef rationals();
  /// GF(p^k) with the lexicographically first monic irreducible polynomial.
  static FieldRef finite(std::uint32_t p, std::uint32_t k = 1);
  /// GF(p^k) with an explicit monic defining polynomial, coefficients low to high.
  static FieldRef finite(std::uint32_t p, const std::vector<std::uint32_t>& poly);
  /// Parses "Q", "GF(p)", "GF(p^k)".
  static FieldRef parse(const std::string& name);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return k_; }
  std::uint32_t order() const { return q_; }  ///< 0 for the rationals
  const std::vector<std::uint32_t>& defining_polynomial() const { return poly_; }
  std::string name() const;

  // Finite-field kernels on element indices (base-p digits of the coefficient vector).
  std::uint32_t ff_add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t ff_neg(std::uint32_t a) const;
  std::uint32_t ff_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t ff_inv(std::uint32_t a) const;
  std::uint32_t ff_from_int(long v) const;

  Field(std::uint32_t p, std::vector<std::uint32_t> poly);  // use the factories

 private:
  std::uint32_t p_ = 0;
  std::uint32_t k_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> poly_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint16_t> add_table_;
};

/// An element of a Field. The default-constructed value is a field-less zero
/// that adopts the field of the other operand in arithmetic.
class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldRef f, long v);
  Scalar(FieldRef f, const mpq_class& v);
  static Scalar zero(FieldRef f) { return Scalar(f, 0L); }
  static Scalar one(FieldRef f) { return Scalar(f, 1L); }
  static Scalar from_index(FieldRef f, std::uint32_t idx);
  /// Parses "num/den" for the rationals; a decimal or colon-separated coefficient list for GF(p^k).
  static Scalar parse(FieldRef f, const std::string& s);

  FieldRef field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  const mpq_class& rational() const { return q_; }
  std::uint32_t index() const { return e_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FieldRef field_ = nullptr;
  mpq_class q_;
  std::uint32_t e_ = 0;
};

// ---------------------------------------------------------------------------
// Number theory over the rationals.

/// Default bound on |numerator| and |denominator| accepted by factorization.
inline const mpz_class kDefaultFactorBound = mpz_class(1) << 63;

/// Prime factorization by trial division; throws InputTooLarge when |n| ≥ bound.
std::map<mpz_class, unsigned> factorize(const mpz_class& n, const mpz_class& bound = kDefaultFactorBound);

/// Square-free integer in the square class of a nonzero rational.
mpz_class squarefree_part(const mpq_class& x, const mpz_class& bound = kDefaultFactorBound);

bool is_square(FieldRef f, const Scalar& x, const mpz_class& bound = kDefaultFactorBound);

/// A place of the rationals: the real place (prime == 0) or a finite prime.
struct Place {
  unsigned long prime = 0;
  bool is_infinite() const { return prime == 0; }
  bool operator<(const Place& o) const { return prime < o.prime; }
  bool operator==(const Place& o) const { return prime == o.prime; }
  std::string to_string() const { return prime == 0 ? "inf" : std::to_string(prime); }
  static Place infinity() { return Place{0}; }
  static Place finite(unsigned long p) { return Place{p}; }
  static Place parse(const std::string& s);
};

/// Whether x is a square in the completion of Q at v.
bool is_local_square(const mpq_class& x, Place v);

/// Hilbert symbol (a, b)_v ∈ {+1, −1} for nonzero rationals.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, Place v);

/// Finite places where some symbol (a, b) can be nontrivial, plus the real place and 2.
std::vector<Place> relevant_places(const std::vector<mpq_class>& entries,
                                   const mpz_class& bound = kDefaultFactorBound);

// ---------------------------------------------------------------------------
// Separable quadratic étale algebras.

enum class LocalSplitting { Split, Inert, Ramified };
const char* to_string(LocalSplitting s);

/// F[X]/(X² − m) in characteristic ≠ 2, F[X]/(X² + X + a) in characteristic 2.
struct EtaleQuadratic {
  FieldRef base = nullptr;
  Scalar datum;   ///< m (char ≠ 2) or the Artin–Schreier datum a (char 2)
  bool split = false;
  /// Square-free representative of the square class of m; only over Q.
  std::optional<mpz_class> squarefree;

  std::string to_string() const;
  /// Isomorphic as F-algebras.
  bool isomorphic(const EtaleQuadratic& o) const;
  /// Over Q: behaviour of the place v in this algebra.
  LocalSplitting splitting_at(Place v) const;
};

EtaleQuadratic quad_ext_info(FieldRef f, const Scalar& datum);
/// Split algebra F × F.
EtaleQuadratic split_etale(FieldRef f);
/// Whether a is of the form x² + x in the (finite) field f.
bool is_artin_schreier(FieldRef f, const Scalar& a);

}  // namespace quadcomp
