#include "quadcomp/scalars.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace quadcomp {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  // m is monic
  while (a.size() >= m.size()) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Exhaustive test: no monic factor of degree 1..deg/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      std::uint64_t x = c;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly index_to_poly(std::uint32_t idx, std::uint32_t p, std::uint32_t k) {
  Poly r(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    r[i] = idx % p;
    idx /= p;
  }
  trim(r);
  return r;
}

std::uint32_t poly_to_index(const Poly& a, std::uint32_t p) {
  std::uint32_t idx = 0;
  for (std::size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
  return idx;
}

struct FieldKey {
  std::uint32_t p;
  Poly poly;
  bool operator<(const FieldKey& o) const { return std::tie(p, poly) < std::tie(o.p, o.poly); }
};

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<FieldKey, std::unique_ptr<Field>>& registry() {
  static std::map<FieldKey, std::unique_ptr<Field>> r;
  return r;
}

FieldRef intern(std::uint32_t p, const Poly& poly) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry();
  FieldKey key{p, poly};
  auto it = reg.find(key);
  if (it != reg.end()) return it->second.get();
  auto f = std::make_unique<Field>(p, poly);
  FieldRef ref = f.get();
  reg.emplace(std::move(key), std::move(f));
  return ref;
}

}  // namespace

Field::Field(std::uint32_t p, std::vector<std::uint32_t> poly) : p_(p), poly_(std::move(poly)) {
  if (p_ == 0) return;
  k_ = static_cast<std::uint32_t>(poly_.size() - 1);
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
  // Multiplication tables via a primitive element found by exhaustive order check.
  auto mul_raw = [&](std::uint32_t a, std::uint32_t b) {
    return poly_to_index(poly_mod(poly_mul(index_to_poly(a, p_, k_), index_to_poly(b, p_, k_), p_), poly_, p_), p_);
  };
  log_.assign(q_, 0);
  exp_.assign(2 * q_, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t order = 0;
    do {
      x = mul_raw(x, g);
      ++order;
    } while (x != 1 && order < q_);
    if (order != q_ - 1) continue;
    x = 1;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      exp_[e] = x;
      exp_[e + q_ - 1] = x;
      log_[x] = e;
      x = mul_raw(x, g);
    }
    break;
  }
  if (q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t r = 0, m = 1, x = a, y = b;
        for (std::uint32_t i = 0; i < k_; ++i) {
          r += ((x % p_ + y % p_) % p_) * m;
          m *= p_;
          x /= p_;
          y /= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(r);
      }
  }
}

FieldRef Field::rationals() { return intern(0, {}); }

FieldRef Field::finite(std::uint32_t p, std::uint32_t k) {
  require(is_prime_u32(p), "field characteristic must be prime");
  require(k >= 1, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  if (q > 65536) fail(ErrorKind::InputTooLarge, "finite fields are limited to at most 65536 elements");
  if (k == 1) return intern(p, {0, 1});
  std::uint64_t count = q;
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly f(k + 1, 0);
    std::uint64_t x = c;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible(f, p)) return intern(p, f);
  }
  fail(ErrorKind::CertificationFailure, "no irreducible polynomial found");
}

FieldRef Field::finite(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  require(is_prime_u32(p), "field characteristic must be prime");
  require(poly.size() >= 2 && poly.back() == 1, "defining polynomial must be monic of degree >= 1");
  for (auto c : poly) require(c < p, "defining polynomial coefficients must be reduced mod p");
  std::uint64_t q = 1;
  for (std::size_t i = 1; i < poly.size(); ++i) q *= p;
  if (q > 65536) fail(ErrorKind::InputTooLarge, "finite fields are limited to at most 65536 elements");
  require(is_irreducible(poly, p), "defining polynomial is reducible");
  return intern(p, poly);
}

FieldRef Field::parse(const std::string& name) {
  if (name == "Q" || name == "QQ" || name == "rationals") return rationals();
  unsigned p = 0, k = 1;
  if (std::sscanf(name.c_str(), "GF(%u^%u)", &p, &k) == 2 || std::sscanf(name.c_str(), "GF(%u)", &p) == 1)
    return finite(p, k);
  fail(ErrorKind::InvalidInput, "unknown field '" + name + "'");
}

std::string Field::name() const {
  if (p_ == 0) return "Q";
  if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

std::uint32_t Field::ff_add(std::uint32_t a, std::uint32_t b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  if (k_ == 1) return (a + b) % p_;
  std::uint32_t r = 0, m = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * m;
    m *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t Field::ff_neg(std::uint32_t a) const {
  std::uint32_t r = 0, m = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((p_ - a % p_) % p_) * m;
    m *= p_;
    a /= p_;
  }
  return r;
}

std::uint32_t Field::ff_mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

std::uint32_t Field::ff_inv(std::uint32_t a) const {
  if (a == 0) fail(ErrorKind::InvalidInput, "division by zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t Field::ff_from_int(long v) const {
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

// ---------------------------------------------------------------------------

Scalar::Scalar(FieldRef f, long v) : field_(f) {
  if (f->is_rational())
    q_ = v;
  else
    e_ = f->ff_from_int(v);
}

Scalar::Scalar(FieldRef f, const mpq_class& v) : field_(f) {
  if (f->is_rational()) {
    q_ = v;
    q_.canonicalize();
  } else {
    mpz_class num = v.get_num(), den = v.get_den();
    unsigned long p = f->characteristic();
    unsigned long n = mpz_fdiv_ui(num.get_mpz_t(), p);
    unsigned long d = mpz_fdiv_ui(den.get_mpz_t(), p);
    require(d != 0, "denominator divisible by the characteristic");
    e_ = f->ff_mul(static_cast<std::uint32_t>(n), f->ff_inv(static_cast<std::uint32_t>(d)));
  }
}

Scalar Scalar::from_index(FieldRef f, std::uint32_t idx) {
  require(!f->is_rational() && idx < f->order(), "finite-field index out of range");
  Scalar s;
  s.field_ = f;
  s.e_ = idx;
  return s;
}

Scalar Scalar::parse(FieldRef f, const std::string& text) {
  if (f->is_rational()) {
    mpq_class v;
    std::string t = text;
    if (t.empty() || v.set_str(t, 10) != 0) fail(ErrorKind::InvalidInput, "bad rational literal '" + text + "'");
    if (v.get_den() == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
    v.canonicalize();
    return Scalar(f, v);
  }
  if (text.find(':') == std::string::npos) {
    mpq_class v;
    if (v.set_str(text, 10) != 0) fail(ErrorKind::InvalidInput, "bad finite-field literal '" + text + "'");
    return Scalar(f, v);
  }
  // colon-separated coefficients c0:c1:...
  std::vector<std::uint32_t> coeffs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) coeffs.push_back(static_cast<std::uint32_t>(std::stoul(part) % f->characteristic()));
  require(coeffs.size() <= f->extension_degree(), "too many coefficients for " + f->name());
  std::uint32_t idx = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) idx = idx * f->characteristic() + coeffs[i];
  return from_index(f, idx);
}

bool Scalar::is_zero() const {
  if (!field_) return true;
  return field_->is_rational() ? q_ == 0 : e_ == 0;
}

bool Scalar::is_one() const {
  if (!field_) return false;
  return field_->is_rational() ? q_ == 1 : e_ == 1;
}

namespace {
FieldRef pick(FieldRef a, FieldRef b) { return a ? a : b; }
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r(*this);
  r += o;
  return r;
}
Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r(*this);
  r -= o;
  return r;
}
Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r(*this);
  r *= o;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  FieldRef f = pick(field_, o.field_);
  if (!f) return *this;
  if (!field_) *this = zero(f);
  if (!o.field_) return *this;
  if (f->is_rational())
    q_ += o.q_;
  else
    e_ = f->ff_add(e_, o.e_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  FieldRef f = pick(field_, o.field_);
  if (!f) return *this;
  if (!field_) *this = zero(f);
  if (!o.field_) return *this;
  if (f->is_rational())
    q_ -= o.q_;
  else
    e_ = f->ff_add(e_, f->ff_neg(o.e_));
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  FieldRef f = pick(field_, o.field_);
  if (!f) return *this;
  if (!field_ || !o.field_) {
    *this = zero(f);
    return *this;
  }
  if (f->is_rational())
    q_ *= o.q_;
  else
    e_ = f->ff_mul(e_, o.e_);
  return *this;
}

Scalar Scalar::operator-() const {
  if (!field_) return *this;
  Scalar r(*this);
  if (field_->is_rational())
    r.q_ = -q_;
  else
    r.e_ = field_->ff_neg(e_);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::InvalidInput, "division by zero");
  Scalar r(*this);
  if (field_->is_rational())
    r.q_ = 1 / q_;
  else
    r.e_ = field_->ff_inv(e_);
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar base = *this;
  Scalar r = one(field_);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_zero() && o.is_zero()) return true;
  if (!field_ || !o.field_) return false;
  if (field_->is_rational()) return q_ == o.q_;
  return e_ == o.e_;
}

std::string Scalar::to_string() const {
  if (!field_) return "0";
  if (field_->is_rational()) return q_.get_str();
  if (field_->extension_degree() == 1) return std::to_string(e_);
  std::string out;
  std::uint32_t x = e_;
  for (std::uint32_t i = 0; i < field_->extension_degree(); ++i) {
    if (i) out += ':';
    out += std::to_string(x % field_->characteristic());
    x /= field_->characteristic();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::map<mpz_class, unsigned> factorize(const mpz_class& n_in, const mpz_class& bound) {
  mpz_class n = abs(n_in);
  if (n >= bound) fail(ErrorKind::InputTooLarge, "input too large to factor: " + n_in.get_str());
  std::map<mpz_class, unsigned> out;
  if (n == 0) fail(ErrorKind::InvalidInput, "cannot factor zero");
  for (unsigned long d = 2; n > 1; ++d) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 2) {
      out[n] += 1;
      break;
    }
    mpz_class dd = d;
    if (dd * dd > n) {
      out[n] += 1;
      break;
    }
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      out[dd] += 1;
    }
  }
  return out;
}

mpz_class squarefree_part(const mpq_class& x, const mpz_class& bound) {
  require(x != 0, "square class of zero is undefined");
  if (abs(x.get_den()) >= bound) fail(ErrorKind::InputTooLarge, "denominator too large to factor");
  std::map<mpz_class, unsigned> exps = factorize(x.get_num(), bound);
  for (auto& [p, e] : factorize(x.get_den(), bound)) exps[p] += e;
  mpz_class r = x < 0 ? -1 : 1;
  for (auto& [p, e] : exps)
    if (e % 2) r *= p;
  return r;
}

bool is_square(FieldRef f, const Scalar& x, const mpz_class& bound) {
  if (x.is_zero()) return true;
  if (f->is_rational()) {
    const mpq_class& v = x.rational();
    if (abs(v.get_num()) >= bound || v.get_den() >= bound)
      fail(ErrorKind::InputTooLarge, "input too large for square test: " + v.get_str());
    if (v < 0) return false;
    return mpz_perfect_square_p(v.get_num().get_mpz_t()) && mpz_perfect_square_p(v.get_den().get_mpz_t());
  }
  if (f->characteristic() == 2) return true;
  return x.pow((f->order() - 1) / 2).is_one();
}

Place Place::parse(const std::string& s) {
  if (s == "inf" || s == "infinity") return infinity();
  unsigned long p = std::stoul(s);
  require(is_prime_u32(static_cast<std::uint32_t>(p)), "place must be 'inf' or a prime");
  return finite(p);
}

namespace {

// x = p^v · u with u a p-adic unit; integer input.
int valuation(mpz_class& u, unsigned long p) {
  int v = 0;
  while (u != 0 && mpz_divisible_ui_p(u.get_mpz_t(), p)) {
    u /= p;
    ++v;
  }
  return v;
}

// Integer in the same square class as the rational x.
mpz_class integral_rep(const mpq_class& x) { return x.get_num() * x.get_den(); }

int legendre(const mpz_class& u, unsigned long p) {
  mpz_class pp = p;
  return mpz_legendre(u.get_mpz_t(), pp.get_mpz_t());
}

unsigned mod8(const mpz_class& u) { return static_cast<unsigned>(mpz_fdiv_ui(u.get_mpz_t(), 8)); }

}  // namespace

bool is_local_square(const mpq_class& x, Place v) {
  require(x != 0, "local square test of zero");
  if (v.is_infinite()) return x > 0;
  mpz_class u = integral_rep(x);
  int val = valuation(u, v.prime);
  if (val % 2) return false;
  if (v.prime == 2) return mod8(u) == 1;
  return legendre(u, v.prime) == 1;
}

int hilbert_symbol(const mpq_class& a, const mpq_class& b, Place v) {
  require(a != 0 && b != 0, "Hilbert symbol needs nonzero entries");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  mpz_class u = integral_rep(a), w = integral_rep(b);
  const unsigned long p = v.prime;
  int alpha = valuation(u, p), beta = valuation(w, p);
  if (p == 2) {
    auto eps = [](const mpz_class& x) { return (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3) ? 1 : 0; };
    auto omega = [](const mpz_class& x) {
      unsigned r = mod8(x);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2) ? -1 : 1;
  }
  int sign = 1;
  if ((alpha * beta) % 2 && (p % 4 == 3)) sign = -sign;
  if (beta % 2) sign *= legendre(u, p);
  if (alpha % 2) sign *= legendre(w, p);
  return sign;
}

std::vector<Place> relevant_places(const std::vector<mpq_class>& entries, const mpz_class& bound) {
  std::vector<Place> out{Place::infinity(), Place::finite(2)};
  for (const auto& x : entries) {
    require(x != 0, "zero symbol entry");
    for (const mpz_class* part : {&x.get_num(), &x.get_den()}) {
      for (auto& [p, e] : factorize(*part, bound)) {
        if (!p.fits_ulong_p()) fail(ErrorKind::InputTooLarge, "prime too large");
        Place pl = Place::finite(p.get_ui());
        if (std::find(out.begin(), out.end(), pl) == out.end()) out.push_back(pl);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(LocalSplitting s) {
  switch (s) {
    case LocalSplitting::Split: return "split";
    case LocalSplitting::Inert: return "inert";
    case LocalSplitting::Ramified: return "ramified";
  }
  return "?";
}

bool is_artin_schreier(FieldRef f, const Scalar& a) {
  require(!f->is_rational() && f->characteristic() == 2, "Artin-Schreier test needs characteristic 2");
  for (std::uint32_t i = 0; i < f->order(); ++i) {
    Scalar x = Scalar::from_index(f, i);
    if (x * x + x == a) return true;
  }
  return false;
}

EtaleQuadratic quad_ext_info(FieldRef f, const Scalar& datum) {
  EtaleQuadratic e;
  e.base = f;
  e.datum = datum.field() ? datum : Scalar::zero(f);
  if (f->characteristic() == 2) {
    e.split = is_artin_schreier(f, e.datum);
    return e;
  }
  require(!e.datum.is_zero(), "quadratic datum m must be nonzero");
  e.split = is_square(f, e.datum);
  if (f->is_rational()) e.squarefree = squarefree_part(e.datum.rational());
  return e;
}

EtaleQuadratic split_etale(FieldRef f) {
  return quad_ext_info(f, f->characteristic() == 2 ? Scalar::zero(f) : Scalar::one(f));
}

std::string EtaleQuadratic::to_string() const {
  if (split) return base->name() + "x" + base->name();
  if (base->characteristic() == 2) return base->name() + "[X]/(X^2+X+" + datum.to_string() + ")";
  if (squarefree) return "Q(sqrt(" + squarefree->get_str() + "))";
  return base->name() + "[X]/(X^2-" + datum.to_string() + ")";
}

bool EtaleQuadratic::isomorphic(const EtaleQuadratic& o) const {
  if (base != o.base) return false;
  if (split || o.split) return split == o.split;
  if (base->is_rational()) return *squarefree == *o.squarefree;
  return true;  // a finite field has a unique quadratic extension
}

LocalSplitting EtaleQuadratic::splitting_at(Place v) const {
  require(base->is_rational() && squarefree.has_value(), "local splitting is only defined over Q");
  const mpz_class& m = *squarefree;
  if (v.is_infinite()) return m > 0 ? LocalSplitting::Split : LocalSplitting::Ramified;
  if (m == 1) return LocalSplitting::Split;
  if (is_local_square(mpq_class(m), v)) return LocalSplitting::Split;
  if (mpz_divisible_ui_p(m.get_mpz_t(), v.prime)) return LocalSplitting::Ramified;
  if (v.prime == 2) return mod8(m) == 5 ? LocalSplitting::Inert : LocalSplitting::Ramified;
  return LocalSplitting::Inert;
}

}  // namespace quadcomp
