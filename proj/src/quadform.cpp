#include "quadcomp/quadform.hpp"

#include <functional>

namespace quadcomp {

Scalar QuadraticSpace::eval(const Vec& x) const {
  require(x.size() == n, "vector length does not match the form");
  Scalar s = Scalar::zero(field);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = i; j < n; ++j)
      if (!coeffs(i, j).is_zero()) s += coeffs(i, j) * x[i] * x[j];
  }
  return s;
}

Mat QuadraticSpace::polar_matrix() const {
  return coeffs + coeffs.transpose();
}

Scalar QuadraticSpace::polar(const Vec& x, const Vec& y) const {
  require(x.size() == n && y.size() == n, "vector length does not match the form");
  return dot(x, polar_matrix() * y);
}

bool QuadraticSpace::is_diagonal() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!coeffs(i, j).is_zero()) return false;
  return true;
}

Vec QuadraticSpace::diagonal() const {
  Vec d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(coeffs(i, i));
  return d;
}

QuadraticSpace QuadraticSpace::transformed(const Mat& t) const {
  require(t.rows() == n && t.cols() == n, "change of basis has the wrong size");
  return qf_make(field, t.transpose() * coeffs * t);
}

QuadraticSpace QuadraticSpace::scaled(const Scalar& lambda) const {
  Mat m = coeffs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = lambda * m(i, j);
  return qf_make(field, m);
}

std::string QuadraticSpace::to_string() const {
  std::string s;
  if (is_diagonal()) {
    s = "<";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + coeffs(i, i).to_string();
    return s + ">";
  }
  s = "[";
  for (std::size_t i = 0; i < n; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < n; ++j) s += (j ? "," : "") + coeffs(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

QuadraticSpace qf_make(FieldRef f, const Mat& m) {
  require(m.rows() == m.cols(), "coefficient matrix must be square");
  require(m.rows() > 0, "quadratic space of dimension 0");
  QuadraticSpace q;
  q.field = f;
  q.n = m.rows();
  q.coeffs = Mat(f, q.n, q.n);
  for (std::size_t i = 0; i < q.n; ++i) {
    q.coeffs(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < q.n; ++j) q.coeffs(i, j) = m(i, j) + m(j, i);
  }
  return q;
}

QuadraticSpace qf_make_diag(FieldRef f, const Vec& diag) {
  require(!diag.empty(), "quadratic space of dimension 0");
  Mat m(f, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return qf_make(f, m);
}

std::pair<Scalar, Scalar> qf_eval_polar(const QuadraticSpace& q, const Vec& x, const Vec& y) {
  return {q.eval(x), q.polar(x, y)};
}

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::Regular: return "regular";
    case Regularity::Semiregular: return "semiregular";
    case Regularity::Singular: return "singular";
  }
  return "?";
}

RegularityReport regularity_classify(const QuadraticSpace& q) {
  RegularityReport r;
  r.radical = kernel(q.polar_matrix());
  bool char2 = q.field->characteristic() == 2;
  if (r.radical.empty()) {
    r.cls = Regularity::Regular;
  } else if (char2 && q.n % 2 == 1 && r.radical.size() == 1 && !q.eval(r.radical[0]).is_zero()) {
    // on a line, q(t r) = t² q(r) vanishes only at t = 0
    r.cls = Regularity::Semiregular;
  } else {
    r.cls = Regularity::Singular;
  }
  return r;
}

bool is_regular(const QuadraticSpace& q) { return regularity_classify(q).cls == Regularity::Regular; }

Diagonalization diagonalize(const QuadraticSpace& q) {
  require(q.field->characteristic() != 2, "diagonalization needs characteristic different from 2");
  require(is_regular(q), "cannot diagonalize a singular form");
  FieldRef f = q.field;
  std::vector<Vec> rest;
  for (std::size_t i = 0; i < q.n; ++i) rest.push_back(unit_vec(f, q.n, i));
  std::vector<Vec> basis;
  Vec diag;
  Scalar two(f, 2L);
  while (!rest.empty()) {
    std::size_t k = rest.size();
    for (std::size_t i = 0; i < rest.size() && k == rest.size(); ++i)
      if (!q.eval(rest[i]).is_zero()) k = i;
    Vec v;
    if (k < rest.size()) {
      v = rest[k];
      rest.erase(rest.begin() + k);
    } else {
      // every remaining vector is isotropic; some pair has nonzero polar value
      bool found = false;
      for (std::size_t i = 0; i < rest.size() && !found; ++i)
        for (std::size_t j = i + 1; j < rest.size() && !found; ++j)
          if (!q.polar(rest[i], rest[j]).is_zero()) {
            rest[i] = add(rest[i], rest[j]);
            found = true;
          }
      if (!found) fail(ErrorKind::CertificationFailure, "diagonalization hit a degenerate complement");
      continue;
    }
    Scalar qv = q.eval(v);
    for (auto& w : rest) w = sub(w, scale(q.polar(w, v) / (two * qv), v));
    basis.push_back(v);
    diag.push_back(qv);
  }
  return {Mat::from_columns(f, q.n, basis), diag};
}

EtaleQuadratic center_invariant(const QuadraticSpace& q) {
  require(q.n % 2 == 0, "center invariant needs an even-dimensional form");
  require(is_regular(q), "center invariant needs a regular form");
  FieldRef f = q.field;
  if (f->characteristic() != 2) {
    Scalar m = Scalar::one(f);
    for (const auto& a : diagonalize(q).diag) m *= a;
    if ((q.n * (q.n - 1) / 2) % 2 == 1) m = -m;
    return quad_ext_info(f, m);
  }
  // Arf invariant along a symplectic basis of the polar form
  std::vector<Vec> rest;
  for (std::size_t i = 0; i < q.n; ++i) rest.push_back(unit_vec(f, q.n, i));
  Scalar arf = Scalar::zero(f);
  while (!rest.empty()) {
    Vec e = rest.back();
    rest.pop_back();
    std::size_t k = rest.size();
    for (std::size_t i = 0; i < rest.size() && k == rest.size(); ++i)
      if (!q.polar(e, rest[i]).is_zero()) k = i;
    if (k == rest.size()) fail(ErrorKind::CertificationFailure, "polar form degenerate during Arf computation");
    Vec g = scale(q.polar(e, rest[k]).inverse(), rest[k]);
    rest.erase(rest.begin() + k);
    arf += q.eval(e) * q.eval(g);
    for (auto& w : rest) w = sub(sub(w, scale(q.polar(w, g), e)), scale(q.polar(w, e), g));
  }
  return quad_ext_info(f, arf);
}

CliffordClass clifford_class(const QuadraticSpace& q) {
  require(q.field->is_rational(), "Clifford class computation needs the rationals");
  require(q.is_diagonal(), "Clifford class computation needs a diagonal form; diagonalize first");
  require(is_regular(q), "Clifford class of a singular form");
  FieldRef f = q.field;
  Vec a = q.diagonal();
  std::vector<Symbol> syms;
  mpq_class d = 1;
  for (std::size_t i = 0; i < q.n; ++i) {
    d *= a[i].rational();
    for (std::size_t j = i + 1; j < q.n; ++j) syms.push_back({a[i].rational(), a[j].rational()});
  }
  switch (q.n % 8) {
    case 3: case 4: syms.push_back({-1, -d}); break;
    case 5: case 6: syms.push_back({-1, -1}); break;
    case 7: case 0: syms.push_back({-1, d}); break;
    default: break;
  }
  CliffordClass out{BrauerClass2::of_symbols(f, syms), {}, {}, {}, {}};
  if (q.n % 2 == 0) {
    out.center = center_invariant(q);
    if (out.center->split) {
      out.plus = out.base_class;
      out.minus = out.base_class;
    } else {
      out.over_center = out.base_class.restrict_to(*out.center);
    }
  }
  return out;
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& r) {
  if (r < 0) return std::nullopt;
  mpz_class n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(sn, sd);
}

constexpr std::size_t kSearchBudget = 400000;

}  // namespace

std::optional<Vec> represents_one(const QuadraticSpace& q, const std::optional<Vec>& hint, long bound) {
  FieldRef f = q.field;
  if (hint) {
    require(hint->size() == q.n, "hint has the wrong length");
    require(q.eval(*hint).is_one(), "hint does not satisfy q(z) = 1");
    return hint;
  }
  std::size_t budget = kSearchBudget;
  if (!f->is_rational()) {
    std::uint32_t order = f->order();
    Vec x = zero_vec(f, q.n);
    std::vector<std::uint32_t> idx(q.n, 0);
    while (budget-- > 0) {
      std::size_t i = 0;
      while (i < q.n && ++idx[i] == order) idx[i++] = 0;
      if (i == q.n) return std::nullopt;
      for (std::size_t j = 0; j <= i && j < q.n; ++j) x[j] = Scalar::from_index(f, idx[j]);
      if (q.eval(x).is_one()) return x;
    }
    return std::nullopt;
  }
  // integer vectors by growing sup-norm; x/√q(x) whenever q(x) is a rational square
  Vec x = zero_vec(f, q.n);
  std::vector<long> c(q.n);
  for (long b = 1; b <= bound; ++b) {
    std::function<bool(std::size_t, bool)> rec;
    std::optional<Vec> hit;
    rec = [&](std::size_t i, bool at_max) -> bool {
      if (i == q.n) {
        if (!at_max) return false;
        if (budget == 0) return true;
        --budget;
        for (std::size_t j = 0; j < q.n; ++j) x[j] = Scalar(f, c[j]);
        if (auto s = rational_sqrt(q.eval(x).rational()); s && *s != 0) {
          Scalar inv(f, 1 / *s);
          hit = scale(inv, x);
          return true;
        }
        return false;
      }
      for (long v = -b; v <= b; ++v) {
        c[i] = v;
        if (rec(i + 1, at_max || v == b || v == -b)) return true;
      }
      return false;
    };
    if (rec(0, false)) return hit;
  }
  return std::nullopt;
}

}  // namespace quadcomp
