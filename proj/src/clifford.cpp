#include "quadcomp/clifford.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace quadcomp {

namespace {

constexpr std::size_t kMaxCliffordDim = 8;

SparseVec from_map(const std::map<std::uint32_t, Scalar>& m) {
  SparseVec out;
  for (const auto& [k, v] : m)
    if (!v.is_zero()) out.emplace_back(k, v);
  return out;
}

// Products of ordered monomials e_S (S a bit mask) by a generator eⱼ on the right.
class MonomialRewriter {
 public:
  explicit MonomialRewriter(const QuadraticSpace& q) : q_(q), memo_((std::size_t{1} << q.n) * q.n) {}

  const SparseVec& times_gen(std::uint32_t s, std::size_t j) {
    auto& slot = memo_[s * q_.n + j];
    if (slot) return *slot;
    FieldRef f = q_.field;
    const std::uint32_t bj = 1u << j;
    SparseVec out;
    if (s == 0) {
      out = {{bj, Scalar::one(f)}};
    } else {
      const std::size_t last = 31 - std::countl_zero(s);
      if (last < j) {
        out = {{s | bj, Scalar::one(f)}};
      } else if (last == j) {
        const Scalar& c = q_.coeffs(j, j);
        if (!c.is_zero()) out = {{s ^ bj, c}};
      } else {
        // e_{S'} e_last e_j = b(e_last, e_j) e_{S'} − (e_{S'} e_j) e_last
        const std::uint32_t rest = s ^ (1u << last);
        std::map<std::uint32_t, Scalar> acc;
        const Scalar& b = q_.coeffs(j, last);
        if (!b.is_zero()) acc[rest] += b;
        SparseVec inner = times_gen(rest, j);
        for (const auto& [t, c] : inner) acc[t | (1u << last)] -= c;
        out = from_map(acc);
      }
    }
    slot = std::move(out);
    return *slot;
  }

  SparseVec times_gen(const SparseVec& x, std::size_t j) {
    std::map<std::uint32_t, Scalar> acc;
    for (const auto& [s, c] : x)
      for (const auto& [t, d] : times_gen(s, j)) acc[t] += c * d;
    return from_map(acc);
  }

  SparseVec product(std::uint32_t s, std::uint32_t t) {
    SparseVec x{{s, Scalar::one(q_.field)}};
    for (std::size_t j = 0; j < q_.n; ++j)
      if (t & (1u << j)) x = times_gen(x, j);
    return x;
  }

  SparseVec reversal(std::uint32_t s) {
    SparseVec x{{0, Scalar::one(q_.field)}};
    for (std::size_t j = q_.n; j-- > 0;)
      if (s & (1u << j)) x = times_gen(x, j);
    return x;
  }

 private:
  const QuadraticSpace& q_;
  std::vector<std::optional<SparseVec>> memo_;
};

std::string mask_label(std::uint32_t s) {
  if (s == 0) return "1";
  std::string out;
  for (std::size_t j = 0; j < 32; ++j)
    if (s & (1u << j)) out += "e" + std::to_string(j + 1);
  return out;
}

bool even_mask(std::uint32_t s) { return std::popcount(s) % 2 == 0; }

SparseVec remap(const SparseVec& v, const std::vector<std::uint32_t>& index) {
  SparseVec out;
  for (const auto& [k, c] : v) out.emplace_back(index[k], c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

std::size_t even_index(std::uint32_t mask) {
  if (mask % 2 == 0) return mask / 2;
  return (mask - 1) / 2 + (even_mask(mask - 1) ? 1 : 0);
}

CliffordAlgebra clifford_full(const QuadraticSpace& q) {
  if (q.n > kMaxCliffordDim) fail(ErrorKind::InputTooLarge, "Clifford algebra of a form of dimension > 8");
  FieldRef f = q.field;
  const std::size_t dim = std::size_t{1} << q.n;
  MonomialRewriter rw(q);
  StructureAlgebra a;
  a.field = f;
  a.dim = dim;
  a.table.resize(dim * dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    a.labels.push_back(mask_label(s));
    for (std::uint32_t t = 0; t < dim; ++t) a.table[s * dim + t] = rw.product(s, t);
  }
  a.unit = a.basis(0);
  for (std::size_t j = 0; j < q.n; ++j) a.generators.push_back(a.basis(std::size_t{1} << j));
  if (q.n % 2 == 0 && is_regular(q)) a.degree = 1u << (q.n / 2);
  a.provenance = "C(" + q.to_string() + ")";
  CliffordAlgebra c;
  c.images = a.generators;
  c.carrier = make_algebra(std::move(a));
  for (std::uint32_t s = 0; s < dim; ++s) c.masks.push_back(s);
  LinearMap rev{f, dim, {}};
  for (std::uint32_t s = 0; s < dim; ++s) rev.cols.push_back(rw.reversal(s));
  try {
    c.canonical = involution_attach(c.carrier, rev);
  } catch (const Error&) {
    // not central simple over a quadratic center (singular q): keep the bare involution
    verify_involution(*c.carrier, rev);
    c.canonical.alg = c.carrier;
    c.canonical.inv.map = rev;
  }
  return c;
}

CliffordAlgebra clifford_even(const QuadraticSpace& q) {
  if (q.n > kMaxCliffordDim) fail(ErrorKind::InputTooLarge, "Clifford algebra of a form of dimension > 8");
  FieldRef f = q.field;
  const std::uint32_t full = 1u << q.n;
  std::vector<std::uint32_t> masks, index(full, 0);
  for (std::uint32_t s = 0; s < full; ++s)
    if (even_mask(s)) {
      index[s] = static_cast<std::uint32_t>(masks.size());
      masks.push_back(s);
    }
  const std::size_t dim = masks.size();
  MonomialRewriter rw(q);
  StructureAlgebra a;
  a.field = f;
  a.dim = dim;
  a.table.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    a.labels.push_back(mask_label(masks[i]));
    for (std::size_t j = 0; j < dim; ++j) a.table[i * dim + j] = remap(rw.product(masks[i], masks[j]), index);
  }
  a.unit = a.basis(0);
  for (std::size_t i = 0; i < q.n; ++i)
    for (std::size_t j = i + 1; j < q.n; ++j) a.generators.push_back(a.basis(index[(1u << i) | (1u << j)]));
  if (q.n % 2 == 1 && (f->characteristic() != 2 || regularity_classify(q).cls != Regularity::Singular))
    a.degree = 1u << ((q.n - 1) / 2);
  a.provenance = "C0(" + q.to_string() + ")";
  CliffordAlgebra c;
  c.carrier = make_algebra(std::move(a));
  c.masks = masks;
  LinearMap rev{f, dim, {}};
  for (auto s : masks) rev.cols.push_back(remap(rw.reversal(s), index));
  try {
    c.canonical = involution_attach(c.carrier, rev);
  } catch (const Error&) {
    // degenerate q: C₀ is not central simple over its center
    verify_involution(*c.carrier, rev);
    c.canonical.alg = c.carrier;
    c.canonical.inv.map = rev;
  }
  return c;
}

LinearMap sandwich(const StructureAlgebra& a, const Vec& u) {
  const std::size_t d = a.dim;
  require(u.size() == d * d, "sandwich: element of A (x) A has the wrong length");
  LinearMap m{a.field, d, {}};
  for (std::size_t k = 0; k < d; ++k) {
    Vec acc = a.zero();
    SparseVec bk{{static_cast<std::uint32_t>(k), Scalar::one(a.field)}};
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Scalar& c = u[i * d + j];
        if (c.is_zero()) continue;
        SparseVec bi{{static_cast<std::uint32_t>(i), Scalar::one(a.field)}};
        SparseVec bj{{static_cast<std::uint32_t>(j), Scalar::one(a.field)}};
        Vec t = a.mul_sparse(to_sparse(a.mul_sparse(bi, bk)), bj);
        acc = add(acc, scale(c, t));
      }
    m.cols.push_back(to_sparse(acc));
  }
  return m;
}

SandwichSpace sandwich_and_j2(const AlgebraWithInvolution& awi) {
  const StructureAlgebra& a = *awi.alg;
  require(awi.inv.kind == InvolutionKind::First, "sandwich_and_j2 needs an involution of the first kind");
  const std::size_t d = a.dim;
  FieldRef f = a.field;
  // Sand(u) must vanish on Alt(A, σ) = {x − σ(x)}
  std::vector<SparseVec> alt;
  for (const auto& v : awi.alt) alt.push_back(to_sparse(v));
  LinearMap cond{f, d * alt.size(), {}};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      SparseVec bi{{static_cast<std::uint32_t>(i), Scalar::one(f)}};
      SparseVec bj{{static_cast<std::uint32_t>(j), Scalar::one(f)}};
      SparseVec col;
      for (std::size_t k = 0; k < alt.size(); ++k) {
        Vec t = a.mul_sparse(to_sparse(a.mul_sparse(bi, alt[k])), bj);
        for (std::size_t r = 0; r < d; ++r)
          if (!t[r].is_zero()) col.emplace_back(static_cast<std::uint32_t>(k * d + r), t[r]);
      }
      cond.cols.push_back(std::move(col));
    }
  SandwichSpace out;
  for (const auto& k : sparse_kernel(cond)) {
    out.basis.push_back(to_dense(f, d * d, k));
    out.sand.push_back(sandwich(a, out.basis.back()));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Words over r letters of degree ≤ maxdeg, indexed degree by degree.
class WordIndex {
 public:
  WordIndex(std::size_t r, unsigned maxdeg) : r_(r) {
    std::size_t pw = 1;
    for (unsigned k = 0; k <= maxdeg; ++k) {
      offset_.push_back(total_);
      total_ += pw;
      pw *= r;
      if (pw == 0) break;
    }
    offset_.push_back(total_);
    for (std::size_t k = 0; k + 1 < offset_.size(); ++k)
      for (std::size_t c = 0; c < offset_[k + 1] - offset_[k]; ++c) {
        deg_.push_back(static_cast<unsigned>(k));
        code_.push_back(c);
      }
  }
  std::size_t count(unsigned maxdeg) const { return offset_[std::min<std::size_t>(maxdeg + 1, offset_.size() - 1)]; }
  unsigned degree(std::size_t idx) const { return deg_[idx]; }
  std::size_t index(unsigned deg, std::size_t code) const { return offset_[deg] + code; }
  std::size_t concat(std::size_t a, std::size_t b) const {
    std::size_t code = code_[a];
    for (unsigned k = 0; k < deg_[b]; ++k) code *= r_;
    return index(deg_[a] + deg_[b], code + code_[b]);
  }
  std::vector<std::size_t> letters(std::size_t idx) const {
    std::vector<std::size_t> out(deg_[idx]);
    std::size_t c = code_[idx];
    for (std::size_t k = out.size(); k-- > 0;) {
      out[k] = c % r_;
      c /= r_;
    }
    return out;
  }
  std::string label(std::size_t idx) const {
    if (deg_[idx] == 0) return "1";
    std::string s;
    for (auto t : letters(idx)) s += "w" + std::to_string(t + 1);
    return s;
  }

 private:
  std::size_t r_;
  std::size_t total_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<unsigned> deg_;
  std::vector<std::size_t> code_;
};

SparseVec poly_mul(const WordIndex& w, const SparseVec& x, const SparseVec& y) {
  std::map<std::uint32_t, Scalar> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) acc[static_cast<std::uint32_t>(w.concat(i, j))] += a * b;
  return from_map(acc);
}

}  // namespace

CliffordAlgebra clifford_of_pair(const QuadraticPair& p, unsigned cap) {
  const AlgebraWithInvolution& awi = p.awi;
  const StructureAlgebra& A = *awi.alg;
  FieldRef F = A.field;
  const std::size_t d = A.dim;
  if (p.degree == 0 || p.degree > 4)
    fail(ErrorKind::InputTooLarge, "Clifford algebra of a pair is computed for degree <= 4 only");
  const std::size_t expected = std::size_t{1} << (p.degree - 1);

  // T(A)/J₁ ≅ T(W) for a complement W of Sym, via a = w + s ↦ w + f(s)
  Echelon ech_sym(F, d);
  for (const auto& s : awi.sym) ech_sym.insert(to_sparse(s));
  std::vector<Vec> W;
  for (std::size_t j = 0; j < d; ++j)
    if (ech_sym.insert({{static_cast<std::uint32_t>(j), Scalar::one(F)}})) W.push_back(A.basis(j));
  const std::size_t r = W.size();
  std::vector<Vec> all = W;
  all.insert(all.end(), awi.sym.begin(), awi.sym.end());
  Coordinates coords(F, d, all);
  WordIndex words(r, std::max(cap, 2u));
  auto pi = [&](const Vec& a) {
    auto c = coords.of(a);
    if (!c) fail(ErrorKind::CertificationFailure, "complement of Sym does not span A");
    Scalar s = Scalar::zero(F);
    for (std::size_t i = 0; i < awi.sym.size(); ++i) s += p.f[i] * (*c)[r + i];
    SparseVec out;
    if (!s.is_zero()) out.emplace_back(0, s);
    for (std::size_t t = 0; t < r; ++t)
      if (!(*c)[t].is_zero()) out.emplace_back(static_cast<std::uint32_t>(words.index(1, t)), (*c)[t]);
    return out;
  };
  std::vector<SparseVec> pib;
  for (std::size_t j = 0; j < d; ++j) pib.push_back(pi(A.basis(j)));

  // J₂: u − Sand(u)(ℓ)
  auto sw = sandwich_and_j2(awi);
  std::vector<SparseVec> gens;
  for (std::size_t g = 0; g < sw.basis.size(); ++g) {
    const Vec& u = sw.basis[g];
    std::map<std::uint32_t, Scalar> acc;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Scalar& c = u[i * d + j];
        if (c.is_zero()) continue;
        for (const auto& [k, v] : poly_mul(words, pib[i], pib[j])) acc[k] += c * v;
      }
    for (const auto& [k, v] : pi(sw.sand[g].apply(p.ell))) acc[k] -= v;
    gens.push_back(from_map(acc));
  }

  for (unsigned K = 2; K <= std::max(cap, 2u); ++K) {
    const std::size_t nk = words.count(K);
    Echelon ech(F, nk);
    for (const auto& g : gens) {
      unsigned gdeg = 0;
      for (const auto& [k, v] : g) gdeg = std::max(gdeg, words.degree(k));
      for (std::size_t l = 0; l < nk; ++l) {
        if (words.degree(l) + gdeg > K) break;
        SparseVec lg = poly_mul(words, {{static_cast<std::uint32_t>(l), Scalar::one(F)}}, g);
        unsigned ldeg = words.degree(l) + gdeg;
        for (std::size_t rr = 0; rr < nk; ++rr) {
          if (ldeg + words.degree(rr) > K) break;
          ech.insert(poly_mul(words, lg, {{static_cast<std::uint32_t>(rr), Scalar::one(F)}}));
        }
      }
    }
    std::vector<std::size_t> normal;
    bool short_words = true;
    for (std::size_t i = 0; i < nk; ++i)
      if (!ech.is_pivot(i)) {
        normal.push_back(i);
        if (words.degree(i) >= K) short_words = false;
      }
    if (normal.empty() || normal[0] != 0) fail(ErrorKind::CertificationFailure, "the ideal contains 1");
    if (normal.size() != expected || !short_words) continue;

    // right multiplication by each letter on the normal words
    const std::size_t m = normal.size();
    std::vector<std::size_t> pos(nk, m);
    for (std::size_t i = 0; i < m; ++i) pos[normal[i]] = i;
    auto reduce_word = [&](std::size_t idx) {
      Vec out = zero_vec(F, m);
      for (const auto& [k, v] : ech.reduce(SparseVec{{static_cast<std::uint32_t>(idx), Scalar::one(F)}})) {
        if (pos[k] == m) fail(ErrorKind::CertificationFailure, "reduction left a non-normal word");
        out[pos[k]] = v;
      }
      return out;
    };
    std::vector<Mat> right(r);
    for (std::size_t t = 0; t < r; ++t) {
      std::vector<Vec> cols;
      for (std::size_t i = 0; i < m; ++i) cols.push_back(reduce_word(words.concat(normal[i], words.index(1, t))));
      right[t] = Mat::from_columns(F, m, cols);
    }
    StructureAlgebra c;
    c.field = F;
    c.dim = m;
    c.table.resize(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      c.labels.push_back(words.label(normal[i]));
      for (std::size_t j = 0; j < m; ++j) {
        Vec v = unit_vec(F, m, i);
        for (auto t : words.letters(normal[j])) v = right[t] * v;
        c.table[i * m + j] = to_sparse(v);
      }
    }
    c.unit = unit_vec(F, m, 0);
    std::vector<Vec> letter_img;
    for (std::size_t t = 0; t < r; ++t) letter_img.push_back(right[t] * c.unit);
    c.generators = letter_img;
    if (c.generators.empty()) c.generators.push_back(c.unit);
    c.provenance = "C(pair on " + A.provenance + ")";
    CliffordAlgebra out;
    out.carrier = make_algebra(std::move(c));
    out.truncation = K;
    auto image_of = [&](const Vec& a) {
      Vec v = zero_vec(F, m);
      for (const auto& [k, s] : pi(a)) {
        if (k == 0)
          v = add(v, scale(s, out.carrier->unit));
        else
          v = add(v, scale(s, letter_img[k - words.index(1, 0)]));
      }
      return v;
    };
    for (std::size_t j = 0; j < d; ++j) out.images.push_back(image_of(A.basis(j)));
    std::vector<Vec> sigma_letter;
    for (std::size_t t = 0; t < r; ++t) sigma_letter.push_back(image_of(awi.apply(W[t])));
    LinearMap sbar{F, m, {}};
    for (std::size_t i = 0; i < m; ++i) {
      Vec v = out.carrier->unit;
      auto ls = words.letters(normal[i]);
      for (std::size_t k = ls.size(); k-- > 0;) v = out.carrier->mul(v, sigma_letter[ls[k]]);
      sbar.cols.push_back(to_sparse(v));
    }
    out.canonical = involution_attach(out.carrier, sbar);
    return out;
  }
  fail(ErrorKind::CertificationFailure, "tensor quotient did not reach dimension " + std::to_string(expected) +
                                            " within truncation degree " + std::to_string(std::max(cap, 2u)));
}

// ---------------------------------------------------------------------------

SplitComparison split_compare(const QuadraticSpace& q) {
  FieldRef F = q.field;
  auto P = pair_from_form(q);
  auto C = clifford_of_pair(P);
  auto C0 = clifford_even(q);
  auto full = clifford_full(q);
  const std::size_t n = q.n;
  auto binv = inverse(q.polar_matrix());
  // φ_q(eᵢ ⊗ B⁻¹eⱼ) = E_ij ↦ eᵢ·(B⁻¹eⱼ) in C₀
  std::vector<Vec> psi;  // images of E_ij
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec u = full.carrier->zero();
      for (std::size_t l = 0; l < n; ++l) u = add(u, scale((*binv)(l, j), full.images[l]));
      Vec prod = full.carrier->mul(full.images[i], u);
      Vec e = zero_vec(F, C0.carrier->dim);
      for (std::size_t s = 0; s < prod.size(); ++s)
        if (!prod[s].is_zero()) {
          if (!even_mask(static_cast<std::uint32_t>(s)))
            fail(ErrorKind::CertificationFailure, "phi_q image is not even");
          e[even_index(static_cast<std::uint32_t>(s))] = prod[s];
        }
      psi.push_back(e);
    }
  // the quotient is spanned by products of images of A; extend ψ along the same products
  auto apply_psi = [&](const Vec& a) {
    Vec v = zero_vec(F, C0.carrier->dim);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!a[k].is_zero()) v = add(v, scale(a[k], psi[k]));
    return v;
  };
  const std::size_t m = C.carrier->dim;
  // express each basis word of C as a product of images of basis elements of A
  std::vector<Vec> targets(m), sources(m);
  Echelon ech(F, m);
  std::vector<std::pair<Vec, Vec>> spanning{{C.carrier->unit, C0.carrier->unit}};
  for (std::size_t round = 0; round < 4 && spanning.size() < 4096; ++round) {
    std::vector<std::pair<Vec, Vec>> next = spanning;
    for (const auto& [x, y] : spanning)
      for (std::size_t j = 0; j < P.awi.alg->dim; ++j)
        next.push_back({C.carrier->mul(x, C.images[j]), C0.carrier->mul(y, apply_psi(P.awi.alg->basis(j)))});
    spanning = std::move(next);
  }
  std::vector<Vec> src, dst;
  for (const auto& [x, y] : spanning)
    if (ech.insert(to_sparse(x))) {
      src.push_back(x);
      dst.push_back(y);
      if (src.size() == m) break;
    }
  SplitComparison out;
  if (src.size() != m) fail(ErrorKind::CertificationFailure, "images of A do not generate C(A, sigma, f)");
  auto sinv = inverse(Mat::from_columns(F, m, src));
  Mat mm = Mat::from_columns(F, C0.carrier->dim, dst) * *sinv;
  out.map = LinearMap::from_dense(mm);
  out.verdict = hom_verify(out.map, *C.carrier, *C0.carrier, &C.canonical.inv.map, &C0.canonical.inv.map);
  out.bijective = C.carrier->dim == C0.carrier->dim && rank(mm) == m;
  return out;
}

InvolutionType expected_canonical_type(FieldRef f, unsigned n) {
  const bool char2 = f->characteristic() == 2;
  if (n % 2 == 0) {
    unsigned k = n / 2;
    if (k % 2 == 1) return InvolutionType::Unitary;
    if (!char2 && k % 4 == 0) return InvolutionType::Orthogonal;
    return InvolutionType::Symplectic;
  }
  if (n == 1) return InvolutionType::Orthogonal;
  if (!char2 && (n % 8 == 1 || n % 8 == 7)) return InvolutionType::Orthogonal;
  return InvolutionType::Symplectic;
}

CliffordStructure clifford_structure(const CliffordAlgebra& c, unsigned n) {
  const StructureAlgebra& a = *c.carrier;
  CliffordStructure s;
  s.center = center_and_idempotents(a);
  s.type = c.canonical.inv.type;
  s.expected = expected_canonical_type(a.field, n);
  const std::size_t zdim = n % 2 == 0 ? 2 : 1;
  s.degree_over_center = n % 2 == 0 ? 1u << (n / 2 - 1) : 1u << ((n - 1) / 2);
  if (a.dim != (std::size_t{1} << (n - 1)))
    fail(ErrorKind::CertificationFailure, "Clifford algebra has dimension " + std::to_string(a.dim) + ", expected " +
                                              std::to_string(std::size_t{1} << (n - 1)));
  if (s.center.basis.size() != zdim)
    fail(ErrorKind::CertificationFailure, "Clifford algebra center has dimension " +
                                              std::to_string(s.center.basis.size()));
  if (s.type != s.expected)
    fail(ErrorKind::CertificationFailure, std::string("canonical involution is ") + to_string(s.type) +
                                              ", expected " + to_string(s.expected));
  if (s.center.split) {
    const Vec& e = *s.center.idempotent;
    Vec e2 = sub(a.unit, e);
    auto part = [&](const Vec& idem, const char* tag) {
      std::vector<Vec> vs;
      for (std::size_t i = 0; i < a.dim; ++i) vs.push_back(a.mul(idem, a.basis(i)));
      return subalgebra(a, span_basis(a.field, a.dim, vs), idem, a.provenance + tag);
    };
    s.plus = part(e, "+");
    s.minus = part(e2, "-");
  }
  return s;
}

}  // namespace quadcomp
