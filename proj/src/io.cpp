#include "quadcomp/io.hpp"

#include "quadcomp/clifford.hpp"

namespace quadcomp::io {

namespace {

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(ErrorKind::InvalidInput, "expected a scalar string, got " + j.dump());
}

std::size_t as_index(const json& j) {
  if (!j.is_number_unsigned() && !j.is_number_integer()) fail(ErrorKind::InvalidInput, "expected an index, got " + j.dump());
  long long v = j.get<long long>();
  if (v < 0) fail(ErrorKind::InvalidInput, "negative index");
  return static_cast<std::size_t>(v);
}

mpq_class rational_from(const json& j) {
  mpq_class v;
  std::string t = as_text(j);
  if (v.set_str(t, 10) != 0 || v.get_den() == 0) fail(ErrorKind::InvalidInput, "bad rational literal '" + t + "'");
  v.canonicalize();
  return v;
}

json opt(const std::optional<BrauerClass2>& c) { return c ? to_json(*c) : json(nullptr); }

json form_json(const QuadraticSpace& q) {
  json rows = json::array();
  for (std::size_t i = 0; i < q.n; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < q.n; ++j) r.push_back(to_json(q.coeffs(i, j)));
    rows.push_back(r);
  }
  return {{"matrix", rows}, {"text", q.to_string()}};
}

}  // namespace

json to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from(FieldRef f, const json& j) { return Scalar::parse(f, as_text(j)); }

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vec vec_from(FieldRef f, const json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "expected a list of scalars");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from(f, x));
  return v;
}

json to_json(const SparseVec& v) {
  json out = json::array();
  for (const auto& [i, x] : v) out.push_back(json::array({i, to_json(x)}));
  return out;
}

SparseVec sparse_from(FieldRef f, const json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "expected a sparse vector");
  SparseVec v;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) fail(ErrorKind::InvalidInput, "sparse entries are [index, value] pairs");
    Scalar x = scalar_from(f, e[1]);
    std::size_t i = as_index(e[0]);
    if (!v.empty() && v.back().first >= i) fail(ErrorKind::InvalidInput, "sparse indices must increase");
    if (!x.is_zero()) v.emplace_back(static_cast<std::uint32_t>(i), x);
  }
  return v;
}

json to_json(const LinearMap& m) {
  json cols = json::array();
  for (const auto& c : m.cols) cols.push_back(to_json(c));
  return {{"rows", m.rows}, {"cols", cols}};
}

LinearMap map_from(FieldRef f, const json& j) {
  LinearMap m{f, as_index(at(j, "rows")), {}};
  for (const auto& c : at(j, "cols")) {
    m.cols.push_back(sparse_from(f, c));
    if (!m.cols.back().empty() && m.cols.back().back().first >= m.rows)
      fail(ErrorKind::InvalidInput, "linear map entry outside its row range");
  }
  return m;
}

json to_json(const StructureAlgebra& a) {
  json table = json::array();
  for (const auto& e : a.table) table.push_back(to_json(e));
  json gens = json::array();
  for (const auto& g : a.generators) gens.push_back(to_json(to_sparse(g)));
  return {{"dim", a.dim}, {"unit", to_json(to_sparse(a.unit))}, {"table", table}, {"generators", gens},
          {"provenance", a.provenance}};
}

AlgebraRef algebra_from(FieldRef f, const json& j) {
  StructureAlgebra a;
  a.field = f;
  a.dim = as_index(at(j, "dim"));
  if (a.dim == 0 || a.dim > 4096) fail(ErrorKind::InputTooLarge, "algebra dimension out of range");
  const json& table = at(j, "table");
  if (!table.is_array() || table.size() != a.dim * a.dim) fail(ErrorKind::InvalidInput, "table must have dim^2 entries");
  for (const auto& e : table) {
    a.table.push_back(sparse_from(f, e));
    if (!a.table.back().empty() && a.table.back().back().first >= a.dim)
      fail(ErrorKind::InvalidInput, "table entry outside the algebra");
  }
  a.unit = to_dense(f, a.dim, sparse_from(f, at(j, "unit")));
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) a.generators.push_back(to_dense(f, a.dim, sparse_from(f, g)));
  a.provenance = j.value("provenance", std::string("deserialized"));
  for (std::size_t i = 0; i < a.dim; ++i) a.labels.push_back("b" + std::to_string(i));
  return make_algebra(std::move(a));
}

json to_json(const EtaleQuadratic& e) {
  json out = {{"name", e.to_string()}, {"split", e.split}, {"datum", to_json(e.datum)}};
  if (e.squarefree) out["squarefree"] = e.squarefree->get_str();
  return out;
}

json to_json(const BrauerClass2& c) {
  json syms = json::array();
  for (const auto& s : c.symbols()) syms.push_back(json::array({s.a.get_str(), s.b.get_str()}));
  json out = {{"name", c.to_string()}, {"symbols", syms}, {"trivial", is_trivial(c)}};
  out["over"] = c.over() ? json(to_json(c.over()->datum)) : json(nullptr);
  if (c.conjugated()) out["conjugated"] = true;
  if (c.field()->is_rational()) {
    json inv = json::object();
    for (const auto& [place, v] : local_invariants(c))
      if (v == -1) inv[place.to_string()] = -1;
    out["invariants"] = inv;
  }
  return out;
}

BrauerClass2 class_from(FieldRef f, const json& j) {
  const json& syms = j.is_object() ? at(j, "symbols") : j;
  if (!syms.is_array()) fail(ErrorKind::InvalidInput, "a class is a list of symbol pairs");
  std::vector<Symbol> symbols;
  for (const auto& s : syms) {
    if (!s.is_array() || s.size() != 2) fail(ErrorKind::InvalidInput, "symbols are [a, b] pairs");
    Symbol sym{rational_from(s[0]), rational_from(s[1])};
    if (sym.a == 0 || sym.b == 0) fail(ErrorKind::InvalidInput, "symbol entries must be nonzero");
    symbols.push_back(sym);
  }
  BrauerClass2 c = BrauerClass2::of_symbols(f, std::move(symbols));
  if (j.is_object() && j.contains("over") && !j.at("over").is_null()) {
    c = c.restrict_to(quad_ext_info(f, scalar_from(f, j.at("over"))));
    if (j.value("conjugated", false)) c = class_conjugate(c);
  }
  return c;
}

json to_json(const InvariantProfile& p) {
  json out = {{"field", p.field->name()},
              {"n", p.n},
              {"k", p.k},
              {"parity", to_string(p.parity)},
              {"kind", to_string(p.kind)},
              {"canonical_type", to_string(p.canonical)}};
  out["center"] = p.center ? to_json(*p.center) : json(nullptr);
  out["clifford"] = opt(p.clifford);
  out["plus"] = opt(p.plus);
  out["minus"] = opt(p.minus);
  out["over_center"] = opt(p.over_center);
  out["full_clifford"] = opt(p.full_clifford);
  out["algebra_class"] = opt(p.algebra_class);
  if (p.form) out["form"] = form_json(*p.form);
  if (p.quaternions)
    out["quaternions"] = json::array({json::array({p.quaternions->first.a.get_str(), p.quaternions->first.b.get_str()}),
                                      json::array({p.quaternions->second.a.get_str(), p.quaternions->second.b.get_str()})});
  return out;
}

json to_json(const McdResult& r) {
  json out = {{"status", to_string(r.status)},
              {"log2", r.log2},
              {"case", r.case_label},
              {"divisibility", r.divisibility},
              {"detail", r.detail}};
  if (r.status != McdStatus::NotCovered && r.log2 < 63) out["degree"] = 1ULL << r.log2;
  if (r.epsilon) out["epsilon"] = *r.epsilon;
  if (r.delta) out["delta"] = *r.delta;
  if (r.d) out["d"] = *r.d;
  return out;
}

json to_json(const BoundReport& b) {
  return {{"log2", b.log2}, {"degree", 1ULL << b.log2}, {"equality", b.equality}, {"condition", b.condition},
          {"case", b.case_label}};
}

json to_json(const AdmissibilityVerdict& v) {
  return {{"admissible", v.admissible}, {"case", v.case_used}, {"detail", v.detail}, {"minimal", v.minimal}};
}

json to_json(const HermitianCheck& c) {
  json out = {{"verified", c.ok}, {"checks", c.checks}};
  if (!c.ok) {
    out["detail"] = c.detail;
    if (c.x) out["counterexample"] = {{"x", to_json(*c.x)}, {"y1", to_json(*c.y1)}, {"y2", to_json(*c.y2)}};
  }
  return out;
}

json to_json(const HermitianComposition& h) {
  json out = {{"n", h.n},
              {"dim_e", h.dim_e},
              {"z", to_json(h.z)},
              {"epsilon", h.epsilon},
              {"normalization", to_json(h.normalization)},
              {"values_involution", to_string(h.values.inv.type)},
              {"regular", h.regular}};
  if (h.regular) {
    json m = json::array();
    for (const auto& v : h.multipliers) m.push_back(to_json(to_sparse(v)));
    out["multipliers"] = m;
  } else {
    json phi = json::array();
    for (const auto& row : h.phi) {
      json r = json::array();
      for (const auto& v : row) r.push_back(to_json(v));
      phi.push_back(r);
    }
    json ht = json::array();
    for (const auto& v : h.h_table) ht.push_back(to_json(v));
    out["phi"] = phi;
    out["h"] = ht;
  }
  return out;
}

json to_json(const Example1Bundle& b) {
  json images = json::array();
  for (const auto& m : b.images) {
    json rows = json::array();
    for (std::size_t r = 0; r < 2; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 2; ++c)
        row.push_back(to_json(Vec(m.begin() + static_cast<long>((r * 2 + c) * 4),
                                  m.begin() + static_cast<long>((r * 2 + c) * 4 + 4))));
      rows.push_back(row);
    }
    images.push_back(rows);
  }
  json h1 = to_json(b.h1), h2 = to_json(b.h2);
  h1["check"] = to_json(b.check1);
  h2["check"] = to_json(b.check2);
  h1["verified"] = b.check1.ok;
  h2["verified"] = b.check2.ok;
  return {{"a", to_json(b.a)},
          {"b", to_json(b.b)},
          {"q", form_json(b.q)},
          {"q_prime", form_json(b.q_prime)},
          {"images", images},
          {"quaternion_basis", json::array({"1", "i", "j", "ij"})},
          {"relations", {{"verified", b.relations_ok}, {"detail", b.relations_detail}}},
          {"isomorphism",
           {{"verified", b.iso_verdict.ok}, {"bijective", b.bijective}, {"detail", b.iso_verdict.detail},
            {"map", to_json(b.iso)}}},
          {"h1", h1},
          {"h2", h2},
          {"certified", b.verified()}};
}

// ---------------------------------------------------------------------------

Problem parse_problem(const std::string& field, const json& object, const std::optional<std::string>& type,
                      const std::optional<json>& cls, const std::optional<std::string>& s) {
  Problem pr;
  pr.field = Field::parse(field);
  FieldRef F = pr.field;
  pr.object = object;
  if (!object.is_object()) fail(ErrorKind::InvalidInput, "--object must be a JSON object");
  if (object.contains("diag")) {
    Vec d = vec_from(F, object.at("diag"));
    if (d.empty() || d.size() > 10) fail(ErrorKind::InputTooLarge, "forms of dimension 1..10 are supported");
    pr.profile = invariant_profile(qf_make_diag(F, d));
  } else if (object.contains("matrix")) {
    const json& rows = object.at("matrix");
    if (!rows.is_array() || rows.empty() || rows.size() > 10) fail(ErrorKind::InvalidInput, "matrix must be a square list of rows");
    const std::size_t n = rows.size();
    Mat m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec r = vec_from(F, rows[i]);
      if (r.size() != n) fail(ErrorKind::InvalidInput, "matrix must be square");
      for (std::size_t j = 0; j < n; ++j) {
        // q(x) = Σ m_ij x_i x_j, folded onto the upper triangle
        if (i <= j) m(i, j) = m(i, j) + r[j];
        else m(j, i) = m(j, i) + r[j];
      }
    }
    pr.profile = invariant_profile(qf_make(F, m));
  } else if (object.contains("quaternions")) {
    const json& qs = object.at("quaternions");
    if (!qs.is_array() || qs.size() != 2 || qs[0].size() != 2 || qs[1].size() != 2)
      fail(ErrorKind::InvalidInput, "quaternions must be [[a1, b1], [a2, b2]]");
    Symbol q1{rational_from(qs[0][0]), rational_from(qs[0][1])}, q2{rational_from(qs[1][0]), rational_from(qs[1][1])};
    pr.profile = invariant_profile_tensor(F, q1, q2);
  } else {
    fail(ErrorKind::InvalidInput, "--object needs one of \"diag\", \"matrix\", \"quaternions\"");
  }
  pr.request = {{"field", F->name()}, {"object", object}};
  if (type) {
    InvolutionType t = parse_involution_type(*type);
    BrauerClass2 c = cls ? class_from(F, *cls) : BrauerClass2::trivial(F);
    if (c.over()) fail(ErrorKind::InvalidInput, "--class is given over the base field");
    pr.request["type"] = to_string(t);
    pr.request["class"] = cls ? *cls : json::array();
    if (t == InvolutionType::Unitary) {
      if (!s) fail(ErrorKind::InvalidInput, "unitary types need --s");
      EtaleQuadratic S = quad_ext_info(F, Scalar::parse(F, *s));
      pr.type = CompositionType::unitary(S, c.restrict_to(S));
      pr.request["s"] = *s;
    } else {
      pr.type = CompositionType::first_kind(t, c);
    }
  }
  return pr;
}

Problem parse_problem(const json& request) {
  std::optional<std::string> type, s;
  std::optional<json> cls;
  if (request.contains("type")) type = request.at("type").get<std::string>();
  if (request.contains("class")) cls = request.at("class");
  if (request.contains("s")) s = as_text(request.at("s"));
  return parse_problem(at(request, "field").get<std::string>(), at(request, "object"), type, cls, s);
}

json to_json(const CompositionWitness& w, const Problem& problem, const ConstructOptions& opts) {
  return {{"problem", problem.request},
          {"seed", opts.seed},
          {"truncation_cap", opts.truncation_cap},
          {"mcd", to_json(w.mcd)},
          {"degree", w.degree},
          {"injective", w.injective},
          {"type", to_string(w.target.inv.type)},
          {"target_class", to_json(w.target_class)},
          {"admissible", to_json(w.admissible)},
          {"hom_verified", w.verdict.ok},
          {"trace", w.trace},
          {"source", {{"dim", w.source.alg->dim}, {"provenance", w.source.alg->provenance}}},
          {"target", {{"algebra", to_json(*w.target.alg)}, {"involution", to_json(w.target.inv.map)}}},
          {"hom", to_json(w.hom)}};
}

WitnessCheck verify_witness(const json& bundle) {
  WitnessCheck out;
  auto bad = [&](const std::string& why) {
    out.ok = false;
    out.detail = why;
    out.report["verified"] = false;
    out.report["detail"] = why;
    return out;
  };
  Problem pr = parse_problem(at(bundle, "problem"));
  if (!pr.type) fail(ErrorKind::InvalidInput, "the recorded problem has no composition type");
  FieldRef F = pr.field;
  unsigned cap = bundle.value("truncation_cap", 4u);
  CliffordAlgebra source = composition_source(pr.profile, cap);
  if (source.carrier->dim != as_index(at(at(bundle, "source"), "dim"))) return bad("source dimension differs from the rebuilt C(P)");

  CompositionWitness w;
  w.source = source.canonical;
  w.type = *pr.type;
  w.mcd = mcd(pr.profile, w.type);
  w.form = pr.profile.form;
  const json& target = at(bundle, "target");
  auto b = algebra_from(F, at(target, "algebra"));
  LinearMap tau = map_from(F, at(target, "involution"));
  if (tau.rows != b->dim || tau.cols.size() != b->dim) return bad("involution has the wrong shape");
  w.target = involution_attach(b, tau);
  w.hom = map_from(F, at(bundle, "hom"));
  if (w.hom.rows != b->dim || w.hom.cols.size() != source.carrier->dim) return bad("hom has the wrong shape");
  w.target_class = class_from(F, at(bundle, "target_class"));
  w.degree = at(bundle, "degree").get<unsigned long>();
  w.injective = sparse_rank(w.hom) == source.carrier->dim;

  out.report["problem"] = pr.request;
  out.report["mcd"] = to_json(w.mcd);
  if (w.mcd.status == McdStatus::NotCovered) return bad("the recorded problem is not covered");
  HomVerdict v = recheck_witness(w);
  out.report["hom"] = {{"verified", v.ok}, {"detail", v.detail}};
  if (!v.ok) return bad(v.detail);
  auto adm = admissible_degree(pr.profile, w.type, w.degree, w.injective);
  out.report["admissible"] = to_json(adm);
  if (!adm.admissible) return bad("degree is not admissible");
  const unsigned long value = 1UL << w.mcd.log2;
  if (w.mcd.status == McdStatus::Exact && w.degree != value) return bad("degree differs from the exact minimal value");
  if (w.degree % value != 0) return bad("degree is not a multiple of the minimal value");
  if (bundle.contains("injective") && bundle.at("injective").get<bool>() != w.injective)
    return bad("recorded injectivity is wrong");
  out.report["degree"] = w.degree;
  out.report["injective"] = w.injective;
  out.report["type"] = to_string(w.target.inv.type);
  out.report["verified"] = true;
  return out;
}

}  // namespace quadcomp::io
