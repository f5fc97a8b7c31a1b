#pragma once

// JSON encoding of problems and results. Scalars are strings throughout
// ("-3/4" over Q, "2" or "1:0:1" over GF(p^k)); sparse vectors are lists of
// [index, "value"] pairs.

#include <optional>
#include <string>

#include "json.hpp"
#include "quadcomp/compose.hpp"

namespace quadcomp::io {

using nlohmann::json;

json to_json(const Scalar& s);
Scalar scalar_from(FieldRef f, const json& j);
json to_json(const Vec& v);
Vec vec_from(FieldRef f, const json& j);
json to_json(const SparseVec& v);
SparseVec sparse_from(FieldRef f, const json& j);
json to_json(const LinearMap& m);
LinearMap map_from(FieldRef f, const json& j);
/// Structure constants, unit and provenance; the result is re-verified by make_algebra.
json to_json(const StructureAlgebra& a);
AlgebraRef algebra_from(FieldRef f, const json& j);

json to_json(const EtaleQuadratic& e);
json to_json(const BrauerClass2& c);
/// Accepts a list of symbol pairs or an object {"symbols": [...], "over": datum}.
BrauerClass2 class_from(FieldRef f, const json& j);

json to_json(const InvariantProfile& p);
json to_json(const McdResult& r);
json to_json(const BoundReport& b);
json to_json(const AdmissibilityVerdict& v);
json to_json(const HermitianCheck& c);
json to_json(const HermitianComposition& h);
json to_json(const Example1Bundle& b);

/// A problem as given on the command line: field, object and optional type request.
struct Problem {
  FieldRef field = nullptr;
  json object;
  InvariantProfile profile;
  std::optional<CompositionType> type;
  json request;  ///< normalized {"field","object","type","class","s"} echo
};

/// Objects: {"diag": [...]}, {"matrix": [[...]]} with q(x) = Σ m_ij x_i x_j, or
/// {"quaternions": [[a1, b1], [a2, b2]]}. `s` is the datum m of F[X]/(X² − m)
/// (the Artin–Schreier datum in characteristic 2).
Problem parse_problem(const std::string& field, const json& object, const std::optional<std::string>& type,
                      const std::optional<json>& cls, const std::optional<std::string>& s);
Problem parse_problem(const json& request);

json to_json(const CompositionWitness& w, const Problem& problem, const ConstructOptions& opts);

struct WitnessCheck {
  bool ok = true;
  std::string detail;
  json report;
};

/// Rebuilds the source from the recorded problem, re-verifies the recorded
/// target algebra, involution and hom, and reruns every witness certificate.
WitnessCheck verify_witness(const json& bundle);

}  // namespace quadcomp::io
