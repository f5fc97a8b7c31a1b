#include "quadcomp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "quadcomp/io.hpp"
#include "quadcomp/selftest.hpp"

namespace quadcomp::cli {

namespace {

using io::json;

struct Options {
  std::string field = "Q";
  std::string object;
  std::optional<std::string> type, cls, s;
  std::uint64_t seed = 1;
  std::optional<unsigned long> bound;
  unsigned truncation_cap = 4;
  bool hermitian = false;
  std::string witness = "-";
  std::string a = "-1", b = "-1";
};

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

io::Problem problem_of(const Options& o, bool need_type) {
  if (o.object.empty()) fail(ErrorKind::InvalidInput, "--object is required");
  if (need_type && !o.type) fail(ErrorKind::InvalidInput, "--type is required");
  std::optional<json> cls;
  if (o.cls) cls = parse_json(*o.cls, "--class");
  return io::parse_problem(o.field, parse_json(o.object, "--object"), o.type, cls, o.s);
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InputTooLarge: return kInvalid;
    case ErrorKind::NotCovered: return kNotCovered;
    case ErrorKind::CertificationFailure:
    case ErrorKind::SearchExhausted: return kCertification;
  }
  return kCertification;
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

int cmd_invariants(const Options& o, std::ostream& out) {
  auto pr = problem_of(o, false);
  out << json{{"problem", pr.request}, {"profile", io::to_json(pr.profile)}}.dump(2) << "\n";
  return kOk;
}

int cmd_mcd(const Options& o, std::ostream& out, std::ostream& err) {
  auto pr = problem_of(o, true);
  McdResult r = mcd(pr.profile, *pr.type);
  out << io::to_json(r).dump(2) << "\n";
  if (r.status == McdStatus::NotCovered) {
    error_json(err, to_string(ErrorKind::NotCovered), r.case_label + ": " + r.detail);
    return kNotCovered;
  }
  return kOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  auto pr = problem_of(o, true);
  json res = {{"problem", pr.request}, {"bound", io::to_json(lower_bound(pr.profile, *pr.type))}};
  McdResult r = mcd(pr.profile, *pr.type);
  res["mcd"] = io::to_json(r);
  if (o.bound) {
    res["candidate"] = *o.bound;
    res["admissible"] = io::to_json(admissible_degree(pr.profile, *pr.type, *o.bound));
  }
  out << res.dump(2) << "\n";
  return kOk;
}

int cmd_compose(const Options& o, std::ostream& out) {
  auto pr = problem_of(o, true);
  ConstructOptions opts{o.seed, o.truncation_cap};
  auto w = construct_composition(pr.profile, *pr.type, opts);
  json res = io::to_json(w, pr, opts);
  res["bound"] = io::to_json(lower_bound(pr.profile, *pr.type));
  if (o.hermitian) {
    if (!w.form) fail(ErrorKind::InvalidInput, "--hermitian needs a form object");
    auto z = represents_one(*w.form);
    if (!z) fail(ErrorKind::SearchExhausted, "no z with q(z) = 1 found among small vectors");
    auto hc = hermitian_from_hom(w, *z);
    res["hermitian"] = io::to_json(hc);
    res["hermitian"]["check"] = io::to_json(verify_hermitian_identity(hc, *w.form));
  }
  out << res.dump() << "\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::stringstream buf;
  if (o.witness == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(o.witness);
    if (!in) fail(ErrorKind::InvalidInput, "cannot read " + o.witness);
    buf << in.rdbuf();
  }
  auto check = io::verify_witness(parse_json(buf.str(), "the witness"));
  out << check.report.dump(2) << "\n";
  if (!check.ok) {
    error_json(err, to_string(ErrorKind::CertificationFailure), check.detail);
    return kCertification;
  }
  return kOk;
}

int cmd_example1(const Options& o, std::ostream& out, std::ostream& err) {
  FieldRef F = Field::parse(o.field);
  auto bundle = example1_reproduce(F, Scalar::parse(F, o.a), Scalar::parse(F, o.b));
  out << io::to_json(bundle).dump(2) << "\n";
  if (!bundle.verified()) {
    error_json(err, to_string(ErrorKind::CertificationFailure), "example certificates failed");
    return kCertification;
  }
  return kOk;
}

int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err) {
  json items = json::array();
  bool ok = true;
  for (const auto& it : run_selftest(o.seed)) {
    items.push_back({{"name", it.name}, {"passed", it.ok}, {"detail", it.detail}, {"seconds", it.seconds}});
    ok = ok && it.ok;
  }
  out << json{{"passed", ok}, {"checks", items}}.dump(2) << "\n";
  if (!ok) {
    error_json(err, to_string(ErrorKind::CertificationFailure), "selftest failed");
    return kCertification;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic compositions and Clifford algebras of quadratic pairs"};
  app.require_subcommand(1);
  Options o;
  auto problem_flags = [&](CLI::App* sub, bool typed) {
    sub->add_option("--field", o.field, "Q or GF(p) or GF(p^k)");
    sub->add_option("--object", o.object, R"(JSON: {"diag":[...]}, {"matrix":[[...]]} or {"quaternions":[[a1,b1],[a2,b2]]})")
        ->required();
    if (typed) {
      sub->add_option("--type", o.type, "orthogonal, symplectic or unitary")->required();
      sub->add_option("--class", o.cls, R"(target class as JSON symbol pairs, e.g. [["-1","-1"]])");
      sub->add_option("--s", o.s, "datum m of the center S = F[X]/(X^2 - m) for unitary types");
    }
  };
  auto* inv = app.add_subcommand("invariants", "invariant profile of a pair");
  problem_flags(inv, false);
  auto* mc = app.add_subcommand("mcd", "minimal composition degree");
  problem_flags(mc, true);
  auto* bd = app.add_subcommand("bound", "lower bound with its equality condition");
  problem_flags(bd, true);
  bd->add_option("--bound", o.bound, "candidate degree to test against the admissible forms");
  auto* cp = app.add_subcommand("compose", "construct and certify a composition witness");
  problem_flags(cp, true);
  cp->add_option("--seed", o.seed, "seed of the randomized searches");
  cp->add_option("--truncation-cap", o.truncation_cap, "maximal tensor degree for pair Clifford algebras");
  cp->add_flag("--hermitian", o.hermitian, "also derive and check the hermitian composition (forms)");
  auto* vf = app.add_subcommand("verify", "re-check a serialized witness");
  vf->add_option("--witness", o.witness, "witness JSON file, - for stdin");
  auto* ex = app.add_subcommand("example1", "the five-dimensional example over (a, b)");
  ex->add_option("--field", o.field, "base field");
  ex->add_option("--a", o.a, "rational a");
  ex->add_option("--b", o.b, "rational b");
  auto* st = app.add_subcommand("selftest", "run the built-in property suites");
  st->add_option("--seed", o.seed, "seed of the random samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_json(err, to_string(ErrorKind::InvalidInput), e.what());
    return kInvalid;
  }

  try {
    if (*inv) return cmd_invariants(o, out);
    if (*mc) return cmd_mcd(o, out, err);
    if (*bd) return cmd_bound(o, out);
    if (*cp) return cmd_compose(o, out);
    if (*vf) return cmd_verify(o, out, err);
    if (*ex) return cmd_example1(o, out, err);
    if (*st) return cmd_selftest(o, out, err);
  } catch (const Error& e) {
    error_json(err, to_string(e.kind()), e.what());
    return exit_for(e.kind());
  } catch (const json::exception& e) {
    error_json(err, to_string(ErrorKind::InvalidInput), e.what());
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace quadcomp::cli
