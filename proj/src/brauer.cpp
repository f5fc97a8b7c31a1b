#include "quadcomp/brauer.hpp"

#include <algorithm>
#include <set>

namespace quadcomp {

std::string BasePlace::to_string() const {
  std::string s = v.to_string();
  if (branch == 1) s += "+";
  if (branch == 2) s += "-";
  return s;
}

BrauerClass2 BrauerClass2::trivial(FieldRef f) {
  BrauerClass2 c;
  c.field_ = f;
  return c;
}

BrauerClass2 BrauerClass2::of_symbols(FieldRef f, std::vector<Symbol> symbols) {
  for (const auto& s : symbols) require(s.a != 0 && s.b != 0, "quaternion symbol entries must be nonzero");
  BrauerClass2 c;
  c.field_ = f;
  if (f->is_rational()) c.symbols_ = std::move(symbols);
  return c;
}

BrauerClass2 BrauerClass2::quaternion(FieldRef f, const mpq_class& a, const mpq_class& b) {
  return of_symbols(f, {{a, b}});
}

BrauerClass2 BrauerClass2::restrict_to(const EtaleQuadratic& s) const {
  require(s.base == field_, "restriction to an extension of a different base field");
  if (over_) {
    require(over_->isomorphic(s), "class is already restricted to a different extension");
    return *this;
  }
  BrauerClass2 c = *this;
  c.over_ = s;
  return c;
}

BrauerClass2 BrauerClass2::unrestricted() const {
  BrauerClass2 c = *this;
  c.over_.reset();
  return c;
}

std::string BrauerClass2::to_string() const {
  std::string out;
  for (const auto& s : symbols_) {
    if (!out.empty()) out += "*";
    out += "(" + s.a.get_str() + "," + s.b.get_str() + ")";
  }
  if (out.empty()) out = "1";
  if (over_) out = "res[" + over_->to_string() + "]" + out;
  return out;
}

BrauerClass2 class_product(const BrauerClass2& c1, const BrauerClass2& c2) {
  require(c1.field_ == c2.field_, "Brauer classes over different fields");
  require(c1.over_.has_value() == c2.over_.has_value() && (!c1.over_ || c1.over_->isomorphic(*c2.over_)),
          "Brauer classes over different bases");
  BrauerClass2 r = c1;
  r.symbols_.insert(r.symbols_.end(), c2.symbols_.begin(), c2.symbols_.end());
  return r;
}

BrauerClass2 class_opposite(const BrauerClass2& c) { return c; }

BrauerClass2 class_conjugate(const BrauerClass2& c) {
  BrauerClass2 r = c;
  r.conjugated_ = !c.conjugated_;
  return r;
}

LocalInvariants local_invariants(const BrauerClass2& c) {
  LocalInvariants out;
  if (!c.field()->is_rational()) return out;
  std::vector<mpq_class> entries;
  for (const auto& s : c.symbols()) {
    entries.push_back(s.a);
    entries.push_back(s.b);
  }
  for (Place v : relevant_places(entries)) {
    int inv = 1;
    for (const auto& s : c.symbols()) inv *= hilbert_symbol(s.a, s.b, v);
    if (!c.over()) {
      out[{v, 0}] = inv;
      continue;
    }
    LocalSplitting sp = c.over()->split ? LocalSplitting::Split : c.over()->splitting_at(v);
    if (sp == LocalSplitting::Split) {
      out[{v, 1}] = inv;
      out[{v, 2}] = inv;
    } else {
      out[{v, 0}] = 1;  // local degree 2 kills 2-torsion
    }
  }
  return out;
}

std::vector<BasePlace> invariant_support(const BrauerClass2& c) {
  std::vector<BasePlace> out;
  for (const auto& [p, inv] : local_invariants(c))
    if (inv == -1) out.push_back(p);
  return out;
}

bool is_trivial(const BrauerClass2& c) { return invariant_support(c).empty(); }

unsigned class_index(const BrauerClass2& c) { return is_trivial(c) ? 1 : 2; }

unsigned metric(const BrauerClass2& c1, const BrauerClass2& c2) {
  return class_index(class_product(c1, class_opposite(c2))) == 1 ? 0 : 1;
}

bool same_class(const BrauerClass2& c1, const BrauerClass2& c2) { return metric(c1, c2) == 0; }

Restriction restrict_and_norm(const BrauerClass2& c, const EtaleQuadratic& s) {
  Restriction r{c.restrict_to(s), true,
                "N(res c) = c^2 = 1 for a 2-torsion class restricted from the base field"};
  return r;
}

std::optional<Symbol> quaternion_representative(const BrauerClass2& c) {
  require(!c.over(), "quaternion_representative expects a class over the base field");
  if (!c.field()->is_rational() || is_trivial(c)) return Symbol{1, 1};
  std::set<unsigned long> support;
  bool at_inf = false;
  for (const auto& p : invariant_support(c)) {
    if (p.v.is_infinite())
      at_inf = true;
    else
      support.insert(p.v.prime);
  }
  auto matches = [&](const mpq_class& a, const mpq_class& b) {
    for (Place v : relevant_places({a, b})) {
      bool want = v.is_infinite() ? at_inf : support.count(v.prime) > 0;
      if ((hilbert_symbol(a, b, v) == -1) != want) return false;
    }
    for (auto p : support)
      if (hilbert_symbol(a, b, Place::finite(p)) != -1) return false;
    if (at_inf && hilbert_symbol(a, b, Place::infinity()) != -1) return false;
    return true;
  };
  std::vector<long> as;
  long prod = 1;
  for (auto p : support) {
    as.push_back(static_cast<long>(p));
    prod *= static_cast<long>(p);
  }
  as.push_back(prod);
  as.push_back(2 * prod);
  for (long a = 1; a <= 30; ++a) as.push_back(a);
  std::vector<long> signed_as;
  for (long a : as) {
    signed_as.push_back(-a);
    signed_as.push_back(a);
  }
  for (long a : signed_as)
    for (long b = 1; b <= 4000; ++b)
      for (long sb : {-b, b})
        if (matches(a, sb)) return Symbol{a, sb};
  return std::nullopt;
}

}  // namespace quadcomp
