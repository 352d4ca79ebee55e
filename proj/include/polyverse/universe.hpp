#pragma once

// Finite universes over the terminal base: a map p : El -> U of codes with
// chosen unit, Sigma and Pi structure, and the cartesian 2-cells
//   eta : i_1 => p,   mu : p.p => p,   zeta : P_p(p) => p
// built from them.
//
// A type family over a code A is a section B : El(A) -> U, and the pair
// [A, B] is the key of the Sigma and Pi tables. These keys are exactly the
// shapes of p.p and of P_p(p).

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/coherence.hpp"
#include "polyverse/error.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/lift.hpp"
#include "polyverse/poly.hpp"

namespace polyverse {

struct Universe {
  FinMap el;  // p : El -> U
  Label unit_code;
  Label unit_elem;
  std::map<Label, Label> sigma;    // [A, B] -> code of the sum
  std::map<Label, FinMap> pair;    // [A, B] -> {[a, b]} -> El(sigma)
  std::map<Label, Label> pi;       // [A, B] -> code of the product
  std::map<Label, FinMap> lambda;  // [A, B] -> sections -> El(pi)

  const FinSet& codes() const { return el.cod(); }
  FinSet elements(const Label& code) const {
    std::vector<Label> xs;
    for (auto i : el.fibre(code)) xs.push_back(i);
    return FinSet(std::move(xs));
  }
  Polynomial poly() const { return from_map(el); }

  friend bool operator==(const Universe& a, const Universe& b) {
    return a.el == b.el && a.unit_code == b.unit_code && a.unit_elem == b.unit_elem && a.sigma == b.sigma &&
           a.pair == b.pair && a.pi == b.pi && a.lambda == b.lambda;
  }
};

// ---------------------------------------------------------------------------
// Type families and the sets they determine

/// Every key [A, B] with B : El(A) -> U, in code order then section order.
inline std::vector<Label> type_families(const FinMap& el) {
  std::vector<Label> out;
  for (const auto& a : el.cod()) {
    std::vector<Label> keys;
    for (auto i : el.fibre(a)) keys.push_back(i);
    std::vector<const FinSet*> choices(keys.size(), &el.cod());
    for (auto& s : enumerate_sections(keys, choices)) out.push_back(tup(a, std::move(s)));
  }
  return out;
}

/// {[a, b] : a in El(A), b in El(B(a))}.
inline FinSet sigma_set(const FinMap& el, const Label& key) {
  std::vector<Label> xs;
  for (const auto& a : section_keys(key[1]))
    for (auto i : el.fibre(section_value(key[1], a))) xs.push_back(tup(a, i));
  return FinSet(std::move(xs));
}

/// Sections a |-> b with b in El(B(a)).
inline FinSet pi_set(const FinMap& el, const Label& key) {
  const std::vector<Label> keys = section_keys(key[1]);
  std::vector<FinSet> fibres;
  for (const auto& a : keys) {
    std::vector<Label> bs;
    for (auto i : el.fibre(section_value(key[1], a))) bs.push_back(i);
    fibres.emplace_back(std::move(bs));
  }
  std::vector<const FinSet*> choices;
  for (const auto& f : fibres) choices.push_back(&f);
  return FinSet(enumerate_sections(keys, choices));
}

/// The bijection onto `cod` listing both sets in order; requires equal sizes.
inline FinMap order_bijection(const FinSet& dom, const FinSet& cod) {
  require(dom.size() == cod.size(), ErrorKind::pullback,
          "no bijection between sets of sizes " + std::to_string(dom.size()) + " and " + std::to_string(cod.size()));
  std::vector<std::size_t> img(dom.size());
  for (std::size_t k = 0; k < img.size(); ++k) img[k] = k;
  return FinMap(dom, cod, std::move(img));
}

// ---------------------------------------------------------------------------
// Construction

/// Fills the Sigma and Pi tables with pick(key, size), which must return a
/// code with that many elements; the structure bijections list elements in
/// order.
template <class PickSigma, class PickPi>
Universe closed_universe(FinMap el, Label unit_code, Label unit_elem, PickSigma&& pick_sigma, PickPi&& pick_pi) {
  Universe u;
  u.el = std::move(el);
  u.unit_code = std::move(unit_code);
  u.unit_elem = std::move(unit_elem);
  for (const auto& key : type_families(u.el)) {
    const FinSet s = sigma_set(u.el, key);
    const Label cs = pick_sigma(key, s.size());
    u.sigma.emplace(key, cs);
    u.pair.emplace(key, order_bijection(s, u.elements(cs)));
    const FinSet p = pi_set(u.el, key);
    const Label cp = pick_pi(key, p.size());
    u.pi.emplace(key, cp);
    u.lambda.emplace(key, order_bijection(p, u.elements(cp)));
  }
  return u;
}

/// U = {code0, code1} with El(code0) empty and El(code1) = {*}.
inline Universe mk_bool_universe() {
  const FinSet codes{"code0", "code1"};
  const FinMap el = FinMap::point(codes, Label("code1"), FinSet{"*"});
  auto pick = [](const Label&, std::size_t n) {
    require(n <= 1, ErrorKind::invalid, "boolean universe has no code of size " + std::to_string(n));
    return Label(n == 0 ? "code0" : "code1");
  };
  return closed_universe(el, Label("code1"), Label("*"), pick, pick);
}

/// U = {code0, code1a, code1b} with El(code1a) = {a}, El(code1b) = {b}. The
/// unit is code1b while Sigma and Pi always answer code1a for a singleton.
inline Universe mk_skewed_universe() {
  const FinSet codes{"code0", "code1a", "code1b"};
  const FinMap el = FinMap::from_pairs(FinSet{"a", "b"}, codes, {{"a", "code1a"}, {"b", "code1b"}});
  auto pick = [](const Label&, std::size_t n) {
    require(n <= 1, ErrorKind::invalid, "skewed universe has no code of size " + std::to_string(n));
    return Label(n == 0 ? "code0" : "code1a");
  };
  return closed_universe(el, Label("code1b"), Label("b"), pick, pick);
}

/// A random universe closed under Sigma and Pi: codes of size 0 and 1 only
/// (larger sizes would force infinitely many codes), random choices among
/// codes of the right size, and a random unit.
inline Universe random_universe(std::mt19937_64& rng, std::size_t max_empty = 2, std::size_t max_points = 2) {
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t n0 = below(max_empty + 1);
  const std::size_t n1 = 1 + below(max_points);
  std::vector<Label> zeros, ones, elems;
  std::vector<std::pair<Label, Label>> assign;
  for (std::size_t k = 0; k < n0; ++k) zeros.emplace_back("z" + std::to_string(k));
  for (std::size_t k = 0; k < n1; ++k) {
    ones.emplace_back("u" + std::to_string(k));
    assign.emplace_back(Label("e" + std::to_string(k)), ones.back());
    elems.push_back(assign.back().first);
  }
  std::vector<Label> all = zeros;
  all.insert(all.end(), ones.begin(), ones.end());
  const FinMap el = FinMap::from_pairs(FinSet(elems), FinSet(all), assign);
  const std::size_t unit = below(n1);
  // Sums and products have size 0 or 1; size 0 only occurs once an empty code exists.
  auto pick = [&](const Label&, std::size_t n) -> Label {
    if (n == 0) {
      require(!zeros.empty(), ErrorKind::invalid, "no empty code");
      return zeros[below(zeros.size())];
    }
    return ones[below(ones.size())];
  };
  return closed_universe(el, ones[unit], elems[unit], pick, pick);
}

// ---------------------------------------------------------------------------
// Validation

inline LawCheck check_unit(const Universe& u) {
  LawCheck out{"unit-pullback", false, ""};
  auto c = u.codes().find(u.unit_code);
  if (!c) {
    out.detail = "unit code " + u.unit_code.str() + " is not a code";
  } else if (!(u.elements(u.unit_code) == FinSet{u.unit_elem})) {
    out.detail = "El(" + u.unit_code.str() + ") is not the singleton {" + u.unit_elem.str() + "}";
  } else {
    out.holds = true;
    out.detail = "El(" + u.unit_code.str() + ") = {" + u.unit_elem.str() + "}";
  }
  return out;
}

namespace detail {

inline LawCheck check_table(const Universe& u, const std::string& law, const std::map<Label, Label>& codes,
                            const std::map<Label, FinMap>& maps, FinSet (*set_of)(const FinMap&, const Label&)) {
  LawCheck out{law, false, ""};
  std::size_t n = 0;
  for (const auto& key : type_families(u.el)) {
    auto c = codes.find(key);
    auto m = maps.find(key);
    if (c == codes.end() || m == maps.end()) {
      out.detail = "no entry for " + key.str();
      return out;
    }
    if (!u.codes().contains(c->second)) {
      out.detail = c->second.str() + " at " + key.str() + " is not a code";
      return out;
    }
    if (!(m->second.dom() == set_of(u.el, key))) {
      out.detail = "structure map at " + key.str() + " has the wrong domain";
      return out;
    }
    if (!(m->second.cod() == u.elements(c->second))) {
      const FinSet over = u.elements(c->second);
      for (std::size_t k = 0; k < m->second.dom().size(); ++k)
        if (!over.contains(m->second.at(k))) {
          out.detail = "structure map at " + key.str() + " sends " + m->second.dom()[k].str() + " to " +
                       m->second.at(k).str() + ", outside El(" + c->second.str() + ")";
          return out;
        }
      out.detail = "structure map at " + key.str() + " has the wrong codomain";
      return out;
    }
    if (!m->second.bijective()) {
      out.detail = "structure map at " + key.str() + " is not a bijection";
      return out;
    }
    ++n;
  }
  if (codes.size() != n || maps.size() != n) {
    out.detail = "table has entries that are not type families";
    return out;
  }
  out.holds = true;
  out.detail = std::to_string(n) + " type families";
  return out;
}

}  // namespace detail

inline LawCheck check_sigma(const Universe& u) {
  return detail::check_table(u, "sigma-pullback", u.sigma, u.pair, &sigma_set);
}

inline LawCheck check_pi(const Universe& u) { return detail::check_table(u, "pi-pullback", u.pi, u.lambda, &pi_set); }

inline std::vector<LawCheck> check_universe(const Universe& u) { return {check_unit(u), check_sigma(u), check_pi(u)}; }

inline void require_law(const LawCheck& c, ErrorKind kind) {
  require(c.holds, kind, c.law + ": " + c.detail);
}

// ---------------------------------------------------------------------------
// Structure cells

/// eta : i_1 => p, picking the unit code and its element.
inline PolyMorphism unit_structure(const Universe& u) {
  require_law(check_unit(u), ErrorKind::invalid);
  const Polynomial one = identity_poly(FinSet::singleton());
  const Polynomial p = u.poly();
  return cartesian_from_square(one, p, FinMap::point(p.positions(), u.unit_elem),
                               FinMap::point(p.shapes(), u.unit_code));
}

/// mu : p.p => p on the chosen composite: shapes [A, B] go to the sum code,
/// positions [A, B, a, b] through the pairing.
inline PolyMorphism sigma_structure(const Universe& u) {
  require_law(check_sigma(u), ErrorKind::pullback);
  const Polynomial p = u.poly();
  const Polynomial pp = compose(p, p);
  return cartesian_from_square(
      pp, p,
      FinMap::tabulate(pp.positions(), p.positions(),
                       [&](const Label& x) { return u.pair.at(tup(x[0], x[1]))(tup(x[2], x[3])); }),
      FinMap::tabulate(pp.shapes(), p.shapes(), [&](const Label& s) { return u.sigma.at(s); }));
}

/// zeta : P_p(p) => p : shapes [A, B] go to the product code, positions
/// [A, s] through lambda at [A, p.s].
inline PolyMorphism pi_structure(const Universe& u) {
  require_law(check_pi(u), ErrorKind::pullback);
  const Polynomial p = u.poly();
  const Polynomial pp = from_map(lift_apply(u.el, u.el));
  const FinMap& proj = pp.projection();
  return cartesian_from_square(
      pp, p,
      FinMap::tabulate(pp.positions(), p.positions(), [&](const Label& x) { return u.lambda.at(proj(x))(x[1]); }),
      FinMap::tabulate(pp.shapes(), p.shapes(), [&](const Label& s) { return u.pi.at(s); }));
}

}  // namespace polyverse
