#pragma once

// Type isomorphisms induced by the unit, Sigma and Pi structure of a
// universe, checked as explicit bijections over every choice of codes.
//
//   sigma-assoc       Sum_{x : Sum_A B} C(x)          ~ Sum_{a : A} Sum_{b : B(a)} C(a, b)
//   sigma-right-unit  Sum_{x : A} 1                   ~ A
//   sigma-left-unit   Sum_{x : 1} B(x)                ~ B(*)
//   pi-curry          Prod_{a : A} Prod_{b : B(a)} C  ~ Prod_{x : Sum_A B} C(x)
//   pi-left-unit      Prod_{x : 1} B(x)               ~ B(*)

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polyverse/finset.hpp"
#include "polyverse/universe.hpp"

namespace polyverse {

struct IsoRow {
  std::string name;
  std::size_t choices = 0;      // code choices examined
  std::size_t bijective = 0;    // choices where the map is a bijection
  std::size_t strict = 0;       // choices where both codes agree and the map is the identity
  std::string failure;          // first non-bijective choice, if any

  bool holds() const { return bijective == choices; }
};

namespace detail {

class IsoContext {
 public:
  explicit IsoContext(const Universe& u) : u_(u) {}

  const Universe& u() const { return u_; }

  /// Sections El(A) -> U.
  std::vector<Label> families(const Label& a) const {
    const FinSet el = u_.elements(a);
    std::vector<Label> keys(el.begin(), el.end());
    std::vector<const FinSet*> choices(keys.size(), &u_.codes());
    return enumerate_sections(keys, choices);
  }

  const FinMap& unpair(const Label& key) { return inverse(pair_inv_, u_.pair, key); }
  const FinMap& unlambda(const Label& key) { return inverse(lambda_inv_, u_.lambda, key); }

 private:
  static const FinMap& inverse(std::map<Label, FinMap>& cache, const std::map<Label, FinMap>& maps, const Label& key) {
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, maps.at(key).inverse()).first;
    return it->second;
  }

  const Universe& u_;
  std::map<Label, FinMap> pair_inv_;
  std::map<Label, FinMap> lambda_inv_;
};

inline Label constant_family(const FinSet& keys, const Label& code) {
  std::vector<Label> ks(keys.begin(), keys.end());
  return make_section(ks, std::vector<Label>(ks.size(), code));
}

/// Records one choice: both codes and the element map between their fibres.
inline void record(IsoRow& row, const Universe& u, const Label& choice, const Label& lhs, const Label& rhs,
                   const std::function<Label(const Label&)>& fwd) {
  ++row.choices;
  const FinSet dom = u.elements(lhs);
  const FinSet cod = u.elements(rhs);
  bool ok = dom.size() == cod.size();
  FinMap m;
  if (ok) {
    try {
      m = FinMap::tabulate(dom, cod, fwd);
      ok = m.bijective();
    } catch (const Error&) {
      ok = false;
    }
  }
  if (!ok) {
    if (row.failure.empty()) row.failure = "not a bijection at " + choice.str();
    return;
  }
  ++row.bijective;
  if (lhs == rhs && m == FinMap::identity(dom)) ++row.strict;
}

}  // namespace detail

inline std::vector<IsoRow> verify_type_isos(const Universe& u) {
  for (const auto& c : check_universe(u)) require_law(c, ErrorKind::invalid);
  detail::IsoContext cx(u);
  const Label one = u.unit_code;
  const Label star = u.unit_elem;
  std::vector<IsoRow> rows{{"sigma-assoc"}, {"sigma-right-unit"}, {"sigma-left-unit"}, {"pi-curry"},
                           {"pi-left-unit"}};

  for (const auto& a : u.codes()) {
    // Sum_{x : A} 1 ~ A
    const Label unit_key = tup(a, detail::constant_family(u.elements(a), one));
    detail::record(rows[1], u, a, u.sigma.at(unit_key), a,
                   [&](const Label& w) { return cx.unpair(unit_key)(w)[0]; });

    for (const auto& b : cx.families(a)) {
      const Label ab = tup(a, b);
      const Label sum = u.sigma.at(ab);
      for (const auto& c : cx.families(sum)) {
        const Label choice = tup(a, b, c);
        // Inner families a |-> [B(a), b |-> C(pair(a, b))].
        auto inner = [&](const Label& x) {
          const Label bx = section_value(b, x);
          std::vector<Label> ks, vs;
          for (const auto& y : u.elements(bx)) {
            ks.push_back(y);
            vs.push_back(section_value(c, u.pair.at(ab)(tup(x, y))));
          }
          return tup(bx, make_section(ks, vs));
        };
        std::vector<Label> xs, sums, prods;
        for (const auto& x : section_keys(b)) {
          xs.push_back(x);
          sums.push_back(u.sigma.at(inner(x)));
          prods.push_back(u.pi.at(inner(x)));
        }

        // Sigma associativity.
        const Label lhs_key = tup(sum, c);
        const Label rhs_key = tup(a, make_section(xs, sums));
        detail::record(rows[0], u, choice, u.sigma.at(lhs_key), u.sigma.at(rhs_key), [&](const Label& w) {
          const Label xc = cx.unpair(lhs_key)(w);
          const Label xy = cx.unpair(ab)(xc[0]);
          const Label v = u.pair.at(inner(xy[0]))(tup(xy[1], xc[1]));
          return u.pair.at(rhs_key)(tup(xy[0], v));
        });

        // Currying.
        const Label curry_key = tup(a, make_section(xs, prods));
        const Label flat_key = tup(sum, c);
        detail::record(rows[3], u, choice, u.pi.at(curry_key), u.pi.at(flat_key), [&](const Label& w) {
          const Label s = cx.unlambda(curry_key)(w);
          std::vector<std::pair<Label, Label>> flat;
          for (const auto& p : u.elements(sum)) {
            const Label xy = cx.unpair(ab)(p);
            const Label t = cx.unlambda(inner(xy[0]))(section_value(s, xy[0]));
            flat.emplace_back(p, section_value(t, xy[1]));
          }
          return u.lambda.at(flat_key)(section_from_pairs(std::move(flat)));
        });
      }
    }
  }

  // Sum_{x : 1} B(x) ~ B(*) and Prod_{x : 1} B(x) ~ B(*)
  for (const auto& b : cx.families(one)) {
    const Label key = tup(one, b);
    const Label target = section_value(b, star);
    detail::record(rows[2], u, key, u.sigma.at(key), target, [&](const Label& w) { return cx.unpair(key)(w)[1]; });
    detail::record(rows[4], u, key, u.pi.at(key), target,
                   [&](const Label& w) { return section_value(cx.unlambda(key)(w), star); });
  }
  return rows;
}

}  // namespace polyverse
