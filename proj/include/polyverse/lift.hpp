#pragma once

// The lift of P_p to the 2-category of maps and pullback squares. A map
// f : B -> A is the polynomial from_map(f) and a pullback square f => g is a
// cartesian morphism between such polynomials.

#include <map>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/error.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/poly.hpp"

namespace polyverse {

/// P(f) : sum_x B^{Y_x} -> sum_x A^{Y_x} for p : Y -> X and f : B -> A;
/// elements are [x, y |-> b].
inline FinMap lift_apply(const FinMap& p, const FinMap& f) {
  return extend(from_map(p), FamilyMap::over_point(f)).component(0);
}

/// The pullback square f => g with the given top and bottom maps.
inline PolyMorphism map_square(const FinMap& f, const FinMap& g, const FinMap& top, const FinMap& bottom) {
  return cartesian_from_square(from_map(f), from_map(g), top, bottom);
}

/// P applied to a pullback square; the result is re-validated as a pullback.
inline PolyMorphism lift_apply_square(const FinMap& p, const PolyMorphism& phi) {
  require(is_endo_on_point(phi.src()) && is_endo_on_point(phi.dst()), ErrorKind::shape,
          "lift: squares are morphisms between polynomials 1 -> 1");
  require(phi.cartesian(), ErrorKind::not_cartesian, "lift: square is not a pullback");
  return map_square(lift_apply(p, phi.src().projection()), lift_apply(p, phi.dst().projection()),
                    lift_apply(p, phi.position_map()), lift_apply(p, phi.shape_map()));
}

/// h_f : f => P(f) from eta : i_1 => p,  z |-> [u, e |-> z]  on both rows.
inline PolyMorphism lift_unit(const PolyMorphism& eta, const FinMap& f) {
  require(eta.cartesian() && eta.shape_map().dom().size() == 1, ErrorKind::shape, "lift: eta must be i_1 => p");
  const FinMap& p = eta.dst().projection();
  const Label u = eta.shape_map().at(0);
  const Label e = eta.position_map().at(0);
  const FinMap pf = lift_apply(p, f);
  auto unit = [&](const Label& z) { return tup(u, Label::tuple({tup(e, z)})); };
  return map_square(f, pf, FinMap::tabulate(f.dom(), pf.dom(), unit), FinMap::tabulate(f.cod(), pf.cod(), unit));
}

/// m_f : P(P(f)) => P(f) from mu : p.p => p. An element [x, y |-> [x'_y, t_y]]
/// goes to [mu0(x, y |-> x'_y), w |-> t_y(y')] where mu1 sends [.., y, y'] to w.
inline PolyMorphism lift_mult(const PolyMorphism& mu, const FinMap& f) {
  require(mu.cartesian(), ErrorKind::not_cartesian, "lift: mu must be cartesian");
  const FinMap& p = mu.dst().projection();
  require(mu.src() == compose(mu.dst(), mu.dst()), ErrorKind::shape, "lift: mu must be p.p => p");
  // (shape of p.p, element of El) -> [y, y']
  std::map<std::pair<Label, Label>, std::pair<Label, Label>> split;
  const FinMap pos = mu.position_map();
  for (std::size_t k = 0; k < pos.dom().size(); ++k) {
    const Label& x = pos.dom()[k];
    split[{tup(x[0], x[1]), pos.at(k)}] = {x[2], x[3]};
  }
  const FinMap pf = lift_apply(p, f);
  const FinMap ppf = lift_apply(p, pf);
  auto mult = [&](const Label& z) {
    std::vector<Label> inner;
    for (const auto& kv : z[1].items()) inner.push_back(tup(kv[0], kv[1][0]));
    const Label shape = tup(z[0], Label::tuple(std::move(inner)));
    const Label code = mu.shape_map()(shape);
    std::vector<Label> out;
    for (auto w : p.fibre(code)) {
      const auto& [y, y2] = split.at({shape, w});
      out.push_back(tup(w, section_value(section_value(z[1], y)[1], y2)));
    }
    return tup(code, Label::tuple(std::move(out)));
  };
  return map_square(ppf, pf, FinMap::tabulate(ppf.dom(), pf.dom(), mult), FinMap::tabulate(ppf.cod(), pf.cod(), mult));
}

}  // namespace polyverse
