#pragma once

// Associators and unitors between chosen composites, and concrete checks of
// the pentagon, the triangle and local codiscreteness.

#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/poly.hpp"

namespace polyverse {

/// (H.G).F => H.(G.F) for F : I -> J, G : J -> K, H : K -> L.
///
///   [[e, n], q]                  |-> [e, x |-> [n(x), d |-> q([e, n, x, d])]]
///   [[e, n], q, [e, n, x, d], b] |-> [that, x, [n(x), m_x, d, b]]
inline PolyMorphism associator(const Polynomial& F, const Polynomial& G, const Polynomial& H) {
  const Polynomial lhs = compose(compose(H, G), F);
  const Polynomial rhs = compose(H, compose(G, F));
  const FinFamily g_arity = FinFamily::fibres_of(G.projection());

  auto inner = [&](const Label& en, const Label& q, const Label& x) {
    const Label& e = en[0];
    const Label& n = en[1];
    const Label& c = section_value(n, x);
    std::vector<Label> ds;
    std::vector<Label> as;
    for (const auto& d : g_arity.fibre(c)) {
      ds.push_back(d);
      as.push_back(section_value(q, tup(e, n, x, d)));
    }
    return tup(c, make_section(ds, as));
  };
  auto move_shape = [&](const Label& en, const Label& q) {
    std::vector<Label> xs;
    std::vector<Label> vals;
    for (const auto& x : section_keys(en[1])) {
      xs.push_back(x);
      vals.push_back(inner(en, q, x));
    }
    return tup(en[0], make_section(xs, vals));
  };
  const FinMap on_shapes =
      FinMap::tabulate(lhs.shapes(), rhs.shapes(), [&](const Label& s) { return move_shape(s[0], s[1]); });
  const FinMap on_positions = FinMap::tabulate(lhs.positions(), rhs.positions(), [&](const Label& p) {
    const Label& en = p[0];
    const Label& q = p[1];
    const Label& x = p[2][2];
    const Label& d = p[2][3];
    const Label cm = inner(en, q, x);
    const Label moved = move_shape(en, q);
    return tup(moved[0], moved[1], x, tup(cm[0], cm[1], d, p[3]));
  });
  return cartesian_from_square(lhs, rhs, on_positions, on_shapes);
}

/// i_J . F => F :  [j, [[j, a]]] |-> a,  [j, m, j, b] |-> b.
inline PolyMorphism left_unitor(const Polynomial& F) {
  const Polynomial lhs = compose(identity_poly(F.target()), F);
  return cartesian_from_square(lhs, F, FinMap::tabulate(lhs.positions(), F.positions(), [](const Label& p) { return p[3]; }),
                               FinMap::tabulate(lhs.shapes(), F.shapes(),
                                                [](const Label& s) { return section_value(s[1], s[0]); }));
}

/// F . i_I => F :  [a, b |-> s(b)] |-> a,  [a, m, b, i] |-> b.
inline PolyMorphism right_unitor(const Polynomial& F) {
  const Polynomial lhs = compose(F, identity_poly(F.source()));
  return cartesian_from_square(lhs, F, FinMap::tabulate(lhs.positions(), F.positions(), [](const Label& p) { return p[2]; }),
                               FinMap::tabulate(lhs.shapes(), F.shapes(), [](const Label& s) { return s[0]; }));
}

/// Invertible 2-cells have a bijective shape map and are cartesian.
inline bool is_invertible_cell(const PolyMorphism& phi) {
  return phi.cartesian() && phi.shape_map().bijective() && phi.dst_leg().bijective();
}

// ---------------------------------------------------------------------------
// Law checks

struct LawCheck {
  std::string law;
  bool holds = false;
  std::string detail;
};

/// Two parallel cartesian 2-cells are equal as cells when they differ only in
/// vertex labels.
inline LawCheck compare_cells(const std::string& law, const PolyMorphism& lhs, const PolyMorphism& rhs) {
  LawCheck out{law, false, ""};
  if (!(lhs.src() == rhs.src() && lhs.dst() == rhs.dst())) {
    out.detail = "composites are not parallel";
    return out;
  }
  if (!(lhs.shape_map() == rhs.shape_map())) {
    for (std::size_t k = 0; k < lhs.shape_map().dom().size(); ++k)
      if (lhs.shape_map().at(k) != rhs.shape_map().at(k)) {
        out.detail = "shape maps differ at " + lhs.shape_map().dom()[k].str();
        return out;
      }
  }
  if (!same_up_to_vertex(lhs, rhs)) {
    out.detail = "position maps differ";
    return out;
  }
  out.holds = true;
  out.detail = "equal on " + std::to_string(lhs.shape_map().dom().size()) + " shapes and " +
               std::to_string(lhs.vertex().size()) + " positions";
  return out;
}

/// The two ways round from ((k.h).g).f to k.(h.(g.f)).
inline std::pair<PolyMorphism, PolyMorphism> pentagon_sides(const Polynomial& f, const Polynomial& g,
                                                            const Polynomial& h, const Polynomial& k) {
  const Polynomial kh = compose(k, h);
  const Polynomial gf = compose(g, f);
  const Polynomial hg = compose(h, g);
  PolyMorphism one = vcomp(associator(gf, h, k), associator(f, g, kh));
  PolyMorphism two = vcomp(hcomp(PolyMorphism::identity(k), associator(f, g, h)),
                           vcomp(associator(f, hg, k), hcomp(associator(g, h, k), PolyMorphism::identity(f))));
  return {std::move(one), std::move(two)};
}

inline LawCheck check_pentagon(const Polynomial& f, const Polynomial& g, const Polynomial& h, const Polynomial& k) {
  auto [one, two] = pentagon_sides(f, g, h, k);
  return compare_cells("pentagon", one, two);
}

/// (g.i).f => g.f  both through the associator and the left unitor, and
/// through the right unitor.
inline std::pair<PolyMorphism, PolyMorphism> triangle_sides(const Polynomial& f, const Polynomial& g) {
  const Polynomial i = identity_poly(f.target());
  PolyMorphism one = vcomp(hcomp(PolyMorphism::identity(g), left_unitor(f)), associator(f, i, g));
  PolyMorphism two = hcomp(right_unitor(g), PolyMorphism::identity(f));
  return {std::move(one), std::move(two)};
}

inline LawCheck check_triangle(const Polynomial& f, const Polynomial& g) {
  auto [one, two] = triangle_sides(f, g);
  return compare_cells("triangle", one, two);
}

/// Number of adjustments phi => psi: each vertex element of phi may go to
/// any element of psi's vertex with the same src-leg value.
inline std::size_t count_adjustments(const PolyMorphism& phi, const PolyMorphism& psi) {
  std::vector<std::size_t> over(phi.src().positions().size(), 0);
  for (std::size_t k = 0; k < psi.vertex().size(); ++k) ++over[psi.src_leg().index_at(k)];
  std::size_t n = 1;
  for (std::size_t k = 0; k < phi.vertex().size(); ++k) n = saturating_mul(n, over[phi.src_leg().index_at(k)]);
  return n;
}

/// Exactly one adjustment between a parallel pair with cartesian target, and
/// it is the closed form.
inline LawCheck check_codiscrete(const PolyMorphism& phi, const PolyMorphism& psi) {
  LawCheck out{"locally-codiscrete", false, ""};
  const std::size_t n = count_adjustments(phi, psi);
  if (n != 1) {
    out.detail = std::to_string(n) + " adjustments";
    return out;
  }
  try {
    Adjustment a = unique_adjustment(phi, psi);
    out.holds = true;
    out.detail = "unique adjustment on " + std::to_string(a.map().dom().size()) + " vertex elements";
  } catch (const Error& e) {
    out.detail = e.what();
  }
  return out;
}

/// Validates a candidate adjustment map, reporting the failure kind.
inline LawCheck check_adjustment(const std::string& law, const PolyMorphism& phi, const PolyMorphism& psi,
                                 const FinMap& alpha) {
  LawCheck out{law, false, ""};
  try {
    Adjustment a(phi, psi, alpha);
    out.holds = true;
    out.detail = "valid";
  } catch (const Error& e) {
    out.detail = e.what();
  }
  return out;
}

/// A copy of the unique adjustment with one value moved to a vertex element
/// over a different position, which breaks the triangle. Empty map when no
/// such move exists.
inline std::optional<FinMap> corrupt_adjustment(const Adjustment& a) {
  const FinMap& m = a.map();
  const FinMap& leg = a.dst().src_leg();
  for (std::size_t k = 0; k < m.dom().size(); ++k)
    for (std::size_t l = 0; l < m.cod().size(); ++l)
      if (leg.index_at(l) != leg.index_at(m.index_at(k))) {
        std::vector<std::size_t> img = m.indices();
        img[k] = l;
        return FinMap(m.dom(), m.cod(), std::move(img));
      }
  return std::nullopt;
}

}  // namespace polyverse
