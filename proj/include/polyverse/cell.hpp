#pragma once

// Morphisms of polynomials (2-cells) and adjustments between them (3-cells).
//
// A morphism F => G between  F : I <-s- B -f-> A -t-> J  and
// G : I <-u- E -g-> C -v-> J  is a vertex D with
//   shape map  A -> C,  dst leg  D -> E,  src leg  D -> B
// such that D is a pullback of the shape map along g. It is cartesian when
// the src leg is a bijection.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polyverse/error.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/poly.hpp"

namespace polyverse {

class PolyMorphism {
 public:
  PolyMorphism() = default;

  PolyMorphism(Polynomial src, Polynomial dst, FinMap shape_map, FinMap dst_leg, FinMap src_leg)
      : src_(std::move(src)),
        dst_(std::move(dst)),
        shape_map_(std::move(shape_map)),
        dst_leg_(std::move(dst_leg)),
        src_leg_(std::move(src_leg)) {
    validate();
  }

  static PolyMorphism identity(const Polynomial& F) {
    const FinMap id = FinMap::identity(F.positions());
    return PolyMorphism(F, F, FinMap::identity(F.shapes()), id, id);
  }

  const Polynomial& src() const noexcept { return src_; }
  const Polynomial& dst() const noexcept { return dst_; }
  const FinSet& vertex() const noexcept { return dst_leg_.dom(); }
  const FinMap& shape_map() const noexcept { return shape_map_; }
  const FinMap& dst_leg() const noexcept { return dst_leg_; }
  const FinMap& src_leg() const noexcept { return src_leg_; }

  bool cartesian() const { return src_leg_.bijective(); }

  /// dst leg after the inverse of the src leg: positions of F -> positions of G.
  FinMap position_map() const {
    require(cartesian(), ErrorKind::not_cartesian, "position map of a non-cartesian morphism");
    return compose(dst_leg_, src_leg_.inverse());
  }

  friend bool operator==(const PolyMorphism& a, const PolyMorphism& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.shape_map_ == b.shape_map_ && a.dst_leg_ == b.dst_leg_ &&
           a.src_leg_ == b.src_leg_;
  }

 private:
  void validate() const {
    const Polynomial& F = src_;
    const Polynomial& G = dst_;
    require(F.source() == G.source() && F.target() == G.target(), ErrorKind::shape,
            "morphism between polynomials with different endpoints");
    require(shape_map_.dom() == F.shapes() && shape_map_.cod() == G.shapes(), ErrorKind::shape,
            "shape map must go from the source's shapes to the target's shapes");
    require(dst_leg_.dom() == src_leg_.dom(), ErrorKind::shape, "legs must share the vertex");
    require(dst_leg_.cod() == G.positions(), ErrorKind::shape, "dst leg must land in the target's positions");
    require(src_leg_.cod() == F.positions(), ErrorKind::shape, "src leg must land in the source's positions");
    require(compose(G.input(), dst_leg_) == compose(F.input(), src_leg_), ErrorKind::commutativity,
            "legs disagree over the common source");
    require(compose(G.output(), shape_map_) == F.output(), ErrorKind::commutativity,
            "shape map does not commute with the outputs");
    const FinMap down = compose(F.projection(), src_leg_);
    require(compose(G.projection(), dst_leg_) == compose(shape_map_, down), ErrorKind::commutativity,
            "lower square does not commute");
    require(is_pullback_square(down, dst_leg_, shape_map_, G.projection()), ErrorKind::pullback,
            "lower square is not a pullback");
  }

  Polynomial src_;
  Polynomial dst_;
  FinMap shape_map_;
  FinMap dst_leg_;
  FinMap src_leg_;
};

/// The cartesian morphism represented by a pullback square
///   B -on_positions-> E,  A -on_shapes-> C,  f, g.
/// The vertex is the chosen pullback of on_shapes along g (labels [a, e]) and
/// the src leg is the canonical comparison onto B.
inline PolyMorphism cartesian_from_square(const Polynomial& F, const Polynomial& G, const FinMap& on_positions,
                                          const FinMap& on_shapes) {
  require(F.source() == G.source() && F.target() == G.target(), ErrorKind::shape,
          "square between polynomials with different endpoints");
  require(on_positions.dom() == F.positions() && on_positions.cod() == G.positions() &&
              on_shapes.dom() == F.shapes() && on_shapes.cod() == G.shapes(),
          ErrorKind::shape, "square maps have the wrong domains");
  require(compose(G.projection(), on_positions) == compose(on_shapes, F.projection()), ErrorKind::commutativity,
          "square does not commute");
  require(compose(G.input(), on_positions) == F.input(), ErrorKind::commutativity,
          "position map does not preserve inputs");
  require(compose(G.output(), on_shapes) == F.output(), ErrorKind::commutativity,
          "shape map does not preserve outputs");
  require(is_pullback_square(F.projection(), on_positions, on_shapes, G.projection()), ErrorKind::pullback,
          "square is not a pullback");
  Pullback pb = pullback(on_shapes, G.projection());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_pair;
  for (std::size_t b = 0; b < F.positions().size(); ++b)
    by_pair[{F.projection().index_at(b), on_positions.index_at(b)}] = b;
  std::vector<std::size_t> img;
  img.reserve(pb.apex.size());
  for (std::size_t k = 0; k < pb.apex.size(); ++k) img.push_back(by_pair.at({pb.left.index_at(k), pb.right.index_at(k)}));
  return PolyMorphism(F, G, on_shapes, pb.right, FinMap(pb.apex, F.positions(), std::move(img)));
}

/// psi after phi, with vertex the chosen pullback of phi's dst leg and psi's src leg.
inline PolyMorphism vcomp(const PolyMorphism& psi, const PolyMorphism& phi) {
  require(phi.dst() == psi.src(), ErrorKind::shape, "vertical composite of non-composable morphisms");
  Pullback pb = pullback(phi.dst_leg(), psi.src_leg());
  return PolyMorphism(phi.src(), psi.dst(), compose(psi.shape_map(), phi.shape_map()), compose(psi.dst_leg(), pb.right),
                      compose(phi.src_leg(), pb.left));
}

/// Horizontal composite psi . phi : G.F => G'.F' of cartesian morphisms, by
/// functoriality of composition on pullback squares.
inline PolyMorphism hcomp(const PolyMorphism& psi, const PolyMorphism& phi) {
  require(psi.cartesian() && phi.cartesian(), ErrorKind::not_cartesian,
          "horizontal composition is only defined for cartesian morphisms");
  require(phi.src().target() == psi.src().source(), ErrorKind::shape, "horizontal composite of non-composable morphisms");
  const Polynomial& G = psi.src();
  const Polynomial& G2 = psi.dst();
  const Polynomial gf = compose(G, phi.src());
  const Polynomial gf2 = compose(G2, phi.dst());
  const FinMap psi_pos = psi.position_map();
  const FinMap phi_pos = phi.position_map();
  const FinFamily arity = FinFamily::fibres_of(G.projection());

  auto move_shape = [&](const Label& c, const Label& m) {
    std::vector<std::pair<Label, Label>> pairs;
    for (const auto& d : arity.fibre(c)) pairs.emplace_back(psi_pos(d), phi.shape_map()(section_value(m, d)));
    return tup(psi.shape_map()(c), section_from_pairs(std::move(pairs)));
  };
  const FinMap on_shapes =
      FinMap::tabulate(gf.shapes(), gf2.shapes(), [&](const Label& cm) { return move_shape(cm[0], cm[1]); });
  const FinMap on_positions = FinMap::tabulate(gf.positions(), gf2.positions(), [&](const Label& n) {
    const Label moved = move_shape(n[0], n[1]);
    return tup(moved[0], moved[1], psi_pos(n[2]), phi_pos(n[3]));
  });
  return cartesian_from_square(gf, gf2, on_positions, on_shapes);
}

/// Component of the induced transformation P_F => P_G at X:
/// (a, t) |-> (shape_map(a), e |-> t(src_leg(delta))) with delta the vertex
/// element over a sent to e by the dst leg.
inline FamilyMap extend_morphism(const PolyMorphism& phi, const FinFamily& x) {
  const Polynomial& F = phi.src();
  const Polynomial& G = phi.dst();
  const FinFamily src = extend(F, x);
  const FinFamily dst = extend(G, x);
  const FinFamily arity = FinFamily::fibres_of(G.projection());
  std::map<std::pair<Label, Label>, Label> over;  // (a, e) -> b
  for (std::size_t k = 0; k < phi.vertex().size(); ++k) {
    const Label& b = phi.src_leg().at(k);
    over.emplace(std::make_pair(F.projection()(b), phi.dst_leg().at(k)), b);
  }
  std::vector<FinMap> comps;
  for (std::size_t j = 0; j < F.target().size(); ++j) {
    comps.push_back(FinMap::tabulate(src.fibre(j), dst.fibre(j), [&](const Label& e) {
      const Label& a = e[0];
      const Label c = phi.shape_map()(a);
      std::vector<Label> keys;
      std::vector<Label> vals;
      for (const auto& pos : arity.fibre(c)) {
        keys.push_back(pos);
        vals.push_back(section_value(e[1], over.at({a, pos})));
      }
      return tup(c, make_section(keys, vals));
    }));
  }
  return FamilyMap(src, dst, std::move(comps));
}

// ---------------------------------------------------------------------------
// Adjustments

/// A map of vertices commuting with the src legs.
class Adjustment {
 public:
  Adjustment() = default;

  Adjustment(PolyMorphism src, PolyMorphism dst, FinMap alpha)
      : src_(std::move(src)), dst_(std::move(dst)), alpha_(std::move(alpha)) {
    require(src_.src() == dst_.src() && src_.dst() == dst_.dst(), ErrorKind::shape,
            "adjustment between non-parallel morphisms");
    require(alpha_.dom() == src_.vertex() && alpha_.cod() == dst_.vertex(), ErrorKind::shape,
            "adjustment map must go between the vertices");
    require(compose(dst_.src_leg(), alpha_) == src_.src_leg(), ErrorKind::triangle,
            "adjustment does not commute with the src legs");
  }

  static Adjustment identity(const PolyMorphism& phi) { return Adjustment(phi, phi, FinMap::identity(phi.vertex())); }

  const PolyMorphism& src() const noexcept { return src_; }
  const PolyMorphism& dst() const noexcept { return dst_; }
  const FinMap& map() const noexcept { return alpha_; }

  bool invertible() const { return alpha_.bijective(); }

  Adjustment inverse() const {
    require(invertible(), ErrorKind::invalid, "inverse of a non-invertible adjustment");
    return Adjustment(dst_, src_, alpha_.inverse());
  }

  friend bool operator==(const Adjustment& a, const Adjustment& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.alpha_ == b.alpha_;
  }

 private:
  PolyMorphism src_;
  PolyMorphism dst_;
  FinMap alpha_;
};

/// The only adjustment into a cartesian morphism.
inline Adjustment unique_adjustment(const PolyMorphism& phi, const PolyMorphism& psi) {
  require(psi.cartesian(), ErrorKind::not_cartesian, "unique adjustment needs a cartesian target");
  return Adjustment(phi, psi, compose(psi.src_leg().inverse(), phi.src_leg()));
}

/// Every adjustment phi => psi, by filtering all maps between the vertices.
inline std::vector<Adjustment> enumerate_adjustments(const PolyMorphism& phi, const PolyMorphism& psi) {
  std::vector<Adjustment> out;
  for (auto& m : enumerate_maps(phi.vertex(), psi.vertex()))
    if (compose(psi.src_leg(), m) == phi.src_leg()) out.emplace_back(phi, psi, std::move(m));
  return out;
}

/// The comparison witnessing that phi and psi differ only in the labels of
/// their vertices: equal shape maps and a bijection of vertices preserving
/// both legs. Empty when there is none.
inline std::optional<Adjustment> vertex_comparison(const PolyMorphism& phi, const PolyMorphism& psi) {
  if (!(phi.src() == psi.src() && phi.dst() == psi.dst() && phi.shape_map() == psi.shape_map())) return std::nullopt;
  if (phi.vertex().size() != psi.vertex().size()) return std::nullopt;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_legs;
  for (std::size_t k = 0; k < psi.vertex().size(); ++k)
    by_legs[{psi.dst_leg().index_at(k), psi.src_leg().index_at(k)}] = k;
  std::vector<std::size_t> img;
  for (std::size_t k = 0; k < phi.vertex().size(); ++k) {
    auto it = by_legs.find({phi.dst_leg().index_at(k), phi.src_leg().index_at(k)});
    if (it == by_legs.end()) return std::nullopt;
    img.push_back(it->second);
  }
  FinMap alpha(phi.vertex(), psi.vertex(), std::move(img));
  if (!alpha.bijective()) return std::nullopt;
  return Adjustment(phi, psi, std::move(alpha));
}

inline bool same_up_to_vertex(const PolyMorphism& phi, const PolyMorphism& psi) {
  return vertex_comparison(phi, psi).has_value();
}

/// An identity up to relabelling the vertex: bijective, equal shape maps,
/// and the dst legs agree along the map.
inline bool is_trivial(const Adjustment& a) {
  return a.invertible() && a.src().shape_map() == a.dst().shape_map() &&
         compose(a.dst().dst_leg(), a.map()) == a.src().dst_leg();
}

/// beta after alpha.
inline Adjustment adj_vcomp(const Adjustment& beta, const Adjustment& alpha) {
  require(alpha.dst() == beta.src(), ErrorKind::shape, "composite of non-composable adjustments");
  return Adjustment(alpha.src(), beta.dst(), compose(beta.map(), alpha.map()));
}

/// The map of pullback vertices  vcomp(psi, phi) -> vcomp(psi', phi')  induced
/// by alpha : phi => phi' and beta : psi => psi'. When alpha does not preserve
/// the dst leg the second coordinate is recovered through psi' (which must
/// then be cartesian).
inline Adjustment adj_compose_cells(const Adjustment& beta, const Adjustment& alpha) {
  const PolyMorphism src = vcomp(beta.src(), alpha.src());
  const PolyMorphism dst = vcomp(beta.dst(), alpha.dst());
  const bool keeps_leg = compose(alpha.dst().dst_leg(), alpha.map()) == alpha.src().dst_leg();
  require(keeps_leg || beta.dst().cartesian(), ErrorKind::not_cartesian,
          "adjustment moves the dst leg and the outer morphism is not cartesian");
  const FinMap back = keeps_leg ? FinMap() : beta.dst().src_leg().inverse();
  const FinMap alpha_leg = compose(alpha.dst().dst_leg(), alpha.map());
  const FinMap alpha_map = alpha.map();
  const FinMap beta_map = beta.map();
  FinMap m = FinMap::tabulate(src.vertex(), dst.vertex(), [&](const Label& x) {
    const Label first = alpha_map(x[0]);
    const Label second = keeps_leg ? beta_map(x[1]) : back(alpha_leg(x[0]));
    return tup(first, second);
  });
  return Adjustment(src, dst, std::move(m));
}

/// omega . alpha : omega o phi => omega o phi'.
inline Adjustment adj_whisker_post(const PolyMorphism& omega, const Adjustment& alpha) {
  return adj_compose_cells(Adjustment::identity(omega), alpha);
}

/// beta . kappa : psi o kappa => psi' o kappa.
inline Adjustment adj_whisker_pre(const Adjustment& beta, const PolyMorphism& kappa) {
  return adj_compose_cells(beta, Adjustment::identity(kappa));
}

/// Horizontal composite of adjustments between cartesian morphisms; it is the
/// unique adjustment between the horizontal composites.
inline Adjustment adj_hcomp(const Adjustment& beta, const Adjustment& alpha) {
  return unique_adjustment(hcomp(beta.src(), alpha.src()), hcomp(beta.dst(), alpha.dst()));
}

// ---------------------------------------------------------------------------
// Reduction of 2-cells and adjustments to one-point endpoints

struct SlicedMorphism {
  SlicedPolynomial src;
  SlicedPolynomial dst;
  std::vector<PolyMorphism> fibres;

  friend bool operator==(const SlicedMorphism& a, const SlicedMorphism& b) {
    return a.src == b.src && a.dst == b.dst && a.fibres == b.fibres;
  }
};

/// Restricts phi to each base element [i, j]; vertex elements keep their labels.
inline SlicedMorphism slice_reduce(const PolyMorphism& phi) {
  const Polynomial& F = phi.src();
  SlicedMorphism out{slice_reduce(F), slice_reduce(phi.dst()), {}};
  for (std::size_t z = 0; z < out.src.base.size(); ++z) {
    const Label& i = out.src.base[z][0];
    const Label& j = out.src.base[z][1];
    const Polynomial pf = from_map(out.src.fibres[z]);
    const Polynomial pg = from_map(out.dst.fibres[z]);
    std::vector<Label> ds;
    for (std::size_t k = 0; k < phi.vertex().size(); ++k) {
      const Label& b = phi.src_leg().at(k);
      if (F.input()(b) == i && F.output()(F.projection()(b)) == j) ds.push_back(phi.vertex()[k]);
    }
    FinSet vertex(std::move(ds));
    out.fibres.emplace_back(
        pf, pg,
        FinMap::tabulate(pf.shapes(), pg.shapes(), [&](const Label& ia) { return tup(ia[0], phi.shape_map()(ia[1])); }),
        FinMap::tabulate(vertex, pg.positions(), [&](const Label& d) { return phi.dst_leg()(d); }),
        FinMap::tabulate(vertex, pf.positions(), [&](const Label& d) { return phi.src_leg()(d); }));
  }
  return out;
}

inline PolyMorphism unslice(const SlicedMorphism& S) {
  const Polynomial F = unslice(S.src);
  const Polynomial G = unslice(S.dst);
  require(S.fibres.size() == S.src.base.size(), ErrorKind::shape, "sliced morphism needs one morphism per base element");
  std::map<Label, Label> shape_pairs;
  std::vector<Label> ds;
  std::vector<std::pair<Label, Label>> to_dst;
  std::vector<std::pair<Label, Label>> to_src;
  for (const auto& m : S.fibres) {
    for (std::size_t k = 0; k < m.shape_map().dom().size(); ++k) {
      const Label& a = m.shape_map().dom()[k][1];
      const Label& c = m.shape_map().at(k)[1];
      auto [it, fresh] = shape_pairs.emplace(a, c);
      require(fresh || it->second == c, ErrorKind::commutativity,
              "shape map of " + a.str() + " differs between source elements");
    }
    for (std::size_t k = 0; k < m.vertex().size(); ++k) {
      ds.push_back(m.vertex()[k]);
      to_dst.emplace_back(m.vertex()[k], m.dst_leg().at(k));
      to_src.emplace_back(m.vertex()[k], m.src_leg().at(k));
    }
  }
  std::vector<std::pair<Label, Label>> sp(shape_pairs.begin(), shape_pairs.end());
  FinSet vertex(std::move(ds));
  return PolyMorphism(F, G, FinMap::from_pairs(F.shapes(), G.shapes(), sp), FinMap::from_pairs(vertex, G.positions(), to_dst),
                      FinMap::from_pairs(vertex, F.positions(), to_src));
}

/// Restricting an adjustment to each base element; the underlying map is unchanged.
inline std::vector<Adjustment> slice_reduce(const Adjustment& a) {
  const SlicedMorphism sp = slice_reduce(a.src());
  const SlicedMorphism sq = slice_reduce(a.dst());
  std::vector<Adjustment> out;
  for (std::size_t z = 0; z < sp.fibres.size(); ++z) {
    const PolyMorphism& p = sp.fibres[z];
    const PolyMorphism& q = sq.fibres[z];
    out.emplace_back(p, q, FinMap::tabulate(p.vertex(), q.vertex(), [&](const Label& d) { return a.map()(d); }));
  }
  return out;
}

inline Adjustment unslice(const SlicedMorphism& src, const SlicedMorphism& dst, const std::vector<Adjustment>& parts) {
  const PolyMorphism phi = unslice(src);
  const PolyMorphism psi = unslice(dst);
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& p : parts)
    for (std::size_t k = 0; k < p.map().dom().size(); ++k) pairs.emplace_back(p.map().dom()[k], p.map().at(k));
  return Adjustment(phi, psi, FinMap::from_pairs(phi.vertex(), psi.vertex(), pairs));
}

}  // namespace polyverse
