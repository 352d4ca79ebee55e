#pragma once

// Internal full subcategories of finite-set maps, the internal functors
// induced by cartesian 2-cells, and internal natural transformations.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/coherence.hpp"
#include "polyverse/finset.hpp"

namespace polyverse {

/// A category with finite sets of objects and morphisms. Composable pairs
/// [g, h] (cod h = dom g) are listed explicitly with their composite.
struct InternalCategory {
  FinSet obj;
  FinSet mor;
  FinMap dom;
  FinMap cod;
  FinMap ident;
  FinSet composable;  // [g, h] with dom g = cod h
  FinMap comp;        // composable -> mor, [g, h] |-> g o h

  Label compose(const Label& g, const Label& h) const { return comp(tup(g, h)); }
};

/// Internal full subcategory of f : B -> A. Morphisms a -> a' are
/// [[a, a'], k] with k a section over B_a valued in B_a'.
inline InternalCategory internal_full_subcat(const FinMap& f) {
  const FinSet& A = f.cod();
  const FinFamily fibres = FinFamily::fibres_of(f);
  const FinSet pairs = FinSet::product(A, A);
  const FinFamily from = FinFamily::generate(pairs, [&](const Label& z) { return fibres.fibre(z[0]); });
  const FinFamily to = FinFamily::generate(pairs, [&](const Label& z) { return fibres.fibre(z[1]); });
  const FinMap total = family_exponential(from, to).total();

  InternalCategory C;
  C.obj = A;
  C.mor = total.dom();
  C.dom = FinMap::tabulate(C.mor, A, [](const Label& m) { return m[0][0]; });
  C.cod = FinMap::tabulate(C.mor, A, [](const Label& m) { return m[0][1]; });
  C.ident = FinMap::tabulate(A, C.mor, [&](const Label& a) {
    const auto& keys = fibres.fibre(a).elements();
    return tup(tup(a, a), make_section(keys, keys));
  });
  Pullback pb = pullback(C.dom, C.cod);
  C.composable = pb.apex;
  C.comp = FinMap::tabulate(C.composable, C.mor, [](const Label& gh) {
    const Label& g = gh[0];
    const Label& h = gh[1];
    std::vector<Label> keys;
    std::vector<Label> vals;
    for (const auto& kv : h[1].items()) {
      keys.push_back(kv[0]);
      vals.push_back(section_value(g[1], kv[1]));
    }
    return tup(tup(h[0][0], g[0][1]), make_section(keys, vals));
  });
  return C;
}

/// Category laws by full enumeration; failures name the offending elements.
inline std::vector<LawCheck> check_category_laws(const InternalCategory& C) {
  LawCheck ids{"identity-boundaries", true, ""};
  LawCheck units{"unit-laws", true, ""};
  LawCheck bounds{"composite-boundaries", true, ""};
  LawCheck assoc{"associativity", true, ""};
  auto fail_with = [](LawCheck& c, const std::string& d) {
    if (c.holds) {
      c.holds = false;
      c.detail = d;
    }
  };
  for (const auto& a : C.obj) {
    const Label& i = C.ident(a);
    if (C.dom(i) != a || C.cod(i) != a) fail_with(ids, "identity on " + a.str());
  }
  for (const auto& m : C.mor) {
    if (C.compose(C.ident(C.cod(m)), m) != m) fail_with(units, "left unit at " + m.str());
    if (C.compose(m, C.ident(C.dom(m))) != m) fail_with(units, "right unit at " + m.str());
  }
  const auto by_cod = C.cod.fibres();
  for (const auto& gh : C.composable) {
    const Label& c = C.comp(gh);
    if (C.dom(c) != C.dom(gh[1]) || C.cod(c) != C.cod(gh[0])) fail_with(bounds, "composite " + gh.str());
    // (g h) k = g (h k) for every k into dom h
    for (auto k : by_cod[C.obj.index_of(C.dom(gh[1]))]) {
      const Label& km = C.mor[k];
      if (C.compose(c, km) != C.compose(gh[0], C.compose(gh[1], km)))
        fail_with(assoc, "triple " + gh.str() + " with " + km.str());
    }
  }
  if (ids.holds) ids.detail = std::to_string(C.obj.size()) + " objects";
  if (units.holds) units.detail = std::to_string(C.mor.size()) + " morphisms";
  if (bounds.holds || assoc.holds) {
    if (bounds.holds) bounds.detail = std::to_string(C.composable.size()) + " composable pairs";
    if (assoc.holds) assoc.detail = "all composable triples";
  }
  return {ids, units, bounds, assoc};
}

struct InternalFunctor {
  InternalCategory src;
  InternalCategory dst;
  FinMap on_obj;
  FinMap on_mor;
};

inline std::vector<LawCheck> check_functor_laws(const InternalFunctor& F) {
  LawCheck bounds{"functor-boundaries", true, "all morphisms"};
  LawCheck ids{"functor-identities", true, "all objects"};
  LawCheck comp{"functor-composition", true, "all composable pairs"};
  for (const auto& m : F.src.mor) {
    const Label& fm = F.on_mor(m);
    if (F.dst.dom(fm) != F.on_obj(F.src.dom(m)) || F.dst.cod(fm) != F.on_obj(F.src.cod(m))) {
      bounds = {"functor-boundaries", false, "at " + m.str()};
      break;
    }
  }
  for (const auto& a : F.src.obj)
    if (F.on_mor(F.src.ident(a)) != F.dst.ident(F.on_obj(a))) {
      ids = {"functor-identities", false, "at " + a.str()};
      break;
    }
  for (const auto& gh : F.src.composable)
    if (F.on_mor(F.src.comp(gh)) != F.dst.compose(F.on_mor(gh[0]), F.on_mor(gh[1]))) {
      comp = {"functor-composition", false, "at " + gh.str()};
      break;
    }
  return {bounds, ids, comp};
}

/// Whether every hom-set map  C(a, a') -> D(Fa, Fa')  is a bijection.
inline bool full_and_faithful(const InternalFunctor& F) {
  std::map<std::pair<Label, Label>, std::vector<Label>> images;
  for (const auto& m : F.src.mor) images[{F.src.dom(m), F.src.cod(m)}].push_back(F.on_mor(m));
  for (const auto& a : F.src.obj)
    for (const auto& b : F.src.obj) {
      auto& img = images[{a, b}];
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
      std::size_t target = 0;
      for (const auto& m : F.dst.mor)
        if (F.dst.dom(m) == F.on_obj(a) && F.dst.cod(m) == F.on_obj(b)) ++target;
      if (target != img.size()) return false;
    }
  return true;
}

/// Conjugating sections by the position bijection of a cartesian 2-cell
/// f => g between polynomials 1 -> 1 (source and target given by projections).
inline InternalFunctor internal_functor(const PolyMorphism& phi) {
  require(phi.cartesian(), ErrorKind::not_cartesian, "internal functors come from cartesian morphisms");
  require(is_endo_on_point(phi.src()), ErrorKind::shape, "internal functor needs endpoints 1 -> 1; slice first");
  InternalFunctor F;
  F.src = internal_full_subcat(phi.src().projection());
  F.dst = internal_full_subcat(phi.dst().projection());
  F.on_obj = phi.shape_map();
  const FinMap pos = phi.position_map();
  F.on_mor = FinMap::tabulate(F.src.mor, F.dst.mor, [&](const Label& m) {
    std::vector<std::pair<Label, Label>> pairs;
    for (const auto& kv : m[1].items()) pairs.emplace_back(pos(kv[0]), pos(kv[1]));
    return tup(tup(phi.shape_map()(m[0][0]), phi.shape_map()(m[0][1])), section_from_pairs(std::move(pairs)));
  });
  return F;
}

/// One internal functor per base element of the slice reduction.
inline std::vector<InternalFunctor> internal_functors(const PolyMorphism& phi) {
  std::vector<InternalFunctor> out;
  for (const auto& m : slice_reduce(phi).fibres) out.push_back(internal_functor(m));
  return out;
}

/// Whether the square  on_mor, (dom, cod), on_obj x on_obj  is a pullback.
inline bool functor_square_is_pullback(const InternalFunctor& F) {
  const FinSet src_pairs = FinSet::product(F.src.obj, F.src.obj);
  const FinSet dst_pairs = FinSet::product(F.dst.obj, F.dst.obj);
  const FinMap ds = pairing(F.src.dom, F.src.cod, src_pairs);
  const FinMap dd = pairing(F.dst.dom, F.dst.cod, dst_pairs);
  const FinMap obj2 = FinMap::tabulate(src_pairs, dst_pairs,
                                       [&](const Label& z) { return tup(F.on_obj(z[0]), F.on_obj(z[1])); });
  return is_pullback_square(ds, F.on_mor, obj2, dd);
}

inline InternalFunctor compose(const InternalFunctor& G, const InternalFunctor& F) {
  return {F.src, G.dst, compose(G.on_obj, F.on_obj), compose(G.on_mor, F.on_mor)};
}

inline bool operator==(const InternalFunctor& a, const InternalFunctor& b) {
  return a.on_obj == b.on_obj && a.on_mor == b.on_mor;
}

// ---------------------------------------------------------------------------
// Natural transformations

class InternalNatTrans {
 public:
  InternalNatTrans(InternalFunctor src, InternalFunctor dst, FinMap components)
      : src_(std::move(src)), dst_(std::move(dst)), components_(std::move(components)) {
    const InternalCategory& C = src_.src;
    const InternalCategory& D = src_.dst;
    require(components_.dom() == C.obj && components_.cod() == D.mor, ErrorKind::shape,
            "components must map objects to morphisms");
    for (const auto& a : C.obj) {
      const Label& c = components_(a);
      require(D.dom(c) == src_.on_obj(a) && D.cod(c) == dst_.on_obj(a), ErrorKind::shape,
              "component at " + a.str() + " has the wrong boundary");
    }
    for (const auto& m : C.mor) {
      const Label lhs = D.compose(dst_.on_mor(m), components_(C.dom(m)));
      const Label rhs = D.compose(components_(C.cod(m)), src_.on_mor(m));
      require(lhs == rhs, ErrorKind::naturality, "naturality square fails at " + m.str());
    }
  }

  const InternalFunctor& src() const noexcept { return src_; }
  const InternalFunctor& dst() const noexcept { return dst_; }
  const FinMap& components() const noexcept { return components_; }

 private:
  InternalFunctor src_;
  InternalFunctor dst_;
  FinMap components_;
};

/// The transpose of a vertex map over A:  a |-> [[phi0 a, psi0 a], d |-> psi1(alpha(delta))]
/// with delta over a and phi1(delta) = d. Both morphisms must be cartesian with endpoints 1 -> 1.
inline FinMap transpose_vertex_map(const PolyMorphism& phi, const PolyMorphism& psi, const FinMap& alpha,
                                   const InternalCategory& target) {
  const Polynomial& F = phi.src();
  require(alpha.dom() == phi.vertex() && alpha.cod() == psi.vertex(), ErrorKind::shape,
          "vertex map between the wrong vertices");
  std::vector<std::vector<std::pair<Label, Label>>> parts(F.shapes().size());
  for (std::size_t k = 0; k < phi.vertex().size(); ++k) {
    const std::size_t a = F.projection().index_at(phi.src_leg().index_at(k));
    const std::size_t l = alpha.index_at(k);
    require(F.projection().index_at(psi.src_leg().index_at(l)) == a, ErrorKind::shape,
            "vertex map is not over the shapes");
    parts[a].emplace_back(phi.dst_leg().at(k), psi.dst_leg().at(l));
  }
  std::vector<std::size_t> img;
  for (std::size_t a = 0; a < F.shapes().size(); ++a) {
    const Label& x = F.shapes()[a];
    const Label m = tup(tup(phi.shape_map()(x), psi.shape_map()(x)), section_from_pairs(parts[a]));
    img.push_back(target.mor.index_of(m));
  }
  return FinMap(F.shapes(), target.mor, std::move(img));
}

/// Adjustment between cartesian morphisms  |->  internal natural transformation.
inline InternalNatTrans adjustment_to_nat(const Adjustment& a) {
  require(a.src().cartesian() && a.dst().cartesian(), ErrorKind::not_cartesian,
          "internal transformations come from adjustments between cartesian morphisms");
  InternalFunctor Fphi = internal_functor(a.src());
  InternalFunctor Fpsi = internal_functor(a.dst());
  FinMap comps = transpose_vertex_map(a.src(), a.dst(), a.map(), Fphi.dst);
  return InternalNatTrans(std::move(Fphi), std::move(Fpsi), std::move(comps));
}

/// Reads off the vertex map from components; inverse of transpose_vertex_map.
inline FinMap untranspose(const PolyMorphism& phi, const PolyMorphism& psi, const FinMap& components) {
  const Polynomial& F = phi.src();
  std::map<std::pair<std::size_t, Label>, std::size_t> psi_by;  // (a, dst position) -> vertex index
  for (std::size_t l = 0; l < psi.vertex().size(); ++l)
    psi_by[{F.projection().index_at(psi.src_leg().index_at(l)), psi.dst_leg().at(l)}] = l;
  std::vector<std::size_t> img;
  for (std::size_t k = 0; k < phi.vertex().size(); ++k) {
    const std::size_t a = F.projection().index_at(phi.src_leg().index_at(k));
    const Label& sec = components.at(a)[1];
    auto it = psi_by.find({a, section_value(sec, phi.dst_leg().at(k))});
    require(it != psi_by.end(), ErrorKind::shape, "component does not land over the right shape");
    img.push_back(it->second);
  }
  return FinMap(phi.vertex(), psi.vertex(), std::move(img));
}

/// Internal natural transformation between functors of cartesian 2-cells  |->  adjustment.
inline Adjustment nat_to_adjustment(const PolyMorphism& phi, const PolyMorphism& psi, const InternalNatTrans& n) {
  require(internal_functor(phi) == n.src() && internal_functor(psi) == n.dst(), ErrorKind::shape,
          "transformation is not between the functors of the given morphisms");
  return Adjustment(phi, psi, untranspose(phi, psi, n.components()));
}

/// Every family of components with the right boundaries that is natural.
inline std::vector<InternalNatTrans> enumerate_nat_trans(const InternalFunctor& F, const InternalFunctor& G) {
  const InternalCategory& D = F.dst;
  std::vector<std::vector<std::size_t>> options;
  std::size_t total = 1;
  for (const auto& a : F.src.obj) {
    std::vector<std::size_t> opts;
    for (std::size_t m = 0; m < D.mor.size(); ++m)
      if (D.dom.at(m) == F.on_obj(a) && D.cod.at(m) == G.on_obj(a)) opts.push_back(m);
    total = saturating_mul(total, opts.size());
    options.push_back(std::move(opts));
  }
  check_cap(total, "natural transformation search");
  std::vector<InternalNatTrans> out;
  if (total == 0) return out;
  std::vector<std::size_t> idx(options.size(), 0);
  while (true) {
    std::vector<std::size_t> img;
    for (std::size_t i = 0; i < options.size(); ++i) img.push_back(options[i][idx[i]]);
    try {
      out.emplace_back(F, G, FinMap(F.src.obj, D.mor, std::move(img)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::naturality) throw;
    }
    std::size_t pos = options.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < options[pos].size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) return out;
  }
}

// ---------------------------------------------------------------------------
// Four equivalent conditions on a vertex map over A

struct EquivalenceCounts {
  std::size_t candidates = 0;
  std::size_t natural = 0;         // the transpose is an internal natural transformation
  std::size_t commuting = 0;       // A_psi(k) o alpha_a = alpha_a' o A_phi(k) elementwise
  std::size_t conjugating = 0;     // gamma_a' o k = k o gamma_a
  std::size_t over_positions = 0;  // psi2 o alpha = phi2
  bool same_sets = true;
};

/// All vertex maps over A between cartesian phi, psi : f => g (endpoints 1 -> 1).
inline std::vector<FinMap> enumerate_vertex_maps_over_shapes(const PolyMorphism& phi, const PolyMorphism& psi) {
  const FinMap& proj = phi.src().projection();
  std::vector<FinMap> out;
  for (auto& m : enumerate_maps(phi.vertex(), psi.vertex())) {
    bool ok = true;
    for (std::size_t k = 0; k < m.dom().size() && ok; ++k)
      ok = proj.index_at(phi.src_leg().index_at(k)) == proj.index_at(psi.src_leg().index_at(m.index_at(k)));
    if (ok) out.push_back(std::move(m));
  }
  return out;
}

inline EquivalenceCounts check_four_conditions(const PolyMorphism& phi, const PolyMorphism& psi) {
  require(phi.cartesian() && psi.cartesian(), ErrorKind::not_cartesian, "conditions compare cartesian morphisms");
  const InternalFunctor Fphi = internal_functor(phi);
  const InternalFunctor Fpsi = internal_functor(psi);
  const InternalCategory& Cf = Fphi.src;
  const Polynomial& F = phi.src();
  const FinMap phi_pos = phi.position_map();
  const FinMap psi_pos = psi.position_map();
  const FinMap phi_back = phi.src_leg().inverse();
  std::map<std::pair<Label, Label>, Label> psi_back;  // (a, d) -> b over a with psi_pos(b) = d
  for (const auto& b : F.positions()) psi_back.emplace(std::make_pair(F.projection()(b), psi_pos(b)), b);

  EquivalenceCounts out;
  for (const auto& alpha : enumerate_vertex_maps_over_shapes(phi, psi)) {
    ++out.candidates;
    // transpose is natural
    bool c1 = true;
    try {
      InternalNatTrans(Fphi, Fpsi, transpose_vertex_map(phi, psi, alpha, Fphi.dst));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::naturality) throw;
      c1 = false;
    }
    // alpha_a as a map on G's positions: d over phi0(a) |-> psi1(alpha(delta)).
    auto alpha_at = [&](const Label& b) {  // b in B, returns alpha_{f b}(phi1(phi2^-1 b))
      return psi.dst_leg()(alpha(phi_back(b)));
    };
    // Element-level: for k : B_a -> B_a', both routes B_a -> D_{psi0 a'} agree,
    // where A_phi(k) = phi_pos k phi_pos^-1 and alpha_a is read through phi_pos.
    bool c2 = true;
    for (const auto& m : Cf.mor) {
      const Label& a = m[0][0];
      for (const auto& kv : m[1].items()) {
        const Label& b = kv[0];
        const Label& kb = kv[1];
        // A_psi(k)(alpha_a(phi_pos b)) = psi_pos(k(psi_pos_a^-1(alpha_a(phi_pos b))))
        const Label lhs = psi_pos(section_value(m[1], psi_back.at({a, alpha_at(b)})));
        const Label rhs = alpha_at(kb);
        if (lhs != rhs) {
          c2 = false;
          break;
        }
      }
      if (!c2) break;
    }
    // gamma = psi2 o alpha o phi2^-1 commutes with every k.
    const FinMap gamma = compose(psi.src_leg(), alpha, phi_back);
    bool c3 = true;
    for (const auto& m : Cf.mor) {
      for (const auto& kv : m[1].items())
        if (gamma(kv[1]) != section_value(m[1], gamma(kv[0]))) {
          c3 = false;
          break;
        }
      if (!c3) break;
    }
    // over the positions
    const bool c4 = compose(psi.src_leg(), alpha) == phi.src_leg();
    out.natural += c1;
    out.commuting += c2;
    out.conjugating += c3;
    out.over_positions += c4;
    if (!(c1 == c2 && c2 == c3 && c3 == c4)) out.same_sets = false;
  }
  return out;
}

}  // namespace polyverse
