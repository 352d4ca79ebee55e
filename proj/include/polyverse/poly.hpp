#pragma once

// Polynomials  I <-s- B -f-> A -t-> J  over finite sets, their extensions,
// composition and reduction to one-point endpoints over a slice.

#include <string>
#include <utility>
#include <vector>

#include "polyverse/error.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/label.hpp"

namespace polyverse {

/// A bridge diagram  source <-input- positions -projection-> shapes -output-> target.
class Polynomial {
 public:
  Polynomial() = default;

  Polynomial(FinMap input, FinMap projection, FinMap output)
      : input_(std::move(input)), projection_(std::move(projection)), output_(std::move(output)) {
    require(input_.dom() == projection_.dom(), ErrorKind::shape, "polynomial: input and projection must share a domain");
    require(projection_.cod() == output_.dom(), ErrorKind::shape, "polynomial: projection must land in the output's domain");
  }

  const FinSet& source() const noexcept { return input_.cod(); }
  const FinSet& positions() const noexcept { return input_.dom(); }
  const FinSet& shapes() const noexcept { return output_.dom(); }
  const FinSet& target() const noexcept { return output_.cod(); }

  const FinMap& input() const noexcept { return input_; }
  const FinMap& projection() const noexcept { return projection_; }
  const FinMap& output() const noexcept { return output_; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.input_ == b.input_ && a.projection_ == b.projection_ && a.output_ == b.output_;
  }

 private:
  FinMap input_;
  FinMap projection_;
  FinMap output_;
};

/// A map B -> A viewed as a polynomial 1 -> 1.
inline Polynomial from_map(const FinMap& f, const FinSet& one = FinSet::singleton()) {
  return Polynomial(FinMap::to_point(f.dom(), one), f, FinMap::to_point(f.cod(), one));
}

inline bool is_endo_on_point(const Polynomial& p) { return p.source().size() == 1 && p.target().size() == 1; }

inline Polynomial identity_poly(const FinSet& objects) {
  const FinMap id = FinMap::identity(objects);
  return Polynomial(id, id, id);
}

/// Linear polynomial of the span  I <-s- A -t-> J.
inline Polynomial linear_poly(const FinMap& s, const FinMap& t) {
  require(s.dom() == t.dom(), ErrorKind::shape, "linear polynomial: span legs must share a domain");
  return Polynomial(s, FinMap::identity(s.dom()), t);
}

// ---------------------------------------------------------------------------
// Extension

/// P_F(X)_j = sum_{a over j} prod_{b over a} X_{s(b)}; elements are [a, section].
inline FinFamily extend(const Polynomial& F, const FinFamily& x) {
  require(x.index() == F.source(), ErrorKind::shape, "extension: family not indexed by the polynomial's source");
  return dep_sum(F.output(), dep_prod(F.projection(), base_change(F.input(), x)));
}

/// Action of P_F on a fibrewise map X -> X'.
inline FamilyMap extend(const Polynomial& F, const FamilyMap& h) {
  const FinFamily src = extend(F, h.src());
  const FinFamily dst = extend(F, h.dst());
  std::vector<FinMap> comps;
  for (std::size_t j = 0; j < F.target().size(); ++j) {
    comps.push_back(FinMap::tabulate(src.fibre(j), dst.fibre(j), [&](const Label& e) {
      std::vector<Label> pairs;
      for (const auto& kv : e[1].items()) pairs.push_back(tup(kv[0], h.component(F.input()(kv[0]))(kv[1])));
      return tup(e[0], Label::tuple(std::move(pairs)));
    }));
  }
  return FamilyMap(src, dst, std::move(comps));
}

// ---------------------------------------------------------------------------
// Composition

/// Intermediate objects of the composite construction for G after F, with
///   F : I <-s- B -f-> A -t-> J,   G : J <-u- D -g-> C -v-> K.
struct CompositionTrace {
  Pullback first;        // D x_J A, labels [d, a]; left = h : -> D, right : -> A
  FinMap h;              // first.left
  FinFamily h_family;    // h as a family over D (fibre over d: shapes over u(d))
  FinMap w;              // Pi_g(h) : M -> C, M labels [c, m]
  Pullback second;       // M x_C D, labels [[c, m], d]; left = q
  FinMap counit;         // e : second.apex -> first.apex, [[c,m],d] |-> [d, m(d)]
  Pullback third;        // B x_A second.apex, labels [b, [[c,m],d]]; left = n, right = p
  FinMap n, p, q;
  FinSet shapes;         // M
  FinSet positions;      // N, relabelled to [c, m, d, b]
  FinMap relabel;        // third.apex -> N

  /// Re-checks every recorded square and the counit.
  bool valid(const Polynomial& G, const Polynomial& F) const {
    if (!is_pullback_square(first.left, first.right, G.input(), F.output())) return false;
    if (!(h_family.total().dom() == first.apex)) return false;
    if (!is_pullback_square(second.left, second.right, w, G.projection())) return false;
    if (!(compose(h, counit) == second.right)) return false;
    const FinMap to_shapes = compose(first.right, counit);
    if (!is_pullback_square(third.left, third.right, F.projection(), to_shapes)) return false;
    if (!relabel.bijective()) return false;
    for (std::size_t i = 0; i < second.apex.size(); ++i) {
      const Label& x = second.apex[i];
      if (counit.at(i) != tup(x[1], section_value(x[0][1], x[1]))) return false;
    }
    return true;
  }
};

struct Composite {
  Polynomial poly;
  CompositionTrace trace;
};

/// G . F built from chosen pullbacks and the dependent product.
inline Composite compose_traced(const Polynomial& G, const Polynomial& F) {
  require(F.target() == G.source(), ErrorKind::shape, "composition: target of F is not the source of G");
  CompositionTrace tr;
  tr.first = pullback(G.input(), F.output());
  tr.h = tr.first.left;
  tr.h_family = base_change(G.input(), FinFamily::fibres_of(F.output()));
  const FinFamily pi = dep_prod(G.projection(), tr.h_family);
  tr.w = pi.total();
  tr.shapes = tr.w.dom();
  tr.second = pullback(tr.w, G.projection());
  tr.q = tr.second.left;
  tr.counit = FinMap::tabulate(tr.second.apex, tr.first.apex, [](const Label& x) {
    const Label& d = x[1];
    return tup(d, section_value(x[0][1], d));
  });
  tr.third = pullback(F.projection(), compose(tr.first.right, tr.counit));
  tr.n = tr.third.left;
  tr.p = tr.third.right;
  std::vector<Label> flat;
  flat.reserve(tr.third.apex.size());
  for (const auto& x : tr.third.apex) flat.push_back(tup(x[1][0][0], x[1][0][1], x[1][1], x[0]));
  tr.positions = FinSet(std::move(flat));
  tr.relabel = FinMap::tabulate(tr.third.apex, tr.positions,
                                [](const Label& x) { return tup(x[1][0][0], x[1][0][1], x[1][1], x[0]); });
  const FinMap back = tr.relabel.inverse();
  Polynomial gf(compose(F.input(), tr.n, back), compose(tr.q, tr.p, back), compose(G.output(), tr.w));
  return {std::move(gf), std::move(tr)};
}

inline Polynomial compose(const Polynomial& G, const Polynomial& F) { return compose_traced(G, F).poly; }

/// G . F straight from the element description: shapes over k are [c, m] with
/// m : D_c -> A over J, positions over [c, m] are [c, m, d, b] with b over m(d).
inline Polynomial compose_direct(const Polynomial& G, const Polynomial& F) {
  require(F.target() == G.source(), ErrorKind::shape, "composition: target of F is not the source of G");
  const FinFamily shapes_over_j = FinFamily::fibres_of(F.output());
  const FinFamily positions_over_a = FinFamily::fibres_of(F.projection());
  const FinFamily arity = FinFamily::fibres_of(G.projection());
  std::vector<Label> ms;
  for (const auto& c : G.shapes()) {
    const FinSet& ds = arity.fibre(c);
    std::vector<const FinSet*> choices;
    for (const auto& d : ds) choices.push_back(&shapes_over_j.fibre(G.input()(d)));
    for (auto& m : enumerate_sections(ds.elements(), choices)) ms.push_back(tup(c, std::move(m)));
  }
  FinSet shapes(std::move(ms));
  std::vector<Label> ns;
  for (const auto& cm : shapes)
    for (const auto& d : arity.fibre(cm[0]))
      for (const auto& b : positions_over_a.fibre(section_value(cm[1], d))) ns.push_back(tup(cm[0], cm[1], d, b));
  FinSet positions(std::move(ns));
  return Polynomial(FinMap::tabulate(positions, F.source(), [&](const Label& n) { return F.input()(n[3]); }),
                    FinMap::tabulate(positions, shapes, [](const Label& n) { return tup(n[0], n[1]); }),
                    FinMap::tabulate(shapes, G.target(), [&](const Label& cm) { return G.output()(cm[0]); }));
}

/// The natural bijection P_{G.F}(X) = P_G(P_F(X)), both directions, fibrewise over K.
struct ExtensionIso {
  FamilyMap forward;   // P_{G.F}(X) -> P_G(P_F(X))
  FamilyMap backward;  // P_G(P_F(X)) -> P_{G.F}(X)
};

inline ExtensionIso extension_composition_iso(const Polynomial& G, const Polynomial& F, const Polynomial& GF,
                                              const FinFamily& x) {
  require(F.target() == G.source() && GF.source() == F.source() && GF.target() == G.target(), ErrorKind::shape,
          "extension iso: polynomials do not compose");
  const FinFamily lhs = extend(GF, x);
  const FinFamily rhs = extend(G, extend(F, x));
  const FinFamily arity = FinFamily::fibres_of(G.projection());
  const FinFamily positions_over_a = FinFamily::fibres_of(F.projection());

  std::vector<FinMap> fwd;
  std::vector<FinMap> bwd;
  for (std::size_t k = 0; k < G.target().size(); ++k) {
    fwd.push_back(FinMap::tabulate(lhs.fibre(k), rhs.fibre(k), [&](const Label& e) {
      const Label& cm = e[0];
      const Label& sigma = e[1];
      const Label& c = cm[0];
      const Label& m = cm[1];
      std::vector<Label> ds;
      std::vector<Label> inner;
      for (const auto& d : arity.fibre(c)) {
        const Label& a = section_value(m, d);
        std::vector<Label> bs;
        std::vector<Label> xs;
        for (const auto& b : positions_over_a.fibre(a)) {
          bs.push_back(b);
          xs.push_back(section_value(sigma, tup(c, m, d, b)));
        }
        ds.push_back(d);
        inner.push_back(tup(a, make_section(bs, xs)));
      }
      return tup(c, make_section(ds, inner));
    }));
    bwd.push_back(FinMap::tabulate(rhs.fibre(k), lhs.fibre(k), [&](const Label& e) {
      const Label& c = e[0];
      const Label& tau = e[1];
      std::vector<Label> ds;
      std::vector<Label> as;
      for (const auto& kv : tau.items()) {
        ds.push_back(kv[0]);
        as.push_back(kv[1][0]);
      }
      const Label m = make_section(ds, as);
      std::vector<Label> keys;
      std::vector<Label> xs;
      for (const auto& kv : tau.items())
        for (const auto& bx : kv[1][1].items()) {
          keys.push_back(tup(c, m, kv[0], bx[0]));
          xs.push_back(bx[1]);
        }
      return tup(tup(c, m), make_section(keys, xs));
    }));
  }
  return {FamilyMap(lhs, rhs, std::move(fwd)), FamilyMap(rhs, lhs, std::move(bwd))};
}

inline ExtensionIso extension_composition_iso(const Polynomial& G, const Polynomial& F, const FinFamily& x) {
  return extension_composition_iso(G, F, compose(G, F), x);
}

/// The canonical bijection X = P_{id}(X).
inline FamilyMap identity_extension_iso(const FinFamily& x) {
  const Polynomial id = identity_poly(x.index());
  const FinFamily px = extend(id, x);
  std::vector<FinMap> comps;
  for (std::size_t i = 0; i < x.index().size(); ++i) {
    const Label& key = x.index()[i];
    comps.push_back(FinMap::tabulate(x.fibre(i), px.fibre(i),
                                     [&](const Label& e) { return tup(key, make_section({key}, {e})); }));
  }
  return FamilyMap(x, px, std::move(comps));
}

// ---------------------------------------------------------------------------
// Reduction to endpoints 1 -> 1 over the slice I x J

/// A polynomial 1 -> 1 in the slice over `base` = source x target: one map
/// per base element. The factors are kept since the product forgets the
/// source when the target is empty.
struct SlicedPolynomial {
  FinSet source;
  FinSet target;
  FinSet base;
  std::vector<FinMap> fibres;

  friend bool operator==(const SlicedPolynomial& a, const SlicedPolynomial& b) {
    return a.source == b.source && a.target == b.target && a.fibres == b.fibres;
  }
};

/// Positions over [i, j] keep their labels; shapes over [i, j] are [i, a] with a over j.
inline SlicedPolynomial slice_reduce(const Polynomial& F) {
  SlicedPolynomial out;
  out.source = F.source();
  out.target = F.target();
  out.base = FinSet::product(F.source(), F.target());
  const FinFamily shapes_over_j = FinFamily::fibres_of(F.output());
  for (const auto& ij : out.base) {
    const Label& i = ij[0];
    const Label& j = ij[1];
    std::vector<Label> bs;
    for (const auto& b : F.positions())
      if (F.input()(b) == i && F.output()(F.projection()(b)) == j) bs.push_back(b);
    std::vector<Label> as;
    for (const auto& a : shapes_over_j.fibre(j)) as.push_back(tup(i, a));
    out.fibres.push_back(FinMap::tabulate(FinSet(std::move(bs)), FinSet(std::move(as)),
                                          [&](const Label& b) { return tup(i, F.projection()(b)); }));
  }
  return out;
}

/// Inverse of slice_reduce on its image. The source must be non-empty: over
/// an empty source every polynomial reduces to the same empty data.
inline Polynomial unslice(const SlicedPolynomial& S) {
  require(S.fibres.size() == S.base.size(), ErrorKind::shape, "sliced polynomial needs one map per base element");
  require(S.base == FinSet::product(S.source, S.target), ErrorKind::shape, "slice base is not source x target");
  const FinSet& I = S.source;
  const FinSet& J = S.target;
  require(!I.empty(), ErrorKind::invalid, "cannot recover shapes over an empty source");
  std::vector<std::pair<Label, Label>> shape_target;  // [a, j]
  std::vector<std::vector<Label>> shapes_by_j(J.size());
  std::vector<std::pair<Label, Label>> pos_input;
  std::vector<std::pair<Label, Label>> pos_proj;
  std::vector<Label> positions;
  for (std::size_t z = 0; z < S.base.size(); ++z) {
    const Label& i = S.base[z][0];
    const Label& j = S.base[z][1];
    const FinMap& fz = S.fibres[z];
    std::vector<Label> as;
    for (const auto& ia : fz.cod()) {
      require(ia.is_tuple() && ia.size() == 2 && ia[0] == i, ErrorKind::shape,
              "sliced shape " + ia.str() + " is not of the form [i, a]");
      as.push_back(ia[1]);
    }
    auto& known = shapes_by_j[J.index_of(j)];
    if (S.base[z][0] == I[0]) {
      known = as;
    } else {
      require(known == as, ErrorKind::shape, "shapes over " + j.str() + " differ between source elements");
    }
    for (std::size_t k = 0; k < fz.dom().size(); ++k) {
      const Label& b = fz.dom()[k];
      positions.push_back(b);
      pos_input.emplace_back(b, i);
      pos_proj.emplace_back(b, fz.at(k)[1]);
    }
  }
  std::vector<Label> shapes;
  for (std::size_t j = 0; j < J.size(); ++j)
    for (const auto& a : shapes_by_j[j]) {
      shapes.push_back(a);
      shape_target.emplace_back(a, J[j]);
    }
  FinSet A(std::move(shapes));
  FinSet B(std::move(positions));
  return Polynomial(FinMap::from_pairs(B, I, pos_input), FinMap::from_pairs(B, A, pos_proj),
                    FinMap::from_pairs(A, J, shape_target));
}

}  // namespace polyverse
