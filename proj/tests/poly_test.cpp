#include <gtest/gtest.h>

#include <cstdint>

#include "polyverse/poly.hpp"
#include "support.hpp"

using namespace polyverse;
using testgen::Gen;

namespace {

// |P_F(X)_j| = sum over shapes a over j of prod over positions b over a of |X_{s b}|.
std::uint64_t extension_size(const Polynomial& F, const FinFamily& x, const Label& j) {
  std::uint64_t total = 0;
  for (const auto& a : F.output().fibre(j)) {
    std::uint64_t prod = 1;
    for (const auto& b : F.projection().fibre(a)) prod *= x.fibre(F.input()(b)).size();
    total += prod;
  }
  return total;
}

struct Triple {
  FinSet I, J, K;
  Polynomial F, G;
};

Triple random_pair(Gen& g) {
  Triple t;
  t.I = g.set("i", 1, 2);
  t.J = g.set("j", 1, 2);
  t.K = g.set("k", 1, 2);
  t.F = g.poly(t.I, t.J, "F", 3, 2);
  t.G = g.poly(t.J, t.K, "G", 2, 2);
  return t;
}

}  // namespace

TEST(Polynomial, ConstructionChecksShapes) {
  FinSet a{"a"}, b{"b"};
  EXPECT_THROW(Polynomial(FinMap::identity(a), FinMap::identity(b), FinMap::identity(b)), Error);
  Polynomial p = from_map(FinMap::to_point(FinSet{"x", "y"}));
  EXPECT_TRUE(is_endo_on_point(p));
  EXPECT_EQ(p.positions().size(), 2u);
}

TEST(Extension, SizesMatchCountingFormula) {
  Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    FinSet I = g.set("i", 0, 3), J = g.set("j", 1, 3);
    Polynomial F = g.poly(I, J, "F", 3, 3);
    FinFamily x = g.family(I, "x", 2);
    FinFamily px = extend(F, x);
    for (const auto& j : J) EXPECT_EQ(px.fibre(j).size(), extension_size(F, x, j));
  }
}

TEST(Extension, SquarePolynomialOnConcreteSet) {
  // X |-> X^2 + 1 on {p, q}: five elements.
  FinSet B{"l", "r"}, A{"pair", "nil"};
  Polynomial F = from_map(FinMap::from_pairs(B, A, {{"l", "pair"}, {"r", "pair"}}));
  FinFamily x = FinFamily::constant(FinSet::singleton(), FinSet{"p", "q"});
  FinFamily px = extend(F, x);
  EXPECT_EQ(px.fibre(0).size(), 5u);
  EXPECT_TRUE(px.fibre(0).contains(tup("nil", Label::tuple({}))));
  EXPECT_TRUE(px.fibre(0).contains(tup("pair", make_section({"l", "r"}, {"q", "p"}))));
}

TEST(Extension, FunctorialOnFamilyMaps) {
  Gen g(12);
  for (int trial = 0; trial < 30; ++trial) {
    FinSet I = g.set("i", 1, 2), J = g.set("j", 1, 2);
    Polynomial F = g.poly(I, J, "F", 2, 2);
    FinFamily x = g.family(I, "x", 2), y = g.family(I, "y", 2), z = g.family(I, "z", 2);
    auto hs = enumerate_family_maps(x, y);
    auto ks = enumerate_family_maps(y, z);
    if (hs.empty() || ks.empty()) continue;
    const FamilyMap& h = hs[g.below(hs.size())];
    const FamilyMap& k = ks[g.below(ks.size())];
    EXPECT_EQ(extend(F, compose(k, h)), compose(extend(F, k), extend(F, h)));
    EXPECT_EQ(extend(F, FamilyMap::identity(x)), FamilyMap::identity(extend(F, x)));
  }
}

TEST(Composition, CategoricalMatchesElementFormula) {
  Gen g(13);
  for (int trial = 0; trial < 80; ++trial) {
    Triple t = random_pair(g);
    Composite c = compose_traced(t.G, t.F);
    EXPECT_TRUE(c.trace.valid(t.G, t.F));
    EXPECT_EQ(c.poly, compose_direct(t.G, t.F));
  }
}

TEST(Composition, PowersOfOnePointPolynomials) {
  // (X^2) after (X^3) has one shape and six positions.
  Polynomial sq = from_map(FinMap::to_point(FinSet{"l", "r"}));
  Polynomial cube = from_map(FinMap::to_point(FinSet{"0", "1", "2"}));
  Polynomial c = compose(sq, cube);
  EXPECT_EQ(c.shapes().size(), 1u);
  EXPECT_EQ(c.positions().size(), 6u);
}

TEST(Composition, ExtensionIsoIsNaturalBijection) {
  Gen g(14);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Triple t = random_pair(g);
    const Polynomial gf = compose(t.G, t.F);
    for (int fam = 0; fam < 3; ++fam) {
      FinFamily x = g.family(t.I, "x", 2);
      ExtensionIso iso = extension_composition_iso(t.G, t.F, gf, x);
      for (std::size_t k = 0; k < t.K.size(); ++k) {
        EXPECT_TRUE(iso.forward.component(k).bijective());
        EXPECT_EQ(compose(iso.backward.component(k), iso.forward.component(k)),
                  FinMap::identity(iso.forward.src().fibre(k)));
      }
      FinFamily y = g.family(t.I, "y", 2);
      auto hs = enumerate_family_maps(x, y);
      if (hs.empty()) continue;
      const FamilyMap& h = hs[g.below(hs.size())];
      ExtensionIso iso_y = extension_composition_iso(t.G, t.F, gf, y);
      EXPECT_EQ(compose(iso_y.forward, extend(gf, h)), compose(extend(t.G, extend(t.F, h)), iso.forward));
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Composition, IdentityExtensionIso) {
  Gen g(15);
  FinSet I = g.set("i", 1, 3);
  FinFamily x = g.family(I, "x", 3);
  FamilyMap iso = identity_extension_iso(x);
  for (const auto& c : iso.components()) EXPECT_TRUE(c.bijective());
}

TEST(Composition, MismatchedEndpointsFail) {
  FinSet I{"i"}, J{"j"};
  Polynomial F = identity_poly(I);
  Polynomial G = identity_poly(J);
  try {
    (void)compose(G, F);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape);
  }
}

TEST(SliceReduction, RoundTripsWithNonEmptySource) {
  Gen g(16);
  for (int trial = 0; trial < 60; ++trial) {
    FinSet I = g.set("i", 1, 3), J = g.set("j", 0, 3);
    Polynomial F = g.poly(I, J, "F", 3, 2);
    SlicedPolynomial s = slice_reduce(F);
    EXPECT_EQ(s.base.size(), I.size() * J.size());
    EXPECT_EQ(unslice(s), F);
  }
}

TEST(SliceReduction, EmptySourceForgetsShapes) {
  FinSet J{"j"};
  Polynomial F = linear_poly(FinMap(FinSet{}, FinSet{}, {}), FinMap(FinSet{}, J, {}));
  Polynomial G(FinMap(FinSet{}, FinSet{}, {}), FinMap(FinSet{}, FinSet{"a"}, {}),
               FinMap::to_point(FinSet{"a"}, J));
  EXPECT_FALSE(F == G);
  EXPECT_EQ(slice_reduce(F), slice_reduce(G));
  EXPECT_THROW(unslice(slice_reduce(G)), Error);
}
