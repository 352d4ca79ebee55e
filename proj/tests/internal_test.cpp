#include <gtest/gtest.h>

#include <algorithm>
#include <optional>

#include "polyverse/internal.hpp"
#include "support.hpp"

using namespace polyverse;
using testgen::Gen;

namespace {

// A random cartesian morphism F => G between polynomials 1 -> 1: each shape
// goes to a shape with a fibre of the same size, via a random bijection.
std::optional<PolyMorphism> random_cartesian(Gen& g, const Polynomial& F, const Polynomial& G) {
  std::vector<std::size_t> shapes;
  std::vector<std::pair<Label, Label>> positions;
  for (const auto& a : F.shapes()) {
    const auto bs = F.projection().fibre(a);
    std::vector<Label> cs;
    for (const auto& c : G.shapes())
      if (G.projection().fibre(c).size() == bs.size()) cs.push_back(c);
    if (cs.empty()) return std::nullopt;
    const Label c = cs[g.below(cs.size())];
    shapes.push_back(G.shapes().index_of(c));
    auto ds = G.projection().fibre(c);
    std::shuffle(ds.begin(), ds.end(), g.engine());
    for (std::size_t k = 0; k < bs.size(); ++k) positions.emplace_back(bs[k], ds[k]);
  }
  return cartesian_from_square(F, G, FinMap::from_pairs(F.positions(), G.positions(), positions),
                               FinMap(F.shapes(), G.shapes(), shapes));
}

struct Pair {
  PolyMorphism phi, psi;
};

Pair random_parallel(Gen& g) {
  while (true) {
    Polynomial G = g.poly(FinSet::singleton(), FinSet::singleton(), "G", 3, 2);
    if (G.positions().size() > 4) continue;
    PolyMorphism phi = g.cartesian_into(G, "F", 2);
    if (phi.src().positions().size() > 4) continue;
    auto psi = random_cartesian(g, phi.src(), G);
    if (psi) return {phi, *psi};
  }
}

}  // namespace

TEST(InternalCategory, EmptyFibresGiveOneMorphismPerPair) {
  FinSet A{"x", "y", "z"};
  InternalCategory C = internal_full_subcat(FinMap(FinSet{}, A, {}));
  EXPECT_EQ(C.mor.size(), 9u);
  for (const auto& law : check_category_laws(C)) EXPECT_TRUE(law.holds) << law.law;
}

TEST(InternalCategory, SelfMapsOfATwoSet) {
  InternalCategory C = internal_full_subcat(FinMap::to_point(FinSet{"p", "q"}));
  ASSERT_EQ(C.mor.size(), 4u);
  // Composition agrees with composing the functions directly.
  for (const auto& g : C.mor)
    for (const auto& h : C.mor) {
      const Label gh = C.compose(g, h);
      for (const auto& x : {Label("p"), Label("q")})
        EXPECT_EQ(section_value(gh[1], x), section_value(g[1], section_value(h[1], x)));
    }
}

TEST(InternalCategory, LawsOnRandomMaps) {
  Gen g(41);
  for (int t = 0; t < 40; ++t) {
    FinSet A = g.set("a", 1, 3);
    FinSet B = g.set("b", 0, 5);
    FinMap f = g.map(B, A);
    bool small = true;
    for (const auto& a : A) small = small && f.fibre(a).size() <= 3;
    if (!small) continue;
    InternalCategory C = internal_full_subcat(f);
    std::size_t expected = 0;
    for (const auto& a : A)
      for (const auto& b : A) expected += testgen::count_functions(f.fibre(b).size(), f.fibre(a).size());
    EXPECT_EQ(C.mor.size(), expected);
    for (const auto& law : check_category_laws(C)) EXPECT_TRUE(law.holds) << law.law << " " << law.detail;
  }
}

TEST(InternalFunctor, IdentityCompositionAndFullness) {
  Gen g(5);
  for (int t = 0; t < 30; ++t) {
    Pair p = random_parallel(g);
    InternalFunctor id = internal_functor(PolyMorphism::identity(p.phi.src()));
    EXPECT_EQ(id.on_obj, FinMap::identity(id.src.obj));
    EXPECT_EQ(id.on_mor, FinMap::identity(id.src.mor));
    InternalFunctor F = internal_functor(p.phi);
    for (const auto& law : check_functor_laws(F)) EXPECT_TRUE(law.holds) << law.law;
    EXPECT_TRUE(full_and_faithful(F));
    EXPECT_TRUE(functor_square_is_pullback(F));
    // Composite with a further cartesian morphism.
    PolyMorphism chi = g.cartesian_into(p.phi.src(), "E", 2);
    EXPECT_EQ(internal_functor(vcomp(p.phi, chi)), compose(internal_functor(p.phi), internal_functor(chi)));
  }
}

TEST(InternalFunctor, NonCartesianRejected) {
  Polynomial two = from_map(FinMap::to_point(FinSet{"d1", "d2"}));
  Polynomial none = from_map(FinMap::to_point(FinSet{}));
  PolyMorphism phi(two, none, FinMap::identity(FinSet::singleton()), FinMap(FinSet{}, FinSet{}, {}),
                   FinMap(FinSet{}, two.positions(), {}));
  EXPECT_THROW(internal_functor(phi), Error);
}

TEST(InternalFunctor, GeneralEndpointsThroughSlices) {
  Gen g(42);
  for (int t = 0; t < 20; ++t) {
    Polynomial G = g.poly(g.set("i", 1, 2), g.set("j", 1, 2), "G", 3, 2);
    PolyMorphism phi = g.cartesian_into(G, "F", 3);
    auto fs = internal_functors(phi);
    EXPECT_EQ(fs.size(), G.source().size() * G.target().size());
    for (const auto& F : fs) EXPECT_TRUE(full_and_faithful(F));
  }
}

TEST(InternalNatTrans, AdjustmentsCorrespondToTransformations) {
  Gen g(43);
  for (int t = 0; t < 25; ++t) {
    Pair p = random_parallel(g);
    Adjustment a = unique_adjustment(p.phi, p.psi);
    InternalNatTrans n = adjustment_to_nat(a);
    EXPECT_EQ(nat_to_adjustment(p.phi, p.psi, n), a);
    auto all = enumerate_nat_trans(internal_functor(p.phi), internal_functor(p.psi));
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(all[0].components(), n.components());
    // Identity adjustment gives identity components.
    InternalNatTrans id = adjustment_to_nat(Adjustment::identity(p.phi));
    const InternalFunctor F = internal_functor(p.phi);
    EXPECT_EQ(id.components(), compose(F.dst.ident, F.on_obj));
  }
}

TEST(InternalNatTrans, FourConditionsSelectTheSameMaps) {
  Gen g(44);
  for (int t = 0; t < 25; ++t) {
    Pair p = random_parallel(g);
    EquivalenceCounts c = check_four_conditions(p.phi, p.psi);
    EXPECT_TRUE(c.same_sets);
    EXPECT_EQ(c.over_positions, 1u);
    EXPECT_EQ(c.natural, 1u);
    EXPECT_GE(c.candidates, 1u);
  }
}

TEST(InternalNatTrans, NonNaturalComponentsRejected) {
  Polynomial two = from_map(FinMap::to_point(FinSet{"p", "q"}));
  PolyMorphism id = PolyMorphism::identity(two);
  InternalFunctor F = internal_functor(id);
  // The swap at the single object is not natural against constant maps.
  const Label swap = tup(tup("*", "*"), make_section({"p", "q"}, {"q", "p"}));
  try {
    InternalNatTrans(F, F, FinMap::point(F.dst.mor, swap));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::naturality);
  }
}
