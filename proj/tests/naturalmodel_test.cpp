#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "polyverse/pseudomonad.hpp"
#include "polyverse/type_isos.hpp"
#include "support.hpp"

using namespace polyverse;
using testgen::Gen;

namespace {

std::size_t fibre_size(const Universe& u, const Label& code) { return u.el.fibre(code).size(); }

// Number of type families sum_A |U|^|El A|, counted from sizes only.
std::size_t family_count(const Universe& u) {
  std::size_t n = 0;
  for (const auto& a : u.codes()) n += testgen::count_functions(u.codes().size(), fibre_size(u, a));
  return n;
}

}  // namespace

TEST(Universe, BooleanTables) {
  const Universe u = mk_bool_universe();
  for (const auto& c : check_universe(u)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
  const Label empty = Label::tuple({});
  EXPECT_EQ(u.sigma.at(tup("code0", empty)), Label("code0"));
  EXPECT_EQ(u.pi.at(tup("code0", empty)), Label("code1"));
  for (const auto& b : {"code0", "code1"}) {
    const Label key = tup("code1", Label::tuple({tup("*", b)}));
    EXPECT_EQ(u.sigma.at(key), Label(b));
    EXPECT_EQ(u.pi.at(key), Label(b));
  }
}

TEST(Universe, FibreSizesMatchSumsAndProducts) {
  Gen g(61);
  for (int t = 0; t < 20; ++t) {
    const Universe u = g.universe();
    for (const auto& c : check_universe(u)) ASSERT_TRUE(c.holds) << c.law << " " << c.detail;
    for (const auto& key : type_families(u.el)) {
      std::size_t sum = 0, prod = 1;
      for (const auto& a : section_keys(key[1])) {
        sum += fibre_size(u, section_value(key[1], a));
        prod *= fibre_size(u, section_value(key[1], a));
      }
      EXPECT_EQ(fibre_size(u, u.sigma.at(key)), sum);
      EXPECT_EQ(fibre_size(u, u.pi.at(key)), prod);
    }
  }
}

TEST(Universe, CorruptedPairingRejected) {
  Universe u = mk_skewed_universe();
  // Point the pairing at the wrong singleton.
  const Label key = tup("code1a", Label::tuple({tup("a", "code1a")}));
  u.pair[key] = FinMap(u.pair.at(key).dom(), FinSet{"b"}, {0});
  EXPECT_FALSE(check_sigma(u).holds);
  try {
    sigma_structure(u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pullback);
  }
  Universe v = mk_bool_universe();
  v.unit_code = Label("code0");
  EXPECT_FALSE(check_unit(v).holds);
  EXPECT_THROW(unit_structure(v), Error);
}

TEST(StructureCells, UnitPicksTheUnitCode) {
  const PolyMorphism b = unit_structure(mk_bool_universe());
  EXPECT_EQ(b.shape_map().at(0), Label("code1"));
  EXPECT_EQ(b.position_map().at(0), Label("*"));
  const PolyMorphism s = unit_structure(mk_skewed_universe());
  EXPECT_EQ(s.shape_map().at(0), Label("code1b"));
  EXPECT_TRUE(s.cartesian());
}

TEST(StructureCells, SigmaOnTheChosenComposite) {
  const Universe u = mk_bool_universe();
  const PolyMorphism mu = sigma_structure(u);
  EXPECT_TRUE(mu.cartesian());
  EXPECT_EQ(mu.src(), compose(u.poly(), u.poly()));
  EXPECT_EQ(mu.shape_map().dom().size(), family_count(u));
  std::vector<Label> values(mu.shape_map().dom().size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = mu.shape_map().at(k);
  std::sort(values.begin(), values.end());
  EXPECT_EQ(values, (std::vector<Label>{"code0", "code0", "code1"}));

  const Universe s = mk_skewed_universe();
  const PolyMorphism ms = sigma_structure(s);
  for (std::size_t k = 0; k < ms.shape_map().dom().size(); ++k)
    EXPECT_NE(ms.shape_map().at(k), Label("code1b"));
}

TEST(StructureCells, PiOnTheLiftedPolynomial) {
  Gen g(62);
  for (int t = 0; t < 10; ++t) {
    const Universe u = t == 0 ? mk_bool_universe() : g.universe();
    const PolyMorphism zeta = pi_structure(u);
    EXPECT_TRUE(zeta.cartesian());
    EXPECT_EQ(zeta.src().shapes().size(), family_count(u));
    for (std::size_t k = 0; k < zeta.shape_map().dom().size(); ++k) {
      const Label& key = zeta.shape_map().dom()[k];
      if (section_keys(key[1]).empty()) EXPECT_EQ(fibre_size(u, zeta.shape_map().at(k)), 1u);
    }
  }
}

TEST(Lift, DomainSizeAndFunctoriality) {
  Gen g(63);
  for (int t = 0; t < 30; ++t) {
    const FinMap p = g.map(g.set("y", 0, 3), g.set("x", 1, 2));
    const FinMap f = g.map(g.set("b", 0, 3), g.set("a", 1, 2));
    const FinMap pf = lift_apply(p, f);
    std::size_t expected = 0;
    for (const auto& x : p.cod())
      expected += testgen::count_functions(f.dom().size(), p.fibre(x).size());
    EXPECT_EQ(pf.dom().size(), expected);
    EXPECT_EQ(lift_apply(p, FinMap::identity(f.dom())), FinMap::identity(pf.dom()));

    // A square into f, then another into its source.
    const PolyMorphism phi = g.cartesian_into(from_map(f), "s", 2);
    const PolyMorphism chi = g.cartesian_into(phi.src(), "r", 2);
    const PolyMorphism lphi = lift_apply_square(p, phi);
    EXPECT_TRUE(is_pullback_square(lphi.src().projection(), lphi.position_map(), lphi.shape_map(),
                                   lphi.dst().projection()));
    EXPECT_TRUE(same_up_to_vertex(lift_apply_square(p, vcomp(phi, chi)), vcomp(lphi, lift_apply_square(p, chi))));
    EXPECT_TRUE(same_up_to_vertex(lift_apply_square(p, PolyMorphism::identity(from_map(f))),
                                  PolyMorphism::identity(from_map(pf))));
  }
}

TEST(Lift, UnitAndMultiplicationSquares) {
  Gen g(64);
  for (int t = 0; t < 15; ++t) {
    const Universe u = t == 0 ? mk_skewed_universe() : g.universe();
    const PolyMorphism eta = unit_structure(u);
    const PolyMorphism mu = sigma_structure(u);
    const FinMap f = g.map(g.set("b", 0, 2), g.set("a", 1, 2));
    const PolyMorphism h = lift_unit(eta, f);
    const PolyMorphism m = lift_mult(mu, f);
    EXPECT_TRUE(h.cartesian());
    EXPECT_TRUE(m.cartesian());
    // On f = id the components reduce to eta and mu on shapes.
    const FinMap one = FinMap::identity(FinSet::singleton());
    const PolyMorphism m1 = lift_mult(mu, one);
    for (std::size_t k = 0; k < m1.shape_map().dom().size(); ++k) {
      const Label& z = m1.shape_map().dom()[k];
      std::vector<Label> inner;
      for (const auto& kv : z[1].items()) inner.push_back(tup(kv[0], kv[1][0]));
      EXPECT_EQ(m1.shape_map().at(k)[0], mu.shape_map()(tup(z[0], Label::tuple(inner))));
    }
    EXPECT_EQ(lift_unit(eta, one).shape_map().at(0)[0], eta.shape_map().at(0));
  }
}

TEST(Pseudomonad, BooleanIsStrict) {
  const PolynomialPseudomonad m = pseudomonad_from(mk_bool_universe());
  EXPECT_TRUE(is_strict(m));
  for (const auto& c : check_pseudomonad(m)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
  const PolynomialPseudoalgebra a = pseudoalgebra_from(mk_bool_universe());
  EXPECT_TRUE(is_strict(a));
  for (const auto& c : check_pseudoalgebra(a)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
}

TEST(Pseudomonad, SkewedFailsStrictRightUnit) {
  const Universe u = mk_skewed_universe();
  const PolynomialPseudomonad m = pseudomonad_from(u);
  EXPECT_FALSE(is_trivial(m.right_unit));
  EXPECT_TRUE(m.right_unit.invertible());
  const auto bad = shape_disagreements(m.right_unit.src(), m.right_unit.dst());
  ASSERT_FALSE(bad.empty());
  bool saw_code1b = false;
  for (const auto& s : bad) {
    const std::size_t k = m.right_unit.src().shape_map().dom().index_of(s);
    if (m.right_unit.dst().shape_map().at(k) == Label("code1b")) {
      saw_code1b = true;
      EXPECT_EQ(m.right_unit.src().shape_map().at(k), Label("code1a"));
    }
  }
  EXPECT_TRUE(saw_code1b);
  for (const auto& c : check_pseudomonad(m)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
  const PolynomialPseudoalgebra a = pseudoalgebra_from(u);
  EXPECT_FALSE(is_trivial(a.tau));
  for (const auto& c : check_pseudoalgebra(a)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
}

TEST(Pseudomonad, RandomUniversesSatisfyPastingEquations) {
  Gen g(65);
  for (int t = 0; t < 10; ++t) {
    const Universe u = g.universe();
    const PolynomialPseudomonad m = pseudomonad_from(u);
    for (const auto& c : check_pseudomonad(m)) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
    for (const auto& c : check_pseudoalgebra(pseudoalgebra_from(u))) EXPECT_TRUE(c.holds) << c.law << " " << c.detail;
  }
}

TEST(Pseudomonad, PastingDetectsMismatchedPaths) {
  const PolynomialPseudomonad m = pseudomonad_from(mk_skewed_universe());
  const PolyMorphism start = m.right_unit.src();
  // One side stops at the source, the other moves to the right unitor.
  LawCheck c = check_pasting("mismatch", start, {}, {{"rho", m.right_unit}});
  EXPECT_FALSE(c.holds);
  // A step whose source is not where the path stands.
  LawCheck d = check_pasting("no-bridge", start, {{"lambda", m.left_unit}}, {});
  EXPECT_FALSE(d.holds);
}

TEST(TypeIsos, BooleanRowsAreStrict) {
  const auto rows = verify_type_isos(mk_bool_universe());
  // Choice counts by hand: A, B, C for the three-code rows; A or B(*) otherwise.
  const std::map<std::string, std::size_t> expected{
      {"sigma-assoc", 4}, {"sigma-right-unit", 2}, {"sigma-left-unit", 2}, {"pi-curry", 4}, {"pi-left-unit", 2}};
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.choices, expected.at(r.name)) << r.name;
    EXPECT_TRUE(r.holds()) << r.name << " " << r.failure;
    EXPECT_EQ(r.strict, r.choices) << r.name;
  }
}

TEST(TypeIsos, SkewedHasNonIdentityBijections) {
  const auto rows = verify_type_isos(mk_skewed_universe());
  std::size_t non_strict = 0;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.holds()) << r.name << " " << r.failure;
    non_strict += r.choices - r.strict;
  }
  EXPECT_GT(non_strict, 0u);
}

TEST(TypeIsos, RandomUniverses) {
  Gen g(66);
  for (int t = 0; t < 10; ++t)
    for (const auto& r : verify_type_isos(g.universe())) EXPECT_TRUE(r.holds()) << r.name << " " << r.failure;
}
