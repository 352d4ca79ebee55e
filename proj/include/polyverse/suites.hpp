#pragma once

// Seeded verification suites. Each instance is drawn from one generator
// seeded with the configured seed, so reports depend only on the config.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/coherence.hpp"
#include "polyverse/generate.hpp"
#include "polyverse/internal.hpp"
#include "polyverse/poly.hpp"
#include "polyverse/pseudomonad.hpp"
#include "polyverse/report.hpp"
#include "polyverse/type_isos.hpp"
#include "polyverse/universe.hpp"

namespace polyverse {

/// A universe given to the universe suites instead of generated ones.
struct NamedUniverse {
  std::string name;
  Universe universe;
};

namespace suites {

inline constexpr std::size_t max_tries = 1000;

inline std::string sizes(const Polynomial& p) {
  return "|I|=" + std::to_string(p.source().size()) + " |B|=" + std::to_string(p.positions().size()) +
         " |A|=" + std::to_string(p.shapes().size()) + " |J|=" + std::to_string(p.target().size());
}

/// A random polynomial I -> J with at most `max` shapes and positions.
inline Polynomial small_poly(Gen& g, const FinSet& I, const FinSet& J, const std::string& tag, std::size_t max,
                             std::size_t max_arity = 2) {
  for (std::size_t t = 0; t < max_tries; ++t) {
    Polynomial p = g.poly(I, J, tag, std::max<std::size_t>(max, J.size()), max_arity);
    if (p.positions().size() <= max) return p;
  }
  fail(ErrorKind::invalid, "no small polynomial found");
}

inline FinSet small_set(Gen& g, const std::string& prefix, std::size_t max) {
  return g.set(prefix, 1, std::min<std::size_t>(2, std::max<std::size_t>(1, max)));
}

inline LawCheck same_cell(const std::string& law, const PolyMorphism& a, const PolyMorphism& b) {
  LawCheck c{law, same_up_to_vertex(a, b), ""};
  c.detail = c.holds ? "equal up to vertex on " + std::to_string(a.vertex().size()) + " elements"
                     : "cells differ";
  return c;
}

inline FinFamily nonempty_family(Gen& g, const FinSet& index, const std::string& prefix, std::size_t hi) {
  return FinFamily::generate(index, [&](const Label& i) { return g.set(prefix + i.str() + "_", 1, hi); });
}

inline FamilyMap random_family_map(Gen& g, const FinFamily& x, const FinFamily& y) {
  std::vector<FinMap> comps;
  for (std::size_t i = 0; i < x.index().size(); ++i) comps.push_back(g.map(x.fibre(i), y.fibre(i)));
  return FamilyMap(x, y, std::move(comps));
}

}  // namespace suites

// ---------------------------------------------------------------------------

/// P_{G.F}(X) ~ P_G(P_F(X)): round trip on every fibre for three families
/// and naturality along two maps per family.
inline Report extension_composition_suite(const SuiteConfig& cfg) {
  Gen g(cfg.seed);
  return run_instances("extension-composition", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    const FinSet I = suites::small_set(g, "i", cfg.max_size);
    const FinSet J = suites::small_set(g, "j", cfg.max_size);
    const FinSet K = suites::small_set(g, "k", cfg.max_size);
    const Polynomial F = suites::small_poly(g, I, J, "F", cfg.max_size);
    const Polynomial G = suites::small_poly(g, J, K, "G", cfg.max_size);
    log.describe("F " + suites::sizes(F) + "; G " + suites::sizes(G));
    const Polynomial GF = compose(G, F);
    for (int k = 0; k < 3; ++k) {
      const FinFamily x = g.family(I, "x" + std::to_string(k) + "_", 2);
      const ExtensionIso iso = extension_composition_iso(G, F, GF, x);
      bool round = true;
      for (std::size_t z = 0; z < K.size(); ++z) {
        const FinMap& fw = iso.forward.component(z);
        const FinMap& bw = iso.backward.component(z);
        round = round && compose(bw, fw) == FinMap::identity(fw.dom()) && compose(fw, bw) == FinMap::identity(bw.dom());
      }
      log.check("extension.round-trip", round, std::to_string(iso.forward.src().total_size()) + " elements");
      for (int n = 0; n < 2; ++n) {
        const FinFamily y = suites::nonempty_family(g, I, "y" + std::to_string(k) + std::to_string(n) + "_", 2);
        const FamilyMap h = suites::random_family_map(g, x, y);
        const ExtensionIso iso_y = extension_composition_iso(G, F, GF, y);
        const bool nat = compose(iso_y.forward, extend(GF, h)) == compose(extend(G, extend(F, h)), iso.forward);
        log.check("extension.naturality", nat, std::to_string(extend(GF, h).src().total_size()) + " elements");
      }
    }
  });
}

/// Exhaustive search over all vertex maps finds exactly the closed-form
/// adjustment into a cartesian morphism.
inline Report unique_adjustment_suite(const SuiteConfig& cfg, std::size_t max_vertex = 4) {
  Gen g(cfg.seed);
  return run_instances("unique-adjustment", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    for (std::size_t t = 0; t < suites::max_tries; ++t) {
      const Polynomial G = g.poly(suites::small_set(g, "i", cfg.max_size), suites::small_set(g, "j", cfg.max_size),
                                  "G", cfg.max_size, 2);
      const PolyMorphism psi = g.cartesian_into(G, "F", cfg.max_size);
      auto phi = g.morphism(psi.src(), G);
      if (!phi || phi->vertex().size() > max_vertex || phi->vertex().empty()) continue;
      log.describe("|D_phi|=" + std::to_string(phi->vertex().size()) + " |D_psi|=" + std::to_string(psi.vertex().size()));
      const auto all = enumerate_adjustments(*phi, psi);
      log.check("adjustment.exactly-one", all.size() == 1, std::to_string(all.size()) + " found");
      const Adjustment closed = unique_adjustment(*phi, psi);
      log.check("adjustment.closed-form", all.size() == 1 && all[0] == closed, closed.map().dom().size() == 0 ? "empty" : "psi2^-1 . phi2");
      log.check("adjustment.count", count_adjustments(*phi, psi) == all.size(),
                std::to_string(count_adjustments(*phi, psi)) + " by counting");
      return;
    }
    fail(ErrorKind::invalid, "no parallel pair found");
  });
}

/// Pentagon, triangle and local codiscreteness on chains of polynomials 1 -> 1.
inline Report coherence_suite(const SuiteConfig& cfg) {
  Gen g(cfg.seed);
  const FinSet one = FinSet::singleton();
  return run_instances("coherence", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    std::vector<Polynomial> ps;
    std::string d;
    for (int k = 0; k < 4; ++k) {
      ps.push_back(suites::small_poly(g, one, one, "P" + std::to_string(k), cfg.max_size));
      d += (k ? "; " : "") + suites::sizes(ps.back());
    }
    log.describe(d);
    log.check(check_pentagon(ps[0], ps[1], ps[2], ps[3]));
    log.check(check_triangle(ps[0], ps[1]));
    auto [a, b] = pentagon_sides(ps[0], ps[1], ps[2], ps[3]);
    log.check("codiscrete.pentagon", check_codiscrete(a, b));
    auto [c, e] = triangle_sides(ps[0], ps[1]);
    log.check("codiscrete.triangle", check_codiscrete(c, e));
    log.check("associator.invertible", is_invertible_cell(associator(ps[0], ps[1], ps[2])));
  });
}

/// Strict laws of vertical and horizontal composition of cartesian 2-cells,
/// up to vertex relabelling, plus naturality of the associator.
inline Report bicategory_laws_suite(const SuiteConfig& cfg) {
  Gen g(cfg.seed);
  return run_instances("bicategory-laws", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    const FinSet I = suites::small_set(g, "i", cfg.max_size);
    const FinSet J = suites::small_set(g, "j", cfg.max_size);
    const FinSet K = suites::small_set(g, "k", cfg.max_size);
    const FinSet L = suites::small_set(g, "l", cfg.max_size);
    const Polynomial F = suites::small_poly(g, I, J, "F", cfg.max_size);
    const Polynomial G = suites::small_poly(g, J, K, "G", cfg.max_size);
    const Polynomial H = suites::small_poly(g, K, L, "H", cfg.max_size);
    log.describe("F " + suites::sizes(F) + "; G " + suites::sizes(G) + "; H " + suites::sizes(H));
    const PolyMorphism phi = g.cartesian_into(F, "F1", 2);
    const PolyMorphism phi2 = g.cartesian_into(phi.src(), "F2", 2);
    const PolyMorphism phi3 = g.cartesian_into(phi2.src(), "F3", 2);
    const PolyMorphism psi = g.cartesian_into(G, "G1", 2);
    const PolyMorphism psi2 = g.cartesian_into(psi.src(), "G2", 2);
    const PolyMorphism chi = g.cartesian_into(H, "H1", 2);
    log.check(suites::same_cell("vcomp.associativity", vcomp(vcomp(phi, phi2), phi3), vcomp(phi, vcomp(phi2, phi3))));
    log.check(suites::same_cell("vcomp.left-identity", vcomp(PolyMorphism::identity(F), phi), phi));
    log.check(suites::same_cell("vcomp.right-identity", vcomp(phi, PolyMorphism::identity(phi.src())), phi));
    log.check(suites::same_cell("hcomp.identity", hcomp(PolyMorphism::identity(G), PolyMorphism::identity(F)),
                                PolyMorphism::identity(compose(G, F))));
    log.check(suites::same_cell("hcomp.interchange", hcomp(vcomp(psi, psi2), vcomp(phi, phi2)),
                                vcomp(hcomp(psi, phi), hcomp(psi2, phi2))));
    log.check(suites::same_cell("associator.naturality",
                                vcomp(associator(F, G, H), hcomp(hcomp(chi, psi), phi)),
                                vcomp(hcomp(chi, hcomp(psi, phi)), associator(phi.src(), psi.src(), chi.src()))));
    log.check("associator.invertible", is_invertible_cell(associator(F, G, H)));
    log.check("unitors.invertible", is_invertible_cell(left_unitor(F)) && is_invertible_cell(right_unitor(F)));
  });
}

/// Internal full subcategories, internal functors of cartesian morphisms and
/// the equivalence between adjustments and internal transformations.
inline Report internal_equiv_suite(const SuiteConfig& cfg, std::size_t max_positions = 4) {
  Gen g(cfg.seed);
  const FinSet one = FinSet::singleton();
  return run_instances("internal-equiv", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    for (std::size_t t = 0; t < suites::max_tries; ++t) {
      const Polynomial G = g.poly(one, one, "G", cfg.max_size, 2);
      if (G.positions().size() > max_positions) continue;
      const PolyMorphism phi = g.cartesian_into(G, "F", 2);
      if (phi.src().positions().size() > max_positions) continue;
      auto psi = g.cartesian_between(phi.src(), G);
      if (!psi) continue;
      log.describe("|B_G|=" + std::to_string(G.positions().size()) + " |B_F|=" +
                   std::to_string(phi.src().positions().size()));
      for (const auto& c : check_category_laws(internal_full_subcat(G.projection()))) log.check("category." + c.law, c);
      const InternalFunctor A = internal_functor(phi);
      for (const auto& c : check_functor_laws(A)) log.check("functor." + c.law, c);
      log.check("functor.full-and-faithful", full_and_faithful(A));
      log.check("functor.square-pullback", functor_square_is_pullback(A));
      const PolyMorphism chi = g.cartesian_into(phi.src(), "E", 2);
      log.check("functor.composite", internal_functor(vcomp(phi, chi)) == compose(A, internal_functor(chi)));
      const EquivalenceCounts e = check_four_conditions(phi, *psi);
      log.check("equivalence.same-sets", e.same_sets,
                "candidates=" + std::to_string(e.candidates) + " natural=" + std::to_string(e.natural) +
                    " commuting=" + std::to_string(e.commuting) + " conjugating=" + std::to_string(e.conjugating) +
                    " over-positions=" + std::to_string(e.over_positions));
      log.check("equivalence.unique", e.natural == 1 && e.over_positions == 1);
      const Adjustment a = unique_adjustment(phi, *psi);
      log.check("equivalence.round-trip", nat_to_adjustment(phi, *psi, adjustment_to_nat(a)) == a);
      return;
    }
    fail(ErrorKind::invalid, "no parallel pair found");
  });
}

/// Restriction to fibres over I x J and its inverse on polynomials, 2-cells
/// and adjustments.
inline Report slice_reduction_suite(const SuiteConfig& cfg) {
  Gen g(cfg.seed);
  return run_instances("slice-reduction", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    const FinSet I = g.set("i", 1, std::max<std::size_t>(1, cfg.max_size));
    const FinSet J = g.set("j", 1, std::max<std::size_t>(1, cfg.max_size));
    const Polynomial F = g.poly(I, J, "F", cfg.max_size, 2);
    log.describe(suites::sizes(F));
    const SlicedPolynomial S = slice_reduce(F);
    log.check("slice.poly-round-trip", unslice(S) == F && slice_reduce(unslice(S)) == S);
    const PolyMorphism psi = g.cartesian_into(F, "E", cfg.max_size);
    std::vector<PolyMorphism> cells{psi};
    if (auto phi = g.morphism(psi.src(), F)) cells.push_back(*phi);
    for (const auto& m : cells) {
      const SlicedMorphism sm = slice_reduce(m);
      const PolyMorphism back = unslice(sm);
      log.check("slice.cell-round-trip", back == m);
      bool all = true;
      for (const auto& f : sm.fibres) all = all && f.cartesian();
      log.check("slice.cartesian", all == m.cartesian() && back.cartesian() == m.cartesian(),
                m.cartesian() ? "cartesian" : "not cartesian");
    }
    if (cells.size() == 2) {
      const Adjustment a = unique_adjustment(cells[1], psi);
      log.check("slice.adjustment-round-trip",
                unslice(slice_reduce(cells[1]), slice_reduce(psi), slice_reduce(a)) == a);
    }
  });
}

/// Functoriality and pullback preservation of the lift, and the unit and
/// multiplication squares.
inline Report lift_suite(const SuiteConfig& cfg) {
  Gen g(cfg.seed);
  return run_instances("lift", cfg, cfg.count, [&](std::size_t, InstanceLog& log) {
    const FinMap p = g.map(g.set("y", 0, cfg.max_size), g.set("x", 1, 2));
    const FinMap f = g.map(g.set("b", 0, cfg.max_size), g.set("a", 1, 2));
    log.describe("|Y|=" + std::to_string(p.dom().size()) + " |X|=" + std::to_string(p.cod().size()) +
                 " |B|=" + std::to_string(f.dom().size()) + " |A|=" + std::to_string(f.cod().size()));
    const PolyMorphism phi = g.cartesian_into(from_map(f), "s", 2);
    const PolyMorphism chi = g.cartesian_into(phi.src(), "r", 2);
    const FinMap pf = lift_apply(p, f);
    log.check("lift.identity", lift_apply(p, FinMap::identity(f.dom())) == FinMap::identity(pf.dom()) &&
                                   same_up_to_vertex(lift_apply_square(p, PolyMorphism::identity(from_map(f))),
                                                     PolyMorphism::identity(from_map(pf))));
    log.guarded("lift.pullback", [&] {
      const PolyMorphism l = lift_apply_square(p, phi);
      log.check("lift.pullback", is_pullback_square(l.src().projection(), l.position_map(), l.shape_map(),
                                                    l.dst().projection()),
                std::to_string(l.src().positions().size()) + " elements on top");
    });
    log.check(suites::same_cell("lift.composite", lift_apply_square(p, vcomp(phi, chi)),
                                vcomp(lift_apply_square(p, phi), lift_apply_square(p, chi))));
    const Universe u = g.universe();
    const PolyMorphism eta = unit_structure(u);
    const PolyMorphism mu = sigma_structure(u);
    log.guarded("lift.unit-pullback", [&] { log.check("lift.unit-pullback", lift_unit(eta, f).cartesian()); });
    log.guarded("lift.mult-pullback", [&] { log.check("lift.mult-pullback", lift_mult(mu, f).cartesian()); });
    // h and m are natural along the square phi.
    const PolyMorphism lphi = lift_apply_square(u.el, phi);
    log.check(suites::same_cell("lift.unit-naturality", vcomp(lift_unit(eta, f), phi),
                                vcomp(lphi, lift_unit(eta, phi.src().projection()))));
    log.check(suites::same_cell("lift.mult-naturality", vcomp(lift_mult(mu, f), lift_apply_square(u.el, lphi)),
                                vcomp(lphi, lift_mult(mu, phi.src().projection()))));
  });
}

// ---------------------------------------------------------------------------
// Universe suites

/// The given universes, or the two built-in ones followed by random ones up
/// to `count` in total.
inline std::vector<NamedUniverse> suite_universes(const SuiteConfig& cfg, const std::vector<NamedUniverse>& given) {
  if (!given.empty()) return given;
  std::vector<NamedUniverse> out{{"bool", mk_bool_universe()}, {"skewed", mk_skewed_universe()}};
  Gen g(cfg.seed);
  for (std::size_t k = out.size(); k < cfg.count; ++k) out.push_back({"random" + std::to_string(k), g.universe()});
  return out;
}

namespace suites {

inline std::string universe_descriptor(const NamedUniverse& n) {
  return n.name + " |U|=" + std::to_string(n.universe.codes().size()) +
         " |El|=" + std::to_string(n.universe.el.dom().size());
}

inline void universe_checks(InstanceLog& log, const Universe& u) {
  for (const auto& c : check_universe(u)) log.check("universe." + c.law, c);
}

}  // namespace suites

inline Report pseudomonad_suite(const SuiteConfig& cfg, const std::vector<NamedUniverse>& given = {}) {
  const auto us = suite_universes(cfg, given);
  return run_instances("pseudomonad", cfg, us.size(), [&](std::size_t i, InstanceLog& log) {
    const NamedUniverse& n = us[i];
    log.describe(suites::universe_descriptor(n));
    suites::universe_checks(log, n.universe);
    const PolynomialPseudomonad m = pseudomonad_from(n.universe);
    const char* names[] = {"pseudomonad.alpha-invertible", "pseudomonad.lambda-invertible",
                           "pseudomonad.rho-invertible"};
    const auto checks = check_pseudomonad(m);
    for (std::size_t k = 0; k < checks.size(); ++k) log.check(k < 3 ? names[k] : checks[k].law, checks[k]);
    if (n.name == "bool") log.check("pseudomonad.strict", is_strict(m), "alpha, lambda, rho are identities");
    if (n.name == "skewed") {
      const auto bad = shape_disagreements(m.right_unit.src(), m.right_unit.dst());
      log.check("pseudomonad.right-unit-not-strict", !bad.empty() && !is_trivial(m.right_unit),
                bad.empty() ? "strict" : "differs at " + bad[0].str());
    }
  });
}

inline Report pseudoalgebra_suite(const SuiteConfig& cfg, const std::vector<NamedUniverse>& given = {}) {
  const auto us = suite_universes(cfg, given);
  return run_instances("pseudoalgebra", cfg, us.size(), [&](std::size_t i, InstanceLog& log) {
    const NamedUniverse& n = us[i];
    log.describe(suites::universe_descriptor(n));
    suites::universe_checks(log, n.universe);
    const PolynomialPseudoalgebra a = pseudoalgebra_from(n.universe);
    const char* names[] = {"pseudoalgebra.sigma-invertible", "pseudoalgebra.tau-invertible"};
    const auto checks = check_pseudoalgebra(a);
    for (std::size_t k = 0; k < checks.size(); ++k) log.check(k < 2 ? names[k] : checks[k].law, checks[k]);
    if (n.name == "bool") log.check("pseudoalgebra.strict", is_strict(a), "sigma, tau are identities");
    if (n.name == "skewed") log.check("pseudoalgebra.tau-not-strict", !is_trivial(a.tau));
  });
}

inline Report type_isos_suite(const SuiteConfig& cfg, const std::vector<NamedUniverse>& given = {}) {
  const auto us = suite_universes(cfg, given);
  return run_instances("type-isos", cfg, us.size(), [&](std::size_t i, InstanceLog& log) {
    const NamedUniverse& n = us[i];
    log.describe(suites::universe_descriptor(n));
    suites::universe_checks(log, n.universe);
    std::size_t choices = 0, strict = 0;
    for (const auto& r : verify_type_isos(n.universe)) {
      log.check("type-iso." + r.name, r.holds(),
                r.holds() ? "choices=" + std::to_string(r.choices) + " strict=" + std::to_string(r.strict)
                          : r.failure);
      choices += r.choices;
      strict += r.strict;
    }
    if (n.name == "bool") log.check("type-iso.all-strict", strict == choices, std::to_string(choices) + " choices");
    if (n.name == "skewed")
      log.check("type-iso.some-non-identity", strict < choices,
                std::to_string(choices - strict) + " of " + std::to_string(choices) + " non-identity");
  });
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bicategory-laws", "coherence",     "internal-equiv",
                                              "extension-composition", "pseudomonad", "pseudoalgebra",
                                              "type-isos",       "lift",          "unique-adjustment",
                                              "slice-reduction"};
  return names;
}

/// Runs a suite by name; the universe suites use `given` when non-empty.
inline Report run_suite(const std::string& name, const SuiteConfig& cfg, const std::vector<NamedUniverse>& given = {}) {
  if (name == "bicategory-laws") return bicategory_laws_suite(cfg);
  if (name == "coherence") return coherence_suite(cfg);
  if (name == "internal-equiv") return internal_equiv_suite(cfg);
  if (name == "extension-composition") return extension_composition_suite(cfg);
  if (name == "pseudomonad") return pseudomonad_suite(cfg, given);
  if (name == "pseudoalgebra") return pseudoalgebra_suite(cfg, given);
  if (name == "type-isos") return type_isos_suite(cfg, given);
  if (name == "lift") return lift_suite(cfg);
  if (name == "unique-adjustment") return unique_adjustment_suite(cfg);
  if (name == "slice-reduction") return slice_reduction_suite(cfg);
  fail(ErrorKind::invalid, "unknown suite '" + name + "'");
}

}  // namespace polyverse
