#pragma once

// Polynomial pseudomonads and pseudoalgebras from a universe, with the
// pasting equations checked as equalities of concrete vertex maps.
//
// A pasting equation is given by a start cell and two paths of adjustments.
// Consecutive steps are joined by bridges: vertex comparisons witnessing
// that the target of one step and the source of the next are the same
// 2-cell (equal shape maps, a leg-preserving bijection of vertices). A
// missing bridge fails the equation; otherwise the two composite vertex maps
// are compared.

#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/coherence.hpp"
#include "polyverse/lift.hpp"
#include "polyverse/universe.hpp"

namespace polyverse {

struct PasteStep {
  std::string name;
  Adjustment adj;
};

namespace detail {

inline Adjustment run_path(const PolyMorphism& start, const std::vector<PasteStep>& steps) {
  Adjustment acc = Adjustment::identity(start);
  for (const auto& s : steps) {
    auto bridge = vertex_comparison(acc.dst(), s.adj.src());
    require(bridge.has_value(), ErrorKind::triangle, "no bridge before " + s.name);
    acc = adj_vcomp(s.adj, adj_vcomp(*bridge, acc));
  }
  return acc;
}

}  // namespace detail

inline LawCheck check_pasting(const std::string& law, const PolyMorphism& start, const std::vector<PasteStep>& one,
                              const std::vector<PasteStep>& two) {
  LawCheck out{law, false, ""};
  try {
    const Adjustment a = detail::run_path(start, one);
    const Adjustment b = detail::run_path(start, two);
    auto bridge = vertex_comparison(b.dst(), a.dst());
    if (!bridge) {
      out.detail = "the two paths end at different cells";
      return out;
    }
    const FinMap joined = compose(bridge->map(), b.map());
    if (!(joined == a.map())) {
      for (std::size_t k = 0; k < joined.dom().size(); ++k)
        if (joined.at(k) != a.map().at(k)) {
          out.detail = "composites differ at " + joined.dom()[k].str();
          return out;
        }
    }
    out.holds = true;
    out.detail = "equal on " + std::to_string(joined.dom().size()) + " vertex elements";
  } catch (const Error& e) {
    out.detail = e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pseudomonad

struct PolynomialPseudomonad {
  Polynomial p;
  PolyMorphism eta;         // i_1 => p
  PolyMorphism mu;          // p.p => p
  Adjustment assoc;         // mu o (mu.p)  =>  mu o (p.mu) o a
  Adjustment left_unit;     // mu o (eta.p) =>  l
  Adjustment right_unit;    // mu o (p.eta) =>  r
};

inline PolynomialPseudomonad pseudomonad_from(const Universe& u) {
  PolynomialPseudomonad m;
  m.p = u.poly();
  m.eta = unit_structure(u);
  m.mu = sigma_structure(u);
  const PolyMorphism id = PolyMorphism::identity(m.p);
  const PolyMorphism lhs = vcomp(m.mu, hcomp(m.mu, id));
  const PolyMorphism rhs = vcomp(m.mu, vcomp(hcomp(id, m.mu), associator(m.p, m.p, m.p)));
  m.assoc = unique_adjustment(lhs, rhs);
  m.left_unit = unique_adjustment(vcomp(m.mu, hcomp(m.eta, id)), left_unitor(m.p));
  m.right_unit = unique_adjustment(vcomp(m.mu, hcomp(id, m.eta)), right_unitor(m.p));
  return m;
}

/// Shapes where two parallel 2-cells disagree; empty means strictly equal
/// on shapes.
inline std::vector<Label> shape_disagreements(const PolyMorphism& a, const PolyMorphism& b) {
  std::vector<Label> out;
  for (std::size_t k = 0; k < a.shape_map().dom().size(); ++k)
    if (a.shape_map().at(k) != b.shape_map().at(k)) out.push_back(a.shape_map().dom()[k]);
  return out;
}

/// Two ways from ((p.p).p).p to p around the pentagon of multiplication
/// orders, two alpha steps against three.
inline LawCheck check_monad_associativity(const PolynomialPseudomonad& m) {
  const Polynomial& p = m.p;
  const Polynomial pp = compose(p, p);
  const PolyMorphism id = PolyMorphism::identity(p);
  const PolyMorphism idpp = PolyMorphism::identity(pp);
  const PolyMorphism& M = m.mu;
  const Adjustment& alpha = m.assoc;
  const PolyMorphism a_ppp = associator(p, p, p);
  const PolyMorphism a_pp_pp = associator(p, p, pp);
  const PolyMorphism a_p_pp_p = associator(p, pp, p);

  const PolyMorphism k1 = hcomp(hcomp(M, id), id);
  const PolyMorphism k2 = vcomp(hcomp(idpp, M), a_pp_pp);
  const PolyMorphism k3 = vcomp(hcomp(hcomp(id, M), id), hcomp(a_ppp, id));
  const PolyMorphism k4 = vcomp(a_p_pp_p, hcomp(a_ppp, id));
  const PolyMorphism start = vcomp(vcomp(M, hcomp(M, id)), k1);

  std::vector<PasteStep> one{{"alpha whiskered by (mu.p).p", adj_whisker_pre(alpha, k1)},
                             {"alpha whiskered by (pp).mu", adj_whisker_pre(alpha, k2)}};
  std::vector<PasteStep> two{
      {"mu whiskered alpha.p", adj_whisker_post(M, adj_hcomp(alpha, Adjustment::identity(id)))},
      {"alpha whiskered by (p.mu).p", adj_whisker_pre(alpha, k3)},
      {"mu whiskered p.alpha", adj_whisker_pre(adj_whisker_post(M, adj_hcomp(Adjustment::identity(id), alpha)), k4)}};
  return check_pasting("pseudomonad-associativity", start, one, two);
}

/// Two ways from mu o (mu.p) o ((p.eta).p) to mu o (r.p): rho.p directly,
/// or alpha followed by p.lambda and the triangle.
inline LawCheck check_monad_unit(const PolynomialPseudomonad& m) {
  const Polynomial& p = m.p;
  const Polynomial one_poly = identity_poly(p.source());
  const PolyMorphism id = PolyMorphism::identity(p);
  const PolyMorphism& M = m.mu;
  const PolyMorphism k = hcomp(hcomp(id, m.eta), id);
  const PolyMorphism start = vcomp(vcomp(M, hcomp(M, id)), k);
  std::vector<PasteStep> one{
      {"mu whiskered rho.p", adj_whisker_post(M, adj_hcomp(m.right_unit, Adjustment::identity(id)))}};
  std::vector<PasteStep> two{
      {"alpha whiskered by (p.eta).p", adj_whisker_pre(m.assoc, k)},
      {"mu whiskered p.lambda",
       adj_whisker_pre(adj_whisker_post(M, adj_hcomp(Adjustment::identity(id), m.left_unit)),
                       associator(p, one_poly, p))}};
  return check_pasting("pseudomonad-unit", start, one, two);
}

inline std::vector<LawCheck> check_pseudomonad(const PolynomialPseudomonad& m) {
  std::vector<LawCheck> out;
  for (const auto* a : {&m.assoc, &m.left_unit, &m.right_unit}) {
    LawCheck c{"adjustment-invertible", a->invertible(), ""};
    c.detail = std::to_string(a->map().dom().size()) + " vertex elements";
    out.push_back(c);
  }
  out.push_back(check_monad_associativity(m));
  out.push_back(check_monad_unit(m));
  return out;
}

/// True when the monad is strict: all three adjustments are identities up to
/// relabelling the vertex.
inline bool is_strict(const PolynomialPseudomonad& m) {
  return is_trivial(m.assoc) && is_trivial(m.left_unit) && is_trivial(m.right_unit);
}

// ---------------------------------------------------------------------------
// Pseudoalgebra over the lift, carried by p itself

struct PolynomialPseudoalgebra {
  PolynomialPseudomonad monad;
  FinMap carrier;           // f = p : El -> U
  PolyMorphism zeta;        // P(f) => f
  Adjustment sigma;         // zeta o P(zeta) => zeta o m_f
  Adjustment tau;           // zeta o h_f => id_f
};

inline PolynomialPseudoalgebra pseudoalgebra_from(const Universe& u) {
  PolynomialPseudoalgebra a;
  a.monad = pseudomonad_from(u);
  a.carrier = u.el;
  a.zeta = pi_structure(u);
  const FinMap& f = a.carrier;
  a.sigma = unique_adjustment(vcomp(a.zeta, lift_apply_square(u.el, a.zeta)),
                              vcomp(a.zeta, lift_mult(a.monad.mu, f)));
  a.tau = unique_adjustment(vcomp(a.zeta, lift_unit(a.monad.eta, f)), PolyMorphism::identity(from_map(f)));
  return a;
}

inline bool is_strict(const PolynomialPseudoalgebra& a) { return is_trivial(a.sigma) && is_trivial(a.tau); }

/// From PPP(f) to f: sigma twice, or P(sigma), sigma and the lifted
/// associativity.
inline LawCheck check_algebra_associativity(const PolynomialPseudoalgebra& a) {
  const FinMap& p = a.monad.p.projection();
  const FinMap& f = a.carrier;
  const FinMap pf = lift_apply(p, f);
  const PolyMorphism& z = a.zeta;
  const PolyMorphism pz = lift_apply_square(p, z);
  const PolyMorphism ppz = lift_apply_square(p, pz);
  const PolyMorphism mf = lift_mult(a.monad.mu, f);
  const PolyMorphism mpf = lift_mult(a.monad.mu, pf);
  const PolyMorphism pmf = lift_apply_square(p, mf);
  const Adjustment p_sigma = unique_adjustment(lift_apply_square(p, a.sigma.src()), lift_apply_square(p, a.sigma.dst()));
  const Adjustment lifted_assoc = unique_adjustment(vcomp(mf, pmf), vcomp(mf, mpf));
  const PolyMorphism start = vcomp(vcomp(z, pz), ppz);
  std::vector<PasteStep> one{{"sigma whiskered by PP(zeta)", adj_whisker_pre(a.sigma, ppz)},
                             {"sigma whiskered by m_Pf", adj_whisker_pre(a.sigma, mpf)}};
  std::vector<PasteStep> two{{"zeta whiskered P(sigma)", adj_whisker_post(z, p_sigma)},
                             {"sigma whiskered by P(m_f)", adj_whisker_pre(a.sigma, pmf)},
                             {"zeta whiskered lifted associativity", adj_whisker_post(z, lifted_assoc)}};
  return check_pasting("pseudoalgebra-associativity", start, one, two);
}

/// From zeta o P(zeta) o h_Pf to zeta: sigma and the lifted unit, or tau
/// after naturality of h.
inline LawCheck check_algebra_unit(const PolynomialPseudoalgebra& a) {
  const FinMap& p = a.monad.p.projection();
  const FinMap& f = a.carrier;
  const FinMap pf = lift_apply(p, f);
  const PolyMorphism& z = a.zeta;
  const PolyMorphism hpf = lift_unit(a.monad.eta, pf);
  const PolyMorphism mf = lift_mult(a.monad.mu, f);
  const Adjustment lifted_unit = unique_adjustment(vcomp(mf, hpf), PolyMorphism::identity(from_map(pf)));
  const PolyMorphism start = vcomp(vcomp(z, lift_apply_square(p, z)), hpf);
  std::vector<PasteStep> one{{"sigma whiskered by h_Pf", adj_whisker_pre(a.sigma, hpf)},
                             {"zeta whiskered lifted unit", adj_whisker_post(z, lifted_unit)}};
  std::vector<PasteStep> two{{"tau whiskered by zeta", adj_whisker_pre(a.tau, z)}};
  // Both paths end at zeta up to identities; compare them there.
  const PolyMorphism end_one = vcomp(z, PolyMorphism::identity(from_map(pf)));
  const PolyMorphism end_two = vcomp(PolyMorphism::identity(from_map(f)), z);
  LawCheck out = check_pasting("pseudoalgebra-unit", start, one, two);
  if (out.holds && !(same_up_to_vertex(end_one, z) && same_up_to_vertex(end_two, z))) {
    out.holds = false;
    out.detail = "identity composites are not zeta";
  }
  return out;
}

inline std::vector<LawCheck> check_pseudoalgebra(const PolynomialPseudoalgebra& a) {
  std::vector<LawCheck> out;
  for (const auto* x : {&a.sigma, &a.tau}) {
    LawCheck c{"adjustment-invertible", x->invertible(), ""};
    c.detail = std::to_string(x->map().dom().size()) + " vertex elements";
    out.push_back(c);
  }
  out.push_back(check_algebra_associativity(a));
  out.push_back(check_algebra_unit(a));
  return out;
}

}  // namespace polyverse
