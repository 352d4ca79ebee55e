#pragma once

// Seeded generators of valid-by-construction instances. The same seed gives
// the same sequence of instances.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/poly.hpp"
#include "polyverse/universe.hpp"

namespace polyverse {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (rng_() & 1U) != 0; }

  FinSet set(const std::string& prefix, std::size_t lo, std::size_t hi) {
    const std::size_t n = between(lo, hi);
    std::vector<Label> xs;
    for (std::size_t i = 0; i < n; ++i) xs.emplace_back(prefix + std::to_string(i));
    return FinSet(std::move(xs));
  }

  FinMap map(const FinSet& dom, const FinSet& cod) {
    std::vector<std::size_t> img(dom.size());
    for (auto& y : img) y = below(cod.size());
    return FinMap(dom, cod, std::move(img));
  }

  FinFamily family(const FinSet& index, const std::string& prefix, std::size_t hi) {
    return FinFamily::generate(index, [&](const Label& i) { return set(prefix + i.str() + "_", 0, hi); });
  }

  /// Positions are made by choosing an arity per shape. With `cover` every
  /// target element gets at least one shape, so composites are non-empty.
  Polynomial poly(const FinSet& src, const FinSet& tgt, const std::string& tag, std::size_t max_shapes,
                  std::size_t max_arity, bool cover = true) {
    const std::size_t lo = cover ? tgt.size() : 0;
    const std::size_t n = tgt.empty() ? 0 : between(lo, std::max(lo, max_shapes));
    std::vector<Label> as;
    std::vector<std::pair<Label, Label>> out;
    for (std::size_t k = 0; k < n; ++k) {
      Label a(tag + "a" + std::to_string(k));
      as.push_back(a);
      out.emplace_back(a, k < lo ? tgt[k] : tgt[below(tgt.size())]);
    }
    const FinSet shapes(as);
    std::vector<Label> bs;
    std::vector<std::pair<Label, Label>> proj;
    for (const auto& a : shapes) {
      const std::size_t k = src.empty() ? 0 : between(0, max_arity);
      for (std::size_t i = 0; i < k; ++i) {
        Label b(tag + "b" + a.str().substr(tag.size() + 1) + "_" + std::to_string(i));
        bs.push_back(b);
        proj.emplace_back(b, a);
      }
    }
    FinSet positions(std::move(bs));
    return Polynomial(map(positions, src), FinMap::from_pairs(positions, shapes, proj),
                      FinMap::from_pairs(shapes, tgt, out));
  }

  /// A cartesian morphism into G whose source is a pullback of G's projection.
  PolyMorphism cartesian_into(const Polynomial& G, const std::string& tag, std::size_t max_shapes) {
    std::vector<Label> as;
    std::vector<std::pair<Label, Label>> shape_map;
    std::vector<std::pair<Label, Label>> out;
    const std::size_t n = G.shapes().empty() ? 0 : between(0, max_shapes);
    for (std::size_t k = 0; k < n; ++k) {
      Label a(tag + "a" + std::to_string(k));
      const Label& c = G.shapes()[below(G.shapes().size())];
      as.push_back(a);
      shape_map.emplace_back(a, c);
      out.emplace_back(a, G.output()(c));
    }
    FinSet A(as);
    FinMap on_shapes = FinMap::from_pairs(A, G.shapes(), shape_map);
    std::vector<Label> bs;
    std::vector<std::pair<Label, Label>> proj, on_pos, in;
    for (const auto& a : A)
      for (const auto& e : G.projection().fibre(on_shapes(a))) {
        Label b(tag + "b" + a.str().substr(tag.size() + 1) + "_" + e.str());
        bs.push_back(b);
        proj.emplace_back(b, a);
        on_pos.emplace_back(b, e);
        in.emplace_back(b, G.input()(e));
      }
    FinSet B(bs);
    Polynomial F(FinMap::from_pairs(B, G.source(), in), FinMap::from_pairs(B, A, proj),
                 FinMap::from_pairs(A, G.target(), out));
    return cartesian_from_square(F, G, FinMap::from_pairs(B, G.positions(), on_pos), on_shapes);
  }

  /// Some morphism F => G with random choices, if one exists for the chosen shape map.
  std::optional<PolyMorphism> morphism(const Polynomial& F, const Polynomial& G) {
    std::vector<std::size_t> img;
    for (const auto& a : F.shapes()) {
      auto cs = G.output().fibre(F.output()(a));
      if (cs.empty()) return std::nullopt;
      img.push_back(G.shapes().index_of(cs[below(cs.size())]));
    }
    FinMap on_shapes(F.shapes(), G.shapes(), img);
    Pullback pb = pullback(on_shapes, G.projection());
    std::vector<std::size_t> back;
    for (const auto& d : pb.apex) {
      std::vector<std::size_t> options;
      for (const auto& b : F.projection().fibre(d[0]))
        if (F.input()(b) == G.input()(d[1])) options.push_back(F.positions().index_of(b));
      if (options.empty()) return std::nullopt;
      back.push_back(options[below(options.size())]);
    }
    return PolyMorphism(F, G, on_shapes, pb.right, FinMap(pb.apex, F.positions(), back));
  }

  /// A cartesian morphism F => G sending each shape to one with an equally
  /// large fibre, through random bijections; empty when some shape has no match.
  std::optional<PolyMorphism> cartesian_between(const Polynomial& F, const Polynomial& G) {
    std::vector<std::size_t> shapes;
    std::vector<std::pair<Label, Label>> positions;
    for (const auto& a : F.shapes()) {
      const auto bs = F.projection().fibre(a);
      std::vector<Label> cs;
      for (const auto& c : G.output().fibre(F.output()(a)))
        if (G.projection().fibre(c).size() == bs.size()) cs.push_back(c);
      if (cs.empty()) return std::nullopt;
      const Label c = cs[below(cs.size())];
      shapes.push_back(G.shapes().index_of(c));
      auto ds = G.projection().fibre(c);
      std::shuffle(ds.begin(), ds.end(), rng_);
      for (std::size_t k = 0; k < bs.size(); ++k) {
        if (F.input()(bs[k]) != G.input()(ds[k])) return std::nullopt;
        positions.emplace_back(bs[k], ds[k]);
      }
    }
    return cartesian_from_square(F, G, FinMap::from_pairs(F.positions(), G.positions(), positions),
                                 FinMap(F.shapes(), G.shapes(), shapes));
  }

  /// A universe closed under Sigma and Pi with random structure choices.
  Universe universe() { return random_universe(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace polyverse
