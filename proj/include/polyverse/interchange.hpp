#pragma once

// JSON records for polynomials, morphisms and universes.
//
//   Polynomial  := {"I", "B", "A", "J": FinSet, "s", "f", "t": assignments}
//   PolyMorphism := {"src", "dst": Polynomial, "D": FinSet,
//                    "shape_map", "dst_leg", "src_leg": assignments}
//   Universe    := {"U": FinSet, "El": [[code, FinSet], ...], "unit": [code, element],
//                   "sigma": [[[A, B], code, pairing], ...], "pi": [[[A, B], code, lambda], ...]}
//
// Structural problems raise parse errors; a well-formed record that breaks a
// law raises the law's own error kind.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyverse/cell.hpp"
#include "polyverse/json_io.hpp"
#include "polyverse/poly.hpp"
#include "polyverse/universe.hpp"

namespace polyverse::io {

inline json to_json(const Polynomial& p) {
  json j = json::object();
  j["I"] = to_json(p.source());
  j["B"] = to_json(p.positions());
  j["A"] = to_json(p.shapes());
  j["J"] = to_json(p.target());
  j["s"] = assignments(p.input());
  j["f"] = assignments(p.projection());
  j["t"] = assignments(p.output());
  return j;
}

inline Polynomial poly_from_json(const json& j) {
  const FinSet I = set_from_json(field(j, "I"));
  const FinSet B = set_from_json(field(j, "B"));
  const FinSet A = set_from_json(field(j, "A"));
  const FinSet J = set_from_json(field(j, "J"));
  return Polynomial(map_from_assignments(B, I, field(j, "s")), map_from_assignments(B, A, field(j, "f")),
                    map_from_assignments(A, J, field(j, "t")));
}

inline json to_json(const PolyMorphism& m) {
  json j = json::object();
  j["src"] = to_json(m.src());
  j["dst"] = to_json(m.dst());
  j["D"] = to_json(m.vertex());
  j["shape_map"] = assignments(m.shape_map());
  j["dst_leg"] = assignments(m.dst_leg());
  j["src_leg"] = assignments(m.src_leg());
  return j;
}

inline PolyMorphism morphism_from_json(const json& j) {
  const Polynomial F = poly_from_json(field(j, "src"));
  const Polynomial G = poly_from_json(field(j, "dst"));
  const FinSet D = set_from_json(field(j, "D"));
  return PolyMorphism(F, G, map_from_assignments(F.shapes(), G.shapes(), field(j, "shape_map")),
                      map_from_assignments(D, G.positions(), field(j, "dst_leg")),
                      map_from_assignments(D, F.positions(), field(j, "src_leg")));
}

namespace detail {

inline json table_to_json(const std::map<Label, Label>& codes, const std::map<Label, FinMap>& maps) {
  json arr = json::array();
  for (const auto& [key, code] : codes) {
    json row = json::array({to_json(key), to_json(code)});
    auto m = maps.find(key);
    row.push_back(m == maps.end() ? json::array() : assignments(m->second));
    arr.push_back(std::move(row));
  }
  return arr;
}

template <class SetOf>
void table_from_json(const json& j, const Universe& u, SetOf set_of, std::map<Label, Label>& codes,
                     std::map<Label, FinMap>& maps) {
  if (!j.is_array()) fail(ErrorKind::parse, "structure table must be an array");
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3) fail(ErrorKind::parse, "table row must be [[A, B], code, map]");
    const Label key = label_from_json(row[0]);
    const Label code = label_from_json(row[1]);
    if (!key.is_tuple() || key.size() != 2 || !key[1].is_tuple())
      fail(ErrorKind::parse, "table key must be [code, section], got " + row[0].dump());
    if (!u.codes().contains(key[0]) || !u.codes().contains(code))
      fail(ErrorKind::parse, "table row mentions an unknown code: " + row.dump());
    if (!codes.emplace(key, code).second) fail(ErrorKind::parse, "table row given twice for " + key.str());
    FinSet dom;
    try {
      dom = set_of(u.el, key);
    } catch (const Error& e) {
      fail(ErrorKind::parse, std::string("bad type family: ") + e.what());
    }
    // Values may be any element; validation reports those outside El(code).
    FinMap m = map_from_assignments(dom, u.el.dom(), row[2]);
    const FinSet over = u.elements(code);
    bool inside = true;
    for (std::size_t k = 0; k < m.dom().size(); ++k) inside = inside && over.contains(m.at(k));
    if (inside) m = FinMap::tabulate(dom, over, [&](const Label& x) { return m(x); });
    maps.emplace(key, std::move(m));
  }
}

}  // namespace detail

inline json to_json(const Universe& u) {
  json j = json::object();
  j["U"] = to_json(u.codes());
  json el = json::array();
  for (const auto& c : u.codes()) el.push_back(json::array({to_json(c), to_json(u.elements(c))}));
  j["El"] = el;
  j["unit"] = json::array({to_json(u.unit_code), to_json(u.unit_elem)});
  j["sigma"] = detail::table_to_json(u.sigma, u.pair);
  j["pi"] = detail::table_to_json(u.pi, u.lambda);
  return j;
}

inline Universe universe_from_json(const json& j) {
  Universe u;
  const FinSet codes = set_from_json(field(j, "U"));
  const json& el = field(j, "El");
  if (!el.is_array()) fail(ErrorKind::parse, "El must be an array");
  std::vector<std::pair<Label, Label>> assign;
  std::vector<Label> elems;
  for (const auto& row : el) {
    if (!row.is_array() || row.size() != 2) fail(ErrorKind::parse, "El entry must be [code, set]");
    const Label code = label_from_json(row[0]);
    if (!codes.contains(code)) fail(ErrorKind::parse, "El over unknown code " + row[0].dump());
    for (const auto& e : set_from_json(row[1])) {
      assign.emplace_back(e, code);
      elems.push_back(e);
    }
  }
  try {
    u.el = FinMap::from_pairs(FinSet(elems), codes, assign);
  } catch (const Error& e) {
    fail(ErrorKind::parse, std::string("El: ") + e.what());
  }
  const json& unit = field(j, "unit");
  if (!unit.is_array() || unit.size() != 2) fail(ErrorKind::parse, "unit must be [code, element]");
  u.unit_code = label_from_json(unit[0]);
  u.unit_elem = label_from_json(unit[1]);
  detail::table_from_json(field(j, "sigma"), u, &sigma_set, u.sigma, u.pair);
  detail::table_from_json(field(j, "pi"), u, &pi_set, u.pi, u.lambda);
  return u;
}

}  // namespace polyverse::io
