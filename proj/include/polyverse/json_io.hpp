#pragma once

// Textual interchange (JSON).
//
//   label   := string | [label, ...]
//   FinSet  := [label, ...]
//   FinMap  := {"dom": FinSet, "cod": FinSet, "map": [[x, fx], ...]}
//   FinFamily := {"index": FinSet, "fibres": [[i, FinSet], ...]}
//
// Printing is canonical (sorted elements, fixed key order), so
// parse(print(x)) == x and print(parse(s)) is a normal form of s.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polyverse/error.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/label.hpp"

namespace polyverse::io {

using json = nlohmann::ordered_json;

inline json to_json(const Label& l) {
  if (l.is_atom()) return json(l.atom());
  json arr = json::array();
  for (const auto& x : l.items()) arr.push_back(to_json(x));
  return arr;
}

inline Label label_from_json(const json& j) {
  if (j.is_string()) return Label(j.get<std::string>());
  if (j.is_array()) {
    std::vector<Label> items;
    items.reserve(j.size());
    for (const auto& x : j) items.push_back(label_from_json(x));
    return Label::tuple(std::move(items));
  }
  fail(ErrorKind::parse, "label must be a string or an array, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline json to_json(const FinSet& s) {
  json arr = json::array();
  for (const auto& x : s) arr.push_back(to_json(x));
  return arr;
}

inline FinSet set_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::parse, "set must be an array");
  std::vector<Label> xs;
  for (const auto& x : j) xs.push_back(label_from_json(x));
  try {
    return FinSet(std::move(xs));
  } catch (const Error& e) {
    fail(ErrorKind::parse, e.what());
  }
}

/// Assignment list [[x, fx], ...] in domain order.
inline json assignments(const FinMap& f) {
  json arr = json::array();
  for (std::size_t i = 0; i < f.dom().size(); ++i) arr.push_back(json::array({to_json(f.dom()[i]), to_json(f.at(i))}));
  return arr;
}

inline FinMap map_from_assignments(const FinSet& dom, const FinSet& cod, const json& j) {
  if (!j.is_array()) fail(ErrorKind::parse, "assignment list must be an array");
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) fail(ErrorKind::parse, "assignment must be a pair, got " + p.dump());
    pairs.emplace_back(label_from_json(p[0]), label_from_json(p[1]));
  }
  try {
    return FinMap::from_pairs(dom, cod, pairs);
  } catch (const Error& e) {
    fail(ErrorKind::parse, e.what());
  }
}

inline json to_json(const FinMap& f) {
  json j = json::object();
  j["dom"] = to_json(f.dom());
  j["cod"] = to_json(f.cod());
  j["map"] = assignments(f);
  return j;
}

inline FinMap map_from_json(const json& j) {
  return map_from_assignments(set_from_json(field(j, "dom")), set_from_json(field(j, "cod")), field(j, "map"));
}

inline json to_json(const FinFamily& x) {
  json j = json::object();
  j["index"] = to_json(x.index());
  json fibres = json::array();
  for (std::size_t i = 0; i < x.index().size(); ++i)
    fibres.push_back(json::array({to_json(x.index()[i]), to_json(x.fibre(i))}));
  j["fibres"] = fibres;
  return j;
}

inline FinFamily family_from_json(const json& j) {
  FinSet index = set_from_json(field(j, "index"));
  const json& fj = field(j, "fibres");
  if (!fj.is_array()) fail(ErrorKind::parse, "fibres must be an array");
  std::vector<FinSet> fibres(index.size());
  std::vector<char> seen(index.size(), 0);
  for (const auto& p : fj) {
    if (!p.is_array() || p.size() != 2) fail(ErrorKind::parse, "fibre entry must be [index, set]");
    auto i = index.find(label_from_json(p[0]));
    if (!i) fail(ErrorKind::parse, "fibre over unknown index " + p[0].dump());
    if (seen[*i]) fail(ErrorKind::parse, "fibre given twice for " + p[0].dump());
    seen[*i] = 1;
    fibres[*i] = set_from_json(p[1]);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(ErrorKind::parse, "no fibre given for " + index[i].str());
  return FinFamily(std::move(index), std::move(fibres));
}

}  // namespace polyverse::io
