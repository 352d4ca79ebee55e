#pragma once

// Finite sets as a locally cartesian closed category: sets, functions,
// families (objects of slices), chosen pullbacks and the dependent
// sum / base change / dependent product triple.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyverse/error.hpp"
#include "polyverse/label.hpp"

namespace polyverse {

// ---------------------------------------------------------------------------
// Enumeration cap

inline constexpr std::size_t default_enumeration_cap = 100000;

inline std::size_t& enumeration_cap() {
  thread_local std::size_t cap = default_enumeration_cap;
  return cap;
}

/// Overrides the enumeration cap for the current thread until destroyed.
class ScopedCap {
 public:
  explicit ScopedCap(std::size_t cap) : saved_(enumeration_cap()) { enumeration_cap() = cap; }
  ~ScopedCap() { enumeration_cap() = saved_; }
  ScopedCap(const ScopedCap&) = delete;
  ScopedCap& operator=(const ScopedCap&) = delete;

 private:
  std::size_t saved_;
};

inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::size_t>::max() / b) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

inline std::size_t saturating_add(std::size_t a, std::size_t b) {
  if (a > std::numeric_limits<std::size_t>::max() - b) return std::numeric_limits<std::size_t>::max();
  return a + b;
}

inline std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

inline void check_cap(std::size_t n, const std::string& what) {
  if (n > enumeration_cap()) {
    fail(ErrorKind::cap_exceeded, what + " would enumerate " +
                                      (n == std::numeric_limits<std::size_t>::max()
                                           ? std::string("too many")
                                           : std::to_string(n)) +
                                      " elements (cap " + std::to_string(enumeration_cap()) + ")");
  }
}

// ---------------------------------------------------------------------------
// FinSet

/// A finite set of labels, stored sorted. Copies share storage.
class FinSet {
 public:
  using const_iterator = std::vector<Label>::const_iterator;

  FinSet() : elems_(no_elements()) {}

  explicit FinSet(std::vector<Label> elems) {
    std::sort(elems.begin(), elems.end());
    for (std::size_t i = 1; i < elems.size(); ++i) {
      require(elems[i - 1] != elems[i], ErrorKind::invalid, "duplicate label " + elems[i].str());
    }
    check_cap(elems.size(), "finite set");
    elems_ = std::make_shared<const std::vector<Label>>(std::move(elems));
  }

  FinSet(std::initializer_list<Label> elems) : FinSet(std::vector<Label>(elems)) {}

  static FinSet singleton(Label x = Label("*")) { return FinSet(std::vector<Label>{std::move(x)}); }

  /// Product set with labels [x, y], in lexicographic order.
  static FinSet product(const FinSet& a, const FinSet& b) {
    check_cap(saturating_mul(a.size(), b.size()), "product");
    std::vector<Label> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
      for (const auto& y : b) out.push_back(tup(x, y));
    return FinSet(std::move(out));
  }

  std::size_t size() const noexcept { return elems_->size(); }
  bool empty() const noexcept { return elems_->empty(); }
  const Label& operator[](std::size_t i) const { return (*elems_)[i]; }
  const_iterator begin() const noexcept { return elems_->begin(); }
  const_iterator end() const noexcept { return elems_->end(); }
  const std::vector<Label>& elements() const noexcept { return *elems_; }

  std::optional<std::size_t> find(const Label& x) const {
    auto it = std::lower_bound(elems_->begin(), elems_->end(), x);
    if (it == elems_->end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - elems_->begin());
  }

  bool contains(const Label& x) const { return find(x).has_value(); }

  std::size_t index_of(const Label& x) const {
    auto i = find(x);
    if (!i) fail(ErrorKind::shape, "label " + x.str() + " not in set");
    return *i;
  }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.elems_ == b.elems_ || *a.elems_ == *b.elems_;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ",";
      out += (*elems_)[i].str();
    }
    return out + "}";
  }

 private:
  static const std::shared_ptr<const std::vector<Label>>& no_elements() {
    static const auto e = std::make_shared<const std::vector<Label>>();
    return e;
  }

  std::shared_ptr<const std::vector<Label>> elems_;
};

// ---------------------------------------------------------------------------
// FinMap

class FinMap {
 public:
  FinMap() = default;

  FinMap(FinSet dom, FinSet cod, std::vector<std::size_t> image)
      : dom_(std::move(dom)), cod_(std::move(cod)), image_(std::move(image)) {
    require(image_.size() == dom_.size(), ErrorKind::shape, "map is not total on its domain");
    for (auto y : image_) require(y < cod_.size(), ErrorKind::shape, "map value outside codomain");
  }

  static FinMap from_pairs(FinSet dom, FinSet cod, const std::vector<std::pair<Label, Label>>& pairs) {
    std::vector<std::size_t> img(dom.size(), std::numeric_limits<std::size_t>::max());
    for (const auto& [x, y] : pairs) {
      auto i = dom.find(x);
      require(i.has_value(), ErrorKind::shape, "map assigns " + x.str() + " outside its domain");
      require(img[*i] == std::numeric_limits<std::size_t>::max(), ErrorKind::invalid,
              "map assigns " + x.str() + " twice");
      auto j = cod.find(y);
      require(j.has_value(), ErrorKind::shape, "map value " + y.str() + " outside codomain");
      img[*i] = *j;
    }
    for (std::size_t i = 0; i < img.size(); ++i) {
      require(img[i] != std::numeric_limits<std::size_t>::max(), ErrorKind::shape,
              "map does not assign " + dom[i].str());
    }
    return FinMap(std::move(dom), std::move(cod), std::move(img));
  }

  /// Builds the map x |-> fn(x); fn must land in cod.
  template <class Fn>
  static FinMap tabulate(FinSet dom, FinSet cod, Fn&& fn) {
    std::vector<std::size_t> img;
    img.reserve(dom.size());
    for (const auto& x : dom) {
      Label y = fn(x);
      auto j = cod.find(y);
      if (!j) fail(ErrorKind::shape, "value " + y.str() + " of " + x.str() + " outside codomain");
      img.push_back(*j);
    }
    return FinMap(std::move(dom), std::move(cod), std::move(img));
  }

  static FinMap identity(const FinSet& s) {
    std::vector<std::size_t> img(s.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
    return FinMap(s, s, std::move(img));
  }

  /// The unique map to a one-element set.
  static FinMap to_point(const FinSet& dom, const FinSet& point = FinSet::singleton()) {
    require(point.size() == 1, ErrorKind::shape, "terminal object must be a singleton");
    return FinMap(dom, point, std::vector<std::size_t>(dom.size(), 0));
  }

  /// The map 1 -> cod picking x.
  static FinMap point(const FinSet& cod, const Label& x, const FinSet& one = FinSet::singleton()) {
    require(one.size() == 1, ErrorKind::shape, "point must have a singleton domain");
    return FinMap(one, cod, {cod.index_of(x)});
  }

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& indices() const noexcept { return image_; }
  std::size_t index_at(std::size_t i) const { return image_.at(i); }
  const Label& at(std::size_t i) const { return cod_[image_.at(i)]; }
  const Label& operator()(const Label& x) const { return cod_[image_[dom_.index_of(x)]]; }

  bool injective() const {
    std::vector<char> hit(cod_.size(), 0);
    for (auto y : image_) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
    return true;
  }

  bool surjective() const {
    std::vector<char> hit(cod_.size(), 0);
    for (auto y : image_) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  bool bijective() const { return dom_.size() == cod_.size() && injective(); }

  FinMap inverse() const {
    require(bijective(), ErrorKind::invalid, "inverse of a non-bijective map");
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return FinMap(cod_, dom_, std::move(inv));
  }

  /// For each codomain index, the domain indices mapping to it (ascending).
  std::vector<std::vector<std::size_t>> fibres() const {
    std::vector<std::vector<std::size_t>> out(cod_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) out[image_[i]].push_back(i);
    return out;
  }

  /// Domain labels over y, in canonical order.
  std::vector<Label> fibre(const Label& y) const {
    const std::size_t j = cod_.index_of(y);
    std::vector<Label> out;
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] == j) out.push_back(dom_[i]);
    return out;
  }

  friend bool operator==(const FinMap& a, const FinMap& b) {
    return a.image_ == b.image_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < dom_.size(); ++i) {
      if (i) out += ",";
      out += dom_[i].str() + "->" + at(i).str();
    }
    return out + "}";
  }

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> image_;
};

/// g after f.
inline FinMap compose(const FinMap& g, const FinMap& f) {
  require(f.cod() == g.dom(), ErrorKind::shape, "composite of non-composable maps");
  std::vector<std::size_t> img(f.dom().size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = g.index_at(f.index_at(i));
  return FinMap(f.dom(), g.cod(), std::move(img));
}

template <class... Maps>
FinMap compose(const FinMap& h, const FinMap& g, const Maps&... rest) {
  return compose(h, compose(g, rest...));
}

/// <f, g> : X -> Y x Z with labels [f(x), g(x)] into the given product set.
inline FinMap pairing(const FinMap& f, const FinMap& g, const FinSet& product) {
  require(f.dom() == g.dom(), ErrorKind::shape, "pairing of maps with different domains");
  return FinMap::tabulate(f.dom(), product, [&](const Label& x) { return tup(f(x), g(x)); });
}

// ---------------------------------------------------------------------------
// Sections

/// Sections are encoded as the tuple of [key, value] pairs in key order.
inline Label make_section(const std::vector<Label>& keys, const std::vector<Label>& values) {
  require(keys.size() == values.size(), ErrorKind::shape, "section arity mismatch");
  std::vector<Label> pairs;
  pairs.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) pairs.push_back(tup(keys[i], values[i]));
  return Label::tuple(std::move(pairs));
}

/// Section from unordered [key, value] pairs; keys must be distinct.
inline Label section_from_pairs(std::vector<std::pair<Label, Label>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<Label> items;
  items.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    require(i == 0 || pairs[i - 1].first != pairs[i].first, ErrorKind::invalid,
            "section assigns " + pairs[i].first.str() + " twice");
    items.push_back(tup(pairs[i].first, pairs[i].second));
  }
  return Label::tuple(std::move(items));
}

inline const Label& section_value(const Label& section, const Label& key) {
  const auto& items = section.items();
  auto it = std::lower_bound(items.begin(), items.end(), key,
                             [](const Label& pair, const Label& k) { return pair[0] < k; });
  if (it == items.end() || (*it)[0] != key) {
    fail(ErrorKind::shape, "section " + section.str() + " undefined at " + key.str());
  }
  return (*it)[1];
}

inline std::vector<Label> section_keys(const Label& section) {
  std::vector<Label> out;
  for (const auto& p : section.items()) out.push_back(p[0]);
  return out;
}

/// All sections over `keys` choosing values from `choices[i]` at keys[i],
/// in lexicographic order of the choices.
inline std::vector<Label> enumerate_sections(const std::vector<Label>& keys,
                                             const std::vector<const FinSet*>& choices) {
  require(keys.size() == choices.size(), ErrorKind::shape, "section arity mismatch");
  std::size_t total = 1;
  for (const auto* c : choices) total = saturating_mul(total, c->size());
  check_cap(total, "section enumeration");
  std::vector<Label> out;
  if (total == 0) return out;
  out.reserve(total);
  std::vector<std::size_t> idx(keys.size(), 0);
  while (true) {
    std::vector<Label> values;
    values.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) values.push_back((*choices[i])[idx[i]]);
    out.push_back(make_section(keys, values));
    std::size_t pos = keys.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < choices[pos]->size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (keys.empty()) return out;
  }
}

/// All functions dom -> cod as FinMaps.
inline std::vector<FinMap> enumerate_maps(const FinSet& dom, const FinSet& cod) {
  check_cap(saturating_pow(cod.size(), dom.size()), "map enumeration");
  std::vector<FinMap> out;
  if (cod.empty() && !dom.empty()) return out;
  std::vector<std::size_t> img(dom.size(), 0);
  while (true) {
    out.emplace_back(dom, cod, img);
    std::size_t pos = dom.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++img[pos] < cod.size()) {
        done = false;
        break;
      }
      img[pos] = 0;
    }
    if (done) return out;
  }
}

// ---------------------------------------------------------------------------
// FinFamily: objects of the slice over `index`

class FinFamily {
 public:
  FinFamily() = default;

  FinFamily(FinSet index, std::vector<FinSet> fibres) : index_(std::move(index)), fibres_(std::move(fibres)) {
    require(fibres_.size() == index_.size(), ErrorKind::shape, "family must have one fibre per index");
  }

  template <class Fn>
  static FinFamily generate(FinSet index, Fn&& fn) {
    std::vector<FinSet> fibres;
    fibres.reserve(index.size());
    for (const auto& i : index) fibres.push_back(fn(i));
    return FinFamily(std::move(index), std::move(fibres));
  }

  static FinFamily constant(const FinSet& index, const FinSet& fibre) {
    return FinFamily(index, std::vector<FinSet>(index.size(), fibre));
  }

  /// Fibres of f with the original domain labels.
  static FinFamily fibres_of(const FinMap& f) {
    auto idx = f.fibres();
    std::vector<FinSet> fibres;
    fibres.reserve(idx.size());
    for (const auto& is : idx) {
      std::vector<Label> xs;
      xs.reserve(is.size());
      for (auto i : is) xs.push_back(f.dom()[i]);
      fibres.emplace_back(std::move(xs));
    }
    return FinFamily(f.cod(), std::move(fibres));
  }

  /// Inverse of total(): expects labels [i, x] with f([i, x]) = i.
  static FinFamily from_total(const FinMap& f) {
    std::vector<std::vector<Label>> xs(f.cod().size());
    for (std::size_t k = 0; k < f.dom().size(); ++k) {
      const Label& e = f.dom()[k];
      require(e.is_tuple() && e.size() == 2 && e[0] == f.at(k), ErrorKind::invalid,
              "total-space label " + e.str() + " is not of the form [index, element]");
      xs[f.index_at(k)].push_back(e[1]);
    }
    std::vector<FinSet> fibres;
    for (auto& v : xs) fibres.emplace_back(std::move(v));
    return FinFamily(f.cod(), std::move(fibres));
  }

  const FinSet& index() const noexcept { return index_; }
  const std::vector<FinSet>& fibres() const noexcept { return fibres_; }
  const FinSet& fibre(std::size_t i) const { return fibres_.at(i); }
  const FinSet& fibre(const Label& i) const { return fibres_[index_.index_of(i)]; }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& f : fibres_) n += f.size();
    return n;
  }

  /// Total space with labels [i, x] and its projection to the index.
  FinMap total() const {
    std::vector<Label> xs;
    for (std::size_t i = 0; i < index_.size(); ++i)
      for (const auto& x : fibres_[i]) xs.push_back(tup(index_[i], x));
    FinSet dom(std::move(xs));
    return FinMap::tabulate(dom, index_, [](const Label& e) { return e[0]; });
  }

  friend bool operator==(const FinFamily& a, const FinFamily& b) {
    return a.index_ == b.index_ && a.fibres_ == b.fibres_;
  }

 private:
  FinSet index_;
  std::vector<FinSet> fibres_;
};

// ---------------------------------------------------------------------------
// FamilyMap: morphisms of the slice, one component per index

class FamilyMap {
 public:
  FamilyMap() = default;

  FamilyMap(FinFamily src, FinFamily dst, std::vector<FinMap> components)
      : src_(std::move(src)), dst_(std::move(dst)), components_(std::move(components)) {
    require(src_.index() == dst_.index(), ErrorKind::shape, "family map between different indices");
    require(components_.size() == src_.index().size(), ErrorKind::shape, "family map needs one component per index");
    for (std::size_t i = 0; i < components_.size(); ++i) {
      require(components_[i].dom() == src_.fibre(i) && components_[i].cod() == dst_.fibre(i), ErrorKind::shape,
              "family map component has wrong fibres at " + src_.index()[i].str());
    }
  }

  static FamilyMap identity(const FinFamily& x) {
    std::vector<FinMap> comps;
    for (const auto& f : x.fibres()) comps.push_back(FinMap::identity(f));
    return FamilyMap(x, x, std::move(comps));
  }

  /// A plain map viewed as a family map over a one-point index.
  static FamilyMap over_point(const FinMap& f, const FinSet& point = FinSet::singleton()) {
    return FamilyMap(FinFamily::constant(point, f.dom()), FinFamily::constant(point, f.cod()), {f});
  }

  const FinFamily& src() const noexcept { return src_; }
  const FinFamily& dst() const noexcept { return dst_; }
  const std::vector<FinMap>& components() const noexcept { return components_; }
  const FinMap& component(std::size_t i) const { return components_.at(i); }
  const FinMap& component(const Label& i) const { return components_[src_.index().index_of(i)]; }

  /// The induced map of total spaces.
  FinMap total() const {
    const FinMap s = src_.total();
    const FinMap d = dst_.total();
    return FinMap::tabulate(s.dom(), d.dom(), [&](const Label& e) { return tup(e[0], component(e[0])(e[1])); });
  }

  friend bool operator==(const FamilyMap& a, const FamilyMap& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.components_ == b.components_;
  }

 private:
  FinFamily src_;
  FinFamily dst_;
  std::vector<FinMap> components_;
};

inline FamilyMap compose(const FamilyMap& g, const FamilyMap& f) {
  require(f.dst() == g.src(), ErrorKind::shape, "composite of non-composable family maps");
  std::vector<FinMap> comps;
  for (std::size_t i = 0; i < f.components().size(); ++i) comps.push_back(compose(g.component(i), f.component(i)));
  return FamilyMap(f.src(), g.dst(), std::move(comps));
}

/// All fibrewise maps X -> Y.
inline std::vector<FamilyMap> enumerate_family_maps(const FinFamily& x, const FinFamily& y) {
  require(x.index() == y.index(), ErrorKind::shape, "family maps between different indices");
  std::size_t total = 1;
  for (std::size_t i = 0; i < x.index().size(); ++i)
    total = saturating_mul(total, saturating_pow(y.fibre(i).size(), x.fibre(i).size()));
  check_cap(total, "family map enumeration");
  std::vector<std::vector<FinMap>> per;
  for (std::size_t i = 0; i < x.index().size(); ++i) per.push_back(enumerate_maps(x.fibre(i), y.fibre(i)));
  std::vector<FamilyMap> out;
  for (const auto& v : per)
    if (v.empty()) return out;
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    std::vector<FinMap> comps;
    for (std::size_t i = 0; i < per.size(); ++i) comps.push_back(per[i][idx[i]]);
    out.emplace_back(x, y, std::move(comps));
    std::size_t pos = per.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < per[pos].size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) return out;
  }
}

// ---------------------------------------------------------------------------
// Pullbacks

struct Pullback {
  FinSet apex;
  FinMap left;   // apex -> dom f
  FinMap right;  // apex -> dom g
};

/// Chosen pullback of f : B -> A and g : C -> A, with apex labels [b, c].
inline Pullback pullback(const FinMap& f, const FinMap& g) {
  require(f.cod() == g.cod(), ErrorKind::shape, "pullback of maps with different codomains");
  const auto gf = g.fibres();
  std::size_t n = 0;
  for (std::size_t i = 0; i < f.dom().size(); ++i) n = saturating_add(n, gf[f.index_at(i)].size());
  check_cap(n, "pullback");
  std::vector<Label> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (auto j : gf[f.index_at(i)]) xs.push_back(tup(f.dom()[i], g.dom()[j]));
  FinSet apex(std::move(xs));
  FinMap left = FinMap::tabulate(apex, f.dom(), [](const Label& e) { return e[0]; });
  FinMap right = FinMap::tabulate(apex, g.dom(), [](const Label& e) { return e[1]; });
  return {apex, left, right};
}

/// Whether the square  P -p1-> B, P -p2-> C, f : B -> A, g : C -> A  commutes.
inline bool square_commutes(const FinMap& p1, const FinMap& p2, const FinMap& f, const FinMap& g) {
  if (!(p1.dom() == p2.dom() && p1.cod() == f.dom() && p2.cod() == g.dom() && f.cod() == g.cod())) return false;
  for (std::size_t i = 0; i < p1.dom().size(); ++i)
    if (f.index_at(p1.index_at(i)) != g.index_at(p2.index_at(i))) return false;
  return true;
}

/// Whether the commuting square is a pullback: the comparison map into the
/// chosen pullback is a bijection.
inline bool is_pullback_square(const FinMap& p1, const FinMap& p2, const FinMap& f, const FinMap& g) {
  if (!square_commutes(p1, p2, f, g)) return false;
  std::size_t expected = 0;
  const auto gf = g.fibres();
  for (std::size_t i = 0; i < f.dom().size(); ++i) expected += gf[f.index_at(i)].size();
  if (expected != p1.dom().size()) return false;
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  seen.reserve(p1.dom().size());
  for (std::size_t i = 0; i < p1.dom().size(); ++i) seen.emplace_back(p1.index_at(i), p2.index_at(i));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

// ---------------------------------------------------------------------------
// Sigma, Delta, Pi and exponentials

inline FinFamily dep_sum(const FinMap& f, const FinFamily& x) {
  require(x.index() == f.dom(), ErrorKind::shape, "dependent sum: family not indexed by the domain");
  const auto fib = f.fibres();
  std::vector<FinSet> out;
  out.reserve(fib.size());
  for (const auto& bs : fib) {
    std::vector<Label> xs;
    std::size_t n = 0;
    for (auto b : bs) n = saturating_add(n, x.fibre(b).size());
    check_cap(n, "dependent sum fibre");
    for (auto b : bs)
      for (const auto& e : x.fibre(b)) xs.push_back(tup(f.dom()[b], e));
    out.emplace_back(std::move(xs));
  }
  return FinFamily(f.cod(), std::move(out));
}

inline FinFamily base_change(const FinMap& f, const FinFamily& x) {
  require(x.index() == f.cod(), ErrorKind::shape, "base change: family not indexed by the codomain");
  std::vector<FinSet> out;
  out.reserve(f.dom().size());
  for (std::size_t b = 0; b < f.dom().size(); ++b) out.push_back(x.fibre(f.index_at(b)));
  return FinFamily(f.dom(), std::move(out));
}

inline FinFamily dep_prod(const FinMap& f, const FinFamily& x) {
  require(x.index() == f.dom(), ErrorKind::shape, "dependent product: family not indexed by the domain");
  const auto fib = f.fibres();
  std::vector<FinSet> out;
  out.reserve(fib.size());
  for (const auto& bs : fib) {
    std::vector<Label> keys;
    std::vector<const FinSet*> choices;
    for (auto b : bs) {
      keys.push_back(f.dom()[b]);
      choices.push_back(&x.fibre(b));
    }
    out.emplace_back(enumerate_sections(keys, choices));
  }
  return FinFamily(f.cod(), std::move(out));
}

/// Fibrewise function sets Y_z^{X_z}.
inline FinFamily family_exponential(const FinFamily& x, const FinFamily& y) {
  require(x.index() == y.index(), ErrorKind::shape, "exponential of families over different bases");
  std::vector<FinSet> out;
  for (std::size_t z = 0; z < x.index().size(); ++z) {
    const auto& keys = x.fibre(z).elements();
    std::vector<const FinSet*> choices(keys.size(), &y.fibre(z));
    out.emplace_back(enumerate_sections(keys, choices));
  }
  return FinFamily(x.index(), std::move(out));
}

/// The exponential f2^f1 in the slice over the common codomain, as a map
/// whose domain has labels [z, k] with k : f1^{-1}(z) -> f2^{-1}(z).
inline FinMap slice_exponential(const FinMap& f1, const FinMap& f2) {
  require(f1.cod() == f2.cod(), ErrorKind::shape, "slice exponential of maps over different bases");
  return family_exponential(FinFamily::fibres_of(f1), FinFamily::fibres_of(f2)).total();
}

}  // namespace polyverse
