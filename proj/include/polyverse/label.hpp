#pragma once

#include <compare>
#include <initializer_list>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace polyverse {

/// Element label: either an atom (string) or a tuple of labels.
///
/// Constructed elements (pairs, sections, composite operations) are tuples, so
/// equality is structural and the order is total: atoms sort before tuples,
/// atoms compare as strings, tuples compare lexicographically.
class Label {
 public:
  Label() : items_(empty_items()) {}
  Label(std::string atom) : atom_(std::move(atom)) {}  // NOLINT(implicit)
  Label(const char* atom) : atom_(atom) {}              // NOLINT(implicit)

  static Label tuple(std::vector<Label> items) {
    Label l;
    l.items_ = std::make_shared<const std::vector<Label>>(std::move(items));
    return l;
  }

  bool is_atom() const noexcept { return items_ == nullptr; }
  bool is_tuple() const noexcept { return items_ != nullptr; }

  const std::string& atom() const noexcept { return atom_; }
  const std::vector<Label>& items() const noexcept {
    return items_ ? *items_ : *empty_items();
  }
  std::size_t size() const noexcept { return items().size(); }
  const Label& operator[](std::size_t i) const { return items().at(i); }

  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (a.is_atom() != b.is_atom()) {
      return a.is_atom() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.is_atom()) {
      int c = a.atom_.compare(b.atom_);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    if (a.items_ == b.items_) return std::strong_ordering::equal;
    const auto& x = *a.items_;
    const auto& y = *b.items_;
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto c = x[i] <=> y[i];
      if (c != 0) return c;
    }
    return x.size() <=> y.size();
  }

  friend bool operator==(const Label& a, const Label& b) { return (a <=> b) == 0; }

  /// Compact rendering, e.g. `[a,[b,c]]`. Atoms are printed bare.
  std::string str() const {
    if (is_atom()) return atom_;
    std::string out = "[";
    bool first = true;
    for (const auto& x : *items_) {
      if (!first) out += ",";
      first = false;
      out += x.str();
    }
    out += "]";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Label& l) { return os << l.str(); }

 private:
  static const std::shared_ptr<const std::vector<Label>>& empty_items() {
    static const auto empty = std::make_shared<const std::vector<Label>>();
    return empty;
  }

  std::string atom_;
  std::shared_ptr<const std::vector<Label>> items_;
};

/// tup(a, b, c) == Label::tuple({a, b, c})
template <class... Ts>
Label tup(Ts&&... xs) {
  return Label::tuple(std::vector<Label>{Label(std::forward<Ts>(xs))...});
}

}  // namespace polyverse
