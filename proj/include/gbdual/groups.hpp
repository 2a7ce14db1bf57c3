#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gbdual/errors.hpp"

namespace gbdual {

using Element = std::size_t;

inline constexpr std::size_t kDefaultOrderCap = 2000;

/// A finite group given by its full multiplication table.
///
/// Elements are the indices 0..order-1. Construction validates closure,
/// identity, inverses and associativity (full triple scan), so a table that
/// exists is a group.
class GroupTable {
 public:
  static GroupTable fromTable(std::vector<std::vector<Element>> mult, std::vector<std::string> labels = {},
                              std::size_t orderCap = kDefaultOrderCap) {
    GroupTable g;
    g.mult_ = std::move(mult);
    g.labels_ = std::move(labels);
    g.validate(orderCap);
    return g;
  }

  /// Closure of a set of generators under `multiply`. `Key` must be ordered.
  /// Element 0 is the identity; the remaining ones appear in breadth-first
  /// order of words in the generators.
  template <class T, class Multiply, class Key>
  static std::pair<GroupTable, std::vector<T>> close(const T& identity, const std::vector<T>& generators,
                                                     Multiply multiply, Key key, std::size_t orderCap,
                                                     std::vector<Element>* generatorIndices = nullptr) {
    std::vector<T> elems{identity};
    std::map<decltype(key(identity)), Element> index{{key(identity), 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& gen : generators) {
        T next = multiply(elems[head], gen);
        auto k = key(next);
        if (index.count(k)) continue;
        if (elems.size() >= orderCap)
          throw ValidationError("group generated exceeds the order cap of " + std::to_string(orderCap));
        index.emplace(std::move(k), elems.size());
        elems.push_back(std::move(next));
      }
    }
    const std::size_t n = elems.size();
    std::vector<std::vector<Element>> mult(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto it = index.find(key(multiply(elems[a], elems[b])));
        if (it == index.end()) throw InvariantViolation("closure is not closed under multiplication");
        mult[a][b] = it->second;
      }
    if (generatorIndices) {
      generatorIndices->clear();
      for (const auto& gen : generators) generatorIndices->push_back(index.at(key(gen)));
    }
    GroupTable g = fromTable(std::move(mult), {}, orderCap);
    if (generatorIndices) g.generators_ = *generatorIndices;
    return {std::move(g), std::move(elems)};
  }

  /// Permutations act on {0..n-1}; the product a*b applies b first.
  static GroupTable fromPermutations(const std::vector<std::vector<std::size_t>>& gens,
                                     std::size_t orderCap = kDefaultOrderCap) {
    if (gens.empty()) throw ValidationError("permutation group needs at least one generator");
    const std::size_t degree = gens.front().size();
    for (const auto& p : gens) {
      if (p.size() != degree) throw ValidationError("permutation generators have different degrees");
      std::vector<bool> seen(degree, false);
      for (auto x : p) {
        if (x >= degree || seen[x]) throw ValidationError("generator is not a permutation");
        seen[x] = true;
      }
    }
    std::vector<std::size_t> id(degree);
    std::iota(id.begin(), id.end(), 0);
    auto compose = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
      std::vector<std::size_t> out(a.size());
      for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[b[x]];
      return out;
    };
    std::vector<Element> genIdx;
    auto [g, perms] = close(id, gens, compose, [](const auto& p) { return p; }, orderCap, &genIdx);
    for (const auto& p : perms) g.labels_.push_back(cycleNotation(p));
    return g;
  }

  std::size_t order() const { return mult_.size(); }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return mult_[a][b]; }
  Element inv(Element a) const { return inv_[a]; }
  const std::vector<std::vector<Element>>& table() const { return mult_; }
  const std::vector<Element>& inverses() const { return inv_; }

  std::string label(Element a) const { return a < labels_.size() ? labels_[a] : std::to_string(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  void setLabels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != order()) throw ValidationError("label count does not match group order");
    labels_ = std::move(labels);
  }

  /// Indices of the generators this table was closed from (empty otherwise).
  const std::vector<Element>& generatorIndices() const { return generators_; }

  /// u a u^{-1}
  Element conjugate(Element a, Element u) const { return mul(mul(u, a), inv(u)); }
  Element commutator(Element a, Element b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }

  Element power(Element a, std::size_t k) const {
    Element out = identity_;
    for (std::size_t j = 0; j < k; ++j) out = mul(out, a);
    return out;
  }

  std::size_t elementOrder(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  std::size_t exponent() const {
    std::size_t e = 1;
    for (Element a = 0; a < order(); ++a) e = std::lcm(e, elementOrder(a));
    return e;
  }

  bool isAbelian() const {
    for (Element a = 0; a < order(); ++a)
      for (Element b = a + 1; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// A small generating set: greedily adds the first element outside the
  /// span, scanning by index.
  std::vector<Element> generatingSet() const;

  /// Conjugacy classes ordered by smallest member; the identity class first.
  std::vector<std::vector<Element>> conjugacyClasses() const {
    std::vector<std::vector<Element>> classes;
    std::vector<bool> seen(order(), false);
    for (Element a = 0; a < order(); ++a) {
      if (seen[a]) continue;
      std::set<Element> cls;
      for (Element u = 0; u < order(); ++u) cls.insert(conjugate(a, u));
      for (auto x : cls) seen[x] = true;
      classes.emplace_back(cls.begin(), cls.end());
    }
    std::stable_partition(classes.begin(), classes.end(),
                          [this](const auto& c) { return c.size() == 1 && c[0] == identity_; });
    return classes;
  }

  friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.mult_ == b.mult_; }

 private:
  static std::string cycleNotation(const std::vector<std::size_t>& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (seen[x] || p[x] == x) continue;
      out += "(";
      for (std::size_t y = x; !seen[y]; y = p[y]) {
        seen[y] = true;
        out += (y == x ? "" : " ") + std::to_string(y);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  void validate(std::size_t orderCap) {
    const std::size_t n = mult_.size();
    if (n == 0) throw ValidationError("group table is empty");
    if (n > orderCap)
      throw ValidationError("group order " + std::to_string(n) + " exceeds the cap of " + std::to_string(orderCap));
    for (const auto& row : mult_) {
      if (row.size() != n) throw ValidationError("group table is not square");
      for (auto x : row)
        if (x >= n) throw ValidationError("group table entry out of range");
    }
    std::optional<Element> id;
    for (Element e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = mult_[e][x] == x && mult_[x][e] == x;
      if (ok) id = e;
    }
    if (!id) throw ValidationError("group table has no two-sided identity");
    identity_ = *id;
    inv_.assign(n, n);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b)
        if (mult_[a][b] == identity_ && mult_[b][a] == identity_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] == n) throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = mult_[a][b];
        for (Element c = 0; c < n; ++c)
          if (mult_[ab][c] != mult_[a][mult_[b][c]])
            throw ValidationError("group table is not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
      }
    if (!labels_.empty() && labels_.size() != n) throw ValidationError("label count does not match group order");
  }

  std::vector<std::vector<Element>> mult_;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
  std::vector<Element> generators_;
  Element identity_ = 0;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// Smallest subgroup containing `gens`, as a sorted element list.
inline std::vector<Element> generatedSubgroup(const GroupTable& g, const std::vector<Element>& gens) {
  std::set<Element> span{g.identity()};
  std::vector<Element> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (auto x : frontier)
      for (auto s : gens) {
        Element y = g.mul(x, s);
        if (span.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {span.begin(), span.end()};
}

inline std::vector<Element> GroupTable::generatingSet() const {
  std::vector<Element> gens;
  std::vector<Element> span{identity_};
  std::vector<bool> inSpan(order(), false);
  inSpan[identity_] = true;
  for (Element a = 0; a < order(); ++a) {
    if (inSpan[a]) continue;
    gens.push_back(a);
    span = generatedSubgroup(*this, gens);
    for (auto x : span) inSpan[x] = true;
  }
  return gens;
}

inline bool isSubgroup(const GroupTable& g, const std::vector<Element>& sub) {
  if (sub.empty()) return false;
  std::set<Element> s(sub.begin(), sub.end());
  for (auto x : s) {
    if (x >= g.order()) return false;
    if (!s.count(g.inv(x))) return false;
    for (auto y : s)
      if (!s.count(g.mul(x, y))) return false;
  }
  return true;
}

inline void requireSubgroup(const GroupTable& g, const std::vector<Element>& sub) {
  if (!isSubgroup(g, sub)) throw ValidationError("element subset is not a subgroup (not closed under product/inverse)");
}

inline bool normalizes(const GroupTable& g, Element u, const std::vector<Element>& sub) {
  std::set<Element> s(sub.begin(), sub.end());
  for (auto x : s)
    if (!s.count(g.conjugate(x, u))) return false;
  return true;
}

inline bool isNormal(const GroupTable& g, const std::vector<Element>& sub) {
  for (Element u = 0; u < g.order(); ++u)
    if (!normalizes(g, u, sub)) return false;
  return true;
}

/// {u in ambient : u sub u^{-1} = sub}, sorted.
inline std::vector<Element> normalizerInAmbient(const GroupTable& ambient, const std::vector<Element>& sub) {
  requireSubgroup(ambient, sub);
  std::vector<Element> out;
  for (Element u = 0; u < ambient.order(); ++u)
    if (normalizes(ambient, u, sub)) out.push_back(u);
  return out;
}

/// [g, g], sorted.
inline std::vector<Element> commutatorSubgroup(const GroupTable& g) {
  std::set<Element> comms;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) comms.insert(g.commutator(a, b));
  return generatedSubgroup(g, {comms.begin(), comms.end()});
}

/// Left cosets x·sub ordered by their smallest member; returns the coset id
/// of every element.
inline std::vector<std::size_t> cosetIds(const GroupTable& g, const std::vector<Element>& sub, std::size_t* count = nullptr) {
  const std::size_t none = g.order();
  std::vector<std::size_t> id(g.order(), none);
  std::size_t next = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (id[x] != none) continue;
    for (auto h : sub) id[g.mul(x, h)] = next;
    ++next;
  }
  if (count) *count = next;
  return id;
}

/// Table of the subgroup `sub` (sorted); element k is sub[k].
inline GroupTable subgroupTable(const GroupTable& g, const std::vector<Element>& sub) {
  requireSubgroup(g, sub);
  std::vector<Element> sorted(sub.begin(), sub.end());
  std::sort(sorted.begin(), sorted.end());
  std::map<Element, Element> pos;
  for (std::size_t k = 0; k < sorted.size(); ++k) pos[sorted[k]] = k;
  std::vector<std::vector<Element>> mult(sorted.size(), std::vector<Element>(sorted.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    labels.push_back(g.label(sorted[a]));
    for (std::size_t b = 0; b < sorted.size(); ++b) mult[a][b] = pos.at(g.mul(sorted[a], sorted[b]));
  }
  return GroupTable::fromTable(std::move(mult), std::move(labels), std::max(kDefaultOrderCap, sorted.size()));
}

/// Group homomorphism given by the image of every source element.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> image)
      : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    if (!source_ || !target_) throw ValidationError("homomorphism needs source and target groups");
    if (image_.size() != source_->order()) throw ValidationError("homomorphism image has wrong length");
    for (auto x : image_)
      if (x >= target_->order()) throw ValidationError("homomorphism image out of range");
    if (image_[source_->identity()] != target_->identity())
      throw ValidationError("homomorphism does not send identity to identity");
    for (Element a = 0; a < source_->order(); ++a)
      for (Element b = 0; b < source_->order(); ++b)
        if (image_[source_->mul(a, b)] != target_->mul(image_[a], image_[b]))
          throw ValidationError("map is not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }

  static GroupHom identity(GroupPtr g) {
    std::vector<Element> img(g->order());
    std::iota(img.begin(), img.end(), 0);
    return GroupHom(g, g, std::move(img));
  }
  static GroupHom trivial(GroupPtr source, GroupPtr target) {
    std::vector<Element> img(source->order(), target->identity());
    return GroupHom(std::move(source), std::move(target), std::move(img));
  }

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  Element operator()(Element a) const { return image_[a]; }
  const std::vector<Element>& image() const { return image_; }

  std::vector<Element> kernel() const {
    std::vector<Element> out;
    for (Element a = 0; a < image_.size(); ++a)
      if (image_[a] == target_->identity()) out.push_back(a);
    return out;
  }
  std::vector<Element> imageSet() const {
    std::set<Element> s(image_.begin(), image_.end());
    return {s.begin(), s.end()};
  }
  bool isInjective() const { return kernel().size() == 1; }
  bool isSurjective() const { return imageSet().size() == target_->order(); }

  /// this ∘ first
  GroupHom after(const GroupHom& first) const {
    if (first.target_->order() != source_->order()) throw ValidationError("cannot compose homomorphisms");
    std::vector<Element> img(first.source_->order());
    for (Element a = 0; a < img.size(); ++a) img[a] = image_[first(a)];
    return GroupHom(first.source_, target_, std::move(img));
  }

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> image_;
};

}  // namespace gbdual
