#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gbdual/groups.hpp"
#include "gbdual/smith.hpp"

namespace gbdual {

using AbElement = std::vector<std::int64_t>;

/// Finite abelian group Z/m_0 x ... x Z/m_{k-1} in invariant-factor form
/// (every m_i >= 2, m_i | m_{i+1}). The trivial group has no factors.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::int64_t> invariantFactors) : factors_(std::move(invariantFactors)) {
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      if (factors_[k] < 2) throw ValidationError("invariant factors must be at least 2");
      if (k > 0 && factors_[k] % factors_[k - 1] != 0) throw ValidationError("invariant factors must form a divisibility chain");
    }
  }

  const std::vector<std::int64_t>& invariantFactors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::size_t order() const {
    std::size_t n = 1;
    for (auto m : factors_) n *= static_cast<std::size_t>(m);
    return n;
  }
  bool isTrivial() const { return factors_.empty(); }

  AbElement zero() const { return AbElement(factors_.size(), 0); }
  AbElement reduce(AbElement x) const {
    if (x.size() != factors_.size()) throw ValidationError("abelian group element has wrong length");
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = floorMod(x[k], factors_[k]);
    return x;
  }
  AbElement add(const AbElement& a, const AbElement& b) const {
    AbElement out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = (a[k] + b[k]) % factors_[k];
    return out;
  }
  AbElement negate(const AbElement& a) const {
    AbElement out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = floorMod(-a[k], factors_[k]);
    return out;
  }
  AbElement subtract(const AbElement& a, const AbElement& b) const { return add(a, negate(b)); }

  /// Mixed-radix index, component 0 least significant.
  std::size_t index(const AbElement& x) const {
    std::size_t idx = 0, scale = 1;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      idx += static_cast<std::size_t>(floorMod(x[k], factors_[k])) * scale;
      scale *= static_cast<std::size_t>(factors_[k]);
    }
    return idx;
  }
  AbElement element(std::size_t idx) const {
    AbElement out(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      out[k] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(factors_[k]));
      idx /= static_cast<std::size_t>(factors_[k]);
    }
    return out;
  }

  /// The group as a multiplication table indexed by `index`.
  GroupPtr makeTable() const {
    const std::size_t n = order();
    std::vector<std::vector<Element>> mult(n, std::vector<Element>(n));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back(format(element(a)));
      for (std::size_t b = 0; b < n; ++b) mult[a][b] = index(add(element(a), element(b)));
    }
    return std::make_shared<const GroupTable>(GroupTable::fromTable(std::move(mult), std::move(labels), std::max(n, kDefaultOrderCap)));
  }

  /// "Z2xZ4"; the trivial group prints as "0".
  std::string name() const {
    if (factors_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < factors_.size(); ++k) out += (k ? "xZ" : "Z") + std::to_string(factors_[k]);
    return out;
  }

  static std::string format(const AbElement& x) {
    std::string out = "(";
    for (std::size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + std::to_string(x[k]);
    return out + ")";
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.factors_ == b.factors_; }

  /// Invariant-factor form of a product of cyclic groups, together with the
  /// coordinate change from the given cyclic coordinates.
  static std::pair<AbelianGroup, QuotientPresentation> normalize(const std::vector<Integer>& cyclicOrders) {
    Matrix<Integer> rel(cyclicOrders.size(), cyclicOrders.size());
    for (std::size_t k = 0; k < cyclicOrders.size(); ++k) rel(k, k) = cyclicOrders[k];
    QuotientPresentation p = presentQuotient(rel);
    std::vector<std::int64_t> f;
    for (const auto& x : p.factors) {
      if (x == 0) throw ValidationError("normalize: infinite cyclic factor");
      f.push_back(toInt64(x));
    }
    return {AbelianGroup(std::move(f)), std::move(p)};
  }

 private:
  std::vector<std::int64_t> factors_;
};

/// Homomorphism between finite abelian groups, stored by the images of the
/// invariant-factor generators.
class AbelianHom {
 public:
  AbelianHom() = default;
  AbelianHom(AbelianGroup source, AbelianGroup target, std::vector<AbElement> generatorImages)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(generatorImages)) {
    if (images_.size() != source_.rank()) throw ValidationError("abelian hom needs one image per generator");
    for (auto& im : images_) im = target_.reduce(im);
    // Well-definedness: m_k * image_k = 0.
    for (std::size_t k = 0; k < images_.size(); ++k) {
      AbElement scaled = images_[k];
      for (auto& x : scaled) x *= source_.invariantFactors()[k];
      if (target_.reduce(scaled) != target_.zero()) throw ValidationError("abelian hom is not well defined");
    }
  }

  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& target() const { return target_; }
  const std::vector<AbElement>& generatorImages() const { return images_; }

  AbElement operator()(const AbElement& x) const {
    AbElement out = target_.zero();
    for (std::size_t k = 0; k < x.size(); ++k)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[k] * images_[k][j];
    return target_.reduce(out);
  }

 private:
  AbelianGroup source_;
  AbelianGroup target_;
  std::vector<AbElement> images_;
};

/// L_ab = L/[L,L] with the projection of every element of L.
struct Abelianization {
  GroupPtr source;
  AbelianGroup group;
  std::vector<AbElement> projection;  // one per source element
  GroupPtr table;                     // `group` as a table
  GroupHom toTable;                   // source -> table

  /// Some element of the source mapping onto `x`.
  Element preimage(const AbElement& x) const {
    const AbElement r = group.reduce(x);
    for (Element a = 0; a < projection.size(); ++a)
      if (projection[a] == r) return a;
    throw InvariantViolation("abelianization projection is not surjective");
  }
};

/// Commutator subgroup, quotient by coset enumeration, then Smith normal form
/// on the relative-order presentation of the quotient.
inline Abelianization abelianize(const GroupPtr& g) {
  const std::vector<Element> comm = commutatorSubgroup(*g);
  std::size_t k = 0;
  const std::vector<std::size_t> coset = cosetIds(*g, comm, &k);
  std::vector<Element> rep(k, g->order());
  for (Element a = 0; a < g->order(); ++a)
    if (rep[coset[a]] == g->order()) rep[coset[a]] = a;
  auto qmul = [&](std::size_t x, std::size_t y) { return coset[g->mul(rep[x], rep[y])]; };
  const std::size_t qid = coset[g->identity()];

  // Greedy polycyclic generators with relative orders; coords[x] expresses
  // quotient element x in the generators found so far.
  std::vector<std::size_t> gens;
  std::vector<std::vector<Integer>> coords(k);
  std::vector<bool> inSpan(k, false);
  std::vector<std::size_t> span{qid};
  inSpan[qid] = true;
  coords[qid] = {};
  std::vector<std::vector<Integer>> relations;  // columns, padded later
  for (std::size_t x = 0; x < k; ++x) {
    if (inSpan[x]) continue;
    const std::size_t genPos = gens.size();
    gens.push_back(x);
    for (auto s : span) coords[s].push_back(0);
    // relative order
    std::size_t n = 1;
    std::size_t px = x;
    while (!inSpan[px]) {
      px = qmul(px, x);
      ++n;
    }
    std::vector<Integer> rel = coords[px];
    for (auto& c : rel) c = -c;
    rel[genPos] += static_cast<long>(n);
    relations.push_back(std::move(rel));
    std::vector<std::size_t> grown;
    for (auto s : span) {
      std::size_t cur = s;
      for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
          inSpan[cur] = true;
          coords[cur] = coords[s];
          coords[cur][genPos] = static_cast<long>(j);
        }
        grown.push_back(cur);
        cur = qmul(cur, x);
      }
    }
    span = std::move(grown);
  }
  const std::size_t ngen = gens.size();
  Matrix<Integer> relMat(ngen, relations.size());
  for (std::size_t c = 0; c < relations.size(); ++c)
    for (std::size_t r = 0; r < relations[c].size(); ++r) relMat(r, c) = relations[c][r];
  const QuotientPresentation pres = presentQuotient(relMat);
  std::vector<std::int64_t> factors;
  for (const auto& f : pres.factors) factors.push_back(toInt64(f));

  Abelianization out;
  out.source = g;
  out.group = AbelianGroup(factors);
  out.projection.resize(g->order());
  for (Element a = 0; a < g->order(); ++a) {
    std::vector<Integer> c = coords[coset[a]];
    c.resize(ngen, Integer(0));
    std::vector<Integer> y = pres.coordinates(c);
    AbElement e(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) e[j] = toInt64(y[j]);
    out.projection[a] = e;
  }
  out.table = out.group.makeTable();
  std::vector<Element> img(g->order());
  for (Element a = 0; a < g->order(); ++a) img[a] = out.group.index(out.projection[a]);
  out.toTable = GroupHom(g, out.table, std::move(img));
  return out;
}

/// The homomorphism L_ab -> L'_ab induced by phi : L -> L'.
inline AbelianHom inducedHom(const GroupHom& phi, const Abelianization& src, const Abelianization& tgt) {
  std::vector<AbElement> images;
  for (std::size_t k = 0; k < src.group.rank(); ++k) {
    AbElement unit = src.group.zero();
    unit[k] = 1;
    images.push_back(tgt.projection[phi(src.preimage(unit))]);
  }
  AbelianHom h(src.group, tgt.group, std::move(images));
  for (Element a = 0; a < phi.source()->order(); ++a)
    if (h(src.projection[a]) != tgt.projection[phi(a)]) throw InvariantViolation("induced abelian hom does not commute");
  return h;
}

}  // namespace gbdual
