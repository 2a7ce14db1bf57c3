#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gbdual/abelian.hpp"
#include "gbdual/groups.hpp"

namespace gbdual {

/// 1 -> G -i-> N -p-> Q -> 1 together with a set-theoretic section s : Q -> N.
struct Extension {
  GroupPtr G, N, Q;
  GroupHom i, p;
  std::vector<Element> section;

  /// Elements of N lying in the image of i, sorted.
  std::vector<Element> normalSubgroup() const {
    std::set<Element> s(i.image().begin(), i.image().end());
    return {s.begin(), s.end()};
  }

  /// Checks injectivity, surjectivity, exactness and the section.
  void validate() const {
    if (!i.isInjective()) throw ValidationError("extension: i is not injective");
    if (!p.isSurjective()) throw ValidationError("extension: p is not surjective");
    if (normalSubgroup() != p.kernel()) throw ValidationError("extension: image(i) != kernel(p)");
    if (section.size() != Q->order()) throw ValidationError("extension: section has wrong length");
    for (Element q = 0; q < Q->order(); ++q) {
      if (section[q] >= N->order()) throw ValidationError("extension: section entry out of range");
      if (p(section[q]) != q) throw ValidationError("extension: p(s(q)) != q at q=" + std::to_string(q));
    }
    if (section[Q->identity()] != N->identity()) throw ValidationError("extension: s(1) must be the identity");
  }

  static Extension fromParts(GroupHom i, GroupHom p, std::vector<Element> section) {
    Extension e;
    e.G = i.source();
    e.N = i.target();
    e.Q = p.target();
    if (p.source()->order() != e.N->order() || !(*p.source() == *e.N))
      throw ValidationError("extension: i and p do not share the middle group");
    e.i = std::move(i);
    e.p = std::move(p);
    e.section = std::move(section);
    e.validate();
    return e;
  }

  Extension withSection(std::vector<Element> s) const {
    Extension e = *this;
    e.section = std::move(s);
    e.validate();
    return e;
  }

  /// The element of G mapping to n, which must lie in image(i).
  Element preimageInG(Element n) const {
    for (Element g = 0; g < G->order(); ++g)
      if (i(g) == n) return g;
    throw ValidationError("element is not in the image of i");
  }
};

/// N/G by coset enumeration. G gets the table of the sorted subset, Q the
/// cosets ordered by smallest member, s the smallest member of each coset.
inline Extension makeExtension(const GroupPtr& N, const std::vector<Element>& sub) {
  requireSubgroup(*N, sub);
  if (!isNormal(*N, sub)) throw ValidationError("subgroup is not normal");
  std::vector<Element> sorted(sub.begin(), sub.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto G = std::make_shared<const GroupTable>(subgroupTable(*N, sorted));

  std::size_t k = 0;
  const std::vector<std::size_t> coset = cosetIds(*N, sorted, &k);
  std::vector<Element> rep(k, N->order());
  for (Element a = 0; a < N->order(); ++a)
    if (rep[coset[a]] == N->order()) rep[coset[a]] = a;
  rep[coset[N->identity()]] = N->identity();
  std::vector<std::vector<Element>> mult(k, std::vector<Element>(k));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < k; ++x) {
    labels.push_back("[" + N->label(rep[x]) + "]");
    for (std::size_t y = 0; y < k; ++y) mult[x][y] = coset[N->mul(rep[x], rep[y])];
  }
  auto Q = std::make_shared<const GroupTable>(GroupTable::fromTable(std::move(mult), std::move(labels), std::max(k, kDefaultOrderCap)));

  Extension e;
  e.G = G;
  e.N = N;
  e.Q = Q;
  e.i = GroupHom(G, N, sorted);
  e.p = GroupHom(N, Q, std::vector<Element>(coset.begin(), coset.end()));
  e.section = rep;
  e.validate();
  return e;
}

/// Bottom row 0 -> G_ab -> N_ab -> Q_ab -> 0 of the abelianized diagram,
/// with a set-theoretic section of p_ab.
struct AbelianizedExtension {
  Abelianization Gab, Nab, Qab;
  AbelianHom iab, pab;
  std::vector<AbElement> pabSection;  // indexed by Qab.group.index

  AbElement liftThroughPab(const AbElement& q) const { return pabSection[Qab.group.index(q)]; }

  /// Inverse of iab on its image.
  AbElement preimageUnderIab(const AbElement& n) const {
    const AbElement r = Nab.group.reduce(n);
    for (std::size_t k = 0; k < Gab.group.order(); ++k) {
      AbElement g = Gab.group.element(k);
      if (iab(g) == r) return g;
    }
    throw InvariantViolation("element of N_ab is not in the image of i_ab");
  }

  /// Replaces the section of p_ab; checked.
  AbelianizedExtension withPabSection(std::vector<AbElement> s) const {
    if (s.size() != Qab.group.order()) throw ValidationError("p_ab section has wrong length");
    AbelianizedExtension out = *this;
    for (std::size_t q = 0; q < s.size(); ++q) {
      s[q] = Nab.group.reduce(s[q]);
      if (pab(s[q]) != Qab.group.element(q)) throw ValidationError("p_ab section does not split p_ab");
    }
    out.pabSection = std::move(s);
    return out;
  }
};

/// Abelianizes all three groups, induces i_ab and p_ab, and verifies that the
/// bottom row is exact.
inline AbelianizedExtension abelianizedRow(const Extension& e) {
  AbelianizedExtension row;
  row.Gab = abelianize(e.G);
  row.Nab = abelianize(e.N);
  row.Qab = abelianize(e.Q);
  row.iab = inducedHom(e.i, row.Gab, row.Nab);
  row.pab = inducedHom(e.p, row.Nab, row.Qab);

  const AbelianGroup& A = row.Gab.group;
  const AbelianGroup& B = row.Nab.group;
  const AbelianGroup& C = row.Qab.group;
  std::set<std::size_t> imageI;
  for (std::size_t k = 0; k < A.order(); ++k) imageI.insert(B.index(row.iab(A.element(k))));
  if (imageI.size() != A.order())
    throw ExactnessFailure("iab-noninjective", "i_ab : " + A.name() + " -> " + B.name() + " has image of order " +
                                                   std::to_string(imageI.size()));
  std::set<std::size_t> imageP, kernelP;
  row.pabSection.assign(C.order(), AbElement{});
  std::vector<bool> haveSection(C.order(), false);
  for (std::size_t k = 0; k < B.order(); ++k) {
    const AbElement n = B.element(k);
    const std::size_t q = C.index(row.pab(n));
    imageP.insert(q);
    if (q == 0) kernelP.insert(k);
    if (!haveSection[q]) {
      haveSection[q] = true;
      row.pabSection[q] = n;
    }
  }
  if (imageP.size() != C.order())
    throw ExactnessFailure("pab-nonsurjective", "p_ab : " + B.name() + " -> " + C.name() + " misses " +
                                                    std::to_string(C.order() - imageP.size()) + " elements");
  if (imageI != kernelP)
    throw ExactnessFailure("image-neq-kernel", "image(i_ab) has order " + std::to_string(imageI.size()) +
                                                   ", kernel(p_ab) has order " + std::to_string(kernelP.size()));
  return row;
}

}  // namespace gbdual
