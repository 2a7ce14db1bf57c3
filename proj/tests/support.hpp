#pragma once

#include <memory>
#include <random>
#include <set>
#include <vector>

#include "gbdual/cochain.hpp"
#include "gbdual/cuntz.hpp"
#include "gbdual/extension.hpp"
#include "gbdual/intertwiners.hpp"

namespace gbdual::testing {

inline GroupPtr share(GroupTable g) { return std::make_shared<const GroupTable>(std::move(g)); }

inline GroupPtr cyclic(std::size_t n) {
  std::vector<std::size_t> shift(n);
  for (std::size_t k = 0; k < n; ++k) shift[k] = (k + 1) % n;
  return share(GroupTable::fromPermutations({shift}));
}

inline GroupPtr s3() { return share(GroupTable::fromPermutations({{1, 2, 0}, {1, 0, 2}})); }

// Unit quaternions ±1, ±i, ±j, ±k as (sign, unit) with unit 0..3 = 1,i,j,k.
inline GroupPtr q8() {
  using Q = std::pair<int, int>;
  auto mul = [](const Q& a, const Q& b) {
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return Q{a.first * b.first * sign[a.second][b.second], unit[a.second][b.second]};
  };
  auto [g, elems] = GroupTable::close<Q>({1, 0}, {{1, 1}, {1, 2}}, mul, [](const Q& q) { return q; }, 100);
  return share(std::move(g));
}

// Brute-force oracle: |G / [G,G]| from the set of all products of commutators.
inline std::size_t abelianizationOrder(const GroupTable& g) {
  std::set<Element> span{g.identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        for (auto x : std::vector<Element>(span.begin(), span.end()))
          if (span.insert(g.mul(x, g.commutator(a, b))).second) grew = true;
  }
  return g.order() / span.size();
}

// Rank over GF(p) by plain Gaussian elimination.
inline std::size_t rankModP(const Matrix<Integer>& m, long p) {
  std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = ((m(i, j) % p + p) % p).convert_to<long>();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    long inv = 1;
    while (a[rank][c] * inv % p != 1) ++inv;
    for (auto& x : a[rank]) x = x * inv % p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const long f = a[i][c];
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline std::size_t h2DimensionModP(const SimplicialComplex& c, long p) {
  return c.count(2) - rankModP(c.coboundary(2), p) - rankModP(c.coboundary(1), p);
}

inline ComplexPtr shareComplex(SimplicialComplex c) { return std::make_shared<const SimplicialComplex>(std::move(c)); }

// 1 -> Z2 -> Z4 -> Z2 -> 1 with Z4 = <shift>, element k = shift^k.
inline Extension z2z4() {
  auto z4 = cyclic(4);
  return makeExtension(z4, {0, 2});
}

// Generator of H^1(RP^2; Z2) on the six-vertex triangulation, edges in
// lexicographic order (0-1, 0-2, ..., 4-5).
inline std::vector<Element> rp2GeneratorValues() { return {0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0}; }

// w in the F_p column span of m?
inline bool inSpanModP(const Matrix<Integer>& m, const std::vector<Integer>& w, long p) {
  Matrix<Integer> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = w[i];
  }
  return rankModP(aug, p) == rankModP(m, p);
}

inline CMatrix mat(std::size_t n, std::vector<Cyclotomic> entries) { return CMatrix::fromFlat(n, n, std::move(entries)); }

inline Cyclotomic z(unsigned n, std::int64_t k = 1) { return Cyclotomic::zeta(n, k); }

// A finite G inside a finite ambient group of unitaries that normalizes it.
struct Sample {
  std::string name;
  UnitaryRep ambient;
  std::vector<Element> sub;  // G inside the ambient group

  NormalizerSetting setting() const { return normalizerSetting(ambient, sub); }
  UnitaryRep gRep() const { return setting().gRep; }
};

inline Sample makeSample(std::string name, std::size_t d, const std::vector<CMatrix>& gGens,
                         const std::vector<CMatrix>& extra) {
  std::vector<CMatrix> all = gGens;
  all.insert(all.end(), extra.begin(), extra.end());
  UnitaryRep ambient = UnitaryRep::fromGenerators(d, 1, all);
  std::vector<Element> gens;
  for (const auto& m : gGens) gens.push_back(*ambient.find(m));
  std::vector<Element> sub = generatedSubgroup(*ambient.group(), gens);
  return {std::move(name), std::move(ambient), std::move(sub)};
}

inline Sample sampleTrivial() {
  return makeSample("trivial", 2, {}, {mat(2, {1, 0, 0, -1}), mat(2, {0, 1, 1, 0})});
}
inline Sample sampleZ2() { return makeSample("Z2", 1, {mat(1, {-1})}, {mat(1, {z(4)})}); }
inline Sample sampleZ3() { return makeSample("Z3", 1, {mat(1, {z(3)})}, {mat(1, {z(6)})}); }
inline Sample sampleZ4() { return makeSample("Z4", 1, {mat(1, {z(4)})}, {mat(1, {z(8)})}); }
inline Sample sampleS3() {
  return makeSample("S3", 2, {mat(2, {z(3), 0, 0, z(3, 2)}), mat(2, {0, 1, 1, 0})}, {mat(2, {z(3), 0, 0, 1})});
}
inline Sample sampleQ8() {
  return makeSample("Q8", 2, {mat(2, {z(4), 0, 0, -z(4)}), mat(2, {0, 1, -1, 0})}, {mat(2, {1, 0, 0, z(4)})});
}
inline std::vector<Sample> allSamples() {
  return {sampleTrivial(), sampleZ2(), sampleZ3(), sampleZ4(), sampleS3(), sampleQ8()};
}

// Up to `terms` random monomials of degree (s, r) with coefficients a + b i.
template <class Rng>
CuntzElement randomGraded(std::size_t d, std::size_t s, std::size_t r, Rng& rng, std::size_t terms = 4) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::size_t> row(0, ipow(d, s) - 1), col(0, ipow(d, r) - 1);
  CuntzElement out(d);
  for (std::size_t k = 0; k < terms; ++k)
    out.add(wordAt(row(rng), d, s), wordAt(col(rng), d, r), Cyclotomic(coeff(rng)) + Cyclotomic(coeff(rng)) * z(4));
  return out;
}

// (1/sqrt 2) [[1, 1], [1, -1]] with sqrt 2 = z8 + z8^-1.
inline CMatrix hadamard() {
  const Cyclotomic h = (z(8) + z(8, -1)) * Cyclotomic(Rational(1, 2));
  return mat(2, {h, h, h, -h});
}

// Z4 = <i> in U(1) over G = {1, -1}, with the extension of z2z4().
inline NormalizerSetting z2z4Setting() {
  const Extension e = z2z4();
  std::vector<CMatrix> ms;
  for (Element k = 0; k < 4; ++k) ms.push_back(mat(1, {z(4, static_cast<std::int64_t>(k))}));
  return settingFromExtension(e, UnitaryRep(e.N, 1, 4, ms));
}

// Rotations diag(w, w^2) normalized by the swap: Q = Z2 exchanges w and w^2.
inline Sample sampleZ3InS3() { return makeSample("Z3<S3", 2, {mat(2, {z(3), 0, 0, z(3, 2)})}, {mat(2, {0, 1, 1, 0})}); }

}  // namespace gbdual::testing
