#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gbdual/errors.hpp"
#include "gbdual/matrix.hpp"
#include "gbdual/numeric.hpp"
#include "gbdual/smith.hpp"

namespace gbdual {

using Simplex = std::vector<std::size_t>;

inline constexpr std::size_t kMaxSimplexDim = 3;

inline std::string simplexName(const Simplex& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "-" : "") + std::to_string(s[k]);
  return out;
}

/// Finite simplicial complex on vertices 0..n-1, simplices up to dimension 3,
/// each stored as a sorted vertex tuple. Simplices of each dimension are kept
/// in lexicographic order; that order fixes cochain coordinates.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Adds every face of every facet.
  static SimplicialComplex fromFacets(std::size_t vertexCount, const std::vector<Simplex>& facets) {
    std::set<Simplex> all;
    for (auto f : facets) {
      f = normalized(f, vertexCount);
      const std::size_t k = f.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        Simplex face;
        for (std::size_t b = 0; b < k; ++b)
          if (mask & (std::size_t{1} << b)) face.push_back(f[b]);
        all.insert(face);
      }
    }
    return build(vertexCount, all);
  }

  /// Takes the simplices as given; every face must be present.
  static SimplicialComplex fromSimplices(std::size_t vertexCount, const std::vector<Simplex>& simplices) {
    std::set<Simplex> all;
    for (auto s : simplices) all.insert(normalized(s, vertexCount));
    for (const auto& s : all) {
      if (s.size() < 2) continue;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face;
        for (std::size_t b = 0; b < s.size(); ++b)
          if (b != drop) face.push_back(s[b]);
        if (!all.count(face)) throw MissingFace(s, face);
      }
    }
    return build(vertexCount, all);
  }

  std::size_t vertexCount() const { return n_; }
  std::size_t dimension() const {
    std::size_t d = 0;
    for (std::size_t k = 0; k <= kMaxSimplexDim; ++k)
      if (!simplices_[k].empty()) d = k;
    return d;
  }
  const std::vector<Simplex>& simplices(std::size_t dim) const {
    static const std::vector<Simplex> none;
    return dim <= kMaxSimplexDim ? simplices_[dim] : none;
  }
  std::size_t count(std::size_t dim) const { return simplices(dim).size(); }
  const std::vector<Simplex>& edges() const { return simplices_[1]; }
  const std::vector<Simplex>& triangles() const { return simplices_[2]; }

  /// Position of a simplex (any vertex order) in its dimension's list.
  std::optional<std::size_t> find(Simplex s) const {
    std::sort(s.begin(), s.end());
    if (s.empty() || s.size() > kMaxSimplexDim + 1) return std::nullopt;
    auto it = index_[s.size() - 1].find(s);
    if (it == index_[s.size() - 1].end()) return std::nullopt;
    return it->second;
  }
  std::size_t indexOf(const Simplex& s) const {
    auto k = find(s);
    if (!k) throw ValidationError("complex has no simplex " + simplexName(s));
    return *k;
  }

  /// Connected components, each a sorted vertex list; ordered by smallest vertex.
  std::vector<std::vector<std::size_t>> components() const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : simplices_[1]) {
      auto a = root(e[0]), b = root(e[1]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < n_; ++v) groups[root(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, vs] : groups) out.push_back(std::move(vs));
    return out;
  }

  /// Integer matrix of delta : C^k -> C^{k+1}, rows indexed by (k+1)-simplices.
  /// (delta f)(v_0..v_{k+1}) = sum_i (-1)^i f(v_0..^v_i..v_{k+1}).
  Matrix<Integer> coboundary(std::size_t k) const {
    Matrix<Integer> out(count(k + 1), count(k));
    for (std::size_t r = 0; r < count(k + 1); ++r) {
      const Simplex& s = simplices_[k + 1][r];
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face;
        for (std::size_t b = 0; b < s.size(); ++b)
          if (b != drop) face.push_back(s[b]);
        out(r, indexOf(face)) += (drop % 2 == 0) ? 1 : -1;
      }
    }
    return out;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.n_ == b.n_ && a.simplices_ == b.simplices_;
  }

 private:
  static Simplex normalized(Simplex s, std::size_t n) {
    if (s.empty()) throw ValidationError("empty simplex");
    if (s.size() > kMaxSimplexDim + 1) throw ValidationError("simplex " + simplexName(s) + " exceeds dimension 3");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("simplex " + simplexName(s) + " repeats a vertex");
    if (s.back() >= n) throw ValidationError("simplex " + simplexName(s) + " uses a vertex outside 0.." + std::to_string(n - 1));
    return s;
  }

  static SimplicialComplex build(std::size_t n, const std::set<Simplex>& all) {
    SimplicialComplex c;
    c.n_ = n;
    for (const auto& s : all) c.simplices_[s.size() - 1].push_back(s);
    std::vector<bool> seen(n, false);
    for (const auto& v : c.simplices_[0]) seen[v[0]] = true;
    for (std::size_t v = 0; v < n; ++v)
      if (!seen[v]) throw ValidationError("vertex " + std::to_string(v) + " does not appear in the complex");
    for (std::size_t k = 0; k <= kMaxSimplexDim; ++k)
      for (std::size_t j = 0; j < c.simplices_[k].size(); ++j) c.index_[k][c.simplices_[k][j]] = j;
    return c;
  }

  std::size_t n_ = 0;
  std::array<std::vector<Simplex>, kMaxSimplexDim + 1> simplices_;
  std::array<std::map<Simplex, std::size_t>, kMaxSimplexDim + 1> index_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Integral homology group H_k = Z^free ⊕ torsion.
struct HomologyGroup {
  std::size_t freeRank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

/// H_0..H_dim with integer coefficients, via Smith normal form of the
/// boundary maps.
inline std::vector<HomologyGroup> integralHomology(const SimplicialComplex& c) {
  const std::size_t top = c.dimension();
  std::vector<std::size_t> rankBoundary(top + 2, 0);  // rank of d_k : C_k -> C_{k-1}
  std::vector<std::vector<Integer>> torsionOf(top + 2);
  for (std::size_t k = 1; k <= top; ++k) {
    const SmithForm snf = smithForm(transpose(c.coboundary(k - 1)));
    rankBoundary[k] = snf.rank;
    for (std::size_t j = 0; j < snf.rank; ++j)
      if (snf.diagonal(j) > 1) torsionOf[k - 1].push_back(snf.diagonal(j));
  }
  std::vector<HomologyGroup> out(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    out[k].freeRank = c.count(k) - rankBoundary[k] - rankBoundary[k + 1];
    out[k].torsion = torsionOf[k];
  }
  return out;
}

/// Standard fixtures.
namespace complexes {

inline SimplicialComplex point() { return SimplicialComplex::fromFacets(1, {{0}}); }

inline SimplicialComplex circle() { return SimplicialComplex::fromFacets(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline SimplicialComplex sphere() {
  return SimplicialComplex::fromFacets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

/// Six-vertex real projective plane.
inline SimplicialComplex projectivePlane() {
  return SimplicialComplex::fromFacets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                           {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

/// Seven-vertex torus.
inline SimplicialComplex torus() {
  return SimplicialComplex::fromFacets(7, {{0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {0, 2, 6}, {0, 4, 5}, {0, 4, 6}, {1, 2, 4},
                                           {1, 2, 6}, {1, 3, 4}, {1, 5, 6}, {2, 3, 5}, {2, 4, 5}, {3, 4, 6}, {3, 5, 6}});
}

}  // namespace complexes

}  // namespace gbdual
