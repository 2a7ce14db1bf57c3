#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gbdual/cohomology.hpp"
#include "gbdual/intertwiners.hpp"

namespace gbdual {

using Degree = std::pair<std::size_t, std::size_t>;  // (r, s)

inline std::string degreeName(const Degree& rs) {
  return "(" + std::to_string(rs.first) + "," + std::to_string(rs.second) + ")";
}

/// Intertwiner bundle (H^r, H^s)_G twisted by q: the fibre basis, the
/// Q-action in its coordinates and the transition matrix on every edge.
struct TransitionFamily {
  IntertwinerBasis basis;
  std::vector<CMatrix> qAction;     // per element of Q
  std::vector<CMatrix> transitions; // per edge, indexed like complex->edges()
};

struct SpecialCategory {
  ComplexPtr complex;
  NormalizerSetting setting;
  Cocycle1 q;
  std::size_t rsBound = 0;
  std::map<Degree, TransitionFamily> families;
  /// epsilon_{r,s} in every local chart; it is the flip theta_{r,s}.
  std::map<Degree, CMatrix> symmetry;
  /// G inside SU(d), the hypothesis under which the duality theorem is stated.
  bool specialUnitary = false;

  const Extension& extension() const { return setting.extension; }
  const TransitionFamily& family(std::size_t r, std::size_t s) const {
    auto it = families.find({r, s});
    if (it == families.end())
      throw ValidationError("degree " + degreeName({r, s}) + " is outside the bound r+s <= " + std::to_string(rsBound));
    return it->second;
  }
  /// y^{r,s}_{ij} for any ordered pair of adjacent vertices.
  CMatrix transition(std::size_t r, std::size_t s, std::size_t i, std::size_t j) const {
    const auto& f = family(r, s);
    return f.qAction[q.value(i, j)];
  }
};

namespace detail {

/// theta_{r,s} permutes tensor positions: digit k of the target is digit
/// rho(k) of the source. Returns false if it does not.
inline bool isPositionPermutation(const CMatrix& theta, std::size_t d, std::size_t r, std::size_t s) {
  const std::size_t n = r + s, size = ipow(d, n);
  if (theta.rows() != size || theta.cols() != size) return false;
  // rho from the flip rule: (a, b) -> (b, a)
  std::vector<std::size_t> rho(n);
  for (std::size_t k = 0; k < s; ++k) rho[k] = r + k;
  for (std::size_t k = 0; k < r; ++k) rho[s + k] = k;
  for (std::size_t x = 0; x < size; ++x) {
    std::vector<std::size_t> src(n);
    for (std::size_t k = n, rest = x; k-- > 0; rest /= d) src[k] = rest % d;
    std::size_t y = 0;
    for (std::size_t k = 0; k < n; ++k) y = y * d + src[rho[k]];
    for (std::size_t row = 0; row < size; ++row) {
      const bool one = theta(row, x) == Cyclotomic(1);
      if (row == y ? !one : !theta(row, x).isZero()) return false;
    }
  }
  return true;
}

/// u^{⊗n} theta = theta u^{⊗n}, entry by entry without forming u^{⊗n}.
inline bool commutesWithTensorPower(const CMatrix& u, const CMatrix& theta, std::size_t n) {
  const std::size_t d = u.rows(), size = ipow(d, n);
  std::vector<std::size_t> perm(size);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      if (!theta(y, x).isZero()) perm[x] = y;
  auto entry = [&](std::size_t a, std::size_t b) {
    Cyclotomic acc(1);
    for (std::size_t k = 0; k < n; ++k) {
      acc *= u(a % d, b % d);
      if (acc.isZero()) return acc;
      a /= d;
      b /= d;
    }
    return acc;
  };
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      if (!(entry(perm[a], perm[b]) == entry(a, b))) return false;
  return true;
}

inline std::vector<Cyclotomic> apply(const CMatrix& m, const std::vector<Cyclotomic>& x) {
  std::vector<Cyclotomic> out(m.rows(), Cyclotomic(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!x[j].isZero() && !m(i, j).isZero()) out[i] += m(i, j) * x[j];
  return out;
}

}  // namespace detail

/// Builds TQ up to r+s <= rsBound and verifies the cocycle identity on every
/// triangle, Hilbert-Schmidt unitarity, tensor compatibility and symmetry
/// gluing.
inline SpecialCategory buildSpecialCategory(ComplexPtr complex, NormalizerSetting setting, Cocycle1 q, std::size_t rsBound,
                                            std::size_t cap = kMaxIntertwinerSize) {
  if (!(*q.complex == *complex)) throw ValidationError("cocycle lives on a different complex");
  if (!(*q.group == *setting.extension.Q)) throw ValidationError("cocycle does not take values in Q = N/G");
  SpecialCategory sc{complex, std::move(setting), std::move(q), rsBound, {}, {}, false};
  const auto& st = sc.setting;
  const auto& Q = *st.extension.Q;
  const std::size_t d = st.gRep.dimension();
  for (std::size_t r = 0; r <= rsBound; ++r) requireIntertwinerSize(d, r, rsBound - r, cap);

  sc.specialUnitary = true;
  for (Element g = 0; g < st.gRep.group()->order(); ++g)
    if (!(determinant(st.gRep.matrix(g)) == Cyclotomic(1))) sc.specialUnitary = false;

  // Q-elements actually used on edges
  std::set<Element> used(sc.q.values.begin(), sc.q.values.end());
  used.insert(Q.identity());

  for (std::size_t n = 0; n <= rsBound; ++n)
    for (std::size_t r = 0; r <= n; ++r) {
      const std::size_t s = n - r;
      TransitionFamily f;
      f.basis = intertwiners(st.gRep, r, s, cap);
      f.qAction = qgActionMatrices(st, f.basis);
      const CMatrix gram = gramMatrix(f.basis);
      for (Element a = 0; a < Q.order(); ++a) {
        if (!isGramUnitary(f.qAction[a], gram))
          throw InvariantViolation("transition for " + Q.label(a) + " on " + degreeName({r, s}) + " is not unitary");
        for (Element b = 0; b < Q.order(); ++b)
          if (!(f.qAction[a] * f.qAction[b] == f.qAction[Q.mul(a, b)]))
            throw InvariantViolation("Q-action on " + degreeName({r, s}) + " is not multiplicative");
      }
      for (auto v : sc.q.values) f.transitions.push_back(f.qAction[v]);
      for (const auto& t : complex->triangles()) {
        const auto& T01 = f.transitions[complex->indexOf({t[0], t[1]})];
        const auto& T12 = f.transitions[complex->indexOf({t[1], t[2]})];
        const auto& T02 = f.transitions[complex->indexOf({t[0], t[2]})];
        if (!(T01 * T12 == T02))
          throw InvariantViolation("cocycle identity fails for " + degreeName({r, s}) + " on triangle " + simplexName(t));
      }
      sc.families.emplace(Degree{r, s}, std::move(f));
    }

  // y^{r+r',s+s'}(t ⊗ t') = y^{r,s}(t) ⊗ y^{r',s'}(t')
  for (const auto& [rs, f] : sc.families)
    for (const auto& [rs2, f2] : sc.families) {
      const Degree sum{rs.first + rs2.first, rs.second + rs2.second};
      auto big = sc.families.find(sum);
      if (big == sc.families.end()) continue;
      for (auto a : used)
        for (std::size_t k = 0; k < f.basis.dimension(); ++k)
          for (std::size_t l = 0; l < f2.basis.dimension(); ++l) {
            const CMatrix lhs = big->second.basis.combine(
                detail::apply(big->second.qAction[a], big->second.basis.coordinates(kron(f.basis.basis[k], f2.basis.basis[l]))));
            const CMatrix rhs = kron(f.basis.combine(f.qAction[a].column(k)), f2.basis.combine(f2.qAction[a].column(l)));
            if (!(lhs == rhs))
              throw InvariantViolation("tensor compatibility fails for " + degreeName(rs) + " ⊗ " + degreeName(rs2) + " at " +
                                       Q.label(a));
          }
    }

  // symmetry: epsilon = theta in every chart, glued by every transition
  for (const auto& [rs, f] : sc.families) {
    const auto [r, s] = rs;
    CMatrix theta = flip(d, r, s);
    if (!detail::isPositionPermutation(theta, d, r, s))
      throw InvariantViolation("flip " + degreeName(rs) + " is not a permutation of tensor positions");
    if (ipow(d, 2 * (r + s)) <= 4096)
      for (auto a : used)
        if (!detail::commutesWithTensorPower(st.nRep.matrix(st.extension.section[a]), theta, r + s))
          throw InvariantViolation("symmetry " + degreeName(rs) + " is not glued by " + Q.label(a));
    sc.symmetry.emplace(rs, std::move(theta));
  }
  return sc;
}

/// Vertex data carrying one category onto the other: for each vertex u_i in
/// Q and, per degree, the matrix of u_i-hat; y_ij = A_i y'_ij A_j^{-1}.
struct CategoryIsomorphism {
  std::vector<Element> vertexData;
  std::map<Degree, std::vector<CMatrix>> vertexMatrices;
};

/// Isomorphism TQ -> TQ' induced by an equivalence q ~ q', verified on every
/// edge and degree; nullopt when the cocycles are not equivalent.
inline std::optional<CategoryIsomorphism> categoryIsomorphism(const SpecialCategory& a, const SpecialCategory& b) {
  if (!(*a.complex == *b.complex) || a.rsBound != b.rsBound || !(*a.extension().N == *b.extension().N))
    throw ValidationError("categories are built over different data");
  auto u = areEquivalent(a.q, b.q);
  if (!u) return std::nullopt;
  CategoryIsomorphism iso{*u, {}};
  const auto& Q = *a.extension().Q;
  const auto edges = a.complex->edges();
  for (const auto& [rs, fa] : a.families) {
    const auto& fb = b.family(rs.first, rs.second);
    std::vector<CMatrix> mats;
    for (auto x : *u) mats.push_back(fa.qAction[x]);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::size_t i = edges[e][0], j = edges[e][1];
      if (!(fa.transitions[e] == mats[i] * fb.transitions[e] * fa.qAction[Q.inv((*u)[j])]))
        throw InvariantViolation("vertex data does not intertwine the transitions on edge " + simplexName(edges[e]));
    }
    iso.vertexMatrices.emplace(rs, std::move(mats));
  }
  return iso;
}

inline CohomologyClass2 deltaOfCategory(const SpecialCategory& sc) { return dixmierDouady(sc.extension(), sc.q); }

enum class EmbeddingKind { Embeddable, Obstructed, NoLiftFound };

inline std::string toString(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::Embeddable: return "Embeddable";
    case EmbeddingKind::Obstructed: return "Obstructed";
    case EmbeddingKind::NoLiftFound: return "NoLiftFound";
  }
  return "?";
}

struct EmbeddingStatus {
  EmbeddingKind kind = EmbeddingKind::NoLiftFound;
  std::optional<CohomologyClass2> delta;  // absent when the abelianized row is not exact
  std::string exactnessDiagnosis;
  std::size_t nodes = 0;
  std::optional<Cocycle1> lift;                // N-valued
  std::vector<CMatrix> vectorBundle;           // rank-d transitions, per edge
  std::vector<std::vector<Element>> adjoint;   // per edge: g -> n g n^{-1} on G
};

/// n_ik = n_ij n_jk for matrices indexed like complex.edges().
inline bool isMatrixCocycle(const SimplicialComplex& c, const std::vector<CMatrix>& m) {
  for (const auto& t : c.triangles())
    if (!(m[c.indexOf({t[0], t[1]})] * m[c.indexOf({t[1], t[2]})] == m[c.indexOf({t[0], t[2]})])) return false;
  return true;
}

/// Same identity for permutations of G composed as functions.
inline bool isPermutationCocycle(const SimplicialComplex& c, const std::vector<std::vector<Element>>& m) {
  for (const auto& t : c.triangles()) {
    const auto& a = m[c.indexOf({t[0], t[1]})];
    const auto& b = m[c.indexOf({t[1], t[2]})];
    const auto& ab = m[c.indexOf({t[0], t[2]})];
    for (Element g = 0; g < a.size(); ++g)
      if (a[b[g]] != ab[g]) return false;
  }
  return true;
}

/// Runs the lift search; a lift yields the rank-d vector bundle i_* n and the
/// group bundle ad_* n. Embeddable with delta != 0 is reported as an
/// InvariantViolation.
inline EmbeddingStatus embeddingStatus(const SpecialCategory& sc, std::size_t budget = kDefaultSearchBudget) {
  const Extension& e = sc.extension();
  EmbeddingStatus out;
  try {
    out.delta = deltaOfCategory(sc);
  } catch (const ExactnessFailure& f) {
    out.exactnessDiagnosis = f.diagnosis();
  }
  LiftResult lr = liftSearch(e, sc.q, budget);
  out.nodes = lr.nodes;
  if (!lr.lift) {
    out.kind = out.delta && !out.delta->isZero() ? EmbeddingKind::Obstructed : EmbeddingKind::NoLiftFound;
    return out;
  }
  if (out.delta && !out.delta->isZero()) throw InvariantViolation("a lift exists although delta is nonzero");
  out.kind = EmbeddingKind::Embeddable;
  const auto& n = *lr.lift;
  std::vector<Element> toG(e.N->order(), e.N->order());
  for (Element g = 0; g < e.G->order(); ++g) toG[e.i(g)] = g;
  for (auto x : n.values) {
    out.vectorBundle.push_back(sc.setting.nRep.matrix(x));
    std::vector<Element> perm(e.G->order());
    for (Element g = 0; g < e.G->order(); ++g) {
      const Element image = toG[e.N->conjugate(e.i(g), x)];
      if (image >= e.G->order()) throw InvariantViolation("lift does not normalize G");
      perm[g] = image;
    }
    out.adjoint.push_back(std::move(perm));
  }
  if (!isMatrixCocycle(*sc.complex, out.vectorBundle)) throw InvariantViolation("rank-d transitions fail the cocycle identity");
  if (!isPermutationCocycle(*sc.complex, out.adjoint)) throw InvariantViolation("ad-cocycle fails the cocycle identity");
  if (!(pushforward(e.p, n) == sc.q)) throw InvariantViolation("lift does not push forward to q");
  out.lift = std::move(lr.lift);
  return out;
}

}  // namespace gbdual
