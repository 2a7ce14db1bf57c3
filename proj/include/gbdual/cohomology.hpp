#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "gbdual/cochain.hpp"
#include "gbdual/extension.hpp"

namespace gbdual {

/// g_ik = g_ij g_jk on every sorted triangle (i,j,k).
inline bool isCocycle(const GCochain1& c) {
  for (const auto& t : c.complex->triangles())
    if (c.value(t[0], t[2]) != c.group->mul(c.value(t[0], t[1]), c.value(t[1], t[2]))) return false;
  return true;
}

/// A 1-cochain known to satisfy the cocycle identity.
class Cocycle1 : public GCochain1 {
 public:
  Cocycle1() = default;
  explicit Cocycle1(GCochain1 c) : GCochain1(std::move(c)) {
    validate();
    for (const auto& t : complex->triangles())
      if (value(t[0], t[2]) != group->mul(value(t[0], t[1]), value(t[1], t[2])))
        throw ValidationError("cocycle identity fails on triangle " + simplexName(t));
  }

  static Cocycle1 trivial(ComplexPtr c, GroupPtr g) { return Cocycle1(GCochain1::constant(std::move(c), std::move(g))); }
};

/// Vertex values u with u_i g'_ij u_j^{-1}.
inline Cocycle1 gaugeTransform(const Cocycle1& c, const std::vector<Element>& u) {
  if (u.size() != c.complex->vertexCount()) throw ValidationError("gauge needs one group element per vertex");
  GCochain1 out = c;
  const auto& g = *c.group;
  for (std::size_t e = 0; e < c.values.size(); ++e) {
    const auto& edge = c.complex->edges()[e];
    out.values[e] = g.mul(g.mul(u[edge[0]], c.values[e]), g.inv(u[edge[1]]));
  }
  return Cocycle1(std::move(out));
}

/// Some u with c_ij = u_i c'_ij u_j^{-1}, or nothing. One free choice per
/// connected component (its smallest vertex), the rest forced along edges.
inline std::optional<std::vector<Element>> areEquivalent(const Cocycle1& c, const Cocycle1& cp) {
  if (!(*c.complex == *cp.complex)) throw ValidationError("cocycles live on different complexes");
  if (!(*c.group == *cp.group)) throw ValidationError("cocycles take values in different groups");
  const auto& g = *c.group;
  const auto& cx = *c.complex;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(cx.vertexCount());
  for (const auto& e : cx.edges()) {
    adj[e[0]].push_back({e[1], 0});
    adj[e[1]].push_back({e[0], 0});
  }
  std::vector<Element> u(cx.vertexCount(), g.identity());
  for (const auto& comp : cx.components()) {
    bool found = false;
    for (Element root = 0; root < g.order() && !found; ++root) {
      std::vector<bool> set(cx.vertexCount(), false);
      std::vector<std::size_t> queue{comp.front()};
      u[comp.front()] = root;
      set[comp.front()] = true;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const std::size_t i = queue[h];
        for (const auto& [j, unused] : adj[i]) {
          if (set[j]) continue;
          // u_j = c_ij^{-1} u_i c'_ij
          u[j] = g.mul(g.mul(g.inv(c.value(i, j)), u[i]), cp.value(i, j));
          set[j] = true;
          queue.push_back(j);
        }
      }
      found = true;
      for (const auto& e : cx.edges()) {
        if (!set[e[0]]) continue;
        if (c.value(e[0], e[1]) != g.mul(g.mul(u[e[0]], cp.value(e[0], e[1])), g.inv(u[e[1]]))) {
          found = false;
          break;
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return u;
}

inline Cocycle1 pushforward(const GroupHom& phi, const Cocycle1& c) {
  if (!(*phi.source() == *c.group)) throw ValidationError("pushforward: cocycle is not valued in the source group");
  GCochain1 out{c.complex, phi.target(), {}};
  for (auto v : c.values) out.values.push_back(phi(v));
  return Cocycle1(std::move(out));
}

/// delta_ab : H^1(X; Q_ab) -> H^2(X; G_ab). Lifts z_ij through the section of
/// p_ab to b_ij, takes w = b_ij + b_jk - b_ik and reads it back in G_ab.
inline CohomologyClass2 connectingDeltaAb(const AbelianizedExtension& row, const Cocycle1& z, H2Ptr pres = nullptr) {
  const AbelianGroup& A = row.Gab.group;
  const AbelianGroup& B = row.Nab.group;
  const AbelianGroup& C = row.Qab.group;
  if (z.group->order() != C.order()) throw ValidationError("cocycle is not valued in Q_ab");
  if (!pres) pres = h2Presentation(z.complex, A);
  if (!(pres->coefficients() == A)) throw ValidationError("H^2 presentation has the wrong coefficients");
  std::vector<AbElement> b;
  for (auto v : z.values) b.push_back(row.liftThroughPab(C.element(v)));
  ACochain2 w = ACochain2::zero(z.complex, A);
  const auto& cx = *z.complex;
  for (std::size_t t = 0; t < cx.count(2); ++t) {
    const auto& tri = cx.triangles()[t];
    const AbElement& bij = b[cx.indexOf({tri[0], tri[1]})];
    const AbElement& bjk = b[cx.indexOf({tri[1], tri[2]})];
    const AbElement& bik = b[cx.indexOf({tri[0], tri[2]})];
    w.values[t] = row.preimageUnderIab(B.subtract(B.add(bij, bjk), bik));
  }
  if (!pres->isCocycle(w)) throw InvariantViolation("connecting map produced a non-cocycle");
  return {pres, pres->project(w)};
}

/// delta(q) = delta_ab(pi_{Q,*} q).
inline CohomologyClass2 dixmierDouady(const AbelianizedExtension& row, const Cocycle1& q, H2Ptr pres = nullptr) {
  return connectingDeltaAb(row, pushforward(row.Qab.toTable, q), std::move(pres));
}

inline CohomologyClass2 dixmierDouady(const Extension& e, const Cocycle1& q) {
  return dixmierDouady(abelianizedRow(e), q);
}

inline constexpr std::size_t kDefaultSearchBudget = 10'000'000;

struct LiftResult {
  std::optional<Cocycle1> lift;
  std::size_t nodes = 0;
};

/// Backtracking search for an N-cocycle n with p_*(n) = q. Edges are visited
/// in lexicographic order, candidates in each fibre p^{-1}(q_ij) in element
/// index order; a triangle is checked as soon as its last edge is set.
/// An empty result is an exhaustive proof that no lift exists.
inline LiftResult liftSearch(const Extension& e, const Cocycle1& q, std::size_t budget = kDefaultSearchBudget) {
  if (!(*q.group == *e.Q)) throw ValidationError("lift search: cocycle is not valued in Q");
  const auto& cx = *q.complex;
  const auto& N = *e.N;
  const std::size_t m = cx.count(1);
  std::vector<std::vector<Element>> fibre(e.Q->order());
  for (Element n = 0; n < N.order(); ++n) fibre[e.p(n)].push_back(n);
  // triangles closed by each edge: the edge (j,k) is the last of (i,j),(i,k),(j,k)
  std::vector<std::vector<std::array<std::size_t, 3>>> closes(m);
  for (const auto& t : cx.triangles()) {
    const std::size_t ij = cx.indexOf({t[0], t[1]}), ik = cx.indexOf({t[0], t[2]}), jk = cx.indexOf({t[1], t[2]});
    closes[std::max({ij, ik, jk})].push_back({ij, jk, ik});
  }
  std::vector<Element> value(m, N.identity());
  std::vector<std::size_t> pos(m, 0);
  LiftResult out;
  std::size_t depth = 0;
  if (m == 0) {
    out.lift = Cocycle1(GCochain1{q.complex, e.N, {}});
    return out;
  }
  for (;;) {
    const auto& cands = fibre[q.values[depth]];
    if (pos[depth] == cands.size()) {
      if (depth == 0) return out;
      pos[depth] = 0;
      --depth;
      ++pos[depth];
      continue;
    }
    if (++out.nodes > budget) throw SearchBudgetExceeded(budget, out.nodes - 1);
    value[depth] = cands[pos[depth]];
    bool ok = true;
    for (const auto& [ij, jk, ik] : closes[depth])
      if (value[ik] != N.mul(value[ij], value[jk])) {
        ok = false;
        break;
      }
    if (!ok) {
      ++pos[depth];
      continue;
    }
    if (depth + 1 == m) {
      out.lift = Cocycle1(GCochain1{q.complex, e.N, value});
      return out;
    }
    ++depth;
  }
}

/// A random cocycle: randomized backtracking for some cocycle, then a random
/// gauge transformation.
template <class Rng>
Cocycle1 randomCocycle(ComplexPtr complex, GroupPtr group, Rng& rng) {
  const auto& cx = *complex;
  const auto& g = *group;
  const std::size_t m = cx.count(1);
  std::vector<std::vector<std::array<std::size_t, 3>>> closes(m);
  for (const auto& t : cx.triangles()) {
    const std::size_t ij = cx.indexOf({t[0], t[1]}), ik = cx.indexOf({t[0], t[2]}), jk = cx.indexOf({t[1], t[2]});
    closes[std::max({ij, ik, jk})].push_back({ij, jk, ik});
  }
  std::vector<std::vector<Element>> order(m, std::vector<Element>(g.order()));
  std::vector<Element> value(m, g.identity());
  std::vector<std::size_t> pos(m, 0);
  auto shuffle = [&](std::size_t d) {
    std::iota(order[d].begin(), order[d].end(), 0);
    std::shuffle(order[d].begin(), order[d].end(), rng);
  };
  std::size_t depth = 0;
  if (m > 0) shuffle(0);
  while (depth < m) {
    if (pos[depth] == g.order()) {
      if (depth == 0) throw InvariantViolation("no cocycle found");  // the trivial one always exists
      pos[depth] = 0;
      --depth;
      ++pos[depth];
      continue;
    }
    value[depth] = order[depth][pos[depth]];
    bool ok = true;
    for (const auto& [ij, jk, ik] : closes[depth])
      if (value[ik] != g.mul(value[ij], value[jk])) ok = false;
    if (!ok) {
      ++pos[depth];
      continue;
    }
    ++depth;
    if (depth < m) {
      pos[depth] = 0;
      shuffle(depth);
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  std::vector<Element> u(cx.vertexCount());
  for (auto& x : u) x = pick(rng);
  return gaugeTransform(Cocycle1(GCochain1{complex, group, value}), u);
}

}  // namespace gbdual
