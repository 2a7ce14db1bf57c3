#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gbdual/characters.hpp"
#include "gbdual/smith.hpp"
#include "gbdual/special_category.hpp"

namespace gbdual {

/// Wedderburn block of A_r = (H^r, H^r)_G: the irreducible sigma occurring
/// with multiplicity m in H^r.
struct BlockLabel {
  std::size_t r = 0;
  std::size_t sigma = 0;
  std::size_t multiplicity = 0;
};

/// Blocks of A_r from <chi^r, sigma>; checks sum m_sigma dim sigma = d^r.
inline std::vector<BlockLabel> blockLabels(const UnitaryRep& rep, const CharacterTable& table, std::size_t r) {
  std::vector<Cyclotomic> psi;
  for (const auto& cls : table.classes) {
    const Cyclotomic chi = rep.character(cls[0]);
    Cyclotomic p(1);
    for (std::size_t k = 0; k < r; ++k) p *= chi;
    psi.push_back(p);
  }
  std::vector<BlockLabel> out;
  std::size_t total = 0;
  for (std::size_t sigma = 0; sigma < table.classCount(); ++sigma) {
    const Rational m = table.innerProduct(psi, sigma);
    if (boost::multiprecision::denominator(m) != 1 || m < 0)
      throw InvariantViolation("multiplicity of an irreducible is not a non-negative integer");
    const auto mult = boost::multiprecision::numerator(m).convert_to<std::size_t>();
    if (mult == 0) continue;
    out.push_back({r, sigma, mult});
    total += mult * table.degree(sigma);
  }
  if (total != ipow(rep.dimension(), r)) throw InvariantViolation("block dimensions do not add up to d^r");
  return out;
}

/// Central idempotent of the sigma-isotypic part of H^r:
/// (dim sigma / |G|) sum_g conj(chi_sigma(g)) g^{⊗r}.
inline CMatrix centralIdempotent(const UnitaryRep& rep, const CharacterTable& table, std::size_t sigma, std::size_t r) {
  const std::size_t n = ipow(rep.dimension(), r);
  CMatrix acc(n, n);
  for (Element g = 0; g < rep.group()->order(); ++g) {
    const Cyclotomic c = table.value(sigma, g).conj();
    if (!c.isZero()) acc += tensorPower(rep.matrix(g), r) * c;
  }
  return acc * Cyclotomic(Rational(static_cast<long>(table.degree(sigma)), static_cast<long>(rep.group()->order())));
}

/// One generator of K_0: an orbit of irreducibles over one component.
struct KGenerator {
  std::size_t component = 0;
  std::vector<std::size_t> orbit;   // irreducible indices
  std::vector<std::size_t> levels;  // r <= rMax at which the orbit occurs
  /// Per later level: whether a monodromy-fixed intertwiner between the
  /// compressed blocks exists (nullopt when not computed).
  std::map<std::size_t, std::optional<bool>> flatWitness;
};

struct KGroupResult {
  QuotientPresentation presentation;  // Z^k
  std::vector<KGenerator> generators;
  std::size_t rMax = 0;
  /// First r at which every irreducible has occurred; nullopt if not by rMax
  /// (the rank is then a lower bound).
  std::optional<std::size_t> stabilizedAt;
  /// Class of the unit of A_r per level, in generator coordinates.
  std::vector<std::vector<std::size_t>> levelUnits;
  std::size_t components = 1;
  /// K^0(X) = Z^components -> K^0_Q(X), one column per component.
  std::vector<std::vector<Integer>> inclusionMap;
  std::vector<std::size_t> idempotentCheckLevels;
  std::vector<std::string> irreducibleLabels;

  std::size_t rank() const { return presentation.freeRank(); }
  std::string name() const {
    const std::size_t k = rank();
    if (k == 0) return "0";
    return k == 1 ? "Z" : "Z^" + std::to_string(k);
  }
};

namespace detail {

inline std::string characterLabel(const CharacterTable& t, std::size_t sigma) {
  std::string s = "chi" + std::to_string(sigma) + "[";
  for (std::size_t j = 0; j < t.classCount(); ++j) s += (j ? "," : "") + t.values[sigma][j].str();
  return s + "]";
}

/// sigma -> sigma(u^{-1} . u) for u in N normalizing G.
inline std::vector<std::size_t> irreduciblePermutation(const Extension& e, const CharacterTable& t, Element u) {
  const auto& N = *e.N;
  std::vector<Element> toG(N.order(), N.order());
  for (Element g = 0; g < e.G->order(); ++g) toG[e.i(g)] = g;
  // class of g -> class of u^{-1} g u
  std::vector<std::size_t> classMap(t.classCount());
  for (std::size_t j = 0; j < t.classCount(); ++j) {
    const Element g = t.classes[j][0];
    const Element h = toG[N.conjugate(e.i(g), N.inv(u))];
    if (h >= e.G->order()) throw NotNormalizing("monodromy element does not normalize G");
    classMap[j] = t.classOf[h];
  }
  std::vector<std::size_t> perm(t.classCount());
  for (std::size_t sigma = 0; sigma < t.classCount(); ++sigma) {
    std::vector<Cyclotomic> row(t.classCount());
    for (std::size_t j = 0; j < t.classCount(); ++j) row[j] = t.values[sigma][classMap[j]];
    std::size_t found = t.classCount();
    for (std::size_t tau = 0; tau < t.classCount(); ++tau)
      if (t.values[tau] == row) found = tau;
    if (found == t.classCount()) throw InvariantViolation("twisted character is not in the table");
    perm[sigma] = found;
  }
  return perm;
}

struct ComponentData {
  std::vector<std::size_t> vertices;
  std::vector<Element> holonomies;  // in Q, one per independent cycle
};

/// Spanning tree from the smallest vertex; each non-tree edge (i, j) gives
/// the holonomy h_i q_ij h_j^{-1} with h the tree path products.
inline std::vector<ComponentData> holonomies(const Cocycle1& q) {
  const auto& c = *q.complex;
  const auto& Q = *q.group;
  std::vector<ComponentData> out;
  std::vector<std::vector<std::size_t>> adj(c.vertexCount());
  for (const auto& e : c.edges()) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (const auto& comp : c.components()) {
    ComponentData data{comp, {}};
    std::map<std::size_t, Element> path;
    std::set<std::pair<std::size_t, std::size_t>> treeEdges;
    std::vector<std::size_t> queue{comp[0]};
    path[comp[0]] = Q.identity();
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t i = queue[head];
      for (auto j : adj[i]) {
        if (path.count(j)) continue;
        path[j] = Q.mul(path[i], q.value(i, j));
        treeEdges.insert({std::min(i, j), std::max(i, j)});
        queue.push_back(j);
      }
    }
    for (const auto& e : c.edges()) {
      if (!path.count(e[0]) || treeEdges.count({e[0], e[1]})) continue;
      data.holonomies.push_back(Q.mul(Q.mul(path[e[0]], q.value(e[0], e[1])), Q.inv(path[e[1]])));
    }
    out.push_back(std::move(data));
  }
  return out;
}

inline constexpr std::size_t kIdempotentCheckSize = 64;
inline constexpr std::size_t kFlatWitnessSize = 64;

/// Does some t in (H^r, H^s)_G with P_s t P_r = t, fixed by every holonomy, exist?
inline bool flatWitnessExists(const NormalizerSetting& st, const CMatrix& pr, const CMatrix& ps, std::size_t r,
                              std::size_t s, const std::vector<Element>& hol) {
  const auto b = intertwiners(st.gRep, r, s);
  const auto act = qgActionMatrices(st, b);
  const std::size_t dim = b.dimension();
  std::vector<std::vector<Cyclotomic>> fixed;
  if (hol.empty()) {
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<Cyclotomic> v(dim, Cyclotomic(0));
      v[k] = Cyclotomic(1);
      fixed.push_back(std::move(v));
    }
  } else {
    CMatrix eq(hol.size() * dim, dim);
    for (std::size_t h = 0; h < hol.size(); ++h)
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) eq(h * dim + i, j) = act[hol[h]](i, j) - Cyclotomic(i == j ? 1 : 0);
    fixed = nullspace(std::move(eq));
  }
  for (const auto& v : fixed)
    if (!(ps * b.combine(v) * pr).isZeroMatrix()) return true;
  return false;
}

}  // namespace detail

/// K^0 of the special category over a 1-dimensional base (or a point).
/// Per component the holonomies act on Irr(G); level-r projection classes are
/// orbit-constant multiplicity vectors and one orbit gives one generator, the
/// same orbit at different levels being identified.
inline KGroupResult k0Graph(const SpecialCategory& sc, std::size_t rMax = 0) {
  const auto& c = *sc.complex;
  if (c.dimension() > 1) throw NotOneDimensional("K-theory is computed only over graphs; the complex has triangles");
  const auto& st = sc.setting;
  const auto& e = st.extension;
  const UnitaryRep& rep = st.gRep;
  if (rMax == 0) rMax = rep.group()->order();
  const CharacterTable table = computeCharacterTable(rep.group());
  const std::size_t nIrr = table.classCount();
  const std::size_t d = rep.dimension();

  KGroupResult out;
  out.rMax = rMax;
  for (std::size_t sigma = 0; sigma < nIrr; ++sigma) out.irreducibleLabels.push_back(detail::characterLabel(table, sigma));

  std::vector<std::vector<BlockLabel>> blocks;
  std::vector<bool> reached(nIrr, false);
  for (std::size_t r = 0; r <= rMax; ++r) {
    blocks.push_back(blockLabels(rep, table, r));
    for (const auto& b : blocks.back()) reached[b.sigma] = true;
    if (!out.stabilizedAt && std::all_of(reached.begin(), reached.end(), [](bool x) { return x; })) out.stabilizedAt = r;
  }

  const auto comps = detail::holonomies(sc.q);
  out.components = comps.size();
  std::vector<std::size_t> trivialGenerator;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    std::vector<std::vector<std::size_t>> perms;
    for (auto h : comp.holonomies) perms.push_back(detail::irreduciblePermutation(e, table, e.section[h]));

    // idempotent cross-check of the predicted permutation
    for (std::size_t r = 0; r <= rMax && ipow(d, r) <= detail::kIdempotentCheckSize; ++r) {
      if (comp.holonomies.empty()) break;
      std::vector<CMatrix> idem;
      for (std::size_t sigma = 0; sigma < nIrr; ++sigma) idem.push_back(centralIdempotent(rep, table, sigma, r));
      for (std::size_t h = 0; h < comp.holonomies.size(); ++h) {
        const CMatrix u = tensorPower(st.nRep.matrix(e.section[comp.holonomies[h]]), r);
        for (std::size_t sigma = 0; sigma < nIrr; ++sigma)
          if (!(u * idem[sigma] * adjoint(u) == idem[perms[h][sigma]]))
            throw InvariantViolation("monodromy does not permute central idempotents as predicted at level " + std::to_string(r));
      }
      if (std::find(out.idempotentCheckLevels.begin(), out.idempotentCheckLevels.end(), r) == out.idempotentCheckLevels.end())
        out.idempotentCheckLevels.push_back(r);
    }

    // orbits of the holonomy group on Irr(G)
    std::vector<std::size_t> parent(nIrr);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& p : perms)
      for (std::size_t sigma = 0; sigma < nIrr; ++sigma) parent[find(sigma)] = find(p[sigma]);
    std::map<std::size_t, std::vector<std::size_t>> orbits;
    for (std::size_t sigma = 0; sigma < nIrr; ++sigma) orbits[find(sigma)].push_back(sigma);
    std::vector<std::vector<std::size_t>> ordered;
    for (auto& [root, members] : orbits) ordered.push_back(members);
    std::sort(ordered.begin(), ordered.end());

    std::size_t trivialIdx = out.generators.size();
    for (const auto& orbit : ordered) {
      KGenerator gen{ci, orbit, {}, {}};
      for (std::size_t r = 0; r <= rMax; ++r)
        for (const auto& b : blocks[r])
          if (b.sigma == orbit[0]) gen.levels.push_back(r);
      if (gen.levels.empty()) continue;
      if (orbit[0] == 0) trivialIdx = out.generators.size();
      // flat witnesses between the first level and each later one
      const std::size_t r0 = gen.levels[0];
      for (std::size_t k = 1; k < gen.levels.size(); ++k) {
        const std::size_t r1 = gen.levels[k];
        if (ipow(d, r0 + r1) > detail::kFlatWitnessSize) {
          gen.flatWitness[r1] = std::nullopt;
          continue;
        }
        CMatrix p0(ipow(d, r0), ipow(d, r0)), p1(ipow(d, r1), ipow(d, r1));
        for (auto sigma : orbit) {
          p0 += centralIdempotent(rep, table, sigma, r0);
          p1 += centralIdempotent(rep, table, sigma, r1);
        }
        gen.flatWitness[r1] = detail::flatWitnessExists(st, p0, p1, r0, r1, comp.holonomies);
      }
      out.generators.push_back(std::move(gen));
    }
    trivialGenerator.push_back(trivialIdx);
  }

  const std::size_t k = out.generators.size();
  out.presentation = presentQuotient(Matrix<Integer>(k, 0));
  for (std::size_t r = 0; r <= rMax; ++r) {
    std::vector<std::size_t> unit(k, 0);
    for (std::size_t g = 0; g < k; ++g)
      for (const auto& b : blocks[r])
        if (b.sigma == out.generators[g].orbit[0]) unit[g] += b.multiplicity;
    out.levelUnits.push_back(std::move(unit));
  }
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    std::vector<Integer> col(k, Integer(0));
    col[trivialGenerator[ci]] = 1;
    out.inclusionMap.push_back(std::move(col));
  }
  return out;
}

/// K^0 at a point: the irreducibles of G occurring in some H^r, r <= rMax.
inline KGroupResult k0Point(const NormalizerSetting& st, std::size_t rMax = 0) {
  auto point = std::make_shared<const SimplicialComplex>(complexes::point());
  SpecialCategory sc{point, st, Cocycle1::trivial(point, st.extension.Q), 0, {}, {}, false};
  return k0Graph(sc, rMax);
}

/// G inside U(d) with no normalizer data: Q is trivial.
inline KGroupResult k0Point(const UnitaryRep& gRep, std::size_t rMax = 0) {
  std::vector<Element> all(gRep.group()->order());
  std::iota(all.begin(), all.end(), 0);
  return k0Point(settingFromExtension(makeExtension(gRep.group(), all), gRep), rMax);
}

/// Image of K^0(X) = Z^components: the class of the unit object per component.
inline std::vector<std::vector<Integer>> k0TrivialInclusion(const KGroupResult& k) { return k.inclusionMap; }

}  // namespace gbdual
