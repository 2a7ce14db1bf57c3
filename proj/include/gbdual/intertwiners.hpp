#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gbdual/extension.hpp"
#include "gbdual/representation.hpp"

namespace gbdual {

/// Default cap on d^{r+s}: intertwiner spaces live in d^{r+s}-dimensional
/// matrix spaces and everything downstream is dense in that size.
inline constexpr std::size_t kMaxIntertwinerSize = 256;

inline void requireIntertwinerSize(std::size_t d, std::size_t r, std::size_t s, std::size_t cap = kMaxIntertwinerSize) {
  double size = 1;
  for (std::size_t k = 0; k < r + s; ++k) size *= static_cast<double>(d);
  if (size > static_cast<double>(cap))
    throw ValidationError("d^(r+s) = " + std::to_string(static_cast<long long>(size)) + " exceeds the bound " +
                          std::to_string(cap) + " (r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
}

/// Row-major vectorization of a d^s x d^r matrix.
inline std::vector<Cyclotomic> vectorize(const CMatrix& t) { return t.flat(); }

/// Basis of (H^r, H^s)_G: the reduced row-echelon basis of the Reynolds image,
/// so coordinates are canonical.
struct IntertwinerBasis {
  std::size_t d = 0, r = 0, s = 0;
  std::vector<CMatrix> basis;
  EchelonBasis<Cyclotomic> echelon{0};

  std::size_t dimension() const { return basis.size(); }
  std::size_t rows() const { return ipow(d, s); }
  std::size_t cols() const { return ipow(d, r); }

  /// Coordinates of t in the basis; throws if t is not an intertwiner.
  std::vector<Cyclotomic> coordinates(const CMatrix& t) const {
    auto c = echelon.coordinates(vectorize(t));
    if (!c) throw ValidationError("matrix is not in the intertwiner space");
    return *c;
  }
  bool contains(const CMatrix& t) const { return echelon.contains(vectorize(t)); }
  CMatrix combine(const std::vector<Cyclotomic>& coeffs) const {
    CMatrix out(rows(), cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!coeffs[k].isZero()) out += basis[k] * coeffs[k];
    return out;
  }
};

namespace detail {

inline IntertwinerBasis basisFromEchelon(std::size_t d, std::size_t r, std::size_t s, EchelonBasis<Cyclotomic> ech) {
  IntertwinerBasis out;
  out.d = d;
  out.r = r;
  out.s = s;
  for (const auto& row : ech.rows()) out.basis.push_back(CMatrix::fromFlat(ipow(d, s), ipow(d, r), row));
  out.echelon = std::move(ech);
  return out;
}

}  // namespace detail

/// Span of the Reynolds images R(E_ab) = sum_g g_s E_ab g_r^*, i.e. of the
/// outer products g_s[:,a] conj(g_r[:,b])^T summed over the group.
inline EchelonBasis<Cyclotomic> reynoldsImage(const UnitaryRep& rep, std::size_t r, std::size_t s) {
  const std::size_t d = rep.dimension(), dr = ipow(d, r), ds = ipow(d, s);
  const std::size_t n = rep.group()->order();
  std::vector<std::vector<SparseVector>> colS(n), colR(n);
  for (Element g = 0; g < n; ++g) {
    for (std::size_t a = 0; a < ds; ++a) colS[g].push_back(tensorColumn(rep.matrix(g), s, a));
    for (std::size_t b = 0; b < dr; ++b) {
      SparseVector c = tensorColumn(rep.matrix(g), r, b);
      for (auto& [idx, v] : c) v = v.conj();
      colR[g].push_back(std::move(c));
    }
  }
  EchelonBasis<Cyclotomic> ech(ds * dr);
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t b = 0; b < dr; ++b) {
      std::map<std::size_t, Cyclotomic> acc;
      for (Element g = 0; g < n; ++g)
        for (const auto& [i, x] : colS[g][a])
          for (const auto& [j, y] : colR[g][b]) acc[i * dr + j] += x * y;
      std::vector<Cyclotomic> v(ds * dr, Cyclotomic(0));
      bool nonzero = false;
      for (auto& [idx, val] : acc)
        if (!val.isZero()) {
          v[idx] = val;
          nonzero = true;
        }
      if (nonzero) ech.insert(std::move(v));
    }
  return ech;
}

/// Solutions of the linear equations g_s t = t g_r for a generating set of G.
inline EchelonBasis<Cyclotomic> intertwinerEquations(const UnitaryRep& rep, std::size_t r, std::size_t s) {
  const std::size_t d = rep.dimension(), dr = ipow(d, r), ds = ipow(d, s);
  const std::size_t unknowns = ds * dr;
  const auto gens = rep.group()->generatingSet();
  CMatrix eq(gens.size() * unknowns, unknowns);
  std::size_t row = 0;
  for (auto g : gens) {
    const CMatrix gs = tensorPower(rep.matrix(g), s), gr = tensorPower(rep.matrix(g), r);
    // (g_s t - t g_r)_{ij} = sum_k gs_{ik} t_{kj} - sum_k t_{ik} gr_{kj}
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < dr; ++j, ++row) {
        for (std::size_t k = 0; k < ds; ++k)
          if (!gs(i, k).isZero()) eq(row, k * dr + j) += gs(i, k);
        for (std::size_t k = 0; k < dr; ++k)
          if (!gr(k, j).isZero()) eq(row, i * dr + k) -= gr(k, j);
      }
  }
  EchelonBasis<Cyclotomic> ech(unknowns);
  for (auto& v : nullspace(std::move(eq))) ech.insert(std::move(v));
  return ech;
}

/// (1/|G|) sum_g chi(g)^s conj(chi(g))^r.
inline std::size_t characterDimension(const UnitaryRep& rep, std::size_t r, std::size_t s) {
  Cyclotomic acc(0);
  for (Element g = 0; g < rep.group()->order(); ++g) {
    const Cyclotomic chi = rep.character(g);
    Cyclotomic term(1);
    for (std::size_t k = 0; k < s; ++k) term *= chi;
    const Cyclotomic cc = chi.conj();
    for (std::size_t k = 0; k < r; ++k) term *= cc;
    acc += term;
  }
  const Rational dim = acc.rational() / Rational(static_cast<long>(rep.group()->order()));
  if (boost::multiprecision::denominator(dim) != 1 || dim < 0)
    throw InvariantViolation("character sum is not a non-negative integer");
  return boost::multiprecision::numerator(dim).convert_to<std::size_t>();
}

/// Basis of (H^r, H^s)_G, cross-checked against the character sum.
inline IntertwinerBasis intertwiners(const UnitaryRep& rep, std::size_t r, std::size_t s,
                                     std::size_t cap = kMaxIntertwinerSize) {
  requireIntertwinerSize(rep.dimension(), r, s, cap);
  auto ech = reynoldsImage(rep, r, s);
  const std::size_t expected = characterDimension(rep, r, s);
  if (ech.rank() != expected)
    throw DimensionMismatch("intertwiner space (" + std::to_string(r) + "," + std::to_string(s) + ") has a basis of size " +
                            std::to_string(ech.rank()) + " but the character sum gives " + std::to_string(expected));
  return detail::basisFromEchelon(rep.dimension(), r, s, std::move(ech));
}

/// True when t g_r = g_s t for every group element.
inline bool isIntertwiner(const UnitaryRep& rep, const CMatrix& t, std::size_t r, std::size_t s) {
  for (Element g = 0; g < rep.group()->order(); ++g)
    if (!(tensorPower(rep.matrix(g), s) * t == t * tensorPower(rep.matrix(g), r))) return false;
  return true;
}

/// u_s t u_r^* for a unitary u.
inline CMatrix hatAction(const CMatrix& u, const CMatrix& t, std::size_t r, std::size_t s) {
  return tensorPower(u, s) * t * adjoint(tensorPower(u, r));
}

/// hat action of an element u of the group of `ambient`, which must
/// normalize the subgroup `sub`.
inline CMatrix hatAction(const UnitaryRep& ambient, const std::vector<Element>& sub, Element u, const CMatrix& t,
                         std::size_t r, std::size_t s) {
  if (!normalizes(*ambient.group(), u, sub))
    throw NotNormalizing("element " + ambient.group()->label(u) + " does not normalize G");
  return hatAction(ambient.matrix(u), t, r, s);
}

/// Hilbert-Schmidt Gram matrix tr(t_k^* t_l) of a basis.
inline CMatrix gramMatrix(const IntertwinerBasis& b) {
  const std::size_t n = b.dimension();
  CMatrix g(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) g(k, l) = trace(adjoint(b.basis[k]) * b.basis[l]);
  return g;
}

/// A^* G A = G: A preserves the Hilbert-Schmidt inner product in coordinates
/// with Gram matrix G.
inline bool isGramUnitary(const CMatrix& a, const CMatrix& gram) { return adjoint(a) * gram * a == gram; }

/// 1 -> G -> N -> Q -> 1 realized inside U(d): the representation of N, its
/// restriction to G, and the extension.
struct NormalizerSetting {
  Extension extension;
  UnitaryRep nRep;
  UnitaryRep gRep;
};

/// N = normalizer of `sub` inside the group of `ambient`; Q = N/G.
inline NormalizerSetting normalizerSetting(const UnitaryRep& ambient, const std::vector<Element>& sub) {
  const auto& a = *ambient.group();
  std::vector<Element> norm = normalizerInAmbient(a, sub);
  auto N = std::make_shared<const GroupTable>(subgroupTable(a, norm));
  GroupHom intoAmbient(N, ambient.group(), norm);
  std::vector<Element> subInN;
  for (Element k = 0; k < norm.size(); ++k)
    if (std::find(sub.begin(), sub.end(), norm[k]) != sub.end()) subInN.push_back(k);
  NormalizerSetting out{makeExtension(N, subInN), ambient.restrict(intoAmbient), {}};
  out.gRep = out.nRep.restrict(out.extension.i);
  return out;
}

/// Setting from an extension whose middle group carries a representation.
inline NormalizerSetting settingFromExtension(Extension e, UnitaryRep nRep) {
  if (!(*nRep.group() == *e.N)) throw ValidationError("representation is not defined on the middle group N");
  NormalizerSetting out{std::move(e), std::move(nRep), {}};
  out.gRep = out.nRep.restrict(out.extension.i);
  return out;
}

/// Matrix of hat{s(q)}^{r,s} in intertwiner coordinates, one per q in Q.
/// Independence of the coset representative is verified.
inline std::vector<CMatrix> qgActionMatrices(const NormalizerSetting& st, const IntertwinerBasis& b) {
  const Extension& e = st.extension;
  const std::size_t dim = b.dimension();
  std::vector<CMatrix> out;
  const auto G = e.normalSubgroup();
  for (Element q = 0; q < e.Q->order(); ++q) {
    CMatrix action(dim, dim);
    const Element u = e.section[q];
    if (!normalizes(*e.N, u, G)) throw NotNormalizing("section element does not normalize G");
    for (std::size_t k = 0; k < dim; ++k) {
      const auto c = b.coordinates(hatAction(st.nRep.matrix(u), b.basis[k], b.r, b.s));
      for (std::size_t j = 0; j < dim; ++j) action(j, k) = c[j];
    }
    for (Element n = 0; n < e.N->order(); ++n) {
      if (e.p(n) != q || n == u) continue;
      for (std::size_t k = 0; k < dim; ++k)
        if (!(hatAction(st.nRep.matrix(n), b.basis[k], b.r, b.s) == b.combine(action.column(k))))
          throw InvariantViolation("Q-action depends on the coset representative");
    }
    out.push_back(std::move(action));
  }
  return out;
}

}  // namespace gbdual
