#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gbdual/cyclotomic.hpp"
#include "gbdual/groups.hpp"
#include "gbdual/matrix.hpp"

namespace gbdual {

using CMatrix = Matrix<Cyclotomic>;

/// Canonical text of a matrix with entries read in Q(zeta_n).
inline std::string matrixKey(const CMatrix& m, unsigned n) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (const auto& x : m.flat()) {
    const Cyclotomic e = x.embed(n);
    for (const auto& c : e.coefficients()) key += toString(c) + ",";
    key += ";";
  }
  return key;
}

/// One matrix per element of a finite group, multiplicative and unitary.
class UnitaryRep {
 public:
  UnitaryRep() = default;

  /// Validates multiplicativity and unitarity. The working conductor becomes
  /// lcm(conductor, exponent of the group).
  UnitaryRep(GroupPtr group, std::size_t d, unsigned conductor, std::vector<CMatrix> matrices)
      : group_(std::move(group)), d_(d), matrices_(std::move(matrices)) {
    if (!group_) throw ValidationError("representation needs a group");
    if (matrices_.size() != group_->order()) throw ValidationError("representation needs one matrix per group element");
    conductor_ = std::lcm(std::max(conductor, 1u), static_cast<unsigned>(group_->exponent()));
    for (auto& m : matrices_) {
      if (m.rows() != d_ || m.cols() != d_) throw ValidationError("representation matrix has the wrong size");
      for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) {
          if (conductor_ % m(i, j).conductor() != 0)
            throw ValidationError("matrix entry " + m(i, j).str() + " is outside Q(zeta_" + std::to_string(conductor_) + ")");
          m(i, j) = m(i, j).embed(conductor_);
        }
    }
    const auto& g = *group_;
    if (!(matrices_[g.identity()] == CMatrix::identity(d_))) throw ValidationError("identity is not represented by 1");
    for (Element a = 0; a < g.order(); ++a) {
      if (!(matrices_[a] * adjoint(matrices_[a]) == CMatrix::identity(d_)))
        throw ValidationError("matrix of element " + g.label(a) + " is not unitary");
      for (Element b = 0; b < g.order(); ++b)
        if (!(matrices_[a] * matrices_[b] == matrices_[g.mul(a, b)]))
          throw ValidationError("representation is not multiplicative at (" + g.label(a) + ", " + g.label(b) + ")");
    }
    std::set<std::string> keys;
    for (const auto& m : matrices_) keys.insert(matrixKey(m, conductor_));
    faithful_ = keys.size() == matrices_.size();
  }

  /// The matrix group generated by `generators`; its closure defines the group.
  static UnitaryRep fromGenerators(std::size_t d, unsigned conductor, const std::vector<CMatrix>& generators,
                                   std::size_t orderCap = kDefaultOrderCap) {
    unsigned n = std::max(conductor, 1u);
    for (const auto& m : generators) {
      if (m.rows() != d || m.cols() != d) throw ValidationError("generator has the wrong size");
      for (const auto& x : m.flat()) n = std::lcm(n, x.conductor());
    }
    std::vector<Element> genIdx;
    auto [table, elems] = GroupTable::close<CMatrix>(
        CMatrix::identity(d), generators, [](const CMatrix& a, const CMatrix& b) { return a * b; },
        [n](const CMatrix& m) { return matrixKey(m, n); }, orderCap, &genIdx);
    return UnitaryRep(std::make_shared<const GroupTable>(std::move(table)), d, n, std::move(elems));
  }

  const GroupPtr& group() const { return group_; }
  std::size_t dimension() const { return d_; }
  unsigned conductor() const { return conductor_; }
  bool isFaithful() const { return faithful_; }
  const CMatrix& matrix(Element g) const { return matrices_[g]; }
  const std::vector<CMatrix>& matrices() const { return matrices_; }
  Cyclotomic character(Element g) const { return trace(matrices_[g]); }

  /// The representation pulled back along phi : H -> group().
  UnitaryRep restrict(const GroupHom& phi) const {
    if (phi.target()->order() != group_->order()) throw ValidationError("restriction along a map into another group");
    std::vector<CMatrix> ms;
    for (Element h = 0; h < phi.source()->order(); ++h) ms.push_back(matrices_[phi(h)]);
    return UnitaryRep(phi.source(), d_, conductor_, std::move(ms));
  }

  /// Element whose matrix equals m, if any.
  std::optional<Element> find(const CMatrix& m) const {
    for (Element a = 0; a < matrices_.size(); ++a)
      if (matrices_[a] == m) return a;
    return std::nullopt;
  }

 private:
  GroupPtr group_;
  std::size_t d_ = 0;
  unsigned conductor_ = 1;
  std::vector<CMatrix> matrices_;
  bool faithful_ = false;
};

/// r-fold Kronecker power; r = 0 gives the 1x1 identity.
inline CMatrix tensorPower(const CMatrix& m, std::size_t r) {
  CMatrix out = CMatrix::identity(1);
  for (std::size_t k = 0; k < r; ++k) out = kron(out, m);
  return out;
}

inline CMatrix tensorPower(const UnitaryRep& rep, Element g, std::size_t r) { return tensorPower(rep.matrix(g), r); }

inline std::size_t ipow(std::size_t d, std::size_t r) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < r; ++k) out *= d;
  return out;
}

/// Sparse column a of m^{⊗r}: the Kronecker product of the columns of m
/// selected by the base-d digits of a (most significant first).
using SparseVector = std::vector<std::pair<std::size_t, Cyclotomic>>;

inline SparseVector tensorColumn(const CMatrix& m, std::size_t r, std::size_t a) {
  const std::size_t d = m.rows();
  std::vector<std::size_t> digits(r);
  for (std::size_t k = r; k-- > 0;) {
    digits[k] = a % d;
    a /= d;
  }
  SparseVector out{{0, Cyclotomic(1)}};
  for (std::size_t k = 0; k < r; ++k) {
    SparseVector next;
    for (const auto& [idx, val] : out)
      for (std::size_t i = 0; i < d; ++i) {
        const Cyclotomic& x = m(i, digits[k]);
        if (x.isZero()) continue;
        next.push_back({idx * d + i, val * x});
      }
    out = std::move(next);
  }
  return out;
}

/// theta_{r,s}: psi ⊗ psi' -> psi' ⊗ psi for psi in H^r, psi' in H^s.
inline CMatrix flip(std::size_t d, std::size_t r, std::size_t s) {
  const std::size_t dr = ipow(d, r), ds = ipow(d, s);
  CMatrix out(dr * ds, dr * ds);
  for (std::size_t a = 0; a < dr; ++a)
    for (std::size_t b = 0; b < ds; ++b) out(b * dr + a, a * ds + b) = Cyclotomic(1);
  return out;
}

}  // namespace gbdual
