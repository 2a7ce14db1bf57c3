#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gbdual/abelian.hpp"
#include "gbdual/complex.hpp"
#include "gbdual/groups.hpp"
#include "gbdual/smith.hpp"

namespace gbdual {

/// Group-valued 1-cochain: one element per sorted edge (i<j); the value on
/// (j,i) is the inverse.
struct GCochain1 {
  ComplexPtr complex;
  GroupPtr group;
  std::vector<Element> values;  // indexed like complex->edges()

  static GCochain1 constant(ComplexPtr c, GroupPtr g) {
    GCochain1 out{c, g, {}};
    out.values.assign(c->edges().size(), g->identity());
    return out;
  }

  Element value(std::size_t i, std::size_t j) const {
    if (i == j) return group->identity();
    const std::size_t e = complex->indexOf({i, j});
    return i < j ? values[e] : group->inv(values[e]);
  }
  void set(std::size_t i, std::size_t j, Element g) {
    const std::size_t e = complex->indexOf({i, j});
    values[e] = i < j ? g : group->inv(g);
  }

  void validate() const {
    if (!complex || !group) throw ValidationError("cochain needs a complex and a group");
    if (values.size() != complex->edges().size())
      throw ValidationError("cochain must assign exactly one value to each of the " +
                            std::to_string(complex->edges().size()) + " edges");
    for (auto v : values)
      if (v >= group->order()) throw ValidationError("cochain value out of range");
  }

  friend bool operator==(const GCochain1& a, const GCochain1& b) { return a.values == b.values; }
};

/// Abelian-group-valued 2-cochain, one value per sorted triangle, extended
/// alternatingly to other vertex orders.
struct ACochain2 {
  ComplexPtr complex;
  AbelianGroup coefficients;
  std::vector<AbElement> values;  // indexed like complex->triangles()

  static ACochain2 zero(ComplexPtr c, AbelianGroup a) {
    ACochain2 out{c, a, {}};
    out.values.assign(c->triangles().size(), a.zero());
    return out;
  }

  AbElement value(std::size_t i, std::size_t j, std::size_t k) const {
    std::vector<std::size_t> v{i, j, k};
    int sign = 1;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b + 1 < 3 - a; ++b)
        if (v[b] > v[b + 1]) {
          std::swap(v[b], v[b + 1]);
          sign = -sign;
        }
    const AbElement& x = values[complex->indexOf(v)];
    return sign > 0 ? x : coefficients.negate(x);
  }
};

/// SNF presentation of H^2(X; A) for a finite abelian A.
///
/// For each cyclic factor Z/m of A the cocycle lattice
/// L = {x in Z^{n2} : delta x = 0 mod m} gets a basis P from Smith normal form,
/// and the coboundaries (image of delta_1 plus m Z^{n2}) are presented in
/// P-coordinates. The per-factor groups are then merged into invariant-factor
/// form.
class H2Presentation {
 public:
  H2Presentation() = default;

  H2Presentation(ComplexPtr complex, AbelianGroup coefficients)
      : complex_(std::move(complex)), coeffs_(std::move(coefficients)) {
    delta1_ = complex_->coboundary(1);
    delta2_ = complex_->coboundary(2);
    const std::size_t n2 = complex_->count(2);
    std::vector<Integer> cyclic;
    for (auto m : coeffs_.invariantFactors()) {
      Block b = makeBlock(Integer(m), n2);
      for (const auto& f : b.quotient.factors) cyclic.push_back(f);
      blocks_.push_back(std::move(b));
    }
    auto [group, merge] = AbelianGroup::normalize(cyclic);
    classGroup_ = std::move(group);
    merge_ = std::move(merge);
  }

  const ComplexPtr& complex() const { return complex_; }
  const AbelianGroup& coefficients() const { return coeffs_; }
  const AbelianGroup& classGroup() const { return classGroup_; }

  bool isCocycle(const ACochain2& w) const {
    requireShape(w);
    for (std::size_t f = 0; f < blocks_.size(); ++f) {
      const Integer m = blocks_[f].modulus;
      const auto x = component(w, f);
      for (std::size_t r = 0; r < delta2_.rows(); ++r) {
        Integer acc = 0;
        for (std::size_t c = 0; c < delta2_.cols(); ++c) acc += delta2_(r, c) * x[c];
        if (acc % m != 0) return false;
      }
    }
    return true;
  }

  /// Coordinates of the class of the cocycle w in classGroup().
  AbElement project(const ACochain2& w) const {
    if (!isCocycle(w)) throw ValidationError("2-cochain is not a cocycle");
    std::vector<Integer> all;
    for (std::size_t f = 0; f < blocks_.size(); ++f) {
      const Block& b = blocks_[f];
      const auto x = component(w, f);
      std::vector<Integer> c(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        Integer acc = 0;
        for (std::size_t k = 0; k < x.size(); ++k) acc += b.U(j, k) * x[k];
        if (acc % b.d[j] != 0) throw InvariantViolation("cocycle is not in the cocycle lattice");
        c[j] = acc / b.d[j];
      }
      for (const auto& y : b.quotient.coordinates(c)) all.push_back(y);
    }
    const auto merged = merge_.coordinates(all);
    AbElement out(merged.size());
    for (std::size_t k = 0; k < merged.size(); ++k) out[k] = toInt64(merged[k]);
    return classGroup_.reduce(out);
  }

  bool isCoboundary(const ACochain2& w) const {
    const AbElement c = project(w);
    return c == classGroup_.zero();
  }

  /// delta of an A-valued 1-cochain given per edge.
  ACochain2 coboundaryOf(const std::vector<AbElement>& edgeValues) const {
    ACochain2 w = ACochain2::zero(complex_, coeffs_);
    for (std::size_t t = 0; t < complex_->count(2); ++t) {
      AbElement acc = coeffs_.zero();
      for (std::size_t e = 0; e < complex_->count(1); ++e) {
        const Integer s = delta1_(t, e);
        if (s == 0) continue;
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += toInt64(s) * edgeValues[e][k];
      }
      w.values[t] = coeffs_.reduce(acc);
    }
    return w;
  }

 private:
  struct Block {
    Integer modulus;
    Matrix<Integer> U;       // lattice coordinates: c_j = (U x)_j / d_j
    std::vector<Integer> d;  // all nonzero (the lattice has full rank)
    QuotientPresentation quotient;
  };

  void requireShape(const ACochain2& w) const {
    if (w.values.size() != complex_->count(2)) throw ValidationError("2-cochain has the wrong number of values");
    if (!(w.coefficients == coeffs_)) throw ValidationError("2-cochain has different coefficients");
  }

  std::vector<Integer> component(const ACochain2& w, std::size_t f) const {
    std::vector<Integer> x(w.values.size());
    for (std::size_t t = 0; t < x.size(); ++t) x[t] = w.values[t][f];
    return x;
  }

  Block makeBlock(const Integer& m, std::size_t n2) const {
    Block b;
    b.modulus = m;
    const std::size_t n3 = delta2_.rows();
    // Generators of L: kernel of [delta2 | m I] projected to the first n2 coordinates.
    std::vector<std::vector<Integer>> gens;
    if (n3 == 0) {
      for (std::size_t j = 0; j < n2; ++j) {
        std::vector<Integer> e(n2, Integer(0));
        e[j] = 1;
        gens.push_back(e);
      }
    } else {
      Matrix<Integer> a(n3, n2 + n3);
      for (std::size_t r = 0; r < n3; ++r) {
        for (std::size_t c = 0; c < n2; ++c) a(r, c) = delta2_(r, c);
        a(r, n2 + r) = m;
      }
      const SmithForm snf = smithForm(a);
      for (std::size_t c = snf.rank; c < n2 + n3; ++c) {
        std::vector<Integer> g(n2);
        for (std::size_t r = 0; r < n2; ++r) g[r] = snf.V(r, c);
        gens.push_back(g);
      }
    }
    Matrix<Integer> gm(n2, gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c)
      for (std::size_t r = 0; r < n2; ++r) gm(r, c) = gens[c][r];
    if (n2 == 0) {
      b.U = Matrix<Integer>(0, 0);
      b.quotient = presentQuotient(Matrix<Integer>(0, 0));
      return b;
    }
    const SmithForm lattice = smithForm(gm);
    if (lattice.rank != n2) throw InvariantViolation("cocycle lattice is not of full rank");
    b.U = lattice.U;
    for (std::size_t j = 0; j < n2; ++j) b.d.push_back(lattice.diagonal(j));

    // Coboundary generators: columns of delta1 and m e_j, in lattice coordinates.
    const std::size_t n1 = delta1_.cols();
    Matrix<Integer> rel(n2, n1 + n2);
    auto put = [&](std::size_t col, const std::vector<Integer>& x) {
      for (std::size_t j = 0; j < n2; ++j) {
        Integer acc = 0;
        for (std::size_t k = 0; k < n2; ++k) acc += b.U(j, k) * x[k];
        if (acc % b.d[j] != 0) throw InvariantViolation("coboundary outside the cocycle lattice");
        rel(j, col) = acc / b.d[j];
      }
    };
    for (std::size_t c = 0; c < n1; ++c) put(c, delta1_.column(c));
    for (std::size_t j = 0; j < n2; ++j) {
      std::vector<Integer> e(n2, Integer(0));
      e[j] = m;
      put(n1 + j, e);
    }
    b.quotient = presentQuotient(rel);
    return b;
  }

  ComplexPtr complex_;
  AbelianGroup coeffs_;
  AbelianGroup classGroup_;
  Matrix<Integer> delta1_, delta2_;
  std::vector<Block> blocks_;
  QuotientPresentation merge_;
};

using H2Ptr = std::shared_ptr<const H2Presentation>;

inline H2Ptr h2Presentation(ComplexPtr c, AbelianGroup a) {
  return std::make_shared<const H2Presentation>(std::move(c), std::move(a));
}

/// An element of H^2(X; A) in the coordinates of its presentation.
struct CohomologyClass2 {
  H2Ptr presentation;
  AbElement coordinates;

  bool isZero() const { return coordinates == presentation->classGroup().zero(); }
  friend bool operator==(const CohomologyClass2& a, const CohomologyClass2& b) {
    return a.coordinates == b.coordinates && a.presentation->classGroup() == b.presentation->classGroup();
  }
};

}  // namespace gbdual
