#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gbdual/matrix.hpp"
#include "gbdual/numeric.hpp"

namespace gbdual {

/// Smith normal form U·A·V = D over the integers, with U, V unimodular and
/// the nonzero diagonal d_0 | d_1 | ... | d_{rank-1} positive.
struct SmithForm {
  Matrix<Integer> U;
  Matrix<Integer> Uinv;
  Matrix<Integer> V;
  Matrix<Integer> D;
  std::size_t rank = 0;

  Integer diagonal(std::size_t k) const { return k < rank ? D(k, k) : Integer(0); }
};

namespace detail {

struct SmithWorker {
  Matrix<Integer> a, u, uinv, v;

  explicit SmithWorker(Matrix<Integer> input)
      : a(std::move(input)),
        u(Matrix<Integer>::identity(a.rows())),
        uinv(Matrix<Integer>::identity(a.rows())),
        v(Matrix<Integer>::identity(a.cols())) {}

  void swapRows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv(r, i), uinv(r, j));
  }
  void swapCols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i += q * row_t
  void addRow(std::size_t i, std::size_t t, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(t, c) != 0) a(i, c) += q * a(t, c);
    for (std::size_t c = 0; c < u.cols(); ++c)
      if (u(t, c) != 0) u(i, c) += q * u(t, c);
    for (std::size_t r = 0; r < uinv.rows(); ++r)
      if (uinv(r, i) != 0) uinv(r, t) -= q * uinv(r, i);
  }
  // col_j += q * col_t
  void addCol(std::size_t j, std::size_t t, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, t) != 0) a(r, j) += q * a(r, t);
    for (std::size_t r = 0; r < v.rows(); ++r)
      if (v(r, t) != 0) v(r, j) += q * v(r, t);
  }
  void negateRow(std::size_t t) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) = -a(t, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = -u(t, c);
    for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, t) = -uinv(r, t);
  }

  std::size_t run() {
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
      if (!movePivot(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a(i, t) == 0) continue;
          addRow(i, t, -(a(i, t) / a(t, t)));
          if (a(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a(t, j) == 0) continue;
          addCol(j, t, -(a(t, j) / a(t, t)));
          if (a(t, j) != 0) dirty = true;
        }
        if (dirty) {
          movePivot(t);
          continue;
        }
        // Enforce divisibility of the remaining block by the pivot.
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a(i, j) % a(t, t) != 0) {
              addRow(t, i, Integer(1));
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (a(t, t) < 0) negateRow(t);
    }
    return t;
  }

  // Bring the smallest nonzero |entry| of the trailing block to (t, t).
  bool movePivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        Integer mag = abs(a(i, j));
        if (!found || mag < best) {
          best = mag;
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swapRows(t, bi);
    swapCols(t, bj);
    return true;
  }
};

}  // namespace detail

inline SmithForm smithForm(const Matrix<Integer>& a) {
  detail::SmithWorker w(a);
  SmithForm out;
  out.rank = w.run();
  out.D = std::move(w.a);
  out.U = std::move(w.u);
  out.Uinv = std::move(w.uinv);
  out.V = std::move(w.v);
  return out;
}

/// Presentation of Z^k / (column span of `relations`) as a product of cyclic
/// groups. `coordMap` sends a vector of Z^k to coordinates, component i to be
/// read modulo factors[i]; factor 0 marks a free Z summand.
struct QuotientPresentation {
  std::vector<Integer> factors;
  Matrix<Integer> coordMap;

  std::vector<Integer> coordinates(const std::vector<Integer>& x) const {
    std::vector<Integer> out(factors.size(), Integer(0));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (coordMap(i, j) != 0 && x[j] != 0) acc += coordMap(i, j) * x[j];
      if (factors[i] != 0) {
        acc %= factors[i];
        if (acc < 0) acc += factors[i];
      }
      out[i] = acc;
    }
    return out;
  }

  std::size_t freeRank() const {
    std::size_t n = 0;
    for (const auto& f : factors) n += (f == 0);
    return n;
  }
};

inline QuotientPresentation presentQuotient(const Matrix<Integer>& relations) {
  const std::size_t k = relations.rows();
  QuotientPresentation out;
  if (relations.cols() == 0) {
    out.factors.assign(k, Integer(0));
    out.coordMap = Matrix<Integer>::identity(k);
    return out;
  }
  const SmithForm snf = smithForm(relations);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i)
    if (snf.diagonal(i) != 1) kept.push_back(i);
  out.coordMap = Matrix<Integer>(kept.size(), k);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    out.factors.push_back(snf.diagonal(kept[r]));
    for (std::size_t c = 0; c < k; ++c) out.coordMap(r, c) = snf.U(kept[r], c);
  }
  return out;
}

}  // namespace gbdual
