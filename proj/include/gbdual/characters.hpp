#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gbdual/cyclotomic.hpp"
#include "gbdual/groups.hpp"

namespace gbdual {

/// Irreducible characters of a finite group, one row per character, one
/// column per conjugacy class. Row 0 is the trivial character.
struct CharacterTable {
  GroupPtr group;
  std::vector<std::vector<Element>> classes;
  std::vector<std::size_t> classOf;   // per element
  std::vector<std::vector<Cyclotomic>> values;

  std::size_t classCount() const { return classes.size(); }
  std::size_t degree(std::size_t chi) const { return values[chi][0].rational().convert_to<std::size_t>(); }

  Cyclotomic value(std::size_t chi, Element g) const { return values[chi][classOf[g]]; }

  /// <psi, chi> for a class function psi given per class.
  Rational innerProduct(const std::vector<Cyclotomic>& psi, std::size_t chi) const {
    Cyclotomic acc(0);
    for (std::size_t j = 0; j < classes.size(); ++j)
      acc += Cyclotomic(static_cast<long>(classes[j].size())) * psi[j] * values[chi][j].conj();
    return acc.rational() / Rational(static_cast<long>(group->order()));
  }

  /// Row orthogonality, square shape, degrees summing to |G|.
  void validate() const {
    const std::size_t k = classes.size();
    if (values.size() != k) throw ValidationError("character table must be square");
    for (const auto& row : values)
      if (row.size() != k) throw ValidationError("character table row has the wrong length");
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        Cyclotomic acc(0);
        for (std::size_t j = 0; j < k; ++j)
          acc += Cyclotomic(static_cast<long>(classes[j].size())) * values[a][j] * values[b][j].conj();
        const Cyclotomic expected(a == b ? static_cast<long>(group->order()) : 0L);
        if (!(acc == expected))
          throw ValidationError("character table fails orthogonality for rows " + std::to_string(a) + ", " +
                                std::to_string(b));
      }
  }
};

namespace detail {

inline std::int64_t powMod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::int64_t invMod(std::int64_t a, std::int64_t p) { return powMod(a, p - 2, p); }

inline bool isPrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

/// Basis of {x : A x = 0} over F_p; A is rows x cols.
inline std::vector<std::vector<std::int64_t>> nullspaceModP(std::vector<std::vector<std::int64_t>> a, std::size_t cols,
                                                            std::int64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][c] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    const std::int64_t inv = invMod(a[row][c], p);
    for (auto& x : a[row]) x = x * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      const std::int64_t f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[row][j]) % p + p) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> isPivot(cols, false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    std::vector<std::int64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = (p - a[k][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// Dixon's modular method: common eigenvectors of the class multiplication
/// matrices over F_p (p = 1 mod exponent, p > 2 sqrt|G|), then each value is
/// lifted from its eigenvalue multiplicities, which are recovered mod p.
inline CharacterTable computeCharacterTable(const GroupPtr& group) {
  const auto& g = *group;
  const std::int64_t n = static_cast<std::int64_t>(g.order());
  const std::int64_t e = static_cast<std::int64_t>(g.exponent());
  CharacterTable t;
  t.group = group;
  t.classes = g.conjugacyClasses();
  const std::size_t k = t.classes.size();
  t.classOf.assign(g.order(), 0);
  for (std::size_t j = 0; j < k; ++j)
    for (auto x : t.classes[j]) t.classOf[x] = j;

  std::int64_t p = e + 1;
  while (!detail::isPrime(p) || static_cast<double>(p) <= 2.0 * std::sqrt(static_cast<double>(n))) p += e;

  // (M_j)_{lm} = #{x in C_j : x^{-1} z_m in C_l}, z_m a fixed member of C_m.
  std::vector<std::vector<std::vector<std::int64_t>>> M(k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
  for (std::size_t m = 0; m < k; ++m) {
    const Element z = t.classes[m][0];
    for (std::size_t j = 0; j < k; ++j)
      for (auto x : t.classes[j]) ++M[j][t.classOf[g.mul(g.inv(x), z)]][m];
  }

  // Split F_p^k into common eigenspaces.
  using Vec = std::vector<std::int64_t>;
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> whole;
    for (std::size_t i = 0; i < k; ++i) {
      Vec v(k, 0);
      v[i] = 1;
      whole.push_back(v);
    }
    spaces.push_back(whole);
  }
  for (std::size_t j = 1; j < k; ++j) {
    std::vector<std::vector<Vec>> next;
    for (auto& space : spaces) {
      if (space.size() == 1) {
        next.push_back(std::move(space));
        continue;
      }
      const std::size_t dim = space.size();
      // columns of (M_j) B
      std::vector<Vec> mb(dim, Vec(k, 0));
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t l = 0; l < k; ++l) {
          std::int64_t acc = 0;
          for (std::size_t m = 0; m < k; ++m) acc = (acc + M[j][l][m] * space[c][m]) % p;
          mb[c][l] = acc;
        }
      std::size_t found = 0;
      for (std::int64_t lambda = 0; lambda < p && found < dim; ++lambda) {
        std::vector<Vec> a(k, Vec(dim, 0));
        for (std::size_t l = 0; l < k; ++l)
          for (std::size_t c = 0; c < dim; ++c) a[l][c] = ((mb[c][l] - lambda * space[c][l]) % p + p) % p;
        const auto ker = detail::nullspaceModP(a, dim, p);
        if (ker.empty()) continue;
        std::vector<Vec> sub;
        for (const auto& coeff : ker) {
          Vec v(k, 0);
          for (std::size_t c = 0; c < dim; ++c)
            for (std::size_t l = 0; l < k; ++l) v[l] = (v[l] + coeff[c] * space[c][l]) % p;
          sub.push_back(v);
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != dim) throw InvariantViolation("class matrices are not simultaneously diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw InvariantViolation("Dixon splitting did not separate all characters");

  std::vector<std::size_t> inverseClass(k);
  for (std::size_t j = 0; j < k; ++j) inverseClass[j] = t.classOf[g.inv(t.classes[j][0])];
  const std::int64_t z = [&] {
    for (std::int64_t cand = 2; cand < p; ++cand) {
      bool primitive = true;
      for (std::int64_t q = 2; q <= p - 1 && primitive; ++q)
        if ((p - 1) % q == 0 && detail::isPrime(q) && detail::powMod(cand, (p - 1) / q, p) == 1) primitive = false;
      if (primitive) return detail::powMod(cand, (p - 1) / e, p);
    }
    throw InvariantViolation("no primitive root mod p");
  }();
  const unsigned cond = static_cast<unsigned>(e);

  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& space : spaces) {
    Vec w = space[0];
    if (w[0] == 0) throw InvariantViolation("eigenvector with vanishing identity coordinate");
    const std::int64_t s0 = detail::invMod(w[0], p);
    for (auto& x : w) x = x * s0 % p;
    std::int64_t s = 0;
    for (std::size_t j = 0; j < k; ++j)
      s = (s + w[j] * w[inverseClass[j]] % p * detail::invMod(static_cast<std::int64_t>(t.classes[j].size()) % p, p)) % p;
    const std::int64_t target = n % p * detail::invMod(s, p) % p;
    std::int64_t f = 0;
    for (std::int64_t cand = 1; cand * cand <= n; ++cand)
      if (cand * cand % p == target && n % cand == 0) {
        f = cand;
        break;
      }
    if (f == 0) throw InvariantViolation("no character degree matches mod p");
    Vec chiModP(k);
    for (std::size_t j = 0; j < k; ++j)
      chiModP[j] = f * w[j] % p * detail::invMod(static_cast<std::int64_t>(t.classes[j].size()) % p, p) % p;
    std::vector<Cyclotomic> row(k);
    for (std::size_t j = 0; j < k; ++j) {
      const Element x = t.classes[j][0];
      std::vector<Rational> coeffs(static_cast<std::size_t>(e), Rational(0));
      for (std::int64_t kk = 0; kk < e; ++kk) {
        std::int64_t acc = 0;
        Element xl = g.identity();
        for (std::int64_t l = 0; l < e; ++l) {
          acc = (acc + chiModP[t.classOf[xl]] * detail::powMod(z, (e - (kk * l) % e) % e, p)) % p;
          xl = g.mul(xl, x);
        }
        const std::int64_t mult = acc * detail::invMod(e % p, p) % p;
        if (mult > f) throw InvariantViolation("eigenvalue multiplicity exceeds the degree");
        coeffs[static_cast<std::size_t>(kk)] = Rational(mult);
      }
      row[j] = Cyclotomic::fromCoefficients(cond, coeffs);
    }
    rows.push_back(std::move(row));
  }

  auto isTrivial = [](const std::vector<Cyclotomic>& r) {
    return std::all_of(r.begin(), r.end(), [](const Cyclotomic& x) { return x == Cyclotomic(1); });
  };
  auto key = [](const std::vector<Cyclotomic>& r) {
    std::string s;
    for (const auto& x : r) s += x.str() + "|";
    return s;
  };
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (isTrivial(a) != isTrivial(b)) return isTrivial(a);
    const Rational da = a[0].rational(), db = b[0].rational();
    if (da != db) return da < db;
    return key(a) < key(b);
  });
  t.values = std::move(rows);
  t.validate();
  return t;
}

/// A character table supplied from outside (values per class, classes in the
/// order of conjugacyClasses()); checked by orthogonality.
inline CharacterTable suppliedCharacterTable(const GroupPtr& group, std::vector<std::vector<Cyclotomic>> values) {
  CharacterTable t;
  t.group = group;
  t.classes = group->conjugacyClasses();
  t.classOf.assign(group->order(), 0);
  for (std::size_t j = 0; j < t.classes.size(); ++j)
    for (auto x : t.classes[j]) t.classOf[x] = j;
  t.values = std::move(values);
  t.validate();
  return t;
}

}  // namespace gbdual
