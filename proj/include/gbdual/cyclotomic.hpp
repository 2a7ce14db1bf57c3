#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "gbdual/errors.hpp"
#include "gbdual/numeric.hpp"

namespace gbdual {

/// Arithmetic data for Q(zeta_n): the cyclotomic polynomial and the power
/// basis images of zeta^k for 0 <= k < n.
struct CyclotomicField {
  unsigned conductor = 1;
  unsigned degree = 1;                           // phi(n)
  std::vector<std::int64_t> minpoly;             // Phi_n, monic, low degree first
  std::vector<std::vector<std::int64_t>> powers; // zeta^k reduced, k = 0..n-1

  static std::shared_ptr<const CyclotomicField> get(unsigned n);

 private:
  static std::shared_ptr<const CyclotomicField> build(unsigned n);
};

namespace detail {

inline std::vector<std::int64_t> polyDivideExact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  std::vector<std::int64_t> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  for (std::size_t k = 0; k < dn; ++k)
    if (num[k] != 0) throw InvariantViolation("cyclotomic polynomial division left a remainder");
  return q;
}

inline std::vector<std::int64_t> cyclotomicPolynomial(unsigned n) {
  std::vector<std::int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) poly = polyDivideExact(poly, cyclotomicPolynomial(d));
  return poly;
}

}  // namespace detail

inline std::shared_ptr<const CyclotomicField> CyclotomicField::build(unsigned n) {
  auto f = std::make_shared<CyclotomicField>();
  f->conductor = n;
  f->minpoly = detail::cyclotomicPolynomial(n);
  f->degree = static_cast<unsigned>(f->minpoly.size() - 1);
  const unsigned deg = f->degree;
  std::vector<std::int64_t> cur(deg, 0);
  cur[0] = 1;
  for (unsigned k = 0; k < n; ++k) {
    f->powers.push_back(cur);
    // multiply by x and reduce
    std::int64_t top = cur[deg - 1];
    for (unsigned j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (deg == 1) cur[0] = 0;
    for (unsigned j = 0; j < deg; ++j) cur[j] -= top * f->minpoly[j];
  }
  return f;
}

inline std::shared_ptr<const CyclotomicField> CyclotomicField::get(unsigned n) {
  if (n == 0) throw ValidationError("cyclotomic conductor must be positive");
  static std::mutex lock;
  static std::map<unsigned, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto f = build(n);
  cache.emplace(n, f);
  return f;
}

/// Exact element of the cyclotomic field Q(zeta_n), stored in the power basis
/// 1, zeta, ..., zeta^{phi(n)-1} and reduced modulo Phi_n.
///
/// Binary operations between different conductors embed both operands into
/// Q(zeta_lcm) first, so rational constants (conductor 1) mix freely with
/// anything.
class Cyclotomic {
 public:
  Cyclotomic() : field_(CyclotomicField::get(1)), c_{Rational(0)} {}
  Cyclotomic(int v) : field_(CyclotomicField::get(1)), c_{Rational(v)} {}
  Cyclotomic(long v) : field_(CyclotomicField::get(1)), c_{Rational(v)} {}
  Cyclotomic(long long v) : field_(CyclotomicField::get(1)), c_{Rational(v)} {}
  Cyclotomic(Rational v) : field_(CyclotomicField::get(1)), c_{std::move(v)} {}

  /// Element of Q(zeta_n) from power-basis coefficients (any length; reduced).
  static Cyclotomic fromCoefficients(unsigned n, const std::vector<Rational>& coeffs) {
    auto f = CyclotomicField::get(n);
    std::vector<Rational> c(f->degree, Rational(0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      const auto& p = f->powers[k % n];
      for (unsigned j = 0; j < f->degree; ++j)
        if (p[j] != 0) c[j] += coeffs[k] * p[j];
    }
    return Cyclotomic(std::move(f), std::move(c));
  }

  /// zeta_n^k
  static Cyclotomic zeta(unsigned n, std::int64_t k = 1) {
    auto f = CyclotomicField::get(n);
    const auto& p = f->powers[static_cast<std::size_t>(floorMod(k, n))];
    std::vector<Rational> c(p.begin(), p.end());
    return Cyclotomic(std::move(f), std::move(c));
  }

  unsigned conductor() const { return field_->conductor; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool isZero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool isRational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }
  Rational rational() const {
    if (!isRational()) throw ValidationError("cyclotomic value " + str() + " is not rational");
    return c_[0];
  }

  /// Same value in Q(zeta_m); m must be a multiple of the conductor.
  Cyclotomic embed(unsigned m) const {
    const unsigned n = conductor();
    if (m == n) return *this;
    if (m % n != 0) throw ValidationError("cannot embed conductor " + std::to_string(n) + " into " + std::to_string(m));
    auto f = CyclotomicField::get(m);
    const unsigned step = m / n;
    std::vector<Rational> c(f->degree, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const auto& p = f->powers[(k * step) % m];
      for (unsigned j = 0; j < f->degree; ++j)
        if (p[j] != 0) c[j] += c_[k] * p[j];
    }
    return Cyclotomic(std::move(f), std::move(c));
  }

  /// Complex conjugate, i.e. the automorphism zeta -> zeta^{-1}.
  Cyclotomic conj() const {
    const unsigned n = conductor();
    if (n <= 2) return *this;
    std::vector<Rational> c(field_->degree, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const auto& p = field_->powers[(n - k) % n];
      for (unsigned j = 0; j < field_->degree; ++j)
        if (p[j] != 0) c[j] += c_[k] * p[j];
    }
    return Cyclotomic(field_, std::move(c));
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    if (o.conductor() == conductor()) {
      for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
      return *this;
    }
    const unsigned m = std::lcm(conductor(), o.conductor());
    *this = embed(m);
    const Cyclotomic other = o.embed(m);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += other.c_[k];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

  Cyclotomic& operator*=(const Cyclotomic& o) {
    *this = *this * o;
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) {
    *this = *this * o.inverse();
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.isRational() || b.isRational()) {
      const Cyclotomic& scalar = a.isRational() ? a : b;
      const Cyclotomic& other = a.isRational() ? b : a;
      const Rational& s = scalar.c_[0];
      if (s == 0) return Cyclotomic();
      Cyclotomic out = other;
      if (s != 1)
        for (auto& x : out.c_) x *= s;
      return out;
    }
    if (a.conductor() != b.conductor()) {
      const unsigned m = std::lcm(a.conductor(), b.conductor());
      return a.embed(m) * b.embed(m);
    }
    const auto& f = *a.field_;
    const unsigned deg = f.degree;
    std::vector<Rational> prod(2 * deg - 1, Rational(0));
    for (unsigned i = 0; i < deg; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j < deg; ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    for (std::size_t k = prod.size(); k-- > deg;) {
      if (prod[k] == 0) continue;
      const Rational top = prod[k];
      for (unsigned j = 0; j < deg; ++j)
        if (f.minpoly[j] != 0) prod[k - deg + j] -= top * f.minpoly[j];
      prod[k] = 0;
    }
    prod.resize(deg);
    return Cyclotomic(a.field_, std::move(prod));
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() == b.conductor()) return a.c_ == b.c_;
    if (a.isRational() && b.isRational()) return a.c_[0] == b.c_[0];
    const unsigned m = std::lcm(a.conductor(), b.conductor());
    return a.embed(m).c_ == b.embed(m).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic inverse() const {
    if (isZero()) throw ValidationError("division by zero in cyclotomic field");
    if (isRational()) return Cyclotomic(Rational(1) / c_[0]);
    // Solve (multiplication by this) x = 1 over Q.
    const unsigned deg = field_->degree;
    std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg + 1, Rational(0)));
    Cyclotomic col = *this;
    const Cyclotomic z = zeta(conductor());
    for (unsigned j = 0; j < deg; ++j) {
      for (unsigned i = 0; i < deg; ++i) m[i][j] = col.c_[i];
      col = col * z;
    }
    m[0][deg] = 1;
    for (unsigned c = 0; c < deg; ++c) {
      unsigned sel = c;
      while (m[sel][c] == 0) ++sel;
      std::swap(m[sel], m[c]);
      const Rational inv = Rational(1) / m[c][c];
      for (unsigned j = c; j <= deg; ++j) m[c][j] *= inv;
      for (unsigned i = 0; i < deg; ++i) {
        if (i == c || m[i][c] == 0) continue;
        const Rational factor = m[i][c];
        for (unsigned j = c; j <= deg; ++j) m[i][j] -= factor * m[c][j];
      }
    }
    std::vector<Rational> x(deg);
    for (unsigned i = 0; i < deg; ++i) x[i] = m[i][deg];
    return Cyclotomic(field_, std::move(x));
  }

  /// Human-readable form, e.g. "1/2 + 3*z12^2".
  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      std::string coeff = toString(c_[k]);
      std::string term;
      if (k == 0) {
        term = coeff;
      } else {
        std::string power = "z" + std::to_string(conductor()) + (k > 1 ? "^" + std::to_string(k) : "");
        if (coeff == "1") term = power;
        else if (coeff == "-1") term = "-" + power;
        else term = coeff + "*" + power;
      }
      if (out.empty()) out = term;
      else if (term[0] == '-') out += " - " + term.substr(1);
      else out += " + " + term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  Cyclotomic(std::shared_ptr<const CyclotomicField> f, std::vector<Rational> c) : field_(std::move(f)), c_(std::move(c)) {}

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> c_;
};

inline bool isZero(const Cyclotomic& x) { return x.isZero(); }
inline Cyclotomic conjugate(const Cyclotomic& x) { return x.conj(); }

/// The imaginary unit as an element of Q(zeta_4).
inline Cyclotomic imaginaryUnit() { return Cyclotomic::zeta(4); }

}  // namespace gbdual
