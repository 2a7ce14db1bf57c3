#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gbdual/representation.hpp"

namespace gbdual {

/// Letters 1..d; the empty word is the unit.
using MultiIndex = std::vector<unsigned>;

inline std::string wordName(const MultiIndex& w) {
  std::string out;
  for (auto k : w) out += "s(" + std::to_string(k) + ")";
  return out;
}

/// Big-endian position of e_{i_1} ⊗ ... ⊗ e_{i_r} in H^r.
inline std::size_t wordIndex(const MultiIndex& w, std::size_t d) {
  std::size_t idx = 0;
  for (auto k : w) idx = idx * d + (k - 1);
  return idx;
}

inline MultiIndex wordAt(std::size_t idx, std::size_t d, std::size_t r) {
  MultiIndex w(r);
  for (std::size_t k = r; k-- > 0;) {
    w[k] = static_cast<unsigned>(idx % d) + 1;
    idx /= d;
  }
  return w;
}

/// Coefficient in the expression syntax: "1/2 - 3·z(12,2)".
inline std::string coefficientExpr(const Cyclotomic& c) {
  std::string out;
  const auto& coeffs = c.coefficients();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    const bool neg = coeffs[k] < 0;
    std::string term = toString(neg ? Rational(-coeffs[k]) : coeffs[k]);
    if (k > 0) term += "·z(" + std::to_string(c.conductor()) + "," + std::to_string(k) + ")";
    if (out.empty()) out = neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

/// Finite sum of monomials c * psi_I psi_J^*, kept in normal form (one
/// entry per (I, J), no zero coefficients).
class CuntzElement {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;

  explicit CuntzElement(std::size_t d = 1) : d_(d) {
    if (d == 0) throw ValidationError("Cuntz algebra needs d >= 1");
  }

  static CuntzElement monomial(std::size_t d, MultiIndex I, MultiIndex J, Cyclotomic c = Cyclotomic(1)) {
    CuntzElement out(d);
    out.add(std::move(I), std::move(J), std::move(c));
    return out;
  }
  static CuntzElement unit(std::size_t d) { return monomial(d, {}, {}); }
  static CuntzElement scalar(std::size_t d, Cyclotomic c) { return monomial(d, {}, {}, std::move(c)); }
  /// psi_k, or psi_k^* when starred.
  static CuntzElement generator(std::size_t d, unsigned k, bool starred = false) {
    return starred ? monomial(d, {}, {k}) : monomial(d, {k}, {});
  }

  std::size_t d() const { return d_; }
  const std::map<Key, Cyclotomic>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(MultiIndex I, MultiIndex J, const Cyclotomic& c) {
    for (const auto* w : {&I, &J})
      for (auto k : *w)
        if (k < 1 || k > d_)
          throw ValidationError("letter " + std::to_string(k) + " outside 1.." + std::to_string(d_));
    if (c.isZero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{std::move(I), std::move(J)}, c);
    if (inserted) return;
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }

  CuntzElement& operator+=(const CuntzElement& o) {
    requireSameD(o);
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
    return *this;
  }
  CuntzElement& operator-=(const CuntzElement& o) {
    requireSameD(o);
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
    return *this;
  }
  friend CuntzElement operator+(CuntzElement a, const CuntzElement& b) { return a += b; }
  friend CuntzElement operator-(CuntzElement a, const CuntzElement& b) { return a -= b; }
  friend CuntzElement operator*(const Cyclotomic& s, const CuntzElement& a) {
    CuntzElement out(a.d_);
    for (const auto& [key, c] : a.terms_) out.add(key.first, key.second, s * c);
    return out;
  }
  friend bool operator==(const CuntzElement& a, const CuntzElement& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

  /// (|I|, |J|) if all monomials share it; the zero element is graded of any
  /// degree and reports nullopt here.
  std::optional<std::pair<std::size_t, std::size_t>> degrees() const {
    std::optional<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [key, c] : terms_) {
      std::pair<std::size_t, std::size_t> deg{key.first.size(), key.second.size()};
      if (out && *out != deg) return std::nullopt;
      out = deg;
    }
    return out;
  }
  bool isGraded() const { return isZero() || degrees().has_value(); }

  /// "s(1)s(2)* + (1/2·z(4,1))s(1)s(1)*"; parseable by parseCuntz.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
      std::string word = wordName(key.first);
      for (auto it = key.second.rbegin(); it != key.second.rend(); ++it) word += "s(" + std::to_string(*it) + ")*";
      std::string term;
      if (c == Cyclotomic(1)) term = word.empty() ? "1" : word;
      else if (c == Cyclotomic(-1)) term = word.empty() ? "-1" : "-" + word;
      else term = "(" + coefficientExpr(c) + ")" + word;
      if (out.empty()) out = term;
      else if (term[0] == '-') out += " - " + term.substr(1);
      else out += " + " + term;
    }
    return out;
  }

 private:
  void requireSameD(const CuntzElement& o) const {
    if (o.d_ != d_) throw DimensionMismatch("Cuntz elements over different d");
  }

  std::size_t d_;
  std::map<Key, Cyclotomic> terms_;
};

namespace detail {

inline bool isPrefix(const MultiIndex& p, const MultiIndex& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

}  // namespace detail

/// psi_I psi_J^* psi_K psi_L^*: psi_J^* psi_K cancels letter by letter
/// (psi_i^* psi_j = delta_ij); the longer word keeps its unmatched tail.
inline CuntzElement multiply(const CuntzElement& a, const CuntzElement& b) {
  if (a.d() != b.d()) throw DimensionMismatch("Cuntz elements over different d");
  CuntzElement out(a.d());
  for (const auto& [ka, ca] : a.terms()) {
    const auto& [I, J] = ka;
    for (const auto& [kb, cb] : b.terms()) {
      const auto& [K, L] = kb;
      if (detail::isPrefix(J, K)) {
        MultiIndex word = I;
        word.insert(word.end(), K.begin() + static_cast<std::ptrdiff_t>(J.size()), K.end());
        out.add(std::move(word), L, ca * cb);
      } else if (detail::isPrefix(K, J)) {
        MultiIndex word = L;
        word.insert(word.end(), J.begin() + static_cast<std::ptrdiff_t>(K.size()), J.end());
        out.add(I, std::move(word), ca * cb);
      }
    }
  }
  return out;
}

inline CuntzElement operator*(const CuntzElement& a, const CuntzElement& b) { return multiply(a, b); }

inline CuntzElement adjoint(const CuntzElement& a) {
  CuntzElement out(a.d());
  for (const auto& [key, c] : a.terms()) out.add(key.second, key.first, c.conj());
  return out;
}

/// psi_I psi_J^* as the matrix unit |e_I><e_J| : H^r -> H^s.
inline CMatrix toMatrix(const CuntzElement& a, std::size_t s, std::size_t r) {
  const std::size_t d = a.d();
  CMatrix out(ipow(d, s), ipow(d, r));
  for (const auto& [key, c] : a.terms()) {
    if (key.first.size() != s || key.second.size() != r)
      throw DimensionMismatch("monomial of degree (" + std::to_string(key.first.size()) + "," +
                              std::to_string(key.second.size()) + ") in an element read as degree (" +
                              std::to_string(s) + "," + std::to_string(r) + ")");
    out(wordIndex(key.first, d), wordIndex(key.second, d)) += c;
  }
  return out;
}

inline CMatrix toMatrix(const CuntzElement& a) {
  const auto deg = a.degrees();
  if (!deg) throw DimensionMismatch(a.isZero() ? "zero element has no intrinsic degree" : "element is not graded");
  return toMatrix(a, deg->first, deg->second);
}

/// Inverse of toMatrix for a d^s x d^r matrix.
inline CuntzElement fromMatrix(std::size_t d, const CMatrix& m, std::size_t s, std::size_t r) {
  if (m.rows() != ipow(d, s) || m.cols() != ipow(d, r)) throw DimensionMismatch("matrix size does not match d^s x d^r");
  CuntzElement out(d);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) out.add(wordAt(i, d, s), wordAt(j, d, r), m(i, j));
  return out;
}

/// psi_i -> sum_j u_ji psi_j on every leg, conjugated on the starred legs.
inline CuntzElement udAction(const CMatrix& u, const CuntzElement& a) {
  const std::size_t d = a.d();
  if (u.rows() != d || u.cols() != d) throw DimensionMismatch("u must be d x d");
  if (!(u * adjoint(u) == CMatrix::identity(d))) throw ValidationError("u is not unitary");
  // expand one word into a sum of words
  auto expand = [&](const MultiIndex& w, bool conj) {
    std::vector<std::pair<MultiIndex, Cyclotomic>> acc{{{}, Cyclotomic(1)}};
    for (auto letter : w) {
      std::vector<std::pair<MultiIndex, Cyclotomic>> next;
      for (const auto& [word, c] : acc)
        for (std::size_t j = 0; j < d; ++j) {
          const Cyclotomic& x = u(j, letter - 1);
          if (x.isZero()) continue;
          MultiIndex nw = word;
          nw.push_back(static_cast<unsigned>(j + 1));
          next.push_back({std::move(nw), c * (conj ? x.conj() : x)});
        }
      acc = std::move(next);
    }
    return acc;
  };
  CuntzElement out(d);
  for (const auto& [key, c] : a.terms()) {
    const auto left = expand(key.first, false), right = expand(key.second, true);
    for (const auto& [I, x] : left)
      for (const auto& [J, y] : right) out.add(I, J, c * x * y);
  }
  return out;
}

namespace detail {

// expr   := term { ('+' | '-') term }
// term   := ['-'] factor { ['·' | '.'] factor }
// factor := atom ['*']          postfix * is the adjoint
// atom   := 's(' k ')' | 'z(' n [',' k] ')' | rational | '(' expr ')'
class CuntzParser {
 public:
  CuntzParser(std::size_t d, std::string_view text) : d_(d), text_(text) {}

  CuntzElement parse() {
    CuntzElement out = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("Cuntz expression, position " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!eat(token)) fail("expected '" + std::string(token) + "'");
  }
  bool atomAhead() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 's' || c == 'z' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }
  std::string number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  CuntzElement expr() {
    CuntzElement out = term();
    for (;;) {
      if (eat("+")) out += term();
      else if (eat("-")) out -= term();
      else return out;
    }
  }

  CuntzElement term() {
    const bool negative = eat("-");
    CuntzElement out = factor();
    for (;;) {
      if (eat("·") || eat(".")) out = multiply(out, factor());
      else if (atomAhead()) out = multiply(out, factor());
      else break;
    }
    return negative ? Cyclotomic(-1) * out : out;
  }

  CuntzElement factor() {
    CuntzElement a = atom();
    if (eat("*")) return adjoint(a);
    return a;
  }

  CuntzElement atom() {
    if (eat("s(")) {
      const auto k = parseInteger(number());
      expect(")");
      if (k < 1 || k > d_) fail("letter " + k.str() + " outside 1.." + std::to_string(d_));
      return CuntzElement::generator(d_, k.convert_to<unsigned>());
    }
    if (eat("z(")) {
      const auto n = parseInteger(number());
      Integer k = 1;
      if (eat(",")) {
        const bool neg = eat("-");
        k = parseInteger(number());
        if (neg) k = -k;
      }
      expect(")");
      if (n < 1 || n > 100000) fail("conductor out of range");
      return CuntzElement::scalar(d_, Cyclotomic::zeta(n.convert_to<unsigned>(), toInt64(k)));
    }
    if (eat("(")) {
      CuntzElement inner = expr();
      expect(")");
      return inner;
    }
    std::string num = number();
    if (eat("/")) num += "/" + number();
    return CuntzElement::scalar(d_, Cyclotomic(parseRational(num)));
  }

  std::size_t d_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses e.g. "s(1)s(2)*·s(2)s(1)*" or "(1/2)s(1)s(1)* - z(4)s(2)s(2)*".
inline CuntzElement parseCuntz(std::size_t d, std::string_view text) { return detail::CuntzParser(d, text).parse(); }

}  // namespace gbdual
