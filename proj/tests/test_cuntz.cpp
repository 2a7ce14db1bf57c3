#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gbdual/cuntz.hpp"
#include "support.hpp"

using namespace gbdual;
using namespace gbdual::testing;

namespace {

CuntzElement psi(unsigned k) { return CuntzElement::generator(2, k); }
CuntzElement psiStar(unsigned k) { return CuntzElement::generator(2, k, true); }

// Solutions of udAction(g, a) = a for the generators of G, in monomial coordinates.
EchelonBasis<Cyclotomic> fixedByWords(const UnitaryRep& rep, std::size_t r, std::size_t s) {
  const std::size_t d = rep.dimension(), dr = ipow(d, r), n = ipow(d, s) * dr;
  const auto gens = rep.group()->generatingSet();
  CMatrix eq(gens.size() * n, n);
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::size_t col = 0; col < n; ++col) {
      const auto image = udAction(rep.matrix(gens[gi]), CuntzElement::monomial(d, wordAt(col / dr, d, s), wordAt(col % dr, d, r)));
      for (const auto& [key, c] : image.terms()) eq(gi * n + wordIndex(key.first, d) * dr + wordIndex(key.second, d), col) += c;
      eq(gi * n + col, col) -= Cyclotomic(1);
    }
  EchelonBasis<Cyclotomic> out(n);
  for (auto& v : nullspace(std::move(eq))) out.insert(std::move(v));
  return out;
}

}  // namespace

TEST_CASE("Cuntz relations") {
  CHECK(multiply(psiStar(1), psi(2)).isZero());
  CHECK(multiply(psiStar(1), psi(1)) == CuntzElement::unit(2));
  const auto a = parseCuntz(2, "s(1)s(2)*");
  const auto b = parseCuntz(2, "s(2)s(1)*");
  CHECK(multiply(a, b) == parseCuntz(2, "s(1)s(1)*"));
  CHECK(multiply(b, a) == parseCuntz(2, "s(2)s(2)*"));
  // psi_1^* psi_1 psi_2 = psi_2, psi_2^* psi_1 psi_1 = 0
  CHECK(parseCuntz(2, "s(1)*s(1)s(2)") == psi(2));
  CHECK(parseCuntz(2, "s(2)*s(1)s(1)").isZero());
  // psi_1 psi_2^* psi_2^* : the longer starred word survives
  CHECK(parseCuntz(2, "s(1)s(2)* · s(2)*") == CuntzElement::monomial(2, {1}, {2, 2}));
}

TEST_CASE("sum of range projections acts as the unit on the left") {
  const auto e = parseCuntz(3, "s(1)s(1)* + s(2)s(2)* + s(3)s(3)*");
  std::mt19937_64 rng(5);
  for (std::size_t s = 1; s <= 3; ++s)
    for (std::size_t r = 0; r <= 2; ++r) {
      const auto a = randomGraded(3, s, r, rng);
      CHECK(multiply(e, a) == a);
      CHECK(multiply(adjoint(a), e) == adjoint(a));
    }
  CHECK(toMatrix(e) == CMatrix::identity(3));
}

TEST_CASE("adjoint") {
  CHECK(adjoint(parseCuntz(2, "s(1)s(2)*")) == parseCuntz(2, "s(2)s(1)*"));
  const auto x = Cyclotomic(z(4)) * parseCuntz(2, "s(1)s(1)*");
  CHECK(adjoint(x) == Cyclotomic(-z(4)) * parseCuntz(2, "s(1)s(1)*"));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = randomGraded(2, 2, 1, rng) + randomGraded(2, 0, 3, rng);
    const auto b = randomGraded(2, 1, 2, rng);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(multiply(a, b)) == multiply(adjoint(b), adjoint(a)));
  }
}

TEST_CASE("normal form is confluent") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> deg(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = randomGraded(2, deg(rng), deg(rng), rng) + randomGraded(2, deg(rng), deg(rng), rng);
    const auto b = randomGraded(2, deg(rng), deg(rng), rng);
    const auto c = randomGraded(2, deg(rng), deg(rng), rng) + randomGraded(2, deg(rng), deg(rng), rng);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("matrix model") {
  std::mt19937_64 rng(17);
  SECTION("products match matrix composition") {
    std::uniform_int_distribution<std::size_t> deg(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t s = deg(rng), m = deg(rng), r = deg(rng);
      const auto a = randomGraded(2, s, m, rng), b = randomGraded(2, m, r, rng);
      CHECK(toMatrix(multiply(a, b), s, r) == toMatrix(a, s, m) * toMatrix(b, m, r));
    }
  }
  SECTION("adjoint is the conjugate transpose") {
    const auto a = randomGraded(2, 2, 3, rng, 10);
    CHECK(toMatrix(adjoint(a), 3, 2) == adjoint(toMatrix(a, 2, 3)));
  }
  SECTION("fromMatrix inverts toMatrix; monomials span the full matrix space") {
    const auto a = randomGraded(3, 2, 1, rng, 6);
    CHECK(fromMatrix(3, toMatrix(a), 2, 1) == a);
    EchelonBasis<Cyclotomic> span(27);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 3; ++j) span.insert(toMatrix(CuntzElement::monomial(3, wordAt(i, 3, 2), wordAt(j, 3, 1))).flat());
    CHECK(span.rank() == 27);
  }
  SECTION("flip as a word sum") {
    const auto theta = parseCuntz(2, "s(1)s(1)s(1)*s(1)* + s(1)s(2)s(1)*s(2)* + s(2)s(1)s(2)*s(1)* + s(2)s(2)s(2)*s(2)*");
    CHECK(toMatrix(theta) == flip(2, 1, 1));
    CuntzElement theta12(2);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        MultiIndex I = wordAt(b, 2, 2), J = wordAt(a, 2, 1);
        I.push_back(J[0]);
        J.insert(J.end(), I.begin(), I.begin() + 2);
        theta12.add(I, J, Cyclotomic(1));
      }
    CHECK(toMatrix(theta12) == flip(2, 1, 2));
  }
  SECTION("mixed degrees are refused") {
    CHECK_THROWS_AS(toMatrix(parseCuntz(2, "s(1) + s(1)s(2)*")), DimensionMismatch);
    CHECK_THROWS_AS(toMatrix(parseCuntz(2, "s(1)"), 1, 1), DimensionMismatch);
  }
}

TEST_CASE("U(d) action") {
  std::mt19937_64 rng(23);
  const auto a = randomGraded(2, 2, 1, rng);
  CHECK(udAction(CMatrix::identity(2), a) == a);
  CHECK_THROWS_AS(udAction(mat(2, {1, 1, 0, 1}), a), ValidationError);
  std::vector<CMatrix> unitaries{hadamard(), mat(2, {0, z(8), z(3), 0}), hadamard() * mat(2, {z(4), 0, 0, 1})};
  for (const auto& u : unitaries)
    for (std::size_t s = 0; s <= 3; ++s)
      for (std::size_t r = 0; s + r <= 3; ++r) {
        const auto x = randomGraded(2, s, r, rng, 5);
        CHECK(toMatrix(udAction(u, x), s, r) == hatAction(u, toMatrix(x, s, r), r, s));
      }
  // the action is multiplicative and *-preserving
  const auto b = randomGraded(2, 1, 2, rng);
  CHECK(udAction(hadamard(), multiply(a, b)) == multiply(udAction(hadamard(), a), udAction(hadamard(), b)));
  CHECK(udAction(hadamard(), adjoint(a)) == adjoint(udAction(hadamard(), a)));
}

TEST_CASE("words fixed by G are the intertwiners") {
  for (const auto& sample : allSamples()) {
    const auto rep = sample.gRep();
    for (std::size_t r = 0; r <= 2; ++r)
      for (std::size_t s = 0; r + s <= 3; ++s) {
        INFO(sample.name << " r=" << r << " s=" << s);
        const auto b = intertwiners(rep, r, s);
        CHECK(fixedByWords(rep, r, s) == b.echelon);
        for (const auto& t : b.basis)
          for (Element g = 0; g < rep.group()->order(); ++g) {
            const auto w = fromMatrix(rep.dimension(), t, s, r);
            CHECK(udAction(rep.matrix(g), w) == w);
          }
      }
  }
}

TEST_CASE("expression syntax") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = randomGraded(2, 2, 1, rng) + randomGraded(2, 0, 2, rng);
    a += Cyclotomic(Rational(1, 3)) * CuntzElement::monomial(2, {1}, {2}, z(12, 5));
    CHECK(parseCuntz(2, a.str()) == a);
  }
  CHECK(parseCuntz(2, "0").isZero());
  CHECK(parseCuntz(2, "1") == CuntzElement::unit(2));
  CHECK(parseCuntz(2, "(s(1)s(2))*") == parseCuntz(2, "s(2)*s(1)*"));
  CHECK(parseCuntz(2, "-1/2 s(1) + z(4,-1)s(2)") ==
        Cyclotomic(Rational(-1, 2)) * psi(1) + Cyclotomic(z(4, 3)) * psi(2));
  CHECK(parseCuntz(2, "s(1)s(2)*·s(2)s(1)*") == parseCuntz(2, "s(1)s(1)*"));
  CHECK_THROWS_AS(parseCuntz(2, "s(3)"), ValidationError);
  CHECK_THROWS_AS(parseCuntz(2, "s(1"), ValidationError);
  CHECK_THROWS_AS(parseCuntz(2, "s(1) )"), ValidationError);
  CHECK_THROWS_AS(parseCuntz(2, "s(1) + s(1)x"), ValidationError);
}
