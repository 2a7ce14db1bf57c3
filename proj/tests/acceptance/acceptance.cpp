// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "gbdual/cli.hpp"
#include "gbdual/gbdual.hpp"

using namespace gbdual;
using namespace gbdual::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = GBDUAL_FIXTURES;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failures; the first few messages are kept for the report.
struct Checker {
  std::size_t checks = 0, failures = 0;
  std::vector<std::string> messages;
  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (messages.size() < 3) messages.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    std::string detail = summary + ", " + std::to_string(checks) + " checks";
    for (const auto& m : messages) detail += "; " + m;
    return {failures == 0, detail};
  }
};

std::vector<std::pair<std::string, ComplexPtr>> baseSpaces() {
  return {{"S1", shareComplex(complexes::circle())},
          {"S2", shareComplex(complexes::sphere())},
          {"RP2", shareComplex(complexes::projectivePlane())},
          {"T2", shareComplex(complexes::torus())}};
}

/// Extensions whose abelianized row is exact.
std::vector<std::pair<std::string, Extension>> exactExtensions() {
  std::vector<std::pair<std::string, Extension>> out;
  out.emplace_back("Z2<Z4", z2z4());
  auto klein = share(GroupTable::fromPermutations({{1, 0, 2, 3}, {0, 1, 3, 2}}));
  out.emplace_back("Z2<Z2xZ2", makeExtension(klein, generatedSubgroup(*klein, {klein->generatorIndices()[0]})));
  auto s3z2 = share(GroupTable::fromPermutations({{1, 2, 0, 3, 4}, {1, 0, 2, 3, 4}, {0, 1, 2, 4, 3}}));
  out.emplace_back("Z2<S3xZ2", makeExtension(s3z2, generatedSubgroup(*s3z2, {s3z2->generatorIndices()[2]})));
  auto z9 = cyclic(9);
  out.emplace_back("Z3<Z9", makeExtension(z9, generatedSubgroup(*z9, {z9->power(z9->generatorIndices()[0], 3)})));
  return out;
}

// 1. delta of a pushed-forward N-cocycle vanishes.
Outcome obstructionNecessity() {
  Checker check;
  std::mt19937_64 rng(101);
  const auto spaces = baseSpaces();
  std::size_t samples = 0;
  for (const auto& [ename, e] : exactExtensions()) {
    const auto row = abelianizedRow(e);
    for (int k = 0; k < 52; ++k) {
      const auto& [xname, cx] = spaces[static_cast<std::size_t>(k) % spaces.size()];
      const auto n = randomCocycle(cx, e.N, rng);
      const auto d = dixmierDouady(row, pushforward(e.p, n));
      check(d.isZero(), ename + " over " + xname + ": nonzero delta of a pushforward");
      ++samples;
    }
  }
  return check.outcome(std::to_string(samples) + " random N-cocycles over 4 extensions");
}

// 2. The RP2 generator: nonzero delta, and no lift among all 2^15 assignments.
Outcome nonzeroObstruction() {
  Checker check;
  const auto e = z2z4();
  const auto cx = shareComplex(complexes::projectivePlane());
  GCochain1 c{cx, e.Q, rp2GeneratorValues()};
  const Cocycle1 q(c);
  const auto d = dixmierDouady(e, q);
  check(!d.isZero(), "delta vanishes");
  const auto search = liftSearch(e, q);
  check(!search.lift.has_value(), "liftSearch returned a lift");

  // independent enumeration of every choice in the fibres over q
  const std::size_t m = cx->edges().size();
  std::vector<std::vector<Element>> fibre(m);
  for (std::size_t k = 0; k < m; ++k)
    for (Element x = 0; x < e.N->order(); ++x)
      if (e.p(x) == q.values[k]) fibre[k].push_back(x);
  std::size_t assignments = 0, lifts = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    ++assignments;
    std::vector<Element> v(m);
    for (std::size_t k = 0; k < m; ++k) v[k] = fibre[k][(mask >> k) & 1];
    bool ok = true;
    for (const auto& t : cx->triangles()) {
      const Element ij = v[cx->indexOf({t[0], t[1]})], jk = v[cx->indexOf({t[1], t[2]})], ik = v[cx->indexOf({t[0], t[2]})];
      if (e.N->mul(ij, jk) != ik) {
        ok = false;
        break;
      }
    }
    lifts += ok;
  }
  check(assignments == 32768, "wrong number of assignments");
  check(lifts == 0, std::to_string(lifts) + " lifts found by enumeration");
  check(d.isZero() == (lifts > 0), "delta and the enumeration disagree");
  return check.outcome("delta = " + std::string(d.isZero() ? "0" : "[1]") + ", " + std::to_string(assignments) +
                       " assignments enumerated, " + std::to_string(search.nodes) + " search nodes");
}

// 3. delta and equivalence are invariant under gauge transformations.
Outcome equivalenceInvariance() {
  Checker check;
  std::mt19937_64 rng(303);
  const auto spaces = baseSpaces();
  const auto exts = exactExtensions();
  for (int k = 0; k < 100; ++k) {
    const auto& e = exts[static_cast<std::size_t>(k) % exts.size()].second;
    const auto& cx = spaces[static_cast<std::size_t>(k / 4) % spaces.size()].second;
    const auto q = randomCocycle(cx, e.Q, rng);
    std::uniform_int_distribution<Element> pick(0, e.Q->order() - 1);
    std::vector<Element> u(cx->vertexCount());
    for (auto& x : u) x = pick(rng);
    const auto qp = gaugeTransform(q, u);
    check(dixmierDouady(e, q) == dixmierDouady(e, qp), "delta changed under a gauge transformation");
    const auto w = areEquivalent(q, qp);
    check(w.has_value(), "areEquivalent missed a gauge transformation");
    if (w) check(gaugeTransform(qp, *w) == q, "returned gauge does not carry one cocycle to the other");
  }
  return check.outcome("100 random pairs");
}

// 4. Reynolds rank equals the character sum.
Outcome intertwinerDimensions() {
  Checker check;
  auto trivialU1 = makeSample("trivial<U(1)", 1, {}, {mat(1, {-1})});
  std::vector<Sample> samples{trivialU1, sampleTrivial(), sampleZ2(), sampleZ3(), sampleZ4(), sampleS3(), sampleQ8()};
  std::size_t pairs = 0;
  for (const auto& sample : samples) {
    const auto rep = sample.gRep();
    const std::size_t d = rep.dimension();
    for (std::size_t r = 0; r <= 6; ++r)
      for (std::size_t s = 0; r + s <= 6; ++s) {
        const std::size_t reynolds = reynoldsImage(rep, r, s).rank();
        const std::size_t chars = characterDimension(rep, r, s);
        const std::string at = sample.name + " (" + std::to_string(r) + "," + std::to_string(s) + ")";
        check(reynolds == chars, at + ": Reynolds " + std::to_string(reynolds) + " vs characters " + std::to_string(chars));
        if (rep.group()->order() == 1) check(reynolds == ipow(d, r + s), at + ": not d^(r+s)");
        if (sample.name == "Z2") check(reynolds == ((r + s) % 2 == 0 ? 1u : 0u), at + ": parity rule");
        ++pairs;
      }
    if (sample.name == "S3") {
      check(characterDimension(rep, 2, 2) == 3, "S3 (2,2) != 3");
      check(characterDimension(rep, 3, 3) == 11, "S3 (3,3) != 11");
    }
  }
  return check.outcome(std::to_string(pairs) + " (group, r, s) triples");
}

CMatrix randomIntertwiner(const IntertwinerBasis& b, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  CMatrix out(ipow(b.d, b.s), ipow(b.d, b.r));
  for (const auto& t : b.basis) out = out + Cyclotomic(c(rng)) * t;
  return out;
}

// 5. hat-u is a symmetric tensor *-autofunctor fixing the flips.
Outcome autofunctorLaws() {
  Checker check;
  std::mt19937_64 rng(505);
  std::size_t elements = 0;
  for (const auto& sample : allSamples()) {
    const auto& A = *sample.ambient.group();
    const auto rep = sample.gRep();
    const std::size_t d = rep.dimension();
    const auto norm = normalizerInAmbient(A, sample.sub);
    for (Element u : norm) {
      ++elements;
      const CMatrix U = sample.ambient.matrix(u);
      auto hat = [&](const CMatrix& t, std::size_t r, std::size_t s) { return hatAction(U, t, r, s); };
      for (std::size_t r = 0; r <= 4; ++r)
        for (std::size_t s = 0; r + s <= 4; ++s) {
          const std::string at = sample.name + " u=" + std::to_string(u) + " (" + std::to_string(r) + "," + std::to_string(s) + ")";
          const auto theta = flip(d, r, s);
          check(hat(theta, r + s, r + s) == theta, at + ": theta not fixed");
          const auto b = intertwiners(rep, r, s);
          const auto t = randomIntertwiner(b, rng);
          const auto ht = hat(t, r, s);
          check(isIntertwiner(rep, ht, r, s), at + ": image is not an intertwiner");
          check(hat(adjoint(t), s, r) == adjoint(ht), at + ": adjoint");
          for (Element g : sample.sub) check(hatAction(sample.ambient.matrix(A.mul(u, g)), t, r, s) == ht, at + ": (ug)-hat differs");
          // composition through an intermediate degree m with r + m, m + s within the bound
          for (std::size_t m = 0; r + m <= 4 && m + s <= 4; ++m) {
            const auto t1 = randomIntertwiner(intertwiners(rep, r, m), rng);
            const auto t2 = randomIntertwiner(intertwiners(rep, m, s), rng);
            check(hat(t2 * t1, r, s) == hat(t2, m, s) * hat(t1, r, m), at + ": composition");
          }
          // tensor with a second arrow, keeping the total degree within 4
          for (std::size_t r2 = 0; r + s + r2 <= 4; ++r2)
            for (std::size_t s2 = 0; r + s + r2 + s2 <= 4; ++s2) {
              const auto t2 = randomIntertwiner(intertwiners(rep, r2, s2), rng);
              check(hat(kron(t, t2), r + r2, s + s2) == kron(ht, hat(t2, r2, s2)), at + ": tensor");
            }
        }
    }
  }
  return check.outcome(std::to_string(elements) + " normalizer elements over " + std::to_string(allSamples().size()) + " samples");
}

// Solutions of udAction(g, a) = a for the generators of G, in monomial coordinates.
EchelonBasis<Cyclotomic> fixedByWords(const UnitaryRep& rep, std::size_t r, std::size_t s) {
  const std::size_t d = rep.dimension(), dr = ipow(d, r), n = ipow(d, s) * dr;
  const auto gens = rep.group()->generatingSet();
  CMatrix eq(std::max<std::size_t>(gens.size(), 1) * n, n);
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

// 6. Word products agree with matrix products; G-fixed words are the intertwiners.
Outcome cuntzMatrixConsistency() {
  Checker check;
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<std::size_t> deg(0, 3);
  for (int k = 0; k < 500; ++k) {
    const std::size_t s = deg(rng), m = deg(rng), r = deg(rng);
    const auto a = randomGraded(2, s, m, rng), b = randomGraded(2, m, r, rng);
    check(toMatrix(multiply(a, b), s, r) == toMatrix(a, s, m) * toMatrix(b, m, r), "product mismatch");
  }
  std::size_t spaces = 0;
  for (const auto& sample : allSamples()) {
    const auto rep = sample.gRep();
    if (rep.dimension() != 2) continue;
    for (std::size_t r = 0; r <= 3; ++r)
      for (std::size_t s = 0; s <= 3; ++s) {
        check(fixedByWords(rep, r, s) == intertwiners(rep, r, s).echelon,
              sample.name + " (" + std::to_string(r) + "," + std::to_string(s) + "): fixed words differ");
        ++spaces;
      }
  }
  return check.outcome("500 random graded pairs, " + std::to_string(spaces) + " fixed-point spaces");
}

NormalizerSetting untwisted(const UnitaryRep& gRep) {
  return settingFromExtension(makeExtension(gRep.group(), generatedSubgroup(*gRep.group(), gRep.group()->generatingSet())), gRep);
}

// 7. K-theory base cases.
Outcome ktheoryBaseCases() {
  Checker check;
  const auto s3 = sampleS3().gRep(), z3 = sampleZ3().gRep();
  const auto ks3 = k0Point(s3), kz3 = k0Point(z3);
  check(ks3.rank() == 3 && ks3.stabilizedAt == std::optional<std::size_t>(2), "k0Point(S3) = " + ks3.name());
  check(kz3.rank() == 3 && kz3.stabilizedAt == std::optional<std::size_t>(2), "k0Point(Z3) = " + kz3.name());

  const auto circle = shareComplex(complexes::circle());
  auto trivialGroup = share(GroupTable::fromPermutations({{0}}));
  const UnitaryRep trivialRep(trivialGroup, 1, 1, {CMatrix::identity(1)});
  const auto settingT = untwisted(trivialRep);
  const auto scT = buildSpecialCategory(circle, settingT, Cocycle1::trivial(circle, settingT.extension.Q), 2);
  const auto kt = k0Graph(scT);
  check(kt.rank() == 1, "k0Graph(circle, trivial G) = " + kt.name());

  const auto settingS = untwisted(s3);
  const auto scS = buildSpecialCategory(circle, settingS, Cocycle1::trivial(circle, settingS.extension.Q), 2);
  const auto kc = k0Graph(scS);
  check(kc.rank() == 3, "k0Graph(circle, trivial q, S3) = " + kc.name());
  return check.outcome("point S3 " + ks3.name() + ", point Z3 " + kz3.name() + ", circle trivial " + kt.name() +
                       ", circle S3 " + kc.name());
}

// 8. Embeddable implies delta = 0 and valid emitted cocycles.
void checkEmbedding(const SpecialCategory& sc, const std::string& name, Checker& check, std::size_t& embeddable) {
  const auto st = embeddingStatus(sc);
  if (st.kind != EmbeddingKind::Embeddable) {
    check(!st.lift.has_value(), name + ": lift reported without Embeddable");
    return;
  }
  ++embeddable;
  const auto& e = sc.extension();
  const auto& cx = *sc.complex;
  check(!st.delta || st.delta->isZero(), name + ": Embeddable with nonzero delta");
  check(st.lift.has_value(), name + ": Embeddable without a lift");
  if (!st.lift) return;
  const auto& n = *st.lift;
  for (std::size_t k = 0; k < n.values.size(); ++k) {
    check(e.p(n.values[k]) == sc.q.values[k], name + ": pushforward differs on an edge");
    check(st.vectorBundle[k] == sc.setting.nRep.matrix(n.values[k]), name + ": rank-d transition is not the lift's matrix");
  }
  auto edge = [&](std::size_t a, std::size_t b) { return cx.indexOf({a, b}); };
  for (const auto& t : cx.triangles()) {
    const auto ij = edge(t[0], t[1]), jk = edge(t[1], t[2]), ik = edge(t[0], t[2]);
    check(st.vectorBundle[ij] * st.vectorBundle[jk] == st.vectorBundle[ik], name + ": rank-d cocycle identity");
    const CMatrix& uij = sc.setting.nRep.matrix(n.values[ij]);
    for (Element g = 0; g < e.G->order(); ++g) {
      check(st.adjoint[ik][g] == st.adjoint[ij][st.adjoint[jk][g]], name + ": ad-cocycle identity");
      // ad(n_ij) g = n_ij g n_ij^{-1}, checked on matrices
      check(sc.setting.gRep.matrix(st.adjoint[ij][g]) == uij * sc.setting.gRep.matrix(g) * adjoint(uij), name + ": ad value");
    }
  }
}

Outcome embeddingConsistency() {
  Checker check;
  std::size_t categories = 0, embeddable = 0;
  io::Workspace ws;
  for (const auto& entry : fs::directory_iterator(kFixtures / "categories")) {
    const auto spec = ws.category(ws.open(entry.path()));
    const auto sc = buildSpecialCategory(spec.complex, spec.setting(), spec.cocycle, spec.rsBound);
    checkEmbedding(sc, entry.path().filename().string(), check, embeddable);
    ++categories;
  }
  // pushforwards of random N-cocycles are liftable by construction
  std::mt19937_64 rng(808);
  const auto st = z2z4Setting();
  for (const auto& [xname, cx] : baseSpaces()) {
    const auto n = randomCocycle(cx, st.extension.N, rng);
    const auto sc = buildSpecialCategory(cx, st, pushforward(st.extension.p, n), 2);
    const std::size_t before = embeddable;
    checkEmbedding(sc, "Z2<Z4 over " + xname, check, embeddable);
    check(embeddable == before + 1, "Z2<Z4 over " + xname + ": pushforward not Embeddable");
    ++categories;
  }
  return check.outcome(std::to_string(categories) + " categories, " + std::to_string(embeddable) + " embeddable");
}

// 9. The Q8 center extension is rejected with exit code 4.
Outcome exactnessDetection() {
  Checker check;
  std::ostringstream out, err;
  const int code = cli::run({"extension", "check", "--extension", (kFixtures / "extensions/q8_center.json").string()}, out, err);
  check(code == 4, "exit code " + std::to_string(code));
  const auto report = io::Json::parse(out.str());
  check(report.value("diagnosis", "") == "iab-noninjective", "diagnosis " + report.value("diagnosis", std::string("none")));
  return check.outcome("exit " + std::to_string(code) + ", diagnosis " + report.value("diagnosis", std::string("none")));
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double limit;  // seconds; 0 for none
  };
  const std::vector<Criterion> criteria{
      {"obstruction necessity", obstructionNecessity, 60},
      {"nonzero obstruction", nonzeroObstruction, 30},
      {"equivalence invariance", equivalenceInvariance, 0},
      {"intertwiner dimensions", intertwinerDimensions, 120},
      {"symmetric autofunctor laws", autofunctorLaws, 0},
      {"Cuntz/matrix consistency", cuntzMatrixConsistency, 0},
      {"K-theory base cases", ktheoryBaseCases, 60},
      {"embedding/duality consistency", embeddingConsistency, 0},
      {"exactness failure detection", exactnessDetection, 0},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[k].limit > 0 && secs > criteria[k].limit) {
      o.pass = false;
      o.detail += "; over the time limit of " + std::to_string(static_cast<int>(criteria[k].limit)) + " s";
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].name << ": " << o.detail << " ("
              << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
