#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gbdual/cli.hpp"
#include "support.hpp"

using namespace gbdual;
using namespace gbdual::testing;
using gbdual::io::Json;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = GBDUAL_FIXTURES;

struct Invocation {
  int code;
  std::string out, err;
  Json report() const { return Json::parse(out); }
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return (kFixtures / rel).string(); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gbdual_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("spec examples") {
  SECTION("delta of the RP2 generator") {
    const auto r = invoke({"cocycle", "delta", "--extension", fx("extensions/z2z4.json"), "--cocycle", fx("cocycles/rp2gen.json")});
    CHECK(r.code == 0);
    CHECK(r.report() == Json::parse(R"({"class": [1], "group": "Z2"})"));
  }
  SECTION("trivial cocycle lifts") {
    const auto r = invoke({"cocycle", "lift", "--extension", fx("extensions/z2z4.json"), "--cocycle", fx("cocycles/trivial.json")});
    CHECK(r.code == 0);
    CHECK(r.report().at("lift").at("edges").size() == 15);
  }
  SECTION("the RP2 generator has no lift") {
    const auto r = invoke({"cocycle", "lift", "--extension", fx("extensions/z2z4.json"), "--cocycle", fx("cocycles/rp2gen.json")});
    CHECK(r.code == 2);
    CHECK(r.report().at("exhaustive") == true);
  }
}

TEST_CASE("lift report is a lift of the input") {
  io::Workspace ws;
  const auto e = ws.extension(ws.open(fx("extensions/z2z4.json")));
  const auto q = ws.cocycle(ws.open(fx("cocycles/trivial.json")), e->Q);
  const auto r = invoke({"cocycle", "lift", "--extension", fx("extensions/z2z4.json"), "--cocycle", fx("cocycles/trivial.json")});
  Json lifted = r.report().at("lift");
  lifted["complex"] = fx("complexes/rp2.json");
  const auto n = ws.cocycle(io::Document{lifted, kFixtures, 0, "lift"}, e->N);
  CHECK(pushforward(e->p, n) == q);
}

TEST_CASE("exit codes") {
  SECTION("budget exhaustion is inconclusive") {
    const auto r = invoke({"cocycle", "lift", "--budget", "3", "--extension", fx("extensions/z2z4.json"), "--cocycle",
                           fx("cocycles/rp2gen.json")});
    CHECK(r.code == 3);
    CHECK(r.report().at("inconclusive") == true);
  }
  SECTION("budget from the environment") {
    ::setenv("GBDUAL_BUDGET", "5", 1);
    const auto r = invoke({"cocycle", "lift", "--extension", fx("extensions/z2z4.json"), "--cocycle", fx("cocycles/rp2gen.json")});
    ::unsetenv("GBDUAL_BUDGET");
    CHECK(r.code == 3);
    CHECK(r.report().at("budget") == 5);
  }
  SECTION("non-exact abelianized row") {
    const auto r = invoke({"extension", "check", "--extension", fx("extensions/q8_center.json")});
    CHECK(r.code == 4);
    CHECK(r.report().at("diagnosis") == "iab-noninjective");
  }
  SECTION("validation errors") {
    CHECK(invoke({"cocycle", "validate", "--cocycle", fx("nonexistent.json")}).code == 1);
    CHECK(invoke({"nonsense"}).code == 1);
    CHECK(invoke({"rep", "intertwiners", "--rep", fx("reps/s3_u2.json")}).code == 1);
    CHECK(invoke({"cuntz", "eval", "--d", "2", "--expr", "s(3)"}).code == 1);
    // the circle category is not over a 1-dimensional complex when built on RP2
    CHECK(invoke({"category", "k0", "--spec", fx("categories/z2z4_rp2.json")}).report().at("error") == "NotOneDimensional");
  }
  SECTION("obstructed embedding") {
    const auto r = invoke({"category", "embed", "--spec", fx("categories/z2z4_rp2.json")});
    CHECK(r.code == 2);
    CHECK(r.report().at("status") == "Obstructed");
  }
  SECTION("help") { CHECK(invoke({"--help"}).code == 0); }
}

TEST_CASE("every fixture validates") {
  std::size_t count = 0;
  for (const auto& entry : fs::recursive_directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    INFO(entry.path());
    const auto r = invoke({"validate", entry.path().string()});
    CHECK(r.code == 0);
    CHECK(r.report().at("valid") == true);
  }
  CHECK(count > 20);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"category", "build", "--spec", fx("categories/z3s3_circle.json")},
      {"category", "k0", "--spec", fx("categories/s3_circle.json")},
      {"category", "embed", "--spec", fx("categories/z2z4_circle.json")},
      {"group", "info", "--group", fx("reps/q8_u2.json")}};
  for (const auto& c : commands) {
    const auto a = invoke(c), b = invoke(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("--out writes the report") {
  const auto path = scratch("delta.json");
  fs::remove(path);
  const auto r = invoke({"--out", path.string(), "cocycle", "delta", "--extension", fx("extensions/z2z4.json"), "--cocycle",
                         fx("cocycles/rp2gen.json")});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(Json::parse(f) == Json::parse(R"({"class": [1], "group": "Z2"})"));
}

TEST_CASE("workspace") {
  io::Workspace ws;
  SECTION("identical content loads once") {
    const auto a = ws.group(ws.open(fx("groups/z2.json")));
    const auto copy = scratch("z2copy.json");
    fs::copy_file(fx("groups/z2.json"), copy, fs::copy_options::overwrite_existing);
    CHECK(ws.group(ws.open(copy)) == a);
    CHECK(ws.group(ws.open(fx("groups/z2.json"))) == a);
    CHECK_FALSE(ws.group(ws.open(fx("groups/z4.json"))) == a);
  }
  SECTION("a representation file serves as its group") {
    const auto rep = ws.representation(ws.open(fx("reps/z4_u1.json")));
    CHECK(ws.group(ws.open(fx("reps/z4_u1.json"))) == rep->group());
    CHECK(ws.extension(ws.open(fx("extensions/z2z4.json")))->N == rep->group());
  }
  SECTION("references are relative to the referencing file") {
    const auto c = ws.complex(ws.open(fx("complexes/circle.json")));
    const auto q = ws.cocycle(ws.open(fx("cocycles/circle_twist.json")));
    CHECK(q.complex == c);
  }
  SECTION("inline objects") {
    const Json doc = Json::parse(R"({"complex": {"vertices": 2, "facets": [[0, 1]]},
                                     "group": {"permutations": [[1, 0]]}, "edges": {"1-0": 1}})");
    const auto q = ws.cocycle(io::Document{doc, kFixtures, io::fnv1a(doc.dump()), "inline"});
    CHECK(q.value(0, 1) == 1);
  }
  SECTION("malformed cocycles") {
    auto load = [&](const char* text) { return ws.cocycle(io::Document{Json::parse(text), kFixtures, 0, "t"}); };
    CHECK_THROWS_AS(load(R"({"complex": "complexes/circle.json", "group": "groups/z2.json", "edges": {"0-1": 0, "1-2": 0}})"),
                    ValidationError);
    CHECK_THROWS_AS(load(R"({"complex": "complexes/circle.json", "group": "groups/z2.json",
                             "edges": {"0-1": 0, "1-2": 0, "0-2": 0, "2-0": 0}})"),
                    ValidationError);
    CHECK_THROWS_AS(load(R"({"complex": "complexes/path.json", "group": "groups/z2.json", "edges": {"0-1": 0, "1-2": 0, "0-2": 0}})"),
                    ValidationError);
    CHECK_THROWS_AS(load(R"({"complex": "complexes/circle.json", "group": "groups/z2.json", "edges": {"0-1": 0, "1-2": 0, "0-2": 5}})"),
                    ValidationError);
    // the cocycle identity
    CHECK_THROWS_AS(load(R"({"complex": {"vertices": 3, "facets": [[0, 1, 2]]}, "group": "groups/z2.json",
                             "edges": {"0-1": 1, "1-2": 0, "0-2": 0}})"),
                    ValidationError);
  }
  SECTION("category group mismatch") {
    const Json spec = Json::parse(R"({"complex": "complexes/circle.json", "extension": "extensions/z2z4.json",
                                      "rep": "reps/s3_u2.json", "cocycle": "cocycles/circle_twist.json"})");
    const auto s = ws.category(io::Document{spec, kFixtures, 0, "t"});
    CHECK_THROWS_AS(s.setting(), ValidationError);
  }
}

TEST_CASE("serialization round trips") {
  SECTION("scalars") {
    for (const auto& x : {Cyclotomic(Rational(-3, 7)), Cyclotomic(z(12, 5)) + Cyclotomic(Rational(1, 2)), Cyclotomic(z(3)) * Cyclotomic(2)}) {
      const Json j = io::toJson(x);
      CHECK(io::scalarFromJson(Json::parse(j.dump()), 0) == x);
    }
    CHECK(io::toJson(Cyclotomic(Rational(5, 4))) == "5/4");
    CHECK(io::scalarFromJson(Json::parse("[0, 1]"), 4) == Cyclotomic(z(4)));
    CHECK(io::scalarFromJson(Json::parse("-2"), 1) == Cyclotomic(-2));
    CHECK_THROWS_AS(io::scalarFromJson(Json::parse("[0, 1]"), 0), ValidationError);
    CHECK_THROWS_AS(io::scalarFromJson(Json::parse("1.5"), 1), ValidationError);
  }
  SECTION("Cuntz elements") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
      auto a = randomGraded(3, 2, 1, rng) + Cyclotomic(z(5)) * CuntzElement::monomial(3, {2}, {3, 1});
      CHECK(io::cuntzFromJson(Json::parse(io::toJson(a).dump())) == a);
    }
  }
  SECTION("representations") {
    io::Workspace ws;
    const auto rep = ws.representation(ws.open(fx("reps/s3_u2.json")));
    Json matrices = Json::array();
    for (Element g = 0; g < rep->group()->order(); ++g) matrices.push_back(io::toJson(rep->matrix(g)));
    const Json doc{{"d", 2}, {"conductor", 3}, {"group", io::toJson(*rep->group())}, {"matrices", matrices}};
    const auto again = ws.representation(io::Document{doc, kFixtures, io::fnv1a(doc.dump()), "t"});
    CHECK(*again->group() == *rep->group());
    for (Element g = 0; g < rep->group()->order(); ++g) CHECK(again->matrix(g) == rep->matrix(g));
  }
}

TEST_CASE("subcommands") {
  SECTION("group") {
    const auto info = invoke({"group", "info", "--group", fx("groups/s3.json")}).report();
    CHECK(info.at("order") == 6);
    CHECK(info.at("conjugacyClasses").size() == 3);
    CHECK(invoke({"group", "abelianize", "--group", fx("reps/q8_u2.json")}).report().at("group") == "Z2xZ2");
    const auto nz = invoke({"group", "normalizer", "--ambient", fx("groups/s3.json"), "--sub", "0,2"});
    CHECK(nz.code == 0);
    CHECK(nz.report().at("orders").at("N") == 2);
  }
  SECTION("extension") {
    const auto r = invoke({"extension", "make", "--N", fx("groups/s3.json"), "--G", "0,1,2"});
    CHECK(r.code == 1);  // {0,1,2} is not the rotation subgroup in this element order
    const auto ok = invoke({"extension", "make", "--N", fx("groups/s3.json"), "--G", "0,1,3"});
    CHECK(ok.code == 0);
    CHECK(ok.report().at("orders").at("Q") == 2);
    CHECK(invoke({"extension", "check", "--extension", fx("extensions/z2z4.json")}).code == 0);
    // Z3 is the commutator subgroup of S3, so i_ab vanishes
    CHECK(invoke({"extension", "check", "--extension", fx("extensions/z3s3.json")}).report().at("diagnosis") == "iab-noninjective");
  }
  SECTION("complex") {
    const auto v = invoke({"complex", "validate", "--complex", fx("complexes/torus.json")}).report();
    CHECK(v.at("euler") == 0);
    CHECK(v.at("homology")[1].at("free") == 2);
    CHECK(invoke({"complex", "h2", "--complex", fx("complexes/torus.json"), "--coeff", "2,4"}).report().at("group") == "Z2xZ4");
  }
  SECTION("cocycle") {
    CHECK(invoke({"cocycle", "validate", "--cocycle", fx("cocycles/rp2gen.json")}).code == 0);
    const auto eq = invoke({"cocycle", "equiv", "--cocycle", fx("cocycles/circle_twist.json"), "--other", fx("cocycles/circle_untwisted.json")});
    CHECK(eq.report().at("equivalent") == false);
    const auto same = invoke({"cocycle", "equiv", "--cocycle", fx("cocycles/circle_twist.json"), "--other", fx("cocycles/circle_twist.json")});
    CHECK(same.report().at("equivalent") == true);
  }
  SECTION("rep") {
    const auto r = invoke({"rep", "intertwiners", "--rep", fx("reps/s3_u2.json"), "--r", "2", "--s", "2"}).report();
    CHECK(r.at("dimension") == 3);
    CHECK(r.at("characterDimension") == 3);
    const auto v = invoke({"rep", "validate", "--rep", fx("reps/q8_u2.json")}).report();
    CHECK(v.at("specialUnitary") == true);
    CHECK(v.at("faithful") == true);
  }
  SECTION("cuntz") {
    const auto r = invoke({"cuntz", "eval", "--d", "2", "--expr", "s(1)s(2)*·s(2)s(1)*"});
    CHECK(r.report().at("normalForm") == "s(1)s(1)*");
    CHECK(invoke({"cuntz", "check-matrix", "--d", "2", "--expr", "s(1)s(2)* + z(3)s(2)s(1)*", "--rhs", "s(1)s(2)*s(2)*"}).code == 0);
    CHECK(invoke({"cuntz", "check-matrix", "--d", "2", "--expr", "s(1)s(2)*", "--rhs", "s(1)s(1)"}).code == 1);
  }
  SECTION("category") {
    const auto b = invoke({"category", "build", "--spec", fx("categories/z2z4_circle.json")}).report();
    CHECK(b.at("families").at("(0,2)").at("transitions").at("0-2") == Json::parse(R"([["-1"]])"));
    CHECK(invoke({"category", "delta", "--spec", fx("categories/z2z4_rp2.json")}).report().at("class") == Json::parse("[1]"));
    const auto k = invoke({"category", "k0", "--spec", fx("categories/z3s3_circle.json")}).report();
    CHECK(k.at("group") == "Z^2");
    const auto e = invoke({"category", "embed", "--spec", fx("categories/z2z4_circle.json")});
    CHECK(e.code == 0);
    CHECK(e.report().at("status") == "Embeddable");
  }
}
