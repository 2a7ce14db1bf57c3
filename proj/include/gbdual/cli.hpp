#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gbdual/io.hpp"

namespace gbdual::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kInvalid = 1, kNoLift = 2, kInconclusive = 3, kNotExact = 4 };

/// Outcome of one invocation: exit code, JSON report, one-line summary.
struct Result {
  int code = kOk;
  Json report;
  std::string summary;
};

inline std::size_t defaultBudget() {
  if (const char* env = std::getenv("GBDUAL_BUDGET")) {
    try {
      return static_cast<std::size_t>(toInt64(parseInteger(env)));
    } catch (const std::exception&) {
      throw ValidationError(std::string("GBDUAL_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultSearchBudget;
}

inline std::vector<Element> parseElementList(const std::string& text, const GroupTable& g) {
  std::vector<Element> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    const bool numeric = item.find_first_not_of("0123456789") == std::string::npos;
    out.push_back(io::Workspace::elementFromJson(g, numeric ? Json(std::stoull(item)) : Json(item)));
  }
  return out;
}

inline std::vector<Integer> parseIntList(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parseInteger(item));
  return out;
}

inline Json abelianizationJson(const Abelianization& ab) {
  Json proj = Json::array();
  for (const auto& x : ab.projection) proj.push_back(x);
  return Json{{"group", ab.group.name()}, {"invariantFactors", ab.group.invariantFactors()}, {"projection", proj}};
}

inline Json extensionJson(const Extension& e) {
  Json iImage = Json::array(), pImage = Json::array();
  for (Element g = 0; g < e.G->order(); ++g) iImage.push_back(e.i(g));
  for (Element n = 0; n < e.N->order(); ++n) pImage.push_back(e.p(n));
  return Json{{"orders", {{"G", e.G->order()}, {"N", e.N->order()}, {"Q", e.Q->order()}}},
              {"G", e.normalSubgroup()},
              {"i", iImage},
              {"p", pImage},
              {"section", e.section},
              {"Q", io::toJson(*e.Q)}};
}

inline Json homologyJson(const SimplicialComplex& c) {
  Json out = Json::array();
  for (const auto& h : integralHomology(c)) {
    Json torsion = Json::array();
    for (const auto& t : h.torsion) torsion.push_back(toInt64(t));
    out.push_back(Json{{"free", h.freeRank}, {"torsion", torsion}});
  }
  return out;
}

inline Json complexJson(const SimplicialComplex& c) {
  Json counts = Json::array();
  std::int64_t euler = 0;
  for (std::size_t k = 0; k <= c.dimension(); ++k) {
    counts.push_back(c.count(k));
    euler += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(c.count(k));
  }
  return Json{{"vertices", c.vertexCount()}, {"dimension", c.dimension()}, {"simplexCounts", counts},
              {"euler", euler}, {"homology", homologyJson(c)}};
}

inline bool isSpecialUnitary(const UnitaryRep& rep) {
  for (Element g = 0; g < rep.group()->order(); ++g)
    if (!(determinant(rep.matrix(g)) == Cyclotomic(1))) return false;
  return true;
}

inline Json embeddingJson(const EmbeddingStatus& st) {
  Json out{{"status", toString(st.kind)}, {"delta", st.delta ? io::toJson(*st.delta) : Json(nullptr)}, {"nodes", st.nodes},
           {"exhaustive", st.kind != EmbeddingKind::Embeddable}};
  if (!st.exactnessDiagnosis.empty()) out["exactnessFailure"] = st.exactnessDiagnosis;
  if (st.lift) {
    Json bundle = Json::array();
    for (const auto& m : st.vectorBundle) bundle.push_back(io::toJson(m));
    out["lift"] = io::toJson(*st.lift);
    out["vectorBundle"] = bundle;
    out["adjointBundle"] = st.adjoint;
  }
  return out;
}

/// Builds the command tree; `act` is set by the chosen subcommand.
class Runner {
 public:
  Result run(std::vector<std::string> args) {
    CLI::App app{"Exact computations for group bundles, intertwiner categories and Cuntz algebras", "gbdual"};
    app.require_subcommand(1);
    app.add_option("--out", out_, "write the JSON report to this file instead of stdout");
    app.add_option("--budget", budget_, "node budget for lift search (default: GBDUAL_BUDGET or 10000000)");
    setup(app);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      std::ostringstream o, err;
      const int code = app.exit(e, o, err);
      Result r;
      r.code = code == 0 ? kOk : kInvalid;
      r.summary = o.str() + err.str();
      if (code != 0) r.report = Json{{"error", "usage"}, {"message", e.what()}};
      return r;
    }
    if (!act_) return Result{kInvalid, Json{{"error", "usage"}, {"message", "no action"}}, "no action selected"};
    try {
      return act_();
    } catch (const ExactnessFailure& e) {
      return Result{kNotExact, Json{{"error", "ExactnessFailure"}, {"diagnosis", e.diagnosis()}, {"message", e.what()}}, e.what()};
    } catch (const SearchBudgetExceeded& e) {
      return Result{kInconclusive,
                    Json{{"error", "SearchBudgetExceeded"}, {"inconclusive", true}, {"budget", e.budget()}, {"nodes", e.nodes()}},
                    e.what()};
    } catch (const Error& e) {
      return Result{kInvalid, Json{{"error", errorName(e)}, {"message", e.what()}}, e.what()};
    } catch (const std::exception& e) {
      return Result{kInvalid, Json{{"error", "input"}, {"message", e.what()}}, e.what()};
    }
  }

  const std::string& outPath() const { return out_; }

 private:
  static std::string errorName(const Error& e) {
    if (dynamic_cast<const NotNormalizing*>(&e)) return "NotNormalizing";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
    if (dynamic_cast<const NotOneDimensional*>(&e)) return "NotOneDimensional";
    return "ValidationError";
  }

  std::size_t budget() const { return budget_ ? *budget_ : defaultBudget(); }
  io::Document doc(const std::string& path) { return ws_.open(path); }
  static void need(const std::string& value, const char* flag) {
    if (value.empty()) throw ValidationError(std::string("missing ") + flag);
  }

  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, std::function<Result()> f) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([this, f] { act_ = f; });
    return sub;
  }

  void setup(CLI::App& app) {
    setupGroup(app);
    setupExtension(app);
    setupComplex(app);
    setupCocycle(app);
    setupRep(app);
    setupCuntz(app);
    setupCategory(app);
    auto* v = leaf(&app, "validate", "load any fixture file and check it", [this] { return validate(); });
    v->add_option("file", file_, "JSON file")->required();
  }

  // ---- group --------------------------------------------------------------

  void setupGroup(CLI::App& app) {
    auto* g = app.add_subcommand("group", "finite groups")->require_subcommand(1);
    auto* info = leaf(g, "info", "order, classes, generators", [this] {
      need(group_, "--group");
      const auto G = ws_.group(doc(group_));
      Json classes = Json::array();
      for (const auto& c : G->conjugacyClasses()) classes.push_back(c);
      Json orders = Json::array();
      for (Element a = 0; a < G->order(); ++a) orders.push_back(G->elementOrder(a));
      Json rep{{"order", G->order()}, {"abelian", G->isAbelian()}, {"exponent", G->exponent()}, {"generators", G->generatingSet()},
               {"elementOrders", orders}, {"conjugacyClasses", classes}, {"table", io::toJson(*G)}};
      return Result{kOk, rep, "group of order " + std::to_string(G->order())};
    });
    info->add_option("--group", group_, "group or representation file");
    auto* ab = leaf(g, "abelianize", "abelianization and projection", [this] {
      need(group_, "--group");
      const auto a = abelianize(ws_.group(doc(group_)));
      return Result{kOk, abelianizationJson(a), "abelianization " + a.group.name()};
    });
    ab->add_option("--group", group_, "group or representation file");
    auto* nz = leaf(g, "normalizer", "normalizer of a subgroup inside an ambient group", [this] {
      need(ambient_, "--ambient");
      const auto A = ws_.group(doc(ambient_));
      const auto sub = parseElementList(sub_, *A);
      requireSubgroup(*A, sub);
      const auto norm = normalizerInAmbient(*A, sub);
      std::vector<Element> sorted = sub;
      std::sort(sorted.begin(), sorted.end());
      Json rep{{"subgroup", sorted}, {"normalizer", norm}, {"orders", {{"G", sub.size()}, {"N", norm.size()}, {"Q", norm.size() / sub.size()}}},
               {"normal", isNormal(*A, sub)}};
      return Result{kOk, rep, "normalizer of order " + std::to_string(norm.size())};
    });
    nz->add_option("--ambient", ambient_, "ambient group or representation file");
    nz->add_option("--sub", sub_, "subgroup elements \"i,j,...\" (indices or labels)")->required();
  }

  // ---- extension ------------------------------------------------------------

  void setupExtension(CLI::App& app) {
    auto* e = app.add_subcommand("extension", "group extensions 1 -> G -> N -> Q -> 1")->require_subcommand(1);
    auto* make = leaf(e, "make", "quotient N/G by a normal subgroup", [this] {
      need(n_, "--N");
      const auto N = ws_.group(doc(n_));
      const auto ext = makeExtension(N, parseElementList(g_, *N));
      Json rep = extensionJson(ext);
      rep["file"] = Json{{"N", n_}, {"G", ext.normalSubgroup()}};
      return Result{kOk, rep, "extension with |Q| = " + std::to_string(ext.Q->order())};
    });
    make->add_option("--N", n_, "middle group file");
    make->add_option("--G", g_, "normal subgroup \"i,j,...\"")->required();
    auto* check = leaf(e, "check", "exactness of the sequence and of its abelianized row", [this] {
      need(extension_, "--extension");
      const auto ext = ws_.extension(doc(extension_));
      const auto row = abelianizedRow(*ext);
      Json rep = extensionJson(*ext);
      rep["abelianized"] = Json{{"G", row.Gab.group.name()}, {"N", row.Nab.group.name()}, {"Q", row.Qab.group.name()}, {"exact", true}};
      return Result{kOk, rep, "abelianized row " + row.Gab.group.name() + " -> " + row.Nab.group.name() + " -> " + row.Qab.group.name() + " is exact"};
    });
    check->add_option("--extension", extension_, "extension file");
  }

  // ---- complex --------------------------------------------------------------

  void setupComplex(CLI::App& app) {
    auto* c = app.add_subcommand("complex", "finite simplicial complexes")->require_subcommand(1);
    auto* v = leaf(c, "validate", "closure, counts, integral homology", [this] {
      need(complex_, "--complex");
      const auto cx = ws_.complex(doc(complex_));
      return Result{kOk, complexJson(*cx), "complex with " + std::to_string(cx->vertexCount()) + " vertices"};
    });
    v->add_option("--complex", complex_, "complex file");
    auto* h2 = leaf(c, "h2", "H^2 with finite abelian coefficients", [this] {
      need(complex_, "--complex");
      const auto cx = ws_.complex(doc(complex_));
      const auto [coeffs, merge] = AbelianGroup::normalize(parseIntList(coeff_));
      (void)merge;
      const auto pres = h2Presentation(cx, coeffs);
      Json rep{{"coefficients", coeffs.name()}, {"group", pres->classGroup().name()},
               {"invariantFactors", pres->classGroup().invariantFactors()}};
      return Result{kOk, rep, "H^2 = " + pres->classGroup().name()};
    });
    h2->add_option("--complex", complex_, "complex file");
    h2->add_option("--coeff", coeff_, "cyclic orders \"m1,m2,...\"")->required();
  }

  // ---- cocycle --------------------------------------------------------------

  /// The cocycle over Q when an extension is given, else over its own group.
  Cocycle1 loadCocycle(const std::string& path, const std::shared_ptr<const Extension>& ext, bool overN = false) {
    need(path, "--cocycle");
    GroupPtr ctx = ext ? (overN ? ext->N : ext->Q) : nullptr;
    return ws_.cocycle(doc(path), ctx);
  }

  std::shared_ptr<const Extension> loadExtension(bool required) {
    if (extension_.empty()) {
      if (required) throw ValidationError("missing --extension");
      return nullptr;
    }
    return ws_.extension(doc(extension_));
  }

  void setupCocycle(CLI::App& app) {
    auto* c = app.add_subcommand("cocycle", "group-valued 1-cocycles")->require_subcommand(1);
    auto common = [this](CLI::App* sub) {
      sub->add_option("--extension", extension_, "extension file (the cocycle takes values in Q)");
      sub->add_option("--cocycle", cocycle_, "cocycle file");
      sub->add_option("--budget", budget_, "node budget for lift search");
    };
    common(leaf(c, "validate", "cocycle identity on every triangle", [this] {
      const auto q = loadCocycle(cocycle_, loadExtension(false));
      Json rep = io::toJson(q);
      rep["valid"] = true;
      rep["groupOrder"] = q.group->order();
      return Result{kOk, rep, "cocycle on " + std::to_string(q.values.size()) + " edges is valid"};
    }));
    auto* eq = leaf(c, "equiv", "search for a gauge transformation between two cocycles", [this] {
      const auto ext = loadExtension(false);
      const auto a = loadCocycle(cocycle_, ext);
      const auto b = loadCocycle(other_, ext);
      if (!(*a.group == *b.group)) throw ValidationError("cocycles take values in different groups");
      if (!(*a.complex == *b.complex)) throw ValidationError("cocycles live on different complexes");
      const auto u = areEquivalent(a, b);
      Json rep{{"equivalent", u.has_value()}};
      if (u) rep["gauge"] = *u;
      return Result{kOk, rep, u ? "equivalent" : "not equivalent"};
    });
    common(eq);
    eq->add_option("--other", other_, "second cocycle file")->required();
    common(leaf(c, "push", "push an N-cocycle forward along N -> Q", [this] {
      const auto ext = loadExtension(true);
      const auto n = loadCocycle(cocycle_, ext, true);
      const auto q = pushforward(ext->p, n);
      return Result{kOk, Json{{"cocycle", io::toJson(q)}}, "pushed forward to Q"};
    }));
    common(leaf(c, "delta", "obstruction class in H^2(X; G_ab)", [this] {
      const auto ext = loadExtension(true);
      const auto q = loadCocycle(cocycle_, ext);
      const auto d = dixmierDouady(*ext, q);
      return Result{kOk, io::toJson(d), d.isZero() ? "delta = 0" : "delta != 0 in " + d.presentation->classGroup().name()};
    }));
    common(leaf(c, "lift", "exhaustive search for an N-valued lift", [this] {
      const auto ext = loadExtension(true);
      const auto q = loadCocycle(cocycle_, ext);
      const auto r = liftSearch(*ext, q, budget());
      if (!r.lift) return Result{kNoLift, Json{{"exhaustive", true}, {"lift", nullptr}, {"nodes", r.nodes}}, "no lift exists"};
      return Result{kOk, Json{{"exhaustive", false}, {"lift", io::toJson(*r.lift)}, {"nodes", r.nodes}}, "lift found"};
    }));
  }

  // ---- rep ------------------------------------------------------------------

  void setupRep(CLI::App& app) {
    auto* c = app.add_subcommand("rep", "unitary matrix representations")->require_subcommand(1);
    leaf(c, "validate", "unitarity, multiplicativity, faithfulness", [this] {
      need(rep_, "--rep");
      const auto rep = ws_.representation(doc(rep_));
      Json out{{"d", rep->dimension()}, {"conductor", rep->conductor()}, {"groupOrder", rep->group()->order()},
               {"faithful", rep->isFaithful()}, {"specialUnitary", isSpecialUnitary(*rep)}};
      return Result{kOk, out, "representation of a group of order " + std::to_string(rep->group()->order())};
    })->add_option("--rep", rep_, "representation file");
    auto* in = leaf(c, "intertwiners", "basis of (H^r, H^s)_G", [this] {
      need(rep_, "--rep");
      const auto rep = ws_.representation(doc(rep_));
      const auto b = intertwiners(*rep, r_, s_);
      Json basis = Json::array();
      for (const auto& t : b.basis) basis.push_back(io::toJson(t));
      Json out{{"r", r_}, {"s", s_}, {"dimension", b.dimension()}, {"characterDimension", characterDimension(*rep, r_, s_)},
               {"basis", basis}};
      return Result{kOk, out, "dim = " + std::to_string(b.dimension())};
    });
    in->add_option("--rep", rep_, "representation file");
    in->add_option("--r", r_, "source tensor power")->required();
    in->add_option("--s", s_, "target tensor power")->required();
  }

  // ---- cuntz ----------------------------------------------------------------

  void setupCuntz(CLI::App& app) {
    auto* c = app.add_subcommand("cuntz", "word calculus in the Cuntz algebra O_d")->require_subcommand(1);
    auto* ev = leaf(c, "eval", "normal form of an expression", [this] {
      const auto a = parseCuntz(d_, expr_);
      Json out{{"element", io::toJson(a)}, {"normalForm", a.str()}};
      if (const auto deg = a.degrees(); deg && !a.isZero()) {
        out["degree"] = Json{{"s", deg->first}, {"r", deg->second}};
        if (ipow(d_, deg->first + deg->second) <= 4096) out["matrix"] = io::toJson(toMatrix(a));
      }
      return Result{kOk, out, a.str()};
    });
    ev->add_option("--d", d_, "number of generators")->required();
    ev->add_option("--expr", expr_, "expression such as \"s(1)s(2)*\"")->required();
    auto* cm = leaf(c, "check-matrix", "compare word products with matrix products", [this] {
      const auto a = parseCuntz(d_, expr_);
      if (!a.isGraded()) throw ValidationError("expression is not homogeneous");
      Json out{{"expr", a.str()}};
      bool ok = fromMatrix(d_, toMatrix(a), a.degrees() ? a.degrees()->first : 0, a.degrees() ? a.degrees()->second : 0) == a;
      ok = ok && toMatrix(adjoint(a)) == adjoint(toMatrix(a));
      if (!rhs_.empty()) {
        const auto b = parseCuntz(d_, rhs_);
        if (!b.isGraded() || !a.degrees() || !b.degrees() || a.degrees()->second != b.degrees()->first)
          throw ValidationError("degrees do not compose");
        const bool prod = toMatrix(multiply(a, b), a.degrees()->first, b.degrees()->second) == toMatrix(a) * toMatrix(b);
        out["rhs"] = b.str();
        out["product"] = multiply(a, b).str();
        ok = ok && prod;
      }
      out["consistent"] = ok;
      if (!ok) throw InvariantViolation("word calculus and matrix model disagree");
      return Result{kOk, out, "consistent"};
    });
    cm->add_option("--d", d_, "number of generators")->required();
    cm->add_option("--expr", expr_, "homogeneous expression")->required();
    cm->add_option("--rhs", rhs_, "second factor for the product check");
  }

  // ---- category -------------------------------------------------------------

  SpecialCategory loadCategory() {
    need(spec_, "--spec");
    const auto spec = ws_.category(doc(spec_));
    return buildSpecialCategory(spec.complex, spec.setting(), spec.cocycle, spec.rsBound);
  }

  void setupCategory(CLI::App& app) {
    auto* c = app.add_subcommand("category", "special categories twisted by a Q-cocycle")->require_subcommand(1);
    auto spec = [this](CLI::App* sub) { sub->add_option("--spec", spec_, "category spec file"); };
    spec(leaf(c, "build", "intertwiner bundles with transitions and symmetry", [this] {
      const auto sc = loadCategory();
      Json fam = Json::object();
      for (const auto& [rs, f] : sc.families) {
        Json tr = Json::object();
        const auto& es = sc.complex->edges();
        for (std::size_t e = 0; e < es.size(); ++e) tr[io::edgeKey(es[e][0], es[e][1])] = io::toJson(f.transitions[e]);
        fam[degreeName(rs)] = Json{{"dimension", f.basis.dimension()}, {"transitions", tr}};
      }
      Json out{{"rsBound", sc.rsBound}, {"families", fam}, {"symmetryLevels", sc.symmetry.size()},
               {"specialUnitary", sc.specialUnitary}};
      return Result{kOk, out, std::to_string(sc.families.size()) + " intertwiner bundles"};
    }));
    spec(leaf(c, "delta", "obstruction class of the category", [this] {
      const auto sc = loadCategory();
      const auto d = deltaOfCategory(sc);
      return Result{kOk, io::toJson(d), d.isZero() ? "delta = 0" : "delta != 0"};
    }));
    auto* em = leaf(c, "embed", "principal N-bundle realizing the category", [this] {
      const auto sc = loadCategory();
      const auto st = embeddingStatus(sc, budget());
      Json out = embeddingJson(st);
      out["specialUnitary"] = sc.specialUnitary;
      return Result{st.kind == EmbeddingKind::Embeddable ? kOk : kNoLift, out, toString(st.kind)};
    });
    spec(em);
    em->add_option("--budget", budget_, "node budget for lift search");
    auto* k0 = leaf(c, "k0", "twisted equivariant K-theory over a graph", [this] {
      const auto sc = loadCategory();
      const auto k = k0Graph(sc, rmax_);
      Json out = io::toJson(k);
      out["specialUnitary"] = sc.specialUnitary;
      return Result{kOk, out, "K0 = " + k.name() + (k.stabilizedAt ? "" : " (lower bound)")};
    });
    spec(k0);
    k0->add_option("--rmax", rmax_, "largest tensor power examined (default |G|)");
  }

  // ---- validate -------------------------------------------------------------

  Result validate() {
    const auto d = doc(file_);
    const auto kind = io::detectKind(d.json);
    Json out{{"kind", io::toString(kind)}, {"valid", true}};
    std::string what;
    switch (kind) {
      case io::FileKind::Group: {
        const auto g = ws_.group(d);
        out["order"] = g->order();
        break;
      }
      case io::FileKind::Representation: {
        const auto r = ws_.representation(d);
        out["d"] = r->dimension();
        out["groupOrder"] = r->group()->order();
        break;
      }
      case io::FileKind::Extension: {
        const auto e = ws_.extension(d);
        out["orders"] = Json{{"G", e->G->order()}, {"N", e->N->order()}, {"Q", e->Q->order()}};
        break;
      }
      case io::FileKind::Complex: out["complex"] = complexJson(*ws_.complex(d)); break;
      case io::FileKind::Cocycle: out["cocycle"] = io::toJson(ws_.cocycle(d)); break;
      case io::FileKind::Category: {
        const auto s = ws_.category(d);
        const auto sc = buildSpecialCategory(s.complex, s.setting(), s.cocycle, s.rsBound);
        out["families"] = sc.families.size();
        break;
      }
      case io::FileKind::Cuntz: out["element"] = io::cuntzFromJson(d.json).str(); break;
      case io::FileKind::Unknown: throw ValidationError(file_ + ": unrecognized file kind");
    }
    return Result{kOk, out, file_ + ": valid " + io::toString(kind)};
  }

  io::Workspace ws_;
  std::function<Result()> act_;
  std::string out_, file_, group_, ambient_, sub_, n_, g_, extension_, complex_, coeff_, cocycle_, other_, rep_, expr_, rhs_, spec_;
  std::optional<std::size_t> budget_;
  std::size_t r_ = 0, s_ = 0, d_ = 2, rmax_ = 0;
};

/// Runs one command line (without the program name), writing the report to
/// `out` (or --out) and the summary to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner;
  Result r = runner.run(args);
  if (!r.report.is_null()) {
    const std::string text = r.report.dump(2) + "\n";
    if (!runner.outPath().empty()) {
      std::ofstream f(runner.outPath(), std::ios::binary);
      if (!f) {
        err << "cannot write " << runner.outPath() << "\n";
        return kInvalid;
      }
      f << text;
    } else {
      out << text;
    }
  }
  if (!r.summary.empty()) err << r.summary << (r.summary.back() == '\n' ? "" : "\n");
  return r.code;
}

}  // namespace gbdual::cli
