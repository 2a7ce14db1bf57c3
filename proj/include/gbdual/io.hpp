#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gbdual/cuntz.hpp"
#include "gbdual/ktheory.hpp"

namespace gbdual::io {

using Json = nlohmann::json;
namespace fs = std::filesystem;

// ---- scalars and matrices -------------------------------------------------

/// Rationals as "p/q" strings; anything else as its power-basis coefficients
/// in Q(zeta_n).
inline Json toJson(const Cyclotomic& x) {
  if (x.isRational()) return toString(x.rational());
  Json coeffs = Json::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(toString(c));
  return Json{{"zeta", x.conductor()}, {"coefficients", coeffs}};
}

inline Rational rationalFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parseRational(j.get<std::string>());
  throw ValidationError("expected an integer or a \"p/q\" string, got " + j.dump());
}

/// Accepts an integer, "p/q", a coefficient array in Q(zeta_conductor), or
/// {"zeta": n, "coefficients": [...]}.
inline Cyclotomic scalarFromJson(const Json& j, unsigned conductor) {
  if (j.is_number_integer() || j.is_string()) return Cyclotomic(rationalFromJson(j));
  std::vector<Rational> coeffs;
  unsigned n = conductor;
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("zeta") || !j.contains("coefficients")) throw ValidationError("scalar object needs zeta and coefficients");
    n = j.at("zeta").get<unsigned>();
    arr = &j.at("coefficients");
  }
  if (!arr->is_array()) throw ValidationError("bad scalar " + j.dump());
  if (n == 0) throw ValidationError("coefficient arrays need a conductor");
  for (const auto& c : *arr) coeffs.push_back(rationalFromJson(c));
  return Cyclotomic::fromCoefficients(n, coeffs);
}

inline Json toJson(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(toJson(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrixFromJson(const Json& j, unsigned conductor) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ValidationError("matrix rows have different lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalarFromJson(j[i][k], conductor);
  }
  return m;
}

inline Json toJson(const GroupTable& g) {
  Json labels = Json::array(), table = Json::array();
  for (Element a = 0; a < g.order(); ++a) {
    labels.push_back(g.label(a));
    Json row = Json::array();
    for (Element b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  return Json{{"order", g.order()}, {"labels", labels}, {"table", table}};
}

inline Json toJson(const CohomologyClass2& c) {
  return Json{{"class", c.coordinates}, {"group", c.presentation->classGroup().name()}};
}

inline Json toJson(const CuntzElement& a) {
  Json terms = Json::array();
  for (const auto& [key, c] : a.terms()) terms.push_back(Json{{"I", key.first}, {"J", key.second}, {"coefficient", toJson(c)}});
  return Json{{"d", a.d()}, {"terms", terms}};
}

inline CuntzElement cuntzFromJson(const Json& j) {
  CuntzElement out(j.at("d").get<std::size_t>());
  for (const auto& t : j.at("terms"))
    out.add(t.at("I").get<MultiIndex>(), t.at("J").get<MultiIndex>(), scalarFromJson(t.at("coefficient"), 0));
  return out;
}

inline std::string edgeKey(std::size_t i, std::size_t j) { return std::to_string(i) + "-" + std::to_string(j); }

inline Json toJson(const GCochain1& c) {
  Json edges = Json::object(), labels = Json::object();
  const auto es = c.complex->edges();
  for (std::size_t e = 0; e < es.size(); ++e) {
    edges[edgeKey(es[e][0], es[e][1])] = c.values[e];
    labels[edgeKey(es[e][0], es[e][1])] = c.group->label(c.values[e]);
  }
  return Json{{"edges", edges}, {"labels", labels}};
}

inline Json toJson(const KGroupResult& k) {
  Json gens = Json::array();
  for (const auto& g : k.generators) {
    Json orbit = Json::array(), witness = Json::object();
    for (auto s : g.orbit) orbit.push_back(k.irreducibleLabels[s]);
    for (const auto& [r, w] : g.flatWitness) witness[std::to_string(r)] = w ? Json(*w) : Json(nullptr);
    gens.push_back(Json{{"component", g.component}, {"irreducibles", g.orbit}, {"characters", orbit}, {"levels", g.levels},
                        {"flatWitness", witness}});
  }
  Json inclusion = Json::array();
  for (const auto& col : k.inclusionMap) {
    Json c = Json::array();
    for (const auto& x : col) c.push_back(toInt64(x));
    inclusion.push_back(std::move(c));
  }
  return Json{{"rank", k.rank()},
              {"group", k.name()},
              {"generators", gens},
              {"stabilizedAt", k.stabilizedAt ? Json(*k.stabilizedAt) : Json(nullptr)},
              {"lowerBound", !k.stabilizedAt.has_value()},
              {"rMax", k.rMax},
              {"components", k.components},
              {"inclusionMap", inclusion},
              {"levelUnits", k.levelUnits},
              {"idempotentCheckLevels", k.idempotentCheckLevels}};
}

// ---- workspace --------------------------------------------------------------

enum class FileKind { Group, Representation, Extension, Complex, Cocycle, Category, Cuntz, Unknown };

inline std::string toString(FileKind k) {
  switch (k) {
    case FileKind::Group: return "group";
    case FileKind::Representation: return "rep";
    case FileKind::Extension: return "extension";
    case FileKind::Complex: return "complex";
    case FileKind::Cocycle: return "cocycle";
    case FileKind::Category: return "category";
    case FileKind::Cuntz: return "cuntz";
    case FileKind::Unknown: return "unknown";
  }
  return "unknown";
}

/// Kind by characteristic keys.
inline FileKind detectKind(const Json& j) {
  if (!j.is_object()) return FileKind::Unknown;
  if (j.contains("rsBound") || (j.contains("extension") && j.contains("cocycle"))) return FileKind::Category;
  if (j.contains("edges")) return FileKind::Cocycle;
  if (j.contains("N")) return FileKind::Extension;
  if (j.contains("facets") || j.contains("simplices")) return FileKind::Complex;
  if (j.contains("terms") && j.contains("d")) return FileKind::Cuntz;
  if (j.contains("d")) return FileKind::Representation;
  if (j.contains("permutations") || j.contains("table")) return FileKind::Group;
  return FileKind::Unknown;
}

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// A loaded JSON document with the directory its relative references use.
struct Document {
  Json json;
  fs::path base;
  std::uint64_t hash = 0;
  std::string origin;
};

struct CategorySpec {
  ComplexPtr complex;
  std::shared_ptr<const Extension> extension;
  std::shared_ptr<const UnitaryRep> rep;
  Cocycle1 cocycle;
  std::size_t rsBound = 2;

  NormalizerSetting setting() const { return settingFromExtension(*extension, *rep); }
};

/// Registry of loaded objects keyed by content hash: loading identical content
/// twice yields the same object.
class Workspace {
 public:
  Document open(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    Document doc;
    try {
      doc.json = Json::parse(bytes);
    } catch (const Json::parse_error& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
    doc.base = path.parent_path();
    doc.hash = fnv1a(bytes);
    doc.origin = path.string();
    return doc;
  }

  /// A reference is a path (relative to base) or an inline object.
  Document resolve(const Json& ref, const fs::path& base) {
    if (ref.is_string()) return open(base / ref.get<std::string>());
    if (ref.is_object()) return Document{ref, base, fnv1a(ref.dump()), "inline"};
    throw ValidationError("reference must be a path or an object: " + ref.dump());
  }

  GroupPtr group(const Document& doc) {
    switch (detectKind(doc.json)) {
      case FileKind::Group: break;
      case FileKind::Representation: return representation(doc)->group();
      default: throw ValidationError(doc.origin + " is not a group or representation");
    }
    if (auto it = groups_.find(doc.hash); it != groups_.end()) return it->second;
    const Json& j = doc.json;
    GroupPtr g;
    if (j.contains("permutations")) {
      g = std::make_shared<const GroupTable>(GroupTable::fromPermutations(j.at("permutations").get<std::vector<std::vector<std::size_t>>>()));
    } else {
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      g = std::make_shared<const GroupTable>(GroupTable::fromTable(j.at("table").get<std::vector<std::vector<Element>>>(), labels));
    }
    groups_.emplace(doc.hash, g);
    return g;
  }

  /// {"d", "conductor", "generators": [...]} closes the matrix group; with
  /// {"group", "matrices"} the matrices are indexed by the group's elements.
  std::shared_ptr<const UnitaryRep> representation(const Document& doc) {
    if (detectKind(doc.json) != FileKind::Representation) throw ValidationError(doc.origin + " is not a representation");
    if (auto it = reps_.find(doc.hash); it != reps_.end()) return it->second;
    const Json& j = doc.json;
    const auto d = j.at("d").get<std::size_t>();
    const unsigned conductor = j.value("conductor", 1u);
    std::vector<CMatrix> ms;
    const char* key = j.contains("generators") ? "generators" : "matrices";
    for (const auto& m : j.at(key)) {
      ms.push_back(matrixFromJson(m, conductor));
      if (ms.back().rows() != d || ms.back().cols() != d) throw ValidationError("matrix is not " + std::to_string(d) + "x" + std::to_string(d));
    }
    std::shared_ptr<const UnitaryRep> rep;
    if (j.contains("generators")) {
      rep = std::make_shared<const UnitaryRep>(UnitaryRep::fromGenerators(d, conductor, ms));
    } else {
      if (!j.contains("group")) throw ValidationError("a representation given by matrices needs a group");
      rep = std::make_shared<const UnitaryRep>(group(resolve(j.at("group"), doc.base)), d, conductor, std::move(ms));
    }
    reps_.emplace(doc.hash, rep);
    return rep;
  }

  /// {"N": ref, "G": [elements]} or {"N": ref, "Ggenerators": [positions in
  /// N's generator list]}; optional "section" per element of Q.
  std::shared_ptr<const Extension> extension(const Document& doc) {
    if (detectKind(doc.json) != FileKind::Extension) throw ValidationError(doc.origin + " is not an extension");
    if (auto it = extensions_.find(doc.hash); it != extensions_.end()) return it->second;
    const Json& j = doc.json;
    const GroupPtr N = group(resolve(j.at("N"), doc.base));
    std::vector<Element> sub;
    if (j.contains("G")) {
      for (const auto& x : j.at("G")) sub.push_back(elementFromJson(*N, x));
    } else if (j.contains("Ggenerators")) {
      std::vector<Element> gens;
      for (auto k : j.at("Ggenerators").get<std::vector<std::size_t>>()) {
        if (k >= N->generatorIndices().size()) throw ValidationError("Ggenerators refers to a missing generator");
        gens.push_back(N->generatorIndices()[k]);
      }
      sub = generatedSubgroup(*N, gens);
    } else {
      throw ValidationError("extension needs G or Ggenerators");
    }
    Extension e = makeExtension(N, sub);
    if (j.contains("section")) {
      std::vector<Element> s;
      for (const auto& x : j.at("section")) s.push_back(elementFromJson(*N, x));
      e = e.withSection(std::move(s));
    }
    auto ptr = std::make_shared<const Extension>(std::move(e));
    extensions_.emplace(doc.hash, ptr);
    return ptr;
  }

  /// {"vertices": n, "facets": [...]} (closed under faces) or
  /// {"vertices": n, "simplices": [...]} (must already be closed).
  ComplexPtr complex(const Document& doc) {
    if (detectKind(doc.json) != FileKind::Complex) throw ValidationError(doc.origin + " is not a complex");
    if (auto it = complexes_.find(doc.hash); it != complexes_.end()) return it->second;
    const Json& j = doc.json;
    const auto n = j.at("vertices").get<std::size_t>();
    ComplexPtr c;
    if (j.contains("facets"))
      c = std::make_shared<const SimplicialComplex>(SimplicialComplex::fromFacets(n, j.at("facets").get<std::vector<Simplex>>()));
    else
      c = std::make_shared<const SimplicialComplex>(SimplicialComplex::fromSimplices(n, j.at("simplices").get<std::vector<Simplex>>()));
    complexes_.emplace(doc.hash, c);
    return c;
  }

  /// {"complex": ref, "group": ref?, "edges": {"i-j": element}}; `context`
  /// supplies the group when the file names none.
  Cocycle1 cocycle(const Document& doc, GroupPtr context = nullptr) {
    if (detectKind(doc.json) != FileKind::Cocycle) throw ValidationError(doc.origin + " is not a cocycle");
    const Json& j = doc.json;
    const ComplexPtr c = complex(resolve(j.at("complex"), doc.base));
    GroupPtr g = context;
    if (j.contains("group")) {
      GroupPtr own = group(resolve(j.at("group"), doc.base));
      if (g && !(*g == *own)) throw ValidationError("cocycle group differs from the group required here");
      g = own;
    }
    if (!g) throw ValidationError("cocycle needs a group (in the file or from an extension)");
    GCochain1 cochain = GCochain1::constant(c, g);
    std::vector<bool> seen(c->edges().size(), false);
    for (const auto& [key, value] : j.at("edges").items()) {
      const auto dash = key.find('-');
      if (dash == std::string::npos) throw ValidationError("edge key must look like \"i-j\": " + key);
      const auto i = static_cast<std::size_t>(toInt64(parseInteger(key.substr(0, dash))));
      const auto k = static_cast<std::size_t>(toInt64(parseInteger(key.substr(dash + 1))));
      if (i == k || !c->find({std::min(i, k), std::max(i, k)})) throw ValidationError("no edge " + key + " in the complex");
      const std::size_t e = c->indexOf({std::min(i, k), std::max(i, k)});
      if (seen[e]) throw ValidationError("edge " + key + " given twice");
      seen[e] = true;
      cochain.set(i, k, elementFromJson(*g, value));
    }
    for (std::size_t e = 0; e < seen.size(); ++e)
      if (!seen[e]) throw ValidationError("no value for edge " + simplexName(c->edges()[e]));
    return Cocycle1(std::move(cochain));
  }

  CategorySpec category(const Document& doc) {
    if (detectKind(doc.json) != FileKind::Category) throw ValidationError(doc.origin + " is not a category spec");
    const Json& j = doc.json;
    CategorySpec spec{complex(resolve(j.at("complex"), doc.base)),
                      extension(resolve(j.at("extension"), doc.base)),
                      representation(resolve(j.at("rep"), doc.base)),
                      {},
                      j.value("rsBound", std::size_t{2})};
    spec.cocycle = cocycle(resolve(j.at("cocycle"), doc.base), spec.extension->Q);
    if (!(*spec.cocycle.complex == *spec.complex)) throw ValidationError("cocycle and category use different complexes");
    return spec;
  }

  static Element elementFromJson(const GroupTable& g, const Json& x) {
    if (x.is_number_unsigned() || x.is_number_integer()) {
      const auto v = x.get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw ValidationError("element " + x.dump() + " out of range");
      return static_cast<Element>(v);
    }
    if (x.is_string()) {
      for (Element a = 0; a < g.order(); ++a)
        if (g.label(a) == x.get<std::string>()) return a;
      throw ValidationError("no element labelled " + x.dump());
    }
    throw ValidationError("group element must be an index or a label: " + x.dump());
  }

 private:
  std::map<std::uint64_t, GroupPtr> groups_;
  std::map<std::uint64_t, std::shared_ptr<const UnitaryRep>> reps_;
  std::map<std::uint64_t, std::shared_ptr<const Extension>> extensions_;
  std::map<std::uint64_t, ComplexPtr> complexes_;
};

}  // namespace gbdual::io
