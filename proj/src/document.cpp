#include "hk/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "hk/error.hpp"

namespace hk {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }
[[noreturn]] void dangling(const std::string& what) {
  throw Error(ErrorCode::DanglingReference, what);
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where + ": expected a string");
  return j.get<std::string>();
}

std::string need_string(const json& j, const char* key, const std::string& where) {
  return get_string(need(j, key, where), where + "." + key);
}

Integer get_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) parse_fail(where + ": bad integer string");
    return v;
  }
  parse_fail(where + ": expected an integer");
}

long long get_int64(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where + ": expected an integer");
  return j.get<long long>();
}

std::size_t get_size(const json& j, const std::string& where) {
  const long long v = get_int64(j, where);
  if (v < 0) parse_fail(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const json& need_array(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + ": expected an array");
  return j;
}

ordered_json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

// Rows of integers. Column count comes from the first row; an empty list
// yields 0 x 0 and is reshaped by the caller once dimensions are known.
IntMatrix parse_matrix(const json& j, const std::string& where) {
  need_array(j, where);
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) cols = need_array(j[0], where + "[0]").size();
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = need_array(j[r], where + "[" + std::to_string(r) + "]");
    if (row.size() != cols) {
      throw Error(ErrorCode::DimensionMismatch, where + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = get_integer(row[c], where);
  }
  return m;
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix reshape(const IntMatrix& m, std::size_t rows, std::size_t cols,
                  const std::string& where) {
  if (m.rows() == rows && m.cols() == cols) return m;
  // [] stands for any matrix with no entries.
  if (m.rows() == 0 && (rows == 0 || cols == 0)) return IntMatrix(rows, cols);
  throw Error(ErrorCode::DimensionMismatch,
              where + ": expected a " + std::to_string(rows) + " x " + std::to_string(cols) +
                  " matrix, got " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
}

FgAbGroup parse_group(const json& j, const std::string& where) {
  if (j.is_string()) return parse_group_string(j.get<std::string>());
  const std::size_t gens = get_size(need(j, "generators", where), where + ".generators");
  IntMatrix rel = j.contains("relations") ? parse_matrix(j.at("relations"), where + ".relations")
                                          : IntMatrix();
  if (rel.rows() == 0) rel = IntMatrix(gens, 0);
  return FgAbGroup(gens, std::move(rel));
}

ordered_json group_json(const FgAbGroup& g) {
  if (FgAbGroup::from_invariants(g.invariants()) == g) return g.to_string();
  ordered_json out;
  out["generators"] = g.generators();
  out["relations"] = g.relations().cols() == 0 ? ordered_json::array()
                                                : matrix_json(g.relations());
  return out;
}

CoefficientBlock parse_block(const json& j, const std::string& where) {
  CoefficientBlock b;
  if (j.contains("groups")) {
    const json& groups = j.at("groups");
    if (!groups.is_object()) parse_fail(where + ".groups: expected an object");
    for (const auto& [k, v] : groups.items()) b.groups.emplace(k, parse_group(v, where + ".groups." + k));
  }
  if (j.contains("maps")) {
    const json& maps = j.at("maps");
    if (!maps.is_object()) parse_fail(where + ".maps: expected an object");
    for (const auto& [k, v] : maps.items()) b.maps.emplace(k, parse_matrix(v, where + ".maps." + k));
  }
  if (j.contains("central")) {
    for (const auto& c : need_array(j.at("central"), where + ".central")) {
      b.central.push_back(get_string(c, where + ".central"));
    }
  }
  return b;
}

void block_json(const CoefficientBlock& b, ordered_json& out) {
  out["groups"] = ordered_json::object();
  for (const auto& [k, g] : b.groups) out["groups"][k] = group_json(g);
  out["maps"] = ordered_json::object();
  for (const auto& [k, m] : b.maps) out["maps"][k] = matrix_json(m);
  if (!b.central.empty()) out["central"] = b.central;
}

std::vector<std::size_t> parse_vertices(const json& j, const std::string& where) {
  std::vector<std::size_t> v;
  for (const auto& x : need_array(j, where)) v.push_back(get_size(x, where));
  return v;
}

RecipeSpec parse_recipe(const json& j, bool residues) {
  RecipeSpec r;
  for (const auto& v : need_array(need(j, "vertices", "structure"), "structure.vertices")) {
    r.vertices.push_back({need_string(v, "label", "vertex"), need_string(v, "stabilizer", "vertex")});
  }
  for (const auto& e : need_array(need(j, "edges", "structure"), "structure.edges")) {
    RecipeEdgeSpec s{need_string(e, "v", "edge"),           need_string(e, "w", "edge"),
                     need_string(e, "label", "edge"),       need_string(e, "intersection", "edge"),
                     need_string(e, "inclusion", "edge"),   need_string(e, "conjugation", "edge"),
                     0};
    if (residues) s.residue = get_int64(need(e, "residue", "edge"), "edge.residue");
    r.edges.push_back(std::move(s));
  }
  return r;
}

void recipe_json(const RecipeSpec& r, bool residues, ordered_json& out) {
  out["vertices"] = ordered_json::array();
  for (const auto& v : r.vertices) {
    out["vertices"].push_back({{"label", v.label}, {"stabilizer", v.stabilizer}});
  }
  out["edges"] = ordered_json::array();
  for (const auto& e : r.edges) {
    ordered_json x{{"v", e.v},
                   {"w", e.w},
                   {"label", e.label},
                   {"intersection", e.intersection},
                   {"inclusion", e.inclusion},
                   {"conjugation", e.conjugation}};
    if (residues) x["residue"] = e.residue;
    out["edges"].push_back(std::move(x));
  }
}

StructureSpec parse_structure(const json& j) {
  const std::string kind = need_string(j, "kind", "structure");
  if (kind == "cell_complex") {
    CellComplexSpec s;
    for (const auto& dim : need_array(need(j, "cells", "structure"), "structure.cells")) {
      std::vector<CellSpec> row;
      for (const auto& c : need_array(dim, "structure.cells")) {
        row.push_back({need_string(c, "label", "cell"), need_string(c, "stabilizer", "cell")});
      }
      s.cells.push_back(std::move(row));
    }
    if (j.contains("boundary")) {
      for (const auto& b : need_array(j.at("boundary"), "structure.boundary")) {
        s.boundary.push_back({static_cast<int>(get_int64(need(b, "dim", "boundary"), "boundary.dim")),
                              need_string(b, "cell", "boundary"), need_string(b, "face", "boundary"),
                              get_integer(need(b, "coeff", "boundary"), "boundary.coeff"),
                              need_string(b, "morphism", "boundary")});
      }
    }
    return s;
  }
  if (kind == "poset") {
    PosetSpec s;
    for (const auto& f : need_array(need(j, "faces", "structure"), "structure.faces")) {
      s.faces.push_back({parse_vertices(need(f, "vertices", "face"), "face.vertices"),
                         need_string(f, "stabilizer", "face")});
    }
    if (j.contains("inclusions")) {
      for (const auto& i : need_array(j.at("inclusions"), "structure.inclusions")) {
        s.inclusions.push_back({parse_vertices(need(i, "simplex", "inclusion"), "inclusion.simplex"),
                                parse_vertices(need(i, "facet", "inclusion"), "inclusion.facet"),
                                need_string(i, "morphism", "inclusion")});
      }
    }
    return s;
  }
  if (kind == "recipe") return parse_recipe(j, false);
  if (kind == "central_ext") {
    CentralExtSpec s;
    s.recipe = parse_recipe(j, true);
    s.m = get_size(need(j, "m", "structure"), "structure.m");
    if (s.m == 0) parse_fail("structure.m must be positive");
    return s;
  }
  if (kind == "exact_sequence") {
    ExactSequenceSpec s;
    for (const auto& g : need_array(need(j, "groups", "structure"), "structure.groups")) {
      s.groups.push_back(parse_group(g, "structure.groups"));
    }
    const json& maps = need_array(need(j, "maps", "structure"), "structure.maps");
    if (s.groups.empty() || maps.size() + 1 != s.groups.size()) {
      throw Error(ErrorCode::DimensionMismatch, "exact_sequence needs one map fewer than groups");
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const std::string where = "structure.maps[" + std::to_string(i) + "]";
      s.maps.push_back(reshape(parse_matrix(maps[i], where), s.groups[i + 1].generators(),
                               s.groups[i].generators(), where));
    }
    return s;
  }
  if (kind == "sl2_square") {
    return Sl2SquareSpec{need_string(j, "left", "structure"), need_string(j, "right", "structure")};
  }
  parse_fail("unknown structure kind '" + kind + "'");
}

ordered_json structure_json(const StructureSpec& spec) {
  ordered_json out;
  out["kind"] = kind_name(spec);
  std::visit(
      [&out](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CellComplexSpec>) {
          out["cells"] = ordered_json::array();
          for (const auto& dim : s.cells) {
            ordered_json row = ordered_json::array();
            for (const auto& c : dim) row.push_back({{"label", c.label}, {"stabilizer", c.stabilizer}});
            out["cells"].push_back(std::move(row));
          }
          out["boundary"] = ordered_json::array();
          for (const auto& b : s.boundary) {
            out["boundary"].push_back({{"dim", b.dim},
                                       {"cell", b.cell},
                                       {"face", b.face},
                                       {"coeff", integer_json(b.coefficient)},
                                       {"morphism", b.morphism}});
          }
        } else if constexpr (std::is_same_v<T, PosetSpec>) {
          out["faces"] = ordered_json::array();
          for (const auto& f : s.faces) {
            out["faces"].push_back({{"vertices", f.vertices}, {"stabilizer", f.stabilizer}});
          }
          out["inclusions"] = ordered_json::array();
          for (const auto& i : s.inclusions) {
            out["inclusions"].push_back(
                {{"simplex", i.simplex}, {"facet", i.facet}, {"morphism", i.morphism}});
          }
        } else if constexpr (std::is_same_v<T, RecipeSpec>) {
          recipe_json(s, false, out);
        } else if constexpr (std::is_same_v<T, CentralExtSpec>) {
          out["m"] = s.m;
          recipe_json(s.recipe, true, out);
        } else if constexpr (std::is_same_v<T, ExactSequenceSpec>) {
          out["groups"] = ordered_json::array();
          for (const auto& g : s.groups) out["groups"].push_back(group_json(g));
          out["maps"] = ordered_json::array();
          for (const auto& m : s.maps) out["maps"].push_back(matrix_json(m));
        } else {
          out["left"] = s.left;
          out["right"] = s.right;
        }
      },
      spec);
  return out;
}

// Fixes 0-row map shapes and checks every label in the category and
// coefficient blocks resolves.
void resolve_block(const InstanceDocument& doc, CoefficientBlock& b, const std::string& where) {
  std::set<std::string> objects(doc.objects.begin(), doc.objects.end());
  auto gens = [&](const std::string& obj) -> std::size_t {
    auto it = b.groups.find(obj);
    return it == b.groups.end() ? 0 : it->second.generators();
  };
  for (const auto& [k, _] : b.groups) {
    if (!objects.count(k)) dangling(where + ".groups: unknown object '" + k + "'");
  }
  for (auto& [k, m] : b.maps) {
    auto it = std::find_if(doc.morphisms.begin(), doc.morphisms.end(),
                           [&k](const MorphismSpec& s) { return s.label == k; });
    if (it == doc.morphisms.end()) dangling(where + ".maps: unknown morphism '" + k + "'");
    m = reshape(m, gens(it->target), gens(it->source), where + ".maps." + k);
  }
  for (const auto& c : b.central) {
    const bool known = std::any_of(doc.morphisms.begin(), doc.morphisms.end(),
                                   [&c](const MorphismSpec& s) { return s.label == c; });
    if (!known) dangling(where + ".central: unknown morphism '" + c + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Like dump(2), but arrays of scalars stay on one line so matrices read as
// rows.
void write_json(const ordered_json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    // Small records of scalars go on one line.
    const bool record = std::all_of(j.begin(), j.end(), [](const ordered_json& x) {
      return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const ordered_json& y) {
                                    return y.is_primitive();
                                  }));
    });
    if (record && j.dump().size() <= 100) {
      out += "{";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        out += (first ? "" : ", ") + ordered_json(k).dump() + ": ";
        write_json(v, indent + 2, out);
        first = false;
      }
      out += "}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + ordered_json(k).dump() + ": ";
      write_json(v, indent + 2, out);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const ordered_json& x) {
      return x.is_primitive() || (x.is_array() && x.empty());
    });
    // A one-row matrix stays on one line too.
    const bool one_row = j.size() == 1 && j[0].is_array() &&
                         std::all_of(j[0].begin(), j[0].end(), [](const ordered_json& x) { return x.is_primitive(); });
    if (one_row) {
      out += "[";
      write_json(j[0], indent + 2, out);
      out += "]";
      return;
    }
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += inner;
      write_json(j[i], indent + 2, out);
    }
    out += "\n" + pad + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string kind_name(const StructureSpec& s) {
  static const char* names[] = {"cell_complex",   "poset",      "recipe", "central_ext",
                                "exact_sequence", "sl2_square"};
  return names[s.index()];
}

const std::vector<std::string>& assertion_keys() {
  static const std::vector<std::string> keys{"condition_sub", "connected", "connective",
                                             "fixed_sets_contractible"};
  return keys;
}

FgAbGroup parse_group_string(const std::string& text) {
  InvariantFactors f;
  std::stringstream ss(text);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '+')) {
    const std::string t = trim(part);
    any = true;
    if (t == "0") continue;
    if (t == "Z") {
      f.free_rank += 1;
    } else if (t.rfind("Z^", 0) == 0) {
      const std::string r = t.substr(2);
      if (r.empty() || !std::all_of(r.begin(), r.end(), ::isdigit)) {
        parse_fail("bad group term '" + t + "'");
      }
      f.free_rank += std::stoul(r);
    } else if (t.rfind("Z/", 0) == 0) {
      Integer d;
      if (d.set_str(t.substr(2), 10) != 0 || d <= 0) parse_fail("bad group term '" + t + "'");
      if (d != 1) f.torsion.push_back(d);
    } else {
      parse_fail("bad group term '" + t + "'");
    }
  }
  if (!any) parse_fail("empty group string");
  // Re-normalize through a presentation so "Z/2 + Z/3" becomes "Z/6".
  return FgAbGroup::from_invariants(FgAbGroup::from_invariants(f).invariants());
}

namespace {

// Object and morphism names used by the structure must exist in the category.
void check_structure_refs(const StructureSpec& st, const std::set<std::string>& objects,
                          const std::set<std::string>& morphisms) {
  auto obj = [&](const std::string& name, const std::string& where) {
    if (!objects.count(name)) dangling(where + ": unknown object '" + name + "'");
  };
  auto mor = [&](const std::string& name, const std::string& where) {
    if (!morphisms.count(name)) dangling(where + ": unknown morphism '" + name + "'");
  };
  auto recipe = [&](const RecipeSpec& r) {
    for (const auto& v : r.vertices) obj(v.stabilizer, "vertex '" + v.label + "'");
    for (const auto& e : r.edges) {
      const std::string where = "edge '" + e.label + "'";
      obj(e.intersection, where);
      mor(e.inclusion, where);
      mor(e.conjugation, where);
    }
  };
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, CellComplexSpec>) {
          for (const auto& layer : spec.cells)
            for (const auto& c : layer) obj(c.stabilizer, "cell '" + c.label + "'");
          for (const auto& b : spec.boundary) mor(b.morphism, "boundary of '" + b.cell + "'");
        } else if constexpr (std::is_same_v<T, PosetSpec>) {
          for (const auto& f : spec.faces) obj(f.stabilizer, "face " + simplex_label(f.vertices));
          for (const auto& i : spec.inclusions) mor(i.morphism, "inclusion " + simplex_label(i.simplex));
        } else if constexpr (std::is_same_v<T, RecipeSpec>) {
          recipe(spec);
        } else if constexpr (std::is_same_v<T, CentralExtSpec>) {
          recipe(spec.recipe);
        } else if constexpr (std::is_same_v<T, Sl2SquareSpec>) {
          mor(spec.left, "sl2_square.left");
          mor(spec.right, "sl2_square.right");
        }
      },
      st);
}

}  // namespace

InstanceDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("document must be a JSON object");
  InstanceDocument doc;
  doc.format = need_string(j, "format", "document");
  if (doc.format != kFormatVersion) {
    throw Error(ErrorCode::Version, "unrecognized format '" + doc.format + "', expected '" +
                                        kFormatVersion + "'");
  }

  const json empty = json::object();
  const json& cat = j.contains("category") ? j.at("category") : empty;
  std::set<std::string> objects;
  if (cat.contains("objects")) {
    for (const auto& o : need_array(cat.at("objects"), "category.objects")) {
      const std::string label = get_string(o, "category.objects");
      if (!objects.insert(label).second) throw Error(ErrorCode::Category, "duplicate object '" + label + "'");
      doc.objects.push_back(label);
    }
  }
  std::set<std::string> morphisms;
  for (const auto& o : doc.objects) morphisms.insert("id_" + o);
  if (cat.contains("morphisms")) {
    for (const auto& m : need_array(cat.at("morphisms"), "category.morphisms")) {
      MorphismSpec s{need_string(m, "label", "morphism"), need_string(m, "source", "morphism"),
                     need_string(m, "target", "morphism")};
      if (!objects.count(s.source)) dangling("morphism '" + s.label + "': unknown source '" + s.source + "'");
      if (!objects.count(s.target)) dangling("morphism '" + s.label + "': unknown target '" + s.target + "'");
      if (!morphisms.insert(s.label).second) {
        throw Error(ErrorCode::Category, "duplicate morphism label '" + s.label + "'");
      }
      doc.morphisms.push_back(std::move(s));
    }
  }
  if (cat.contains("composition")) {
    for (const auto& c : need_array(cat.at("composition"), "category.composition")) {
      if (!c.is_array() || c.size() != 3) parse_fail("composition entries are [g, f, g o f]");
      std::array<std::string, 3> e{get_string(c[0], "composition"), get_string(c[1], "composition"),
                                   get_string(c[2], "composition")};
      for (const auto& l : e) {
        if (!morphisms.count(l)) dangling("composition: unknown morphism '" + l + "'");
      }
      doc.composition.push_back(std::move(e));
    }
  }

  if (j.contains("coefficients")) {
    const json& c = j.at("coefficients");
    if (!c.is_object()) parse_fail("coefficients: expected an object");
    doc.coefficients = parse_block(c, "coefficients");
    if (c.contains("graded")) {
      if (!doc.coefficients.groups.empty() || !doc.coefficients.maps.empty() ||
          !doc.coefficients.central.empty()) {
        parse_fail("coefficients: give either a plain block or a graded list, not both");
      }
      std::set<int> seen;
      for (const auto& g : need_array(c.at("graded"), "coefficients.graded")) {
        GradedEntry e;
        e.q = static_cast<int>(get_int64(need(g, "q", "graded"), "graded.q"));
        if (!seen.insert(e.q).second) parse_fail("graded: repeated degree q = " + std::to_string(e.q));
        e.block = parse_block(g, "graded[q=" + std::to_string(e.q) + "]");
        doc.graded.push_back(std::move(e));
      }
      std::sort(doc.graded.begin(), doc.graded.end(),
                [](const GradedEntry& a, const GradedEntry& b) { return a.q < b.q; });
    }
  }
  resolve_block(doc, doc.coefficients, "coefficients");
  for (auto& g : doc.graded) resolve_block(doc, g.block, "graded[q=" + std::to_string(g.q) + "]");

  doc.structure = parse_structure(need(j, "structure", "document"));
  check_structure_refs(doc.structure, objects, morphisms);

  if (j.contains("assertions")) {
    const json& a = j.at("assertions");
    if (!a.is_object()) parse_fail("assertions: expected an object");
    const auto& keys = assertion_keys();
    for (const auto& [k, v] : a.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        parse_fail("assertions: unknown key '" + k + "'");
      }
      if (!v.is_boolean()) parse_fail("assertions." + k + ": expected true or false");
      doc.assertions[k] = v.get<bool>();
    }
  }
  return doc;
}

InstanceDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading '" + path + "'");
  return parse_document(ss.str());
}

std::string serialize_document(const InstanceDocument& doc) {
  ordered_json out;
  out["format"] = doc.format;
  ordered_json cat;
  cat["objects"] = doc.objects;
  cat["morphisms"] = ordered_json::array();
  for (const auto& m : doc.morphisms) {
    cat["morphisms"].push_back({{"label", m.label}, {"source", m.source}, {"target", m.target}});
  }
  cat["composition"] = ordered_json::array();
  for (const auto& c : doc.composition) cat["composition"].push_back(c);
  out["category"] = std::move(cat);
  ordered_json coeff;
  if (doc.graded.empty()) {
    block_json(doc.coefficients, coeff);
  } else {
    coeff["graded"] = ordered_json::array();
    for (const auto& g : doc.graded) {
      ordered_json e;
      e["q"] = g.q;
      block_json(g.block, e);
      coeff["graded"].push_back(std::move(e));
    }
  }
  out["coefficients"] = std::move(coeff);
  out["structure"] = structure_json(doc.structure);
  if (!doc.assertions.empty()) {
    out["assertions"] = ordered_json::object();
    for (const auto& [k, v] : doc.assertions) out["assertions"][k] = v;
  }
  std::string text;
  write_json(out, 0, text);
  return text + "\n";
}

CategoryPtr build_category(const InstanceDocument& doc) {
  auto cat = std::make_shared<FinCategory>();
  for (const auto& o : doc.objects) cat->add_object(o);
  for (const auto& m : doc.morphisms) {
    auto s = cat->find_object(m.source);
    auto t = cat->find_object(m.target);
    if (!s || !t) dangling("morphism '" + m.label + "' has an unknown endpoint");
    cat->add_morphism(m.label, *s, *t);
  }
  for (const auto& [g, f, h] : doc.composition) {
    auto gi = cat->find_morphism(g), fi = cat->find_morphism(f), hi = cat->find_morphism(h);
    if (!gi || !fi || !hi) dangling("composition entry refers to an unknown morphism");
    cat->set_composite(*gi, *fi, *hi);
  }
  return cat;
}

CoeffSystem build_coefficients(const InstanceDocument& doc, const CategoryPtr& cat,
                               const CoefficientBlock& block) {
  (void)doc;
  const FinCategory& c = *cat;
  std::vector<FgAbGroup> values(c.object_count());
  for (const auto& [k, g] : block.groups) {
    auto x = c.find_object(k);
    if (!x) dangling("coefficients: unknown object '" + k + "'");
    values[*x] = g;
  }
  std::map<MorphismId, IntMatrix> matrices;
  for (const auto& [k, m] : block.maps) {
    auto f = c.find_morphism(k);
    if (!f) dangling("coefficients: unknown morphism '" + k + "'");
    matrices.emplace(*f, m);
  }
  // Maps into or out of the zero group need no matrix.
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f) || matrices.count(f)) continue;
    const Morphism& m = c.morphism(f);
    const std::size_t rows = values[m.target].generators();
    const std::size_t cols = values[m.source].generators();
    if (rows == 0 || cols == 0) matrices.emplace(f, IntMatrix(rows, cols));
  }
  std::set<MorphismId> central;
  for (const auto& k : block.central) {
    auto f = c.find_morphism(k);
    if (!f) dangling("coefficients: unknown central morphism '" + k + "'");
    central.insert(*f);
  }
  return CoeffSystem(cat, std::move(values), matrices, std::move(central));
}

CoeffSystem degree0_coefficients(const InstanceDocument& doc, const CategoryPtr& cat) {
  if (doc.graded.empty()) return build_coefficients(doc, cat, doc.coefficients);
  for (const auto& g : doc.graded) {
    if (g.q == 0) return build_coefficients(doc, cat, g.block);
  }
  return CoeffSystem::zero(cat);
}

GradedCoeffSystem graded_coefficients(const InstanceDocument& doc, const CategoryPtr& cat) {
  if (doc.graded.empty()) {
    return GradedCoeffSystem(cat, 0, {build_coefficients(doc, cat, doc.coefficients)});
  }
  const int q_min = doc.graded.front().q;
  const int q_max = doc.graded.back().q;
  std::vector<CoeffSystem> systems;
  std::size_t next = 0;
  for (int q = q_min; q <= q_max; ++q) {
    if (doc.graded[next].q == q) {
      systems.push_back(build_coefficients(doc, cat, doc.graded[next].block));
      ++next;
    } else {
      systems.push_back(CoeffSystem::zero(cat));
    }
  }
  return GradedCoeffSystem(cat, q_min, std::move(systems));
}

namespace {

ObjectId object_ref(const FinCategory& c, const std::string& label, const std::string& where) {
  auto x = c.find_object(label);
  if (!x) dangling(where + ": unknown object '" + label + "'");
  return *x;
}

MorphismId morphism_ref(const FinCategory& c, const std::string& label, const std::string& where) {
  auto f = c.find_morphism(label);
  if (!f) dangling(where + ": unknown morphism '" + label + "'");
  return *f;
}

}  // namespace

CellOrbitComplex build_cell_complex(const CellComplexSpec& spec, const CategoryPtr& cat) {
  const FinCategory& c = *cat;
  std::vector<std::vector<OrbitCell>> cells;
  std::vector<std::map<std::string, std::size_t>> index(spec.cells.size());
  for (std::size_t n = 0; n < spec.cells.size(); ++n) {
    std::vector<OrbitCell> row;
    for (const auto& cell : spec.cells[n]) {
      if (!index[n].emplace(cell.label, row.size()).second) {
        throw Error(ErrorCode::Parse, "duplicate " + std::to_string(n) + "-cell '" + cell.label + "'");
      }
      row.push_back({cell.label, object_ref(c, cell.stabilizer, "cell '" + cell.label + "'")});
    }
    cells.push_back(std::move(row));
  }
  std::vector<std::vector<BoundaryTerm>> boundaries(spec.cells.empty() ? 0 : spec.cells.size() - 1);
  for (const auto& b : spec.boundary) {
    if (b.dim < 1 || static_cast<std::size_t>(b.dim) >= spec.cells.size()) {
      dangling("boundary term in dimension " + std::to_string(b.dim) + " has no cells");
    }
    const auto n = static_cast<std::size_t>(b.dim);
    auto ci = index[n].find(b.cell);
    auto fi = index[n - 1].find(b.face);
    if (ci == index[n].end()) dangling("boundary: unknown " + std::to_string(n) + "-cell '" + b.cell + "'");
    if (fi == index[n - 1].end()) {
      dangling("boundary: unknown " + std::to_string(n - 1) + "-cell '" + b.face + "'");
    }
    boundaries[n - 1].push_back(
        {ci->second, fi->second, b.coefficient, morphism_ref(c, b.morphism, "boundary")});
  }
  return CellOrbitComplex(cat, std::move(cells), std::move(boundaries));
}

PosetChainModel build_poset_model(const PosetSpec& spec, const CoeffSystem& f) {
  const FinCategory& c = *f.category();
  std::vector<std::vector<std::size_t>> gens;
  for (const auto& face : spec.faces) {
    auto v = face.vertices;
    std::sort(v.begin(), v.end());
    if (v.empty() || std::adjacent_find(v.begin(), v.end()) != v.end()) {
      throw Error(ErrorCode::Parse, "face " + simplex_label(face.vertices) + " is not a simplex");
    }
    gens.push_back(std::move(v));
  }
  PosetChainModel model;
  model.complex = SimplicialComplex(gens);
  model.coefficients = f;
  std::vector<std::optional<ObjectId>> stab(model.complex.size());
  for (const auto& face : spec.faces) {
    auto v = face.vertices;
    std::sort(v.begin(), v.end());
    auto& slot = stab[model.complex.index_of(v)];
    if (slot) throw Error(ErrorCode::Parse, "face " + simplex_label(v) + " listed twice");
    slot = object_ref(c, face.stabilizer, "face " + simplex_label(v));
  }
  for (std::size_t i = 0; i < stab.size(); ++i) {
    if (!stab[i]) {
      dangling("face " + simplex_label(model.complex.simplices()[i]) + " has no stabilizer entry");
    }
    model.stabilizers.push_back(*stab[i]);
  }
  for (const auto& inc : spec.inclusions) {
    auto s = inc.simplex, t = inc.facet;
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    const std::string where = "inclusion " + simplex_label(s) + " > " + simplex_label(t);
    if (s.size() != t.size() + 1 || !std::includes(s.begin(), s.end(), t.begin(), t.end())) {
      throw Error(ErrorCode::Parse, where + " is not a facet pair");
    }
    const std::size_t si = model.complex.index_of(s);
    const std::size_t ti = model.complex.index_of(t);
    model.inclusions[{si, ti}] = morphism_ref(c, inc.morphism, where);
  }
  return model;
}

RecipeInstance build_recipe(const RecipeSpec& spec, const CoeffSystem& f) {
  const FinCategory& c = *f.category();
  RecipeInstance inst;
  inst.coefficients = f;
  std::map<std::string, std::size_t> vindex;
  for (const auto& v : spec.vertices) {
    if (!vindex.emplace(v.label, inst.vertices.size()).second) {
      throw Error(ErrorCode::Parse, "duplicate vertex '" + v.label + "'");
    }
    inst.vertices.push_back({v.label, object_ref(c, v.stabilizer, "vertex '" + v.label + "'")});
  }
  for (const auto& e : spec.edges) {
    const std::string where = "edge '" + e.label + "'";
    auto vi = vindex.find(e.v), wi = vindex.find(e.w);
    if (vi == vindex.end()) dangling(where + ": unknown vertex '" + e.v + "'");
    if (wi == vindex.end()) dangling(where + ": unknown vertex '" + e.w + "'");
    inst.edges.push_back({vi->second, wi->second, e.label, object_ref(c, e.intersection, where),
                          morphism_ref(c, e.inclusion, where), morphism_ref(c, e.conjugation, where)});
  }
  return inst;
}

CentralExtInstance build_central_ext(const CentralExtSpec& spec, const CoeffSystem& f) {
  std::vector<long long> residues;
  for (const auto& e : spec.recipe.edges) residues.push_back(e.residue);
  return CentralExtInstance(build_recipe(spec.recipe, f), spec.m, residues);
}

ExactSequenceInstance build_exact_sequence(const ExactSequenceSpec& spec) {
  ExactSequenceInstance seq;
  seq.groups = spec.groups;
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    seq.maps.emplace_back(spec.groups[i], spec.groups[i + 1], spec.maps[i]);
  }
  return seq;
}

Sl2Square build_sl2_square(const Sl2SquareSpec& spec, const CoeffSystem& f) {
  const FinCategory& c = *f.category();
  const MorphismId l = morphism_ref(c, spec.left, "sl2_square.left");
  const MorphismId r = morphism_ref(c, spec.right, "sl2_square.right");
  if (c.morphism(l).source != c.morphism(r).source) {
    throw Error(ErrorCode::Category, "sl2_square: left and right maps need a common source");
  }
  return Sl2Square{f.map(l), f.map(r)};
}

namespace {

void category_into(const CoeffSystem& f, InstanceDocument& doc) {
  const FinCategory& c = *f.category();
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    doc.objects.push_back(c.object_label(x));
    doc.coefficients.groups.emplace(c.object_label(x), f.value(x));
  }
  for (MorphismId m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const Morphism& mor = c.morphism(m);
    doc.morphisms.push_back({mor.label, c.object_label(mor.source), c.object_label(mor.target)});
    doc.coefficients.maps.emplace(mor.label, f.map(m).matrix());
  }
  for (const auto& [key, h] : c.composition_table()) {
    doc.composition.push_back({c.morphism(key.first).label, c.morphism(key.second).label,
                               c.morphism(h).label});
  }
  for (MorphismId m : f.central()) doc.coefficients.central.push_back(c.morphism(m).label);
}

RecipeSpec recipe_spec(const RecipeInstance& inst) {
  const FinCategory& c = *inst.category();
  RecipeSpec s;
  for (const auto& v : inst.vertices) s.vertices.push_back({v.label, c.object_label(v.stabilizer)});
  for (const auto& e : inst.edges) {
    s.edges.push_back({inst.vertices.at(e.v).label, inst.vertices.at(e.w).label, e.label,
                       c.object_label(e.intersection), c.morphism(e.inclusion).label,
                       c.morphism(e.conjugation).label, 0});
  }
  return s;
}

}  // namespace

InstanceDocument document_from_recipe(const RecipeInstance& inst) {
  InstanceDocument doc;
  category_into(inst.coefficients, doc);
  doc.structure = recipe_spec(inst);
  return doc;
}

InstanceDocument document_from_central(const CentralExtInstance& inst) {
  InstanceDocument doc;
  category_into(inst.base().coefficients, doc);
  CentralExtSpec s;
  s.recipe = recipe_spec(inst.base());
  s.m = inst.m();
  for (std::size_t i = 0; i < s.recipe.edges.size(); ++i) {
    s.recipe.edges[i].residue = static_cast<long long>(inst.residues()[i]);
  }
  doc.structure = std::move(s);
  return doc;
}

}  // namespace hk
