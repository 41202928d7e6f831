#pragma once

// Instance files: a JSON document holding a finite category, a coefficient
// system (optionally graded), one structure block and the user-asserted
// hypotheses that the engine cannot check.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hk/abelian.hpp"
#include "hk/ahss.hpp"
#include "hk/bredon.hpp"
#include "hk/fincat.hpp"
#include "hk/mvcube.hpp"
#include "hk/recipe.hpp"

namespace hk {

inline constexpr const char* kFormatVersion = "hecke-k0/1";

struct MorphismSpec {
  std::string label;
  std::string source;
  std::string target;
  friend bool operator==(const MorphismSpec&, const MorphismSpec&) = default;
};

struct CoefficientBlock {
  std::map<std::string, FgAbGroup> groups;  // objects not listed carry 0
  std::map<std::string, IntMatrix> maps;    // rows = target generators
  std::vector<std::string> central;
  friend bool operator==(const CoefficientBlock&, const CoefficientBlock&) = default;
};

struct GradedEntry {
  int q = 0;
  CoefficientBlock block;
  friend bool operator==(const GradedEntry&, const GradedEntry&) = default;
};

struct CellSpec {
  std::string label;
  std::string stabilizer;
  friend bool operator==(const CellSpec&, const CellSpec&) = default;
};

struct BoundarySpec {
  int dim = 1;
  std::string cell;
  std::string face;
  Integer coefficient;
  std::string morphism;
  friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

struct CellComplexSpec {
  std::vector<std::vector<CellSpec>> cells;  // cells[n] are the n-cells
  std::vector<BoundarySpec> boundary;
  friend bool operator==(const CellComplexSpec&, const CellComplexSpec&) = default;
};

struct FaceSpec {
  std::vector<std::size_t> vertices;
  std::string stabilizer;
  friend bool operator==(const FaceSpec&, const FaceSpec&) = default;
};

struct InclusionSpec {
  std::vector<std::size_t> simplex;
  std::vector<std::size_t> facet;
  std::string morphism;  // stab(simplex) -> stab(facet)
  friend bool operator==(const InclusionSpec&, const InclusionSpec&) = default;
};

struct PosetSpec {
  std::vector<FaceSpec> faces;
  std::vector<InclusionSpec> inclusions;
  friend bool operator==(const PosetSpec&, const PosetSpec&) = default;
};

struct RecipeVertexSpec {
  std::string label;
  std::string stabilizer;
  friend bool operator==(const RecipeVertexSpec&, const RecipeVertexSpec&) = default;
};

struct RecipeEdgeSpec {
  std::string v;
  std::string w;
  std::string label;
  std::string intersection;
  std::string inclusion;
  std::string conjugation;
  long long residue = 0;  // only read for central extensions
  friend bool operator==(const RecipeEdgeSpec&, const RecipeEdgeSpec&) = default;
};

struct RecipeSpec {
  std::vector<RecipeVertexSpec> vertices;
  std::vector<RecipeEdgeSpec> edges;
  friend bool operator==(const RecipeSpec&, const RecipeSpec&) = default;
};

struct CentralExtSpec {
  RecipeSpec recipe;
  std::size_t m = 1;
  friend bool operator==(const CentralExtSpec&, const CentralExtSpec&) = default;
};

struct ExactSequenceSpec {
  std::vector<FgAbGroup> groups;
  std::vector<IntMatrix> maps;  // maps[i] : groups[i] -> groups[i+1]
  friend bool operator==(const ExactSequenceSpec&, const ExactSequenceSpec&) = default;
};

struct Sl2SquareSpec {
  std::string left;   // morphism I -> U_0
  std::string right;  // morphism I -> U_1
  friend bool operator==(const Sl2SquareSpec&, const Sl2SquareSpec&) = default;
};

using StructureSpec = std::variant<CellComplexSpec, PosetSpec, RecipeSpec, CentralExtSpec,
                                   ExactSequenceSpec, Sl2SquareSpec>;

std::string kind_name(const StructureSpec& s);

struct InstanceDocument {
  std::string format = kFormatVersion;
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::vector<std::array<std::string, 3>> composition;  // g, f, g o f
  CoefficientBlock coefficients;
  std::vector<GradedEntry> graded;
  StructureSpec structure;
  std::map<std::string, bool> assertions;
  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

/// Recognized assertion keys.
const std::vector<std::string>& assertion_keys();

InstanceDocument parse_document(const std::string& text);
InstanceDocument load_document(const std::string& path);
std::string serialize_document(const InstanceDocument& doc);

/// Parses "0", "Z", "Z^2 + Z/3" and similar canonical strings.
FgAbGroup parse_group_string(const std::string& s);

// Resolution into engine objects. Every function throws hk::Error with a
// specific code on dangling references or failed validation.

CategoryPtr build_category(const InstanceDocument& doc);
CoeffSystem build_coefficients(const InstanceDocument& doc, const CategoryPtr& cat,
                               const CoefficientBlock& block);
/// The q = 0 system: the plain block, or the graded entry at q = 0.
CoeffSystem degree0_coefficients(const InstanceDocument& doc, const CategoryPtr& cat);
GradedCoeffSystem graded_coefficients(const InstanceDocument& doc, const CategoryPtr& cat);

CellOrbitComplex build_cell_complex(const CellComplexSpec& spec, const CategoryPtr& cat);
PosetChainModel build_poset_model(const PosetSpec& spec, const CoeffSystem& f);
RecipeInstance build_recipe(const RecipeSpec& spec, const CoeffSystem& f);
CentralExtInstance build_central_ext(const CentralExtSpec& spec, const CoeffSystem& f);
ExactSequenceInstance build_exact_sequence(const ExactSequenceSpec& spec);
Sl2Square build_sl2_square(const Sl2SquareSpec& spec, const CoeffSystem& f);

/// Writes a recipe (or central extension) back into document form.
InstanceDocument document_from_recipe(const RecipeInstance& inst);
InstanceDocument document_from_central(const CentralExtInstance& inst);

}  // namespace hk
