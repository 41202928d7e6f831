#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "hk/bredon.hpp"
#include "hk/recipe.hpp"

namespace hk {

/// Fundamental-domain model: an ordered simplicial complex with a stabilizer
/// object per face and the inclusion G_sigma -> G_tau for every facet tau of sigma.
struct PosetChainModel {
  SimplicialComplex complex;
  CoeffSystem coefficients;
  std::vector<ObjectId> stabilizers;
  std::map<std::pair<std::size_t, std::size_t>, MorphismId> inclusions;
};

Report validate_poset_model(const PosetChainModel& model);

/// The model as an orbit cell complex, alternating signs on facets.
CellOrbitComplex poset_cell_complex(const PosetChainModel& model);

/// Degree p: sum over p-faces of F(G_sigma), inclusion-induced differentials.
ChainComplex poset_chain_complex(const PosetChainModel& model);

/// The face poset as an index category: an object per simplex and a morphism
/// sigma -> tau for every face tau of sigma, mirroring G_sigma in G_tau.
struct FacePoset {
  CategoryPtr category;
  /// (simplex, proper face) -> morphism.
  std::map<std::pair<std::size_t, std::size_t>, MorphismId> face_morphisms;
};

FacePoset face_poset_category(const SimplicialComplex& k);

/// Face poset category with the constant system A on it.
PosetChainModel constant_poset_model(const SimplicialComplex& k, const FgAbGroup& a);

/// Vertices and edges of the model as strict fundamental domain data.
StrictDomainData strict_domain(const PosetChainModel& model);

/// groups[0] -> groups[1] -> ... ; maps[i] : groups[i] -> groups[i + 1].
struct ExactSequenceInstance {
  std::vector<FgAbGroup> groups;
  std::vector<AbHom> maps;
};

struct ExactnessEntry {
  std::size_t position = 0;
  FgAbGroup homology;
  bool exact = false;
};

struct ExactnessReport {
  std::vector<ExactnessEntry> entries;
  bool all_exact() const;
};

/// ker / im at every interior position. Throws NonZeroComposite when two
/// consecutive maps do not compose to zero.
ExactnessReport check_exactness(const ExactSequenceInstance& seq);

/// The SL_2 square at the level of K_0: F(I) maps to F(U_0) and F(U_1).
struct Sl2Square {
  AbHom to_left;   // F(I) -> F(U_0)
  AbHom to_right;  // F(I) -> F(U_1)
};

/// coker( F(I) -> F(U_0) + F(U_1) ), the group completing the Mayer-Vietoris tail.
FgAbGroup solve_degree0(const Sl2Square& square);

/// F(I) -> F(U_0) + F(U_1) -> K_0 -> 0.
ExactSequenceInstance degree0_tail(const Sl2Square& square);

}  // namespace hk
