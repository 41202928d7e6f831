#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hk/abelian.hpp"
#include "hk/fincat.hpp"

namespace hk {

/// Chain complex of presented groups. differential(n) maps degree n to n - 1.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// differentials[n - 1] is d_n : groups[n] -> groups[n - 1], for n >= 1.
  ChainComplex(std::vector<FgAbGroup> groups, std::vector<AbHom> differentials);

  /// Highest degree with a group, -1 when empty.
  int top_degree() const { return static_cast<int>(groups_.size()) - 1; }
  const FgAbGroup& group(int n) const;
  /// d_n; the zero map for degrees without a differential.
  AbHom differential(int n) const;
  const std::vector<FgAbGroup>& groups() const noexcept { return groups_; }

  /// H_n; trivial outside [0, top_degree].
  FgAbGroup homology(int n) const;

 private:
  std::vector<FgAbGroup> groups_;
  std::vector<AbHom> differentials_;
};

struct OrbitCell {
  std::string label;
  ObjectId stabilizer = 0;
};

/// One summand of the boundary of an n-cell: coefficient * [morphism], where
/// morphism goes from the stabilizer of `cell` to that of `face`.
struct BoundaryTerm {
  std::size_t cell = 0;
  std::size_t face = 0;
  Integer coefficient;
  MorphismId morphism = 0;
};

/// Equivariant cell structure given orbit by orbit.
///
/// Boundary data is stored in the covariant convention: each term points from
/// the stabilizer of a cell to the stabilizer of a face, so applying a
/// covariant coefficient system is a matter of evaluating morphisms.
class CellOrbitComplex {
 public:
  CellOrbitComplex() = default;
  /// boundaries[n - 1] holds the terms of the n-cells. Endpoint consistency is
  /// checked here; d o d = 0 is checked by check_boundary.
  CellOrbitComplex(CategoryPtr category, std::vector<std::vector<OrbitCell>> cells,
                   std::vector<std::vector<BoundaryTerm>> boundaries);

  const CategoryPtr& category() const noexcept { return category_; }
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<OrbitCell>& cells(int n) const;
  const std::vector<BoundaryTerm>& boundary(int n) const;
  /// Stabilizer objects occurring anywhere, sorted.
  std::vector<ObjectId> stabilizer_objects() const;

  /// Cells of dimension <= n with their boundaries.
  CellOrbitComplex skeleton(int n) const;

 private:
  CategoryPtr category_;
  std::vector<std::vector<OrbitCell>> cells_;
  std::vector<std::vector<BoundaryTerm>> boundaries_;
};

/// d o d = 0 in the free abelian groups on morphism sets, i.e. for every
/// coefficient system at once.
Report check_boundary(const CellOrbitComplex& x);

/// The complex with C_n = sum over n-cells of F(stabilizer) and differentials
/// the F-images of the boundary sums.
ChainComplex apply_coefficients(const CellOrbitComplex& x, const CoeffSystem& f);

/// BH_n / SH_n of X with coefficients F. Trivial for n < 0 or n > dim X.
FgAbGroup bredon_homology(const CellOrbitComplex& x, const CoeffSystem& f, int n);

/// X and F moved onto the full subcategory spanned by the stabilizers of X.
std::pair<CellOrbitComplex, CoeffSystem> restrict_to_isotropy(const CellOrbitComplex& x,
                                                              const CoeffSystem& f);

struct OneSkeletonEdge {
  std::string label;
  ObjectId stabilizer = 0;
  std::size_t minus_vertex = 0;
  std::size_t plus_vertex = 0;
  MorphismId minus_morphism = 0;
  MorphismId plus_morphism = 0;
};

/// Vertex orbits and edge orbits with their two attaching maps.
struct OneSkeletonData {
  CategoryPtr category;
  std::vector<OrbitCell> vertices;
  std::vector<OneSkeletonEdge> edges;
};

Report validate_one_skeleton(const OneSkeletonData& data);

/// The first differential, block by block:
///   -F(m_-) at j_-  and  +F(m_+) at j_+   when j_- != j_+,
///   F(m_+) - F(m_-)                        when j_- == j_+,
///   0                                      elsewhere.
AbHom first_differential(const OneSkeletonData& data, const CoeffSystem& f);

/// The 1-dimensional cell complex with boundary (+1)[m_+] - (+1)[m_-].
CellOrbitComplex to_cell_complex(const OneSkeletonData& data);

/// Finite abstract simplicial complex, closed under faces.
///
/// Simplices are strictly increasing vertex lists, stored sorted by dimension
/// and then lexicographically.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Any generating family; all faces are added.
  explicit SimplicialComplex(const std::vector<std::vector<std::size_t>>& generators);

  static SimplicialComplex full_simplex(std::size_t k);

  const std::vector<std::vector<std::size_t>>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  int dimension() const;
  /// Index of the given (sorted) simplex; throws when absent.
  std::size_t index_of(const std::vector<std::size_t>& simplex) const;
  /// Indices of the simplices of dimension n, in storage order.
  std::vector<std::size_t> of_dimension(int n) const;

 private:
  std::vector<std::vector<std::size_t>> simplices_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

std::string simplex_label(const std::vector<std::size_t>& simplex);

/// A simplicial complex with stabilizer objects per simplex and one morphism
/// per (simplex, codimension-one face) pair.
struct SimplicialOrbitData {
  SimplicialComplex complex;
  CategoryPtr category;
  std::vector<ObjectId> stabilizers;
  std::map<std::pair<std::size_t, std::size_t>, MorphismId> face_morphisms;
};

/// Alternating-sign boundary: d[v_0 .. v_n] = sum_k (-1)^k [m_k] [.. v_k omitted ..].
CellOrbitComplex from_simplicial(const SimplicialOrbitData& data);

/// The one-object category with only its identity.
CategoryPtr trivial_category();

/// K over the trivial category; all stabilizers are the single object.
CellOrbitComplex trivial_simplicial(const SimplicialComplex& k);

}  // namespace hk
