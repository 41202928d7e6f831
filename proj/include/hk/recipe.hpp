#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hk/bredon.hpp"

namespace hk {

/// A representative vertex u in V together with its stabilizer G_u.
struct RecipeVertex {
  std::string label;
  ObjectId stabilizer = 0;
};

/// One pair (v, w) in E with one label g in F(v, w).
///
/// `intersection` stands for G_v meet G_{gw}; `inclusion` maps it into G_v and
/// `conjugation` (z -> g^-1 z g) into G_w. The label itself is opaque.
struct RecipeEdge {
  std::size_t v = 0;
  std::size_t w = 0;
  std::string label;
  ObjectId intersection = 0;
  MorphismId inclusion = 0;
  MorphismId conjugation = 0;
};

struct RecipeInstance {
  CoeffSystem coefficients;
  std::vector<RecipeVertex> vertices;
  std::vector<RecipeEdge> edges;

  const CategoryPtr& category() const { return coefficients.category(); }
};

/// Endpoints of every morphism, v <= w on every edge, and the coefficient system.
Report validate_recipe(const RecipeInstance& inst);

/// sum over edges of F(intersection) -> sum over vertices of F(G_u); the block
/// at u = v is -F(inclusion), at u = w it is F(conjugation), and both add up
/// when v = w.
AbHom build_beta(const RecipeInstance& inst);

/// coker(beta).
FgAbGroup k0_general(const RecipeInstance& inst);

/// The 1-skeleton whose edge attaches at v through `inclusion` and at w
/// through `conjugation`.
OneSkeletonData one_skeleton(const RecipeInstance& inst);

/// SH_0 of the 1-skeleton, computed through the Bredon chain complex.
FgAbGroup k0_via_bredon(const RecipeInstance& inst);

/// Data of a strict fundamental domain: vertices and edges of an ordered
/// simplicial 1-skeleton with inclusion morphisms on both ends.
struct StrictDomainData {
  struct Edge {
    std::size_t v = 0;
    std::size_t w = 0;
    ObjectId intersection = 0;
    MorphismId to_v = 0;
    MorphismId to_w = 0;
  };
  CoeffSystem coefficients;
  std::vector<RecipeVertex> vertices;
  std::vector<Edge> edges;
};

/// Singleton label sets, E = edges with v < w.
RecipeInstance strict_domain_instance(const StrictDomainData& data);

/// A recipe instance over the objects (G_u)~ meet M~, the index m and the
/// residues mu-bar(g) in Z/m, one per edge.
class CentralExtInstance {
 public:
  CentralExtInstance() = default;
  /// Residues are reduced into [0, m).
  CentralExtInstance(RecipeInstance base, std::size_t m, const std::vector<long long>& residues);

  const RecipeInstance& base() const noexcept { return base_; }
  std::size_t m() const noexcept { return m_; }
  const std::vector<std::size_t>& residues() const noexcept { return residues_; }

 private:
  RecipeInstance base_;
  std::size_t m_ = 1;
  std::vector<std::size_t> residues_;
};

/// Same block shape as beta over the base instance.
AbHom build_gamma(const CentralExtInstance& inst);

/// delta + epsilon : (sum_v A_v^m) + (sum_e B_e^m) -> sum_u A_u^m with
/// delta_v = pi - id, epsilon at v the m-fold sum of -F(inclusion) and
/// epsilon at w equal to pi^residue o F(conjugation)^m.
AbHom build_delta_epsilon(const CentralExtInstance& inst);

struct CentralK0 {
  FgAbGroup via_gamma;
  FgAbGroup via_delta_epsilon;
};

/// Both cokernels; throws CrossCheck when they are not isomorphic.
CentralK0 k0_central(const CentralExtInstance& inst);

/// Coefficient data for the SL_n fundamental simplex: groups for the vertex
/// stabilizers U_l and the edge stabilizers U_i meet U_j (i < j), with the
/// matrices of the two inclusions.
struct SlCoefficientData {
  std::size_t n = 0;
  std::vector<FgAbGroup> vertex_groups;
  std::map<std::pair<std::size_t, std::size_t>, FgAbGroup> edge_groups;
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> to_lower;  // into U_i
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> to_upper;  // into U_j
};

RecipeInstance sl_instance(const SlCoefficientData& data);

/// Coefficient data for PGL_n after subdividing the top simplices: the
/// vertex orbit v_0 (stabilizer U_0), the barycenter orbit (H I), the
/// Iwahori I, and U_0 meet U_l for l = 1..floor(n/2).
///
/// c0[l-1] is the inclusion U_0 meet U_l -> U_0 and cl[l-1] the conjugation
/// z -> h^-l z h^l.
struct PglCoefficientData {
  std::size_t n = 0;
  FgAbGroup u0;
  FgAbGroup hi;
  FgAbGroup iwahori;
  std::vector<FgAbGroup> u0_cap_ul;
  IntMatrix i_h;
  IntMatrix i_0;
  std::vector<IntMatrix> c0;
  std::vector<IntMatrix> cl;
};

RecipeInstance pgl_instance(const PglCoefficientData& data);

/// Coefficient data for GL_n: U_0^G, the Iwahori I^G and U_0^G meet U_l^G,
/// with the inclusion i_0 and the maps c0 (inclusion) and cl (conjugation by
/// the l-th power of the cyclic generator).
struct GlCoefficientData {
  std::size_t n = 0;
  FgAbGroup u0;
  FgAbGroup iwahori;
  std::vector<FgAbGroup> u0_cap_ul;
  IntMatrix i_0;
  std::vector<IntMatrix> c0;
  std::vector<IntMatrix> cl;
};

struct GlInstance {
  CentralExtInstance instance;
  /// sum_l (F(cl) - F(c0)) : sum_l F(U_0 meet U_l) -> F(U_0).
  AbHom reduced;
};

GlInstance gl_instance(const GlCoefficientData& data);

struct GlK0 {
  FgAbGroup reduced;
  FgAbGroup full;
  FgAbGroup via_delta_epsilon;
};

/// coker of the reduced map, cross-checked against coker(gamma) and
/// coker(delta + epsilon); throws CrossCheck on disagreement.
GlK0 k0_gl(const GlInstance& gl);

}  // namespace hk
