#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hk/bredon.hpp"

namespace hk {

/// Coefficient systems F_q for q in [q_min, q_max], all over one category.
class GradedCoeffSystem {
 public:
  GradedCoeffSystem() = default;
  /// systems[i] is F_{q_min + i}. An empty vector gives an empty window.
  GradedCoeffSystem(CategoryPtr category, int q_min, std::vector<CoeffSystem> systems);

  const CategoryPtr& category() const noexcept { return category_; }
  bool empty() const noexcept { return systems_.empty(); }
  int q_min() const noexcept { return q_min_; }
  int q_max() const noexcept { return q_min_ + static_cast<int>(systems_.size()) - 1; }
  /// F_q; the zero system outside the window.
  CoeffSystem at(int q) const;
  const std::vector<CoeffSystem>& systems() const noexcept { return systems_; }

  /// True iff every F_q with q < 0 in the window has only trivial values.
  bool is_connective() const;

 private:
  CategoryPtr category_;
  int q_min_ = 0;
  std::vector<CoeffSystem> systems_;
};

/// E^1 or E^2 page over p in [0, dim X] and q in the coefficient window.
struct SpectralPage {
  int r = 1;
  int p_max = -1;
  int q_min = 0;
  int q_max = -1;
  std::map<std::pair<int, int>, FgAbGroup> entries;
  /// For r = 1: d^1_{p,q} : E^1_{p,q} -> E^1_{p-1,q}, keyed by (p, q), p >= 1.
  std::map<std::pair<int, int>, AbHom> d1;

  /// Trivial outside the declared ranges.
  FgAbGroup at(int p, int q) const;
};

SpectralPage e1_page(const CellOrbitComplex& x, const GradedCoeffSystem& g);

/// E^2_{p,q} = H_p of the q-th row of E^1.
SpectralPage e2_page(const CellOrbitComplex& x, const GradedCoeffSystem& g);

/// Text grid, rows q from top to bottom, columns p.
std::string render_page(const SpectralPage& page);

/// True iff H_0(X; F_0) and the colimit of F_0 over the stabilizer objects of X
/// have the same invariant factors.
bool edge_h0_check(const CellOrbitComplex& x, const CoeffSystem& f0);

/// Associated graded of H_n for a complex of dimension <= 1.
struct AssembledDegree {
  int n = 0;
  FgAbGroup filtration0;  // E^2_{0,n}
  FgAbGroup filtration1;  // E^2_{1,n-1}

  bool vanishes() const { return filtration0.is_trivial() && filtration1.is_trivial(); }
};

/// One entry per n in [q_min, q_max + 1]. Throws Unsupported when the page
/// comes from a complex of dimension >= 2, where higher differentials and
/// extensions are unknown.
std::vector<AssembledDegree> assemble_k_groups(const SpectralPage& page);

}  // namespace hk
