#pragma once

// Hand-rolled random instance generators shared by the property tests and
// the acceptance suite. Everything is driven by a caller-owned mt19937.

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hk/abelian.hpp"
#include "hk/fincat.hpp"
#include "hk/recipe.hpp"
#include "hk/smith.hpp"

namespace gen {

using Rng = std::mt19937;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Entries in [lo, hi]; with probability `sparsity` an entry is forced to 0.
inline hk::IntMatrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi,
                            double sparsity = 0.0) {
  hk::IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = coin(rng, sparsity) ? 0 : uniform(rng, lo, hi);
    }
  }
  return m;
}

/// A presented group on at most max_gens generators with a random relation
/// matrix, so torsion and free parts both show up.
inline hk::FgAbGroup group(Rng& rng, std::size_t max_gens = 3) {
  const auto g = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
  const auto r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(g)));
  return hk::FgAbGroup(g, matrix(rng, g, r, -6, 6, 0.5));
}

/// A group from the fixed family Z^r + torsion, r <= 3, torsion drawn from
/// {2, 3, 4, 6, 12}, in a scrambled presentation.
inline hk::FgAbGroup family_group(Rng& rng) {
  static const long orders[] = {2, 3, 4, 6, 12};
  hk::InvariantFactors f;
  f.free_rank = static_cast<std::size_t>(uniform(rng, 0, 3));
  const long t = uniform(rng, 0, 2);
  std::vector<long> picked;
  for (long i = 0; i < t; ++i) picked.push_back(orders[uniform(rng, 0, 4)]);
  // Diagonal relations with a unimodular change of generators on top.
  const std::size_t g = f.free_rank + picked.size();
  hk::IntMatrix rel(g, picked.size());
  for (std::size_t i = 0; i < picked.size(); ++i) rel(f.free_rank + i, i) = picked[i];
  hk::IntMatrix u = hk::IntMatrix::identity(g);
  for (int s = 0; s < 4 && g > 1; ++s) {
    const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(g) - 1));
    auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(g) - 2));
    if (b >= a) ++b;
    u.add_row_multiple(a, b, hk::Integer(uniform(rng, -2, 2)));
  }
  return hk::FgAbGroup(g, u * rel);
}

/// A source group on `gens` generators for which every (matrix, target)
/// pair is a well-defined homomorphism: its relations are random integer
/// combinations of the lattice {x : M_i x lies in the span of R_i, all i}.
inline hk::FgAbGroup compatible_source(Rng& rng, std::size_t gens,
                                       const std::vector<std::pair<hk::IntMatrix, hk::FgAbGroup>>& maps,
                                       bool whole_lattice = false) {
  std::size_t rows = 0, cols = gens;
  for (const auto& [m, t] : maps) {
    rows += t.generators();
    cols += t.relations().cols();
  }
  hk::IntMatrix block(rows, cols);
  std::size_t r0 = 0, c0 = gens;
  for (const auto& [m, t] : maps) {
    block.set_block(r0, 0, m);
    block.set_block(r0, c0, t.relations());
    r0 += t.generators();
    c0 += t.relations().cols();
  }
  hk::IntMatrix lattice = maps.empty() ? hk::IntMatrix::identity(gens)
                                       : hk::integer_kernel(block).rows_range(0, gens);
  const std::size_t k = lattice.cols();
  if (whole_lattice) return hk::FgAbGroup(gens, lattice);
  const auto s = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) + 1));
  if (k == 0 || s == 0) return hk::FgAbGroup::free(gens);
  return hk::FgAbGroup(gens, lattice * matrix(rng, k, s, -2, 2));
}

struct RecipeShape {
  std::size_t max_vertices = 4;
  std::size_t max_edges = 6;
  std::size_t max_rank = 3;
};

/// A random valid recipe instance. Vertices may share a stabilizer object
/// and edges may be loops.
inline hk::RecipeInstance recipe(Rng& rng, const RecipeShape& shape = {}) {
  auto cat = std::make_shared<hk::FinCategory>();
  std::vector<hk::FgAbGroup> values;
  std::map<hk::MorphismId, hk::IntMatrix> matrices;
  hk::RecipeInstance inst;
  const auto nv = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(shape.max_vertices)));
  for (std::size_t i = 0; i < nv; ++i) {
    hk::ObjectId obj;
    if (i > 0 && coin(rng, 0.2)) {
      obj = inst.vertices[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(i) - 1))].stabilizer;
    } else {
      obj = cat->add_object("V" + std::to_string(i));
      values.push_back(group(rng, shape.max_rank));
    }
    inst.vertices.push_back({"v" + std::to_string(i), obj});
  }
  const auto ne = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(shape.max_edges)));
  for (std::size_t k = 0; k < ne; ++k) {
    auto v = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nv) - 1));
    auto w = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nv) - 1));
    if (v > w) std::swap(v, w);
    const hk::ObjectId ov = inst.vertices[v].stabilizer, ow = inst.vertices[w].stabilizer;
    const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(shape.max_rank)));
    hk::IntMatrix inc = matrix(rng, values[ov].generators(), a, -3, 3, 0.3);
    hk::IntMatrix con = matrix(rng, values[ow].generators(), a, -3, 3, 0.3);
    const std::string s = std::to_string(k);
    const hk::ObjectId x = cat->add_object("E" + s);
    values.push_back(compatible_source(rng, a, {{inc, values[ov]}, {con, values[ow]}}));
    const hk::MorphismId mi = cat->add_morphism("inc" + s, x, ov);
    const hk::MorphismId mc = cat->add_morphism("con" + s, x, ow);
    matrices.emplace(mi, std::move(inc));
    matrices.emplace(mc, std::move(con));
    inst.edges.push_back({v, w, "g" + s, x, mi, mc});
  }
  inst.coefficients = hk::CoeffSystem(cat, std::move(values), matrices);
  return inst;
}

inline hk::CentralExtInstance central(Rng& rng, std::size_t max_m = 3) {
  hk::RecipeInstance base = recipe(rng);
  const auto m = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_m)));
  std::vector<long long> residues;
  for (std::size_t i = 0; i < base.edges.size(); ++i) residues.push_back(uniform(rng, -5, 5));
  return hk::CentralExtInstance(std::move(base), m, residues);
}

inline hk::GlCoefficientData gl_data(Rng& rng, std::size_t n) {
  hk::GlCoefficientData d;
  d.n = n;
  d.u0 = group(rng, 3);
  const std::size_t g0 = d.u0.generators();
  const auto ai = static_cast<std::size_t>(uniform(rng, 0, 3));
  d.i_0 = matrix(rng, g0, ai, -3, 3, 0.3);
  d.iwahori = compatible_source(rng, ai, {{d.i_0, d.u0}});
  for (std::size_t l = 1; l <= n / 2; ++l) {
    const auto a = static_cast<std::size_t>(uniform(rng, 0, 3));
    hk::IntMatrix c0 = matrix(rng, g0, a, -3, 3, 0.3);
    hk::IntMatrix cl = matrix(rng, g0, a, -3, 3, 0.3);
    d.u0_cap_ul.push_back(compatible_source(rng, a, {{c0, d.u0}, {cl, d.u0}}));
    d.c0.push_back(std::move(c0));
    d.cl.push_back(std::move(cl));
  }
  return d;
}

/// Random closed simplicial complex on at most max_vertices vertices with
/// simplices of dimension at most max_dim.
inline std::vector<std::vector<std::size_t>> simplicial_generators(Rng& rng, std::size_t max_vertices,
                                                                    std::size_t max_dim) {
  const auto nv = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_vertices)));
  const auto count = uniform(rng, 1, 8);
  std::vector<std::vector<std::size_t>> gens;
  for (long i = 0; i < count; ++i) {
    const auto size = static_cast<std::size_t>(
        uniform(rng, 1, static_cast<long>(std::min(nv, max_dim + 1))));
    std::vector<std::size_t> all(nv);
    for (std::size_t v = 0; v < nv; ++v) all[v] = v;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    gens.push_back(std::move(all));
  }
  return gens;
}

}  // namespace gen
