#include "hk/bredon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hk {

ChainComplex::ChainComplex(std::vector<FgAbGroup> groups, std::vector<AbHom> differentials)
    : groups_(std::move(groups)), differentials_(std::move(differentials)) {
  const std::size_t expected = groups_.empty() ? 0 : groups_.size() - 1;
  if (differentials_.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "chain complex needs one differential per degree >= 1");
  }
  for (std::size_t n = 1; n < groups_.size(); ++n) {
    const AbHom& d = differentials_[n - 1];
    if (!(d.source() == groups_[n]) || !(d.target() == groups_[n - 1])) {
      throw Error(ErrorCode::DimensionMismatch, "differential does not match chain groups");
    }
  }
}

const FgAbGroup& ChainComplex::group(int n) const {
  static const FgAbGroup zero;
  if (n < 0 || n > top_degree()) return zero;
  return groups_[static_cast<std::size_t>(n)];
}

AbHom ChainComplex::differential(int n) const {
  if (n >= 1 && n <= top_degree()) return differentials_[static_cast<std::size_t>(n - 1)];
  return AbHom::zero(group(n), group(n - 1));
}

FgAbGroup ChainComplex::homology(int n) const {
  if (n < 0 || n > top_degree()) return FgAbGroup::trivial();
  return homology_at(differential(n), differential(n + 1));
}

CellOrbitComplex::CellOrbitComplex(CategoryPtr category, std::vector<std::vector<OrbitCell>> cells,
                                   std::vector<std::vector<BoundaryTerm>> boundaries)
    : category_(std::move(category)), cells_(std::move(cells)), boundaries_(std::move(boundaries)) {
  const FinCategory& c = *category_;
  const std::size_t expected = cells_.empty() ? 0 : cells_.size() - 1;
  if (boundaries_.size() < expected) boundaries_.resize(expected);
  if (boundaries_.size() != expected) {
    throw Error(ErrorCode::DanglingReference, "boundary data for a dimension without cells");
  }
  for (const auto& layer : cells_) {
    for (const auto& cell : layer) {
      if (cell.stabilizer >= c.object_count()) {
        throw Error(ErrorCode::DanglingReference,
                    "cell '" + cell.label + "' has an unknown stabilizer object");
      }
    }
  }
  for (std::size_t n = 1; n < cells_.size(); ++n) {
    for (const auto& term : boundaries_[n - 1]) {
      if (term.cell >= cells_[n].size() || term.face >= cells_[n - 1].size()) {
        throw Error(ErrorCode::DanglingReference,
                    "boundary term refers to a missing cell in dimension " + std::to_string(n));
      }
      if (term.morphism >= c.morphism_count()) {
        throw Error(ErrorCode::DanglingReference, "boundary term refers to an unknown morphism");
      }
      const Morphism& m = c.morphism(term.morphism);
      const OrbitCell& from = cells_[n][term.cell];
      const OrbitCell& to = cells_[n - 1][term.face];
      if (m.source != from.stabilizer || m.target != to.stabilizer) {
        throw Error(ErrorCode::Category, "boundary morphism '" + m.label + "' from cell '" +
                                             from.label + "' to face '" + to.label +
                                             "' has the wrong endpoints");
      }
    }
  }
}

const std::vector<OrbitCell>& CellOrbitComplex::cells(int n) const {
  static const std::vector<OrbitCell> none;
  if (n < 0 || n > dimension()) return none;
  return cells_[static_cast<std::size_t>(n)];
}

const std::vector<BoundaryTerm>& CellOrbitComplex::boundary(int n) const {
  static const std::vector<BoundaryTerm> none;
  if (n < 1 || n > dimension()) return none;
  return boundaries_[static_cast<std::size_t>(n - 1)];
}

std::vector<ObjectId> CellOrbitComplex::stabilizer_objects() const {
  std::set<ObjectId> s;
  for (const auto& layer : cells_)
    for (const auto& cell : layer) s.insert(cell.stabilizer);
  return {s.begin(), s.end()};
}

CellOrbitComplex CellOrbitComplex::skeleton(int n) const {
  const std::size_t keep = static_cast<std::size_t>(std::clamp(n + 1, 0, dimension() + 1));
  std::vector<std::vector<OrbitCell>> cells(cells_.begin(), cells_.begin() + keep);
  std::vector<std::vector<BoundaryTerm>> bnd(
      boundaries_.begin(), boundaries_.begin() + (keep == 0 ? 0 : keep - 1));
  return CellOrbitComplex(category_, std::move(cells), std::move(bnd));
}

Report check_boundary(const CellOrbitComplex& x) {
  const FinCategory& c = *x.category();
  for (int n = 2; n <= x.dimension(); ++n) {
    // (cell, face-of-face) -> formal sum of morphisms
    std::map<std::pair<std::size_t, std::size_t>, std::map<MorphismId, Integer>> sums;
    for (const auto& outer : x.boundary(n)) {
      for (const auto& inner : x.boundary(n - 1)) {
        if (inner.cell != outer.face) continue;
        auto composite = c.compose(inner.morphism, outer.morphism);
        if (!composite) {
          return Report::fail("boundary morphisms '" + c.morphism(inner.morphism).label +
                              "' and '" + c.morphism(outer.morphism).label + "' do not compose");
        }
        sums[{outer.cell, inner.face}][*composite] += outer.coefficient * inner.coefficient;
      }
    }
    for (const auto& [key, sum] : sums) {
      for (const auto& [m, coeff] : sum) {
        if (sgn(coeff) != 0) {
          std::ostringstream os;
          os << "d o d != 0 from " << n << "-cell '" << x.cells(n)[key.first].label << "' to "
             << (n - 2) << "-cell '" << x.cells(n - 2)[key.second].label << "' (coefficient "
             << coeff << " on '" << c.morphism(m).label << "')";
          return Report::fail(os.str());
        }
      }
    }
  }
  return Report::pass();
}

namespace {

void require_same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a != b && !(*a == *b)) {
    throw Error(ErrorCode::Category, "cell complex and coefficient system use different categories");
  }
}

std::vector<FgAbGroup> chain_group_summands(const CellOrbitComplex& x, const CoeffSystem& f,
                                            int n) {
  std::vector<FgAbGroup> out;
  for (const auto& cell : x.cells(n)) out.push_back(f.value(cell.stabilizer));
  return out;
}

}  // namespace

ChainComplex apply_coefficients(const CellOrbitComplex& x, const CoeffSystem& f) {
  require_same_category(x.category(), f.category());
  std::vector<FgAbGroup> groups;
  std::vector<AbHom> diffs;
  for (int n = 0; n <= x.dimension(); ++n) {
    groups.push_back(direct_sum(chain_group_summands(x, f, n)).group);
  }
  for (int n = 1; n <= x.dimension(); ++n) {
    BlockMapBuilder builder(chain_group_summands(x, f, n), chain_group_summands(x, f, n - 1));
    for (const auto& term : x.boundary(n)) {
      builder.add(term.face, term.cell, term.coefficient * f.map(term.morphism));
    }
    diffs.push_back(builder.build());
  }
  for (std::size_t n = 1; n < diffs.size(); ++n) {
    if (!compose(diffs[n - 1], diffs[n]).is_zero()) {
      throw Error(ErrorCode::NonZeroComposite,
                  "d o d != 0 in degree " + std::to_string(n + 1) + " of the applied complex");
    }
  }
  return ChainComplex(std::move(groups), std::move(diffs));
}

FgAbGroup bredon_homology(const CellOrbitComplex& x, const CoeffSystem& f, int n) {
  if (n < 0 || n > x.dimension()) return FgAbGroup::trivial();
  // Only degrees n-1, n, n+1 matter.
  const CellOrbitComplex trimmed = x.skeleton(n + 1);
  return apply_coefficients(trimmed, f).homology(n);
}

std::pair<CellOrbitComplex, CoeffSystem> restrict_to_isotropy(const CellOrbitComplex& x,
                                                              const CoeffSystem& f) {
  require_same_category(x.category(), f.category());
  const std::vector<ObjectId> used = x.stabilizer_objects();
  const Subcategory sub = full_subcategory(*x.category(), used);
  std::vector<std::vector<OrbitCell>> cells;
  std::vector<std::vector<BoundaryTerm>> bnd;
  for (int n = 0; n <= x.dimension(); ++n) {
    std::vector<OrbitCell> layer = x.cells(n);
    for (auto& cell : layer) cell.stabilizer = *sub.object_map[cell.stabilizer];
    cells.push_back(std::move(layer));
    if (n >= 1) {
      std::vector<BoundaryTerm> terms = x.boundary(n);
      for (auto& t : terms) t.morphism = *sub.morphism_map[t.morphism];
      bnd.push_back(std::move(terms));
    }
  }
  return {CellOrbitComplex(sub.category, std::move(cells), std::move(bnd)), restrict(f, used)};
}

Report validate_one_skeleton(const OneSkeletonData& data) {
  const FinCategory& c = *data.category;
  for (const auto& v : data.vertices) {
    if (v.stabilizer >= c.object_count()) {
      return Report::fail("vertex '" + v.label + "' has an unknown stabilizer");
    }
  }
  for (const auto& e : data.edges) {
    if (e.stabilizer >= c.object_count()) {
      return Report::fail("edge '" + e.label + "' has an unknown stabilizer");
    }
    if (e.minus_vertex >= data.vertices.size() || e.plus_vertex >= data.vertices.size()) {
      return Report::fail("edge '" + e.label + "' attaches to a missing vertex");
    }
    if (e.minus_morphism >= c.morphism_count() || e.plus_morphism >= c.morphism_count()) {
      return Report::fail("edge '" + e.label + "' uses an unknown morphism");
    }
    const Morphism& mm = c.morphism(e.minus_morphism);
    const Morphism& mp = c.morphism(e.plus_morphism);
    if (mm.source != e.stabilizer || mm.target != data.vertices[e.minus_vertex].stabilizer) {
      return Report::fail("edge '" + e.label + "': morphism '" + mm.label +
                          "' has the wrong endpoints");
    }
    if (mp.source != e.stabilizer || mp.target != data.vertices[e.plus_vertex].stabilizer) {
      return Report::fail("edge '" + e.label + "': morphism '" + mp.label +
                          "' has the wrong endpoints");
    }
  }
  return Report::pass();
}

AbHom first_differential(const OneSkeletonData& data, const CoeffSystem& f) {
  if (Report r = validate_one_skeleton(data); !r) throw Error(ErrorCode::DanglingReference, r.message);
  require_same_category(data.category, f.category());
  std::vector<FgAbGroup> sources, targets;
  for (const auto& e : data.edges) sources.push_back(f.value(e.stabilizer));
  for (const auto& v : data.vertices) targets.push_back(f.value(v.stabilizer));
  BlockMapBuilder builder(std::move(sources), std::move(targets));
  for (std::size_t i = 0; i < data.edges.size(); ++i) {
    const OneSkeletonEdge& e = data.edges[i];
    if (e.minus_vertex != e.plus_vertex) {
      builder.add(e.minus_vertex, i, -f.map(e.minus_morphism));
      builder.add(e.plus_vertex, i, f.map(e.plus_morphism));
    } else {
      builder.add(e.plus_vertex, i, f.map(e.plus_morphism) - f.map(e.minus_morphism));
    }
  }
  return builder.build();
}

CellOrbitComplex to_cell_complex(const OneSkeletonData& data) {
  if (Report r = validate_one_skeleton(data); !r) throw Error(ErrorCode::DanglingReference, r.message);
  std::vector<OrbitCell> edges;
  std::vector<BoundaryTerm> terms;
  for (std::size_t i = 0; i < data.edges.size(); ++i) {
    const OneSkeletonEdge& e = data.edges[i];
    edges.push_back(OrbitCell{e.label, e.stabilizer});
    terms.push_back(BoundaryTerm{i, e.minus_vertex, Integer(-1), e.minus_morphism});
    terms.push_back(BoundaryTerm{i, e.plus_vertex, Integer(1), e.plus_morphism});
  }
  std::vector<std::vector<OrbitCell>> cells{data.vertices};
  std::vector<std::vector<BoundaryTerm>> bnd;
  if (!edges.empty()) {
    cells.push_back(std::move(edges));
    bnd.push_back(std::move(terms));
  }
  return CellOrbitComplex(data.category, std::move(cells), std::move(bnd));
}

SimplicialComplex::SimplicialComplex(const std::vector<std::vector<std::size_t>>& generators) {
  std::set<std::vector<std::size_t>> all;
  for (auto s : generators) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorCode::Parse, "simplex with a repeated vertex");
    }
    if (s.empty()) continue;
    const std::size_t k = s.size();
    // every nonempty subset is a face
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1UL << i)) face.push_back(s[i]);
      all.insert(std::move(face));
    }
  }
  simplices_.assign(all.begin(), all.end());
  std::stable_sort(simplices_.begin(), simplices_.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (std::size_t i = 0; i < simplices_.size(); ++i) index_[simplices_[i]] = i;
}

SimplicialComplex SimplicialComplex::full_simplex(std::size_t k) {
  std::vector<std::size_t> top(k + 1);
  for (std::size_t i = 0; i <= k; ++i) top[i] = i;
  return SimplicialComplex({top});
}

int SimplicialComplex::dimension() const {
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1;
}

std::size_t SimplicialComplex::index_of(const std::vector<std::size_t>& simplex) const {
  auto it = index_.find(simplex);
  if (it == index_.end()) {
    throw Error(ErrorCode::DanglingReference, "simplex " + simplex_label(simplex) + " not present");
  }
  return it->second;
}

std::vector<std::size_t> SimplicialComplex::of_dimension(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (static_cast<int>(simplices_[i].size()) - 1 == n) out.push_back(i);
  return out;
}

std::string simplex_label(const std::vector<std::size_t>& simplex) {
  std::string s = "[";
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(simplex[i]);
  }
  return s + "]";
}

CellOrbitComplex from_simplicial(const SimplicialOrbitData& data) {
  const SimplicialComplex& k = data.complex;
  if (data.stabilizers.size() != k.size()) {
    throw Error(ErrorCode::DanglingReference, "need one stabilizer per simplex");
  }
  const int dim = k.dimension();
  std::vector<std::vector<OrbitCell>> cells(static_cast<std::size_t>(dim + 1));
  std::vector<std::size_t> position(k.size());
  for (int n = 0; n <= dim; ++n) {
    for (std::size_t idx : k.of_dimension(n)) {
      position[idx] = cells[static_cast<std::size_t>(n)].size();
      cells[static_cast<std::size_t>(n)].push_back(
          OrbitCell{simplex_label(k.simplices()[idx]), data.stabilizers[idx]});
    }
  }
  std::vector<std::vector<BoundaryTerm>> bnd(static_cast<std::size_t>(std::max(dim, 0)));
  for (int n = 1; n <= dim; ++n) {
    for (std::size_t idx : k.of_dimension(n)) {
      const auto& s = k.simplices()[idx];
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::size_t> face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const std::size_t fidx = k.index_of(face);
        auto it = data.face_morphisms.find({idx, fidx});
        if (it == data.face_morphisms.end()) {
          throw Error(ErrorCode::DanglingReference, "no morphism for face " + simplex_label(face) +
                                                        " of " + simplex_label(s));
        }
        bnd[static_cast<std::size_t>(n - 1)].push_back(
            BoundaryTerm{position[idx], position[fidx], Integer(i % 2 == 0 ? 1 : -1), it->second});
      }
    }
  }
  return CellOrbitComplex(data.category, std::move(cells), std::move(bnd));
}

CategoryPtr trivial_category() {
  auto c = std::make_shared<FinCategory>();
  c->add_object("pt");
  return c;
}

CellOrbitComplex trivial_simplicial(const SimplicialComplex& k) {
  SimplicialOrbitData data;
  data.complex = k;
  data.category = trivial_category();
  data.stabilizers.assign(k.size(), 0);
  const MorphismId id = data.category->identity(0);
  for (std::size_t idx = 0; idx < k.size(); ++idx) {
    const auto& s = k.simplices()[idx];
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<std::size_t> face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      data.face_morphisms[{idx, k.index_of(face)}] = id;
    }
  }
  return from_simplicial(data);
}

}  // namespace hk
