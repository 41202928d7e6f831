#include "hk/mvcube.hpp"

#include <algorithm>
#include <memory>

namespace hk {

Report validate_poset_model(const PosetChainModel& model) {
  const SimplicialComplex& k = model.complex;
  const FinCategory& c = *model.coefficients.category();
  if (model.stabilizers.size() != k.size()) {
    return Report::fail("need one stabilizer object per face");
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (model.stabilizers[i] >= c.object_count()) {
      return Report::fail("face " + simplex_label(k.simplices()[i]) + " has an unknown stabilizer");
    }
  }
  for (std::size_t idx = 0; idx < k.size(); ++idx) {
    const auto& s = k.simplices()[idx];
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<std::size_t> face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      const std::size_t fidx = k.index_of(face);
      auto it = model.inclusions.find({idx, fidx});
      if (it == model.inclusions.end()) {
        return Report::fail("no inclusion from " + simplex_label(s) + " to its face " +
                            simplex_label(face));
      }
      if (it->second >= c.morphism_count()) {
        return Report::fail("inclusion for " + simplex_label(s) + " is an unknown morphism");
      }
      const Morphism& m = c.morphism(it->second);
      if (m.source != model.stabilizers[idx] || m.target != model.stabilizers[fidx]) {
        return Report::fail("inclusion '" + m.label + "' from " + simplex_label(s) + " to " +
                            simplex_label(face) + " has the wrong endpoints");
      }
    }
  }
  return validate_functor(model.coefficients);
}

CellOrbitComplex poset_cell_complex(const PosetChainModel& model) {
  if (Report r = validate_poset_model(model); !r) throw Error(ErrorCode::Category, r.message);
  SimplicialOrbitData data;
  data.complex = model.complex;
  data.category = model.coefficients.category();
  data.stabilizers = model.stabilizers;
  data.face_morphisms = model.inclusions;
  CellOrbitComplex x = from_simplicial(data);
  if (Report r = check_boundary(x); !r) throw Error(ErrorCode::Functoriality, r.message);
  return x;
}

ChainComplex poset_chain_complex(const PosetChainModel& model) {
  return apply_coefficients(poset_cell_complex(model), model.coefficients);
}

FacePoset face_poset_category(const SimplicialComplex& k) {
  auto cat = std::make_shared<FinCategory>();
  FacePoset out;
  for (const auto& s : k.simplices()) cat->add_object(simplex_label(s));
  auto is_face = [](const std::vector<std::size_t>& tau, const std::vector<std::size_t>& sigma) {
    return std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end());
  };
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t b = 0; b < k.size(); ++b) {
      if (a == b || !is_face(k.simplices()[b], k.simplices()[a])) continue;
      out.face_morphisms[{a, b}] = cat->add_morphism(
          simplex_label(k.simplices()[a]) + ">" + simplex_label(k.simplices()[b]), a, b);
    }
  }
  for (const auto& [ab, f] : out.face_morphisms) {
    for (const auto& [bc, g] : out.face_morphisms) {
      if (bc.first != ab.second) continue;
      cat->set_composite(g, f, out.face_morphisms.at({ab.first, bc.second}));
    }
  }
  out.category = std::move(cat);
  return out;
}

PosetChainModel constant_poset_model(const SimplicialComplex& k, const FgAbGroup& a) {
  FacePoset poset = face_poset_category(k);
  PosetChainModel model;
  model.complex = k;
  model.coefficients = CoeffSystem::constant(poset.category, a);
  for (std::size_t i = 0; i < k.size(); ++i) model.stabilizers.push_back(i);
  for (const auto& [key, f] : poset.face_morphisms) {
    if (k.simplices()[key.first].size() == k.simplices()[key.second].size() + 1) {
      model.inclusions.emplace(key, f);
    }
  }
  return model;
}

StrictDomainData strict_domain(const PosetChainModel& model) {
  if (Report r = validate_poset_model(model); !r) throw Error(ErrorCode::Category, r.message);
  const SimplicialComplex& k = model.complex;
  StrictDomainData data;
  data.coefficients = model.coefficients;
  std::map<std::size_t, std::size_t> vertex_position;
  for (std::size_t idx : k.of_dimension(0)) {
    vertex_position[idx] = data.vertices.size();
    data.vertices.push_back(RecipeVertex{simplex_label(k.simplices()[idx]), model.stabilizers[idx]});
  }
  for (std::size_t idx : k.of_dimension(1)) {
    const auto& s = k.simplices()[idx];
    const std::size_t lo = k.index_of({s[0]});
    const std::size_t hi = k.index_of({s[1]});
    data.edges.push_back(StrictDomainData::Edge{vertex_position.at(lo), vertex_position.at(hi),
                                                model.stabilizers[idx],
                                                model.inclusions.at({idx, lo}),
                                                model.inclusions.at({idx, hi})});
  }
  return data;
}

bool ExactnessReport::all_exact() const {
  for (const auto& e : entries)
    if (!e.exact) return false;
  return true;
}

ExactnessReport check_exactness(const ExactSequenceInstance& seq) {
  if (seq.maps.size() + 1 != seq.groups.size() && !(seq.groups.empty() && seq.maps.empty())) {
    throw Error(ErrorCode::DimensionMismatch, "exact sequence needs one map between each pair of groups");
  }
  for (std::size_t i = 0; i < seq.maps.size(); ++i) {
    if (!(seq.maps[i].source() == seq.groups[i]) || !(seq.maps[i].target() == seq.groups[i + 1])) {
      throw Error(ErrorCode::DimensionMismatch,
                  "map " + std::to_string(i) + " does not match its groups");
    }
  }
  for (std::size_t i = 1; i < seq.maps.size(); ++i) {
    if (!compose(seq.maps[i], seq.maps[i - 1]).is_zero()) {
      throw Error(ErrorCode::NonZeroComposite,
                  "composite at position " + std::to_string(i) + " is nonzero");
    }
  }
  ExactnessReport report;
  for (std::size_t i = 1; i < seq.maps.size(); ++i) {
    FgAbGroup h = homology_at(seq.maps[i], seq.maps[i - 1]);
    const bool exact = h.is_trivial();
    report.entries.push_back(ExactnessEntry{i, std::move(h), exact});
  }
  return report;
}

namespace {

AbHom square_map(const Sl2Square& square) {
  if (!(square.to_left.source() == square.to_right.source())) {
    throw Error(ErrorCode::DimensionMismatch, "square maps must start at the same group");
  }
  BlockMapBuilder b({square.to_left.source()},
                    {square.to_left.target(), square.to_right.target()});
  b.add(0, 0, -square.to_left);
  b.add(1, 0, square.to_right);
  return b.build();
}

}  // namespace

FgAbGroup solve_degree0(const Sl2Square& square) { return cokernel(square_map(square)).group; }

ExactSequenceInstance degree0_tail(const Sl2Square& square) {
  const AbHom d = square_map(square);
  const Cokernel q = cokernel(d);
  return ExactSequenceInstance{{d.source(), d.target(), q.group, FgAbGroup::trivial()},
                               {d, q.projection, AbHom::zero(q.group, FgAbGroup::trivial())}};
}

}  // namespace hk
