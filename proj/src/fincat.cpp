#include "hk/fincat.hpp"

#include <algorithm>
#include <sstream>

namespace hk {

ObjectId FinCategory::add_object(std::string label) {
  const ObjectId x = objects_.size();
  morphisms_.push_back(Morphism{"id_" + label, x, x});
  identities_.push_back(morphisms_.size() - 1);
  objects_.push_back(std::move(label));
  return x;
}

MorphismId FinCategory::add_morphism(std::string label, ObjectId source, ObjectId target) {
  morphisms_.push_back(Morphism{std::move(label), source, target});
  return morphisms_.size() - 1;
}

void FinCategory::set_composite(MorphismId g, MorphismId f, MorphismId h) {
  composition_[{g, f}] = h;
}

bool FinCategory::is_identity(MorphismId f) const {
  const Morphism& m = morphisms_.at(f);
  return m.source < identities_.size() && identities_[m.source] == f;
}

std::optional<ObjectId> FinCategory::find_object(const std::string& label) const {
  auto it = std::find(objects_.begin(), objects_.end(), label);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjectId>(it - objects_.begin());
}

std::optional<MorphismId> FinCategory::find_morphism(const std::string& label) const {
  for (MorphismId f = 0; f < morphisms_.size(); ++f) {
    if (morphisms_[f].label == label) return f;
  }
  return std::nullopt;
}

std::optional<MorphismId> FinCategory::compose(MorphismId g, MorphismId f) const {
  if (morphisms_.at(f).target != morphisms_.at(g).source) return std::nullopt;
  if (is_identity(g)) return f;
  if (is_identity(f)) return g;
  auto it = composition_.find({g, f});
  if (it == composition_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string describe(const FinCategory& c, MorphismId f) {
  const Morphism& m = c.morphism(f);
  return "'" + m.label + "': " + c.object_label(m.source) + " -> " + c.object_label(m.target);
}

}  // namespace

Report validate_category(const FinCategory& c) {
  const std::size_t nm = c.morphism_count();
  const std::size_t no = c.object_count();
  for (MorphismId f = 0; f < nm; ++f) {
    const Morphism& m = c.morphism(f);
    if (m.source >= no || m.target >= no) {
      return Report::fail("morphism '" + m.label + "' has an endpoint outside the object list");
    }
  }
  for (MorphismId f = 0; f < nm; ++f) {
    for (MorphismId g = f + 1; g < nm; ++g) {
      if (c.morphism(f).label == c.morphism(g).label) {
        return Report::fail("duplicate morphism label '" + c.morphism(f).label + "'");
      }
    }
  }
  for (const auto& [key, h] : c.composition_table()) {
    const auto [g, f] = key;
    if (g >= nm || f >= nm || h >= nm) {
      return Report::fail("composition table refers to an unknown morphism");
    }
    if (c.is_identity(g) || c.is_identity(f)) {
      if (h != (c.is_identity(g) ? f : g)) {
        return Report::fail("composition table entry for " + describe(c, g) + " o " +
                            describe(c, f) + " violates the unit law");
      }
      continue;
    }
    if (c.morphism(f).target != c.morphism(g).source) {
      return Report::fail("composition table entry " + describe(c, g) + " o " + describe(c, f) +
                          " is for a non-composable pair");
    }
    const Morphism& mh = c.morphism(h);
    if (mh.source != c.morphism(f).source || mh.target != c.morphism(g).target) {
      return Report::fail("composite " + describe(c, g) + " o " + describe(c, f) +
                          " is assigned " + describe(c, h) + " with wrong endpoints");
    }
  }
  for (MorphismId f = 0; f < nm; ++f) {
    for (MorphismId g = 0; g < nm; ++g) {
      if (c.morphism(f).target != c.morphism(g).source) continue;
      if (!c.compose(g, f)) {
        return Report::fail("missing composite " + describe(c, g) + " o " + describe(c, f));
      }
    }
  }
  for (MorphismId f = 0; f < nm; ++f) {
    for (MorphismId g = 0; g < nm; ++g) {
      if (c.morphism(f).target != c.morphism(g).source) continue;
      const MorphismId gf = *c.compose(g, f);
      for (MorphismId h = 0; h < nm; ++h) {
        if (c.morphism(g).target != c.morphism(h).source) continue;
        const MorphismId hg = *c.compose(h, g);
        if (*c.compose(h, gf) != *c.compose(hg, f)) {
          return Report::fail("associativity fails for " + describe(c, h) + ", " +
                              describe(c, g) + ", " + describe(c, f));
        }
      }
    }
  }
  return Report::pass();
}

Subcategory full_subcategory(const FinCategory& c, const std::vector<ObjectId>& objects) {
  auto sub = std::make_shared<FinCategory>();
  Subcategory out;
  out.object_map.assign(c.object_count(), std::nullopt);
  out.morphism_map.assign(c.morphism_count(), std::nullopt);
  std::vector<ObjectId> sorted = objects;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (ObjectId x : sorted) {
    out.object_map[x] = sub->add_object(c.object_label(x));
    out.morphism_map[c.identity(x)] = sub->identity(*out.object_map[x]);
  }
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const Morphism& m = c.morphism(f);
    if (out.object_map[m.source] && out.object_map[m.target]) {
      out.morphism_map[f] = sub->add_morphism(m.label, *out.object_map[m.source],
                                              *out.object_map[m.target]);
    }
  }
  for (const auto& [key, h] : c.composition_table()) {
    const auto [g, f] = key;
    if (out.morphism_map[g] && out.morphism_map[f] && out.morphism_map[h]) {
      sub->set_composite(*out.morphism_map[g], *out.morphism_map[f], *out.morphism_map[h]);
    }
  }
  out.category = std::move(sub);
  return out;
}

Report validate_functor(const CatFunctor& p) {
  const FinCategory& s = *p.source;
  const FinCategory& t = *p.target;
  if (p.object_map.size() != s.object_count() || p.morphism_map.size() != s.morphism_count()) {
    return Report::fail("functor maps do not cover the source category");
  }
  for (ObjectId x : p.object_map) {
    if (x >= t.object_count()) return Report::fail("functor sends an object outside the target");
  }
  for (MorphismId f = 0; f < s.morphism_count(); ++f) {
    const MorphismId pf = p.morphism_map[f];
    if (pf >= t.morphism_count()) {
      return Report::fail("functor sends a morphism outside the target");
    }
    const Morphism& m = s.morphism(f);
    if (t.morphism(pf).source != p.object_map[m.source] ||
        t.morphism(pf).target != p.object_map[m.target]) {
      return Report::fail("functor image of '" + m.label + "' has wrong endpoints");
    }
  }
  for (ObjectId x = 0; x < s.object_count(); ++x) {
    if (p.morphism_map[s.identity(x)] != t.identity(p.object_map[x])) {
      return Report::fail("functor does not preserve the identity of '" + s.object_label(x) + "'");
    }
  }
  for (MorphismId f = 0; f < s.morphism_count(); ++f) {
    for (MorphismId g = 0; g < s.morphism_count(); ++g) {
      auto gf = s.compose(g, f);
      if (!gf) continue;
      auto image = t.compose(p.morphism_map[g], p.morphism_map[f]);
      if (!image || *image != p.morphism_map[*gf]) {
        return Report::fail("functor does not preserve the composite " + describe(s, g) + " o " +
                            describe(s, f));
      }
    }
  }
  return Report::pass();
}

CoeffSystem::CoeffSystem(CategoryPtr category, std::vector<FgAbGroup> values,
                         const std::map<MorphismId, IntMatrix>& matrices,
                         std::set<MorphismId> central)
    : category_(std::move(category)), values_(std::move(values)), central_(std::move(central)) {
  const FinCategory& c = *category_;
  if (values_.size() != c.object_count()) {
    throw Error(ErrorCode::DanglingReference, "coefficient system needs one group per object");
  }
  for (const auto& [f, _] : matrices) {
    if (f >= c.morphism_count()) {
      throw Error(ErrorCode::DanglingReference, "coefficient matrix for an unknown morphism");
    }
  }
  for (MorphismId f : central_) {
    if (f >= c.morphism_count()) {
      throw Error(ErrorCode::DanglingReference, "central flag on an unknown morphism");
    }
  }
  maps_.reserve(c.morphism_count());
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    const Morphism& m = c.morphism(f);
    const FgAbGroup& src = values_[m.source];
    const FgAbGroup& tgt = values_[m.target];
    auto it = matrices.find(f);
    if (it == matrices.end()) {
      if (!c.is_identity(f)) {
        throw Error(ErrorCode::DanglingReference,
                    "no coefficient matrix for morphism '" + m.label + "'");
      }
      maps_.push_back(AbHom::identity(src));
      continue;
    }
    if (it->second.rows() != tgt.generators() || it->second.cols() != src.generators()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "coefficient matrix for '" + m.label + "' has the wrong shape");
    }
    if (!is_well_defined(src, tgt, it->second)) {
      throw Error(ErrorCode::IllDefined,
                  "coefficient matrix for '" + m.label + "' does not respect relations");
    }
    maps_.emplace_back(src, tgt, it->second, AbHom::Unchecked{});
  }
}

CoeffSystem CoeffSystem::constant(CategoryPtr category, const FgAbGroup& a) {
  std::vector<FgAbGroup> values(category->object_count(), a);
  std::map<MorphismId, IntMatrix> matrices;
  for (MorphismId f = 0; f < category->morphism_count(); ++f) {
    matrices.emplace(f, IntMatrix::identity(a.generators()));
  }
  return CoeffSystem(std::move(category), std::move(values), matrices);
}

CoeffSystem CoeffSystem::zero(CategoryPtr category) {
  return constant(std::move(category), FgAbGroup::trivial());
}

bool CoeffSystem::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const FgAbGroup& g) { return g.is_trivial(); });
}

Report validate_functor(const CoeffSystem& f) {
  const FinCategory& c = *f.category();
  for (MorphismId m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m) && !same_map(f.map(m), AbHom::identity(f.value(c.morphism(m).source)))) {
      return Report::fail("identity '" + c.morphism(m).label + "' is not sent to the identity");
    }
  }
  for (const auto& [key, h] : c.composition_table()) {
    const auto [g, m] = key;
    if (!same_map(f.map(h), compose(f.map(g), f.map(m)))) {
      return Report::fail("coefficients disagree on the composite " + describe(c, g) + " o " +
                          describe(c, m) + " = '" + c.morphism(h).label + "'");
    }
  }
  for (MorphismId m : f.central()) {
    const Morphism& mm = c.morphism(m);
    if (mm.source != mm.target) {
      return Report::fail("flagged morphism '" + mm.label + "' is not an endomorphism");
    }
    if (!same_map(f.map(m), AbHom::identity(f.value(mm.source)))) {
      return Report::fail("Condition (Sub) violated: flagged morphism '" + mm.label +
                          "' does not act as the identity");
    }
  }
  return Report::pass();
}

CoeffSystem restrict(const CoeffSystem& f, const std::vector<ObjectId>& objects) {
  const FinCategory& c = *f.category();
  Subcategory sub = full_subcategory(c, objects);
  std::vector<FgAbGroup> values(sub.category->object_count());
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    if (sub.object_map[x]) values[*sub.object_map[x]] = f.value(x);
  }
  std::map<MorphismId, IntMatrix> matrices;
  std::set<MorphismId> central;
  for (MorphismId m = 0; m < c.morphism_count(); ++m) {
    if (!sub.morphism_map[m]) continue;
    matrices.emplace(*sub.morphism_map[m], f.map(m).matrix());
    if (f.central().count(m)) central.insert(*sub.morphism_map[m]);
  }
  return CoeffSystem(sub.category, std::move(values), matrices, std::move(central));
}

CoeffSystem pushdown(const CoeffSystem& f, const CatFunctor& p) {
  if (!(*p.source == *f.category())) {
    throw Error(ErrorCode::Category, "pushdown: functor source is not the coefficient category");
  }
  if (Report r = validate_functor(p); !r) throw Error(ErrorCode::Functoriality, r.message);
  if (Report r = validate_functor(f); !r) {
    const bool sub = r.message.find("Condition (Sub)") != std::string::npos;
    throw Error(sub ? ErrorCode::ConditionSub : ErrorCode::Functoriality, r.message);
  }
  const FinCategory& s = *p.source;
  const FinCategory& t = *p.target;

  std::vector<std::optional<ObjectId>> object_pre(t.object_count());
  for (ObjectId x = 0; x < s.object_count(); ++x) {
    const ObjectId y = p.object_map[x];
    if (!object_pre[y]) {
      object_pre[y] = x;
    } else if (!(f.value(*object_pre[y]) == f.value(x))) {
      throw Error(ErrorCode::ConditionSub, "pushdown: objects '" +
                                               s.object_label(*object_pre[y]) + "' and '" +
                                               s.object_label(x) +
                                               "' have the same image but different values");
    }
  }
  std::vector<std::optional<MorphismId>> morphism_pre(t.morphism_count());
  for (MorphismId m = 0; m < s.morphism_count(); ++m) {
    const MorphismId n = p.morphism_map[m];
    if (!morphism_pre[n]) {
      morphism_pre[n] = m;
    } else if (!same_map(f.map(*morphism_pre[n]), f.map(m))) {
      throw Error(ErrorCode::ConditionSub,
                  "pushdown: morphisms '" + s.morphism(*morphism_pre[n]).label + "' and '" +
                      s.morphism(m).label + "' have the same image but act differently");
    }
  }
  std::vector<FgAbGroup> values;
  for (ObjectId y = 0; y < t.object_count(); ++y) {
    if (!object_pre[y]) {
      throw Error(ErrorCode::Category,
                  "pushdown: projection misses object '" + t.object_label(y) + "'");
    }
    values.push_back(f.value(*object_pre[y]));
  }
  std::map<MorphismId, IntMatrix> matrices;
  for (MorphismId n = 0; n < t.morphism_count(); ++n) {
    if (!morphism_pre[n]) {
      throw Error(ErrorCode::Category,
                  "pushdown: projection misses morphism '" + t.morphism(n).label + "'");
    }
    matrices.emplace(n, f.map(*morphism_pre[n]).matrix());
  }
  return CoeffSystem(p.target, std::move(values), matrices);
}

FgAbGroup colimit(const CoeffSystem& f) {
  if (Report r = validate_functor(f); !r) throw Error(ErrorCode::Functoriality, r.message);
  const FinCategory& c = *f.category();
  std::vector<FgAbGroup> sources;
  std::vector<MorphismId> arrows;
  for (MorphismId m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    arrows.push_back(m);
    sources.push_back(f.value(c.morphism(m).source));
  }
  BlockMapBuilder builder(std::move(sources), f.values());
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Morphism& m = c.morphism(arrows[i]);
    builder.add(m.target, i, f.map(arrows[i]));
    builder.add(m.source, i, -AbHom::identity(f.value(m.source)));
  }
  return cokernel(builder.build()).group;
}

}  // namespace hk
