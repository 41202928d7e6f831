#include "hk/recipe.hpp"

#include <memory>
#include <set>

namespace hk {

Report validate_recipe(const RecipeInstance& inst) {
  if (!inst.category()) return Report::fail("recipe has no coefficient system");
  const FinCategory& c = *inst.category();
  for (const auto& v : inst.vertices) {
    if (v.stabilizer >= c.object_count()) {
      return Report::fail("vertex '" + v.label + "' has an unknown stabilizer");
    }
  }
  for (const auto& e : inst.edges) {
    const std::string name = "edge '" + e.label + "'";
    if (e.v >= inst.vertices.size() || e.w >= inst.vertices.size()) {
      return Report::fail(name + " refers to a missing vertex");
    }
    if (e.v > e.w) return Report::fail(name + " violates the vertex order (needs v <= w)");
    if (e.intersection >= c.object_count()) {
      return Report::fail(name + " has an unknown intersection object");
    }
    if (e.inclusion >= c.morphism_count() || e.conjugation >= c.morphism_count()) {
      return Report::fail(name + " uses an unknown morphism");
    }
    const Morphism& inc = c.morphism(e.inclusion);
    const Morphism& con = c.morphism(e.conjugation);
    if (inc.source != e.intersection || inc.target != inst.vertices[e.v].stabilizer) {
      return Report::fail(name + ": inclusion '" + inc.label + "' has the wrong endpoints");
    }
    if (con.source != e.intersection || con.target != inst.vertices[e.w].stabilizer) {
      return Report::fail(name + ": conjugation '" + con.label + "' has the wrong endpoints");
    }
  }
  return validate_functor(inst.coefficients);
}

namespace {

void require_valid(const RecipeInstance& inst) {
  if (Report r = validate_recipe(inst); !r) throw Error(ErrorCode::Functoriality, r.message);
}

std::vector<FgAbGroup> vertex_values(const RecipeInstance& inst) {
  std::vector<FgAbGroup> out;
  for (const auto& v : inst.vertices) out.push_back(inst.coefficients.value(v.stabilizer));
  return out;
}

std::vector<FgAbGroup> edge_values(const RecipeInstance& inst) {
  std::vector<FgAbGroup> out;
  for (const auto& e : inst.edges) out.push_back(inst.coefficients.value(e.intersection));
  return out;
}

}  // namespace

AbHom build_beta(const RecipeInstance& inst) {
  require_valid(inst);
  const CoeffSystem& f = inst.coefficients;
  BlockMapBuilder builder(edge_values(inst), vertex_values(inst));
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const RecipeEdge& e = inst.edges[i];
    builder.add(e.v, i, -f.map(e.inclusion));
    builder.add(e.w, i, f.map(e.conjugation));
  }
  return builder.build();
}

FgAbGroup k0_general(const RecipeInstance& inst) { return cokernel(build_beta(inst)).group; }

OneSkeletonData one_skeleton(const RecipeInstance& inst) {
  OneSkeletonData data;
  data.category = inst.category();
  for (const auto& v : inst.vertices) data.vertices.push_back(OrbitCell{v.label, v.stabilizer});
  for (const auto& e : inst.edges) {
    data.edges.push_back(OneSkeletonEdge{e.label, e.intersection, e.v, e.w, e.inclusion,
                                         e.conjugation});
  }
  return data;
}

FgAbGroup k0_via_bredon(const RecipeInstance& inst) {
  require_valid(inst);
  return bredon_homology(to_cell_complex(one_skeleton(inst)), inst.coefficients, 0);
}

RecipeInstance strict_domain_instance(const StrictDomainData& data) {
  RecipeInstance inst;
  inst.coefficients = data.coefficients.category()
                          ? data.coefficients
                          : CoeffSystem(std::make_shared<FinCategory>(), {}, {});
  inst.vertices = data.vertices;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : data.edges) {
    if (e.v >= data.vertices.size() || e.w >= data.vertices.size()) {
      throw Error(ErrorCode::DanglingReference, "strict domain edge refers to a missing vertex");
    }
    if (e.v >= e.w) {
      throw Error(ErrorCode::Parse, "strict domain edges need v < w");
    }
    if (!seen.insert({e.v, e.w}).second) {
      throw Error(ErrorCode::Parse, "strict domain has a repeated edge");
    }
    inst.edges.push_back(RecipeEdge{e.v, e.w,
                                    data.vertices[e.v].label + "-" + data.vertices[e.w].label,
                                    e.intersection, e.to_v, e.to_w});
  }
  require_valid(inst);
  return inst;
}

CentralExtInstance::CentralExtInstance(RecipeInstance base, std::size_t m,
                                       const std::vector<long long>& residues)
    : base_(std::move(base)), m_(m) {
  if (m_ == 0) throw Error(ErrorCode::Parse, "central extension index m must be >= 1");
  if (residues.size() != base_.edges.size()) {
    throw Error(ErrorCode::DanglingReference, "need one residue per edge label");
  }
  const long long mm = static_cast<long long>(m_);
  for (long long r : residues) residues_.push_back(static_cast<std::size_t>(((r % mm) + mm) % mm));
}

AbHom build_gamma(const CentralExtInstance& inst) { return build_beta(inst.base()); }

AbHom build_delta_epsilon(const CentralExtInstance& inst) {
  const RecipeInstance& base = inst.base();
  require_valid(base);
  const CoeffSystem& f = base.coefficients;
  const std::size_t m = inst.m();

  std::vector<FgAbGroup> sources, targets;
  for (const auto& a : vertex_values(base)) {
    sources.push_back(power(a, m));
    targets.push_back(power(a, m));
  }
  for (const auto& b : edge_values(base)) sources.push_back(power(b, m));

  BlockMapBuilder builder(std::move(sources), std::move(targets));
  const std::size_t nv = base.vertices.size();
  for (std::size_t v = 0; v < nv; ++v) {
    const FgAbGroup& a = f.value(base.vertices[v].stabilizer);
    builder.add(v, v, cyclic_shift(a, m) - AbHom::identity(power(a, m)));
  }
  for (std::size_t i = 0; i < base.edges.size(); ++i) {
    const RecipeEdge& e = base.edges[i];
    builder.add(e.v, nv + i, power(-f.map(e.inclusion), m));
    const FgAbGroup& aw = f.value(base.vertices[e.w].stabilizer);
    builder.add(e.w, nv + i,
                compose(iterate(cyclic_shift(aw, m), inst.residues()[i]),
                        power(f.map(e.conjugation), m)));
  }
  return builder.build();
}

CentralK0 k0_central(const CentralExtInstance& inst) {
  CentralK0 out{cokernel(build_gamma(inst)).group, cokernel(build_delta_epsilon(inst)).group};
  if (!is_isomorphic(out.via_gamma, out.via_delta_epsilon)) {
    throw Error(ErrorCode::CrossCheck, "coker(gamma) = " + out.via_gamma.to_string() +
                                           " but coker(delta + epsilon) = " +
                                           out.via_delta_epsilon.to_string());
  }
  return out;
}

namespace {

const IntMatrix& require_entry(const std::map<std::pair<std::size_t, std::size_t>, IntMatrix>& m,
                               std::pair<std::size_t, std::size_t> key, const char* what) {
  auto it = m.find(key);
  if (it == m.end()) {
    throw Error(ErrorCode::DanglingReference, std::string("missing ") + what + " for edge (" +
                                                  std::to_string(key.first) + "," +
                                                  std::to_string(key.second) + ")");
  }
  return it->second;
}

}  // namespace

RecipeInstance sl_instance(const SlCoefficientData& data) {
  const std::size_t n = data.n;
  if (n == 0) throw Error(ErrorCode::Parse, "sl_instance needs n >= 1");
  if (data.vertex_groups.size() != n) {
    throw Error(ErrorCode::DanglingReference, "sl_instance needs one group per vertex U_l");
  }
  auto cat = std::make_shared<FinCategory>();
  std::vector<FgAbGroup> values;
  std::map<MorphismId, IntMatrix> matrices;
  StrictDomainData domain;
  for (std::size_t l = 0; l < n; ++l) {
    const std::string name = "U_" + std::to_string(l);
    cat->add_object(name);
    values.push_back(data.vertex_groups[l]);
    domain.vertices.push_back(RecipeVertex{"v" + std::to_string(l), l});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto git = data.edge_groups.find({i, j});
      if (git == data.edge_groups.end()) {
        throw Error(ErrorCode::DanglingReference, "missing group for U_" + std::to_string(i) +
                                                      " meet U_" + std::to_string(j));
      }
      const std::string suffix = std::to_string(i) + "," + std::to_string(j);
      const ObjectId x = cat->add_object("U_" + suffix);
      values.push_back(git->second);
      const MorphismId lo = cat->add_morphism("f_" + suffix + "_to_" + std::to_string(i), x, i);
      const MorphismId hi = cat->add_morphism("f_" + suffix + "_to_" + std::to_string(j), x, j);
      matrices.emplace(lo, require_entry(data.to_lower, {i, j}, "lower inclusion"));
      matrices.emplace(hi, require_entry(data.to_upper, {i, j}, "upper inclusion"));
      domain.edges.push_back(StrictDomainData::Edge{i, j, x, lo, hi});
    }
  }
  domain.coefficients = CoeffSystem(cat, std::move(values), matrices);
  return strict_domain_instance(domain);
}

RecipeInstance pgl_instance(const PglCoefficientData& data) {
  if (data.n < 2) throw Error(ErrorCode::Parse, "pgl_instance needs n >= 2");
  const std::size_t k = data.n / 2;
  if (data.u0_cap_ul.size() != k || data.c0.size() != k || data.cl.size() != k) {
    throw Error(ErrorCode::DanglingReference,
                "pgl_instance needs floor(n/2) = " + std::to_string(k) +
                    " groups and maps for U_0 meet U_l");
  }
  auto cat = std::make_shared<FinCategory>();
  std::vector<FgAbGroup> values;
  std::map<MorphismId, IntMatrix> matrices;
  const ObjectId u0 = cat->add_object("U_0");
  const ObjectId hi = cat->add_object("HI");
  const ObjectId iw = cat->add_object("I");
  values = {data.u0, data.hi, data.iwahori};
  const MorphismId ih = cat->add_morphism("i_H", iw, hi);
  const MorphismId i0 = cat->add_morphism("i_0", iw, u0);
  matrices.emplace(ih, data.i_h);
  matrices.emplace(i0, data.i_0);

  RecipeInstance inst;
  inst.vertices = {RecipeVertex{"v0", u0}, RecipeVertex{"b", hi}};
  inst.edges.push_back(RecipeEdge{0, 1, "e", iw, i0, ih});
  for (std::size_t l = 1; l <= k; ++l) {
    const std::string s = std::to_string(l);
    const ObjectId x = cat->add_object("U_0,U_" + s);
    values.push_back(data.u0_cap_ul[l - 1]);
    const MorphismId inc = cat->add_morphism("c_0^" + s, x, u0);
    const MorphismId con = cat->add_morphism("c_" + s, x, u0);
    matrices.emplace(inc, data.c0[l - 1]);
    matrices.emplace(con, data.cl[l - 1]);
    inst.edges.push_back(RecipeEdge{0, 0, "h^" + s, x, inc, con});
  }
  inst.coefficients = CoeffSystem(cat, std::move(values), matrices);
  require_valid(inst);
  return inst;
}

GlInstance gl_instance(const GlCoefficientData& data) {
  if (data.n < 2) throw Error(ErrorCode::Parse, "gl_instance needs n >= 2");
  const std::size_t k = data.n / 2;
  if (data.u0_cap_ul.size() != k || data.c0.size() != k || data.cl.size() != k) {
    throw Error(ErrorCode::DanglingReference,
                "gl_instance needs floor(n/2) = " + std::to_string(k) +
                    " groups and maps for U_0 meet U_l");
  }
  auto cat = std::make_shared<FinCategory>();
  std::vector<FgAbGroup> values;
  std::map<MorphismId, IntMatrix> matrices;
  const ObjectId u0 = cat->add_object("U_0");
  const ObjectId iw = cat->add_object("I");
  values = {data.u0, data.iwahori};
  const MorphismId i0 = cat->add_morphism("i_0", iw, u0);
  matrices.emplace(i0, data.i_0);

  // The barycenter's stabilizer meets M~ in the Iwahori, so that vertex and
  // its edge are both labelled by I and the conjugation by e is the identity.
  RecipeInstance base;
  base.vertices = {RecipeVertex{"v0", u0}, RecipeVertex{"b", iw}};
  base.edges.push_back(RecipeEdge{0, 1, "e", iw, i0, cat->identity(iw)});
  std::vector<long long> residues{0};
  std::vector<ObjectId> caps;
  std::vector<MorphismId> incs, cons;
  for (std::size_t l = 1; l <= k; ++l) {
    const std::string s = std::to_string(l);
    const ObjectId x = cat->add_object("U_0,U_" + s);
    values.push_back(data.u0_cap_ul[l - 1]);
    const MorphismId inc = cat->add_morphism("c_0^" + s, x, u0);
    const MorphismId con = cat->add_morphism("c_" + s, x, u0);
    matrices.emplace(inc, data.c0[l - 1]);
    matrices.emplace(con, data.cl[l - 1]);
    base.edges.push_back(RecipeEdge{0, 0, "h^" + s, x, inc, con});
    residues.push_back(static_cast<long long>(l));
    caps.push_back(x);
    incs.push_back(inc);
    cons.push_back(con);
  }
  base.coefficients = CoeffSystem(cat, std::move(values), matrices);
  require_valid(base);

  std::vector<FgAbGroup> sources;
  for (ObjectId x : caps) sources.push_back(base.coefficients.value(x));
  BlockMapBuilder reduced(std::move(sources), {base.coefficients.value(u0)});
  for (std::size_t i = 0; i < caps.size(); ++i) {
    reduced.add(0, i, base.coefficients.map(cons[i]) - base.coefficients.map(incs[i]));
  }
  return GlInstance{CentralExtInstance(std::move(base), data.n, residues), reduced.build()};
}

GlK0 k0_gl(const GlInstance& gl) {
  const CentralK0 central = k0_central(gl.instance);
  GlK0 out{cokernel(gl.reduced).group, central.via_gamma, central.via_delta_epsilon};
  if (!is_isomorphic(out.reduced, out.full)) {
    throw Error(ErrorCode::CrossCheck, "coker of the reduced map is " + out.reduced.to_string() +
                                           " but coker(gamma) is " + out.full.to_string());
  }
  return out;
}

}  // namespace hk
