#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "hk/ahss.hpp"
#include "hk/error.hpp"
#include "hk/mvcube.hpp"
#include "hk/recipe.hpp"

using namespace hk;

namespace {

const FgAbGroup Z = FgAbGroup::free(1);

CellOrbitComplex point(const CategoryPtr& cat, ObjectId stab) {
  return CellOrbitComplex(cat, {{OrbitCell{"v", stab}}}, {});
}

// Same group, presented through a unimodular change of generators u.
FgAbGroup twisted(const FgAbGroup& a, const IntMatrix& u) {
  return FgAbGroup(a.generators(), u * a.relations());
}

}  // namespace

TEST_CASE("e1_page examples") {
  auto cat = std::make_shared<FinCategory>();
  const ObjectId h = cat->add_object("H");
  const GradedCoeffSystem g(cat, 0, {CoeffSystem::constant(cat, Z), CoeffSystem::constant(cat, FgAbGroup::cyclic(3))});
  const SpectralPage e1 = e1_page(point(cat, h), g);
  CHECK(e1.at(0, 0).to_string() == "Z");
  CHECK(e1.at(0, 1).to_string() == "Z/3");
  CHECK(e1.at(1, 0).is_trivial());
  CHECK(e1.at(0, 2).is_trivial());
  CHECK(e1.at(0, -1).is_trivial());

  const CellOrbitComplex interval = trivial_simplicial(SimplicialComplex::full_simplex(1));
  const GradedCoeffSystem c(trivial_category(), 0, {CoeffSystem::constant(trivial_category(), Z)});
  const SpectralPage p = e1_page(interval, c);
  CHECK(p.at(0, 0).to_string() == "Z^2");
  CHECK(p.at(1, 0).to_string() == "Z");
  CHECK(p.d1.at({1, 0}).matrix() == IntMatrix{{-1}, {1}});

  const GradedCoeffSystem empty(trivial_category(), 0, {});
  const SpectralPage e = e1_page(interval, empty);
  CHECK(e.entries.empty());
  CHECK(e2_page(interval, empty).entries.empty());
}

TEST_CASE("e2_page examples") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const RecipeInstance inst = gen::recipe(rng);
    const CellOrbitComplex x = to_cell_complex(one_skeleton(inst));
    const GradedCoeffSystem g(inst.category(), 0, {inst.coefficients});
    const SpectralPage e1 = e1_page(x, g);
    const SpectralPage e2 = e2_page(x, g);
    CHECK(e2.r == 2);
    if (x.dimension() < 1) continue;
    const AbHom d1 = e1.d1.at({1, 0});
    CHECK(is_isomorphic(e2.at(0, 0), cokernel(d1).group));
    CHECK(is_isomorphic(e2.at(1, 0), kernel(d1).group));
  }

  // connective system: nothing below q = 0
  auto cat = trivial_category();
  const GradedCoeffSystem conn(cat, -2, {CoeffSystem::zero(cat), CoeffSystem::zero(cat),
                                         CoeffSystem::constant(cat, Z), CoeffSystem::constant(cat, Z)});
  CHECK(conn.is_connective());
  const CellOrbitComplex tri = trivial_simplicial(SimplicialComplex::full_simplex(2));
  const SpectralPage p = e2_page(tri, conn);
  for (int q = -2; q < 0; ++q)
    for (int pp = 0; pp <= 2; ++pp) CHECK(p.at(pp, q).is_trivial());

  // contractible, constant Z in q = 0: only E2_{0,0}
  const GradedCoeffSystem z0(cat, 0, {CoeffSystem::constant(cat, Z)});
  const SpectralPage c = e2_page(tri, z0);
  CHECK(c.at(0, 0).to_string() == "Z");
  CHECK(c.at(1, 0).is_trivial());
  CHECK(c.at(2, 0).is_trivial());

  const GradedCoeffSystem not_conn(cat, -1, {CoeffSystem::constant(cat, Z)});
  CHECK_FALSE(not_conn.is_connective());
}

TEST_CASE("edge_h0_check examples") {
  auto cat = std::make_shared<FinCategory>();
  const ObjectId h = cat->add_object("H");
  cat->add_object("unused");
  const FgAbGroup a(2, IntMatrix{{4}, {0}});
  CHECK(edge_h0_check(point(cat, h), CoeffSystem::constant(cat, a)));

  for (std::size_t k = 0; k <= 3; ++k) {
    const PosetChainModel m = constant_poset_model(SimplicialComplex::full_simplex(k), a);
    CHECK(edge_h0_check(poset_cell_complex(m), m.coefficients));
  }

  // broken: the "model" is two disjoint points, so H_0 = A^2 but the colimit is A
  auto one = trivial_category();
  const CellOrbitComplex two(one, {{OrbitCell{"a", 0}, OrbitCell{"b", 0}}}, {});
  CHECK_FALSE(edge_h0_check(two, CoeffSystem::constant(one, a)));

  // an edge with no boundary terms leaves the vertices unglued
  const CellOrbitComplex loose(one, {{{"0", 0}, {"1", 0}}, {{"e", 0}}}, {{}});
  CHECK_FALSE(edge_h0_check(loose, CoeffSystem::constant(one, Z)));

  // a boundary morphism with the wrong endpoints never makes it into a complex
  auto two_obj = std::make_shared<FinCategory>();
  const ObjectId p0 = two_obj->add_object("P");
  const ObjectId q0 = two_obj->add_object("Q");
  const MorphismId pq = two_obj->add_morphism("pq", p0, q0);
  CHECK_THROWS_AS(CellOrbitComplex(two_obj, {{{"0", p0}}, {{"e", p0}}}, {{{0, 0, 1, pq}}}), Error);
}

TEST_CASE("assemble_k_groups examples") {
  auto cat = trivial_category();
  const CellOrbitComplex interval = trivial_simplicial(SimplicialComplex::full_simplex(1));
  const GradedCoeffSystem g(cat, 0, {CoeffSystem::constant(cat, Z)});
  const auto pieces = assemble_k_groups(e2_page(interval, g));
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].n == 0);
  CHECK(pieces[0].filtration0.to_string() == "Z");
  CHECK(pieces[0].filtration1.is_trivial());
  CHECK(pieces[1].n == 1);
  CHECK(pieces[1].filtration0.is_trivial());
  CHECK(pieces[1].filtration1.is_trivial());

  // a circle (two vertices, two edges) has ker d1 = Z: that lands in K_1
  const OneSkeletonData circle{cat, {OrbitCell{"a", 0}, OrbitCell{"b", 0}},
                               {OneSkeletonEdge{"e", 0, 0, 1, cat->identity(0), cat->identity(0)},
                                OneSkeletonEdge{"f", 0, 0, 1, cat->identity(0), cat->identity(0)}}};
  const auto c = assemble_k_groups(e2_page(to_cell_complex(circle), g));
  CHECK(c[1].filtration1.to_string() == "Z");
  CHECK_FALSE(c[1].vanishes());

  const GradedCoeffSystem conn(cat, -3, {CoeffSystem::zero(cat), CoeffSystem::zero(cat),
                                         CoeffSystem::zero(cat), CoeffSystem::constant(cat, Z),
                                         CoeffSystem::constant(cat, Z)});
  for (const auto& a : assemble_k_groups(e2_page(to_cell_complex(circle), conn))) {
    if (a.n <= -1) CHECK(a.vanishes());
  }

  const GradedCoeffSystem zero(cat, 0, {CoeffSystem::zero(cat), CoeffSystem::zero(cat)});
  for (const auto& a : assemble_k_groups(e2_page(interval, zero))) CHECK(a.vanishes());

  const CellOrbitComplex tri = trivial_simplicial(SimplicialComplex::full_simplex(2));
  try {
    assemble_k_groups(e2_page(tri, g));
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK_THROWS_AS(assemble_k_groups(e1_page(interval, g)), Error);
}

TEST_CASE("property: E2 depends only on the isomorphism class of the row") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const RecipeInstance inst = gen::recipe(rng);
    const CategoryPtr& cat = inst.category();
    const CoeffSystem& f = inst.coefficients;
    // Change every presentation by a unimodular matrix and conjugate the maps.
    std::vector<FgAbGroup> values;
    std::vector<IntMatrix> u, u_inv;
    for (const auto& v : f.values()) {
      const std::size_t g = v.generators();
      IntMatrix m = IntMatrix::identity(g), mi = IntMatrix::identity(g);
      for (int s = 0; s < 3 && g > 1; ++s) {
        const auto a = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(g) - 1));
        const auto b = (a + 1) % g;
        const Integer k = gen::uniform(rng, -2, 2);
        m.add_row_multiple(a, b, k);      // m <- E m
        mi.add_col_multiple(b, a, -k);    // mi <- mi E^-1
      }
      values.push_back(twisted(v, m));
      u.push_back(m);
      u_inv.push_back(mi);
    }
    std::map<MorphismId, IntMatrix> mats;
    for (MorphismId m = 0; m < cat->morphism_count(); ++m) {
      if (cat->is_identity(m)) continue;
      const Morphism& mm = cat->morphism(m);
      mats.emplace(m, u[mm.target] * f.map(m).matrix() * u_inv[mm.source]);
    }
    const CoeffSystem f2(cat, values, mats);
    const CellOrbitComplex x = to_cell_complex(one_skeleton(inst));
    const SpectralPage p1 = e2_page(x, GradedCoeffSystem(cat, 0, {f}));
    const SpectralPage p2 = e2_page(x, GradedCoeffSystem(cat, 0, {f2}));
    for (int p = 0; p <= 1; ++p) CHECK(is_isomorphic(p1.at(p, 0), p2.at(p, 0)));
  }
}

TEST_CASE("property: for 1-dimensional connective data the K_0 piece is coker(beta)") {
  gen::Rng rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const RecipeInstance inst = gen::recipe(rng);
    const CategoryPtr& cat = inst.category();
    const GradedCoeffSystem g(cat, 0, {inst.coefficients, CoeffSystem::constant(cat, Z)});
    REQUIRE(g.is_connective());
    const auto pieces = assemble_k_groups(e2_page(to_cell_complex(one_skeleton(inst)), g));
    CHECK(is_isomorphic(pieces[0].filtration0, k0_general(inst)));
    for (const auto& a : pieces)
      if (a.n < 0) CHECK(a.vanishes());
  }
}

TEST_CASE("render_page lays out a grid") {
  auto cat = trivial_category();
  const GradedCoeffSystem g(cat, 0, {CoeffSystem::constant(cat, Z)});
  const std::string s = render_page(e2_page(trivial_simplicial(SimplicialComplex::full_simplex(1)), g));
  CHECK(s.find("E^2 page") != std::string::npos);
  CHECK(s.find("q=0") != std::string::npos);
  CHECK(s.find("p=1") != std::string::npos);
}
