#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "hk/bredon.hpp"
#include "hk/error.hpp"
#include "hk/mvcube.hpp"
#include "hk/recipe.hpp"
#include "oracles.hpp"

using namespace hk;

namespace {

const FgAbGroup Z = FgAbGroup::free(1);

// Face-poset coefficients where the map for sigma > tau multiplies by the
// product of the weights of the dropped vertices; functorial because the
// dropped sets are disjoint along a chain.
CoeffSystem weighted(const FacePoset& poset, const SimplicialComplex& k, const std::vector<long>& w,
                     std::size_t rank) {
  std::map<MorphismId, IntMatrix> mats;
  for (const auto& [key, f] : poset.face_morphisms) {
    const auto& s = k.simplices()[key.first];
    const auto& t = k.simplices()[key.second];
    long factor = 1;
    for (std::size_t v : s)
      if (!std::binary_search(t.begin(), t.end(), v)) factor *= w[v];
    mats.emplace(f, Integer(factor) * IntMatrix::identity(rank));
  }
  return CoeffSystem(poset.category, std::vector<FgAbGroup>(k.size(), FgAbGroup::free(rank)), mats);
}

// Cells of `sub` placed in the face-poset category of the larger `whole`.
CellOrbitComplex embedded(const SimplicialComplex& sub, const SimplicialComplex& whole,
                          const FacePoset& poset) {
  SimplicialOrbitData data;
  data.complex = sub;
  data.category = poset.category;
  for (const auto& s : sub.simplices()) data.stabilizers.push_back(whole.index_of(s));
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto& s = sub.simplices()[i];
    for (std::size_t j = 0; j < s.size() && s.size() > 1; ++j) {
      auto f = s;
      f.erase(f.begin() + static_cast<long>(j));
      data.face_morphisms[{i, sub.index_of(f)}] =
          poset.face_morphisms.at({whole.index_of(s), whole.index_of(f)});
    }
  }
  return from_simplicial(data);
}

void compare_with_oracle(const std::vector<std::vector<std::size_t>>& gens) {
  const SimplicialComplex k(gens);
  const auto simplices = oracle::close_under_faces(gens);
  REQUIRE(simplices.size() == k.size());
  const CellOrbitComplex x = trivial_simplicial(k);
  const CoeffSystem f = CoeffSystem::constant(trivial_category(), Z);
  const ChainComplex c = apply_coefficients(x, f);
  const auto q = oracle::simplicial_betti(simplices, 0);
  std::map<long, std::vector<std::size_t>> fp;
  for (long p : {2L, 3L, 5L, 7L}) fp[p] = oracle::simplicial_betti(simplices, p);
  const auto integral = oracle::simplicial_integral_homology(simplices);
  for (int n = 0; n <= k.dimension(); ++n) {
    const FgAbGroup h = c.homology(n);
    CHECK(h.free_rank() == integral[static_cast<std::size_t>(n)].free_rank);
    CHECK(h.torsion() == integral[static_cast<std::size_t>(n)].torsion);
    CHECK(h.free_rank() == q[static_cast<std::size_t>(n)]);
    for (const auto& [p, dims] : fp) {
      std::size_t expected = h.free_rank();
      for (const auto& t : h.torsion()) expected += (t % p == 0) ? 1 : 0;
      if (n > 0) {
        const FgAbGroup below = c.homology(n - 1);
        for (const auto& t : below.torsion()) expected += (t % p == 0) ? 1 : 0;
      }
      CHECK(dims[static_cast<std::size_t>(n)] == expected);
    }
  }
}

}  // namespace

TEST_CASE("apply_coefficients: single vertex orbit") {
  auto cat = std::make_shared<FinCategory>();
  const ObjectId h = cat->add_object("H");
  const CellOrbitComplex x(cat, {{OrbitCell{"v", h}}}, {});
  const FgAbGroup a(2, IntMatrix{{6}, {0}});
  const ChainComplex c = apply_coefficients(x, CoeffSystem::constant(cat, a));
  CHECK(c.top_degree() == 0);
  CHECK(c.group(0) == a);
  CHECK(is_isomorphic(c.homology(0), a));
  CHECK(c.homology(1).is_trivial());
}

TEST_CASE("apply_coefficients: 1-simplex with constant Z gives (-1, 1)^T") {
  const CellOrbitComplex x = trivial_simplicial(SimplicialComplex::full_simplex(1));
  const ChainComplex c = apply_coefficients(x, CoeffSystem::constant(trivial_category(), Z));
  CHECK(c.differential(1).matrix() == IntMatrix{{-1}, {1}});
  CHECK(c.homology(0).to_string() == "Z");
  CHECK(c.homology(1).is_trivial());
}

TEST_CASE("degenerate edge with equal endpoint maps has zero differential") {
  auto cat = std::make_shared<FinCategory>();
  const ObjectId v = cat->add_object("V"), e = cat->add_object("E");
  const MorphismId i = cat->add_morphism("i", e, v);
  const CoeffSystem f(cat, {FgAbGroup::free(2), Z}, {{i, IntMatrix{{1}, {3}}}});
  OneSkeletonData d{cat, {OrbitCell{"v", v}}, {OneSkeletonEdge{"loop", e, 0, 0, i, i}}};
  CHECK(first_differential(d, f).is_zero());
  const CellOrbitComplex x = to_cell_complex(d);
  CHECK(apply_coefficients(x, f).differential(1).is_zero());
  CHECK(bredon_homology(x, f, 0).to_string() == "Z^2");
  CHECK(bredon_homology(x, f, 1).to_string() == "Z");
}

TEST_CASE("bredon_homology examples") {
  const CellOrbitComplex x = trivial_simplicial(SimplicialComplex::full_simplex(2));
  const CoeffSystem f = CoeffSystem::constant(trivial_category(), Z);
  CHECK(bredon_homology(x, f, 0).to_string() == "Z");
  CHECK(bredon_homology(x, f, 1).is_trivial());
  CHECK(bredon_homology(x, f, 2).is_trivial());
  CHECK(bredon_homology(x, f, -1).is_trivial());
  CHECK(bredon_homology(x, f, 7).is_trivial());
  compare_with_oracle({{0, 1, 2}});

  auto cat = std::make_shared<FinCategory>();
  const ObjectId h = cat->add_object("H");
  const CellOrbitComplex pt(cat, {{OrbitCell{"v", h}}}, {});
  CHECK(bredon_homology(pt, CoeffSystem::constant(cat, FgAbGroup::cyclic(5)), 0).to_string() == "Z/5");
}

TEST_CASE("first_differential examples") {
  auto cat = std::make_shared<FinCategory>();
  const ObjectId a = cat->add_object("A"), b = cat->add_object("B"), e = cat->add_object("E");
  const MorphismId ma = cat->add_morphism("m-", e, a);
  const MorphismId mb = cat->add_morphism("m+", e, b);
  const CoeffSystem f(cat, {Z, Z, FgAbGroup::free(2)}, {{ma, IntMatrix{{1, 2}}}, {mb, IntMatrix{{3, 4}}}});
  const OneSkeletonData d{cat, {OrbitCell{"a", a}, OrbitCell{"b", b}}, {OneSkeletonEdge{"e", e, 0, 1, ma, mb}}};
  REQUIRE(validate_one_skeleton(d).ok);
  const AbHom beta = first_differential(d, f);
  CHECK(beta.matrix() == IntMatrix{{-1, -2}, {3, 4}});
  // det = 2, so the cokernel is Z/2
  CHECK(cokernel(beta).group.to_string() == "Z/2");
  CHECK(bredon_homology(to_cell_complex(d), f, 0).to_string() == "Z/2");

  // j- = j+ with different maps: block is F(m+) - F(m-)
  const MorphismId m2 = cat->add_morphism("m2", e, a);
  const CoeffSystem g(cat, {Z, Z, FgAbGroup::free(2)},
                      {{ma, IntMatrix{{1, 2}}}, {mb, IntMatrix{{3, 4}}}, {m2, IntMatrix{{5, 1}}}});
  const OneSkeletonData loop{cat, {OrbitCell{"a", a}}, {OneSkeletonEdge{"l", e, 0, 0, ma, m2}}};
  CHECK(first_differential(loop, g).matrix() == IntMatrix{{4, -1}});

  // wrong endpoints are rejected
  const OneSkeletonData bad{cat, {OrbitCell{"a", a}, OrbitCell{"b", b}}, {OneSkeletonEdge{"e", e, 1, 0, ma, mb}}};
  CHECK_FALSE(validate_one_skeleton(bad).ok);
  CHECK_THROWS_AS(first_differential(bad, f), Error);
}

TEST_CASE("corrupt boundary data is reported") {
  auto cat = trivial_category();
  const MorphismId id = cat->identity(0);
  // triangle boundary with one sign flipped: d o d != 0
  std::vector<std::vector<OrbitCell>> cells{
      {{"0", 0}, {"1", 0}, {"2", 0}}, {{"01", 0}, {"02", 0}, {"12", 0}}, {{"012", 0}}};
  std::vector<std::vector<BoundaryTerm>> bnd(2);
  bnd[0] = {{0, 1, 1, id}, {0, 0, -1, id}, {1, 2, 1, id}, {1, 0, -1, id}, {2, 2, 1, id}, {2, 1, -1, id}};
  bnd[1] = {{0, 2, 1, id}, {0, 1, 1, id}, {0, 0, 1, id}};
  const CellOrbitComplex x(cat, cells, bnd);
  CHECK_FALSE(check_boundary(x).ok);
  try {
    apply_coefficients(x, CoeffSystem::constant(cat, Z));
    FAIL("expected NonZeroComposite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonZeroComposite);
  }
  // wrong morphism endpoints
  auto c2 = std::make_shared<FinCategory>();
  const ObjectId p = c2->add_object("p"), q = c2->add_object("q");
  const MorphismId f = c2->add_morphism("f", p, q);
  CHECK_THROWS_AS(CellOrbitComplex(c2, {{{"v", p}}, {{"e", p}}}, {{{0, 0, 1, f}}}), Error);
}

TEST_CASE("simplicial complex helpers") {
  const SimplicialComplex k({{2, 0, 1}, {3}});
  CHECK(k.size() == 8);
  CHECK(k.dimension() == 2);
  CHECK(k.of_dimension(0).size() == 4);
  CHECK(k.of_dimension(1).size() == 3);
  CHECK(simplex_label(k.simplices()[k.index_of({0, 1})]) == "[0,1]");
  CHECK_THROWS_AS(k.index_of({0, 3}), Error);
  CHECK(SimplicialComplex().dimension() == -1);
}

TEST_CASE("property: trivial category reproduces simplicial homology") {
  gen::Rng rng(42);
  int checked = 0;
  while (checked < 60) {
    const auto gens = gen::simplicial_generators(rng, 6, 3);
    if (oracle::close_under_faces(gens).size() > 20) continue;
    compare_with_oracle(gens);
    ++checked;
  }
  // the 6-vertex projective plane has H_1 = Z/2
  const std::vector<std::vector<std::size_t>> rp2{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                                  {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  compare_with_oracle(rp2);
  const CellOrbitComplex x = trivial_simplicial(SimplicialComplex(rp2));
  const CoeffSystem f = CoeffSystem::constant(trivial_category(), Z);
  CHECK(bredon_homology(x, f, 1).to_string() == "Z/2");
  CHECK(bredon_homology(x, f, 2).is_trivial());
}

TEST_CASE("property: d o d = 0, beta cokernel equals H_0, restriction to isotropy") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto gens = gen::simplicial_generators(rng, 5, 3);
    const SimplicialComplex whole(gens);
    // a subcomplex: drop some top generators
    std::vector<std::vector<std::size_t>> kept;
    for (const auto& g : gens)
      if (gen::coin(rng, 0.6)) kept.push_back(g);
    if (kept.empty()) kept.push_back(gens.front());
    const SimplicialComplex sub(kept);
    const FacePoset poset = face_poset_category(whole);
    std::vector<long> w;
    for (int v = 0; v < 8; ++v) w.push_back(gen::uniform(rng, -3, 3));
    const std::size_t rank = gen::uniform(rng, 1, 2);
    const CoeffSystem f = weighted(poset, whole, w, rank);
    REQUIRE(validate_functor(f).ok);
    const CellOrbitComplex x = embedded(sub, whole, poset);
    REQUIRE(check_boundary(x).ok);
    const ChainComplex c = apply_coefficients(x, f);  // throws if d o d != 0
    for (int n = 1; n < x.dimension(); ++n) {
      CHECK(compose(c.differential(n), c.differential(n + 1)).is_zero());
    }
    const auto [rx, rf] = restrict_to_isotropy(x, f);
    CHECK(rf.category()->object_count() <= f.category()->object_count());
    for (int n = 0; n <= x.dimension(); ++n) {
      CHECK(is_isomorphic(bredon_homology(x, f, n), bredon_homology(rx, rf, n)));
    }
  }
}

TEST_CASE("property: coker(first_differential) = H_0 of the 1-dimensional complex") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const RecipeInstance inst = gen::recipe(rng);
    const OneSkeletonData d = one_skeleton(inst);
    REQUIRE(validate_one_skeleton(d).ok);
    const FgAbGroup lhs = cokernel(first_differential(d, inst.coefficients)).group;
    const FgAbGroup rhs = bredon_homology(to_cell_complex(d), inst.coefficients, 0);
    CHECK(is_isomorphic(lhs, rhs));
  }
}

TEST_CASE("skeleton truncates") {
  const CellOrbitComplex x = trivial_simplicial(SimplicialComplex::full_simplex(2));
  const CellOrbitComplex s = x.skeleton(1);
  CHECK(s.dimension() == 1);
  const CoeffSystem f = CoeffSystem::constant(trivial_category(), Z);
  CHECK(bredon_homology(s, f, 1).to_string() == "Z");
}
