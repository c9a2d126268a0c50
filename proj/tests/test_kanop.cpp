#include <catch_amalgamated.hpp>

#include "mapcoh/kanop.hpp"
#include "mapcoh/sset_homology.hpp"

using namespace mapcoh;

namespace {

using Sizes = std::vector<std::size_t>;

SSetPtr ptr(FiniteSimplicialSet K) { return std::make_shared<const FiniteSimplicialSet>(std::move(K)); }

FiniteSimplicialSet discrete(int n) {
  FiniteSimplicialSet X("discrete" + std::to_string(n));
  for (int i = 0; i < n; ++i) X.add_cell("p" + std::to_string(i), 0);
  return X;
}

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<FiniteSimplicialSet> sources() {
  return {simplex(0), simplex(1), simplex(2), minimal_sphere(0), minimal_sphere(1), polygon(3), minimal_sphere(2),
          moore(1, 3)};
}

}  // namespace

TEST_CASE("the Yoneda and constant cosimplicial objects", "[kanop]") {
  auto Y = CosimplicialSSet::yoneda(4);
  REQUIRE_FALSE(Y.check());
  REQUIRE(Y.level(3)->cell_counts() == simplex(3).cell_counts());
  REQUIRE_THROWS_AS(Y.level(5), TruncationError);
  auto C = CosimplicialSSet::constant(ptr(polygon(3)), 3);
  REQUIRE_FALSE(C.check());
  // Z(φ) agrees with the simplex map of φ
  MonotoneMap phi{3, {0, 2, 2}};
  REQUIRE(Y.apply(phi) == simplex_map(Y.level(2), Y.level(3), phi));
  REQUIRE(C.apply(phi).is_identity());
}

TEST_CASE("tensoring with the Yoneda object recovers K", "[kanop][yoneda]") {
  auto Y = CosimplicialSSet::yoneda(3);
  for (const auto& K : sources()) {
    INFO(K.name());
    auto Kp = ptr(K);
    auto T = tensor_under_delta(K, Y, K.dim() + 1);
    REQUIRE_FALSE(check_simplicial_identities(*T.set));
    REQUIRE(is_isomorphism(yoneda_comparison(Kp, T, Y)));
    REQUIRE(T.set->cell_counts() == K.cell_counts());
  }
}

TEST_CASE("tensoring with a constant object gives components times X", "[kanop][constant]") {
  Rationals q;
  auto D1 = ptr(simplex(1));
  auto C = CosimplicialSSet::constant(D1, 3);
  for (const auto& K : sources()) {
    INFO(K.name());
    const std::size_t components = betti(K, q)[0];
    auto T = tensor_under_delta(K, C, 2);
    Sizes expect{2 * components, components};
    REQUIRE(T.set->cell_counts() == expect);
  }
}

TEST_CASE("enumerated maps match independent counts", "[kanop][hom]") {
  // sSet(Δ[n], X) = X_n
  for (const auto& X : {minimal_sphere(1), polygon(3), simplex(2), moore(1, 3)})
    for (int n = 0; n <= 2; ++n) REQUIRE(enumerate_hom(ptr(simplex(n)), ptr(X)).size() == level_simplices(X, n).size());
  // maps into a discrete set are constant on components
  Rationals q;
  for (const auto& K : sources())
    REQUIRE(enumerate_hom(ptr(K), ptr(discrete(3))).size() == power(3, betti(K, q)[0]));
  REQUIRE(enumerate_hom(ptr(minimal_sphere(1)), ptr(minimal_sphere(1))).size() == 2);
}

TEST_CASE("the set-level mapping object is cosimplicial", "[kanop][mapping]") {
  MappingCosimplicialSet M(ptr(minimal_sphere(1)), 2, 4);
  for (int p = 0; p <= 4; ++p) REQUIRE(*M.size(p) == power(2, p + 1));
  REQUIRE_FALSE(M.check(3));
  MappingCosimplicialSet P(ptr(polygon(3)), 2, 3);
  REQUIRE(*P.size(0) == 8);
  REQUIRE_FALSE(P.check(2));
}

TEST_CASE("the adjunction holds on small examples", "[kanop][adjunction]") {
  auto pt = ptr(simplex(0));
  auto C = CosimplicialSSet::constant(pt, 3);
  auto Y = CosimplicialSSet::yoneda(3);
  struct Case {
    SSetPtr K;
    const CosimplicialSSet* Z;
    SSetPtr X;
    std::size_t expect;
  };
  std::vector<Case> cases{
      {pt, &C, ptr(simplex(1)), 2},
      {ptr(minimal_sphere(0)), &C, ptr(discrete(3)), 9},
      {ptr(minimal_sphere(1)), &Y, ptr(minimal_sphere(1)), 2},
      {ptr(polygon(3)), &Y, ptr(minimal_sphere(1)), 0},
      {ptr(simplex(1)), &Y, ptr(polygon(3)), 0},
  };
  // with Z the Yoneda object both sides are sSet(K, X)
  cases[3].expect = enumerate_hom(cases[3].K, cases[3].X).size();
  cases[4].expect = enumerate_hom(cases[4].K, cases[4].X).size();
  for (const auto& c : cases) {
    INFO(c.K->name() << " / " << c.Z->name() << " / " << c.X->name());
    auto r = adjunction_check(c.K, *c.Z, c.X, generator_dimension(*c.K, *c.Z));
    REQUIRE(r.bijection_ok);
    REQUIRE(r.left_count == c.expect);
    REQUIRE(r.right_count == c.expect);
  }
  REQUIRE(cases[3].expect == 8);
  REQUIRE_THROWS_AS(adjunction_check(ptr(minimal_sphere(1)), Y, ptr(minimal_sphere(1)), 0), TruncationError);
  auto short_y = CosimplicialSSet::yoneda(1);
  REQUIRE_THROWS_AS(adjunction_check(ptr(minimal_sphere(2)), short_y, pt, 2), TruncationError);
}

TEST_CASE("the adjunction is natural in K", "[kanop][naturality]") {
  auto Y = CosimplicialSSet::yoneda(2);
  auto K3 = ptr(polygon(3));
  auto S1 = ptr(minimal_sphere(1));
  // polygon(3) -> S^1 collapsing two edges
  SimplicialMap g(K3, S1, {{0, {}}, {0, {}}, {0, {}}, {1, {}}, {0, {0}}, {0, {0}}});
  REQUIRE_FALSE(g.check());
  REQUIRE_FALSE(naturality_check(g, Y, S1, 2));
  auto C = CosimplicialSSet::constant(ptr(simplex(1)), 2);
  REQUIRE_FALSE(naturality_check(g, C, ptr(discrete(2)), 2));
}
