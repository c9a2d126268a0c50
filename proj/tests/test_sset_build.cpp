#include <catch_amalgamated.hpp>

#include "mapcoh/action.hpp"
#include "mapcoh/sset_build.hpp"
#include "mapcoh/sset_homology.hpp"

using namespace mapcoh;

namespace {

using Sizes = std::vector<std::size_t>;

long euler(const FiniteSimplicialSet& K) {
  long chi = 0, sign = 1;
  for (auto c : K.cell_counts()) {
    chi += sign * static_cast<long>(c);
    sign = -sign;
  }
  return chi;
}

std::size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Strictly increasing chains of length n+1 in the poset [a] x [b].
std::size_t chains(int a, int b, int n) {
  std::size_t count = 0;
  std::function<void(int, int, int)> rec = [&](int i, int j, int left) {
    if (left == 0) {
      ++count;
      return;
    }
    for (int x = i; x <= a; ++x)
      for (int y = j; y <= b; ++y)
        if (x != i || y != j) rec(x, y, left - 1);
  };
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j) rec(i, j, n);
  return count;
}

}  // namespace

TEST_CASE("standard simplices have binomial cell counts", "[build]") {
  for (int n = 0; n <= 5; ++n) {
    auto D = simplex(n);
    for (int d = 0; d <= n; ++d) REQUIRE(D.count(d) == binom(n + 1, d + 1));
    REQUIRE(euler(D) == 1);
  }
}

TEST_CASE("minimal spheres", "[build]") {
  Rationals q;
  for (int n = 1; n <= 4; ++n) {
    Sizes expect(n + 1, 0);
    expect[n] = 1;
    REQUIRE(betti(minimal_sphere(n), q, true) == expect);
    REQUIRE(minimal_sphere(n).size() == 2);
  }
}

TEST_CASE("alternating polygons are circles", "[build]") {
  Rationals q;
  for (int m : {4, 6, 8}) {
    auto Z = polygon(m, true);
    REQUIRE_FALSE(check_simplicial_identities(Z));
    REQUIRE(betti(Z, q) == Sizes{1, 1});
  }
  REQUIRE_THROWS_AS(polygon(5, true), InvalidInput);
}

TEST_CASE("products of simplices are nerves of product posets", "[build][product]") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      auto P = product(simplex(a), simplex(b), a + b);
      for (int n = 0; n <= a + b; ++n) REQUIRE(P.set->count(n) == chains(a, b, n));
    }
}

TEST_CASE("products satisfy Kunneth and multiply Euler characteristics", "[build][product][property]") {
  Rationals q;
  std::vector<FiniteSimplicialSet> sets{minimal_sphere(0), minimal_sphere(1), minimal_sphere(2), polygon(3),
                                        simplex(2)};
  for (const auto& K : sets)
    for (const auto& L : sets) {
      INFO(K.name() << " x " << L.name());
      auto P = product(K, L, K.dim() + L.dim());
      REQUIRE_FALSE(check_simplicial_identities(*P.set));
      REQUIRE(euler(*P.set) == euler(K) * euler(L));
      auto bk = betti(K, q), bl = betti(L, q), bp = betti(*P.set, q);
      Sizes expect(K.dim() + L.dim() + 1, 0);
      for (std::size_t i = 0; i < bk.size(); ++i)
        for (std::size_t j = 0; j < bl.size(); ++j) expect[i + j] += bk[i] * bl[j];
      REQUIRE(bp == expect);
    }
  REQUIRE_THROWS_AS(product(std::vector<SSetPtr>{}, 1), InvalidInput);
}

TEST_CASE("wedges add reduced homology", "[build]") {
  Rationals q;
  auto S1 = minimal_sphere(1), S2 = minimal_sphere(2);
  auto W = wedge({S1, S2, S2});
  REQUIRE(betti(W, q, true) == Sizes{0, 1, 2});
  REQUIRE(W.size() == 4);
  REQUIRE_THROWS_AS(wedge({simplex(1)}), InvalidInput);
}

TEST_CASE("smash products of spheres", "[build][smash]") {
  Rationals q;
  auto S1 = minimal_sphere(1), S2 = minimal_sphere(2);
  auto Sm = smash(S1, S2);
  REQUIRE_FALSE(check_simplicial_identities(Sm.set()));
  REQUIRE(betti(Sm.set(), q, true) == Sizes{0, 0, 0, 1});
  REQUIRE_THROWS_AS(smash(simplex(1), S1), InvalidInput);
}

TEST_CASE("the switch on S1 ^ S1 has degree -1", "[build][smash]") {
  Rationals q;
  auto S = smash(minimal_sphere(1), minimal_sphere(1));
  auto a = switch_action(S);
  REQUIRE(check_action(a).ok);
  auto mats = homology_action(a, q);
  REQUIRE(mats[2][1].domain_dim == 1);
  REQUIRE(mats[2][1].entry(0, 0) == -1);
}

TEST_CASE("mapping cones", "[build][cone]") {
  Rationals q;
  auto S1 = std::make_shared<FiniteSimplicialSet>(minimal_sphere(1));
  auto id = SimplicialMap::identity(S1);
  REQUIRE(betti(mapping_cone(id), q) == Sizes{1, 0, 0});
  for (int p : {2, 3, 5}) {
    auto M = moore(1, p);
    REQUIRE_FALSE(check_simplicial_identities(M));
    auto H = integral_homology(M);
    REQUIRE(H.free_rank == Sizes{1, 0, 0});
    REQUIRE(H.torsion[1].size() == 1);
    REQUIRE(H.torsion[1][0] == p);
  }
}

TEST_CASE("collapsing the boundary of the 2-simplex", "[build]") {
  Rationals q;
  auto D2 = simplex(2);
  std::set<CellId> boundary;
  for (int d = 0; d <= 1; ++d)
    for (CellId c : D2.cells_of_dim(d)) boundary.insert(c);
  auto Q = quotient(D2, boundary);
  REQUIRE(betti(*Q.set, q, true) == Sizes{0, 0, 1});
  REQUIRE(Q.cell_image[D2.at("[0,1,2]")] == SimplexRef{1, {}});
}
