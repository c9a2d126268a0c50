#include <catch_amalgamated.hpp>

#include <random>

#include "mapcoh/sset.hpp"
#include "mapcoh/sset_build.hpp"

using namespace mapcoh;

namespace {

std::vector<MonotoneMap> monotone_maps(int p, int q) {
  std::vector<MonotoneMap> out;
  MonotoneMap m{q, std::vector<int>(p + 1, 0)};
  std::function<void(int, int)> rec = [&](int k, int lo) {
    if (k > p) {
      out.push_back(m);
      return;
    }
    for (int v = lo; v <= q; ++v) {
      m.values[k] = v;
      rec(k + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<FiniteSimplicialSet> sample_sets() {
  return {simplex(0), simplex(1), simplex(2), simplex(3),  minimal_sphere(0), minimal_sphere(1),
          minimal_sphere(2), minimal_sphere(3), polygon(3), polygon(4), moore(1, 3), moore(1, 2)};
}

}  // namespace

TEST_CASE("surjections and degeneracy words are inverse", "[sset]") {
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& w : degeneracy_words(n, k)) {
        auto eta = surjection_of(n, w);
        REQUIRE(eta.valid());
        REQUIRE(eta.surjective());
        REQUIRE(eta.target == n - k);
        REQUIRE(degens_of(eta) == w);
      }
}

TEST_CASE("degeneracy words match iterated codegeneracies", "[sset]") {
  // s_{i1} ... s_{ik} x with i1 > ... > ik corresponds to σ^{ik} ∘ ... ∘ σ^{i1}
  auto K = minimal_sphere(2);
  SimplexRef e{K.at("e"), {}};
  SimplexRef s = degeneracy_of(K, degeneracy_of(K, e, 0), 3);
  REQUIRE(s == SimplexRef{e.cell, {3, 0}});
  SimplexRef t = degeneracy_of(K, degeneracy_of(K, e, 2), 0);  // s_0 s_2 = s_3 s_0
  REQUIRE(t == SimplexRef{e.cell, {3, 0}});
}

TEST_CASE("standard constructions", "[sset]") {
  auto S3 = minimal_sphere(3);
  REQUIRE(S3.cell_counts() == std::vector<std::size_t>{1, 0, 0, 1});
  REQUIRE(simplex(0).size() == 1);
  REQUIRE(simplex(0).dim() == 0);
  auto P = polygon(5);
  REQUIRE(P.cell_counts() == std::vector<std::size_t>{5, 5});
  REQUIRE_THROWS_AS(polygon(2), InvalidInput);
  REQUIRE_THROWS_AS(moore(2, 3), InvalidInput);
  REQUIRE_THROWS_AS(moore(1, 1), InvalidInput);
  auto S1 = minimal_sphere(1);
  REQUIRE(face_of(S1, {S1.at("e"), {}}, 1) == SimplexRef{S1.at("*"), {}});
  for (const auto& K : sample_sets()) {
    INFO(K.name());
    REQUIRE_FALSE(check_simplicial_identities(K));
  }
}

TEST_CASE("level simplices", "[sset]") {
  auto S1 = minimal_sphere(1);
  for (int p = 0; p <= 20; ++p) REQUIRE(level_simplices(S1, p).size() == static_cast<std::size_t>(p + 1));
  REQUIRE(level_simplices(simplex(0), 5).size() == 1);
  REQUIRE(level_simplices(polygon(3), 0).size() == 3);
  // #Δ[1]_p = p + 2 (monotone maps [p] -> [1])
  for (int p = 0; p <= 8; ++p) REQUIRE(level_simplices(simplex(1), p).size() == static_cast<std::size_t>(p + 2));
  auto lv = level_simplices(polygon(4), 3);
  REQUIRE(std::is_sorted(lv.begin(), lv.end()));
}

TEST_CASE("apply_operator is a functor", "[sset][property]") {
  for (const auto& K : sample_sets()) {
    INFO(K.name());
    for (int q = 0; q <= 4; ++q) {
      auto simplices = level_simplices(K, q);
      for (int p = 0; p <= 4; ++p) {
        auto phis = monotone_maps(p, q);
        for (const auto& s : simplices) REQUIRE(apply_operator(K, MonotoneMap::identity(q), s) == s);
        for (int r = 0; r <= 3; ++r) {
          auto psis = monotone_maps(r, p);
          for (const auto& phi : phis)
            for (const auto& psi : psis)
              for (const auto& s : simplices) {
                auto lhs = apply_operator(K, phi.after(psi), s);
                auto rhs = apply_operator(K, psi, apply_operator(K, phi, s));
                REQUIRE(lhs == rhs);
                REQUIRE(K.level(lhs) == r);
              }
        }
      }
    }
  }
}

TEST_CASE("random composable operator triples", "[sset][property]") {
  std::mt19937 rng(99);
  auto K = moore(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> lvl(0, 5);
    int q = lvl(rng), p = lvl(rng), r = lvl(rng);
    auto phis = monotone_maps(p, q);
    auto psis = monotone_maps(r, p);
    auto simplices = level_simplices(K, q);
    const auto& phi = phis[rng() % phis.size()];
    const auto& psi = psis[rng() % psis.size()];
    const auto& s = simplices[rng() % simplices.size()];
    REQUIRE(apply_operator(K, phi.after(psi), s) == apply_operator(K, psi, apply_operator(K, phi, s)));
  }
}

TEST_CASE("simplicial identities on degenerate simplices", "[sset][property]") {
  for (const auto& K : sample_sets()) {
    for (int n = 1; n <= 4; ++n)
      for (const auto& s : level_simplices(K, n)) {
        for (int j = 0; j <= n; ++j) {
          auto sj = degeneracy_of(K, s, j);
          REQUIRE(face_of(K, sj, j) == s);
          REQUIRE(face_of(K, sj, j + 1) == s);
          for (int i = 0; i <= n + 1; ++i) {
            if (i < j) REQUIRE(face_of(K, sj, i) == degeneracy_of(K, face_of(K, s, i), j - 1));
            if (i > j + 1) REQUIRE(face_of(K, sj, i) == degeneracy_of(K, face_of(K, s, i - 1), j));
          }
        }
      }
  }
}

TEST_CASE("invalid cells are rejected", "[sset]") {
  FiniteSimplicialSet K("bad");
  K.add_cell("a", 0);
  REQUIRE_THROWS_AS(K.add_cell("b", 1, {SimplexRef{0, {}}}), InvalidInput);
  REQUIRE_THROWS_AS(K.add_cell("a", 0), InvalidInput);
  REQUIRE_THROWS_AS(K.add_cell("c", 2, {SimplexRef{0, {}}, SimplexRef{0, {}}, SimplexRef{0, {}}}), InvalidInput);
  REQUIRE_THROWS_AS(K.add_cell("d", 2, {SimplexRef{0, {0, 0}}, SimplexRef{0, {0}}, SimplexRef{0, {0}}}), InvalidInput);
  REQUIRE_THROWS_AS(K.set_basepoint(7), InvalidInput);
  // faces violating the simplicial identities
  FiniteSimplicialSet T("twisted");
  auto a = T.add_cell("a", 0), b = T.add_cell("b", 0), c = T.add_cell("c", 0);
  auto ab = T.add_cell("ab", 1, {SimplexRef{b, {}}, SimplexRef{a, {}}});
  auto bc = T.add_cell("bc", 1, {SimplexRef{c, {}}, SimplexRef{b, {}}});
  auto ac = T.add_cell("ca", 1, {SimplexRef{a, {}}, SimplexRef{c, {}}});
  T.add_cell("abc", 2, {SimplexRef{bc, {}}, SimplexRef{ac, {}}, SimplexRef{ab, {}}});
  REQUIRE(check_simplicial_identities(T));
  REQUIRE_THROWS_AS(validate(T), InvalidInput);
}

TEST_CASE("products", "[sset][product]") {
  auto P = product(simplex(1), simplex(1), 2);
  REQUIRE(P.set->cell_counts() == std::vector<std::size_t>{4, 5, 2});
  REQUIRE_FALSE(check_simplicial_identities(*P.set));
  auto Q = product(polygon(3), simplex(0), 2);
  REQUIRE(Q.set->cell_counts() == std::vector<std::size_t>{3, 3});
  auto R = product(simplex(0), moore(1, 3), 3);
  REQUIRE(R.set->cell_counts() == moore(1, 3).cell_counts());
  // nerve of the poset [1]x[2]: chains of comparable pairs
  auto T = product(simplex(1), simplex(2), 3);
  REQUIRE(T.set->cell_counts() == std::vector<std::size_t>{6, 12, 10, 3});
  REQUIRE_FALSE(check_simplicial_identities(*T.set));
  // Oracle: count pairs of level-n simplices with disjoint degeneracy words directly.
  auto S1 = minimal_sphere(1), S2 = minimal_sphere(2);
  auto PS = product(S1, S2, 3);
  for (int n = 0; n <= 3; ++n) {
    std::size_t count = 0;
    for (const auto& x : level_simplices(S1, n))
      for (const auto& y : level_simplices(S2, n)) {
        bool disjoint = true;
        for (int j : x.degens)
          if (std::find(y.degens.begin(), y.degens.end(), j) != y.degens.end()) disjoint = false;
        if (disjoint) ++count;
      }
    REQUIRE(PS.set->count(n) == count);
  }
  REQUIRE_FALSE(check_simplicial_identities(*PS.set));
  // split and normalize are inverse on all level simplices
  for (int n = 0; n <= 3; ++n)
    for (const auto& s : level_simplices(*PS.set, n)) REQUIRE(PS.normalize(PS.split(s)) == s);
}

TEST_CASE("quotients, smash and cones", "[sset]") {
  auto D1 = simplex(1);
  auto Q = quotient(D1, {D1.at("[0]"), D1.at("[1]")});
  REQUIRE(Q.set->cell_counts() == std::vector<std::size_t>{1, 1});
  REQUIRE(Q.set->face(1, 0) == SimplexRef{0, {}});
  REQUIRE_THROWS_AS(quotient(D1, {D1.at("[0,1]")}), InvalidInput);
  auto P3 = polygon(3);
  auto Qb = quotient(P3, {*P3.basepoint()});
  REQUIRE(Qb.set->cell_counts() == P3.cell_counts());

  auto S1 = minimal_sphere(1);
  auto Sm = smash(S1, S1);
  REQUIRE_FALSE(check_simplicial_identities(Sm.set()));
  REQUIRE(Sm.set().cell_counts() == std::vector<std::size_t>{1, 1, 2});

  auto M = moore(1, 3);
  REQUIRE(M.dim() == 2);
  REQUIRE(M.cell_counts() == std::vector<std::size_t>{2, 7, 6});
  REQUIRE(M.pointed());
}

TEST_CASE("simplicial maps", "[sset][map]") {
  auto S1 = std::make_shared<FiniteSimplicialSet>(minimal_sphere(1));
  auto P3 = std::make_shared<FiniteSimplicialSet>(polygon(3));
  std::vector<SimplexRef> wrap;
  for (CellId c = 0; c < P3->size(); ++c)
    wrap.push_back(P3->cell_dim(c) == 0 ? SimplexRef{0, {}} : SimplexRef{1, {}});
  SimplicialMap f(P3, S1, wrap);
  REQUIRE_FALSE(f.check());
  // a rotation composed three times is the identity
  std::vector<SimplexRef> rot;
  for (CellId c = 0; c < 6; ++c) rot.push_back({static_cast<CellId>(c < 3 ? (c + 1) % 3 : 3 + (c - 2) % 3), {}});
  SimplicialMap r(P3, P3, rot);
  REQUIRE_FALSE(r.check());
  REQUIRE(r.then(r).then(r).is_identity());
  // a map that breaks a face relation
  std::vector<SimplexRef> bad = rot;
  bad[3] = {3, {}};
  SimplicialMap b(P3, P3, bad);
  REQUIRE(b.check());
}
