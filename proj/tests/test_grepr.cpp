#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>

#include "mapcoh/grepr.hpp"
#include "mapcoh/isotypic.hpp"

using namespace mapcoh;

namespace {

using Perm = std::array<int, 3>;

std::vector<Perm> s3_elements() {
  std::vector<Perm> out;
  Perm p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// S_3 acting on {0,1,2}, with (a*b)(x) = a(b(x)).
GroupData s3_group() {
  auto els = s3_elements();
  GroupData G;
  for (const auto& p : els) G.elements.push_back(std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
  G.mult.assign(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      Perm c{els[a][els[b][0]], els[a][els[b][1]], els[a][els[b][2]]};
      G.mult[a][b] = std::find(els.begin(), els.end(), c) - els.begin();
    }
  G.finalize();
  return G;
}

int fixed_points(const Perm& p) { return (p[0] == 0) + (p[1] == 1) + (p[2] == 2); }

CharacterTable<Rationals> s3_table() {
  Rationals q;
  CharacterTable<Rationals> t(q, s3_group());
  auto els = s3_elements();
  t.names = {"trivial", "sign", "standard"};
  t.degrees = {1, 1, 2};
  t.values.assign(3, {});
  for (const auto& cls : t.group.classes) {
    const int fix = fixed_points(els[cls[0]]);
    const long sign = fix == 1 ? -1 : 1;  // transpositions fix one point
    t.values[0].push_back(1);
    t.values[1].push_back(sign);
    t.values[2].push_back(fix - 1);
  }
  t.validate();
  return t;
}

// Permutation matrices of S_3 on Q^3 and the regular representation on Q^6.
std::vector<LinearMap<Rationals>> s3_permutation_rep() {
  Rationals q;
  std::vector<LinearMap<Rationals>> out;
  for (const auto& p : s3_elements()) {
    LinearMap<Rationals> m(q, 3, 3);
    for (int x = 0; x < 3; ++x) m.set(p[x], x, 1);
    out.push_back(m);
  }
  return out;
}

std::vector<LinearMap<Rationals>> regular_rep(const GroupData& G) {
  Rationals q;
  std::vector<LinearMap<Rationals>> out;
  for (std::size_t g = 0; g < G.order(); ++g) {
    LinearMap<Rationals> m(q, G.order(), G.order());
    for (std::size_t h = 0; h < G.order(); ++h) m.set(G.mul(g, h), h, 1);
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("group tables", "[grepr][group]") {
  auto G = s3_group();
  REQUIRE(G.order() == 6);
  REQUIRE(G.classes.size() == 3);
  REQUIRE(G.elements[G.identity] == "012");
  for (std::size_t g = 0; g < 6; ++g) REQUIRE(G.mul(g, G.inverse[g]) == G.identity);
  auto Z4 = GroupData::cyclic(4);
  REQUIRE(Z4.elements == std::vector<std::string>{"e", "g", "g2", "g3"});
  REQUIRE(Z4.inverse[1] == 3);
  GroupData bad = Z4;
  bad.mult[1][1] = 3;
  REQUIRE_THROWS_AS(bad.finalize(), InvalidInput);
  GroupData merged = s3_group();
  merged.classes = {{0, 1}, {2, 3, 4, 5}};
  REQUIRE_THROWS_AS(merged.finalize(), InvalidInput);
}

TEST_CASE("character tables are validated", "[grepr][table]") {
  REQUIRE_NOTHROW(s3_table());
  auto t = s3_table();
  t.values[2][0] = 3;
  REQUIRE_THROWS_AS(t.validate(), InvalidInput);
  auto u = s3_table();
  std::swap(u.values[1], u.values[2]);
  REQUIRE_THROWS_AS(u.validate(), InvalidInput);
  auto w = s3_table();
  w.degrees = {1, 1, 1};
  REQUIRE_THROWS_AS(w.validate(), InvalidInput);
  PrimeField f7(7);
  REQUIRE_NOTHROW(cyclic_character_table(f7, 3, f7.from_int(2)));
  REQUIRE_THROWS_AS(cyclic_character_table(f7, 3, f7.from_int(3)), InvalidInput);  // 3 has order 6 mod 7
  PrimeField f3(3);
  CharacterTable<PrimeField> z3(f3, GroupData::cyclic(3));
  z3.degrees = {1, 1, 1};
  z3.values = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  REQUIRE_THROWS_AS(z3.validate(), MathError);
}

TEST_CASE("central idempotents", "[grepr][idempotent]") {
  auto t = s3_table();
  auto e = central_idempotents(t);
  REQUIRE(e.size() == 3);
  Rationals q;
  // e_trivial = (1/6) Σ g
  for (const auto& x : e[0]) REQUIRE(x == mpq_class(1, 6));
  // the idempotents act as orthogonal projectors on the regular representation
  auto reg = regular_rep(t.group);
  auto sum = LinearMap<Rationals>(q, 6, 6);
  for (std::size_t i = 0; i < 3; ++i) {
    auto P = apply_group_algebra(q, e[i], reg);
    REQUIRE(P.after(P).equals(P));
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) REQUIRE(P.after(apply_group_algebra(q, e[j], reg)).is_zero());
    sum = sum.plus(P);
  }
  REQUIRE(sum.equals(LinearMap<Rationals>::identity(q, 6)));
}

TEST_CASE("isotypic dimensions of permutation representations", "[grepr][isotypic]") {
  auto t = s3_table();
  std::map<int, std::vector<LinearMap<Rationals>>> rho{{0, regular_rep(t.group)}, {1, s3_permutation_rep()}};
  // the regular representation holds n_i copies of each irreducible
  auto rep = isotypic_decompose(t, rho);
  REQUIRE(rep.dims[0] == std::vector<std::size_t>{1, 1, 4});
  REQUIRE(rep.dims[1] == std::vector<std::size_t>{1, 0, 2});
  REQUIRE(rep.complete());
  REQUIRE(rep.schur_divisible());
  REQUIRE(rep.support() == std::set<std::size_t>{0, 1, 2});
  // a non-representation is rejected
  auto broken = rho;
  broken[1][1] = broken[1][2];
  REQUIRE(representation_failure(t.group, broken[1]));
  REQUIRE_THROWS_AS(isotypic_decompose(t, broken), InvariantViolation);
}

TEST_CASE("products of irreducibles and support closure", "[grepr][closure]") {
  auto t = s3_table();
  REQUIRE(rep_product_decompose(t, 1, 1) == std::vector<long>{1, 0, 0});
  REQUIRE(rep_product_decompose(t, 1, 2) == std::vector<long>{0, 0, 1});
  REQUIRE(rep_product_decompose(t, 2, 2) == std::vector<long>{1, 1, 1});
  REQUIRE(support_closure(t, {}) == std::set<std::size_t>{0});
  REQUIRE(support_closure(t, {1}) == std::set<std::size_t>{0, 1});
  REQUIRE(support_closure(t, {2}) == std::set<std::size_t>{0, 1, 2});

  PrimeField f7(7);
  auto z3 = cyclic_character_table(f7, 3, f7.from_int(2));
  REQUIRE(rep_product_decompose(z3, 1, 1) == std::vector<long>{0, 0, 1});  // ω·ω = ω²
  REQUIRE(rep_product_decompose(z3, 1, 2) == std::vector<long>{1, 0, 0});
  REQUIRE(support_closure(z3, {1}) == std::set<std::size_t>{0, 1, 2});
  auto z2 = cyclic_character_table(Rationals{}, 2, mpq_class(-1));
  REQUIRE(rep_product_decompose(z2, 1, 1) == std::vector<long>{1, 0});
}

TEST_CASE("actions on source homology", "[grepr][action]") {
  Rationals q;
  auto refl = reflection_action(4);
  REQUIRE(check_action(refl).ok);
  auto z2 = cyclic_character_table(q, 2, mpq_class(-1));
  auto src = source_isotypic(refl, z2);
  REQUIRE(src.dims[0] == std::vector<std::size_t>{1, 0});
  REQUIRE(src.dims[1] == std::vector<std::size_t>{0, 1});

  PrimeField f7(7);
  auto z3 = cyclic_character_table(f7, 3, f7.from_int(2));
  auto rot = source_isotypic(rotation_action(3), z3);
  REQUIRE(rot.support() == std::set<std::size_t>{0});
  auto wedge3 = source_isotypic(wedge_permutation_action(3), z3);
  REQUIRE(wedge3.dims[1] == std::vector<std::size_t>{1, 1, 1});

  // an action that breaks composition is rejected
  auto bad = rotation_action(3);
  bad.maps[2] = bad.maps[1];
  REQUIRE_FALSE(check_action(bad).ok);
  REQUIRE_THROWS_AS(source_isotypic(bad, z3), InvalidInput);
}

TEST_CASE("group actions transported to mapping spaces", "[grepr][theorem]") {
  Rationals q;
  auto A = std::make_shared<const FreeGCAlgebra<Rationals>>(FreeGCAlgebra<Rationals>::exterior(q, 3));
  auto coeff = CoefficientModel<Rationals>::tensor(A, 2);
  TheoremOptions opt;
  opt.mapping.max_degree = 5;
  opt.mapping.random_pairs = 20;

  auto z2 = cyclic_character_table(q, 2, mpq_class(-1));
  auto refl = theorem_checks(reflection_action(4), z2, coeff, opt);
  REQUIRE(refl.all_pass());
  REQUIRE_FALSE(refl.source_trivial);
  REQUIRE(refl.closure == std::set<std::size_t>{0, 1});
  REQUIRE(refl.mapping.dims[2] == std::vector<std::size_t>{0, 1});
  REQUIRE(refl.mapping.dims[3] == std::vector<std::size_t>{1, 0});

  // Z/3 over Q: no splitting field, but the action is still trivial and e_trivial has full rank
  auto rot = rotation_action(3);
  auto res = mapping_cohomology(rot.space, coeff, q, opt.mapping);
  auto rho = transport_action(*res.complex, rot);
  for (const auto& [n, id] : identity_by_degree(rho)) REQUIRE(id);
}
