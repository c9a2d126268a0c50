#include <catch_amalgamated.hpp>

#include <random>

#include "mapcoh/gcalg.hpp"

using namespace mapcoh;

namespace {

using Alg = FreeGCAlgebra<Rationals>;

// Λ(a, b) with |a| = 2, |b| = 3, d b = a^2.
Alg sphere_model() {
  Alg A(Rationals{}, {{"a", 2}, {"b", 3}});
  A.set_differential(1, {{{2, 0}, 1}});
  return A;
}

// Generating function of the free graded-commutative algebra, truncated.
std::vector<std::size_t> hilbert_series(const std::vector<int>& degrees, int top) {
  std::vector<std::size_t> s(top + 1, 0);
  s[0] = 1;
  for (int d : degrees) {
    std::vector<std::size_t> next(top + 1, 0);
    for (int n = 0; n <= top; ++n)
      for (int e = 0; e * d <= n; ++e) {
        if (d % 2 == 1 && e > 1) break;
        next[n] += s[n - e * d];
      }
    s = std::move(next);
  }
  return s;
}

Alg::Poly random_poly(const Alg& A, std::mt19937& rng, int degree) {
  Alg::Poly p;
  std::uniform_int_distribution<long> val(-3, 3);
  for (const auto& m : A.monomials_of_degree(degree)) {
    long v = val(rng);
    if (v != 0) p[m] = v;
  }
  return p;
}

Alg::Poly add(const Alg::Poly& x, const Alg::Poly& y, long sy = 1) {
  Alg::Poly out = x;
  for (const auto& [m, c] : y) out[m] += sy * c;
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST_CASE("Koszul signs of monomial products", "[gcalg]") {
  Alg A(Rationals{}, {{"x", 1}, {"y", 3}, {"z", 2}});
  auto x = A.gen_monomial(0), y = A.gen_monomial(1), z = A.gen_monomial(2);
  auto xy = A.multiply(x, y), yx = A.multiply(y, x);
  REQUIRE(xy);
  REQUIRE(yx);
  REQUIRE(xy->first == yx->first);
  REQUIRE(xy->second == 1);
  REQUIRE(yx->second == -1);
  REQUIRE_FALSE(A.multiply(x, x));
  auto zz = A.multiply(z, z);
  REQUIRE(zz);
  REQUIRE(zz->first == Monomial{0, 0, 2});
  REQUIRE(A.multiply(z, x)->second == 1);
  REQUIRE(A.to_string({1, 1, 2}) == "x*y*z^2");
  REQUIRE(A.to_string(A.unit()) == "1");
}

TEST_CASE("monomial counts match the Hilbert series", "[gcalg]") {
  std::vector<std::vector<int>> cases{{3}, {2, 3}, {1, 2, 2, 5}, {1, 1, 1}, {4, 6}};
  for (const auto& degs : cases) {
    std::vector<Alg::Generator> gens;
    for (std::size_t i = 0; i < degs.size(); ++i) gens.push_back({"g" + std::to_string(i), degs[i]});
    Alg A(Rationals{}, gens);
    auto hs = hilbert_series(degs, 14);
    for (int n = 0; n <= 14; ++n) {
      auto ms = A.monomials_of_degree(n);
      REQUIRE(ms.size() == hs[n]);
      for (const auto& m : ms) {
        REQUIRE(A.valid(m));
        REQUIRE(A.degree(m) == n);
      }
    }
  }
}

TEST_CASE("differential of the sphere model", "[gcalg]") {
  auto A = sphere_model();
  REQUIRE_FALSE(A.square_failure());
  // d(a b) = a * a^2 (|a| even)
  REQUIRE(A.differential(Monomial{1, 1}) == Alg::Poly{{{3, 0}, 1}});
  REQUIRE(A.differential(Monomial{5, 0}).empty());
  REQUIRE(A.min_generator_degree() == 2);
  REQUIRE(A.generator_index("b") == 1);
  REQUIRE_THROWS_AS(A.generator_index("c"), InvalidInput);
}

TEST_CASE("bad differentials are rejected", "[gcalg]") {
  Alg A(Rationals{}, {{"a", 2}, {"b", 3}});
  REQUIRE_THROWS_AS(A.set_differential(1, {{{1, 0}, 1}}), InvalidInput);  // wrong degree
  REQUIRE_THROWS_AS(A.set_differential(0, {{{0, 2}, 1}}), InvalidInput);  // b^2 is not a monomial
  REQUIRE_THROWS_AS(Alg(Rationals{}, {{"a", 0}}), InvalidInput);
  REQUIRE_THROWS_AS(Alg(Rationals{}, {}), InvalidInput);
  Alg B(Rationals{}, {{"x", 1}, {"y", 1}, {"z", 1}, {"w", 2}});
  B.set_differential(0, {{{0, 0, 0, 1}, 1}});
  REQUIRE_FALSE(B.square_failure());
  B.set_differential(3, {{{1, 1, 1, 0}, 1}});  // now d d x = d w = x y z
  REQUIRE(B.square_failure() == "x");
}

TEST_CASE("the differential is a square-zero graded derivation", "[gcalg][property]") {
  // Λ(a2, b3, u1, v2) with d b = a^2, d v = -2 a u: a model of the free loop space of S^2
  Alg A(Rationals{}, {{"a", 2}, {"b", 3}, {"u", 1}, {"v", 2}});
  A.set_differential(1, {{{2, 0, 0, 0}, 1}});
  A.set_differential(3, {{{1, 0, 1, 0}, -2}});
  REQUIRE_FALSE(A.square_failure());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = deg(rng), q = deg(rng), r = deg(rng);
    auto x = random_poly(A, rng, p), y = random_poly(A, rng, q), z = random_poly(A, rng, r);
    REQUIRE(A.differential(A.differential(x)).empty());
    auto lhs = A.differential(A.multiply(x, y));
    auto rhs = add(A.multiply(A.differential(x), y), A.multiply(x, A.differential(y)), p % 2 ? -1 : 1);
    REQUIRE(lhs == rhs);
    REQUIRE(A.multiply(A.multiply(x, y), z) == A.multiply(x, A.multiply(y, z)));
    auto xy = A.multiply(x, y), yx = A.multiply(y, x);
    REQUIRE(xy == add({}, yx, (p * q) % 2 ? -1 : 1));
  }
}

TEST_CASE("prime field coefficients", "[gcalg]") {
  FreeGCAlgebra<PrimeField> A(PrimeField(2), {{"x", 1}, {"y", 1}});
  auto r = A.multiply(A.gen_monomial(1), A.gen_monomial(0));
  REQUIRE(r);
  REQUIRE(r->second == 1);  // -1 = 1 in F2
  auto E = FreeGCAlgebra<PrimeField>::exterior(PrimeField(7), 3);
  REQUIRE(E.monomials_of_degree(3).size() == 1);
  REQUIRE(E.monomials_of_degree(6).empty());
}
