#include <catch_amalgamated.hpp>

#include <random>

#include "mapcoh/mapmodel.hpp"

using namespace mapcoh;

namespace {

using Sizes = std::vector<std::size_t>;

template <class F>
std::shared_ptr<const FreeGCAlgebra<F>> ext3(const F& f) {
  return std::make_shared<const FreeGCAlgebra<F>>(FreeGCAlgebra<F>::exterior(f, 3));
}

SSetPtr ptr(FiniteSimplicialSet K) { return std::make_shared<FiniteSimplicialSet>(std::move(K)); }

template <class F>
MappingCohomologyResult<F> run(const FiniteSimplicialSet& K, const CoefficientModel<F>& c, const F& f, int N,
                               std::size_t pairs = 20) {
  MappingOptions opt;
  opt.max_degree = N;
  opt.random_pairs = pairs;
  return mapping_cohomology(ptr(K), c, f, opt);
}

// Betti numbers of a free graded-commutative algebra with differential, degrees 0..N.
template <class F>
Sizes cdga_betti(const FreeGCAlgebra<F>& A, int N) {
  const F& f = A.field();
  auto dmat = [&](int n) {
    auto src = A.monomials_of_degree(n), dst = A.monomials_of_degree(n + 1);
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
    LinearMap<F> m(f, src.size(), dst.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      for (const auto& [mono, c] : A.differential(src[j])) m.set(pos.at(mono), j, c);
    return m;
  };
  Sizes out;
  for (int n = 0; n <= N; ++n) {
    const std::size_t dim = A.monomials_of_degree(n).size();
    const std::size_t out_rank = rank_decompose(dmat(n)).rank;
    const std::size_t in_rank = n == 0 ? 0 : rank_decompose(dmat(n - 1)).rank;
    out.push_back(dim - out_rank - in_rank);
  }
  return out;
}

// Hilbert series of A truncated at `top`.
template <class F>
std::vector<long> hilbert(const FreeGCAlgebra<F>& A, int top) {
  std::vector<long> h;
  for (int q = 0; q <= top; ++q) h.push_back(static_cast<long>(A.monomials_of_degree(q).size()));
  return h;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("shuffles are counted and signed correctly", "[mapmodel][shuffle]") {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      auto sh = shuffles(p, q);
      REQUIRE(static_cast<long>(sh.size()) == binom(p + q, p));
      for (const auto& s : sh) {
        REQUIRE(s.mu.size() == static_cast<std::size_t>(p));
        REQUIRE(s.nu.size() == static_cast<std::size_t>(q));
        // sign of the permutation (mu, nu) by counting inversions
        std::vector<int> perm = s.mu;
        perm.insert(perm.end(), s.nu.begin(), s.nu.end());
        long inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
          for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
        REQUIRE(inv % 2 == s.sign_exponent % 2);
      }
    }
}

TEST_CASE("truncation bound", "[mapmodel]") {
  REQUIRE(default_pmax(1, 2, 6) == 16);
  REQUIRE(default_pmax(0, 2, 6) == 15);
  REQUIRE(default_pmax(2, 2, 3) == 11);
  REQUIRE_THROWS_AS(default_pmax(2, 1, 6), HypothesisViolation);
  Rationals q;
  auto coeff = CoefficientModel<Rationals>::tensor(ext3(q), 2);
  REQUIRE_THROWS_AS(run(minimal_sphere(3), coeff, q, 4), HypothesisViolation);
  auto bad = CoefficientModel<Rationals>::tensor(ext3(q), 3);
  REQUIRE_THROWS_AS(run(simplex(0), bad, q, 4), InvalidInput);
}

TEST_CASE("mapping spaces into K(Q,3)", "[mapmodel][tensor]") {
  Rationals q;
  auto coeff = CoefficientModel<Rationals>::tensor(ext3(q), 2);
  auto point = run(simplex(0), coeff, q, 6);
  REQUIRE(point.betti == Sizes{1, 0, 0, 1, 0, 0, 0});
  auto pair = run(minimal_sphere(0), coeff, q, 6);
  REQUIRE(pair.betti == Sizes{1, 0, 0, 2, 0, 0, 1});
  auto loop = run(minimal_sphere(1), coeff, q, 6);
  REQUIRE(loop.betti == Sizes{1, 0, 1, 1, 1, 1, 1});
  REQUIRE(loop.pmax == 16);
  for (const auto* r : {&point, &pair, &loop}) {
    for (const auto& c : r->checks) {
      INFO(c.name << ": " << c.detail);
      REQUIRE(c.pass);
    }
  }
  // homotopy invariance in the source
  REQUIRE(run(polygon(3), coeff, q, 5).betti == Sizes{1, 0, 1, 1, 1, 1});
  REQUIRE(run(simplex(1), coeff, q, 6).betti == point.betti);
}

TEST_CASE("cup products on the mapping space of two points", "[mapmodel][ring]") {
  Rationals q;
  auto coeff = CoefficientModel<Rationals>::tensor(ext3(q), 2);
  auto r = run(minimal_sphere(0), coeff, q, 6);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> deg3;
  for (const auto& e : r.ring)
    if (e.left_degree == 3 && e.right_degree == 3) deg3[{e.left, e.right}] = e.product;
  REQUIRE(deg3.size() == 4);
  // the two degree-3 classes square to zero; their product generates degree 6
  std::size_t nonzero = 0;
  for (const auto& [ij, prod] : deg3) {
    const bool zero = prod == std::vector<std::string>{"0"};
    if (ij.first == ij.second) REQUIRE(zero);
    if (!zero) ++nonzero;
  }
  REQUIRE(nonzero == 2);
  REQUIRE(deg3[{0, 1}] != deg3[{1, 0}]);  // graded commutativity: u v = - v u
}

TEST_CASE("free loop spaces agree with their minimal models", "[mapmodel][oracle]") {
  Rationals q;
  // S^3: Λ(x3) on the circle versus Λ(x3, y2) with zero differential
  {
    FreeGCAlgebra<Rationals> model(q, {{"x", 3}, {"y", 2}});
    REQUIRE(run(minimal_sphere(1), CoefficientModel<Rationals>::tensor(ext3(q), 2), q, 6).betti ==
            cdga_betti(model, 6));
  }
  // S^2: Λ(a2, b3), d b = a^2, versus Λ(a, b, u1, v2) with d v = -2 a u
  {
    auto A = std::make_shared<FreeGCAlgebra<Rationals>>(q, std::vector<FreeGCAlgebra<Rationals>::Generator>{
                                                               {"a", 2}, {"b", 3}});
    A->set_differential(1, {{{2, 0}, 1}});
    FreeGCAlgebra<Rationals> model(q, {{"a", 2}, {"b", 3}, {"u", 1}, {"v", 2}});
    model.set_differential(1, {{{2, 0, 0, 0}, 1}});
    model.set_differential(3, {{{1, 0, 1, 0}, -2}});
    auto r = run(minimal_sphere(1), CoefficientModel<Rationals>::tensor(A, 1), q, 5);
    REQUIRE(r.betti == cdga_betti(model, 5));
    REQUIRE(r.all_pass());
    // two points: Y x Y
    FreeGCAlgebra<Rationals> square(q, {{"a", 2}, {"b", 3}, {"a'", 2}, {"b'", 3}});
    square.set_differential(1, {{{2, 0, 0, 0}, 1}});
    square.set_differential(3, {{{0, 0, 2, 0}, 1}});
    REQUIRE(run(minimal_sphere(0), CoefficientModel<Rationals>::tensor(A, 1), q, 6).betti ==
            cdga_betti(square, 6));
  }
}

TEST_CASE("normalized column dimensions satisfy Dold-Kan", "[mapmodel][oracle][property]") {
  Rationals q;
  auto A = ext3(q);
  auto B = std::make_shared<FreeGCAlgebra<Rationals>>(q, std::vector<FreeGCAlgebra<Rationals>::Generator>{
                                                             {"a", 2}, {"b", 3}});
  B->set_differential(1, {{{2, 0}, 1}});
  const int top = 10;
  for (const auto& K : {minimal_sphere(1), polygon(3), minimal_sphere(0), minimal_sphere(2)})
    for (const auto& alg : {std::shared_ptr<const FreeGCAlgebra<Rationals>>(A),
                            std::shared_ptr<const FreeGCAlgebra<Rationals>>(B)}) {
      INFO(K.name());
      TensorColumns<Rationals> cols(ptr(K), alg, false);
      cols.set_top_degree(top);
      auto h = hilbert(*alg, top + 6);
      // unnormalized dimension of (A^{⊗K_k})^q from the Hilbert series
      auto raw = [&](int k, int qdeg) {
        const std::size_t n = level_simplices(K, k).size();
        std::vector<long> s(qdeg + 1, 0);
        s[0] = 1;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<long> next(qdeg + 1, 0);
          for (int a = 0; a <= qdeg; ++a)
            for (int b = 0; a + b <= qdeg; ++b) next[a + b] += s[a] * h[b];
          s = std::move(next);
        }
        return s[qdeg];
      };
      for (int p = 0; p <= 4; ++p)
        for (int qd = 0; qd - p <= top && qd <= 12; ++qd) {
          long expect = 0;
          for (int k = 0; k <= p; ++k) expect += ((p - k) % 2 ? -1 : 1) * binom(p, k) * raw(k, qd);
          INFO("p=" << p << " q=" << qd);
          REQUIRE(static_cast<long>(cols.dim(p, qd)) == expect);
        }
    }
}

TEST_CASE("simplicial and tensor backends agree", "[mapmodel][simplicial]") {
  Rationals q;
  auto target = ptr(minimal_sphere(3));
  auto simp = CoefficientModel<Rationals>::simplicial(target, 2);
  auto tens = CoefficientModel<Rationals>::tensor(ext3(q), 2);
  for (const auto& K : {simplex(0), minimal_sphere(0)}) {
    auto a = run(K, simp, q, 6, 10);
    auto b = run(K, tens, q, 6, 10);
    REQUIRE(a.betti == b.betti);
    REQUIRE(a.all_pass());
    REQUIRE(a.backend == "simplicial");
  }
  auto bad = CoefficientModel<Rationals>::simplicial(ptr(polygon(3)), 0);
  REQUIRE_THROWS_AS(run(simplex(0), bad, q, 2), InvalidInput);
}

TEST_CASE("total complex invariants on random sources", "[mapmodel][property]") {
  Rationals q;
  PrimeField f5(5);
  auto cq = CoefficientModel<Rationals>::tensor(ext3(q), 2);
  auto cf = CoefficientModel<PrimeField>::tensor(ext3(f5), 2);
  for (const auto& K : {wedge({minimal_sphere(1), minimal_sphere(1)}), polygon(4, true), simplex(2)}) {
    INFO(K.name());
    MappingOptions opt;
    opt.max_degree = 4;
    opt.order_check = true;
    opt.random_pairs = 30;
    opt.seed = 99;
    auto r = mapping_cohomology(ptr(K), cq, q, opt);
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.detail);
      REQUIRE(c.pass);
    }
    auto s = mapping_cohomology(ptr(K), cf, f5, opt);
    REQUIRE(s.model_dependent);
    REQUIRE_FALSE(r.model_dependent);
    REQUIRE(s.all_pass());
    REQUIRE(s.betti == r.betti);  // no torsion in these examples
  }
}

TEST_CASE("automorphisms act on the total complex", "[mapmodel][action]") {
  Rationals q;
  auto coeff = CoefficientModel<Rationals>::tensor(ext3(q), 2);
  auto K = ptr(minimal_sphere(0));
  MappingOptions opt;
  opt.max_degree = 6;
  opt.stabilization = false;
  opt.ring = false;
  auto r = mapping_cohomology(K, coeff, q, opt);
  auto id = SimplicialMap::identity(K);
  SimplicialMap swap(K, K, {{1, {}}, {0, {}}});
  for (int n = 0; n <= 6; ++n) {
    auto I = r.complex->act_on_cohomology(id, n);
    REQUIRE(I.equals(LinearMap<Rationals>::identity(q, I.domain_dim)));
    auto S = r.complex->act_on_cohomology(swap, n);
    REQUIRE(S.after(S).equals(LinearMap<Rationals>::identity(q, S.domain_dim)));
  }
  // on H^6 = Q u v the swap acts by -1; on H^3 it exchanges u and v
  auto S6 = r.complex->act_on_cohomology(swap, 6);
  REQUIRE(S6.entry(0, 0) == -1);
  auto S3 = r.complex->act_on_cohomology(swap, 3);
  REQUIRE(S3.entry(0, 0) + S3.entry(1, 1) == 0);
}
