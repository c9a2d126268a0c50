/**
 * @file acceptance.hpp
 * @brief The end-to-end acceptance suite shared by the test binary and `mapcoh verify`.
 */
#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mapcoh/action.hpp"
#include "mapcoh/grepr.hpp"
#include "mapcoh/isotypic.hpp"
#include "mapcoh/kanop.hpp"
#include "mapcoh/mapmodel.hpp"
#include "mapcoh/sset_build.hpp"
#include "mapcoh/sset_homology.hpp"

namespace mapcoh {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace acceptance_detail {

inline SSetPtr share(FiniteSimplicialSet K) { return std::make_shared<const FiniteSimplicialSet>(std::move(K)); }

template <class V>
std::string list(const V& v) {
  std::ostringstream s;
  s << "(";
  bool first = true;
  for (const auto& x : v) {
    s << (first ? "" : ",") << x;
    first = false;
  }
  s << ")";
  return s.str();
}

template <class F>
std::shared_ptr<const FreeGCAlgebra<F>> lambda_x3(const F& field) {
  return std::make_shared<const FreeGCAlgebra<F>>(FreeGCAlgebra<F>::exterior(field, 3));
}

/// Collects every invariant check from every run, for the suite-wide criterion.
struct InvariantLog {
  std::vector<std::string> failures;
  std::size_t count = 0;
  void add(const std::string& run, const std::vector<NamedCheck>& checks) {
    for (const auto& c : checks) {
      ++count;
      if (!c.pass) failures.push_back(run + ": " + c.name + " (" + c.detail + ")");
    }
  }
  void add(const std::string& run, const std::string& name, bool ok) { add(run, {{name, ok, ""}}); }
};

template <class F>
MappingCohomologyResult<F> run(InvariantLog& log, const std::string& name, SSetPtr K, const CoefficientModel<F>& c,
                               const F& field, int N) {
  MappingOptions opt;
  opt.max_degree = N;
  opt.order_check = true;
  auto r = mapping_cohomology(std::move(K), c, field, opt);
  log.add(name, r.checks);
  return r;
}

template <class F>
void log_report(InvariantLog& log, const std::string& name, const IsotypicReport& rep) {
  log.add(name, "sum of isotypic dims = total", rep.complete());
  log.add(name, "Schur divisibility", rep.schur_divisible());
}

}  // namespace acceptance_detail

/**
 * Runs criteria 1..11 and returns one result per criterion, in order.
 * The invariant suite (8) aggregates the checks of every other run, so it
 * is evaluated last; `progress` then sees the results in order.
 */
inline std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& progress = {}) {
  using namespace acceptance_detail;
  using Clock = std::chrono::steady_clock;
  std::vector<CriterionResult> results;
  InvariantLog log;
  Rationals Q;
  auto cQ = CoefficientModel<Rationals>::tensor(lambda_x3(Q), 2);
  const std::vector<std::size_t> point_betti{1, 0, 0, 1, 0, 0, 0};

  auto guarded = [&](int id, const std::string& title, const std::function<void(CriterionResult&)>& body) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    auto t0 = Clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    results.push_back(r);
  };

  guarded(1, "point source", [&](CriterionResult& r) {
    auto res = run(log, "point", share(simplex(0)), cQ, Q, 6);
    r.pass = res.betti == point_betti;
    r.detail = "betti " + list(res.betti);
  });

  guarded(2, "two-point source (Kunneth)", [&](CriterionResult& r) {
    auto res = run(log, "S0", share(minimal_sphere(0)), cQ, Q, 6);
    const bool betti_ok = res.betti == std::vector<std::size_t>{1, 0, 0, 2, 0, 0, 1};
    bool uv = false, uu = true, vv = true;
    for (const auto& e : res.ring) {
      if (e.left_degree != 3 || e.right_degree != 3) continue;
      const bool zero = std::all_of(e.product.begin(), e.product.end(), [](const std::string& s) { return s == "0"; });
      if (e.left == 0 && e.right == 0) uu = zero;
      if (e.left == 1 && e.right == 1) vv = zero;
      if (e.left == 0 && e.right == 1) uv = !zero;
    }
    r.pass = betti_ok && uv && uu && vv;
    r.detail = "betti " + list(res.betti) + ", u*v " + (uv ? "!= 0" : "= 0") + ", u^2 " + (uu ? "= 0" : "!= 0") +
               ", v^2 " + (vv ? "= 0" : "!= 0");
  });

  guarded(3, "contractible source", [&](CriterionResult& r) {
    auto res = run(log, "Delta1", share(simplex(1)), cQ, Q, 6);
    r.pass = res.betti == point_betti;
    r.detail = "betti " + list(res.betti);
  });

  guarded(4, "free loop space of S^3", [&](CriterionResult& r) {
    auto t0 = Clock::now();
    auto res = run(log, "S1", share(minimal_sphere(1)), cQ, Q, 6);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = res.betti == std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 1} && secs <= 60 && res.pmax == 16;
    r.detail = "betti " + list(res.betti) + ", p_max " + std::to_string(res.pmax);
  });

  guarded(5, "model independence (polygon(3) vs minimal S^1)", [&](CriterionResult& r) {
    auto a = run(log, "polygon3", share(polygon(3)), cQ, Q, 5);
    auto b = run(log, "S1 (N=5)", share(minimal_sphere(1)), cQ, Q, 5);
    r.pass = a.betti == b.betti;
    r.detail = "polygon(3) " + list(a.betti) + ", S^1 " + list(b.betti);
  });

  guarded(6, "backend agreement", [&](CriterionResult& r) {
    auto L = share(minimal_sphere(3));
    auto cS = CoefficientModel<Rationals>::simplicial(L, 2);
    bool ok = true;
    std::string detail;
    for (auto [name, K] : {std::pair{"point", share(simplex(0))}, std::pair{"S0", share(minimal_sphere(0))}}) {
      auto t = run(log, std::string(name) + " tensor", K, cQ, Q, 6);
      auto s = run(log, std::string(name) + " simplicial", K, cS, Q, 6);
      ok = ok && t.betti == s.betti;
      detail += std::string(detail.empty() ? "" : "; ") + name + ": tensor " + list(t.betti) + ", simplicial " +
                list(s.betti);
    }
    r.pass = ok;
    r.detail = detail;
  });

  guarded(7, "adjunction", [&](CriterionResult& r) {
    auto pt = share(simplex(0));
    FiniteSimplicialSet three("three points");
    for (const char* v : {"a", "b", "c"}) three.add_cell(v, 0);
    auto Cpt = CosimplicialSSet::constant(pt, 2);
    auto Y = CosimplicialSSet::yoneda(2);
    auto a = adjunction_check(pt, Cpt, share(simplex(1)), 1);
    auto b = adjunction_check(share(minimal_sphere(0)), Cpt, share(std::move(three)), 1);
    auto c = adjunction_check(share(minimal_sphere(1)), Y, share(minimal_sphere(1)), 1);
    r.pass = a.bijection_ok && b.bijection_ok && c.bijection_ok && a.left_count == 2 && b.left_count == 9 &&
             c.left_count == 2 && a.right_count == 2 && b.right_count == 9 && c.right_count == 2;
    r.detail = "counts (" + std::to_string(a.left_count) + "|" + std::to_string(a.right_count) + ", " +
               std::to_string(b.left_count) + "|" + std::to_string(b.right_count) + ", " +
               std::to_string(c.left_count) + "|" + std::to_string(c.right_count) + ")";
  });

  guarded(9, "trivial action on cohomology (rotation of polygon(3))", [&](CriterionResult& r) {
    auto rot = rotation_action(3);
    // over Q: the action matrices and the trivial projector (1 + g + g^2)/3
    auto res = run(log, "rotation Q", rot.space, cQ, Q, 5);
    auto rho = transport_action(*res.complex, rot);
    bool identity = true, trivial = true;
    for (const auto& [n, id] : identity_by_degree(rho)) identity = identity && id;
    GroupAlgebraElement<Rationals> e1(3, Q.div(Q.one(), Q.from_int(3)));
    for (const auto& [n, mats] : rho) {
      auto rep_failure = representation_failure(rot.group, mats);
      log.add("rotation Q", "representation", !rep_failure);
      const std::size_t d = mats[0].domain_dim;
      if (d > 0) trivial = trivial && rank_decompose(apply_group_algebra(Q, e1, mats)).rank == d;
    }
    // with the full character table over F_7 (which contains cube roots of unity)
    PrimeField F7(7);
    auto table = cyclic_character_table(F7, 3, F7.from_int(2));
    TheoremOptions opt;
    opt.mapping.max_degree = 5;
    auto rep = theorem_checks(rot, table, CoefficientModel<PrimeField>::tensor(lambda_x3(F7), 2), opt);
    log.add("rotation F7", rep.checks);
    log_report<PrimeField>(log, "rotation F7", rep.mapping);
    bool all_trivial = rep.mapping.support() == std::set<std::size_t>{0} || rep.mapping.support().empty();
    r.pass = identity && trivial && rep.all_pass() && all_trivial;
    r.detail = std::string("identity on H^0..5 over Q: ") + (identity ? "yes" : "no") +
               ", trivial mass over Q: " + (trivial ? "all" : "partial") + ", F7 support " +
               list(rep.mapping.support());
  });

  guarded(10, "support closure (reflection, wedge permutation)", [&](CriterionResult& r) {
    TheoremOptions opt;
    opt.mapping.max_degree = 5;
    opt.mapping.order_check = true;
    auto table2 = cyclic_character_table(Q, 2, Q.from_int(-1));
    auto refl = theorem_checks(reflection_action(4), table2, cQ, opt);
    log.add("reflection", refl.checks);
    log_report<Rationals>(log, "reflection", refl.mapping);
    bool sums = refl.mapping.complete();
    for (std::size_t n = 0; n < refl.result.betti.size(); ++n)
      sums = sums && refl.mapping.totals.at(static_cast<int>(n)) == refl.result.betti[n];
    std::set<std::size_t> pm{0, 1};
    bool refl_ok = sums && refl.all_pass() && support_closure(table2, pm) == pm;
    for (std::size_t i : refl.mapping.support()) refl_ok = refl_ok && pm.count(i);

    PrimeField F7(7);
    auto table3 = cyclic_character_table(F7, 3, F7.from_int(2));
    auto wedge = theorem_checks(wedge_permutation_action(3), table3,
                                CoefficientModel<PrimeField>::tensor(lambda_x3(F7), 2), opt);
    log.add("wedge", wedge.checks);
    log_report<PrimeField>(log, "wedge", wedge.mapping);
    bool wedge_ok = wedge.all_pass() && wedge.result.model_dependent;
    for (std::size_t i : wedge.mapping.support()) wedge_ok = wedge_ok && i < 3;

    std::ostringstream d;
    d << "reflection betti " << list(refl.result.betti) << " support " << list(refl.mapping.support())
      << "; wedge betti " << list(wedge.result.betti) << " support " << list(wedge.mapping.support())
      << (wedge.result.model_dependent ? " (model-dependent)" : "");
    r.pass = refl_ok && wedge_ok;
    r.detail = d.str();
  });

  guarded(11, "Moore space smash split", [&](CriterionResult& r) {
    PrimeField F3(3);
    auto M = moore(1, 3);
    auto S = smash(M, M);
    auto H = homology(*S.quotient.set, F3, true);
    std::vector<std::size_t> dims;
    for (int n = 2; n <= 4; ++n) dims.push_back(n < static_cast<int>(H.size()) ? H[n].dim() : 0);
    std::size_t other = 0;
    for (std::size_t n = 0; n < H.size(); ++n)
      if (n < 2 || n > 4) other += H[n].dim();
    auto table = cyclic_character_table(F3, 2, F3.from_int(-1));
    auto rep = source_isotypic(switch_action(S), table, true);
    log_report<PrimeField>(log, "smash switch", rep);
    std::set<std::multiset<int>> split;
    std::string labels;
    for (std::size_t i = 0; i < 2; ++i) {
      std::multiset<int> degrees;
      for (const auto& [n, d] : rep.dims)
        for (std::size_t k = 0; k < d[i]; ++k) degrees.insert(n);
      split.insert(degrees);
      labels += (i ? ", " : "") + table.name(i) + " " + list(degrees);
    }
    const std::set<std::multiset<int>> expected{{2, 3}, {3, 4}};
    auto HM = homology(M, F3);
    auto beta = bockstein(M, F3, 2, HM[2], HM[1]);
    const bool iso = HM[2].dim() == 1 && HM[1].dim() == 1 && rank_decompose(beta).rank == 1;
    r.pass = dims == std::vector<std::size_t>{1, 2, 1} && other == 0 && split == expected && iso;
    r.detail = "dims " + list(dims) + " in degrees (2,3,4); split " + labels + "; Bockstein " +
               (iso ? "iso" : "not iso");
  });

  guarded(8, "algebraic invariant suite", [&](CriterionResult& r) {
    PrimeField F7(7);
    auto idempotents_ok = [](const auto& table) {
      try {
        central_idempotents(table);
        return true;
      } catch (const std::exception&) {
        return false;
      }
    };
    log.add("Z/2 over Q", "idempotents orthogonal and complete",
            idempotents_ok(cyclic_character_table(Q, 2, Q.from_int(-1))));
    log.add("Z/3 over F7", "idempotents orthogonal and complete",
            idempotents_ok(cyclic_character_table(F7, 3, F7.from_int(2))));
    r.pass = log.failures.empty() && log.count > 0;
    r.detail = std::to_string(log.count) + " checks, " + std::to_string(log.failures.size()) + " failed";
    if (!log.failures.empty()) r.detail += ": " + log.failures.front();
  });

  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  if (progress)
    for (const auto& r : results) progress(r);
  return results;
}

}  // namespace mapcoh
