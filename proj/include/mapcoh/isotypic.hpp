/**
 * @file isotypic.hpp
 * @brief Isotypic decomposition of source homology and of mapping-space
 * cohomology under a finite group acting on the source.
 */
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mapcoh/action.hpp"
#include "mapcoh/errors.hpp"
#include "mapcoh/grepr.hpp"
#include "mapcoh/mapmodel.hpp"
#include "mapcoh/sset_build.hpp"
#include "mapcoh/sset_homology.hpp"

namespace mapcoh {

/// f_0 × ... × f_k on a product set whose factors are the sources of the f_i.
inline SimplicialMap product_map(const ProductSet& P, const std::vector<SimplicialMap>& maps) {
  if (maps.size() != P.factors.size()) throw InvalidInput("product_map needs one map per factor");
  std::vector<SimplexRef> images;
  for (CellId c = 0; c < P.set->size(); ++c) {
    std::vector<SimplexRef> tuple;
    for (std::size_t k = 0; k < maps.size(); ++k) tuple.push_back(maps[k].apply(P.components[c][k]));
    images.push_back(P.normalize(tuple));
  }
  return SimplicialMap(P.set, P.set, std::move(images));
}

/// Matrices of every group element on H_n(K) in representative coordinates, by degree.
template <class F>
std::map<int, std::vector<LinearMap<F>>> homology_representation(const SimplicialGroupAction& a, const F& field,
                                                                 bool reduced = false) {
  auto mats = homology_action(a, field, reduced);
  std::map<int, std::vector<LinearMap<F>>> rho;
  for (std::size_t n = 0; n < mats.size(); ++n) rho[static_cast<int>(n)] = std::move(mats[n]);
  return rho;
}

/// Isotypic dimensions of H_*(K; k) under the induced action.
template <class F>
IsotypicReport source_isotypic(const SimplicialGroupAction& a, const CharacterTable<F>& table, bool reduced = false) {
  validate_action(a);
  if (a.group.order() != table.group.order()) throw InvalidInput("character table and action use different groups");
  return isotypic_decompose(table, homology_representation(a, table.field, reduced));
}

/// Matrices of every group element on H^n of the mapping complex, n = 0..N.
template <class F>
std::map<int, std::vector<LinearMap<F>>> transport_action(MappingComplex<F>& M, const SimplicialGroupAction& a) {
  validate_action(a);
  std::map<int, std::vector<LinearMap<F>>> rho;
  for (int n = 0; n <= M.max_degree(); ++n)
    for (const auto& g : a.maps) rho[n].push_back(M.act_on_cohomology(g, n));
  return rho;
}

/// Whether each degree's matrices are all the identity.
template <class F>
std::map<int, bool> identity_by_degree(const std::map<int, std::vector<LinearMap<F>>>& rho) {
  std::map<int, bool> out;
  for (const auto& [n, mats] : rho) {
    bool id = true;
    for (const auto& m : mats) id = id && m.equals(LinearMap<F>::identity(m.field, m.domain_dim));
    out[n] = id;
  }
  return out;
}

/**
 * Diagonal action on H_*(K^{×(n+1)}) for n < powers: the projectors of
 * non-trivial irreducibles must vanish when the action on H_*(K) is trivial.
 * Returns the first failure, if any.
 */
template <class F>
std::optional<std::string> column_homology_trivial(const SimplicialGroupAction& a, const CharacterTable<F>& table,
                                                   int powers) {
  auto e = central_idempotents(table);
  for (int n = 0; n < powers; ++n) {
    std::vector<SSetPtr> factors(n + 1, a.space);
    ProductSet P = product(factors, (n + 1) * a.space->dim());
    SimplicialGroupAction diag;
    diag.group = a.group;
    diag.space = P.set;
    for (const auto& g : a.maps) diag.maps.push_back(product_map(P, std::vector<SimplicialMap>(n + 1, g)));
    auto rho = homology_representation(diag, table.field);
    for (const auto& [deg, mats] : rho)
      for (std::size_t i = 1; i < e.size(); ++i)
        if (!apply_group_algebra(table.field, e[i], mats).is_zero())
          return "component " + table.name(i) + " of H_" + std::to_string(deg) + "(K^" + std::to_string(n + 1) +
                 ") is nonzero";
  }
  return std::nullopt;
}

template <class F>
struct TheoremReport {
  IsotypicReport source;
  IsotypicReport mapping;
  std::set<std::size_t> closure;
  bool source_trivial = false;
  std::map<int, bool> acts_trivially;  // degree -> action matrices are identities
  std::map<int, bool> degree_pass;     // degree -> every applicable check passes
  std::vector<NamedCheck> checks;
  MappingCohomologyResult<F> result;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct TheoremOptions {
  MappingOptions mapping;
  int column_powers = 3;  // K, K^2, K^3 for the column homology check
};

/**
 * Runs the pipeline with a group action on the source and checks:
 * if H_*(K) is trivial as a representation, G acts trivially on the
 * mapping-space cohomology and all of it is trivial-isotypic; in general
 * the support lies in the multiplicative closure of the source support.
 */
template <class F>
TheoremReport<F> theorem_checks(const SimplicialGroupAction& a, const CharacterTable<F>& table,
                                const CoefficientModel<F>& coeff, const TheoremOptions& opt = {}) {
  TheoremReport<F> rep;
  rep.source = source_isotypic(a, table);
  const auto src_support = rep.source.support();
  rep.closure = support_closure(table, src_support);
  rep.source_trivial = src_support == std::set<std::size_t>{0};

  rep.result = mapping_cohomology(a.space, coeff, table.field, opt.mapping);
  rep.checks = rep.result.checks;
  auto rho = transport_action(*rep.result.complex, a);
  rep.acts_trivially = identity_by_degree(rho);
  rep.mapping = isotypic_decompose(table, rho);

  rep.checks.push_back({"idempotents orthogonal and complete", true, std::to_string(table.size()) + " idempotents"});
  rep.checks.push_back({"representation rho(g)rho(h) = rho(gh)", true, "all degrees <= N"});
  rep.checks.push_back({"sum of isotypic dims = betti", rep.mapping.complete() && rep.source.complete(), ""});
  rep.checks.push_back({"Schur divisibility", rep.mapping.schur_divisible() && rep.source.schur_divisible(), ""});

  for (const auto& [n, dims] : rep.mapping.dims) {
    bool ok = true;
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] > 0 && !rep.closure.count(i)) ok = false;
    if (rep.source_trivial) ok = ok && rep.acts_trivially[n] && dims[0] == rep.mapping.totals.at(n);
    rep.degree_pass[n] = ok;
  }
  bool support_ok = true;
  for (std::size_t i : rep.mapping.support()) support_ok = support_ok && rep.closure.count(i);
  std::string closure_names;
  for (std::size_t i : rep.closure) closure_names += (closure_names.empty() ? "" : ", ") + table.name(i);
  rep.checks.push_back({"support within closure of source support", support_ok, "closure {" + closure_names + "}"});

  if (rep.source_trivial) {
    bool identity = true, trivial_mass = true;
    for (const auto& [n, id] : rep.acts_trivially) identity = identity && id;
    for (const auto& [n, dims] : rep.mapping.dims) trivial_mass = trivial_mass && dims[0] == rep.mapping.totals.at(n);
    rep.checks.push_back({"trivial source action acts as identity on cohomology", identity && trivial_mass,
                          identity ? "all degrees" : "nontrivial matrix found"});
    auto col = column_homology_trivial(a, table, opt.column_powers);
    rep.checks.push_back({"non-trivial components of column homology vanish", !col,
                          col ? *col : "K^1.." + std::string("K^") + std::to_string(opt.column_powers)});
  }
  return rep;
}

}  // namespace mapcoh
