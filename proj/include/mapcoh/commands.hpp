/**
 * @file commands.hpp
 * @brief The batch commands behind the mapcoh tool, producing JSON reports.
 *
 * Exit status: 0 all checks pass, 1 a check failed, 2 invalid input,
 * 3 hypothesis violation, 4 resource or truncation limit.
 */
#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "mapcoh/acceptance.hpp"
#include "mapcoh/io.hpp"
#include "mapcoh/isotypic.hpp"
#include "mapcoh/kanop.hpp"
#include "mapcoh/mapmodel.hpp"
#include "mapcoh/sset_homology.hpp"

namespace mapcoh::cli {

using io::json;

enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, hypothesis = 3, resource = 4 };

struct RunConfig {
  std::string command;
  std::string source;
  std::string coeff;
  std::optional<std::string> field;
  int max_degree = 6;
  std::optional<int> pmax;  // empty = auto
  std::optional<std::string> backend;
  std::string group;
  bool pointed = false;
  bool reduced = false;
  std::string output;
  std::string cosimplicial = "yoneda";
  std::string target;
  int trunc = -1;  // -1: smallest sufficient truncation
  std::string workdir;

  std::string path(const std::string& p) const {
    if (p.empty() || p[0] == '/' || workdir.empty()) return p;
    return workdir + "/" + p;
  }
};

struct Outcome {
  json report;
  int status = ok;
};

inline json checks_json(const std::vector<NamedCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

inline bool all_pass(const std::vector<NamedCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline json params_json(const RunConfig& cfg) {
  json p;
  p["command"] = cfg.command;
  if (!cfg.source.empty()) p["source"] = cfg.source;
  if (!cfg.coeff.empty()) p["coeff"] = cfg.coeff;
  if (cfg.field) p["field"] = *cfg.field;
  return p;
}

inline Outcome run_homology(const RunConfig& cfg) {
  auto K = io::load_sset(cfg.path(cfg.source));
  const FieldSpec spec = FieldSpec::parse(cfg.field.value_or("Q"));
  return visit_field(spec, [&](const auto& field) {
    Outcome out;
    json params = params_json(cfg);
    params["field"] = spec.name();
    params["reduced"] = cfg.reduced;
    auto C = chain_complex(K, field, cfg.reduced);
    auto H = homology(K, field, cfg.reduced);
    std::vector<NamedCheck> checks;
    auto sq = C.first_square_failure();
    checks.push_back({"d^2 = 0", !sq, sq ? "fails in degree " + std::to_string(*sq) : "all degrees"});
    json betti = json::array();
    for (const auto& h : H) betti.push_back(h.dim());
    auto Z = integral_homology(K);
    json torsion = json::array();
    for (const auto& t : Z.torsion) {
      json row = json::array();
      for (const auto& d : t) row.push_back(d.get_str());
      torsion.push_back(row);
    }
    out.report["params"] = params;
    out.report["betti"] = betti;
    out.report["integral"] = json{{"free_rank", Z.free_rank}, {"torsion", torsion}};
    out.report["checks"] = checks_json(checks);
    out.status = all_pass(checks) ? ok : check_failed;
    return out;
  });
}

/// Resolves the coefficient field: --field wins over the coefficient file, which wins over Q.
inline FieldSpec coefficient_field(const RunConfig& cfg, const io::CoefficientSpec& spec) {
  if (cfg.field) return FieldSpec::parse(*cfg.field);
  return spec.field.value_or(FieldSpec::rationals());
}

template <class F>
json result_json(const MappingCohomologyResult<F>& r, bool with_ring) {
  json out;
  json betti = json::array();
  for (auto b : r.betti) betti.push_back(b);
  out["betti"] = betti;
  if (with_ring) {
    json ring = json::array();
    for (const auto& e : r.ring)
      ring.push_back(json{{"left", {e.left_degree, e.left}}, {"right", {e.right_degree, e.right}}, {"product", e.product}});
    out["ring"] = ring;
  }
  json stab;
  stab["pmax"] = r.pmax;
  stab["pmax_policy"] = r.pmax_auto ? "auto" : "explicit";
  if (r.pmax_auto) stab["justification"] = pmax_justification();
  if (r.stabilized_betti) {
    stab["compared_pmax"] = r.pmax + 2;
    json sb = json::array();
    for (auto b : *r.stabilized_betti) sb.push_back(b);
    stab["betti_at_compared_pmax"] = sb;
  }
  stab["stable"] = r.stable();
  out["stabilization"] = stab;
  return out;
}

inline Outcome run_mapspace(const RunConfig& cfg, bool with_ring) {
  auto K = std::make_shared<const FiniteSimplicialSet>(io::load_sset(cfg.path(cfg.source)));
  auto spec = io::load_coefficients(cfg.path(cfg.coeff));
  if (cfg.backend && *cfg.backend != spec.backend)
    throw InvalidInput("backend override '" + *cfg.backend + "' does not match the coefficient file backend '" +
                       spec.backend + "'");
  const FieldSpec fs = coefficient_field(cfg, spec);
  return visit_field(fs, [&](const auto& field) {
    auto coeff = spec.build(field);
    MappingOptions opt;
    opt.max_degree = cfg.max_degree;
    opt.pmax = cfg.pmax;
    opt.ring = with_ring;
    auto r = mapping_cohomology(K, coeff, field, opt);
    Outcome out;
    json params = params_json(cfg);
    params["field"] = fs.name();
    params["backend"] = r.backend;
    params["connectivity"] = coeff.connectivity;
    params["max_degree"] = cfg.max_degree;
    params["pmax"] = r.pmax;
    params["model_dependent"] = r.model_dependent;
    out.report["params"] = params;
    out.report.update(result_json(r, with_ring));
    out.report["checks"] = checks_json(r.checks);
    out.status = r.all_pass() ? ok : check_failed;
    return out;
  });
}

inline Outcome run_isotypic(const RunConfig& cfg) {
  if (cfg.group.empty()) throw InvalidInput("isotypic needs --group");
  auto K = std::make_shared<const FiniteSimplicialSet>(io::load_sset(cfg.path(cfg.source)));
  auto spec = io::load_coefficients(cfg.path(cfg.coeff));
  auto gspec = io::load_group(cfg.path(cfg.group));
  const FieldSpec fs = coefficient_field(cfg, spec);
  return visit_field(fs, [&](const auto& field) {
    auto coeff = spec.build(field);
    auto table = gspec.table(field);
    auto action = gspec.action_on(K, cfg.pointed);
    TheoremOptions opt;
    opt.mapping.max_degree = cfg.max_degree;
    opt.mapping.pmax = cfg.pmax;
    opt.mapping.ring = false;
    auto rep = theorem_checks(action, table, coeff, opt);
    Outcome out;
    json params = params_json(cfg);
    params["field"] = fs.name();
    params["group"] = cfg.group;
    params["group_order"] = table.group.order();
    params["max_degree"] = cfg.max_degree;
    params["pmax"] = rep.result.pmax;
    params["model_dependent"] = rep.result.model_dependent;
    out.report["params"] = params;
    out.report.update(result_json(rep.result, false));
    json iso;
    for (const auto& [n, dims] : rep.mapping.dims) {
      json d;
      for (std::size_t i = 0; i < dims.size(); ++i) d[table.name(i)] = dims[i];
      iso[std::to_string(n)] = d;
    }
    out.report["isotypic"] = iso;
    json src;
    for (const auto& [n, dims] : rep.source.dims) {
      json d;
      for (std::size_t i = 0; i < dims.size(); ++i) d[table.name(i)] = dims[i];
      src[std::to_string(n)] = d;
    }
    out.report["source_isotypic"] = src;
    json closure = json::array();
    for (std::size_t i : rep.closure) closure.push_back(table.name(i));
    out.report["support_closure"] = closure;
    json per_degree;
    for (const auto& [n, pass] : rep.degree_pass) per_degree[std::to_string(n)] = pass;
    out.report["theorem_checks"] = per_degree;
    out.report["checks"] = checks_json(rep.checks);
    out.status = rep.all_pass() ? ok : check_failed;
    return out;
  });
}

inline Outcome run_adjunction(const RunConfig& cfg) {
  auto K = std::make_shared<const FiniteSimplicialSet>(io::load_sset(cfg.path(cfg.source)));
  if (cfg.target.empty()) throw InvalidInput("adjunction-check needs --target");
  auto X = std::make_shared<const FiniteSimplicialSet>(io::load_sset(cfg.path(cfg.target)));
  std::optional<CosimplicialSSet> Z;
  const int levels = std::max(K->dim(), 1) + 1;
  if (cfg.cosimplicial == "yoneda")
    Z = CosimplicialSSet::yoneda(levels);
  else if (cfg.cosimplicial == "point")
    Z = CosimplicialSSet::constant(std::make_shared<const FiniteSimplicialSet>(simplex(0)), levels);
  else if (cfg.cosimplicial.rfind("constant:", 0) == 0)
    Z = CosimplicialSSet::constant(
        std::make_shared<const FiniteSimplicialSet>(io::load_sset(cfg.path(cfg.cosimplicial.substr(9)))), levels);
  else
    throw InvalidInput("unknown cosimplicial object '" + cfg.cosimplicial + "' (yoneda, point, constant:<file>)");
  if (auto err = Z->check()) throw InvariantViolation("cosimplicial identities: " + *err);
  const int trunc = cfg.trunc >= 0 ? cfg.trunc : generator_dimension(*K, *Z);
  auto rep = adjunction_check(K, *Z, X, trunc);
  Outcome out;
  json params = params_json(cfg);
  params["cosimplicial"] = cfg.cosimplicial;
  params["target"] = cfg.target;
  params["trunc"] = trunc;
  out.report["params"] = params;
  out.report["left_count"] = rep.left_count;
  out.report["right_count"] = rep.right_count;
  out.report["bijection_ok"] = rep.bijection_ok;
  out.report["checks"] = checks_json({{"adjunction bijection", rep.bijection_ok, rep.detail}});
  out.status = rep.bijection_ok ? ok : check_failed;
  return out;
}

inline Outcome run_verify(const RunConfig& cfg) {
  Outcome out;
  out.report["params"] = params_json(cfg);
  std::vector<NamedCheck> checks;
  for (const auto& r : run_acceptance())
    checks.push_back({"criterion " + std::to_string(r.id) + ": " + r.title, r.pass, r.detail});
  out.report["checks"] = checks_json(checks);
  out.status = all_pass(checks) ? ok : check_failed;
  return out;
}

/// Runs a command, mapping exceptions to exit codes and an error report.
inline Outcome run(const RunConfig& cfg) {
  auto failure = [&](int status, const std::string& kind, const std::string& message) {
    Outcome out;
    out.report["params"] = params_json(cfg);
    out.report["error"] = json{{"kind", kind}, {"message", message}};
    out.status = status;
    return out;
  };
  try {
    if (cfg.max_degree < 0) throw InvalidInput("--max-degree must be nonnegative");
    if (cfg.pmax && *cfg.pmax < 0) throw InvalidInput("--pmax must be nonnegative");
    if (cfg.command == "homology") return run_homology(cfg);
    if (cfg.command == "mapspace") return run_mapspace(cfg, false);
    if (cfg.command == "ring") return run_mapspace(cfg, true);
    if (cfg.command == "isotypic") return run_isotypic(cfg);
    if (cfg.command == "adjunction-check") return run_adjunction(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    throw InvalidInput("unknown command '" + cfg.command + "'");
  } catch (const HypothesisViolation& e) {
    return failure(hypothesis, "hypothesis", e.what());
  } catch (const ResourceLimit& e) {
    return failure(resource, "resource", e.what());
  } catch (const TruncationError& e) {
    return failure(resource, "truncation", e.what());
  } catch (const InvalidInput& e) {
    return failure(bad_input, "invalid input", e.what());
  } catch (const MathError& e) {
    return failure(bad_input, "math", e.what());
  } catch (const InvariantViolation& e) {
    return failure(check_failed, "invariant", e.what());
  }
}

}  // namespace mapcoh::cli
