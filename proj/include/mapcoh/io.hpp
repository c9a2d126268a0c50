/**
 * @file io.hpp
 * @brief JSON formats for simplicial sets, coefficients and groups.
 *
 * Needs nlohmann/json (json.hpp) on the include path.
 */
#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mapcoh/action.hpp"
#include "mapcoh/errors.hpp"
#include "mapcoh/field.hpp"
#include "mapcoh/gcalg.hpp"
#include "mapcoh/grepr.hpp"
#include "mapcoh/mapmodel.hpp"
#include "mapcoh/sset.hpp"

namespace mapcoh::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Directory of a path, for resolving relative references inside files.
inline std::string directory_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

inline std::string resolve_path(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path[0] == '/') return path;
  return base_dir + "/" + path;
}

namespace detail {

inline const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string id_string(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InvalidInput(where + ": cell identifiers must be strings or integers");
}

inline std::string scalar_string(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InvalidInput(where + ": scalars must be integers or strings like \"-1/2\"");
}

inline SimplexRef simplex_ref(const json& j, const FiniteSimplicialSet& K, const std::string& where) {
  auto cell = K.find(id_string(need(j, "cell", where), where));
  if (!cell) throw InvalidInput(where + ": face references unknown cell '" + id_string(j.at("cell"), where) + "'");
  std::vector<int> degens;
  if (j.contains("degens")) {
    if (!j.at("degens").is_array()) throw InvalidInput(where + ": 'degens' must be an array");
    for (const auto& d : j.at("degens")) {
      if (!d.is_number_integer()) throw InvalidInput(where + ": degeneracy indices must be integers");
      degens.push_back(d.get<int>());
    }
  }
  for (std::size_t k = 1; k < degens.size(); ++k)
    if (degens[k] >= degens[k - 1]) throw InvalidInput(where + ": degeneracy indices must be strictly decreasing");
  return {*cell, std::move(degens)};
}

}  // namespace detail

/**
 * { "name", "pointed", "basepoint"?, "cells": [ { "id", "dim", "faces": [ { "cell", "degens" } ] } ] }
 *
 * Cells may appear in any order as long as faces only reference cells of
 * lower dimension.
 */
inline FiniteSimplicialSet sset_from_json(const json& j) {
  const std::string where = "simplicial set";
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  FiniteSimplicialSet K(j.value("name", std::string("K")));
  const auto& cells = detail::need(j, "cells", where);
  if (!cells.is_array()) throw InvalidInput(where + ": 'cells' must be an array");
  std::map<int, std::vector<const json*>> by_dim;
  for (const auto& c : cells) {
    const auto& d = detail::need(c, "dim", where);
    if (!d.is_number_integer() || d.get<int>() < 0) throw InvalidInput(where + ": 'dim' must be a nonnegative integer");
    by_dim[d.get<int>()].push_back(&c);
  }
  for (const auto& [dim, list] : by_dim)
    for (const json* c : list) {
      const std::string id = detail::id_string(detail::need(*c, "id", where), where);
      const std::string cw = where + " cell '" + id + "'";
      std::vector<SimplexRef> faces;
      if (c->contains("faces")) {
        if (!c->at("faces").is_array()) throw InvalidInput(cw + ": 'faces' must be an array");
        for (const auto& f : c->at("faces")) faces.push_back(detail::simplex_ref(f, K, cw));
      }
      K.add_cell(id, dim, std::move(faces));
    }
  const bool pointed = j.value("pointed", false);
  if (j.contains("basepoint")) {
    auto bp = K.find(detail::id_string(j.at("basepoint"), where));
    if (!bp) throw InvalidInput(where + ": unknown basepoint");
    if (K.cell_dim(*bp) != 0) throw InvalidInput(where + ": basepoint must be a 0-cell");
    K.set_basepoint(*bp);
  } else if (pointed) {
    throw InvalidInput(where + ": pointed set needs a basepoint");
  }
  if (!pointed) K.clear_basepoint();
  validate(K);
  return K;
}

inline json sset_to_json(const FiniteSimplicialSet& K) {
  json j;
  j["name"] = K.name();
  j["pointed"] = K.pointed();
  if (K.pointed()) j["basepoint"] = K.label(*K.basepoint());
  json cells = json::array();
  for (CellId c = 0; c < K.size(); ++c) {
    json cell;
    cell["id"] = K.label(c);
    cell["dim"] = K.cell_dim(c);
    json faces = json::array();
    for (int i = 0; K.cell_dim(c) > 0 && i <= K.cell_dim(c); ++i) {
      const auto& f = K.face(c, i);
      faces.push_back(json{{"cell", K.label(f.cell)}, {"degens", f.degens}});
    }
    cell["faces"] = faces;
    cells.push_back(cell);
  }
  j["cells"] = cells;
  return j;
}

inline FiniteSimplicialSet load_sset(const std::string& path) { return sset_from_json(read_json_file(path)); }

/// Field-agnostic coefficient description, read before the field is fixed.
struct CoefficientSpec {
  std::string backend = "tensor";
  std::optional<FieldSpec> field;
  int connectivity = 0;
  std::vector<std::pair<std::string, int>> generators;
  /// generator -> terms (coefficient text, monomial as (generator, exponent) pairs)
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>>>>
      differential;
  std::shared_ptr<const FiniteSimplicialSet> target;

  template <class F>
  CoefficientModel<F> build(const F& field) const {
    if (backend == "simplicial") return CoefficientModel<F>::simplicial(target, connectivity);
    std::vector<typename FreeGCAlgebra<F>::Generator> gens;
    for (const auto& [name, deg] : generators) gens.push_back({name, deg});
    FreeGCAlgebra<F> A(field, gens);
    for (const auto& [gen, terms] : differential) {
      typename FreeGCAlgebra<F>::Poly value;
      for (const auto& [coef, mono] : terms) {
        Monomial m = A.unit();
        for (const auto& [g, e] : mono) m.at(A.generator_index(g)) += e;
        auto c = field.parse(coef);
        auto it = value.find(m);
        if (it == value.end())
          value.emplace(m, c);
        else
          it->second = field.add(it->second, c);
      }
      A.set_differential(A.generator_index(gen), std::move(value));
    }
    return CoefficientModel<F>::tensor(std::make_shared<const FreeGCAlgebra<F>>(std::move(A)), connectivity);
  }
};

inline CoefficientSpec coefficients_from_json(const json& j, const std::string& base_dir = ".") {
  const std::string where = "coefficient file";
  CoefficientSpec spec;
  spec.backend = j.value("backend", std::string("tensor"));
  const auto& c = detail::need(j, "connectivity", where);
  if (!c.is_number_integer() || c.get<int>() < 0) throw InvalidInput(where + ": 'connectivity' must be a nonnegative integer");
  spec.connectivity = c.get<int>();
  if (j.contains("field")) {
    std::optional<std::uint64_t> p;
    if (j.contains("p")) p = j.at("p").get<std::uint64_t>();
    spec.field = FieldSpec::parse(j.at("field").get<std::string>(), p);
  }
  if (spec.backend == "simplicial") {
    const auto& t = detail::need(j, "target", where);
    if (t.is_string())
      spec.target = std::make_shared<const FiniteSimplicialSet>(load_sset(resolve_path(base_dir, t.get<std::string>())));
    else
      spec.target = std::make_shared<const FiniteSimplicialSet>(sset_from_json(t));
    return spec;
  }
  if (spec.backend != "tensor") throw InvalidInput(where + ": unknown backend '" + spec.backend + "'");
  for (const auto& g : detail::need(j, "generators", where)) {
    const auto& d = detail::need(g, "degree", where);
    if (!d.is_number_integer()) throw InvalidInput(where + ": generator degree must be an integer");
    spec.generators.emplace_back(detail::need(g, "name", where).get<std::string>(), d.get<int>());
  }
  if (j.contains("differential")) {
    for (const auto& [gen, terms] : j.at("differential").items()) {
      std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>> list;
      for (const auto& term : terms) {
        if (!term.is_array() || term.size() != 2) throw InvalidInput(where + ": differential terms are [coeff, monomial]");
        std::vector<std::pair<std::string, int>> mono;
        for (const auto& factor : term.at(1)) {
          if (!factor.is_array() || factor.size() != 2) throw InvalidInput(where + ": monomial factors are [gen, exp]");
          mono.emplace_back(factor.at(0).get<std::string>(), factor.at(1).get<int>());
        }
        list.emplace_back(detail::scalar_string(term.at(0), where), std::move(mono));
      }
      spec.differential.emplace_back(gen, std::move(list));
    }
  }
  return spec;
}

inline CoefficientSpec load_coefficients(const std::string& path) {
  return coefficients_from_json(read_json_file(path), directory_of(path));
}

/// Group, character values (as text) and optional action, before the field is fixed.
struct GroupSpec {
  GroupData group;
  std::vector<std::string> names;
  std::vector<long> degrees;
  std::vector<std::vector<std::string>> values;
  json action;  // element -> { "cells": { id: { "cell", "degens" } } }

  template <class F>
  CharacterTable<F> table(const F& field) const {
    CharacterTable<F> t(field, group);
    t.names = names;
    t.degrees = degrees;
    for (const auto& row : values) {
      std::vector<typename F::value_type> r;
      for (const auto& v : row) r.push_back(field.parse(v));
      t.values.push_back(std::move(r));
    }
    t.validate();
    return t;
  }

  /// The action on K; cells not listed are fixed.
  SimplicialGroupAction action_on(SSetPtr K, bool pointed = false) const {
    if (action.is_null()) throw InvalidInput("group file has no 'action'");
    SimplicialGroupAction a;
    a.group = group;
    a.space = K;
    for (std::size_t g = 0; g < group.order(); ++g) {
      std::vector<SimplexRef> images;
      for (CellId c = 0; c < K->size(); ++c) images.push_back({c, {}});
      const std::string& name = group.elements[g];
      if (action.contains(name)) {
        const auto& cells = detail::need(action.at(name), "cells", "action of '" + name + "'");
        for (const auto& [id, ref] : cells.items()) {
          auto c = K->find(id);
          if (!c) throw InvalidInput("action of '" + name + "' references unknown cell '" + id + "'");
          images[*c] = detail::simplex_ref(ref, *K, "action of '" + name + "'");
        }
      }
      a.maps.emplace_back(K, K, std::move(images));
    }
    validate_action(a, pointed);
    return a;
  }
};

inline GroupSpec group_from_json(const json& j) {
  const std::string where = "group file";
  GroupSpec spec;
  for (const auto& e : detail::need(j, "elements", where)) spec.group.elements.push_back(detail::id_string(e, where));
  const std::size_t n = spec.group.elements.size();
  auto element = [&](const json& v) -> std::size_t {
    if (v.is_number_integer()) {
      auto k = v.get<long long>();
      if (k < 0 || static_cast<std::size_t>(k) >= n) throw InvalidInput(where + ": element index out of range");
      return static_cast<std::size_t>(k);
    }
    return spec.group.index(detail::id_string(v, where));
  };
  for (const auto& row : detail::need(j, "mult", where)) {
    std::vector<std::size_t> r;
    for (const auto& v : row) r.push_back(element(v));
    spec.group.mult.push_back(std::move(r));
  }
  if (j.contains("classes"))
    for (const auto& cls : j.at("classes")) {
      std::vector<std::size_t> c;
      for (const auto& v : cls) c.push_back(element(v));
      spec.group.classes.push_back(std::move(c));
    }
  spec.group.finalize();
  if (j.contains("characters"))
    for (const auto& ch : j.at("characters")) {
      spec.names.push_back(ch.value("name", std::string()));
      const auto& d = detail::need(ch, "degree", where);
      if (!d.is_number_integer()) throw InvalidInput(where + ": character degree must be an integer");
      spec.degrees.push_back(d.get<long>());
      std::vector<std::string> row;
      for (const auto& v : detail::need(ch, "values", where)) row.push_back(detail::scalar_string(v, where));
      spec.values.push_back(std::move(row));
    }
  if (j.contains("action")) spec.action = j.at("action");
  return spec;
}

inline GroupSpec load_group(const std::string& path) { return group_from_json(read_json_file(path)); }

}  // namespace mapcoh::io
