/**
 * @file action.hpp
 * @brief Finite group actions on finite simplicial sets by automorphisms.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/group.hpp"
#include "mapcoh/sset.hpp"
#include "mapcoh/sset_build.hpp"
#include "mapcoh/sset_homology.hpp"

namespace mapcoh {

/// A left action: maps[g] is the automorphism by which g acts.
struct SimplicialGroupAction {
  GroupData group;
  SSetPtr space;
  std::vector<SimplicialMap> maps;

  const SimplicialMap& of(std::size_t g) const { return maps.at(g); }
};

struct ActionCheck {
  bool ok = true;
  std::string error;
};

/// Verifies every action invariant; the first failure is described.
inline ActionCheck check_action(const SimplicialGroupAction& a, bool pointed = false) {
  auto fail = [](std::string msg) { return ActionCheck{false, std::move(msg)}; };
  const auto& G = a.group;
  const auto& K = *a.space;
  if (a.maps.size() != G.order()) return fail("action needs one map per group element");
  for (std::size_t g = 0; g < G.order(); ++g) {
    const auto& m = a.maps[g];
    if (m.source_ptr() != a.space && m.source().size() != K.size()) return fail("map of '" + G.elements[g] + "' has the wrong source");
    if (auto err = m.check()) return fail("map of '" + G.elements[g] + "': " + *err);
    std::set<CellId> hit;
    for (CellId c = 0; c < K.size(); ++c) {
      if (m.image(c).degenerate()) return fail("map of '" + G.elements[g] + "' is not an automorphism (degenerate image)");
      hit.insert(m.image(c).cell);
    }
    if (hit.size() != K.size()) return fail("map of '" + G.elements[g] + "' is not bijective on cells");
    if (pointed && K.pointed() && m.image(*K.basepoint()) != SimplexRef{*K.basepoint(), {}})
      return fail("map of '" + G.elements[g] + "' moves the basepoint");
  }
  if (!a.maps[G.identity].is_identity()) return fail("identity element does not act as the identity");
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!(a.maps[h].then(a.maps[g]) == a.maps[G.mul(g, h)]))
        return fail("composition mismatch: map(" + G.elements[g] + ") o map(" + G.elements[h] + ") != map(" +
                    G.elements[G.mul(g, h)] + ")");
  return {};
}

inline void validate_action(const SimplicialGroupAction& a, bool pointed = false) {
  auto res = check_action(a, pointed);
  if (!res.ok) throw InvalidInput("invalid group action: " + res.error);
}

/// Matrices of every group element on H_n(K; k), n = 0..dim K (representative coordinates).
template <class F>
std::vector<std::vector<LinearMap<F>>> homology_action(const SimplicialGroupAction& a, const F& field,
                                                       bool reduced = false) {
  auto H = homology(*a.space, field, reduced);
  std::vector<std::vector<LinearMap<F>>> out(H.size());
  for (std::size_t n = 0; n < H.size(); ++n)
    for (const auto& m : a.maps)
      out[n].push_back(induced_on_homology(induced_chain_map(m, field, static_cast<int>(n)), H[n], H[n]));
  return out;
}

/// Z/m rotating polygon(m).
inline SimplicialGroupAction rotation_action(int m) {
  SimplicialGroupAction a;
  a.group = GroupData::cyclic(m);
  a.space = std::make_shared<FiniteSimplicialSet>(polygon(m));
  for (int k = 0; k < m; ++k) {
    std::vector<SimplexRef> images;
    for (int i = 0; i < m; ++i) images.push_back({static_cast<CellId>((i + k) % m), {}});
    for (int i = 0; i < m; ++i) images.push_back({static_cast<CellId>(m + (i + k) % m), {}});
    a.maps.emplace_back(a.space, a.space, std::move(images));
  }
  return a;
}

/// Z/2 reflecting the alternately oriented polygon(m) (m even) across the axis through v0.
inline SimplicialGroupAction reflection_action(int m) {
  SimplicialGroupAction a;
  a.group = GroupData::cyclic(2);
  a.space = std::make_shared<FiniteSimplicialSet>(polygon(m, true));
  a.maps.push_back(SimplicialMap::identity(a.space));
  std::vector<SimplexRef> images;
  for (int i = 0; i < m; ++i) images.push_back({static_cast<CellId>((m - i) % m), {}});
  for (int i = 0; i < m; ++i) images.push_back({static_cast<CellId>(m + (2 * m - i - 1) % m), {}});
  a.maps.emplace_back(a.space, a.space, std::move(images));
  return a;
}

/// Z/k cyclically permuting the summands of a wedge of k copies of the minimal circle.
inline SimplicialGroupAction wedge_permutation_action(int k) {
  SimplicialGroupAction a;
  a.group = GroupData::cyclic(k);
  std::vector<FiniteSimplicialSet> summands(k, minimal_sphere(1));
  a.space = std::make_shared<FiniteSimplicialSet>(wedge(summands));
  for (int s = 0; s < k; ++s) {
    std::vector<SimplexRef> images{{0, {}}};
    for (int i = 0; i < k; ++i) images.push_back({static_cast<CellId>(1 + (i + s) % k), {}});
    a.maps.emplace_back(a.space, a.space, std::move(images));
  }
  return a;
}

/// Z/2 switching the factors of K ∧ K.
inline SimplicialGroupAction switch_action(const SmashSet& S) {
  SimplicialGroupAction a;
  a.group = GroupData::cyclic(2);
  a.space = S.quotient.set;
  a.maps.push_back(SimplicialMap::identity(a.space));
  a.maps.push_back(smash_switch(S));
  return a;
}

/// The action of the trivial group.
inline SimplicialGroupAction trivial_action(SSetPtr K) {
  SimplicialGroupAction a;
  a.group = GroupData::cyclic(1);
  a.space = K;
  a.maps.push_back(SimplicialMap::identity(K));
  return a;
}

}  // namespace mapcoh
