/**
 * @file group.hpp
 * @brief Finite groups given by multiplication tables.
 */
#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mapcoh/errors.hpp"

namespace mapcoh {

/// A finite group: element names, multiplication table, conjugacy classes.
struct GroupData {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> mult;  // mult[a][b] = index of a*b
  std::vector<std::vector<std::size_t>> classes;

  // derived by finalize()
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;
  std::vector<std::size_t> class_of;

  std::size_t order() const { return elements.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return mult[a][b]; }

  std::size_t index(const std::string& name) const {
    for (std::size_t k = 0; k < elements.size(); ++k)
      if (elements[k] == name) return k;
    throw InvalidInput("unknown group element '" + name + "'");
  }

  /// Checks the group axioms and class data, then fills identity, inverses and class lookup.
  void finalize() {
    const std::size_t n = order();
    if (n == 0) throw InvalidInput("group has no elements");
    if (mult.size() != n) throw InvalidInput("multiplication table has the wrong number of rows");
    for (const auto& row : mult) {
      if (row.size() != n) throw InvalidInput("multiplication table row has the wrong length");
      for (std::size_t v : row)
        if (v >= n) throw InvalidInput("multiplication table entry out of range");
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = mult[e][a] == a && mult[a][e] == a;
      if (ok) {
        identity = e;
        found = true;
      }
    }
    if (!found) throw InvalidInput("multiplication table has no identity element");
    inverse.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (mult[a][b] == identity && mult[b][a] == identity) inverse[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      if (inverse[a] == n) throw InvalidInput("element '" + elements[a] + "' has no inverse");
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
      if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
        throw InvalidInput("multiplication is not associative on (" + elements[a] + ", " + elements[b] + ", " +
                           elements[c] + ")");
    };
    if (n <= 24) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) assoc(a, b, c);
    } else {
      std::mt19937 rng(20240601);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int t = 0; t < 20000; ++t) assoc(pick(rng), pick(rng), pick(rng));
    }
    if (classes.empty()) classes = conjugacy_classes();
    class_of.assign(n, classes.size());
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (std::size_t g : classes[k]) {
        if (g >= n) throw InvalidInput("conjugacy class references an unknown element");
        if (class_of[g] != classes.size()) throw InvalidInput("conjugacy classes overlap at '" + elements[g] + "'");
        class_of[g] = k;
      }
    for (std::size_t g = 0; g < n; ++g)
      if (class_of[g] == classes.size()) throw InvalidInput("element '" + elements[g] + "' lies in no class");
    for (std::size_t k = 0; k < classes.size(); ++k) {
      std::set<std::size_t> orbit;
      for (std::size_t h = 0; h < n; ++h) orbit.insert(mult[mult[h][classes[k][0]]][inverse[h]]);
      if (orbit != std::set<std::size_t>(classes[k].begin(), classes[k].end()))
        throw InvalidInput("class " + std::to_string(k) + " is not a conjugacy class");
    }
  }

  std::vector<std::vector<std::size_t>> conjugacy_classes() const {
    const std::size_t n = order();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> inv(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (mult[a][b] == identity) inv[a] = b;
    for (std::size_t g = 0; g < n; ++g) {
      if (seen[g]) continue;
      std::set<std::size_t> orbit;
      for (std::size_t h = 0; h < n; ++h) orbit.insert(mult[mult[h][g]][inv[h]]);
      for (std::size_t x : orbit) seen[x] = true;
      out.emplace_back(orbit.begin(), orbit.end());
    }
    return out;
  }

  /// Z/n with elements "e", "g", "g2", ..., "g{n-1}".
  static GroupData cyclic(std::size_t n) {
    GroupData G;
    for (std::size_t k = 0; k < n; ++k) G.elements.push_back(k == 0 ? "e" : (k == 1 ? "g" : "g" + std::to_string(k)));
    G.mult.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) G.mult[a][b] = (a + b) % n;
    for (std::size_t k = 0; k < n; ++k) G.classes.push_back({k});
    G.finalize();
    return G;
  }
};

}  // namespace mapcoh
