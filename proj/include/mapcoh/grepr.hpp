/**
 * @file grepr.hpp
 * @brief Character tables, central idempotents and isotypic decomposition.
 *
 * Character tables are supplied as data and validated (degrees, trivial
 * character, orthogonality) rather than computed.  The idempotent
 * e_i = (n_i/|G|) Σ_g χ_i(g^{-1}) g projects any representation onto its
 * i-primary part, so the dimension of that part is the rank of ρ(e_i).
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/field.hpp"
#include "mapcoh/group.hpp"
#include "mapcoh/linalg.hpp"

namespace mapcoh {

template <class F>
struct CharacterTable {
  using T = typename F::value_type;

  F field;
  GroupData group;
  std::vector<std::string> names;           // optional labels per irreducible
  std::vector<long> degrees;                // n_i
  std::vector<std::vector<T>> values;       // values[i][class]

  CharacterTable(F f, GroupData g) : field(std::move(f)), group(std::move(g)) {}

  std::size_t size() const { return degrees.size(); }
  const T& chi(std::size_t i, std::size_t g) const { return values[i][group.class_of[g]]; }
  std::string name(std::size_t i) const {
    return i < names.size() && !names[i].empty() ? names[i] : "chi" + std::to_string(i + 1);
  }

  /// |G| as a field element; throws when it is not invertible.
  T order_inverse() const {
    T n = field.from_int(static_cast<long>(group.order()));
    if (field.is_zero(n))
      throw MathError("the characteristic of " + field.name() + " divides |G| = " + std::to_string(group.order()));
    return field.inv(n);
  }

  /// Checks every table invariant; throws InvalidInput naming the first failure.
  void validate() const {
    const std::size_t k = group.classes.size();
    if (degrees.size() != k || values.size() != k)
      throw InvalidInput("character table needs one irreducible per conjugacy class (" + std::to_string(k) + ")");
    long sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (degrees[i] <= 0) throw InvalidInput("irreducible degrees must be positive");
      if (values[i].size() != k) throw InvalidInput("character " + name(i) + " needs one value per class");
      sum += degrees[i] * degrees[i];
    }
    if (sum != static_cast<long>(group.order()))
      throw InvalidInput("sum of squared degrees is " + std::to_string(sum) + ", expected |G| = " +
                         std::to_string(group.order()));
    for (std::size_t c = 0; c < k; ++c)
      if (!field.is_one(values[0][c])) throw InvalidInput("the first character must be trivial");
    for (std::size_t i = 0; i < k; ++i)
      if (!field.equal(chi(i, group.identity), field.from_int(degrees[i])))
        throw InvalidInput("character " + name(i) + " does not take its degree at the identity");
    const T inv = order_inverse();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        T s = field.zero();
        for (std::size_t g = 0; g < group.order(); ++g) field.axpyin(s, chi(i, g), chi(j, group.inverse[g]));
        s = field.mul(s, inv);
        if (!field.equal(s, i == j ? field.one() : field.zero()))
          throw InvalidInput("row orthogonality fails for (" + name(i) + ", " + name(j) + ")");
      }
  }
};

/// Characters of Z/n given a primitive n-th root of unity ω: χ_j(g^k) = ω^{jk}.
template <class F>
CharacterTable<F> cyclic_character_table(const F& field, std::size_t n, const typename F::value_type& omega) {
  CharacterTable<F> t(field, GroupData::cyclic(n));
  for (std::size_t j = 0; j < n; ++j) {
    t.degrees.push_back(1);
    std::vector<typename F::value_type> row;
    auto power = field.one();
    auto step = field.one();
    for (std::size_t r = 0; r < j; ++r) step = field.mul(step, omega);
    for (std::size_t k = 0; k < n; ++k) {
      row.push_back(power);
      power = field.mul(power, step);
    }
    t.values.push_back(row);
    t.names.push_back(j == 0 ? "trivial" : (n == 2 ? "sign" : "omega^" + std::to_string(j)));
  }
  t.validate();
  return t;
}

/// An element of the group algebra k[G] as coefficients per element.
template <class F>
using GroupAlgebraElement = std::vector<typename F::value_type>;

template <class F>
GroupAlgebraElement<F> group_algebra_mul(const F& field, const GroupData& G, const GroupAlgebraElement<F>& a,
                                         const GroupAlgebraElement<F>& b) {
  GroupAlgebraElement<F> out(G.order(), field.zero());
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (field.is_zero(a[g])) continue;
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!field.is_zero(b[h])) field.axpyin(out[G.mul(g, h)], a[g], b[h]);
  }
  return out;
}

/**
 * The central idempotents e_1..e_k.  Orthogonality e_i e_j = δ_ij e_i and
 * completeness Σ e_i = 1 are verified by group-algebra multiplication.
 */
template <class F>
std::vector<GroupAlgebraElement<F>> central_idempotents(const CharacterTable<F>& table) {
  table.validate();
  const F& field = table.field;
  const auto& G = table.group;
  const auto inv = table.order_inverse();
  std::vector<GroupAlgebraElement<F>> e;
  for (std::size_t i = 0; i < table.size(); ++i) {
    GroupAlgebraElement<F> x(G.order(), field.zero());
    const auto scale = field.mul(field.from_int(table.degrees[i]), inv);
    for (std::size_t g = 0; g < G.order(); ++g) x[g] = field.mul(scale, table.chi(i, G.inverse[g]));
    e.push_back(std::move(x));
  }
  GroupAlgebraElement<F> total(G.order(), field.zero());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t g = 0; g < G.order(); ++g) total[g] = field.add(total[g], e[i][g]);
    for (std::size_t j = 0; j < e.size(); ++j) {
      auto prod = group_algebra_mul(field, G, e[i], e[j]);
      for (std::size_t g = 0; g < G.order(); ++g) {
        auto expect = (i == j) ? e[i][g] : field.zero();
        if (!field.equal(prod[g], expect))
          throw InvariantViolation("idempotents e_" + std::to_string(i + 1) + ", e_" + std::to_string(j + 1) +
                                   " are not orthogonal");
      }
    }
  }
  for (std::size_t g = 0; g < G.order(); ++g)
    if (!field.equal(total[g], g == G.identity ? field.one() : field.zero()))
      throw InvariantViolation("idempotents do not sum to 1");
  return e;
}

/// ρ(x) = Σ x_g ρ(g) for a representation given by matrices.
template <class F>
LinearMap<F> apply_group_algebra(const F& field, const GroupAlgebraElement<F>& x,
                                 const std::vector<LinearMap<F>>& rho) {
  const std::size_t d = rho.empty() ? 0 : rho[0].domain_dim;
  LinearMap<F> out(field, d, d);
  for (std::size_t g = 0; g < rho.size(); ++g)
    if (!field.is_zero(x[g])) out = out.plus(rho[g].scaled_by(x[g]));
  return out;
}

/// First (g, h) with ρ(g)ρ(h) != ρ(gh), if any.
template <class F>
std::optional<std::string> representation_failure(const GroupData& G, const std::vector<LinearMap<F>>& rho) {
  if (rho.size() != G.order()) return "need one matrix per group element";
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!rho[g].after(rho[h]).equals(rho[G.mul(g, h)]))
        return "rho(" + G.elements[g] + ") rho(" + G.elements[h] + ") != rho(" + G.elements[G.mul(g, h)] + ")";
  return std::nullopt;
}

/// Per-degree isotypic dimensions of a graded representation.
struct IsotypicReport {
  std::vector<std::string> irreducibles;
  std::vector<long> degrees;
  std::map<int, std::vector<std::size_t>> dims;  // degree -> dim per irreducible
  std::map<int, std::size_t> totals;

  std::set<std::size_t> support() const {
    std::set<std::size_t> s;
    for (const auto& [n, d] : dims)
      for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0) s.insert(i);
    return s;
  }

  /// Σ_i dim_i = total in every degree.
  bool complete() const {
    for (const auto& [n, d] : dims) {
      std::size_t s = 0;
      for (auto x : d) s += x;
      if (s != totals.at(n)) return false;
    }
    return true;
  }

  /// dim_i ≡ 0 mod n_i in every degree.
  bool schur_divisible() const {
    for (const auto& [n, d] : dims)
      for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] % static_cast<std::size_t>(degrees[i]) != 0) return false;
    return true;
  }
};

/**
 * Isotypic decomposition: for each degree, the rank of ρ(e_i).
 *
 * `rho[n][g]` is the matrix of g on the degree-n space.
 */
template <class F>
IsotypicReport isotypic_decompose(const CharacterTable<F>& table, const std::map<int, std::vector<LinearMap<F>>>& rho) {
  auto e = central_idempotents(table);
  IsotypicReport out;
  for (std::size_t i = 0; i < table.size(); ++i) out.irreducibles.push_back(table.name(i));
  out.degrees = table.degrees;
  for (const auto& [n, mats] : rho) {
    if (auto err = representation_failure(table.group, mats))
      throw InvariantViolation("degree " + std::to_string(n) + ": not a representation: " + *err);
    const std::size_t d = mats.empty() ? 0 : mats[0].domain_dim;
    out.totals[n] = d;
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < e.size(); ++i)
      dims.push_back(d == 0 ? 0 : rank_decompose(apply_group_algebra(table.field, e[i], mats)).rank);
    out.dims[n] = std::move(dims);
  }
  return out;
}

/// Multiplicities m_l of the irreducibles in χ_i·χ_j.
template <class F>
std::vector<long> rep_product_decompose(const CharacterTable<F>& table, std::size_t i, std::size_t j) {
  const F& field = table.field;
  const auto& G = table.group;
  const auto inv = table.order_inverse();
  std::vector<long> m;
  for (std::size_t l = 0; l < table.size(); ++l) {
    auto s = field.zero();
    for (std::size_t g = 0; g < G.order(); ++g)
      field.axpyin(s, field.mul(table.chi(i, g), table.chi(j, g)), table.chi(l, G.inverse[g]));
    s = field.mul(s, inv);
    auto lifted = field.lift(s);
    if (!lifted || *lifted < 0)
      throw MathError("multiplicity of " + table.name(l) + " in " + table.name(i) + "*" + table.name(j) +
                      " is not a nonnegative integer");
    m.push_back(*lifted);
  }
  // over F_p the lift is only defined mod p; the degree count pins it down
  long count = 0;
  for (std::size_t l = 0; l < m.size(); ++l) count += m[l] * table.degrees[l];
  if (count != table.degrees[i] * table.degrees[j])
    throw MathError("product " + table.name(i) + "*" + table.name(j) + " has inconsistent multiplicities");
  return m;
}

/// Least J ⊇ I ∪ {trivial} closed under taking constituents of products.
template <class F>
std::set<std::size_t> support_closure(const CharacterTable<F>& table, std::set<std::size_t> I) {
  I.insert(0);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> current(I.begin(), I.end());
    for (std::size_t a : current)
      for (std::size_t b : current) {
        auto m = rep_product_decompose(table, a, b);
        for (std::size_t l = 0; l < m.size(); ++l)
          if (m[l] > 0 && I.insert(l).second) grew = true;
      }
  }
  return I;
}

}  // namespace mapcoh
