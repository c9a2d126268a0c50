/**
 * @file gcalg.hpp
 * @brief Free graded-commutative cochain algebras with a differential.
 *
 * Elements are linear combinations of monomials x_1^{a_1} ... x_k^{a_k} in
 * generator order; odd generators appear with exponent at most one.  The
 * differential is given on generators and extended as a derivation.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/field.hpp"

namespace mapcoh {

using Monomial = std::vector<int>;  // exponent per generator

template <class F>
class FreeGCAlgebra {
 public:
  using T = typename F::value_type;
  using Poly = std::map<Monomial, T>;

  struct Generator {
    std::string name;
    int degree = 1;
  };

  FreeGCAlgebra(F field, std::vector<Generator> gens) : field_(std::move(field)), gens_(std::move(gens)) {
    if (gens_.empty()) throw InvalidInput("algebra needs at least one generator");
    for (const auto& g : gens_)
      if (g.degree <= 0) throw InvalidInput("generator '" + g.name + "' must have positive degree");
    d_gen_.assign(gens_.size(), Poly{});
    intern(unit());
  }

  /// Λ(x_n): one generator of degree n, zero differential.
  static FreeGCAlgebra exterior(F field, int degree, std::string name = "x") {
    return FreeGCAlgebra(std::move(field), {Generator{std::move(name), degree}});
  }

  const F& field() const { return field_; }
  std::size_t generator_count() const { return gens_.size(); }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }

  std::size_t generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    throw InvalidInput("unknown generator '" + name + "'");
  }

  int min_generator_degree() const {
    int m = gens_[0].degree;
    for (const auto& g : gens_) m = std::min(m, g.degree);
    return m;
  }

  Monomial unit() const { return Monomial(gens_.size(), 0); }
  Monomial gen_monomial(std::size_t i) const {
    Monomial m = unit();
    m.at(i) = 1;
    return m;
  }

  int degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
    return d;
  }

  /// Sets d(x_i); must be called before the algebra is used.
  void set_differential(std::size_t i, Poly value) {
    for (const auto& [m, c] : value) {
      if (!valid(m)) throw InvalidInput("differential of '" + gens_[i].name + "' contains an invalid monomial");
      if (degree(m) != gens_[i].degree + 1)
        throw InvalidInput("differential of '" + gens_[i].name + "' does not have degree " +
                           std::to_string(gens_[i].degree + 1));
    }
    d_gen_.at(i) = clean(std::move(value));
    d_cache_.clear();
  }

  bool valid(const Monomial& m) const {
    if (m.size() != gens_.size()) return false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < 0) return false;
      if (gens_[i].degree % 2 == 1 && m[i] > 1) return false;
    }
    return true;
  }

  /// Product of monomials with its Koszul sign, or nothing when it vanishes.
  std::optional<std::pair<Monomial, T>> multiply(const Monomial& a, const Monomial& b) const {
    Monomial out(a.size());
    long swaps = 0;
    // moving each odd generator of b leftwards past the odd generators of a with larger index
    int odd_after = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (gens_[i].degree % 2 == 1) {
        if (b[i] > 0) swaps += odd_after;
        if (a[i] > 0) ++odd_after;
        if (a[i] + b[i] > 1) return std::nullopt;
      }
      out[i] = a[i] + b[i];
    }
    return std::make_pair(std::move(out), sign_of(field_, swaps));
  }

  Poly multiply(const Poly& x, const Poly& y) const {
    Poly out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) {
        auto r = multiply(a, b);
        if (!r) continue;
        accumulate(out, r->first, field_.mul(r->second, field_.mul(ca, cb)));
      }
    return clean(std::move(out));
  }

  /// The derivation d on a monomial: d(x_i m') = d(x_i) m' + (-1)^{|x_i|} x_i d(m').
  const Poly& differential(const Monomial& m) const {
    auto it = d_cache_.find(m);
    if (it != d_cache_.end()) return it->second;
    Poly out;
    std::size_t first = m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) {
        first = i;
        break;
      }
    if (first < m.size()) {
      Monomial rest = m;
      rest[first] -= 1;
      Poly xi{{gen_monomial(first), field_.one()}};
      Poly restp{{rest, field_.one()}};
      out = multiply(d_gen_[first], restp);
      Poly tail = multiply(xi, differential(rest));
      const T sgn = sign_of(field_, gens_[first].degree);
      for (const auto& [mm, c] : tail) accumulate(out, mm, field_.mul(sgn, c));
      out = clean(std::move(out));
    }
    return d_cache_.emplace(m, std::move(out)).first->second;
  }

  Poly differential(const Poly& x) const {
    Poly out;
    for (const auto& [m, c] : x)
      for (const auto& [mm, cc] : differential(m)) accumulate(out, mm, field_.mul(c, cc));
    return clean(std::move(out));
  }

  /// All monomials of exactly degree q (canonical order).
  std::vector<Monomial> monomials_of_degree(int q) const {
    std::vector<Monomial> out;
    Monomial m = unit();
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == gens_.size()) {
        if (left == 0) out.push_back(m);
        return;
      }
      const int d = gens_[i].degree;
      const int cap = (d % 2 == 1) ? 1 : left / d;
      for (int e = 0; e <= cap && e * d <= left; ++e) {
        m[i] = e;
        rec(i + 1, left - e * d);
      }
      m[i] = 0;
    };
    if (q >= 0) rec(0, q);
    return out;
  }

  /// Interned monomial ids (used by tensor words).
  std::size_t intern(const Monomial& m) const {
    auto it = ids_.find(m);
    if (it != ids_.end()) return it->second;
    const std::size_t id = monos_.size();
    monos_.push_back(m);
    mono_degree_.push_back(degree(m));
    ids_.emplace(m, id);
    return id;
  }
  const Monomial& monomial(std::size_t id) const { return monos_.at(id); }
  int degree_of(std::size_t id) const { return mono_degree_.at(id); }

  /// First generator with d(d(x)) != 0, if any.
  std::optional<std::string> square_failure() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!differential(d_gen_[i]).empty()) return gens_[i].name;
    return std::nullopt;
  }

  std::string to_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += gens_[i].name;
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  struct MonoHash {
    std::size_t operator()(const Monomial& m) const noexcept {
      std::size_t h = 0;
      for (int e : m) h = h * 131 + static_cast<std::size_t>(e);
      return h;
    }
  };

  void accumulate(Poly& p, const Monomial& m, const T& c) const {
    auto it = p.find(m);
    if (it == p.end())
      p.emplace(m, c);
    else
      it->second = field_.add(it->second, c);
  }

  Poly clean(Poly p) const {
    for (auto it = p.begin(); it != p.end();) it = field_.is_zero(it->second) ? p.erase(it) : std::next(it);
    return p;
  }

  F field_;
  std::vector<Generator> gens_;
  std::vector<Poly> d_gen_;
  mutable std::map<Monomial, Poly> d_cache_;
  mutable std::vector<Monomial> monos_;
  mutable std::vector<int> mono_degree_;
  mutable std::unordered_map<Monomial, std::size_t, MonoHash> ids_;
};

}  // namespace mapcoh
