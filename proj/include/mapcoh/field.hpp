/**
 * @file field.hpp
 * @brief Exact coefficient fields: the rationals and prime fields F_p.
 *
 * Every algorithm in the library is templated on a field policy object in
 * the style of fflas-ffpack: arithmetic goes through the field instance
 * (`F.add(a, b)`, `F.axpyin(y, a, x)`, ...) so that prime fields can carry
 * their modulus at runtime.  There is no floating point anywhere.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include <gmpxx.h>

#include "mapcoh/errors.hpp"

namespace mapcoh {

/// The field of rational numbers, backed by GMP rationals.
struct Rationals {
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long v) const { return value_type(v); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw MathError("division by zero in Q");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }

  /// y += a * x
  void axpyin(value_type& y, const value_type& a, const value_type& x) const { y += a * x; }

  unsigned long characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  std::string to_string(const value_type& a) const { return a.get_str(); }

  /// Parses "3", "-2", "1/2".
  value_type parse(const std::string& s) const {
    value_type v;
    if (v.set_str(s, 10) != 0) throw InvalidInput("not a rational number: '" + s + "'");
    v.canonicalize();
    return v;
  }

  /// Integer lift when the value is integral.
  std::optional<long> lift(const value_type& a) const {
    if (a.get_den() != 1 || !a.get_num().fits_slong_p()) return std::nullopt;
    return a.get_num().get_si();
  }
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The prime field F_p for p < 2^31.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 31) || !is_prime(p))
      throw InvalidInput("F_p requires a prime p < 2^31, got " + std::to_string(p));
  }

  std::uint64_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return static_cast<value_type>(r < 0 ? r + static_cast<long>(p_) : r);
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw MathError("division by zero in F_" + std::to_string(p_));
    // Fermat
    value_type result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  void axpyin(value_type& y, value_type a, value_type x) const { y = add(y, mul(a, x)); }

  unsigned long characteristic() const { return static_cast<unsigned long>(p_); }
  std::string name() const { return "F" + std::to_string(p_); }
  std::string to_string(value_type a) const { return std::to_string(a); }

  value_type parse(const std::string& s) const {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size()) throw InvalidInput("");
      return from_int(v);
    } catch (const std::exception&) {
      throw InvalidInput("not an integer residue: '" + s + "'");
    }
  }

  /// Canonical representative in [0, p).
  std::optional<long> lift(value_type a) const { return static_cast<long>(a); }

 private:
  std::uint64_t p_;
};

/// Runtime description of a coefficient field ("Q" or "F<p>").
struct FieldSpec {
  enum class Kind { rationals, prime_field };
  Kind kind = Kind::rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p) {
    PrimeField check(p);
    (void)check;
    return {Kind::prime_field, p};
  }

  /// Accepts "Q", "F3", "F_3", "Fp" with an explicit prime supplied separately.
  static FieldSpec parse(const std::string& text, std::optional<std::uint64_t> p = std::nullopt) {
    if (text == "Q" || text == "q" || text == "QQ") return rationals();
    if (!text.empty() && (text[0] == 'F' || text[0] == 'f')) {
      std::string digits = text.substr(1);
      if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
      if (digits == "p" || digits == "P" || digits.empty()) {
        if (!p) throw InvalidInput("field '" + text + "' needs an explicit prime");
        return prime(*p);
      }
      try {
        return prime(std::stoull(digits));
      } catch (const InvalidInput&) {
        throw;
      } catch (const std::exception&) {
      }
    }
    throw InvalidInput("unknown field '" + text + "' (expected Q or F<p>)");
  }

  bool is_rational() const { return kind == Kind::rationals; }
  std::string name() const { return is_rational() ? "Q" : "F" + std::to_string(p); }
  bool operator==(const FieldSpec&) const = default;
};

/// Calls `fn` with the concrete field object named by `spec`.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_rational()) return std::forward<Fn>(fn)(Rationals{});
  return std::forward<Fn>(fn)(PrimeField{spec.p});
}

template <class F>
FieldSpec spec_of(const F& field) {
  if constexpr (std::is_same_v<F, Rationals>) {
    (void)field;
    return FieldSpec::rationals();
  } else {
    return FieldSpec::prime(field.modulus());
  }
}

/// (-1)^k as a field element.
template <class F>
typename F::value_type sign_of(const F& field, long k) {
  return (k % 2 == 0) ? field.one() : field.neg(field.one());
}

}  // namespace mapcoh
