#pragma once

#include <map>
#include <string>

#include "sphred/numeric.hpp"

namespace sphred {

// Laurent polynomials in one variable u over the rationals. Used as the family
// coefficient ring, where monomials c*u^k are the units.
class LaurentU {
 public:
  LaurentU() = default;
  LaurentU(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentU(int c) : LaurentU(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static LaurentU monomial(const Rational& c, int power);
  static LaurentU u() { return monomial(1, 1); }

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_unit() const { return terms_.size() == 1; }
  LaurentU unit_inverse() const;
  Rational evaluate(const Rational& u0) const;
  std::string to_string() const;
  // Accepts sums of terms "c", "c*u", "c*u^k", "u^k", "-u".
  static LaurentU parse(const std::string& text);

  LaurentU operator-() const;
  LaurentU& operator+=(const LaurentU& o);
  LaurentU& operator-=(const LaurentU& o);
  LaurentU& operator*=(const LaurentU& o);
  friend LaurentU operator+(LaurentU a, const LaurentU& b) { return a += b; }
  friend LaurentU operator-(LaurentU a, const LaurentU& b) { return a -= b; }
  friend LaurentU operator*(LaurentU a, const LaurentU& b) { return a *= b; }
  friend bool operator==(const LaurentU& a, const LaurentU& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentU& a, const LaurentU& b) { return !(a == b); }

 private:
  void add_term(int power, const Rational& c);
  std::map<int, Rational> terms_;
};

// Uniform interface over the two coefficient rings.
template <class R>
struct Ring;

template <>
struct Ring<Rational> {
  static constexpr const char* name = "rational";
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static Rational from_rational(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_unit(const Rational& x) { return x != 0; }
  static Rational unit_inverse(const Rational& x) { return 1 / x; }
  static Rational evaluate(const Rational& x, const Rational&) { return x; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
  static Rational parse(const std::string& text) { return parse_rational(text); }
};

template <>
struct Ring<LaurentU> {
  static constexpr const char* name = "laurent-u";
  static LaurentU zero() { return {}; }
  static LaurentU one() { return LaurentU(1); }
  static LaurentU from_rational(const Rational& x) { return LaurentU(x); }
  static bool is_zero(const LaurentU& x) { return x.is_zero(); }
  static bool is_unit(const LaurentU& x) { return x.is_unit(); }
  static LaurentU unit_inverse(const LaurentU& x) { return x.unit_inverse(); }
  static Rational evaluate(const LaurentU& x, const Rational& u0) { return x.evaluate(u0); }
  static std::string to_string(const LaurentU& x) { return x.to_string(); }
  static LaurentU parse(const std::string& text) { return LaurentU::parse(text); }
};

template <class R>
R ring_pow(const R& base, Int exponent) {
  if (exponent < 0) return ring_pow(Ring<R>::unit_inverse(base), -exponent);
  R result = Ring<R>::one();
  R b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

}  // namespace sphred
