#pragma once

// Random inputs and independent reference computations shared by the test
// binaries. Nothing here calls the reduction or specialization code.

#include <cmath>
#include <random>
#include <vector>

#include "sphred/period.hpp"

namespace sphred::oracle {

inline Rational random_rational(std::mt19937_64& rng, Int max_num, Int max_den, bool nonzero = true) {
  std::uniform_int_distribution<Int> num(-max_num, max_num), den(1, max_den);
  for (;;) {
    Int a = num(rng);
    if (nonzero && a == 0) continue;
    return make_rational(a, den(rng));
  }
}

// Exponent vectors of total degree <= d in r variables.
inline std::vector<IntVec> monomials_up_to(int r, int d) {
  std::vector<IntVec> out;
  IntVec e(r, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == r) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

inline LaurentPoly<Rational> random_poly(std::mt19937_64& rng, int r, int max_degree) {
  auto monos = monomials_up_to(r, max_degree);
  std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> count(1, 3);
  LaurentPoly<Rational> p;
  for (int k = count(rng); k > 0; --k) add_term(p, monos[pick(rng)], random_rational(rng, 4, 3));
  if (p.empty()) add_term(p, IntVec(r, 0), Rational(1));
  return p;
}

inline ExpPolyCoefficient<Rational> random_coefficient(std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<int> terms(1, 3), degree(0, 2);
  ExpPolyCoefficient<Rational> c;
  for (int k = terms(rng); k > 0; --k) {
    ExpTerm<Rational> t;
    t.lambda = random_rational(rng, 5, 4);
    for (int i = 0; i < r; ++i) t.chi.push_back(random_rational(rng, 3, 3));
    t.poly = random_poly(rng, r, degree(rng));
    c.terms.push_back(std::move(t));
  }
  return c;
}

inline ToyModule<Rational> random_module(std::mt19937_64& rng, const SphericalPair& pair) {
  ToyModule<Rational> m;
  m.coefficient = random_coefficient(rng, pair.h_rank());
  if (pair.has_sectors() && rng() % 2 == 0) {
    auto sectors = sectors_of(pair);
    m.sector_coefficients[sectors[rng() % sectors.size()]] = random_coefficient(rng, pair.h_rank());
  }
  return m;
}

// One-variable term lambda * x^t * p(t) for a rank-one pair, x drawn as
// k/den with |x| * scale <= bound.
inline ExpTerm<Rational> bounded_term(std::mt19937_64& rng, const Rational& scale, const Rational& bound,
                                      bool inverse, int max_degree) {
  std::uniform_int_distribution<Int> num(1, 9), den(1, 10);
  Rational x;
  do {
    x = make_rational(num(rng), den(rng));
    if (rng() % 2) x = -x;
  } while (abs_value(x) * scale > bound);
  ExpTerm<Rational> t;
  t.lambda = random_rational(rng, 3, 2);
  t.chi = {inverse ? 1 / x : x};
  std::uniform_int_distribution<int> degree(0, max_degree);
  t.poly = random_poly(rng, 1, degree(rng));
  return t;
}

// sum_{s >= 1} s^k x^s = x A_k(x) / (1 - x)^{k+1}, Eulerian numerators A_k.
inline Rational power_sum(int k, const Rational& x) {
  static const std::vector<std::vector<int>> eulerian{{1}, {1}, {1, 1}, {1, 4, 1}, {1, 11, 11, 1}};
  if (k < 0 || k >= static_cast<int>(eulerian.size())) throw std::out_of_range("degree not tabulated");
  Rational a = 0, xp = 1;
  for (int c : eulerian[k]) {
    a += c * xp;
    xp *= x;
  }
  return x * a / rational_pow(1 - x, k + 1);
}

// sum_{s >= 1} lambda * base^s * p(sign * s) for a one-variable polynomial p.
inline Rational ray_sum(const ExpTerm<Rational>& t, const Rational& base, Int sign) {
  Rational v = 0;
  for (const auto& [e, c] : t.poly) {
    int k = static_cast<int>(e[0]);
    Rational s = (sign < 0 && k % 2) ? Rational(-1) : Rational(1);
    v += c * s * power_sum(k, base);
  }
  return t.lambda * v;
}

inline Rational value_at_zero(const ExpPolyCoefficient<Rational>& c) {
  Rational v = 0;
  for (const auto& t : c.terms) {
    auto it = t.poly.find(IntVec(t.chi.size(), 0));
    if (it != t.poly.end()) v += t.lambda * it->second;
  }
  return v;
}

// Period of a rank-one module on the triple pair:
// C_empty * sum_{t >= 1} c(t) q^t + C_full * c(0).
inline Rational triple_closed_form(const ToyModule<Rational>& m, const Rational& q, const Rational& c_empty,
                                   const Rational& c_full) {
  Rational v = c_full * value_at_zero(m.coefficient);
  for (const auto& t : m.coefficient.terms) v += c_empty * ray_sum(t, t.chi[0] * q, 1);
  return v;
}

// Period on the waldspurger pair with unit volumes: the plus ray, the origin
// and the minus ray.
inline Rational waldspurger_closed_form(const ToyModule<Rational>& m) {
  Rational v = value_at_zero(m.on(Sector::Zero));
  for (const auto& t : m.on(Sector::Plus).terms) v += ray_sum(t, t.chi[0], 1);
  for (const auto& t : m.on(Sector::Minus).terms) v += ray_sum(t, 1 / t.chi[0], -1);
  return v;
}

inline double abs_diff(const Rational& a, const Rational& b) { return std::fabs(to_double(a - b)); }

}  // namespace sphred::oracle
