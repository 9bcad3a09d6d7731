#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "sphred/cone.hpp"
#include "sphred/errors.hpp"
#include "sphred/reduction.hpp"
#include "sphred/ring.hpp"

namespace sphred {

// Sparse polynomial: exponent vector -> nonzero coefficient.
template <class R>
using LaurentPoly = std::map<IntVec, R>;

template <class R>
void add_term(LaurentPoly<R>& p, const IntVec& e, const std::type_identity_t<R>& c) {
  if (Ring<R>::is_zero(c)) return;
  auto [it, inserted] = p.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (Ring<R>::is_zero(it->second)) p.erase(it);
}

template <class R>
void add_into(LaurentPoly<R>& p, const LaurentPoly<R>& q) {
  for (const auto& [e, c] : q) add_term(p, e, c);
}

template <class R>
LaurentPoly<R> poly_mul(const LaurentPoly<R>& a, const LaurentPoly<R>& b) {
  LaurentPoly<R> out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_term(out, add(ea, eb), ca * cb);
  return out;
}

// c * T^e * a
template <class R>
LaurentPoly<R> poly_shift(const LaurentPoly<R>& a, const IntVec& e, const std::type_identity_t<R>& c) {
  LaurentPoly<R> out;
  if (Ring<R>::is_zero(c)) return out;
  for (const auto& [ea, ca] : a) out.emplace(add(ea, e), R(ca * c));
  return out;
}

inline Int total_degree(const IntVec& e) {
  Int d = 0;
  for (Int x : e) d += x;
  return d;
}

// Graded-lex order of keys, as used for printing.
template <class R>
std::vector<IntVec> graded_keys(const LaurentPoly<R>& p) {
  std::vector<IntVec> keys;
  for (const auto& kv : p) keys.push_back(kv.first);
  std::stable_sort(keys.begin(), keys.end(),
                   [](const IntVec& a, const IntVec& b) { return total_degree(a) < total_degree(b); });
  return keys;
}

template <class R>
std::string poly_to_string(const LaurentPoly<R>& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& e : graded_keys(p)) {
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string c = Ring<R>::to_string(p.at(e));
    if (c.find_first_of("+ ") != std::string::npos || (c.find('-', 1) != std::string::npos)) c = "(" + c + ")";
    std::string term = mono.empty() ? c : (c == "1" ? mono : (c == "-1" ? "-" + mono : c + "*" + mono));
    if (!s.empty()) s += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else s = term;
  }
  return s;
}

template <class R>
struct ExpTerm {
  R lambda;
  std::vector<R> chi;   // character values on the H-lattice basis vectors (units)
  LaurentPoly<R> poly;  // polynomial in the lattice coordinates
  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

template <class R>
R character_value(const std::vector<R>& chi, const IntVec& t) {
  if (chi.size() != t.size()) throw DimensionMismatch("character and point dimensions differ");
  R v = Ring<R>::one();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] != 0) v *= ring_pow(chi[i], t[i]);
  return v;
}

template <class R>
R poly_value(const LaurentPoly<R>& p, const IntVec& t) {
  R v = Ring<R>::zero();
  for (const auto& [e, c] : p) {
    Rational m = 1;
    for (size_t i = 0; i < e.size(); ++i) m *= rational_pow(Rational(t[i]), e[i]);
    v += c * Ring<R>::from_rational(m);
  }
  return v;
}

template <class R>
struct ExpPolyCoefficient {
  std::vector<ExpTerm<R>> terms;

  R operator()(const IntVec& t) const {
    R v = Ring<R>::zero();
    for (const auto& term : terms) v += term.lambda * character_value(term.chi, t) * poly_value(term.poly, t);
    return v;
  }
  friend bool operator==(const ExpPolyCoefficient&, const ExpPolyCoefficient&) = default;
};

template <class R>
R coeff_eval(const ExpPolyCoefficient<R>& c, const IntVec& t) {
  return c(t);
}

// A coefficient function, optionally replaced on individual sectors.
template <class R>
struct ToyModule {
  ExpPolyCoefficient<R> coefficient;
  std::map<Sector, ExpPolyCoefficient<R>> sector_coefficients;

  const ExpPolyCoefficient<R>& on(Sector s) const {
    auto it = sector_coefficients.find(s);
    return it == sector_coefficients.end() ? coefficient : it->second;
  }
  friend bool operator==(const ToyModule&, const ToyModule&) = default;
};

template <class R>
ExpPolyCoefficient<Rational> evaluate_coefficient(const ExpPolyCoefficient<R>& c, const Rational& u0) {
  ExpPolyCoefficient<Rational> out;
  for (const auto& t : c.terms) {
    ExpTerm<Rational> e;
    e.lambda = Ring<R>::evaluate(t.lambda, u0);
    for (const auto& x : t.chi) e.chi.push_back(Ring<R>::evaluate(x, u0));
    for (const auto& [k, v] : t.poly) add_term(e.poly, k, Ring<R>::evaluate(v, u0));
    out.terms.push_back(std::move(e));
  }
  return out;
}

template <class R>
ToyModule<Rational> evaluate_module(const ToyModule<R>& m, const Rational& u0) {
  ToyModule<Rational> out;
  out.coefficient = evaluate_coefficient(m.coefficient, u0);
  for (const auto& [s, c] : m.sector_coefficients) out.sector_coefficients[s] = evaluate_coefficient(c, u0);
  return out;
}

template <class R>
void check_units(const ExpPolyCoefficient<R>& c) {
  for (const auto& t : c.terms)
    for (const auto& x : t.chi)
      if (!Ring<R>::is_unit(x)) throw NonUnitEigenvalue("character value " + Ring<R>::to_string(x) + " is not a unit");
}

// Coefficients a_0..a_N of P(X) = sum a_i X^i.
template <class R>
struct AnnihilatorPoly {
  std::vector<R> a;

  int degree() const { return static_cast<int>(a.size()) - 1; }
  // Descending powers, e.g. "X^2 - 2*X + 1".
  std::string to_string() const {
    std::string s;
    for (size_t k = a.size(); k-- > 0;) {
      if (Ring<R>::is_zero(a[k])) continue;
      LaurentPoly<R> mono{{IntVec{static_cast<Int>(k)}, a[k]}};
      std::string t = poly_to_string(mono, {"X"});
      if (s.empty())
        s = t;
      else
        s += t[0] == '-' ? " - " + t.substr(1) : " + " + t;
    }
    return s.empty() ? "0" : s;
  }
  friend bool operator==(const AnnihilatorPoly&, const AnnihilatorPoly&) = default;
};

template <class R>
int poly_degree(const LaurentPoly<R>& p) {
  int d = 0;
  for (const auto& kv : p) d = std::max<int>(d, static_cast<int>(total_degree(kv.first)));
  return d;
}

// prod_j (X - chi_j(s))^(1 + deg p_j)
template <class R>
AnnihilatorPoly<R> annihilator(const ExpPolyCoefficient<R>& c, const IntVec& s) {
  check_units(c);
  std::vector<R> p{Ring<R>::one()};
  for (const auto& t : c.terms) {
    R root = character_value(t.chi, s);
    if (!Ring<R>::is_unit(root)) throw NonUnitEigenvalue("eigenvalue " + Ring<R>::to_string(root) + " is not a unit");
    for (int k = 0; k <= poly_degree(t.poly); ++k) {
      std::vector<R> q(p.size() + 1, Ring<R>::zero());
      for (size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= p[i] * root;
      }
      p = std::move(q);
    }
  }
  return {p};
}

template <class R>
AnnihilatorPoly<R> annihilator(const ToyModule<R>& m, const SphericalPair& pair, Sector sector, const Triple& t) {
  if (static_cast<int>(t.s.size()) != pair.h_rank()) throw DimensionMismatch("triple shift has the wrong dimension");
  return annihilator(m.on(sector), t.s);
}

template <class R>
struct DenomFactor {
  AnnihilatorPoly<R> P;
  IntVec shift;  // |v(s)|

  // T^{N|v(s)|} P(T^{-|v(s)|}) = sum_i a_i T^{(N-i)|v(s)|}
  LaurentPoly<R> polynomial() const {
    LaurentPoly<R> out;
    int N = P.degree();
    for (int i = 0; i <= N; ++i) add_term(out, scale(shift, N - i), P.a[i]);
    return out;
  }
  friend bool operator==(const DenomFactor&, const DenomFactor&) = default;
};

template <class R>
struct RationalSeries {
  LaurentPoly<R> numerator;
  IntVec monomial;  // M(T)
  std::vector<DenomFactor<R>> factors;

  std::string to_string(const std::vector<std::string>& vars) const {
    std::string s = "(" + poly_to_string(numerator, vars) + ")";
    if (!is_zero(monomial)) s += " / " + poly_to_string(LaurentPoly<R>{{monomial, Ring<R>::one()}}, vars);
    for (const auto& f : factors) s += " / (" + poly_to_string(f.polynomial(), vars) + ")";
    return s;
  }
};

inline IntVec abs_v(const SphericalPair& pair, const IntVec& x) {
  IntVec v = v_coordinates(pair, x);
  for (auto& c : v) c = c < 0 ? -c : c;
  return v;
}

inline std::vector<std::string> series_variables(const SphericalPair& pair) {
  std::vector<std::string> out;
  for (const auto& a : pair.delta_h) out.push_back("T_" + a.name);
  for (const auto& b : pair.c_h) out.push_back("T_" + b.name);
  return out;
}

// Cone points with sum |v(t)| <= N.
inline std::vector<IntVec> truncated_points(const SphericalPair& pair, const StdConeId& cone, Int N) {
  ConstraintSet cs = std_cone(pair, cone);
  IntVec w(pair.h_rank(), 0);
  for (const auto& a : pair.delta_h) w = add(w, a.form.coeffs);
  if (pair.has_sectors()) {
    Int sign = cone.sector == Sector::Minus ? -1 : 1;
    w = add(w, scale(pair.c_h[0].form.coeffs, sign));
  }
  cs.constraints.push_back({LinearForm{w}, Relation::LE, N});
  return enumerate_points(cs);
}

// Brute-force series: sum of c(t) T^{|v(t)|} over cone points of total degree <= N.
template <class R>
LaurentPoly<R> truncate(const ToyModule<R>& m, const SphericalPair& pair, const StdConeId& cone, Int N) {
  if (N < 0) throw GuardViolation("truncation order must be nonnegative");
  const auto& c = m.on(cone.sector);
  LaurentPoly<R> out;
  for (const auto& t : truncated_points(pair, cone, N)) add_term(out, abs_v(pair, t), c(t));
  return out;
}

inline Rational binomial(Int n, Int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

template <class R>
class Reducer {
 public:
  Reducer(const SphericalPair& pair, const std::map<StdConeId, ReductionStructure>& structures,
          const ExpPolyCoefficient<R>& c)
      : pair_(pair), structures_(structures), coef_(c) {
    check_units(c);
  }

  RationalSeries<R> series(const StdConeId& cone) {
    RationalSeries<R> rs;
    rs.monomial = IntVec(pair_.h_rank(), 0);
    for (size_t j = 0; j < coef_.terms.size(); ++j) {
      const auto& term = coef_.terms[j];
      for (const auto& [m, c] : term.poly) add_into(rs.numerator, poly_shift(num(cone, j, m), zero(), term.lambda * c));
    }
    for (const auto& L : data(cone).set) rs.factors.push_back(data(L).factor);
    return rs;
  }

 private:
  struct ConeData {
    bool finite = false;
    std::vector<IntVec> points;
    std::set<StdConeId> set;  // cones whose factors form the denominator
    const StructureEntry* entry = nullptr;
    DenomFactor<R> factor;
    IntVec abs_vs;
  };

  IntVec zero() const { return IntVec(pair_.h_rank(), 0); }

  const ConeData& data(const StdConeId& cone) {
    auto it = data_.find(cone);
    if (it != data_.end()) return it->second;
    ConeData d;
    auto st = structures_.find(cone);
    if (st != structures_.end() && !st->second.entries.empty()) {
      d.entry = &st->second.entries.front();
      d.factor = {annihilator(coef_, d.entry->triple.s), abs_v(pair_, d.entry->triple.s)};
      d.abs_vs = d.factor.shift;
      d.set.insert(cone);
      for (const auto& piece : d.entry->tmpl.instantiate(d.factor.P.degree())) {
        const ConeData& b = data(piece.body);
        d.set.insert(b.set.begin(), b.set.end());
      }
    } else {
      ConstraintSet cs = std_cone(pair_, cone);
      if (!is_finite(cs))
        throw MissingStructure("no reduction structure for the infinite cone " +
                               mask_to_string(pair_.delta_h, cone.theta_h) + "/" + sector_name(cone.sector));
      d.finite = true;
      d.points = enumerate_points(cs);
    }
    return data_.emplace(cone, std::move(d)).first->second;
  }

  const LaurentPoly<R>& complement(const StdConeId& cone, const StdConeId& body) {
    auto key = std::make_pair(cone, body);
    auto it = compl_.find(key);
    if (it != compl_.end()) return it->second;
    LaurentPoly<R> p{{zero(), Ring<R>::one()}};
    const auto& bset = data(body).set;
    for (const auto& L : data(cone).set)
      if (!(L == cone) && !bset.count(L)) p = poly_mul(p, data(L).factor.polynomial());
    return compl_.emplace(key, std::move(p)).first->second;
  }

  // Numerator of the series of y -> chi_j(y) y^m over the cone.
  const LaurentPoly<R>& num(const StdConeId& cone, size_t j, const IntVec& m) {
    auto key = std::make_tuple(cone, j, m);
    auto it = num_.find(key);
    if (it != num_.end()) return it->second;
    const ConeData& d = data(cone);
    const auto& chi = coef_.terms[j].chi;
    LaurentPoly<R> out;
    if (d.finite) {
      for (const auto& y : d.points) {
        Rational mono = 1;
        for (size_t i = 0; i < y.size(); ++i) mono *= rational_pow(Rational(y[i]), m[i]);
        add_term(out, abs_v(pair_, y), character_value(chi, y) * Ring<R>::from_rational(mono));
      }
    } else {
      const auto& P = d.factor.P;
      int N = P.degree();
      std::vector<IntVec> lower = sub_multi_indices(m);
      for (int i = 1; i <= N; ++i) {
        if (Ring<R>::is_zero(P.a[i])) continue;
        for (const auto& piece : d.entry->tmpl.instantiate(i)) {
          const IntVec& t = piece.shift;
          R scale_t = P.a[i] * character_value(chi, t);
          IntVec e = add(scale(d.abs_vs, N - i), abs_v(pair_, t));
          const LaurentPoly<R>& comp = complement(cone, piece.body);
          for (const auto& mp : lower) {
            Rational b = 1;
            for (size_t k = 0; k < m.size(); ++k) b *= binomial(m[k], mp[k]) * rational_pow(Rational(t[k]), m[k] - mp[k]);
            if (b == 0) continue;
            LaurentPoly<R> part = poly_mul(num(piece.body, j, mp), comp);
            add_into(out, poly_shift(part, e, scale_t * Ring<R>::from_rational(b)));
          }
        }
      }
    }
    return num_.emplace(key, std::move(out)).first->second;
  }

  static std::vector<IntVec> sub_multi_indices(const IntVec& m) {
    std::vector<IntVec> out{IntVec()};
    for (Int mk : m) {
      std::vector<IntVec> next;
      for (const auto& p : out)
        for (Int k = 0; k <= mk; ++k) {
          IntVec q = p;
          q.push_back(k);
          next.push_back(std::move(q));
        }
      out = std::move(next);
    }
    return out;
  }

  const SphericalPair& pair_;
  const std::map<StdConeId, ReductionStructure>& structures_;
  const ExpPolyCoefficient<R>& coef_;
  std::map<StdConeId, ConeData> data_;
  std::map<std::pair<StdConeId, StdConeId>, LaurentPoly<R>> compl_;
  std::map<std::tuple<StdConeId, size_t, IntVec>, LaurentPoly<R>> num_;
};

template <class R>
RationalSeries<R> reduce(const ToyModule<R>& m, const SphericalPair& pair, const StdConeId& cone,
                         const std::map<StdConeId, ReductionStructure>& structures) {
  std_cone(pair, cone);  // validates the cone id
  Reducer<R> red(pair, structures, m.on(cone.sector));
  return red.series(cone);
}

// Power-series expansion of rs, truncated at total degree N.
template <class R>
LaurentPoly<R> expand(const RationalSeries<R>& rs, Int N) {
  if (N < 0) throw GuardViolation("expansion order must be nonnegative");
  size_t r = rs.monomial.size();
  double cells = 1;
  for (size_t i = 0; i < r; ++i) cells *= static_cast<double>(N + 1);
  if (cells > 5e6) throw GuardViolation("expansion grid too large");
  size_t size = static_cast<size_t>(cells);
  auto index = [&](const IntVec& e) {
    size_t k = 0;
    for (size_t i = 0; i < r; ++i) k = k * (N + 1) + static_cast<size_t>(e[i]);
    return k;
  };
  std::vector<IntVec> grid;  // all exponents of total degree <= N, lexicographic
  {
    IntVec e(r, 0);
    auto rec = [&](auto&& self, size_t i, Int left) -> void {
      if (i == r) {
        grid.push_back(e);
        return;
      }
      for (Int k = 0; k <= left; ++k) {
        e[i] = k;
        self(self, i + 1, left - k);
      }
      e[i] = 0;
    };
    rec(rec, 0, N);
  }
  std::vector<R> g(size, Ring<R>::zero());
  for (const auto& [e, c] : rs.numerator) {
    IntVec f = sub(e, rs.monomial);
    for (Int x : f)
      if (x < 0) throw InternalInconsistency("numerator not divisible by the monomial");
    if (total_degree(f) <= N) g[index(f)] += c;
  }
  for (const auto& factor : rs.factors) {
    LaurentPoly<R> fp = factor.polynomial();
    IntVec zero(r, 0);
    auto c0 = fp.find(zero);
    if (c0 == fp.end() || !Ring<R>::is_unit(c0->second))
      throw InternalInconsistency("denominator factor without a unit constant term");
    R inv = Ring<R>::unit_inverse(c0->second);
    std::vector<std::pair<IntVec, R>> rest;
    for (const auto& [e, c] : fp)
      if (e != zero) rest.emplace_back(e, c);
    for (const auto& e : grid) {
      R v = g[index(e)];
      for (const auto& [d, c] : rest) {
        bool ok = true;
        for (size_t i = 0; i < r && ok; ++i) ok = e[i] >= d[i];
        if (!ok) continue;
        const R& prev = g[index(sub(e, d))];
        if (!Ring<R>::is_zero(prev)) v -= c * prev;
      }
      if (!Ring<R>::is_zero(v)) v *= inv;
      g[index(e)] = v;
    }
  }
  LaurentPoly<R> out;
  for (const auto& e : grid) add_term(out, e, g[index(e)]);
  return out;
}

// One-variable polynomial, dense coefficients from degree 0.
template <class R>
using UniPoly = std::vector<R>;

template <class R>
UniPoly<R> uni_mul(const UniPoly<R>& a, const UniPoly<R>& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly<R> out(a.size() + b.size() - 1, Ring<R>::zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class R>
void uni_trim(UniPoly<R>& p) {
  while (!p.empty() && Ring<R>::is_zero(p.back())) p.pop_back();
}

template <class R>
struct Specialized {
  UniPoly<R> Q;
  UniPoly<R> P;
};

// T_alpha -> q^{N_alpha} S, T_beta -> S.
template <class R>
UniPoly<R> specialize_poly(const LaurentPoly<R>& p, const Rational& q, const std::vector<Int>& n_exp) {
  UniPoly<R> out;
  for (const auto& [e, c] : p) {
    Int deg = total_degree(e);
    Rational w = 1;
    for (size_t i = 0; i < n_exp.size(); ++i) w *= rational_pow(q, n_exp[i] * e[i]);
    if (static_cast<Int>(out.size()) <= deg) out.resize(deg + 1, Ring<R>::zero());
    out[deg] += c * Ring<R>::from_rational(w);
  }
  uni_trim(out);
  return out;
}

template <class R>
Specialized<R> specialize(const RationalSeries<R>& rs, const Rational& q, const std::vector<Int>& n_exp) {
  Specialized<R> s;
  s.Q = specialize_poly(rs.numerator, q, n_exp);
  s.P = specialize_poly(LaurentPoly<R>{{rs.monomial, Ring<R>::one()}}, q, n_exp);
  for (const auto& f : rs.factors) s.P = uni_mul(s.P, specialize_poly(f.polynomial(), q, n_exp));
  return s;
}

// Taylor expansion of Q/P in S up to order K (P(0) must be a unit).
template <class R>
UniPoly<R> uni_expand(const Specialized<R>& sp, int K) {
  if (sp.P.empty() || !Ring<R>::is_unit(sp.P[0])) throw ZeroDenominator("P(0) is not a unit");
  R inv = Ring<R>::unit_inverse(sp.P[0]);
  UniPoly<R> g(K + 1, Ring<R>::zero());
  for (int k = 0; k <= K; ++k) {
    R v = k < static_cast<int>(sp.Q.size()) ? sp.Q[k] : Ring<R>::zero();
    for (int i = 1; i <= k && i < static_cast<int>(sp.P.size()); ++i) v -= sp.P[i] * g[k - i];
    g[k] = v * inv;
  }
  return g;
}

// Coefficients of p(1 + e) in e.
template <class R>
UniPoly<R> taylor_at_one(const UniPoly<R>& p) {
  UniPoly<R> out(p.size(), Ring<R>::zero());
  for (size_t n = 0; n < p.size(); ++n)
    for (size_t k = 0; k <= n; ++k) out[k] += p[n] * Ring<R>::from_rational(binomial(n, k));
  return out;
}

template <class R>
std::string uni_to_string(const UniPoly<R>& p, const std::string& var = "S") {
  LaurentPoly<R> lp;
  for (size_t i = 0; i < p.size(); ++i) add_term(lp, IntVec{static_cast<Int>(i)}, p[i]);
  return poly_to_string(lp, {var});
}

}  // namespace sphred
