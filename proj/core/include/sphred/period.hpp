#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphred/series.hpp"

namespace sphred {

// Ring morphism to the rationals: identity on Q, u -> u0 on Q[u, 1/u].
struct EvalPoint {
  std::optional<Rational> u0;

  template <class R>
  Rational operator()(const R& x) const {
    return Ring<R>::evaluate(x, u0.value_or(Rational(1)));
  }
  template <class R>
  UniPoly<Rational> apply(const UniPoly<R>& p) const {
    UniPoly<Rational> out;
    for (const auto& c : p) out.push_back((*this)(c));
    uni_trim(out);
    return out;
  }
};

struct PeriodResult {
  enum class Kind { Value, Pole };
  Kind kind = Kind::Value;
  Rational value;
  int ord_p = 0;
  int ord_q = 0;
  std::string location;  // cone of the offending summand, when assembled

  bool is_value() const { return kind == Kind::Value; }
  std::string to_string() const;
};

// Order of vanishing at S = 1 (-1 for the zero polynomial) and Taylor coefficients there.
int order_at_one(const UniPoly<Rational>& taylor);

PeriodResult eval_at_one(const UniPoly<Rational>& Q, const UniPoly<Rational>& P);

template <class R>
PeriodResult eval_at_one(const UniPoly<R>& Q, const UniPoly<R>& P, const EvalPoint& x) {
  return eval_at_one(x.apply(Q), x.apply(P));
}

// Evaluation of a family quotient Q/P over Q[u, 1/u] at S = 1, compared with
// evaluating at u0 first.
struct FamilyResult {
  enum class Kind { Value, Pole, OrderJump };
  Kind kind = Kind::Value;
  Rational value;
  int generic_order = 0;   // order of P at S = 1 over Q[u, 1/u]
  int order_at_point = 0;  // order of P|u0 at S = 1
  int ord_q = 0;

  std::string to_string() const;
};

FamilyResult eval_family(const UniPoly<LaurentU>& Q, const UniPoly<LaurentU>& P, const Rational& u0);

struct VolumeConfig {
  Rational q = 3;
  std::map<RootMask, Rational> constants;  // C_{Theta_H}; missing entries are 1

  Rational constant(RootMask theta_h) const;
  void validate() const;
};

// C_empty = 1 + 1/q and C_Delta = 1 on the triple and gl2 pairs, 1 elsewhere.
VolumeConfig default_volume(const SphericalPair& pair, const Rational& q);

// C_{Theta_H} * prod_{alpha not in Theta_H} q^{N_alpha <alpha, t>}
Rational cartan_volume(const SphericalPair& pair, RootMask theta_h, const IntVec& t, const VolumeConfig& cfg);

// Extreme rays of the homogenized cone, as primitive lattice vectors.
std::vector<IntVec> cone_rays(const SphericalPair& pair, const StdConeId& cone);

// min over sectors, rays g and terms j of 1 - |chi_j(g)| q^{sum N_alpha <alpha, g>};
// empty when some value is not positive.
std::optional<Rational> temperedness_margin(const ToyModule<Rational>& m, const SphericalPair& pair,
                                            const Rational& q);

struct PeriodSummand {
  StdConeId cone;
  Rational constant;
  PeriodResult result;
};

struct PeriodReport {
  PeriodResult total;
  std::vector<PeriodSummand> summands;
};

// All (Theta_H, sector) cones of the pair, Theta_H by descending mask.
std::vector<StdConeId> all_cones(const SphericalPair& pair);

std::string cone_label(const SphericalPair& pair, const StdConeId& cone);

PeriodReport assemble_period(const ToyModule<Rational>& m, const SphericalPair& pair, const VolumeConfig& cfg,
                             const std::map<StdConeId, ReductionStructure>& structures);

struct FamilySummand {
  StdConeId cone;
  FamilyResult result;
};

struct FamilyPeriodReport {
  FamilyResult total;
  std::vector<FamilySummand> summands;
};

// Period of a family module: reduce and specialize over Q[u, 1/u], then evaluate at u0.
FamilyPeriodReport assemble_family_period(const ToyModule<LaurentU>& m, const SphericalPair& pair,
                                          const VolumeConfig& cfg,
                                          const std::map<StdConeId, ReductionStructure>& structures,
                                          const Rational& u0);

// Partial sum of c(t) C_{Theta_H} delta^{-1}(t) over cone points with sum |v(t)| <= N.
Rational brute_force_period(const ToyModule<Rational>& m, const SphericalPair& pair, const VolumeConfig& cfg, Int N);

}  // namespace sphred
