#include "sphred/period.hpp"

#include <algorithm>

#include "sphred/errors.hpp"

namespace sphred {

namespace {

template <class R>
int first_nonzero(const UniPoly<R>& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (!Ring<R>::is_zero(p[i])) return static_cast<int>(i);
  return -1;
}

Rational coefficient(const UniPoly<Rational>& p, int k) {
  return k >= 0 && k < static_cast<int>(p.size()) ? p[k] : Rational(0);
}

IntMat valuation_basis(const SphericalPair& pair) {
  IntMat v;
  for (const auto& a : pair.delta_h) v.push_back(a.form.coeffs);
  for (const auto& b : pair.c_h) v.push_back(b.form.coeffs);
  if (static_cast<int>(v.size()) != pair.h_rank())
    throw InternalInconsistency("Delta_H and C_H do not form a basis of the H lattice");
  return v;
}

IntVec primitive(const RatVec& x) {
  mpz_class l = 1;
  for (const auto& c : x) l = lcm(l, mpz_class(c.get_den()));
  IntVec out;
  Int g = 0;
  for (const auto& c : x) {
    Rational y = c * l;
    out.push_back(y.get_num().get_si());
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& c : out) c /= g;
  return out;
}

// q^{sum_alpha N_alpha <alpha, t>} over alpha outside theta_h.
Rational delta_inverse(const SphericalPair& pair, RootMask theta_h, const IntVec& t, const Rational& q) {
  Int e = 0;
  for (size_t i = 0; i < pair.delta_h.size(); ++i)
    if (!(theta_h & (RootMask(1) << i))) e += pair.n_exp[i] * pairing(pair.delta_h[i].form, t);
  return rational_pow(q, e);
}

}  // namespace

std::string PeriodResult::to_string() const {
  if (kind == Kind::Value) return "value " + sphred::to_string(value);
  std::string s = "pole ord_p=" + std::to_string(ord_p) + " ord_q=" + std::to_string(ord_q);
  if (!location.empty()) s += " at " + location;
  return s;
}

std::string FamilyResult::to_string() const {
  switch (kind) {
    case Kind::Value:
      return "value " + sphred::to_string(value);
    case Kind::Pole:
      return "pole ord_p=" + std::to_string(order_at_point) + " ord_q=" + std::to_string(ord_q);
    case Kind::OrderJump:
      return "order jump " + std::to_string(generic_order) + " -> " + std::to_string(order_at_point);
  }
  return "";
}

int order_at_one(const UniPoly<Rational>& taylor) { return first_nonzero(taylor); }

PeriodResult eval_at_one(const UniPoly<Rational>& Q, const UniPoly<Rational>& P) {
  UniPoly<Rational> a = taylor_at_one(P), b = taylor_at_one(Q);
  int r = first_nonzero(a);
  if (r < 0) throw ZeroDenominator("denominator vanishes identically");
  int oq = first_nonzero(b);
  PeriodResult res;
  res.ord_p = r;
  res.ord_q = oq < 0 ? r : oq;
  if (oq >= 0 && oq < r) {
    res.kind = PeriodResult::Kind::Pole;
    return res;
  }
  res.value = coefficient(b, r) / a[r];
  return res;
}

FamilyResult eval_family(const UniPoly<LaurentU>& Q, const UniPoly<LaurentU>& P, const Rational& u0) {
  if (u0 == 0) throw ZeroDenominator("u0 = 0 is outside the family");
  UniPoly<LaurentU> a = taylor_at_one(P), b = taylor_at_one(Q);
  int r = first_nonzero(a);
  if (r < 0) throw ZeroDenominator("denominator vanishes identically");
  EvalPoint x{u0};
  PeriodResult at = eval_at_one(x.apply(Q), x.apply(P));
  FamilyResult res;
  res.generic_order = r;
  res.order_at_point = at.ord_p;
  res.ord_q = at.ord_q;
  if (at.ord_p != r) {
    res.kind = FamilyResult::Kind::OrderJump;
    return res;
  }
  int oq = first_nonzero(b);
  if (oq >= 0 && oq < r) {
    res.kind = FamilyResult::Kind::Pole;
    return res;
  }
  Rational num = r < static_cast<int>(b.size()) ? x(b[r]) : Rational(0);
  res.value = num / x(a[r]);
  if (!at.is_value() || at.value != res.value)
    throw InternalInconsistency("family evaluation does not commute with u -> " + sphred::to_string(u0));
  return res;
}

Rational VolumeConfig::constant(RootMask theta_h) const {
  auto it = constants.find(theta_h);
  return it == constants.end() ? Rational(1) : it->second;
}

void VolumeConfig::validate() const {
  if (q <= 1) throw GuardViolation("q must exceed 1");
  for (const auto& [m, c] : constants)
    if (c <= 0) throw GuardViolation("volume constants must be positive");
}

VolumeConfig default_volume(const SphericalPair& pair, const Rational& q) {
  VolumeConfig cfg;
  cfg.q = q;
  if (pair.name == "triple" || pair.name == "gl2") {
    cfg.constants[0] = 1 + 1 / q;
    cfg.constants[pair.full_h_mask()] = 1;
  }
  return cfg;
}

Rational cartan_volume(const SphericalPair& pair, RootMask theta_h, const IntVec& t, const VolumeConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(t.size()) != pair.h_rank()) throw DimensionMismatch("point has the wrong dimension");
  bool inside = false;
  for (Sector s : sectors_of(pair)) inside = inside || std_cone(pair, {theta_h, s}).contains(t);
  if (!inside) throw NotInCone("point " + sphred::to_string(t) + " is not in the cone of " +
                               mask_to_string(pair.delta_h, theta_h));
  return cfg.constant(theta_h) * delta_inverse(pair, theta_h, t, cfg.q);
}

std::vector<IntVec> cone_rays(const SphericalPair& pair, const StdConeId& cone) {
  std_cone(pair, cone);
  if (pair.h_rank() == 0) return {};
  IntMat v = valuation_basis(pair);
  RatMat inv = rational_inverse(v);
  int r = pair.h_rank();
  std::vector<IntVec> rays;
  for (int j = 0; j < r; ++j) {
    Int sign = 1;
    if (j < static_cast<int>(pair.delta_h.size())) {
      if (cone.theta_h & (RootMask(1) << j)) continue;
    } else {
      if (cone.sector == Sector::Zero) continue;
      if (cone.sector == Sector::Minus) sign = -1;
    }
    IntVec e(r, 0);
    e[j] = sign;
    rays.push_back(primitive(rat_mat_vec(inv, e)));
  }
  return rays;
}

std::optional<Rational> temperedness_margin(const ToyModule<Rational>& m, const SphericalPair& pair,
                                            const Rational& q) {
  if (q <= 1) throw GuardViolation("q must exceed 1");
  Rational margin = 1;
  for (Sector s : sectors_of(pair)) {
    const auto& c = m.on(s);
    for (const auto& g : cone_rays(pair, {0, s})) {
      Rational d = delta_inverse(pair, 0, g, q);
      for (const auto& t : c.terms) {
        Rational gap = 1 - abs_value(character_value(t.chi, g)) * d;
        margin = std::min(margin, gap);
      }
    }
  }
  if (margin <= 0) return std::nullopt;
  return margin;
}

std::vector<StdConeId> all_cones(const SphericalPair& pair) {
  std::vector<StdConeId> out;
  for (RootMask m = pair.full_h_mask() + 1; m-- > 0;)
    for (Sector s : sectors_of(pair)) out.push_back({m, s});
  return out;
}

std::string cone_label(const SphericalPair& pair, const StdConeId& cone) {
  std::string s = mask_to_string(pair.delta_h, cone.theta_h);
  if (cone.sector != Sector::None) s += "/" + sector_name(cone.sector);
  return s;
}

PeriodReport assemble_period(const ToyModule<Rational>& m, const SphericalPair& pair, const VolumeConfig& cfg,
                             const std::map<StdConeId, ReductionStructure>& structures) {
  cfg.validate();
  PeriodReport rep;
  rep.total.value = 0;
  for (const auto& cone : all_cones(pair)) {
    auto sp = specialize(reduce(m, pair, cone, structures), cfg.q, pair.n_exp);
    PeriodSummand ps{cone, cfg.constant(cone.theta_h), eval_at_one(sp.Q, sp.P)};
    if (ps.result.is_value()) {
      if (rep.total.is_value()) rep.total.value += ps.constant * ps.result.value;
    } else if (rep.total.is_value()) {
      rep.total = ps.result;
      rep.total.location = cone_label(pair, cone);
    }
    rep.summands.push_back(std::move(ps));
  }
  return rep;
}

FamilyPeriodReport assemble_family_period(const ToyModule<LaurentU>& m, const SphericalPair& pair,
                                          const VolumeConfig& cfg,
                                          const std::map<StdConeId, ReductionStructure>& structures,
                                          const Rational& u0) {
  cfg.validate();
  FamilyPeriodReport rep;
  rep.total.value = 0;
  bool failed = false;
  for (const auto& cone : all_cones(pair)) {
    auto sp = specialize(reduce(m, pair, cone, structures), cfg.q, pair.n_exp);
    FamilySummand fs{cone, eval_family(sp.Q, sp.P, u0)};
    if (fs.result.kind == FamilyResult::Kind::Value) {
      if (!failed) rep.total.value += cfg.constant(cone.theta_h) * fs.result.value;
    } else if (!failed) {
      rep.total = fs.result;
      failed = true;
    }
    rep.summands.push_back(std::move(fs));
  }
  return rep;
}

Rational brute_force_period(const ToyModule<Rational>& m, const SphericalPair& pair, const VolumeConfig& cfg,
                            Int N) {
  cfg.validate();
  if (N < 0) throw GuardViolation("truncation order must be nonnegative");
  Rational sum = 0;
  for (const auto& cone : all_cones(pair)) {
    const auto& c = m.on(cone.sector);
    Rational k = cfg.constant(cone.theta_h);
    for (const auto& t : truncated_points(pair, cone, N))
      sum += c(t) * k * delta_inverse(pair, cone.theta_h, t, cfg.q);
  }
  return sum;
}

}  // namespace sphred
