#include "sphred/cone.hpp"

#include <stdexcept>

#include "sphred/errors.hpp"

namespace sphred {

namespace {

void check_dim(const ConstraintSet& cs, const IntVec& x) {
  if (static_cast<int>(x.size()) != cs.rank())
    throw DimensionMismatch("point of dimension " + std::to_string(x.size()) + " on a lattice of rank " +
                            std::to_string(cs.rank()));
}

void split(const ConstraintSet& cs, std::vector<fm::Ineq>& ineqs, std::vector<fm::Ineq>& eqs) {
  for (const auto& c : cs.constraints) {
    switch (c.relation) {
      case Relation::GE:
        ineqs.push_back({c.form.coeffs, c.bound});
        break;
      case Relation::LE:
        ineqs.push_back({scale(c.form.coeffs, -1), -c.bound});
        break;
      case Relation::EQ:
        eqs.push_back({c.form.coeffs, c.bound});
        break;
    }
  }
}

std::vector<fm::Ineq> as_inequalities(const ConstraintSet& cs) {
  std::vector<fm::Ineq> ineqs, eqs;
  split(cs, ineqs, eqs);
  for (const auto& q : eqs) {
    ineqs.push_back(q);
    ineqs.push_back({scale(q.a, -1), -q.b});
  }
  return ineqs;
}

Constraint make(const LinearForm& f, Relation r, Int b) { return Constraint{f, r, b}; }

}  // namespace

bool ConstraintSet::contains(const IntVec& x) const {
  check_dim(*this, x);
  for (const auto& c : constraints) {
    Int v = pairing(c.form, x);
    switch (c.relation) {
      case Relation::GE:
        if (v < c.bound) return false;
        break;
      case Relation::LE:
        if (v > c.bound) return false;
        break;
      case Relation::EQ:
        if (v != c.bound) return false;
        break;
    }
  }
  return true;
}

ConstraintSet ConstraintSet::conjoin(const ConstraintSet& other) const {
  if (other.rank() != rank()) throw DimensionMismatch("conjunction of sets on different lattices");
  ConstraintSet r = *this;
  r.constraints.insert(r.constraints.end(), other.constraints.begin(), other.constraints.end());
  return r;
}

ConstraintSet ConstraintSet::with(const Constraint& c) const {
  if (c.form.dim() != rank()) throw DimensionMismatch("constraint dimension does not match the lattice");
  ConstraintSet r = *this;
  r.constraints.push_back(c);
  return r;
}

std::string ConstraintSet::to_string() const {
  std::string s = "{";
  for (size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (i) s += ", ";
    std::string lhs;
    for (int j = 0; j < rank(); ++j) {
      Int a = c.form.coeffs[j];
      if (a == 0) continue;
      if (!lhs.empty()) lhs += a > 0 ? "+" : "-";
      else if (a < 0) lhs += "-";
      Int m = a < 0 ? -a : a;
      if (m != 1) lhs += std::to_string(m) + "*";
      lhs += lattice.labels[j];
    }
    if (lhs.empty()) lhs = "0";
    const char* rel = c.relation == Relation::GE ? " >= " : (c.relation == Relation::LE ? " <= " : " = ");
    s += lhs + rel + std::to_string(c.bound);
  }
  return s + "}";
}

bool SemilinearFormula::contains(const IntVec& x) const {
  for (const auto& d : disjuncts)
    if (d.contains(x)) return true;
  return false;
}

std::string sector_name(Sector s) {
  switch (s) {
    case Sector::Plus:
      return "plus";
    case Sector::Zero:
      return "zero";
    case Sector::Minus:
      return "minus";
    case Sector::None:
      return "none";
  }
  return "none";
}

Sector parse_sector(const std::string& text) {
  if (text == "plus" || text == "+") return Sector::Plus;
  if (text == "zero" || text == "0") return Sector::Zero;
  if (text == "minus" || text == "-") return Sector::Minus;
  if (text == "none") return Sector::None;
  throw std::invalid_argument("unknown sector '" + text + "' (valid: plus, zero, minus, none)");
}

std::vector<Sector> sectors_of(const SphericalPair& pair) {
  if (pair.has_sectors()) return {Sector::Plus, Sector::Zero, Sector::Minus};
  return {Sector::None};
}

std::string Verdict::kind_name() const {
  switch (kind) {
    case Kind::Pass:
      return "pass";
    case Kind::FailCover:
      return "fail_cover";
    case Kind::FailDisjoint:
      return "fail_disjoint";
    case Kind::FailContainment:
      return "fail_containment";
    case Kind::FailFinite:
      return "fail_finite";
    case Kind::FailMembership:
      return "fail_membership";
    case Kind::FailTemplate:
      return "fail_template";
    case Kind::FailMinimality:
      return "fail_minimality";
    case Kind::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string Verdict::to_string() const {
  std::string s = kind_name();
  if (!witness.empty()) s += " witness=" + sphred::to_string(witness);
  if (piece_j >= 0)
    s += " pieces=" + std::to_string(piece_i) + "," + std::to_string(piece_j);
  else if (piece_i >= 0)
    s += " piece=" + std::to_string(piece_i);
  if (!reason.empty()) s += " (" + reason + ")";
  return s;
}

ConstraintSet std_cone(const SphericalPair& pair, const StdConeId& id) {
  if ((id.sector == Sector::None) == pair.has_sectors())
    throw SectorMismatch("sector " + sector_name(id.sector) + " does not fit pair " + pair.name);
  if (id.theta_h & ~pair.full_h_mask()) throw DimensionMismatch("theta_h is not a subset of Delta_H");
  ConstraintSet cs;
  cs.lattice = pair.h_lattice;
  for (size_t i = 0; i < pair.delta_h.size(); ++i) {
    bool in_theta = id.theta_h & (RootMask(1) << i);
    cs.constraints.push_back(make(pair.delta_h[i].form, in_theta ? Relation::EQ : Relation::GE, in_theta ? 0 : 1));
  }
  if (pair.has_sectors()) {
    const LinearForm& beta = pair.c_h[0].form;
    switch (id.sector) {
      case Sector::Plus:
        cs.constraints.push_back(make(beta, Relation::GE, 1));
        break;
      case Sector::Zero:
        cs.constraints.push_back(make(beta, Relation::EQ, 0));
        break;
      case Sector::Minus:
        cs.constraints.push_back(make(beta, Relation::LE, -1));
        break;
      case Sector::None:
        break;
    }
  }
  return cs;
}

ConstraintSet translate(const ConstraintSet& cs, const IntVec& t) {
  check_dim(cs, t);
  ConstraintSet r = cs;
  for (auto& c : r.constraints) c.bound = add_checked(c.bound, pairing(c.form, t));
  return r;
}

std::vector<Constraint> negate(const Constraint& c) {
  switch (c.relation) {
    case Relation::GE:
      return {make(c.form, Relation::LE, c.bound - 1)};
    case Relation::LE:
      return {make(c.form, Relation::GE, c.bound + 1)};
    case Relation::EQ:
      return {make(c.form, Relation::LE, c.bound - 1), make(c.form, Relation::GE, c.bound + 1)};
  }
  return {};
}

SemilinearFormula difference_formula(const ConstraintSet& cs, const ConstraintSet& shifted) {
  if (cs.rank() != shifted.rank()) throw DimensionMismatch("difference of sets on different lattices");
  SemilinearFormula f;
  ConstraintSet prefix = cs;
  for (const auto& c : shifted.constraints) {
    for (const auto& n : negate(c)) f.disjuncts.push_back(prefix.with(n));
    prefix = prefix.with(c);
  }
  if (f.disjuncts.empty()) {
    // shifted is the whole lattice: the difference is empty
    ConstraintSet empty = cs;
    empty.constraints.push_back(make(LinearForm{IntVec(cs.rank(), 0)}, Relation::GE, 1));
    f.disjuncts.push_back(empty);
  }
  return f;
}

ConstraintSet recession(const ConstraintSet& cs) {
  ConstraintSet r = cs;
  for (auto& c : r.constraints) c.bound = 0;
  return r;
}

Feasibility integer_feasible(const ConstraintSet& cs, const fm::SearchLimits& limits) {
  if (cs.rank() > 6) throw GuardViolation("integer feasibility is limited to rank 6");
  std::vector<fm::Ineq> ineqs, eqs;
  split(cs, ineqs, eqs);
  fm::SearchResult r = fm::integer_search(ineqs, eqs, cs.rank(), limits);
  Feasibility f{r.status, r.point, r.reason};
  if (f.found() && !cs.contains(f.point)) throw InternalInconsistency("feasibility witness fails membership");
  return f;
}

std::optional<IntVec> recession_direction(const ConstraintSet& cs) {
  ConstraintSet rec = recession(cs);
  int n = cs.rank();
  std::vector<fm::Ineq> base = as_inequalities(rec);
  for (int i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      std::vector<fm::Ineq> sys = base;
      IntVec e(n, 0);
      e[i] = sign;
      sys.push_back({e, 1});
      auto pt = fm::rational_point(sys, n);
      if (!pt) continue;
      mpz_class l = 1;
      for (const auto& v : *pt) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
      IntVec d(n);
      for (int j = 0; j < n; ++j) {
        Rational s = (*pt)[j] * Rational(l);
        d[j] = s.get_num().get_si();
      }
      Int g = 0;
      for (Int x : d) g = gcd(g, x);
      if (g > 1)
        for (auto& x : d) x /= g;
      if (!rec.contains(d) || is_zero(d)) throw InternalInconsistency("recession direction check failed");
      return d;
    }
  return std::nullopt;
}

bool is_finite(const ConstraintSet& cs) {
  if (cs.rank() > 6) throw GuardViolation("finiteness test is limited to rank 6");
  if (!recession_direction(cs)) return true;
  return integer_feasible(cs).infeasible();
}

std::vector<IntVec> enumerate_points(const ConstraintSet& cs) {
  return fm::enumerate_bounded(as_inequalities(cs), cs.rank());
}

std::vector<IntVec> enumerate_box(const ConstraintSet& cs, Int box) {
  if (cs.rank() > 6) throw GuardViolation("enumeration is limited to rank 6");
  std::vector<fm::Ineq> sys = as_inequalities(cs);
  for (int i = 0; i < cs.rank(); ++i) {
    IntVec e(cs.rank(), 0);
    e[i] = 1;
    sys.push_back({e, -box});
    e[i] = -1;
    sys.push_back({e, -box});
  }
  return fm::enumerate_bounded(sys, cs.rank());
}

std::vector<ConstraintSet> subtract(const ConstraintSet& lhs, const ConstraintSet& piece, Feasibility& status) {
  Feasibility overlap = integer_feasible(lhs.conjoin(piece));
  if (overlap.infeasible()) return {lhs};
  if (!overlap.found()) status = overlap;
  std::vector<ConstraintSet> out;
  ConstraintSet prefix = lhs;
  for (const auto& c : piece.constraints) {
    for (const auto& n : negate(c)) {
      ConstraintSet cand = prefix.with(n);
      Feasibility f = integer_feasible(cand);
      if (f.infeasible()) continue;
      if (!f.found()) status = f;
      out.push_back(std::move(cand));
    }
    prefix = prefix.with(c);
  }
  return out;
}

ConstraintSet piece_set(const SphericalPair& pair, const ConePiece& piece) {
  return translate(std_cone(pair, piece.body), piece.shift);
}

namespace {

// Subtracts every set in `minus` from `start`; returns the first remaining
// point, or reports an undecided remainder through `status`.
std::optional<IntVec> remainder_point(const ConstraintSet& start, const std::vector<ConstraintSet>& minus,
                                      Feasibility& status) {
  Feasibility f0 = integer_feasible(start);
  if (f0.infeasible()) return std::nullopt;
  std::vector<ConstraintSet> rem{start};
  for (const auto& m : minus) {
    std::vector<ConstraintSet> next;
    for (const auto& r : rem) {
      auto parts = subtract(r, m, status);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    rem = std::move(next);
    if (rem.empty()) return std::nullopt;
  }
  for (const auto& r : rem) {
    Feasibility f = integer_feasible(r);
    if (f.found()) return f.point;
    if (!f.infeasible()) status = f;
  }
  return std::nullopt;
}

}  // namespace

Verdict verify_partition(const SemilinearFormula& lhs, const std::vector<ConePiece>& pieces,
                         const SphericalPair& pair) {
  std::vector<ConstraintSet> sets;
  for (const auto& p : pieces) sets.push_back(piece_set(pair, p));
  Feasibility undecided;
  for (size_t i = 0; i < sets.size(); ++i)
    for (size_t j = i + 1; j < sets.size(); ++j) {
      Feasibility f = integer_feasible(sets[i].conjoin(sets[j]));
      if (f.found()) {
        Verdict v = Verdict::make(Verdict::Kind::FailDisjoint, "pieces overlap", f.point);
        v.piece_i = static_cast<int>(i);
        v.piece_j = static_cast<int>(j);
        return v;
      }
      if (!f.infeasible()) undecided = f;
    }
  for (const auto& d : lhs.disjuncts) {
    auto pt = remainder_point(d, sets, undecided);
    if (pt) return Verdict::make(Verdict::Kind::FailCover, "point of the difference not covered", *pt);
  }
  for (size_t i = 0; i < sets.size(); ++i) {
    auto pt = remainder_point(sets[i], lhs.disjuncts, undecided);
    if (pt) {
      Verdict v = Verdict::make(Verdict::Kind::FailContainment, "piece leaves the difference", *pt);
      v.piece_i = static_cast<int>(i);
      return v;
    }
  }
  if (!undecided.found() && !undecided.infeasible())
    return Verdict::make(Verdict::Kind::Inconclusive, undecided.reason);
  return Verdict::ok();
}

bool in_closed_semigroup(const SphericalPair& pair, const StdConeId& id, const IntVec& t) {
  for (size_t i = 0; i < pair.delta_h.size(); ++i) {
    Int v = pairing(pair.delta_h[i].form, t);
    bool in_theta = id.theta_h & (RootMask(1) << i);
    if (in_theta ? v != 0 : v < 0) return false;
  }
  if (pair.has_sectors()) {
    Int b = pairing(pair.c_h[0].form, t);
    switch (id.sector) {
      case Sector::Plus:
        return b >= 0;
      case Sector::Minus:
        return b <= 0;
      case Sector::Zero:
      case Sector::None:
        return b == 0;
    }
  }
  return true;
}

IntVec v_coordinates(const SphericalPair& pair, const IntVec& x) {
  IntVec v;
  for (const auto& a : pair.delta_h) v.push_back(pairing(a.form, x));
  for (const auto& b : pair.c_h) v.push_back(pairing(b.form, x));
  return v;
}

}  // namespace sphred
