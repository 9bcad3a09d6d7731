#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphred/fourier_motzkin.hpp"
#include "sphred/root_datum.hpp"

namespace sphred {

enum class Relation { GE, EQ, LE };

struct Constraint {
  LinearForm form;
  Relation relation = Relation::GE;
  Int bound = 0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct ConstraintSet {
  CocharLattice lattice;
  std::vector<Constraint> constraints;

  int rank() const { return lattice.rank(); }
  bool contains(const IntVec& x) const;
  ConstraintSet conjoin(const ConstraintSet& other) const;
  ConstraintSet with(const Constraint& c) const;
  std::string to_string() const;
};

enum class Sector { Plus, Zero, Minus, None };

std::string sector_name(Sector s);
Sector parse_sector(const std::string& text);  // throws std::invalid_argument
std::vector<Sector> sectors_of(const SphericalPair& pair);

struct StdConeId {
  RootMask theta_h = 0;
  Sector sector = Sector::None;
  friend bool operator==(const StdConeId&, const StdConeId&) = default;
  friend auto operator<=>(const StdConeId&, const StdConeId&) = default;
};

struct ConePiece {
  IntVec shift;
  StdConeId body;
  friend bool operator==(const ConePiece&, const ConePiece&) = default;
};

struct SemilinearFormula {
  std::vector<ConstraintSet> disjuncts;
  bool contains(const IntVec& x) const;
};

struct Verdict {
  enum class Kind {
    Pass,
    FailCover,
    FailDisjoint,
    FailContainment,
    FailFinite,
    FailMembership,
    FailTemplate,
    FailMinimality,
    Inconclusive
  };

  Kind kind = Kind::Pass;
  IntVec witness;  // point or direction
  int piece_i = -1;
  int piece_j = -1;
  std::string reason;

  bool pass() const { return kind == Kind::Pass; }
  bool inconclusive() const { return kind == Kind::Inconclusive; }
  bool fail() const { return !pass() && !inconclusive(); }
  std::string kind_name() const;
  std::string to_string() const;

  static Verdict ok() { return {}; }
  static Verdict make(Kind k, std::string reason, IntVec witness = {}) {
    Verdict v;
    v.kind = k;
    v.reason = std::move(reason);
    v.witness = std::move(witness);
    return v;
  }
};

ConstraintSet std_cone(const SphericalPair& pair, const StdConeId& id);
ConstraintSet translate(const ConstraintSet& cs, const IntVec& t);
SemilinearFormula difference_formula(const ConstraintSet& cs, const ConstraintSet& shifted);
ConstraintSet recession(const ConstraintSet& cs);

// Negation of a single constraint as a list of disjoint constraints.
std::vector<Constraint> negate(const Constraint& c);

struct Feasibility {
  fm::SearchStatus status = fm::SearchStatus::Infeasible;
  IntVec point;
  std::string reason;
  bool found() const { return status == fm::SearchStatus::Found; }
  bool infeasible() const { return status == fm::SearchStatus::Infeasible; }
};

Feasibility integer_feasible(const ConstraintSet& cs, const fm::SearchLimits& limits = {});

// Nonzero integer recession direction, if one exists.
std::optional<IntVec> recession_direction(const ConstraintSet& cs);
bool is_finite(const ConstraintSet& cs);

std::vector<IntVec> enumerate_box(const ConstraintSet& cs, Int box);
// All points of a bounded set; throws if the set is unbounded.
std::vector<IntVec> enumerate_points(const ConstraintSet& cs);

// Set difference lhs - piece, as first-violation pieces of lhs, dropping empty ones.
// `status` becomes Inconclusive if an emptiness test could not be decided.
std::vector<ConstraintSet> subtract(const ConstraintSet& lhs, const ConstraintSet& piece, Feasibility& status);

ConstraintSet piece_set(const SphericalPair& pair, const ConePiece& piece);

Verdict verify_partition(const SemilinearFormula& lhs, const std::vector<ConePiece>& pieces,
                         const SphericalPair& pair);

// Semigroup membership of a shift for the closed cone attached to (theta_h, sector):
// pairings with theta_h vanish, other simple roots are >= 0, and the C_H sign
// lies in {0, sector}.
bool in_closed_semigroup(const SphericalPair& pair, const StdConeId& id, const IntVec& t);

// The v-coordinates of a lattice point: pairings with Delta_H then C_H.
IntVec v_coordinates(const SphericalPair& pair, const IntVec& x);

}  // namespace sphred
