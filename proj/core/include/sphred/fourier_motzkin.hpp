#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphred/numeric.hpp"

namespace sphred::fm {

// a . x >= b
struct Ineq {
  IntVec a;
  Int b = 0;
  friend bool operator==(const Ineq&, const Ineq&) = default;
};

// Divides by the content of a and rounds the bound up. Valid for integer
// points only. Returns false when the inequality is trivially infeasible.
bool tighten(Ineq& q);

// Removes variable `var` (coefficient becomes zero) by pairwise combination.
// With `integral` set, every derived row is tightened.
std::vector<Ineq> eliminate(const std::vector<Ineq>& sys, int var, bool integral);

// levels[k] holds the projection onto the first k variables.
struct Tower {
  std::vector<std::vector<Ineq>> levels;
  bool infeasible = false;
};

Tower build_tower(std::vector<Ineq> sys, int n, bool integral);

struct Bounds {
  std::optional<Int> lo;
  std::optional<Int> hi;
  bool empty() const { return lo && hi && *lo > *hi; }
};

// Integer bounds on variable k given values for variables 0..k-1.
Bounds bounds_at(const Tower& t, int k, const IntVec& prefix);

bool rationally_feasible(const std::vector<Ineq>& sys, int n);

// Exact rational solution by back-substitution, or nothing if infeasible.
std::optional<RatVec> rational_point(const std::vector<Ineq>& sys, int n);

struct SearchLimits {
  long node_budget = 200000;
  int unbounded_span = 96;
};

enum class SearchStatus { Found, Infeasible, Inconclusive };

struct SearchResult {
  SearchStatus status = SearchStatus::Infeasible;
  IntVec point;
  std::string reason;
};

// Integer point of {A x >= b, E x = e}. Equalities are solved exactly over Z
// first; the remaining inequality system is searched depth-first within
// projected bounds.
SearchResult integer_search(const std::vector<Ineq>& ineqs, const std::vector<Ineq>& eqs, int n,
                            const SearchLimits& limits = {});

// All integer points of a bounded system in lexicographic order; throws
// InternalInconsistency if some variable is unbounded.
std::vector<IntVec> enumerate_bounded(const std::vector<Ineq>& sys, int n);

}  // namespace sphred::fm
