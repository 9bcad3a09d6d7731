#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sphred/cone.hpp"

namespace sphred {

struct Triple {
  RootMask theta = 0;  // subset of Delta_G
  std::string w;       // name of a Weyl element of the pair
  IntVec s;            // H-lattice point
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TemplateEntry {
  enum class Kind { Fixed, Family };
  Kind kind = Kind::Fixed;
  IntVec shift;  // Fixed: the shift; Family: the base shift
  IntVec step;   // Family only: shifts are shift + i*step for i = 1..n
  StdConeId body;
  friend bool operator==(const TemplateEntry&, const TemplateEntry&) = default;
};

struct F1Template {
  std::vector<TemplateEntry> entries;
  bool reconstructed = false;

  std::vector<ConePiece> instantiate(int n) const;
  friend bool operator==(const F1Template&, const F1Template&) = default;
};

struct StructureEntry {
  Triple triple;
  F1Template tmpl;
  friend bool operator==(const StructureEntry&, const StructureEntry&) = default;
};

struct ReductionStructure {
  std::string key;
  RootMask theta_h = 0;
  Sector sector = Sector::None;
  std::vector<StructureEntry> entries;
  std::vector<std::string> notes;

  StdConeId cone() const { return {theta_h, sector}; }
  friend bool operator==(const ReductionStructure&, const ReductionStructure&) = default;
};

// Decomposition of K - T_s K into translates of larger or sector-zero cones,
// lifted to an n-indexed family. Built in valuation coordinates.
F1Template reconstruct_template(const SphericalPair& pair, const StdConeId& cone, const IntVec& s);

// Whether `body` may appear in an (F1) decomposition of `cone`.
bool body_allowed(const StdConeId& cone, const StdConeId& body, bool has_sectors);

struct VerifyOptions {
  int n_max = 4;
  std::vector<Int> m_list{1, 3};
  std::vector<Int> b_list{12, 24};
};

struct F1Result {
  int entry = 0;
  int n = 0;
  Verdict verdict;
};

// Direction analysis of the (F2) set for all bounds M at once, plus the
// per-M answers for the bounds that are cross-checked.
struct F2Stage1 {
  bool inconclusive = false;
  std::string reason;
  bool infinite_any = false;
  std::vector<bool> infinite_at;  // aligned with VerifyOptions::m_list
  IntVec direction;
  IntVec point;
  long branches = 0;
};

struct F2Result {
  Verdict verdict;
  F2Stage1 stage1;
  std::vector<std::vector<long>> counts;  // [M index][B index]
  bool agree = true;
};

struct MinimalityResult {
  Verdict verdict;
  std::vector<F2Result> deletions;
};

struct Report {
  std::vector<Verdict> membership;
  std::vector<F1Result> f1;
  F2Result f2;
  MinimalityResult minimality;
  std::map<std::string, double> timings_ms;

  Verdict membership_verdict() const;
  Verdict f1_verdict() const;
  Verdict overall() const;
};

// Fail beats Inconclusive beats Pass; the first offending verdict is returned.
Verdict combine(const std::vector<Verdict>& verdicts);

Verdict check_triple_membership(const SphericalPair& pair, RootMask theta_h, Sector sector, const Triple& t);
Verdict check_template(const SphericalPair& pair, const ReductionStructure& st, const StructureEntry& e, int n);
std::vector<F1Result> check_F1(const SphericalPair& pair, const ReductionStructure& st, int n_max);

// Exact (F2) decision over the triples selected by `mask` (bit i = entry i).
F2Stage1 f2_direction_analysis(const SphericalPair& pair, const ReductionStructure& st, std::uint64_t mask,
                               const std::vector<Int>& m_list);

// need(i, x): the smallest M for which triple i admits x, as used by the
// enumeration cross-check. Dominance failure gives INT64_MIN, no admissible
// root gives INT64_MAX.
Int triple_need(const SphericalPair& pair, const Triple& t, const IntVec& x);

// Points of the cone with coordinates in [-B, B] that lie in the (F2) set
// for bound M, using the triples selected by `mask`.
std::vector<IntVec> f2_points(const SphericalPair& pair, const ReductionStructure& st, std::uint64_t mask, Int M,
                              Int B);

F2Result check_F2(const SphericalPair& pair, const ReductionStructure& st, const VerifyOptions& opt = {});
MinimalityResult check_minimality(const SphericalPair& pair, const ReductionStructure& st,
                                  const VerifyOptions& opt = {});
Report verify(const SphericalPair& pair, const ReductionStructure& st, const VerifyOptions& opt = {});

struct CatalogItem {
  std::string key;
  std::shared_ptr<const SphericalPair> pair;
  ReductionStructure structure;
};

// Every structure of the catalog, in catalog order.
const std::vector<CatalogItem>& catalog();
// Items whose key equals `selector` or starts with `selector` + "/"; "all" selects everything.
std::vector<CatalogItem> catalog_select(const std::string& selector);
const CatalogItem& catalog_lookup(const std::string& key);
std::shared_ptr<const SphericalPair> catalog_pair(const std::string& name);

// Structures for every cone of a catalog pair, keyed by cone.
std::map<StdConeId, ReductionStructure> catalog_structures(const std::string& pair_name);

// Catalog structures padded with a triple implied by the others.
std::vector<CatalogItem> redundant_fixtures();

}  // namespace sphred
