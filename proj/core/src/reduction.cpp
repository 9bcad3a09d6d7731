#include "sphred/reduction.hpp"

#include <chrono>
#include <limits>

#include "sphred/errors.hpp"

namespace sphred {

std::vector<ConePiece> F1Template::instantiate(int n) const {
  std::vector<ConePiece> out;
  for (const auto& e : entries) {
    if (e.kind == TemplateEntry::Kind::Fixed) {
      out.push_back({e.shift, e.body});
      continue;
    }
    for (int i = 1; i <= n; ++i) out.push_back({add(e.shift, scale(e.step, i)), e.body});
  }
  return out;
}

bool body_allowed(const StdConeId& cone, const StdConeId& body, bool has_sectors) {
  if ((body.theta_h & cone.theta_h) != cone.theta_h) return false;
  bool larger = body.theta_h != cone.theta_h;
  if (!has_sectors) return body.sector == Sector::None && larger;
  if (body.sector == Sector::None) return false;
  if (cone.sector == Sector::Zero) return body.sector == Sector::Zero && larger;
  if (body.sector == cone.sector) return larger;
  return body.sector == Sector::Zero;
}

Verdict combine(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts)
    if (v.fail()) return v;
  for (const auto& v : verdicts)
    if (v.inconclusive()) return v;
  return Verdict::ok();
}

Verdict Report::membership_verdict() const { return combine(membership); }

Verdict Report::f1_verdict() const {
  std::vector<Verdict> vs;
  for (const auto& r : f1) vs.push_back(r.verdict);
  return combine(vs);
}

Verdict Report::overall() const {
  return combine({membership_verdict(), f1_verdict(), f2.verdict, minimality.verdict});
}

Verdict check_triple_membership(const SphericalPair& pair, RootMask theta_h, Sector sector, const Triple& t) {
  if (static_cast<int>(t.s.size()) != pair.h_rank()) throw DimensionMismatch("triple shift has the wrong dimension");
  auto fail = [&](const std::string& why) { return Verdict::make(Verdict::Kind::FailMembership, why, t.s); };
  if (t.theta & ~pair.full_g_mask()) return fail("theta is not a subset of Delta_G");
  const WeylElement& w = pair.weyl_by_name(t.w);
  IntVec g = weyl_apply(w, pair.embed_point(t.s));
  for (size_t i = 0; i < pair.delta_g.size(); ++i) {
    Int v = pairing(pair.delta_g[i].form, g);
    bool in_theta = t.theta & (RootMask(1) << i);
    if (in_theta && v != 0) return fail("root " + pair.delta_g[i].name + " of theta does not vanish on w s w^-1");
    if (!in_theta && v < 0) return fail("w s w^-1 is not dominant at " + pair.delta_g[i].name);
  }
  for (size_t i = 0; i < pair.delta_h.size(); ++i) {
    Int v = pairing(pair.delta_h[i].form, t.s);
    if (v < 0) return fail("s is not H-dominant at " + pair.delta_h[i].name);
    if ((theta_h & (RootMask(1) << i)) && v != 0) return fail("s does not vanish on " + pair.delta_h[i].name);
  }
  if (pair.has_sectors()) {
    Int b = pairing(pair.c_h[0].form, t.s);
    bool ok = b == 0 || (sector == Sector::Plus && b > 0) || (sector == Sector::Minus && b < 0);
    if (!ok) return fail("sign of " + pair.c_h[0].name + " on s does not fit the sector");
  }
  if (is_zero(t.s)) return fail("s is trivial");
  return Verdict::ok();
}

Verdict check_template(const SphericalPair& pair, const ReductionStructure& st, const StructureEntry& e, int n) {
  for (const auto& piece : e.tmpl.instantiate(n)) {
    if (static_cast<int>(piece.shift.size()) != pair.h_rank())
      return Verdict::make(Verdict::Kind::FailTemplate, "template shift has the wrong dimension");
    if (!body_allowed(st.cone(), piece.body, pair.has_sectors()))
      return Verdict::make(Verdict::Kind::FailTemplate,
                           "body " + mask_to_string(pair.delta_h, piece.body.theta_h) + "/" +
                               sector_name(piece.body.sector) + " is not allowed",
                           piece.shift);
    if (!in_closed_semigroup(pair, st.cone(), piece.shift))
      return Verdict::make(Verdict::Kind::FailTemplate, "template shift leaves the cone semigroup", piece.shift);
  }
  return Verdict::ok();
}

std::vector<F1Result> check_F1(const SphericalPair& pair, const ReductionStructure& st, int n_max) {
  if (n_max < 1) throw GuardViolation("n_max must be at least 1");
  std::vector<F1Result> out;
  ConstraintSet cone = std_cone(pair, st.cone());
  for (size_t k = 0; k < st.entries.size(); ++k) {
    const auto& e = st.entries[k];
    for (int n = 1; n <= n_max; ++n) {
      F1Result r{static_cast<int>(k), n, check_template(pair, st, e, n)};
      if (r.verdict.pass()) {
        auto lhs = difference_formula(cone, translate(cone, scale(e.triple.s, n)));
        r.verdict = verify_partition(lhs, e.tmpl.instantiate(n), pair);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

LinearForm extend(const LinearForm& f, Int m_coeff) {
  LinearForm g = f;
  g.coeffs.push_back(m_coeff);
  return g;
}

ConstraintSet extend(const ConstraintSet& cs) {
  ConstraintSet r;
  r.lattice = cs.lattice;
  r.lattice.labels.push_back("M");
  for (const auto& c : cs.constraints) r.constraints.push_back({extend(c.form, 0), c.relation, c.bound});
  return r;
}

struct TripleForms {
  std::vector<LinearForm> roots;  // pullbacks of every simple root of G
  std::vector<int> free;          // indices of Delta_G - theta
  std::string w;
};

std::vector<int> selected(const ReductionStructure& st, std::uint64_t mask) {
  std::vector<int> idx;
  for (size_t i = 0; i < st.entries.size(); ++i)
    if (mask & (std::uint64_t(1) << i)) idx.push_back(static_cast<int>(i));
  // Triples sharing a Weyl element are visited consecutively, by first appearance.
  std::vector<int> ordered;
  std::vector<bool> used(idx.size(), false);
  for (size_t a = 0; a < idx.size(); ++a) {
    if (used[a]) continue;
    for (size_t b = a; b < idx.size(); ++b)
      if (!used[b] && st.entries[idx[b]].triple.w == st.entries[idx[a]].triple.w) {
        used[b] = true;
        ordered.push_back(idx[b]);
      }
  }
  return ordered;
}

class DirectionSearch {
 public:
  DirectionSearch(const SphericalPair& pair, const ReductionStructure& st, std::uint64_t mask,
                  const std::vector<Int>& m_list)
      : pair_(pair), st_(st), m_list_(m_list) {
    order_ = selected(st, mask);
    for (int i : order_) {
      const Triple& t = st.entries[i].triple;
      const WeylElement& w = pair.weyl_by_name(t.w);
      TripleForms tf;
      tf.w = t.w;
      for (size_t a = 0; a < pair.delta_g.size(); ++a) {
        tf.roots.push_back(pair.pullback(pair.delta_g[a].form, w));
        if (!(t.theta & (RootMask(1) << a))) tf.free.push_back(static_cast<int>(a));
      }
      forms_.push_back(std::move(tf));
    }
    result_.infinite_at.assign(m_list.size(), false);
  }

  F2Stage1 run() {
    ConstraintSet cone = std_cone(pair_, st_.cone());
    ConstraintSet sys = extend(cone);
    IntVec m_unit(pair_.h_rank() + 1, 0);
    m_unit.back() = 1;
    sys.constraints.push_back({LinearForm{m_unit}, Relation::GE, 0});
    dfs(0, false, sys, recession(cone));
    return result_;
  }

 private:
  bool done() const {
    if (!result_.infinite_any) return false;
    for (bool b : result_.infinite_at)
      if (!b) return false;
    return true;
  }

  void undecided(const std::string& why) {
    result_.inconclusive = true;
    if (result_.reason.empty()) result_.reason = why;
  }

  void dfs(size_t k, bool group_bounded, const ConstraintSet& sys, const ConstraintSet& hom) {
    if (done()) return;
    ++result_.branches;
    Feasibility f = integer_feasible(sys);
    if (f.infeasible()) return;
    if (!f.found()) undecided("branch feasibility: " + f.reason);
    auto dir = recession_direction(hom);
    if (!dir) return;
    if (k == forms_.size()) {
      leaf(sys, *dir, f);
      return;
    }
    const TripleForms& tf = forms_[k];
    bool first_of_group = k == 0 || forms_[k - 1].w != tf.w;
    bool bounded = first_of_group ? false : group_bounded;
    if (first_of_group) {
      // w embed(x) fails dominance: one certificate covers the whole group.
      size_t end = k;
      while (end < forms_.size() && forms_[end].w == tf.w) ++end;
      for (const auto& r : tf.roots) {
        ConstraintSet s2 = sys.with({extend(r, 0), Relation::LE, -1});
        ConstraintSet h2 = hom.with({r, Relation::LE, 0});
        dfs(end, false, s2, h2);
        if (done()) return;
      }
      bounded = true;
    }
    if (!bounded) return;
    for (int a : tf.free) {
      ConstraintSet s2 = sys.with({extend(tf.roots[a], -1), Relation::LE, 0});
      ConstraintSet h2 = hom.with({tf.roots[a], Relation::LE, 0});
      dfs(k + 1, true, s2, h2);
      if (done()) return;
    }
  }

  void leaf(const ConstraintSet& sys, const IntVec& dir, const Feasibility& f) {
    if (f.found() && !result_.infinite_any) {
      result_.infinite_any = true;
      result_.direction = dir;
      result_.point = IntVec(f.point.begin(), f.point.end() - 1);
    }
    IntVec m_unit(pair_.h_rank() + 1, 0);
    m_unit.back() = 1;
    for (size_t i = 0; i < m_list_.size(); ++i) {
      if (result_.infinite_at[i]) continue;
      Feasibility g = integer_feasible(sys.with({LinearForm{m_unit}, Relation::EQ, m_list_[i]}));
      if (g.found()) {
        result_.infinite_at[i] = true;
        result_.infinite_any = true;
        if (result_.direction.empty()) {
          result_.direction = dir;
          result_.point = IntVec(g.point.begin(), g.point.end() - 1);
        }
      } else if (!g.infeasible()) {
        undecided("leaf feasibility: " + g.reason);
      }
    }
  }

  const SphericalPair& pair_;
  const ReductionStructure& st_;
  const std::vector<Int>& m_list_;
  std::vector<int> order_;
  std::vector<TripleForms> forms_;
  F2Stage1 result_;
};

constexpr Int kNeverDominant = std::numeric_limits<Int>::min();
constexpr Int kNoRoot = std::numeric_limits<Int>::max();

// Cone points in the largest box with the need of every triple.
struct NeedTable {
  std::vector<IntVec> points;
  std::vector<Int> extent;              // max |coordinate| per point
  std::vector<std::vector<Int>> needs;  // [point][entry]

  NeedTable(const SphericalPair& pair, const ReductionStructure& st, Int box) {
    points = enumerate_box(std_cone(pair, st.cone()), box);
    for (const auto& x : points) {
      Int e = 0;
      for (Int c : x) e = std::max(e, c < 0 ? -c : c);
      extent.push_back(e);
      std::vector<Int> row;
      for (const auto& entry : st.entries) row.push_back(triple_need(pair, entry.triple, x));
      needs.push_back(std::move(row));
    }
  }

  bool admits(size_t p, std::uint64_t mask, Int M) const {
    for (size_t i = 0; i < needs[p].size(); ++i)
      if ((mask & (std::uint64_t(1) << i)) && needs[p][i] > M) return false;
    return true;
  }

  long count(std::uint64_t mask, Int M, Int B) const {
    long c = 0;
    for (size_t p = 0; p < points.size(); ++p)
      if (extent[p] <= B && admits(p, mask, M)) ++c;
    return c;
  }
};

std::uint64_t full_mask(const ReductionStructure& st) {
  if (st.entries.size() > 63) throw GuardViolation("too many triples in one structure");
  return (std::uint64_t(1) << st.entries.size()) - 1;
}

F2Result decide(const SphericalPair& pair, const ReductionStructure& st, std::uint64_t mask, const NeedTable& table,
                const VerifyOptions& opt) {
  F2Result r;
  r.stage1 = f2_direction_analysis(pair, st, mask, opt.m_list);
  std::string diag;
  for (size_t i = 0; i < opt.m_list.size(); ++i) {
    std::vector<long> row;
    for (Int B : opt.b_list) row.push_back(table.count(mask, opt.m_list[i], B));
    bool stable = true;
    for (size_t b = 1; b < row.size(); ++b) stable = stable && row[b] == row[0];
    if (!r.stage1.inconclusive && stable == r.stage1.infinite_at[i]) {
      r.agree = false;
      diag += "M=" + std::to_string(opt.m_list[i]) + ": direction analysis says " +
              (r.stage1.infinite_at[i] ? "infinite" : "finite") + ", enumeration counts";
      for (long c : row) diag += " " + std::to_string(c);
      diag += "; ";
    }
    r.counts.push_back(std::move(row));
  }
  if (r.stage1.inconclusive)
    r.verdict = Verdict::make(Verdict::Kind::Inconclusive, r.stage1.reason);
  else if (!r.agree)
    r.verdict = Verdict::make(Verdict::Kind::Inconclusive, "stages disagree: " + diag);
  else if (r.stage1.infinite_any)
    r.verdict = Verdict::make(Verdict::Kind::FailFinite, "(F2) set is infinite along the witness direction",
                              r.stage1.direction);
  else
    r.verdict = Verdict::ok();
  return r;
}

Int max_box(const VerifyOptions& opt) {
  if (opt.m_list.empty() || opt.b_list.empty()) throw GuardViolation("M and B lists must be nonempty");
  Int b = 0;
  for (Int x : opt.b_list) {
    if (x < 1) throw GuardViolation("box sizes must be positive");
    b = std::max(b, x);
  }
  return b;
}

}  // namespace

F2Stage1 f2_direction_analysis(const SphericalPair& pair, const ReductionStructure& st, std::uint64_t mask,
                               const std::vector<Int>& m_list) {
  return DirectionSearch(pair, st, mask, m_list).run();
}

Int triple_need(const SphericalPair& pair, const Triple& t, const IntVec& x) {
  IntVec g = weyl_apply(pair.weyl_by_name(t.w), pair.embed_point(x));
  Int need = kNoRoot;
  for (size_t a = 0; a < pair.delta_g.size(); ++a) {
    Int v = pairing(pair.delta_g[a].form, g);
    if (v < 0) return kNeverDominant;
    if (!(t.theta & (RootMask(1) << a))) need = std::min(need, v);
  }
  return need;
}

std::vector<IntVec> f2_points(const SphericalPair& pair, const ReductionStructure& st, std::uint64_t mask, Int M,
                              Int B) {
  NeedTable table(pair, st, B);
  std::vector<IntVec> out;
  for (size_t p = 0; p < table.points.size(); ++p)
    if (table.admits(p, mask, M)) out.push_back(table.points[p]);
  return out;
}

F2Result check_F2(const SphericalPair& pair, const ReductionStructure& st, const VerifyOptions& opt) {
  NeedTable table(pair, st, max_box(opt));
  return decide(pair, st, full_mask(st), table, opt);
}

MinimalityResult check_minimality(const SphericalPair& pair, const ReductionStructure& st,
                                  const VerifyOptions& opt) {
  MinimalityResult r;
  if (st.entries.empty()) return r;
  NeedTable table(pair, st, max_box(opt));
  std::uint64_t full = full_mask(st);
  std::vector<Verdict> vs;
  for (size_t i = 0; i < st.entries.size(); ++i) {
    F2Result d = decide(pair, st, full & ~(std::uint64_t(1) << i), table, opt);
    Verdict v;
    if (d.verdict.inconclusive()) {
      v = d.verdict;
    } else if (d.verdict.pass()) {
      v = Verdict::make(Verdict::Kind::FailMinimality, "set stays finite without triple " + std::to_string(i));
      v.piece_i = static_cast<int>(i);
    }
    vs.push_back(v);
    r.deletions.push_back(std::move(d));
  }
  r.verdict = combine(vs);
  return r;
}

Report verify(const SphericalPair& pair, const ReductionStructure& st, const VerifyOptions& opt) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a) {
    return std::chrono::duration<double, std::milli>(clock::now() - a).count();
  };
  Report rep;
  auto t0 = clock::now();
  for (const auto& e : st.entries) rep.membership.push_back(check_triple_membership(pair, st.theta_h, st.sector, e.triple));
  rep.timings_ms["membership"] = ms(t0);
  t0 = clock::now();
  rep.f1 = check_F1(pair, st, opt.n_max);
  rep.timings_ms["f1"] = ms(t0);
  t0 = clock::now();
  rep.f2 = check_F2(pair, st, opt);
  rep.timings_ms["f2"] = ms(t0);
  t0 = clock::now();
  rep.minimality = check_minimality(pair, st, opt);
  rep.timings_ms["minimality"] = ms(t0);
  return rep;
}

}  // namespace sphred
