#include "sphred/fourier_motzkin.hpp"

#include <algorithm>
#include <map>

#include "sphred/errors.hpp"

namespace sphred::fm {

namespace {

Int content(const IntVec& a) {
  Int g = 0;
  for (Int x : a) g = gcd(g, x);
  return g;
}

bool all_zero(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

// Exact normalization: divide a and b by their common content.
void normalize_exact(Ineq& q) {
  Int g = gcd(content(q.a), q.b);
  if (g > 1) {
    for (auto& x : q.a) x /= g;
    q.b /= g;
  }
}

// Keeps the strongest bound per direction; drops trivially true rows and
// collapses trivially false ones into a single marker row.
std::vector<Ineq> simplify(std::vector<Ineq> rows, size_t n, bool integral) {
  std::map<IntVec, Int> best;
  bool contradiction = false;
  for (auto& q : rows) {
    if (integral) {
      if (!tighten(q)) contradiction = true;
    } else {
      normalize_exact(q);
    }
    if (all_zero(q.a)) {
      if (q.b > 0) contradiction = true;
      continue;
    }
    auto it = best.find(q.a);
    if (it == best.end())
      best.emplace(q.a, q.b);
    else
      it->second = std::max(it->second, q.b);
  }
  std::vector<Ineq> out;
  if (contradiction) {
    out.push_back(Ineq{IntVec(n, 0), 1});
    return out;
  }
  out.reserve(best.size());
  for (auto& [a, b] : best) out.push_back(Ineq{a, b});
  return out;
}

}  // namespace

bool tighten(Ineq& q) {
  Int g = content(q.a);
  if (g == 0) return q.b <= 0;
  if (g > 1) {
    for (auto& x : q.a) x /= g;
    q.b = ceil_div(q.b, g);
  }
  return true;
}

std::vector<Ineq> eliminate(const std::vector<Ineq>& sys, int var, bool integral) {
  std::vector<const Ineq*> pos, neg;
  std::vector<Ineq> out;
  size_t n = sys.empty() ? 0 : sys[0].a.size();
  for (const auto& q : sys) {
    if (q.a[var] > 0)
      pos.push_back(&q);
    else if (q.a[var] < 0)
      neg.push_back(&q);
    else
      out.push_back(q);
  }
  for (const Ineq* p : pos)
    for (const Ineq* m : neg) {
      Int cp = -m->a[var];
      Int cm = p->a[var];
      Int g = gcd(cp, cm);
      cp /= g;
      cm /= g;
      Ineq r{IntVec(n, 0), 0};
      for (size_t j = 0; j < n; ++j) r.a[j] = add_checked(mul_checked(cp, p->a[j]), mul_checked(cm, m->a[j]));
      r.b = add_checked(mul_checked(cp, p->b), mul_checked(cm, m->b));
      r.a[var] = 0;
      out.push_back(std::move(r));
    }
  return simplify(std::move(out), n, integral);
}

Tower build_tower(std::vector<Ineq> sys, int n, bool integral) {
  Tower t;
  t.levels.resize(n + 1);
  t.levels[n] = simplify(std::move(sys), n, integral);
  for (int k = n - 1; k >= 0; --k) t.levels[k] = eliminate(t.levels[k + 1], k, integral);
  for (const auto& q : t.levels[0])
    if (q.b > 0) t.infeasible = true;
  return t;
}

Bounds bounds_at(const Tower& t, int k, const IntVec& prefix) {
  Bounds bd;
  for (const auto& q : t.levels[k + 1]) {
    Int ak = q.a[k];
    if (ak == 0) continue;
    Int rest = q.b;
    for (int j = 0; j < k; ++j)
      if (q.a[j] != 0) rest = add_checked(rest, -mul_checked(q.a[j], prefix[j]));
    if (ak > 0) {
      Int lo = ceil_div(rest, ak);
      if (!bd.lo || lo > *bd.lo) bd.lo = lo;
    } else {
      Int hi = floor_div(rest, ak);
      if (!bd.hi || hi < *bd.hi) bd.hi = hi;
    }
  }
  return bd;
}

bool rationally_feasible(const std::vector<Ineq>& sys, int n) { return !build_tower(sys, n, false).infeasible; }

std::optional<RatVec> rational_point(const std::vector<Ineq>& sys, int n) {
  Tower t = build_tower(sys, n, false);
  if (t.infeasible) return std::nullopt;
  RatVec x;
  for (int k = 0; k < n; ++k) {
    std::optional<Rational> lo, hi;
    for (const auto& q : t.levels[k + 1]) {
      if (q.a[k] == 0) continue;
      Rational rest = make_rational(q.b);
      for (int j = 0; j < k; ++j) rest -= make_rational(q.a[j]) * x[j];
      Rational v = rest / make_rational(q.a[k]);
      if (q.a[k] > 0) {
        if (!lo || v > *lo) lo = v;
      } else {
        if (!hi || v < *hi) hi = v;
      }
    }
    Rational v = 0;
    if (lo) {
      mpz_class c;
      mpz_cdiv_q(c.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
      v = Rational(c);
      if (hi && v > *hi) v = *lo;
    } else if (hi) {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
      v = Rational(f);
    }
    x.push_back(v);
  }
  return x;
}

namespace {

struct Lattice {
  IntVec x0;
  IntMat basis;  // columns of K, stored as vectors
  bool empty = false;
};

// Solves E x = e over the integers by unimodular column operations.
Lattice solve_equalities(const std::vector<Ineq>& eqs, int n) {
  Lattice out;
  IntMat a;
  IntVec e;
  for (const auto& q : eqs) {
    a.push_back(q.a);
    e.push_back(q.b);
  }
  IntMat u = identity_matrix(n);
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : u) std::swap(row[i], row[j]);
  };
  auto col_axpy = [&](int dst, int src, Int q) {  // col_dst -= q col_src
    for (auto& row : a) row[dst] = add_checked(row[dst], -mul_checked(q, row[src]));
    for (auto& row : u) row[dst] = add_checked(row[dst], -mul_checked(q, row[src]));
  };
  int k = 0;
  std::vector<int> pivot_col(a.size(), -1);
  for (size_t i = 0; i < a.size(); ++i) {
    while (true) {
      int best = -1;
      for (int j = k; j < n; ++j)
        if (a[i][j] != 0 && (best < 0 || std::abs(a[i][j]) < std::abs(a[i][best]))) best = j;
      if (best < 0) break;
      col_swap(k, best);
      bool done = true;
      for (int j = k + 1; j < n; ++j) {
        if (a[i][j] == 0) continue;
        col_axpy(j, k, a[i][j] / a[i][k]);
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (k < n && a[i][k] != 0) {
      if (a[i][k] < 0) {
        for (auto& row : a) row[k] = -row[k];
        for (auto& row : u) row[k] = -row[k];
      }
      pivot_col[i] = k++;
    }
  }
  IntVec y(k, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    int c = pivot_col[i];
    int upto = c < 0 ? k : c;
    Int rest = e[i];
    for (int j = 0; j < upto; ++j) rest = add_checked(rest, -mul_checked(a[i][j], y[j]));
    if (c < 0) {
      if (rest != 0) {
        out.empty = true;
        return out;
      }
      continue;
    }
    if (rest % a[i][c] != 0) {
      out.empty = true;
      return out;
    }
    y[c] = rest / a[i][c];
  }
  out.x0.assign(n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < k; ++c) out.x0[r] = add_checked(out.x0[r], mul_checked(u[r][c], y[c]));
  for (int c = k; c < n; ++c) {
    IntVec col(n);
    for (int r = 0; r < n; ++r) col[r] = u[r][c];
    out.basis.push_back(col);
  }
  return out;
}

struct Search {
  const Tower& tower;
  int dims;
  SearchLimits limits;
  long nodes = 0;
  bool truncated = false;
  IntVec z;

  bool dfs(int k) {
    if (k == dims) return true;
    if (++nodes > limits.node_budget) {
      truncated = true;
      return false;
    }
    Bounds bd = bounds_at(tower, k, z);
    if (bd.empty()) return false;
    std::vector<Int> candidates;
    Int span = limits.unbounded_span;
    if (bd.lo && bd.hi) {
      Int width = *bd.hi - *bd.lo;
      if (width >= span) truncated = true;
      for (Int v = *bd.lo; v <= *bd.hi && v - *bd.lo < span; ++v) candidates.push_back(v);
    } else if (bd.lo) {
      truncated = true;
      for (Int i = 0; i < span; ++i) candidates.push_back(*bd.lo + i);
    } else if (bd.hi) {
      truncated = true;
      for (Int i = 0; i < span; ++i) candidates.push_back(*bd.hi - i);
    } else {
      truncated = true;
      candidates.push_back(0);
      for (Int i = 1; static_cast<Int>(candidates.size()) < span; ++i) {
        candidates.push_back(i);
        candidates.push_back(-i);
      }
    }
    for (Int v : candidates) {
      z[k] = v;
      if (dfs(k + 1)) return true;
      if (nodes > limits.node_budget) return false;
    }
    return false;
  }
};

bool satisfies(const std::vector<Ineq>& ineqs, const std::vector<Ineq>& eqs, const IntVec& x) {
  for (const auto& q : ineqs)
    if (dot(q.a, x) < q.b) return false;
  for (const auto& q : eqs)
    if (dot(q.a, x) != q.b) return false;
  return true;
}

}  // namespace

SearchResult integer_search(const std::vector<Ineq>& ineqs, const std::vector<Ineq>& eqs, int n,
                            const SearchLimits& limits) {
  SearchResult res;
  try {
    Lattice lat = solve_equalities(eqs, n);
    if (lat.empty) {
      res.status = SearchStatus::Infeasible;
      return res;
    }
    int d = static_cast<int>(lat.basis.size());
    std::vector<Ineq> reduced;
    for (const auto& q : ineqs) {
      Ineq r{IntVec(d, 0), add_checked(q.b, -dot(q.a, lat.x0))};
      for (int c = 0; c < d; ++c) r.a[c] = dot(q.a, lat.basis[c]);
      reduced.push_back(std::move(r));
    }
    Tower tower = build_tower(reduced, d, true);
    if (tower.infeasible) {
      res.status = SearchStatus::Infeasible;
      return res;
    }
    Search s{tower, d, limits, 0, false, IntVec(d, 0)};
    if (s.dfs(0)) {
      IntVec x = lat.x0;
      for (int c = 0; c < d; ++c) x = add(x, scale(lat.basis[c], s.z[c]));
      if (!satisfies(ineqs, eqs, x)) throw InternalInconsistency("integer search produced an invalid point");
      res.status = SearchStatus::Found;
      res.point = x;
      return res;
    }
    if (s.truncated) {
      res.status = SearchStatus::Inconclusive;
      res.reason = "integer search cap exceeded after " + std::to_string(s.nodes) + " nodes";
    } else {
      res.status = SearchStatus::Infeasible;
    }
  } catch (const ArithmeticOverflow& e) {
    res.status = SearchStatus::Inconclusive;
    res.reason = e.what();
  }
  return res;
}

std::vector<IntVec> enumerate_bounded(const std::vector<Ineq>& sys, int n) {
  Tower t = build_tower(sys, n, true);
  std::vector<IntVec> out;
  if (t.infeasible) return out;
  IntVec x(n, 0);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      for (const auto& q : sys)
        if (dot(q.a, x) < q.b) return;
      out.push_back(x);
      return;
    }
    Bounds bd = bounds_at(t, k, x);
    if (!bd.lo || !bd.hi) throw InternalInconsistency("enumeration over an unbounded region");
    for (Int v = *bd.lo; v <= *bd.hi; ++v) {
      x[k] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace sphred::fm
