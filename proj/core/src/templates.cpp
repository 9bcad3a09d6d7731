#include <map>

#include "sphred/errors.hpp"
#include "sphred/reduction.hpp"

namespace sphred {

namespace {

// Valuation coordinates u_j = sigma_j <f_j, x> over the basis Delta_H, C_H, with
// sigma = -1 on the C_H coordinate of the minus sector. The cone K reads
// u_j >= 1 on its free coordinates and u_j = 0 on the others.
class Decomposer {
 public:
  Decomposer(const SphericalPair& pair, const StdConeId& cone) : pair_(pair), cone_(cone) {
    int r = pair.h_rank();
    for (const auto& a : pair.delta_h) basis_.push_back(a.form.coeffs);
    for (const auto& b : pair.c_h) basis_.push_back(b.form.coeffs);
    if (static_cast<int>(basis_.size()) != r) throw InternalInconsistency("Delta_H and C_H do not form a basis");
    inverse_ = rational_inverse(basis_);
    Rational det = abs_value(determinant(basis_));
    index_ = det.get_num().get_si();
    sigma_.assign(r, 1);
    free_.assign(r, true);
    for (size_t i = 0; i < pair.delta_h.size(); ++i)
      if (cone.theta_h & (RootMask(1) << i)) free_[i] = false;
    if (pair.has_sectors()) {
      if (cone.sector == Sector::Zero) free_[r - 1] = false;
      if (cone.sector == Sector::Minus) sigma_[r - 1] = -1;
    }
  }

  std::vector<ConePiece> difference_pieces(const IntVec& s) {
    IntVec su = to_u(s);
    int r = pair_.h_rank();
    std::vector<ConePiece> out;
    std::map<int, Int> zeros;
    for (int j = 0; j < r; ++j)
      if (!free_[j]) zeros[j] = 0;
    std::vector<int> earlier;
    for (int j = 0; j < r; ++j) {
      if (!free_[j] || su[j] <= 0) continue;
      for (Int c = 1; c <= su[j]; ++c) {
        std::map<int, Int> fixed = zeros;
        fixed[j] = c;
        std::vector<Int> lb(r, 1);
        for (int e : earlier) lb[e] = su[e] + 1;
        decompose(fixed, lb, out);
      }
      earlier.push_back(j);
    }
    return out;
  }

 private:
  IntVec to_u(const IntVec& x) const {
    IntVec u = mat_vec(basis_, x);
    for (size_t j = 0; j < u.size(); ++j) u[j] *= sigma_[j];
    return u;
  }

  std::optional<IntVec> from_u(const IntVec& u) const {
    IntVec v(u.size());
    for (size_t j = 0; j < u.size(); ++j) v[j] = u[j] * sigma_[j];
    RatVec x = rat_mat_vec(inverse_, v);
    IntVec out;
    for (const auto& c : x) {
      if (c.get_den() != 1) return std::nullopt;
      out.push_back(c.get_num().get_si());
    }
    return out;
  }

  // Smallest offsets delta in [0, index)^free, by total then lexicographically,
  // such that the corner point is a lattice point.
  std::optional<std::pair<IntVec, IntVec>> corner(const std::map<int, Int>& fixed, const std::vector<Int>& lb,
                                                  const std::vector<int>& movable) const {
    int k = static_cast<int>(movable.size());
    Int limit = index_;
    for (Int total = 0; total <= k * (limit - 1); ++total) {
      IntVec delta(k, 0);
      std::optional<std::pair<IntVec, IntVec>> hit;
      auto rec = [&](auto&& self, int i, Int left) -> bool {
        if (i == k) {
          if (left != 0) return false;
          IntVec u(pair_.h_rank(), 0);
          for (auto [j, c] : fixed) u[j] = c;
          for (int m = 0; m < k; ++m) u[movable[m]] = lb[movable[m]] - 1 + delta[m];
          auto x = from_u(u);
          if (!x) return false;
          hit = std::make_pair(*x, delta);
          return true;
        }
        for (Int d = std::min(left, limit - 1); d >= 0; --d) {
          delta[i] = d;
          if (self(self, i + 1, left - d)) return true;
        }
        return false;
      };
      if (rec(rec, 0, total)) return hit;
    }
    return std::nullopt;
  }

  void decompose(const std::map<int, Int>& fixed, const std::vector<Int>& lb, std::vector<ConePiece>& out) const {
    int r = pair_.h_rank();
    std::vector<int> movable;
    for (int j = 0; j < r; ++j)
      if (!fixed.count(j)) movable.push_back(j);
    auto hit = corner(fixed, lb, movable);
    if (!hit) return;  // no lattice point carries these fixed coordinates
    const auto& [t, delta] = *hit;
    StdConeId body{cone_.theta_h, cone_.sector};
    for (auto [j, c] : fixed) {
      (void)c;
      if (j < static_cast<int>(pair_.delta_h.size()))
        body.theta_h |= RootMask(1) << j;
      else
        body.sector = Sector::Zero;
    }
    out.push_back({t, body});
    std::vector<int> earlier;
    for (size_t m = 0; m < movable.size(); ++m) {
      if (delta[m] == 0) continue;
      int j = movable[m];
      for (Int c = lb[j]; c < lb[j] + delta[m]; ++c) {
        std::map<int, Int> f2 = fixed;
        f2[j] = c;
        std::vector<Int> lb2 = lb;
        for (int e : earlier) {
          for (size_t q = 0; q < movable.size(); ++q)
            if (movable[q] == e) lb2[e] = lb[e] + delta[q];
        }
        decompose(f2, lb2, out);
      }
      earlier.push_back(j);
    }
  }

  const SphericalPair& pair_;
  StdConeId cone_;
  IntMat basis_;
  RatMat inverse_;
  Int index_ = 1;
  std::vector<Int> sigma_;
  std::vector<bool> free_;
};

}  // namespace

F1Template reconstruct_template(const SphericalPair& pair, const StdConeId& cone, const IntVec& s) {
  if (static_cast<int>(s.size()) != pair.h_rank()) throw DimensionMismatch("shift has the wrong dimension");
  std::vector<ConePiece> pieces = Decomposer(pair, cone).difference_pieces(s);
  F1Template tmpl;
  tmpl.reconstructed = true;
  // K - T_{ns}K is the disjoint union of T_{is}(K - T_s K) for i = 0..n-1.
  for (const auto& p : pieces)
    tmpl.entries.push_back({TemplateEntry::Kind::Family, sub(p.shift, s), s, p.body});
  return tmpl;
}

}  // namespace sphred
