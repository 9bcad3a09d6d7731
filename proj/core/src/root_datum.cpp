#include "sphred/root_datum.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "sphred/errors.hpp"

namespace sphred {

Int pairing(const LinearForm& f, const IntVec& x) {
  if (f.coeffs.size() != x.size())
    throw DimensionMismatch("pairing a form of dimension " + std::to_string(f.coeffs.size()) +
                            " with a point of dimension " + std::to_string(x.size()));
  return dot(f.coeffs, x);
}

// ---------------------------------------------------------------- GroupSpec

GroupSpec GroupSpec::gl(int n) {
  if (n < 1) throw UnsupportedRank("GL(n) needs n >= 1");
  return GroupSpec{Kind::GL, n, {}, {}};
}

GroupSpec GroupSpec::so(int n) {
  if (n < 3) throw UnsupportedRank("SO(n) needs n >= 3");
  return GroupSpec{Kind::SplitSO, n, {}, {}};
}

GroupSpec GroupSpec::sp(int n) {
  if (n < 2 || n % 2 != 0) throw UnsupportedRank("Sp(n) needs even n >= 2");
  return GroupSpec{Kind::Sp, n, {}, {}};
}

GroupSpec GroupSpec::torus(int r) {
  if (r < 0) throw UnsupportedRank("torus rank must be nonnegative");
  return GroupSpec{Kind::Torus, r, {}, {}};
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  if (factors.empty()) throw UnsupportedRank("empty product");
  if (factors.size() == 1) return factors[0];
  return GroupSpec{Kind::Product, 0, std::move(factors), {}};
}

GroupSpec GroupSpec::quotient(GroupSpec inner, IntMat central) {
  return GroupSpec{Kind::CentralQuotient, 0, {std::move(inner)}, std::move(central)};
}

std::string GroupSpec::to_string() const {
  switch (kind) {
    case Kind::GL:
      return "GL(" + std::to_string(n) + ")";
    case Kind::SplitSO:
      return "SO(" + std::to_string(n) + ")";
    case Kind::Sp:
      return "Sp(" + std::to_string(n) + ")";
    case Kind::Torus:
      return "T(" + std::to_string(n) + ")";
    case Kind::Product: {
      std::string s;
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "*";
        const GroupSpec& f = factors[i];
        bool wrap = f.kind == Kind::Product || f.kind == Kind::CentralQuotient;
        s += wrap ? "(" + f.to_string() + ")" : f.to_string();
      }
      return s;
    }
    case Kind::CentralQuotient: {
      std::string s = factors[0].to_string() + "/[";
      for (size_t i = 0; i < central.size(); ++i) {
        if (i) s += ";";
        for (size_t j = 0; j < central[i].size(); ++j) {
          if (j) s += ",";
          s += std::to_string(central[i][j]);
        }
      }
      return s + "]";
    }
  }
  return {};
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GroupSpec parse() {
    GroupSpec g = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, "group spec: " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Int integer() {
    skip();
    size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
    return std::stoll(digits);
  }

  GroupSpec expr() {
    GroupSpec g = product();
    while (accept('/')) {
      expect('[');
      IntMat central;
      do {
        IntVec v;
        do {
          v.push_back(integer());
        } while (accept(','));
        central.push_back(v);
      } while (accept(';'));
      expect(']');
      g = GroupSpec::quotient(g, central);
    }
    return g;
  }

  GroupSpec product() {
    std::vector<GroupSpec> factors{atom()};
    while (accept('*')) factors.push_back(atom());
    return GroupSpec::product(factors);
  }

  GroupSpec atom() {
    if (accept('(')) {
      GroupSpec g = expr();
      expect(')');
      return g;
    }
    skip();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name.empty()) fail("expected GL, SO, Sp or T");
    expect('(');
    Int n = integer();
    expect(')');
    try {
      if (name == "GL") return GroupSpec::gl(static_cast<int>(n));
      if (name == "SO") return GroupSpec::so(static_cast<int>(n));
      if (name == "Sp") return GroupSpec::sp(static_cast<int>(n));
      if (name == "T") return GroupSpec::torus(static_cast<int>(n));
    } catch (const UnsupportedRank& e) {
      fail(e.what());
    }
    fail("unknown group '" + name + "' (expected GL, SO, Sp or T)");
  }

  std::string_view text_;
  size_t pos_ = 0;
};

IntVec unit_form(int dim, std::initializer_list<std::pair<int, Int>> entries) {
  IntVec v(dim, 0);
  for (auto [i, c] : entries) v[i] += c;
  return v;
}

RootDatum flat_datum(int rank, std::vector<IntVec> simple, std::vector<IntVec> positive) {
  RootDatum d;
  d.flat_rank = d.rank = rank;
  d.proj = d.lift = identity_matrix(rank);
  for (auto& f : simple) d.simple_roots.push_back(LinearForm{std::move(f)});
  for (auto& f : positive) d.positive_roots.push_back(LinearForm{std::move(f)});
  return d;
}

// Form f on the quotient corresponds to f o lift.
LinearForm push_form(const LinearForm& f, const IntMat& lift) {
  IntMat lt = transpose(lift);
  return LinearForm{lt.empty() ? IntVec{} : mat_vec(lt, f.coeffs)};
}

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) { return SpecParser(text).parse(); }

RootDatum root_datum(const GroupSpec& g) {
  switch (g.kind) {
    case GroupSpec::Kind::GL: {
      int n = g.n;
      std::vector<IntVec> simple, positive;
      for (int i = 0; i + 1 < n; ++i) simple.push_back(unit_form(n, {{i, 1}, {i + 1, -1}}));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) positive.push_back(unit_form(n, {{i, 1}, {j, -1}}));
      return flat_datum(n, simple, positive);
    }
    case GroupSpec::Kind::SplitSO: {
      int r = g.n / 2;
      bool odd = g.n % 2 == 1;
      std::vector<IntVec> simple, positive;
      for (int i = 0; i + 1 < r; ++i) simple.push_back(unit_form(r, {{i, 1}, {i + 1, -1}}));
      if (odd)
        simple.push_back(unit_form(r, {{r - 1, 1}}));
      else if (r >= 2)
        simple.push_back(unit_form(r, {{r - 2, 1}, {r - 1, 1}}));
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          positive.push_back(unit_form(r, {{i, 1}, {j, -1}}));
          positive.push_back(unit_form(r, {{i, 1}, {j, 1}}));
        }
      if (odd)
        for (int i = 0; i < r; ++i) positive.push_back(unit_form(r, {{i, 1}}));
      return flat_datum(r, simple, positive);
    }
    case GroupSpec::Kind::Sp: {
      int m = g.n / 2;
      std::vector<IntVec> simple, positive;
      for (int i = 0; i + 1 < m; ++i) simple.push_back(unit_form(m, {{i, 1}, {i + 1, -1}}));
      simple.push_back(unit_form(m, {{m - 1, 2}}));
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          positive.push_back(unit_form(m, {{i, 1}, {j, -1}}));
          positive.push_back(unit_form(m, {{i, 1}, {j, 1}}));
        }
        positive.push_back(unit_form(m, {{i, 2}}));
      }
      return flat_datum(m, simple, positive);
    }
    case GroupSpec::Kind::Torus:
      return flat_datum(g.n, {}, {});
    case GroupSpec::Kind::Product: {
      std::vector<RootDatum> parts;
      RootDatum d;
      for (const auto& f : g.factors) {
        parts.push_back(root_datum(f));
        d.flat_rank += parts.back().flat_rank;
        d.rank += parts.back().rank;
      }
      d.proj.assign(d.rank, IntVec(d.flat_rank, 0));
      d.lift.assign(d.flat_rank, IntVec(d.rank, 0));
      int fo = 0, qo = 0;
      for (const auto& p : parts) {
        for (int i = 0; i < p.rank; ++i)
          for (int j = 0; j < p.flat_rank; ++j) d.proj[qo + i][fo + j] = p.proj[i][j];
        for (int i = 0; i < p.flat_rank; ++i)
          for (int j = 0; j < p.rank; ++j) d.lift[fo + i][qo + j] = p.lift[i][j];
        auto place = [&](const LinearForm& f) {
          IntVec v(d.rank, 0);
          for (int j = 0; j < p.rank; ++j) v[qo + j] = f.coeffs[j];
          return LinearForm{v};
        };
        for (const auto& f : p.simple_roots) d.simple_roots.push_back(place(f));
        for (const auto& f : p.positive_roots) d.positive_roots.push_back(place(f));
        for (const auto& k : p.kernel) {
          IntVec v(d.flat_rank, 0);
          for (int j = 0; j < p.flat_rank; ++j) v[fo + j] = k[j];
          d.kernel.push_back(v);
        }
        fo += p.flat_rank;
        qo += p.rank;
      }
      return d;
    }
    case GroupSpec::Kind::CentralQuotient: {
      RootDatum inner = root_datum(g.factors[0]);
      for (const auto& c : g.central) {
        if (static_cast<int>(c.size()) != inner.rank)
          throw DimensionMismatch("central vector length does not match the inner lattice rank");
        for (const auto& f : inner.simple_roots)
          if (pairing(f, c) != 0)
            throw InternalInconsistency("central vector " + to_string(c) + " pairs nontrivially with a simple root");
      }
      // Successive quotients by one central vector, pivoting on a unit entry.
      IntMat q = identity_matrix(inner.rank), ql = identity_matrix(inner.rank);
      int cur = inner.rank;
      IntMat remaining = g.central;
      for (size_t idx = 0; idx < remaining.size(); ++idx) {
        IntVec c = mat_vec(q, remaining[idx]);
        int p = -1;
        for (int i = cur - 1; i >= 0; --i)
          if (c[i] == 1 || c[i] == -1) {
            p = i;
            break;
          }
        if (p < 0) throw InternalInconsistency("central sublattice must have a unit coordinate to be saturated");
        IntMat step(cur - 1, IntVec(cur, 0)), step_lift(cur, IntVec(cur - 1, 0));
        for (int i = 0, r = 0; i < cur; ++i) {
          if (i == p) continue;
          step[r][i] = 1;
          step[r][p] = -c[i] * c[p];
          step_lift[i][r] = 1;
          ++r;
        }
        q = mat_mul(step, q);
        ql = ql.empty() ? ql : mat_mul(ql, step_lift);
        --cur;
      }
      RootDatum d;
      d.flat_rank = inner.flat_rank;
      d.rank = cur;
      d.proj = cur == 0 ? IntMat{} : mat_mul(q, inner.proj);
      d.lift = mat_mul(inner.lift, ql);
      if (cur == 0) d.lift.assign(inner.flat_rank, IntVec{});
      for (const auto& f : inner.simple_roots) d.simple_roots.push_back(push_form(f, ql));
      for (const auto& f : inner.positive_roots) d.positive_roots.push_back(push_form(f, ql));
      d.kernel = inner.kernel;
      for (const auto& c : g.central) d.kernel.push_back(mat_vec(inner.lift, c));
      return d;
    }
  }
  throw InternalInconsistency("unreachable group kind");
}

// ---------------------------------------------------------------- Weyl

IntVec weyl_apply(const WeylElement& w, const IntVec& x) {
  if (w.matrix.size() != x.size())
    throw DimensionMismatch("Weyl element " + w.name + " acts on dimension " + std::to_string(w.matrix.size()));
  return mat_vec(w.matrix, x);
}

WeylElement weyl_inverse(const WeylElement& w) {
  return WeylElement{w.name + "^-1", unimodular_inverse(w.matrix)};
}

// ---------------------------------------------------------------- pairs

IntVec SphericalPair::embed_point(const IntVec& x) const {
  if (static_cast<int>(x.size()) != h_rank()) throw DimensionMismatch("point is not on the H lattice");
  return mat_vec(embed, x);
}

const WeylElement& SphericalPair::weyl_by_name(const std::string& n) const {
  for (const auto& w : weyl)
    if (w.name == n) return w;
  throw UnknownPair("pair " + name + " has no Weyl element named '" + n + "'");
}

int SphericalPair::delta_g_index(const std::string& n) const {
  for (size_t i = 0; i < delta_g.size(); ++i)
    if (delta_g[i].name == n) return static_cast<int>(i);
  return -1;
}

int SphericalPair::delta_h_index(const std::string& n) const {
  for (size_t i = 0; i < delta_h.size(); ++i)
    if (delta_h[i].name == n) return static_cast<int>(i);
  return -1;
}

LinearForm SphericalPair::pullback(const LinearForm& g_form, const WeylElement& w) const {
  IntMat we = mat_mul(w.matrix, embed);
  IntVec coeffs(h_rank(), 0);
  for (int j = 0; j < h_rank(); ++j)
    for (int i = 0; i < g_rank(); ++i) coeffs[j] = add_checked(coeffs[j], mul_checked(g_form.coeffs[i], we[i][j]));
  return LinearForm{coeffs};
}

namespace {

std::vector<std::string> default_labels(const std::string& prefix, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

IntMat push_map(const RootDatum& target, const IntMat& m, const RootDatum& source, const std::string& what) {
  if (static_cast<int>(m.size()) != target.flat_rank || columns(m, source.flat_rank) != source.flat_rank)
    throw DimensionMismatch(what + " has the wrong shape");
  for (const auto& k : source.kernel) {
    IntVec img = mat_vec(m, k);
    IntVec q = target.rank == 0 ? IntVec{} : mat_vec(target.proj, img);
    if (!is_zero(q)) throw InternalInconsistency(what + " does not respect the central quotient");
  }
  if (target.rank == 0) return {};
  IntMat r = mat_mul(mat_mul(target.proj, m), source.lift);
  if (source.rank == 0) r.assign(target.rank, IntVec{});
  return r;
}

bool is_root(const std::vector<LinearForm>& positive, const IntVec& f) {
  for (const auto& p : positive) {
    if (p.coeffs == f) return true;
    if (scale(p.coeffs, -1) == f) return true;
  }
  return false;
}

}  // namespace

SphericalPair make_pair(const PairDefinition& def) {
  SphericalPair p;
  p.definition = def;
  p.name = def.name;
  RootDatum gd = root_datum(def.g);
  RootDatum hd = root_datum(def.h);
  if (hd.rank > 6) throw GuardViolation("H-lattice rank above 6 is not supported");
  p.g_lattice.labels = def.g_labels.empty() ? default_labels("y", gd.rank) : def.g_labels;
  p.h_lattice.labels = def.h_labels.empty() ? default_labels("x", hd.rank) : def.h_labels;
  if (p.g_lattice.rank() != gd.rank || p.h_lattice.rank() != hd.rank)
    throw DimensionMismatch("coordinate labels do not match the lattice ranks");

  p.embed = push_map(gd, def.embed, hd, "embedding");
  if (hd.rank > 0 && matrix_rank(p.embed) != hd.rank) throw InternalInconsistency("embedding is not injective");

  auto name_roots = [](const std::vector<LinearForm>& forms, const std::vector<std::string>& names,
                       const std::string& prefix) {
    if (!names.empty() && names.size() != forms.size())
      throw DimensionMismatch("expected " + std::to_string(forms.size()) + " " + prefix + " root names");
    std::vector<NamedForm> out;
    for (size_t i = 0; i < forms.size(); ++i)
      out.push_back(NamedForm{names.empty() ? prefix + std::to_string(i + 1) : names[i], forms[i]});
    return out;
  };
  p.delta_g = name_roots(gd.simple_roots, def.g_root_names, "g");
  p.delta_h = name_roots(hd.simple_roots, def.h_root_names, "h");
  p.positive_h = hd.positive_roots;
  if (p.delta_g.size() > 30 || p.delta_h.size() > 30) throw GuardViolation("too many simple roots");

  if (def.c_h.size() > 1) throw UnsupportedRank("at most one complement character is supported");
  for (const auto& [n, v] : def.c_h) {
    if (static_cast<int>(v.size()) != hd.flat_rank) throw DimensionMismatch("complement character has wrong length");
    for (const auto& k : hd.kernel)
      if (dot(v, k) != 0) throw InternalInconsistency("complement character is not defined on the quotient");
    NamedForm f{n, push_form(LinearForm{v}, hd.lift)};
    if (hd.rank == 0) f.form.coeffs.clear();
    p.c_h.push_back(f);
  }
  IntMat basis;
  for (const auto& f : p.delta_h) basis.push_back(f.form.coeffs);
  for (const auto& f : p.c_h) basis.push_back(f.form.coeffs);
  if (static_cast<int>(basis.size()) != hd.rank || (hd.rank > 0 && matrix_rank(basis) != hd.rank))
    throw InternalInconsistency("simple roots of H together with C_H must form a basis");

  std::vector<std::string> seen;
  for (const auto& [n, m] : def.weyl) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end())
      throw InternalInconsistency("duplicate Weyl element name " + n);
    seen.push_back(n);
    WeylElement w{n, push_map(gd, m, gd, "Weyl element " + n)};
    Rational det = determinant(w.matrix);
    if (det != 1 && det != -1) throw InternalInconsistency("Weyl element " + n + " is not invertible over Z");
    for (const auto& a : p.delta_g) {
      IntVec img = mat_vec(transpose(w.matrix), a.form.coeffs);
      if (!is_root(gd.positive_roots, img))
        throw InternalInconsistency("Weyl element " + n + " does not map " + a.name + " to a root");
    }
    p.weyl.push_back(w);
  }
  if (p.weyl.empty()) throw InternalInconsistency("a pair needs at least the identity Weyl element");

  std::vector<Int> computed = modulus_exponents(p);
  if (!def.n_exp.empty() && def.n_exp != computed)
    throw InternalInconsistency("stated modulus exponents disagree with the positive roots of H");
  p.n_exp = computed;
  return p;
}

std::vector<Int> modulus_exponents(const SphericalPair& pair) {
  int r = pair.h_rank();
  if (r == 0) return {};
  IntVec rho2(r, 0);
  for (const auto& f : pair.positive_h) rho2 = add(rho2, f.coeffs);
  // Columns of B are the basis forms; solve B c = rho2.
  IntMat b(r, IntVec(r, 0));
  std::vector<const LinearForm*> basis;
  for (const auto& f : pair.delta_h) basis.push_back(&f.form);
  for (const auto& f : pair.c_h) basis.push_back(&f.form);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) b[i][j] = basis[j]->coeffs[i];
  RatVec c = rat_mat_vec(rational_inverse(b), rho2);
  std::vector<Int> out;
  for (size_t j = 0; j < pair.delta_h.size(); ++j) {
    if (c[j].get_den() != 1 || c[j] <= 0)
      throw InternalInconsistency("modulus exponent of " + pair.delta_h[j].name + " is not a positive integer");
    out.push_back(c[j].get_num().get_si());
  }
  for (size_t j = pair.delta_h.size(); j < c.size(); ++j)
    if (c[j] != 0) throw InternalInconsistency("sum of positive roots has a nonzero C_H component");
  return out;
}

RootMask mask_from_names(const std::vector<NamedForm>& roots, const std::vector<std::string>& names) {
  RootMask m = 0;
  for (const auto& n : names) {
    bool found = false;
    for (size_t i = 0; i < roots.size(); ++i)
      if (roots[i].name == n) {
        m |= RootMask(1) << i;
        found = true;
      }
    if (!found) throw UnknownPair("unknown root name '" + n + "'");
  }
  return m;
}

std::vector<std::string> names_from_mask(const std::vector<NamedForm>& roots, RootMask mask) {
  std::vector<std::string> v;
  for (size_t i = 0; i < roots.size(); ++i)
    if (mask & (RootMask(1) << i)) v.push_back(roots[i].name);
  return v;
}

std::string mask_to_string(const std::vector<NamedForm>& roots, RootMask mask) {
  auto names = names_from_mask(roots, mask);
  std::string s = "{";
  for (size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + "}";
}

}  // namespace sphred
