#include "sphred/numeric.hpp"

#include <cstdlib>
#include <stdexcept>

#include "sphred/errors.hpp"

namespace sphred {

Int add_checked(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

Int mul_checked(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors with different lengths");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s = add_checked(s, mul_checked(a[i], b[i]));
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum with different lengths");
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = add_checked(a[i], b[i]);
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference with different lengths");
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = add_checked(a[i], -b[i]);
  return r;
}

IntVec scale(const IntVec& a, Int k) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mul_checked(a[i], k);
  return r;
}

bool is_zero(const IntVec& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

IntMat identity_matrix(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

int columns(const IntMat& m, int fallback) { return m.empty() ? fallback : static_cast<int>(m[0].size()); }

IntMat transpose(const IntMat& m) {
  if (m.empty()) return {};
  IntMat t(m[0].size(), IntVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.empty()) return {};
  size_t inner = a[0].size();
  if (inner != b.size()) throw DimensionMismatch("matrix product with incompatible shapes");
  size_t cols = b.empty() ? 0 : b[0].size();
  IntMat r(a.size(), IntVec(cols, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j) r[i][j] = add_checked(r[i][j], mul_checked(a[i][k], b[k][j]));
    }
  return r;
}

IntVec mat_vec(const IntMat& m, const IntVec& x) {
  IntVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

namespace {

RatMat to_rational(const IntMat& m) {
  RatMat r(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    r[i].reserve(m[i].size());
    for (Int x : m[i]) r[i].emplace_back(make_rational(x));
  }
  return r;
}

// Row echelon form in place; returns rank and accumulates the determinant sign/product.
int echelon(RatMat& a, Rational* det) {
  size_t rows = a.size();
  size_t cols = rows == 0 ? 0 : a[0].size();
  int rank = 0;
  if (det) *det = 1;
  for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
    size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      if (det) *det = 0;
      continue;
    }
    if (p != static_cast<size_t>(rank)) {
      std::swap(a[p], a[rank]);
      if (det) *det = -*det;
    }
    if (det) *det *= a[rank][c];
    for (size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Rational determinant(const IntMat& m) {
  if (m.empty()) return 1;
  if (m.size() != m[0].size()) throw DimensionMismatch("determinant of a non-square matrix");
  RatMat a = to_rational(m);
  Rational det;
  int rank = echelon(a, &det);
  if (rank < static_cast<int>(m.size())) return 0;
  return det;
}

int matrix_rank(const IntMat& m) {
  RatMat a = to_rational(m);
  return echelon(a, nullptr);
}

RatMat rational_inverse(const IntMat& m) {
  size_t n = m.size();
  if (n > 0 && m[0].size() != n) throw DimensionMismatch("inverse of a non-square matrix");
  RatMat a = to_rational(m);
  RatMat inv(n, RatVec(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InternalInconsistency("matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational piv = a[c][c];
    for (size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

RatVec rat_mat_vec(const RatMat& m, const IntVec& x) {
  RatVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != x.size()) throw DimensionMismatch("matrix-vector product with incompatible shapes");
    for (size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) r[i] += m[i][j] * make_rational(x[j]);
  }
  return r;
}

IntMat unimodular_inverse(const IntMat& m) {
  Rational det = determinant(m);
  if (det != 1 && det != -1) throw InternalInconsistency("matrix is not unimodular");
  RatMat inv = rational_inverse(m);
  IntMat r(inv.size(), IntVec(inv.size()));
  for (size_t i = 0; i < inv.size(); ++i)
    for (size_t j = 0; j < inv.size(); ++j) r[i][j] = inv[i][j].get_num().get_si();
  return r;
}

Rational make_rational(Int num, Int den) {
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational rational_pow(const Rational& base, Int exponent) {
  if (exponent < 0) {
    if (base == 0) throw ZeroDenominator("negative power of zero");
    Rational inv = 1 / base;
    return rational_pow(inv, -exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational");
  size_t slash = t.find('/');
  auto valid_int = [](const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? t : t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + text + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

double to_double(const Rational& x) { return x.get_d(); }

}  // namespace sphred
