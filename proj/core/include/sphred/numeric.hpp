#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace sphred {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
// Row-major integer matrix.
using IntMat = std::vector<IntVec>;
using Rational = mpq_class;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

// Checked 64-bit arithmetic; throws ArithmeticOverflow.
Int add_checked(Int a, Int b);
Int mul_checked(Int a, Int b);
Int gcd(Int a, Int b);
Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);

Int dot(const IntVec& a, const IntVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, Int k);
bool is_zero(const IntVec& a);

IntMat identity_matrix(int n);
IntMat transpose(const IntMat& m);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& m, const IntVec& x);
int columns(const IntMat& m, int fallback = 0);

Rational determinant(const IntMat& m);
int matrix_rank(const IntMat& m);
// Exact inverse of a square matrix; throws if singular.
RatMat rational_inverse(const IntMat& m);
RatVec rat_mat_vec(const RatMat& m, const IntVec& x);
// Inverse of a unimodular matrix; throws if det is not +-1.
IntMat unimodular_inverse(const IntMat& m);

Rational make_rational(Int num, Int den = 1);
Rational rational_pow(const Rational& base, Int exponent);
Rational abs_value(const Rational& x);
// Parses "a", "-a/b". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);
std::string to_string(const IntVec& v);
double to_double(const Rational& x);

}  // namespace sphred
