#include <gtest/gtest.h>

#include <random>

#include "../support/oracles.hpp"
#include "sphred/errors.hpp"

using namespace sphred;

namespace {

ToyModule<Rational> geometric(const Rational& lambda, const Rational& c0 = 1) {
  ToyModule<Rational> m;
  m.coefficient.terms.push_back({c0, {lambda}, {{IntVec{0}, Rational(1)}}});
  return m;
}

}  // namespace

TEST(Period, EvalAtOneExamples) {
  auto a = eval_at_one({1}, {1, make_rational(-1, 2)});
  ASSERT_TRUE(a.is_value());
  EXPECT_EQ(a.value, 2);
  auto b = eval_at_one({3, -3}, {1, -1});
  ASSERT_TRUE(b.is_value());
  EXPECT_EQ(b.value, 3);
  auto c = eval_at_one({1}, {1, -1});
  EXPECT_FALSE(c.is_value());
  EXPECT_EQ(c.ord_p, 1);
  EXPECT_EQ(c.ord_q, 0);
  EXPECT_THROW(eval_at_one({1}, {}), ZeroDenominator);
}

TEST(Period, EvalAtOneOnRandomQuotients) {
  // Q = (1 - S)^k A, P = (1 - S)^j B with A(1), B(1) != 0.
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    UniPoly<Rational> A{oracle::random_rational(rng, 5, 3), oracle::random_rational(rng, 5, 3)};
    UniPoly<Rational> B{1, oracle::random_rational(rng, 5, 3)};
    if (A[0] + A[1] == 0 || B[0] + B[1] == 0) continue;
    int k = trial % 3, j = (trial / 3) % 3;
    UniPoly<Rational> Q = A, P = B;
    for (int i = 0; i < k; ++i) Q = uni_mul(Q, UniPoly<Rational>{1, -1});
    for (int i = 0; i < j; ++i) P = uni_mul(P, UniPoly<Rational>{1, -1});
    auto r = eval_at_one(Q, P);
    EXPECT_EQ(r.ord_p, j);
    if (k < j) {
      EXPECT_FALSE(r.is_value());
    } else {
      ASSERT_TRUE(r.is_value());
      EXPECT_EQ(r.value, k == j ? (A[0] + A[1]) / (B[0] + B[1]) : Rational(0));
    }
  }
}

TEST(Period, TemperednessMarginExamples) {
  auto triple = catalog_pair("triple");
  EXPECT_EQ(temperedness_margin(geometric(make_rational(1, 5)), *triple, 3), make_rational(2, 5));
  EXPECT_FALSE(temperedness_margin(geometric(make_rational(1, 2)), *triple, 3));
  EXPECT_FALSE(temperedness_margin(geometric(1), *triple, 2));
  EXPECT_THROW(temperedness_margin(geometric(1), *triple, 1), GuardViolation);
}

TEST(Period, CartanVolumeOnGl2Cells) {
  auto gl = catalog_pair("gl2");
  for (Rational q : {Rational(2), Rational(3), Rational(5)}) {
    auto cfg = default_volume(*gl, q);
    for (Int a = 1; a <= 6; ++a)
      for (Int b = -2; b <= 2; ++b)
        EXPECT_EQ(cartan_volume(*gl, 0, {a + b, b}, cfg), (1 + 1 / q) * rational_pow(q, a));
    for (Int b = -2; b <= 2; ++b) EXPECT_EQ(cartan_volume(*gl, 1, {b, b}, cfg), 1);
  }
  VolumeConfig cfg;
  cfg.q = 5;
  cfg.constants[0] = make_rational(6, 5);
  EXPECT_EQ(cartan_volume(*gl, 0, {2, 0}, cfg), 30);
  EXPECT_THROW(cartan_volume(*gl, 0, {0, 0}, cfg), NotInCone);
  EXPECT_THROW(cartan_volume(*gl, 0, {1}, cfg), DimensionMismatch);
}

TEST(Period, CartanVolumeIsMultiplicativeOnTheStrictCone) {
  // delta^{-1}(t t') = delta^{-1}(t) delta^{-1}(t') for t, t' in the same cone.
  for (const char* name : {"gl2", "gl4gl2", "sp6sp4"}) {
    auto pair = catalog_pair(name);
    VolumeConfig cfg;
    cfg.q = 3;
    ConstraintSet cone = std_cone(*pair, {0, sectors_of(*pair).front()});
    auto pts = enumerate_box(cone, 5);
    ASSERT_GE(pts.size(), 2u) << name;
    for (size_t i = 0; i + 1 < pts.size() && i < 20; ++i) {
      IntVec s = add(pts[i], pts[i + 1]);
      ASSERT_TRUE(cone.contains(s));
      EXPECT_EQ(cartan_volume(*pair, 0, s, cfg),
                cartan_volume(*pair, 0, pts[i], cfg) * cartan_volume(*pair, 0, pts[i + 1], cfg))
          << name;
    }
  }
}

TEST(Period, VolumeConfigValidation) {
  VolumeConfig cfg;
  cfg.q = 1;
  EXPECT_THROW(cfg.validate(), GuardViolation);
  cfg.q = 3;
  cfg.constants[0] = -1;
  EXPECT_THROW(cfg.validate(), GuardViolation);
}

TEST(Period, TripleGeometricModule) {
  auto triple = catalog_pair("triple");
  Rational q = 3, l = make_rational(1, 5);
  auto cfg = default_volume(*triple, q);
  auto rep = assemble_period(geometric(l), *triple, cfg, catalog_structures("triple"));
  ASSERT_TRUE(rep.total.is_value());
  EXPECT_EQ(rep.total.value, 1 + (1 + 1 / q) * l * q / (1 - l * q));
  EXPECT_EQ(rep.total.value, 3);
  EXPECT_EQ(rep.summands.size(), 2u);
  EXPECT_LT(oracle::abs_diff(brute_force_period(geometric(l), *triple, cfg, 200), rep.total.value), 1e-6);
  EXPECT_EQ(brute_force_period(geometric(l, 4), *triple, cfg, 0), 4 * cfg.constant(1));
}

TEST(Period, BruteForceTailShrinksGeometrically) {
  auto triple = catalog_pair("triple");
  Rational l = make_rational(1, 4);
  auto cfg = default_volume(*triple, 3);
  auto m = geometric(l);
  Rational v = assemble_period(m, *triple, cfg, catalog_structures("triple")).total.value;
  Rational ratio = 1 - *temperedness_margin(m, *triple, 3);
  Rational prev = abs_value(brute_force_period(m, *triple, cfg, 0) - v);
  for (Int N = 1; N <= 30; ++N) {
    Rational err = abs_value(brute_force_period(m, *triple, cfg, N) - v);
    EXPECT_EQ(err, prev * ratio) << N;
    prev = err;
  }
}

TEST(Period, NonTemperedModuleHitsAPole) {
  auto triple = catalog_pair("triple");
  auto cfg = default_volume(*triple, 3);
  auto rep = assemble_period(geometric(make_rational(1, 3)), *triple, cfg, catalog_structures("triple"));
  ASSERT_FALSE(rep.total.is_value());
  EXPECT_EQ(rep.total.location, "{}");
}

TEST(Period, WaldspurgerClosedForm) {
  std::mt19937_64 rng(42);
  auto wal = catalog_pair("waldspurger");
  VolumeConfig cfg;
  cfg.q = 3;
  for (int trial = 0; trial < 10; ++trial) {
    ToyModule<Rational> m;
    m.sector_coefficients[Sector::Plus].terms = {oracle::bounded_term(rng, 1, make_rational(4, 5), false, 2)};
    m.sector_coefficients[Sector::Zero].terms = {oracle::bounded_term(rng, 1, 2, false, 2)};
    m.sector_coefficients[Sector::Minus].terms = {oracle::bounded_term(rng, 1, make_rational(4, 5), true, 2)};
    auto rep = assemble_period(m, *wal, cfg, catalog_structures("waldspurger"));
    ASSERT_TRUE(rep.total.is_value());
    EXPECT_EQ(rep.total.value, oracle::waldspurger_closed_form(m));
    EXPECT_EQ(rep.summands.size(), 3u);
  }
}

TEST(Period, FamilyEvaluationAndOrderJump) {
  auto triple = catalog_pair("triple");
  auto cfg = default_volume(*triple, 3);
  ToyModule<LaurentU> fam;
  fam.coefficient.terms.push_back({LaurentU(1), {LaurentU::monomial(make_rational(1, 10), 1)}, {{IntVec{0}, LaurentU(1)}}});
  for (Rational u0 : {Rational(1), Rational(2), Rational(3), Rational(-1), make_rational(1, 2)}) {
    auto rep = assemble_family_period(fam, *triple, cfg, catalog_structures("triple"), u0);
    ASSERT_EQ(rep.total.kind, FamilyResult::Kind::Value);
    Rational x = u0 / 10 * 3;
    EXPECT_EQ(rep.total.value, 1 + (1 + make_rational(1, 3)) * x / (1 - x));
  }
  auto jump = assemble_family_period(fam, *triple, cfg, catalog_structures("triple"), make_rational(10, 3));
  EXPECT_EQ(jump.total.kind, FamilyResult::Kind::OrderJump);
  EXPECT_EQ(jump.total.generic_order, 0);
  EXPECT_EQ(jump.total.order_at_point, 1);
  EXPECT_THROW(eval_family({LaurentU(1)}, {LaurentU(1)}, 0), ZeroDenominator);
}

TEST(Period, ConeRaysAndLabels) {
  auto gl = catalog_pair("gl2");
  EXPECT_EQ(cone_rays(*gl, {0, Sector::Plus}), (std::vector<IntVec>{{1, 0}, {1, 1}}));
  EXPECT_EQ(cone_rays(*gl, {0, Sector::Minus}), (std::vector<IntVec>{{1, 0}, {-1, -1}}));
  EXPECT_EQ(cone_rays(*gl, {1, Sector::Zero}), std::vector<IntVec>{});
  EXPECT_EQ(cone_label(*gl, {1, Sector::Minus}), "{a1}/minus");
  EXPECT_EQ(all_cones(*gl).size(), 6u);
  EXPECT_EQ(all_cones(*gl).front(), (StdConeId{1, Sector::Plus}));
}
