#include <gtest/gtest.h>

#include <random>

#include "../support/oracles.hpp"
#include "sphred/errors.hpp"

using namespace sphred;
using sphred::oracle::random_module;

namespace {

ExpTerm<Rational> term(const Rational& lambda, std::vector<Rational> chi, LaurentPoly<Rational> poly) {
  return {lambda, std::move(chi), std::move(poly)};
}

LaurentPoly<Rational> constant(int r, const Rational& c) { return {{IntVec(r, 0), c}}; }

ToyModule<Rational> geometric(const Rational& lambda) {
  ToyModule<Rational> m;
  m.coefficient.terms.push_back(term(1, {lambda}, constant(1, 1)));
  return m;
}

// (Shift_s)^i applied to c, evaluated at t.
Rational shifted(const ExpPolyCoefficient<Rational>& c, const IntVec& s, int i, const IntVec& t) {
  return c(add(t, scale(s, i)));
}

}  // namespace

TEST(Series, CoefficientEvaluationExamples) {
  Rational l0 = make_rational(2, 3);
  ExpPolyCoefficient<Rational> c{{term(1, {l0}, constant(1, 1))}};
  EXPECT_EQ(coeff_eval(c, {3}), l0 * l0 * l0);
  ExpPolyCoefficient<Rational> lin{{term(5, {1}, {{{1}, Rational(1)}})}};
  EXPECT_EQ(coeff_eval(lin, {4}), 20);
  ExpPolyCoefficient<Rational> both{{c.terms[0], lin.terms[0]}};
  EXPECT_EQ(coeff_eval(both, {4}), coeff_eval(c, {4}) + coeff_eval(lin, {4}));
  EXPECT_THROW(coeff_eval(c, {1, 2}), DimensionMismatch);
}

TEST(Series, AnnihilatorExamples) {
  Rational l = make_rational(1, 5);
  EXPECT_EQ(annihilator(geometric(l).coefficient, {1}).a, (std::vector<Rational>{-l, 1}));
  EXPECT_EQ(annihilator(geometric(l).coefficient, {1}).to_string(), "X - 1/5");
  ExpPolyCoefficient<Rational> one{{term(7, {1}, constant(1, 1))}};
  EXPECT_EQ(annihilator(one, {1}).a, (std::vector<Rational>{-1, 1}));
  ExpPolyCoefficient<Rational> tl{{term(1, {l}, {{{1}, Rational(1)}})}};
  EXPECT_EQ(annihilator(tl, {1}).a, (std::vector<Rational>{l * l, -2 * l, 1}));
  ExpPolyCoefficient<Rational> zero_chi{{term(1, {0}, constant(1, 1))}};
  EXPECT_THROW(annihilator(zero_chi, {1}), NonUnitEigenvalue);
}

TEST(Series, AnnihilatorKillsTheCoefficient) {
  // sum_i a_i c(t + i s) = 0 at random points, for every catalog triple shift.
  std::mt19937_64 rng(31);
  for (const auto& item : catalog()) {
    const auto& pair = *item.pair;
    std::uniform_int_distribution<Int> coord(-6, 6);
    for (const auto& e : item.structure.entries) {
      auto m = random_module(rng, pair);
      auto c = m.on(item.structure.sector);
      auto P = annihilator(m, pair, item.structure.sector, e.triple);
      EXPECT_TRUE(Ring<Rational>::is_unit(P.a.front()) && Ring<Rational>::is_unit(P.a.back()));
      for (int k = 0; k < 4; ++k) {
        IntVec t(pair.h_rank());
        for (auto& x : t) x = coord(rng);
        Rational sum = 0;
        for (int i = 0; i <= P.degree(); ++i) sum += P.a[i] * shifted(c, e.triple.s, i, t);
        EXPECT_EQ(sum, 0) << item.key;
      }
    }
  }
}

TEST(Series, TruncateExamples) {
  auto triple = catalog_pair("triple");
  Rational l = make_rational(3, 7);
  auto t = truncate(geometric(l), *triple, {0, Sector::None}, 2);
  EXPECT_EQ(t, (LaurentPoly<Rational>{{{1}, l}, {{2}, l * l}}));
  auto full = truncate(geometric(l), *triple, {1, Sector::None}, 5);
  EXPECT_EQ(full, constant(1, 1));
  auto wal = catalog_pair("waldspurger");
  EXPECT_TRUE(truncate(geometric(l), *wal, {0, Sector::Plus}, 0).empty());
}

TEST(Series, ReduceGeometricOnTheTriple) {
  auto triple = catalog_pair("triple");
  auto st = catalog_structures("triple");
  Rational l = make_rational(1, 5);
  auto rs = reduce(geometric(l), *triple, {0, Sector::None}, st);
  EXPECT_EQ(rs.numerator, (LaurentPoly<Rational>{{{1}, l}}));
  ASSERT_EQ(rs.factors.size(), 1u);
  EXPECT_EQ(rs.factors[0].P.a, (std::vector<Rational>{-l, 1}));
  EXPECT_EQ(rs.factors[0].shift, IntVec{1});
  EXPECT_EQ(expand(rs, 3), (LaurentPoly<Rational>{{{1}, l}, {{2}, l * l}, {{3}, l * l * l}}));

  auto origin = reduce(geometric(l), *triple, {1, Sector::None}, st);
  EXPECT_EQ(origin.numerator, constant(1, 1));
  EXPECT_TRUE(origin.factors.empty());
}

TEST(Series, ReduceWaldspurgerSectors) {
  auto wal = catalog_pair("waldspurger");
  auto st = catalog_structures("waldspurger");
  Rational lp = make_rational(1, 3), lm = make_rational(1, 4), mu = 5;
  ToyModule<Rational> m;
  m.sector_coefficients[Sector::Plus].terms.push_back(term(1, {lp}, constant(1, 1)));
  m.sector_coefficients[Sector::Minus].terms.push_back(term(1, {1 / lm}, constant(1, 1)));
  m.sector_coefficients[Sector::Zero].terms.push_back(term(mu, {1}, constant(1, 1)));
  // Sum over the three sectors at T = 1 is lp/(1-lp) + mu + lm/(1-lm).
  Rational total = 0;
  for (auto s : sectors_of(*wal)) {
    auto sp = specialize(reduce(m, *wal, {0, s}, st), 3, wal->n_exp);
    total += eval_at_one(sp.Q, sp.P).value;
  }
  EXPECT_EQ(total, lp / (1 - lp) + mu + lm / (1 - lm));
}

TEST(Series, ExpandOfAProductIsTheConvolution) {
  RationalSeries<Rational> a, b, ab;
  a.monomial = b.monomial = ab.monomial = {0, 0};
  a.numerator = b.numerator = ab.numerator = constant(2, 1);
  DenomFactor<Rational> f{{{-make_rational(1, 2), 1}}, {1, 0}}, g{{{make_rational(1, 3), 0, 1}}, {0, 1}};
  a.factors = {f};
  b.factors = {g};
  ab.factors = {f, g};
  const Int N = 8;
  auto ea = expand(a, N), eb = expand(b, N), eab = expand(ab, N);
  LaurentPoly<Rational> conv;
  for (const auto& [x, c] : poly_mul(ea, eb))
    if (total_degree(x) <= N) add_term(conv, x, c);
  for (const auto& [x, c] : eab) EXPECT_EQ(c, conv.count(x) ? conv.at(x) : Rational(0)) << to_string(x);
  EXPECT_EQ(expand(RationalSeries<Rational>{constant(2, 7), {0, 0}, {}}, 4), constant(2, 7));
}

TEST(Series, ExpandMatchesTruncateOnRandomModules) {
  std::mt19937_64 rng(32);
  for (const char* name : {"triple", "waldspurger", "gl2", "so3", "so4", "gl3"}) {
    auto pair = catalog_pair(name);
    auto st = catalog_structures(name);
    for (const auto& cone : all_cones(*pair)) {
      auto m = random_module(rng, *pair);
      const Int N = pair->h_rank() > 2 ? 10 : 16;
      EXPECT_EQ(expand(reduce(m, *pair, cone, st), N), truncate(m, *pair, cone, N)) << name << " "
                                                                                    << cone_label(*pair, cone);
    }
  }
}

TEST(Series, SpecializeExamples) {
  auto triple = catalog_pair("triple");
  Rational l = make_rational(1, 5);
  auto sp = specialize(reduce(geometric(l), *triple, {0, Sector::None}, catalog_structures("triple")), 3,
                       triple->n_exp);
  EXPECT_EQ(sp.Q, (UniPoly<Rational>{0, 3 * l}));
  EXPECT_EQ(sp.P, (UniPoly<Rational>{1, -3 * l}));
  RationalSeries<Rational> c{constant(1, 4), {0}, {}};
  auto cs = specialize(c, 3, triple->n_exp);
  EXPECT_EQ(cs.Q, UniPoly<Rational>{4});
  EXPECT_EQ(cs.P, UniPoly<Rational>{1});
}

TEST(Series, SpecializationMatchesTheSubstitutedTruncation) {
  // T_alpha -> q^N S, T_beta -> S applied to the brute-force series.
  std::mt19937_64 rng(33);
  auto gl = catalog_pair("gl2");
  auto st = catalog_structures("gl2");
  const Rational q = 3;
  const int K = 20;
  for (const auto& cone : all_cones(*gl)) {
    auto m = random_module(rng, *gl);
    auto sp = specialize(reduce(m, *gl, cone, st), q, gl->n_exp);
    UniPoly<Rational> expected(K + 1, Rational(0));
    for (const auto& [e, c] : truncate(m, *gl, cone, K))
      expected[total_degree(e)] += c * rational_pow(q, gl->n_exp[0] * e[0]);
    EXPECT_EQ(uni_expand(sp, K), expected) << cone_label(*gl, cone);
  }
}

TEST(Series, FamilyRingCommutesWithEvaluation) {
  auto triple = catalog_pair("triple");
  auto st = catalog_structures("triple");
  ToyModule<LaurentU> fam;
  LaurentU chi = LaurentU::monomial(make_rational(1, 10), 1);
  fam.coefficient.terms.push_back({LaurentU(1), {chi}, {{IntVec{0}, LaurentU(2)}, {IntVec{1}, LaurentU::u()}}});
  for (Rational u0 : {Rational(1), Rational(2), Rational(-1), make_rational(1, 2), make_rational(7, 3)}) {
    EvalPoint x{u0};
    for (const auto& cone : all_cones(*triple)) {
      auto generic = specialize(reduce(fam, *triple, cone, st), 3, triple->n_exp);
      auto point = specialize(reduce(evaluate_module(fam, u0), *triple, cone, st), 3, triple->n_exp);
      EXPECT_EQ(uni_expand(Specialized<Rational>{x.apply(generic.Q), x.apply(generic.P)}, 12), uni_expand(point, 12));
      auto rs = reduce(fam, *triple, cone, st);
      LaurentPoly<Rational> ev;
      for (const auto& [e, c] : expand(rs, 12)) add_term(ev, e, c.evaluate(u0));
      EXPECT_EQ(ev, expand(reduce(evaluate_module(fam, u0), *triple, cone, st), 12));
    }
  }
}

TEST(Series, MissingStructureIsReported) {
  auto triple = catalog_pair("triple");
  std::map<StdConeId, ReductionStructure> none;
  EXPECT_THROW(reduce(geometric(2), *triple, {0, Sector::None}, none), MissingStructure);
  EXPECT_NO_THROW(reduce(geometric(2), *triple, {1, Sector::None}, none));
}

TEST(Series, PrintedForms) {
  auto triple = catalog_pair("triple");
  auto rs = reduce(geometric(make_rational(1, 5)), *triple, {0, Sector::None}, catalog_structures("triple"));
  EXPECT_EQ(rs.to_string(series_variables(*triple)), "(1/5*T_a) / (1 - 1/5*T_a)");
  EXPECT_EQ(uni_to_string(UniPoly<Rational>{1, -3, 0, 2}), "1 - 3*S + 2*S^3");
}
