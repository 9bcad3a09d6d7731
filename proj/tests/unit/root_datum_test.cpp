#include <gtest/gtest.h>

#include <set>

#include "sphred/errors.hpp"
#include "sphred/reduction.hpp"

using namespace sphred;

namespace {

std::set<IntVec> root_set(const std::vector<LinearForm>& positive) {
  std::set<IntVec> out;
  for (const auto& f : positive) {
    out.insert(f.coeffs);
    out.insert(scale(f.coeffs, -1));
  }
  return out;
}

// Smallest nonnegative integers N with sum N_i alpha_i = sum of positive roots, by search.
std::vector<Int> two_rho_coefficients(const SphericalPair& p) {
  IntVec target(p.h_rank(), 0);
  for (const auto& f : p.positive_h) target = add(target, f.coeffs);
  size_t k = p.delta_h.size();
  std::vector<Int> n(k, 0);
  for (;;) {
    IntVec s(p.h_rank(), 0);
    for (size_t i = 0; i < k; ++i) s = add(s, scale(p.delta_h[i].form.coeffs, n[i]));
    if (s == target) return n;
    size_t i = 0;
    while (i < k && ++n[i] > 12) n[i++] = 0;
    if (i == k) return {};
  }
}

}  // namespace

TEST(RootDatum, PositiveRootCountsByType) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(root_datum(GroupSpec::gl(n)).positive_roots.size(), size_t(n * (n - 1) / 2));
  for (int m = 1; m <= 3; ++m) {
    EXPECT_EQ(root_datum(GroupSpec::so(2 * m + 1)).positive_roots.size(), size_t(m * m)) << "B" << m;
    EXPECT_EQ(root_datum(GroupSpec::sp(2 * m)).positive_roots.size(), size_t(m * m)) << "C" << m;
  }
  for (int m = 2; m <= 4; ++m)
    EXPECT_EQ(root_datum(GroupSpec::so(2 * m)).positive_roots.size(), size_t(m * (m - 1))) << "D" << m;
}

TEST(RootDatum, PairingExamples) {
  EXPECT_EQ(pairing(LinearForm{{1, -1}}, {3, 1}), 2);
  EXPECT_EQ(pairing(LinearForm{{1, -1}}, {0, 0}), 0);
  auto sp2 = root_datum(GroupSpec::sp(2));
  ASSERT_EQ(sp2.simple_roots.size(), 1u);
  EXPECT_EQ(pairing(sp2.simple_roots[0], {1}), 2);
  EXPECT_THROW(pairing(LinearForm{{1, 0}}, {1}), DimensionMismatch);
}

TEST(RootDatum, QuotientLatticeRanks) {
  // PGL(2) has a rank-one cocharacter lattice; the triple group G_m \ GL(2)^3 has rank five.
  auto pgl2 = root_datum(GroupSpec::quotient(GroupSpec::gl(2), {{1, 1}}));
  EXPECT_EQ(pgl2.rank, 1);
  EXPECT_EQ(mat_mul(pgl2.proj, pgl2.lift), identity_matrix(1));
  auto g = root_datum(GroupSpec::parse("GL(2)*GL(2)*GL(2)/[1,1,1,1,1,1]"));
  EXPECT_EQ(g.flat_rank, 6);
  EXPECT_EQ(g.rank, 5);
  EXPECT_EQ(g.simple_roots.size(), 3u);
}

TEST(RootDatum, GroupSpecTextRoundTrip) {
  for (const char* t : {"GL(4)*GL(2)/[1,1,1,1,1,1]", "Sp(6)*Sp(4)", "SO(5)*SO(4)", "T(1)", "GL(2)/[1,1]"}) {
    GroupSpec g = GroupSpec::parse(t);
    EXPECT_EQ(g.to_string(), t);
    EXPECT_EQ(GroupSpec::parse(g.to_string()), g);
  }
  EXPECT_THROW(GroupSpec::parse("GL(4"), ParseError);
  EXPECT_THROW(GroupSpec::parse("Sp(3)"), ParseError);
  EXPECT_THROW(GroupSpec::sp(3), UnsupportedRank);
}

TEST(RootDatum, WaldspurgerPair) {
  auto p = catalog_pair("waldspurger");
  EXPECT_EQ(p->h_rank(), 1);
  EXPECT_TRUE(p->delta_h.empty());
  ASSERT_EQ(p->c_h.size(), 1u);
  EXPECT_EQ(p->c_h[0].form.coeffs, IntVec{1});
  EXPECT_EQ(p->definition.g.kind, GroupSpec::Kind::CentralQuotient);
  EXPECT_EQ(p->definition.g.factors.at(0), GroupSpec::gl(2));
}

TEST(RootDatum, TriplePair) {
  auto p = catalog_pair("triple");
  EXPECT_EQ(p->h_rank(), 1);
  EXPECT_EQ(p->delta_h.size(), 1u);
  EXPECT_TRUE(p->c_h.empty());
  EXPECT_EQ(modulus_exponents(*p), std::vector<Int>{1});
  // Diagonal embedding: the image of t is t in each GL(2) factor.
  EXPECT_EQ(p->definition.embed, (IntMat{{1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 0}, {0, 1}}));
}

TEST(RootDatum, GlPairNTwo) {
  auto p = catalog_pair("gl2");
  EXPECT_EQ(p->definition.embed, (IntMat{{1, 0}, {0, 1}, {0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(p->embed_point({5, 2}), (IntVec{5, 2, 0, 5, 2}));
  ASSERT_EQ(p->c_h.size(), 1u);
  EXPECT_EQ(p->c_h[0].form.coeffs, (IntVec{0, 1}));
  EXPECT_EQ(modulus_exponents(*p), std::vector<Int>{1});
}

TEST(RootDatum, ModulusExponentsAreTwoRhoCoefficients) {
  for (const char* name : {"triple", "waldspurger", "gl2", "gl3", "so3", "so4", "gl4gl2", "sp6sp4", "aniso"}) {
    auto p = catalog_pair(name);
    EXPECT_EQ(modulus_exponents(*p), two_rho_coefficients(*p)) << name;
  }
  EXPECT_EQ(modulus_exponents(*catalog_pair("gl3")), (std::vector<Int>{2, 2}));
}

TEST(RootDatum, FlatWeylExamples) {
  auto gl = catalog_pair("gl4gl2");
  const auto& flat = gl->definition.weyl;
  auto find = [&](const std::string& n) {
    for (const auto& [name, m] : flat)
      if (name == n) return m;
    throw std::runtime_error("missing " + n);
  };
  EXPECT_EQ(mat_vec(find("w3412"), {1, 2, 3, 4, 5, 6}), (IntVec{3, 4, 1, 2, 5, 6}));
  EXPECT_EQ(mat_vec(find("e"), {1, 2, 3, 4, 5, 6}), (IntVec{1, 2, 3, 4, 5, 6}));
  auto sp = catalog_pair("sp6sp4");
  for (const auto& [name, m] : sp->definition.weyl)
    if (name == "w3") EXPECT_EQ(mat_vec(m, {1, 2, 3, 4, 5}), (IntVec{2, 3, 1, 4, 5}));
}

TEST(RootDatum, WeylElementsPreserveTheRootSystem) {
  for (const char* name : {"triple", "waldspurger", "gl2", "gl3", "so3", "so4", "gl4gl2", "sp6sp4"}) {
    auto p = catalog_pair(name);
    auto rd = root_datum(p->definition.g);
    auto roots = root_set(rd.positive_roots);
    for (const auto& w : p->weyl) {
      // (alpha . w)(x) = alpha(w x): the transpose action on forms.
      IntMat wt = transpose(w.matrix);
      for (const auto& r : roots) EXPECT_TRUE(roots.count(mat_vec(wt, r))) << name << " " << w.name;
      EXPECT_EQ(weyl_apply(weyl_inverse(w), weyl_apply(w, IntVec(p->g_rank(), 1))), IntVec(p->g_rank(), 1));
    }
  }
}

TEST(RootDatum, MaskHelpers) {
  auto p = catalog_pair("gl4gl2");
  RootMask m = mask_from_names(p->delta_g, {"b1", "a"});
  EXPECT_EQ(names_from_mask(p->delta_g, m), (std::vector<std::string>{"b1", "a"}));
  EXPECT_EQ(mask_to_string(p->delta_g, m), "{b1,a}");
  EXPECT_EQ(mask_to_string(p->delta_h, 0), "{}");
  EXPECT_THROW(mask_from_names(p->delta_g, {"zz"}), UnknownPair);
}

TEST(RootDatum, CatalogPairGuards) {
  EXPECT_THROW(build_catalog_pair("gl", 5), UnsupportedRank);
  EXPECT_THROW(build_catalog_pair("nope"), UnknownPair);
  PairDefinition big;
  big.name = "big";
  big.g = GroupSpec::gl(7);
  big.h = GroupSpec::torus(7);
  big.embed = identity_matrix(7);
  EXPECT_THROW(make_pair(big), GuardViolation);
}

TEST(RootDatum, StatedModulusExponentsAreChecked) {
  PairDefinition def = catalog_pair("gl2")->definition;
  def.n_exp = {2};
  EXPECT_THROW(make_pair(def), InternalInconsistency);
}
