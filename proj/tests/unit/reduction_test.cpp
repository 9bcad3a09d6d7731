#include <gtest/gtest.h>

#include <algorithm>

#include "sphred/errors.hpp"
#include "sphred/reduction.hpp"

using namespace sphred;

namespace {

ReductionStructure structure(const std::string& key) { return catalog_lookup(key).structure; }

Triple triple(RootMask theta, std::string w, IntVec s) { return {theta, std::move(w), std::move(s)}; }

// Size of the (F2) set for bound M straight from its definition: cone points
// x such that, for every triple with w x dominant, some simple root outside
// theta is at most M on w x.
long brute_f2_count(const SphericalPair& pair, const ReductionStructure& st, Int M, Int B) {
  long n = 0;
  for (const auto& x : enumerate_box(std_cone(pair, st.cone()), B)) {
    bool in = true;
    for (const auto& e : st.entries) {
      IntVec g = weyl_apply(pair.weyl_by_name(e.triple.w), pair.embed_point(x));
      bool dominant = true, small = false;
      for (size_t a = 0; a < pair.delta_g.size(); ++a) {
        Int v = pairing(pair.delta_g[a].form, g);
        dominant = dominant && v >= 0;
        if (!(e.triple.theta & (RootMask(1) << a))) small = small || v <= M;
      }
      in = in && (!dominant || small);
    }
    n += in;
  }
  return n;
}

}  // namespace

TEST(Reduction, CatalogIsComplete) {
  const auto& cat = catalog();
  EXPECT_EQ(cat.size(), 50u);
  EXPECT_EQ(catalog_select("table2").size(), 4u);
  EXPECT_EQ(catalog_select("table3").size(), 8u);
  EXPECT_EQ(catalog_select("gl/n3").size(), 12u);
  EXPECT_EQ(catalog_select("all").size(), cat.size());
  EXPECT_THROW(catalog_lookup("table9/x"), UnknownPair);
}

TEST(Reduction, CatalogLookupExamples) {
  auto t1 = structure("table1/a1/plus");
  ASSERT_EQ(t1.entries.size(), 2u);
  auto gl = catalog_pair("gl4gl2");
  RootMask no_b2 = gl->full_g_mask() & ~mask_from_names(gl->delta_g, {"b2"});
  bool found = false;
  for (const auto& e : t1.entries) found = found || e.triple == triple(no_b2, "e", {1, 1, 0});
  EXPECT_TRUE(found);

  auto sp = catalog_pair("sp6sp4");
  auto t3 = structure("table3/b1+b2");
  ASSERT_EQ(t3.entries.size(), 1u);
  EXPECT_EQ(t3.entries[0].triple, triple(sp->full_g_mask() & ~mask_from_names(sp->delta_g, {"g1"}), "e", {0, 0, 1}));

  auto g2 = catalog_pair("gl2");
  auto minus = structure("gl/n2/empty/minus");
  found = false;
  RootMask no_b1 = g2->full_g_mask() & ~mask_from_names(g2->delta_g, {"b1"});
  for (const auto& e : minus.entries) found = found || e.triple == triple(no_b1, "w1", {-1, -1});
  EXPECT_TRUE(found);
}

TEST(Reduction, MembershipExamples) {
  auto tp = catalog_pair("triple");
  EXPECT_TRUE(check_triple_membership(*tp, 0, Sector::None, triple(0, "e", {1})).pass());
  auto wal = catalog_pair("waldspurger");
  EXPECT_TRUE(check_triple_membership(*wal, 0, Sector::Minus, triple(0, "w", {-1})).pass());
  EXPECT_EQ(check_triple_membership(*wal, 0, Sector::Minus, triple(0, "e", {-1})).kind, Verdict::Kind::FailMembership);
}

TEST(Reduction, Table2WeylCorrectionIsNeeded) {
  auto gl = catalog_pair("gl4gl2");
  auto st = structure("table2/empty/minus");
  int corrected = -1;
  for (size_t i = 0; i < st.entries.size(); ++i) {
    const auto& t = st.entries[i].triple;
    if (t.w == "w3142" && t.theta == (gl->full_g_mask() & ~mask_from_names(gl->delta_g, {"b3"}))) corrected = int(i);
  }
  ASSERT_GE(corrected, 0);
  Triple literal = st.entries[corrected].triple;
  literal.w = "w3124";
  EXPECT_TRUE(check_triple_membership(*gl, st.theta_h, st.sector, st.entries[corrected].triple).pass());
  EXPECT_TRUE(check_triple_membership(*gl, st.theta_h, st.sector, literal).fail());
}

TEST(Reduction, F1Examples) {
  auto tp = catalog_pair("triple");
  auto st = structure("triple/empty");
  ASSERT_EQ(st.entries[0].tmpl.entries.size(), 1u);
  const auto& fam = st.entries[0].tmpl.entries[0];
  EXPECT_EQ(fam.kind, TemplateEntry::Kind::Family);
  EXPECT_EQ(fam.step, IntVec{1});
  EXPECT_EQ(fam.body, (StdConeId{1, Sector::None}));
  for (const auto& r : check_F1(*tp, st, 3)) EXPECT_TRUE(r.verdict.pass()) << r.n;
  auto pieces = st.entries[0].tmpl.instantiate(3);
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(pieces[2].shift, IntVec{3});

  auto wal = catalog_pair("waldspurger");
  auto wm = structure("wal/empty/minus");
  for (const auto& r : check_F1(*wal, wm, 2)) EXPECT_TRUE(r.verdict.pass()) << r.n;
  EXPECT_EQ(wm.entries[0].tmpl.entries[0].body, (StdConeId{0, Sector::Zero}));
}

TEST(Reduction, DoubledStepFailsCover) {
  for (const char* key : {"triple/empty", "wal/empty/plus", "gl/n2/empty/plus", "table1/a1/plus"}) {
    const auto& item = catalog_lookup(key);
    ReductionStructure st = item.structure;
    for (auto& t : st.entries[0].tmpl.entries)
      if (t.kind == TemplateEntry::Kind::Family) t.step = scale(t.step, 2);
    st.entries[0].tmpl.reconstructed = false;
    Verdict v;
    for (const auto& r : check_F1(*item.pair, st, 2))
      if (r.entry == 0 && r.n == 2) v = r.verdict;
    ASSERT_EQ(v.kind, Verdict::Kind::FailCover) << key << " " << v.to_string();
    ConstraintSet cone = std_cone(*item.pair, st.cone());
    EXPECT_TRUE(cone.contains(v.witness)) << key;
  }
}

TEST(Reduction, ReconstructedTemplatesMatchCatalog) {
  for (const auto& item : catalog())
    for (const auto& e : item.structure.entries)
      if (e.tmpl.reconstructed) {
        F1Template t = reconstruct_template(*item.pair, item.structure.cone(), e.triple.s);
        EXPECT_EQ(t.entries, e.tmpl.entries) << item.key;
      }
}

TEST(Reduction, F2Examples) {
  auto tp = catalog_pair("triple");
  VerifyOptions one;
  one.m_list = {1};
  EXPECT_TRUE(check_F2(*tp, structure("triple/empty"), one).verdict.pass());
  EXPECT_EQ(f2_points(*tp, structure("triple/empty"), 1, 1, 10), (std::vector<IntVec>{{1}}));

  EXPECT_TRUE(check_F2(*catalog_pair("gl4gl2"), structure("table2/empty/minus")).verdict.pass());

  auto wal = catalog_pair("waldspurger");
  ReductionStructure empty = structure("wal/empty/plus");
  empty.entries.clear();
  auto r = check_F2(*wal, empty);
  EXPECT_EQ(r.verdict.kind, Verdict::Kind::FailFinite);
  ASSERT_FALSE(r.stage1.direction.empty());
  EXPECT_GT(r.stage1.direction[0], 0);
}

TEST(Reduction, F2EnumerationMatchesDefinition) {
  for (const char* key : {"triple/empty", "wal/empty/minus", "gl/n2/empty/minus", "so/n4/empty", "table1/empty/plus"}) {
    const auto& item = catalog_lookup(key);
    std::uint64_t all = (std::uint64_t(1) << item.structure.entries.size()) - 1;
    for (Int M : {1, 3})
      for (Int B : {6, 10})
        EXPECT_EQ(long(f2_points(*item.pair, item.structure, all, M, B).size()),
                  brute_f2_count(*item.pair, item.structure, M, B))
            << key << " M=" << M << " B=" << B;
  }
}

TEST(Reduction, MinimalityExamples) {
  auto wal = catalog_pair("waldspurger");
  auto m = check_minimality(*wal, structure("wal/empty/plus"));
  EXPECT_TRUE(m.verdict.pass());
  ASSERT_EQ(m.deletions.size(), 1u);
  EXPECT_EQ(m.deletions[0].verdict.kind, Verdict::Kind::FailFinite);

  auto sp = catalog_pair("sp6sp4");
  auto t3 = check_minimality(*sp, structure("table3/empty"));
  EXPECT_TRUE(t3.verdict.pass());
  EXPECT_EQ(t3.deletions.size(), 9u);
  for (const auto& d : t3.deletions) EXPECT_EQ(d.verdict.kind, Verdict::Kind::FailFinite);
}

TEST(Reduction, RedundantFixturesAreFlagged) {
  auto fixtures = redundant_fixtures();
  ASSERT_GE(fixtures.size(), 3u);
  for (const auto& f : fixtures) {
    Report r = verify(*f.pair, f.structure);
    EXPECT_TRUE(r.f2.verdict.pass()) << f.key;
    EXPECT_EQ(r.minimality.verdict.kind, Verdict::Kind::FailMinimality) << f.key;
  }
}

TEST(Reduction, AnisotropicPairIsTriviallyFinite) {
  const auto& item = catalog_lookup("aniso/empty");
  EXPECT_TRUE(item.structure.entries.empty());
  EXPECT_TRUE(verify(*item.pair, item.structure).overall().pass());
}

TEST(Reduction, MutatedEntriesFailWithWitness) {
  const auto& item = catalog_lookup("gl/n2/empty/plus");
  ReductionStructure st = item.structure;
  st.entries[0].triple.w = "w1";
  Report r = verify(*item.pair, st);
  EXPECT_TRUE(r.overall().fail());
  EXPECT_FALSE(r.overall().witness.empty());
}

TEST(Reduction, DeletingATable3TripleFails) {
  const auto& item = catalog_lookup("table3/empty");
  ReductionStructure st = item.structure;
  st.entries.erase(st.entries.begin() + 4);
  Report r = verify(*item.pair, st);
  EXPECT_EQ(r.f2.verdict.kind, Verdict::Kind::FailFinite);
  EXPECT_TRUE(r.overall().fail());
}

TEST(Reduction, SmallerSetsOfTriplesNeverShrinkTheF2Set) {
  // Removing triples can only add points to the (F2) set.
  for (const char* key : {"gl/n2/empty/minus", "table1/empty/plus", "so/n4/empty"}) {
    const auto& item = catalog_lookup(key);
    size_t k = item.structure.entries.size();
    std::uint64_t all = (std::uint64_t(1) << k) - 1;
    for (std::uint64_t sub = 0; sub <= all; ++sub) {
      auto big = f2_points(*item.pair, item.structure, sub, 3, 6);
      std::sort(big.begin(), big.end());
      for (size_t i = 0; i < k; ++i) {
        std::uint64_t smaller = sub & ~(std::uint64_t(1) << i);
        auto pts = f2_points(*item.pair, item.structure, smaller, 3, 6);
        std::sort(pts.begin(), pts.end());
        EXPECT_TRUE(std::includes(pts.begin(), pts.end(), big.begin(), big.end())) << key;
      }
    }
  }
}

TEST(Reduction, CombineOrdersVerdicts) {
  Verdict inc = Verdict::make(Verdict::Kind::Inconclusive, "budget");
  Verdict fail = Verdict::make(Verdict::Kind::FailCover, "gap", {1});
  EXPECT_TRUE(combine({}).pass());
  EXPECT_TRUE(combine({Verdict::ok(), inc}).inconclusive());
  EXPECT_EQ(combine({inc, fail, Verdict::ok()}).kind, Verdict::Kind::FailCover);
}
