#include <gtest/gtest.h>

#include <random>

#include "../support/oracles.hpp"
#include "sphred/errors.hpp"
#include "sphred/text_format.hpp"

using namespace sphred;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_input(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(TextFormat, CatalogRoundTrip) {
  for (const auto& item : catalog()) {
    InputDocument doc;
    doc.pair = item.pair;
    doc.structures = {item.structure};
    InputDocument back = parse_input(serialize(doc));
    EXPECT_EQ(back.pair->definition, item.pair->definition) << item.key;
    ASSERT_EQ(back.structures.size(), 1u);
    EXPECT_EQ(back.structures[0], item.structure) << item.key;
    EXPECT_EQ(serialize(back), serialize(doc)) << item.key;
  }
}

TEST(TextFormat, CatalogReference) {
  auto doc = parse_input("[pair]\ncatalog = gl4gl2\n");
  EXPECT_EQ(doc.pair_reference, "gl4gl2");
  EXPECT_EQ(doc.pair->definition, catalog_pair("gl4gl2")->definition);
  EXPECT_TRUE(doc.structures.empty());
}

TEST(TextFormat, ModuleRoundTripOnRandomModules) {
  std::mt19937_64 rng(51);
  for (const char* name : {"triple", "waldspurger", "gl2", "gl4gl2"}) {
    auto pair = catalog_pair(name);
    for (int trial = 0; trial < 10; ++trial) {
      auto m = oracle::random_module(rng, *pair);
      InputDocument doc;
      doc.pair = pair;
      doc.pair_reference = name;
      doc.module = module_spec(m);
      InputDocument back = parse_input(serialize(doc));
      ASSERT_TRUE(back.module);
      EXPECT_EQ(back.module->ring, RingKind::Rational);
      EXPECT_EQ(back.module->rational(), m) << serialize(doc);
    }
  }
}

TEST(TextFormat, FamilyModule) {
  auto doc = parse_input(
      "[pair]\ncatalog = waldspurger\n"
      "[module]\nring = laurent_u\n"
      "term = 1/10*u; chi = u^-1; 2 + t - 1/2*u*t\n"
      "term[minus] = 1; chi = -1; 1\n"
      "[volume]\nq = 3\nconstant = {}: 4/3\n");
  ASSERT_TRUE(doc.module);
  EXPECT_EQ(doc.module->ring, RingKind::LaurentU);
  const auto& t = doc.module->module.coefficient.terms.at(0);
  EXPECT_EQ(t.lambda, LaurentU::monomial(make_rational(1, 10), 1));
  EXPECT_EQ(t.chi, std::vector<LaurentU>{LaurentU::monomial(1, -1)});
  EXPECT_EQ(t.poly.at(IntVec{1}), LaurentU(1) - LaurentU::monomial(make_rational(1, 2), 1));
  EXPECT_EQ(doc.module->module.on(Sector::Minus).terms.at(0).chi, std::vector<LaurentU>{LaurentU(-1)});
  EXPECT_THROW(doc.module->rational(), GuardViolation);
  ASSERT_TRUE(doc.volume);
  EXPECT_EQ(doc.volume->q, 3);
  EXPECT_EQ(doc.volume->constant(0), make_rational(4, 3));
  EXPECT_EQ(parse_input(serialize(doc)).module, doc.module);
}

TEST(TextFormat, PolynomialExpressions) {
  auto doc = parse_input("[pair]\ncatalog = gl2\n[module]\nterm = 2; chi = 1/2, 3; (t1 - t2)^2 + 1\n");
  const auto& poly = doc.module->module.coefficient.terms.at(0).poly;
  EXPECT_EQ(poly.at(IntVec({2, 0})), LaurentU(1));
  EXPECT_EQ(poly.at(IntVec({1, 1})), LaurentU(-2));
  EXPECT_EQ(poly.at(IntVec({0, 0})), LaurentU(1));
}

TEST(TextFormat, ErrorMessages) {
  EXPECT_NE(std::string(parse_error("").what()).find("no sections"), std::string::npos);
  EXPECT_NE(std::string(parse_error("# only a comment\n").what()).find("no sections"), std::string::npos);

  auto sector = parse_error("[pair]\ncatalog = triple\n[structure]\ntheta_h = {}\nsector = up\n");
  EXPECT_EQ(sector.line(), 5);
  std::string msg = sector.what();
  for (const char* tok : {"plus", "zero", "minus", "none"}) EXPECT_NE(msg.find(tok), std::string::npos) << msg;

  auto key = parse_error("[pair]\ncatalog = triple\nfoo = 1\n");
  EXPECT_EQ(key.line(), 3);
  EXPECT_NE(std::string(key.what()).find("unknown key 'foo'"), std::string::npos);

  auto section = parse_error("[widgets]\n");
  EXPECT_EQ(section.line(), 1);

  auto dup = parse_error("[pair]\ncatalog = triple\ncatalog = triple\n");
  EXPECT_EQ(dup.line(), 3);

  auto term = parse_error("[pair]\ncatalog = triple\n[module]\nterm = 1; chi = 1/2; t +\n");
  EXPECT_EQ(term.line(), 4);
  EXPECT_GT(term.column(), 1);

  auto neg = parse_error("[pair]\ncatalog = triple\n[module]\nterm = 1; chi = 1/2; t^-1\n");
  EXPECT_EQ(neg.line(), 4);

  auto pair = parse_error("[pair]\ncatalog = nosuch\n");
  EXPECT_EQ(pair.line(), 2);
}

TEST(TextFormat, FileStructureIsChecked) {
  auto doc = parse_input(
      "[pair]\ncatalog = triple\n"
      "[structure]\nkey = mine\ntheta_h = {}\nsector = none\n"
      "entry = ({}; e; 1) => family(0; 1; {a}; none)\n");
  ASSERT_EQ(doc.structures.size(), 1u);
  EXPECT_EQ(doc.structures[0].entries, catalog_lookup("triple/empty").structure.entries);
  EXPECT_TRUE(verify(*doc.pair, doc.structures[0]).overall().pass());
}

TEST(TextFormat, MissingFile) { EXPECT_THROW(parse_file("/nonexistent/input.txt"), ParseError); }
