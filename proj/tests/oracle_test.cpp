#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace fuzzydl;
using fuzzydl::testing::As;
using fuzzydl::testing::C;
using fuzzydl::testing::Fc;
using fuzzydl::testing::LoadKb;

namespace {

GridOracleOptions Bound(std::size_t n) {
  GridOracleOptions o;
  o.domain_bound = n;
  return o;
}

}  // namespace

TEST(CrispMap, Examples) {
  EXPECT_EQ(CrispMap(Fc("(a : C) <= 0.4")), As("(a : not C)"));
  EXPECT_EQ(CrispMap(Fc("((a, b) : R) >= 0.7")), As("((a, b) : R)"));
  CrispKb two = CrispMap(LoadKb("kb_example2.fkb"));
  EXPECT_EQ(two.abox, (std::vector<Assertion>{As("(a : not (A or B))"), As("(a : A)")}));
  EXPECT_THROW(CrispMap(Fc("((a, b) : R) <= 0.7")), UnsupportedInput);
  EXPECT_THROW(CrispMap(Fc("(a : C) < 0.7")), UnsupportedInput);
}

TEST(CrispEntails, Examples) {
  CrispKb one = CrispMap(LoadKb("kb_example1.fkb"));
  Concept q2 = C("Video and some About . some KindOfSport . IndividualSport");
  EXPECT_TRUE(CrispEntails(one, ConceptAssertion{MakeIndividual("v2"), q2}));
  EXPECT_FALSE(CrispEntails(one, ConceptAssertion{MakeIndividual("v1"), q2}));
  Concept q = C("Video and some About . SportKind");
  EXPECT_TRUE(CrispEntails(one, ConceptAssertion{MakeIndividual("v1"), q}));
  EXPECT_TRUE(CrispEntails(one, ConceptAssertion{MakeIndividual("v2"), q}));

  EXPECT_TRUE(CrispEntails({{As("(a : A)")}, {}}, As("(a : A or B)")));
  EXPECT_TRUE(CrispEntails(CrispMap(LoadKb("kb_example2.fkb")), As("(a : B)")));
}

TEST(ClassifyNormalisation, Examples) {
  EXPECT_EQ(ClassifyNormalisation(Fc("(a : A) >= 0.6")), NormalisationClass::kKbNormalised);
  EXPECT_EQ(ClassifyNormalisation(Fc("(a : B) <= 0.7")), NormalisationClass::kQueryNormalised);
  EXPECT_EQ(ClassifyNormalisation(Fc("(a : A) >= 0.5")), NormalisationClass::kQueryNormalised);
  EXPECT_EQ(ClassifyNormalisation(Fc("(a : A) <= 0.2")), NormalisationClass::kKbNormalised);
  EXPECT_EQ(ClassifyNormalisation(Fc("(a : A) < 0.2")), NormalisationClass::kNeither);
}

TEST(GridOracle, Fixture6) {
  KnowledgeBase kb = LoadKb("kb_example6.fkb");
  EXPECT_TRUE(GridOracleEntails(kb, Fc("(a : some R . (D and C)) >= 0.4"), Bound(3)).entailed);
  auto no = GridOracleEntails(kb, Fc("(a : some R . (D and C)) >= 0.5"), Bound(3));
  EXPECT_FALSE(no.entailed);
  ASSERT_TRUE(no.countermodel);
  EXPECT_TRUE(SatisfiesKb(*no.countermodel, kb));
  EXPECT_EQ(no.domain_size, 3u);
}

TEST(GridOracle, DefaultBoundCountsQuantifiers) {
  auto v = GridOracleEntails(LoadKb("kb_example6.fkb"), Fc("(a : some R . (D and C)) >= 0.5"));
  EXPECT_FALSE(v.entailed);
  EXPECT_EQ(v.domain_size, 5u);
}

TEST(GridOracle, Fixture2) {
  auto v = GridOracleEntails(LoadKb("kb_example2.fkb"), Fc("(a : B) >= 0.1"), Bound(1));
  EXPECT_FALSE(v.entailed);
  ASSERT_TRUE(v.countermodel);
  EXPECT_EQ(v.countermodel->ConceptDegree("B", MakeIndividual("a")), Degree::Zero());
}

TEST(GridOracle, Tautology) {
  EXPECT_TRUE(GridOracleEntails(LoadKb("kb_example6.fkb"), Fc("(a : top) >= 1"), Bound(3)).entailed);
  EXPECT_TRUE(GridOracleEntails(KnowledgeBase{}, Fc("(a : top) >= 1")).entailed);
}

TEST(GridOracle, Preconditions) {
  EXPECT_THROW(GridOracleEntails(LoadKb("kb_example4.fkb"), Fc("(i1 : Car) >= 0.5")),
               UnsupportedInput);
  EXPECT_THROW(GridOracleEntails(LoadKb("kb_example6.fkb"), Fc("(a : C) >= 0.5"), Bound(1)),
               DomainError);
  GridOracleOptions tiny = Bound(3);
  tiny.node_budget = 10;
  EXPECT_THROW(GridOracleEntails(LoadKb("kb_example6.fkb"),
                                 Fc("(a : some R . (D and C)) >= 0.4"), tiny),
               ResourceError);
}

TEST(GridOracle, AgreesWithTheReasonerOnSmallRandomKbs) {
  fuzzydl::testing::Generator g(77);
  fuzzydl::testing::Generator::KbShape shape;
  shape.assertions = 3;
  shape.depth = 2;
  int agreed = 0;
  for (int i = 0; i < 150; ++i) {
    KnowledgeBase kb = g.RandomKb(shape);
    FuzzyConstraint q = g.Query(shape);
    auto expect = Reasoner(kb).Entails(q).entailed;
    auto got = GridOracleEntails(kb, q);
    EXPECT_EQ(expect, got.entailed) << Render(kb) << "query " << Render(q);
    agreed += expect == got.entailed;
  }
  EXPECT_EQ(agreed, 150);
}
