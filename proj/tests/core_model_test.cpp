#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace fuzzydl;
using fuzzydl::testing::C;
using fuzzydl::testing::Fc;

namespace {

Interpretation ThreeElementModel() {
  Interpretation m;
  for (const char* n : {"a", "b", "x"}) m.AddIndividual(n);
  Object b = MakeIndividual("b"), x = MakeIndividual("x"), a = MakeIndividual("a");
  m.SetConcept("C", b, Degree::Parse("0.2"));
  m.SetConcept("D", b, Degree::Parse("0.3"));
  m.SetConcept("D", x, Degree::Parse("0.7"));
  m.SetConcept("C", x, Degree::Parse("0.4"));
  m.SetRole("R", a, b, Degree::Parse("0.5"));
  m.SetRole("R", a, x, Degree::Parse("0.7"));
  return m;
}

}  // namespace

TEST(Degree, ParsesDecimalsAndFractionsExactly) {
  EXPECT_EQ(Degree::Parse("0.3").value(), Rational(3, 10));
  EXPECT_EQ(Degree::Parse("1/3").value(), Rational(1, 3));
  EXPECT_EQ(Degree::Parse(".5"), Degree::Half());
  EXPECT_EQ(Degree::Parse("1.0"), Degree::One());
  EXPECT_THROW(Degree::Parse("1.5"), DomainError);
  EXPECT_THROW(Degree::Parse("-0.1"), DomainError);
  EXPECT_THROW(Degree::Parse("abc"), DomainError);
  EXPECT_THROW(Degree::Parse("1/0"), DomainError);
}

TEST(Degree, ComplementNeverRounds) {
  Degree third = Degree::Parse("1/3");
  EXPECT_EQ(third.Complement().value(), Rational(2, 3));
  EXPECT_EQ(third.Complement().Complement(), third);
  EXPECT_EQ(Degree::Parse("0.7").Complement(), Degree::Parse("0.3"));
}

TEST(Degree, RendersDecimalOrFraction) {
  EXPECT_EQ(Degree::Parse("0.25").ToString(), "0.25");
  EXPECT_EQ(Degree::Parse("1/3").ToString(), "1/3");
  EXPECT_EQ(Degree::Parse("0.05").ToString(), "0.05");
  EXPECT_EQ(Degree::One().ToString(), "1");
  EXPECT_EQ(Degree::Zero().ToString(), "0");
  EXPECT_EQ(Degree::Parse("0.4").ToFractionString(), "2/5");
}

TEST(Degree, OrderingAndMidpoint) {
  EXPECT_LT(Degree::Parse("0.3"), Degree::Parse("1/3"));
  EXPECT_EQ(Midpoint(Degree::Parse("0.4"), Degree::Parse("0.5")), Degree::Parse("0.45"));
}

TEST(ConceptModel, StructuralEqualityAndSize) {
  Concept x = Concept::And(Concept::Primitive("A"), Concept::Some("R", Concept::Not(Concept::Primitive("B"))));
  Concept y = Concept::And(Concept::Primitive("A"), Concept::Some("R", Concept::Not(Concept::Primitive("B"))));
  EXPECT_EQ(x, y);
  EXPECT_EQ(std::hash<Concept>{}(x), std::hash<Concept>{}(y));
  EXPECT_EQ(x.TreeSize(), 5u);
  EXPECT_FALSE(x == Concept::Primitive("A"));
  EXPECT_EQ(QuantifierCount(x), 1u);
}

TEST(KnowledgeBaseModel, DeduplicatesAndListsIndividuals) {
  KnowledgeBase kb;
  kb.AddAssertion(Fc("(b : A) >= 0.3"));
  kb.AddAssertion(Fc("(b : A) >= 0.3"));
  kb.AddAssertion(Fc("((a, c) : R) >= 0.5"));
  EXPECT_EQ(kb.abox().size(), 2u);
  EXPECT_EQ(kb.Individuals(), (std::vector<std::string>{"b", "a", "c"}));
}

TEST(Semantics, ConnectivesFollowMinMaxComplement) {
  Interpretation m;
  m.AddIndividual("d");
  Object d = MakeIndividual("d");
  m.SetConcept("C", d, Degree::Parse("0.2"));
  m.SetConcept("D", d, Degree::Parse("0.3"));
  EXPECT_EQ(EvaluateConcept(m, C("C and D"), d), Degree::Parse("0.2"));
  EXPECT_EQ(EvaluateConcept(m, C("C or D"), d), Degree::Parse("0.3"));
  m.SetConcept("C", d, Degree::Parse("0.8"));
  EXPECT_EQ(EvaluateConcept(m, C("not C"), d), Degree::Parse("0.2"));
  EXPECT_EQ(EvaluateConcept(m, C("top"), d), Degree::One());
  EXPECT_EQ(EvaluateConcept(m, C("bot"), d), Degree::Zero());
  EXPECT_EQ(EvaluateConcept(m, C("Unlisted"), d), Degree::Zero());
}

TEST(Semantics, QuantifiersOverThreeElementModel) {
  Interpretation m = ThreeElementModel();
  Object a = MakeIndividual("a");
  EXPECT_EQ(EvaluateConcept(m, C("some R . (D and C)"), a), Degree::Parse("0.4"));
  EXPECT_EQ(EvaluateConcept(m, C("some R . D"), a), Degree::Parse("0.7"));
  EXPECT_EQ(EvaluateConcept(m, C("all R . C"), a), Degree::Parse("0.4"));
  EXPECT_TRUE(Satisfies(m, Fc("(a : some R . (D and C)) < 0.5")));
  EXPECT_TRUE(Satisfies(m, Fc("(b : D) >= 0.3")));
  EXPECT_FALSE(Satisfies(m, Fc("(x : C) >= 0.5")));
  EXPECT_THROW(EvaluateConcept(m, C("A"), Variable{42}), DomainError);
}

TEST(Semantics, SatisfiesKb) {
  Interpretation m = ThreeElementModel();
  EXPECT_TRUE(SatisfiesKb(m, KnowledgeBase{}));
  EXPECT_TRUE(SatisfiesKb(m, fuzzydl::testing::LoadKb("kb_example6.fkb")));

  Interpretation n;
  n.AddIndividual("d");
  n.SetConcept("A", MakeIndividual("d"), Degree::Parse("0.7"));
  n.SetConcept("C", MakeIndividual("d"), Degree::Parse("0.5"));
  KnowledgeBase spec({}, {Specialisation("A", Concept::Primitive("C"))});
  EXPECT_FALSE(SatisfiesKb(n, spec));
  n.SetConcept("C", MakeIndividual("d"), Degree::Parse("0.7"));
  EXPECT_TRUE(SatisfiesKb(n, spec));
  KnowledgeBase def({}, {Definition("A", Concept::Primitive("C"))});
  EXPECT_TRUE(SatisfiesKb(n, def));
  n.SetConcept("C", MakeIndividual("d"), Degree::Parse("0.8"));
  EXPECT_FALSE(SatisfiesKb(n, def));
}

TEST(Semantics, UniqueNameAssumption) {
  Interpretation m;
  m.MapIndividual("a", Variable{0});
  EXPECT_THROW(m.MapIndividual("b", Variable{0}), DomainError);
}

TEST(Semantics, DualitiesHoldOnRandomInterpretations) {
  fuzzydl::testing::Generator g(7);
  for (int i = 0; i < 300; ++i) {
    Interpretation m = g.RandomInterpretation(2);
    Concept c = g.RandomConcept(2);
    for (const auto& e : m.domain()) {
      EXPECT_EQ(EvaluateConcept(m, Concept::Not(Concept::Not(c)), e), EvaluateConcept(m, c, e));
      EXPECT_EQ(EvaluateConcept(m, Concept::All("R", c), e),
                EvaluateConcept(m, Concept::Not(Concept::Some("R", Concept::Not(c))), e));
    }
  }
}
