#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace fuzzydl;
using fuzzydl::testing::Fc;
using fuzzydl::testing::LoadKb;

namespace {

ConstraintSet Set(std::initializer_list<const char*> texts) {
  ConstraintSet s;
  for (const char* t : texts) s.Add(Fc(t));
  return s;
}

ConstraintSet Fixture6With(const char* negated_query) {
  ConstraintSet s(LoadKb("kb_example6.fkb").abox());
  s.Add(Fc(negated_query));
  return s;
}

ConstraintSet ExpandedFixture4WithQuery() {
  ConstraintSet s(LoadKb("kb_example4_expanded.fkb").abox());
  s.Add(Fc("(i1 : some About . Car) < 0.6"));
  return s;
}

// (some R . A1) and (some R . A2) and all R . (next level), n levels deep.
Concept NestedChain(int n, int level = 1) {
  std::string a = "A" + std::to_string(level);
  Concept here = Concept::And(Concept::Some("R", Concept::Primitive(a + "1")),
                              Concept::Some("R", Concept::Primitive(a + "2")));
  if (level == n) return here;
  return Concept::And(here, Concept::All("R", NestedChain(n, level + 1)));
}

bool HasConclusion(const std::vector<ConstraintSet>& succ, const char* text) {
  for (const auto& s : succ)
    if (s.Contains(Fc(text))) return true;
  return false;
}

}  // namespace

TEST(Conjugated, PairTable) {
  EXPECT_TRUE(Conjugated(Fc("(a : C) >= 0.8"), Fc("(a : C) < 0.6")));
  EXPECT_TRUE(Conjugated(Fc("(a : C) >= 0.8"), Fc("(a : C) <= 0.7")));
  EXPECT_FALSE(Conjugated(Fc("(a : C) >= 0.5"), Fc("(a : C) <= 0.5")));
  EXPECT_TRUE(Conjugated(Fc("(a : C) >= 0.5"), Fc("(a : C) < 0.5")));
  EXPECT_TRUE(Conjugated(Fc("(a : C) > 0.5"), Fc("(a : C) <= 0.5")));
  EXPECT_TRUE(Conjugated(Fc("(a : C) > 0.5"), Fc("(a : C) < 0.5")));
  EXPECT_FALSE(Conjugated(Fc("(a : C) > 0.4"), Fc("(a : C) < 0.5")));
  EXPECT_TRUE(Conjugated(Fc("(a : C) <= 0.7"), Fc("(a : C) >= 0.8")));
  EXPECT_FALSE(Conjugated(Fc("(a : C) >= 0.8"), Fc("(b : C) < 0.6")));
  EXPECT_FALSE(Conjugated(Fc("(a : C) >= 0.8"), Fc("(a : C) >= 0.9")));
}

TEST(DetectClash, SelfClashes) {
  auto w = DetectClash(Set({"(w : bot) >= 0.1"}));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, ClashWitness::Kind::kTable1);
  EXPECT_TRUE(DetectClash(Set({"(w : top) <= 0.9"})));
  EXPECT_TRUE(DetectClash(Set({"(w : bot) > 0"})));
  EXPECT_TRUE(DetectClash(Set({"(w : top) < 1"})));
  EXPECT_TRUE(DetectClash(Set({"(w : A) < 0"})));
  EXPECT_TRUE(DetectClash(Set({"(w : A) > 1"})));
  EXPECT_TRUE(DetectClash(Set({"((a, b) : R) < 0"})));
  EXPECT_FALSE(DetectClash(Set({"(w : bot) >= 0", "(w : top) <= 1"})));
  EXPECT_FALSE(DetectClash(Set({"(w : A) >= 0.4", "(w : A) >= 0.2"})));
}

TEST(DetectClash, IncrementalCheckMatchesFullScan) {
  fuzzydl::testing::Generator g(21);
  for (int i = 0; i < 500; ++i) {
    ConstraintSet s;
    for (int k = 0; k < 4; ++k) {
      FuzzyConstraint c{ConceptAssertion{g.Individual(), g.Atom()},
                        static_cast<Relation>(g.Uniform(0, 3)), g.AnyDegree()};
      s.Add(c);
    }
    EXPECT_EQ(s.clash().has_value(), DetectClash(s.constraints()).has_value());
  }
}

TEST(Step, PropagationAndGeneratingInstances) {
  auto a = Step(Set({"(a : all R . C) >= 0.7", "((a, b) : R) >= 0.6"}));
  ASSERT_TRUE(a);
  ASSERT_EQ(a->size(), 1u);
  EXPECT_TRUE(HasConclusion(*a, "(b : C) >= 0.7"));

  auto b = Step(Set({"(a : some R . C) < 0.8", "((a, b) : R) >= 0.9"}));
  ASSERT_TRUE(b);
  EXPECT_TRUE(HasConclusion(*b, "(b : C) < 0.8"));

  Object x = Variable{0};
  RoleAssertion ax{MakeIndividual("a"), x, "R"};
  ConceptAssertion xc{x, Concept::Primitive("C")};
  auto c = Step(Set({"(a : some R . C) >= 0.8"}));
  ASSERT_TRUE(c);
  ASSERT_EQ(c->size(), 1u);
  EXPECT_TRUE((*c)[0].Contains({ax, Relation::kGeq, Degree::Parse("0.8")}));
  EXPECT_TRUE((*c)[0].Contains({xc, Relation::kGeq, Degree::Parse("0.8")}));

  auto d = Step(Set({"(a : all R . C) < 0.8"}));
  ASSERT_TRUE(d);
  EXPECT_TRUE((*d)[0].Contains({ax, Relation::kGt, Degree::Parse("0.2")}));
  EXPECT_TRUE((*d)[0].Contains({xc, Relation::kLt, Degree::Parse("0.8")}));
}

TEST(Step, GuardMustBeConjugated) {
  // R >= 0.3 does not contradict R <= 0.3, so all>= does not fire.
  auto s = Step(Set({"(a : all R . C) >= 0.7", "((a, b) : R) >= 0.3"}));
  EXPECT_FALSE(s);
}

TEST(Step, BranchingRulesGiveTwoSuccessors) {
  auto s = Step(Set({"(a : A or B) >= 0.6"}));
  ASSERT_TRUE(s);
  ASSERT_EQ(s->size(), 2u);
  EXPECT_TRUE((*s)[0].Contains(Fc("(a : A) >= 0.6")));
  EXPECT_TRUE((*s)[1].Contains(Fc("(a : B) >= 0.6")));
  auto t = Step(Set({"(a : A and B) < 0.6"}));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->size(), 2u);
}

TEST(Step, NegationFlipsTheBound) {
  auto s = Step(Set({"(a : not A) >= 0.3"}));
  ASSERT_TRUE(s);
  EXPECT_TRUE(HasConclusion(*s, "(a : A) <= 0.7"));
}

TEST(Step, BlockingStopsRepeatedGeneration) {
  ConstraintSet s = Set({"(a : some R . C) >= 0.8", "((a, b) : R) >= 0.8", "(b : C) >= 0.8"});
  EXPECT_FALSE(Step(s));
}

TEST(Complete, Fixture6) {
  EXPECT_TRUE(Complete(Fixture6With("(a : some R . (D and C)) < 0.5")).satisfiable);
  EXPECT_FALSE(Complete(Fixture6With("(a : some R . (D and C)) < 0.4")).satisfiable);
  EXPECT_EQ(EnumerateCompletions(Fixture6With("(a : some R . (D and C)) < 0.5")).size(), 2u);
}

TEST(Complete, ExpandedFixture4EveryBranchClashes) {
  ProofTrace trace;
  TableauOptions o;
  o.proof = &trace;
  SatResult r = Complete(ExpandedFixture4WithQuery(), o);
  EXPECT_FALSE(r.satisfiable);
  EXPECT_TRUE(trace.EveryLeafClashes());
  EXPECT_FALSE(trace.LeafBranches().empty());
  EXPECT_EQ(r.clashes.size(), r.stats.closed_branches);
}

TEST(Complete, ProofTraceShowsTheDerivation) {
  ProofTrace trace;
  TableauOptions o;
  o.proof = &trace;
  Complete(Fixture6With("(a : some R . (D and C)) < 0.5"), o);
  std::string text = trace.ToText();
  EXPECT_NE(text.find("(some>=) (a : some R . D) >= 0.7 => ((a, _x0) : R) >= 0.7, (_x0 : D) >= 0.7"),
            std::string::npos) << text;
  EXPECT_NE(text.find("clash: (_x0 : D) >= 0.7, (_x0 : D) < 0.5"), std::string::npos);
  EXPECT_NE(text.find("complete, clash-free"), std::string::npos);
}

TEST(CompleteTrace, MatchesCompleteOnExamples) {
  EXPECT_TRUE(CompleteTrace(Fixture6With("(a : some R . (D and C)) < 0.5")).satisfiable);
  EXPECT_FALSE(CompleteTrace(Fixture6With("(a : some R . (D and C)) < 0.4")).satisfiable);
  EXPECT_FALSE(CompleteTrace(ExpandedFixture4WithQuery()).satisfiable);
}

TEST(CompleteTrace, NestedChainKeepsFewConstraintsLive) {
  for (int n = 1; n <= 6; ++n) {
    ConstraintSet s;
    s.Add({ConceptAssertion{MakeIndividual("a"), NestedChain(n)}, Relation::kGeq,
           Degree::Parse("0.8")});
    SatResult full = Complete(s);
    SatResult trace = CompleteTrace(s);
    EXPECT_EQ(full.satisfiable, trace.satisfiable);
    EXPECT_GE(full.stats.variables, (1u << n));
    EXPECT_LE(trace.stats.max_live_constraints, 40u * static_cast<unsigned>(n));
  }
}

TEST(CompleteTrace, AssembledCompletionYieldsAModel) {
  TableauOptions o;
  o.assemble_completion = true;
  ConstraintSet s = Fixture6With("(a : some R . (D and C)) < 0.5");
  SatResult r = CompleteTrace(s, o);
  ASSERT_TRUE(r.completion);
  Interpretation m = ExtractModel(*r.completion);
  for (const auto& c : s.constraints()) EXPECT_TRUE(Satisfies(m, c)) << Render(c);
}

TEST(CompleteTrace, AgreesWithCompleteOnRandomSets) {
  fuzzydl::testing::Generator g(33);
  fuzzydl::testing::Generator::KbShape shape;
  shape.depth = 3;
  shape.roles = 2;
  for (int i = 0; i < 400; ++i) {
    ConstraintSet s(g.RandomKb(shape).abox());
    EXPECT_EQ(Complete(s).satisfiable, CompleteTrace(s).satisfiable);
  }
}

TEST(ExtractModel, Fixture6Countermodel) {
  ConstraintSet s = Fixture6With("(a : some R . (D and C)) < 0.5");
  SatResult r = Complete(s);
  ASSERT_TRUE(r.satisfiable);
  auto [m, eps] = ExtractModelWithEpsilon(*r.completion);
  Object a = MakeIndividual("a"), b = MakeIndividual("b"), x = Variable{0};
  EXPECT_EQ(m.domain().size(), 3u);
  EXPECT_EQ(m.RoleDegree("R", a, b), Degree::Parse("0.5"));
  EXPECT_EQ(m.ConceptDegree("C", b), Degree::Parse("0.2"));
  EXPECT_EQ(m.ConceptDegree("D", b), Degree::Parse("0.3"));
  EXPECT_EQ(m.RoleDegree("R", a, x), Degree::Parse("0.7"));
  EXPECT_EQ(m.ConceptDegree("D", x), Degree::Parse("0.7"));
  EXPECT_EQ(m.ConceptDegree("C", x), Degree::Parse("0.4"));
  EXPECT_EQ(eps, Rational(1, 20));
  EXPECT_TRUE(SatisfiesKb(m, LoadKb("kb_example6.fkb")));
}

TEST(ExtractModel, StrictBoundsGetSlack) {
  ConstraintSet s = Set({"(a : A) > 0.4", "(a : A) <= 0.5"});
  Interpretation m = ExtractModel(s);
  Degree v = m.ConceptDegree("A", MakeIndividual("a"));
  EXPECT_GT(v, Degree::Parse("0.4"));
  EXPECT_LE(v, Degree::Parse("0.5"));

  Interpretation n = ExtractModel(Set({"(a : A) >= 0.3"}));
  EXPECT_EQ(n.ConceptDegree("A", MakeIndividual("a")), Degree::Parse("0.3"));
}

TEST(ExtractModel, RejectsIncompleteOrClashingSets) {
  EXPECT_THROW(ExtractModel(Set({"(a : A and B) >= 0.3"})), ContractError);
  EXPECT_THROW(ExtractModel(Set({"(a : A) >= 0.3", "(a : A) < 0.2"})), ContractError);
}

TEST(ExtractModel, EveryRandomCompletionHasAModel) {
  fuzzydl::testing::Generator g(44);
  fuzzydl::testing::Generator::KbShape shape;
  shape.depth = 3;
  shape.roles = 2;
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    ConstraintSet s(g.RandomKb(shape).abox());
    for (const auto& done : EnumerateCompletions(s, 3)) {
      Interpretation m = ExtractModel(done);
      for (const auto& c : s.constraints()) EXPECT_TRUE(Satisfies(m, c)) << Render(c);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Complete, RuleBudget) {
  ConstraintSet s;
  s.Add({ConceptAssertion{MakeIndividual("a"), NestedChain(4)}, Relation::kGeq, Degree::Parse("0.8")});
  TableauOptions o;
  o.max_rule_applications = 5;
  EXPECT_THROW(Complete(s, o), ResourceError);
}
