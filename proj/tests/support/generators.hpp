#pragma once

#include <random>
#include <string>
#include <vector>

#include "fuzzydl/fuzzydl.hpp"

namespace fuzzydl::testing {

struct Vocabulary {
  std::vector<std::string> concepts{"A", "B", "C"};
  std::vector<std::string> roles{"R", "S"};
  std::vector<std::string> individuals{"a", "b"};
};

class Generator {
 public:
  explicit Generator(std::uint32_t seed, Vocabulary vocab = {})
      : rng_(seed), vocab_(std::move(vocab)) {}

  std::mt19937& rng() { return rng_; }
  const Vocabulary& vocab() const { return vocab_; }

  int Uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool Coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& Pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(Uniform(0, static_cast<int>(xs.size()) - 1))];
  }

  // Tenths, with the occasional third to keep the arithmetic honest.
  Degree AnyDegree() {
    if (Coin(0.1)) return Degree(Rational(Uniform(1, 2), 3));
    return Degree(Rational(Uniform(0, 10), 10));
  }
  Degree OpenDegree() {  // in (0,1)
    if (Coin(0.1)) return Degree(Rational(Uniform(1, 2), 3));
    return Degree(Rational(Uniform(1, 9), 10));
  }

  Concept Atom(bool top_bottom = true) {
    if (top_bottom && Coin(0.08)) return Coin() ? Concept::Top() : Concept::Bottom();
    return Concept::Primitive(Pick(vocab_.concepts));
  }

  // Random concept of bounded depth; quantifiers nest at most `roles` deep.
  Concept RandomConcept(int depth, int roles = 1, bool top_bottom = true) {
    if (depth <= 0) return Coin(0.2) ? Concept::Not(Atom(top_bottom)) : Atom(top_bottom);
    int pick = Uniform(0, roles > 0 ? 6 : 4);
    switch (pick) {
      case 0: return Concept::Not(RandomConcept(depth - 1, roles, top_bottom));
      case 1:
      case 2:
        return Concept::And(RandomConcept(depth - 1, roles, top_bottom),
                            RandomConcept(depth - 1, roles, top_bottom));
      case 3:
      case 4:
        return Concept::Or(RandomConcept(depth - 1, roles, top_bottom),
                           RandomConcept(depth - 1, roles, top_bottom));
      case 5:
        return Concept::Some(Pick(vocab_.roles), RandomConcept(depth - 1, roles - 1, top_bottom));
      default:
        return Concept::All(Pick(vocab_.roles), RandomConcept(depth - 1, roles - 1, top_bottom));
    }
  }

  Object Individual() { return MakeIndividual(Pick(vocab_.individuals)); }

  struct KbShape {
    int assertions = 3;
    int depth = 2;
    int roles = 1;
    double role_assertion = 0.3;
    bool role_upper_bounds = true;
    bool top_bottom = true;
  };

  // User-level assertions: >= with degree in (0,1], <= with degree in [0,1).
  FuzzyConstraint UserAssertion(const KbShape& shape) {
    if (Coin(shape.role_assertion)) {
      RoleAssertion ra{Individual(), Individual(), Pick(vocab_.roles)};
      if (shape.role_upper_bounds && Coin(0.25))
        return {ra, Relation::kLeq, Degree(Rational(Uniform(0, 9), 10))};
      return {ra, Relation::kGeq, Degree(Rational(Uniform(1, 10), 10))};
    }
    ConceptAssertion ca{Individual(), RandomConcept(Uniform(0, shape.depth), shape.roles,
                                                    shape.top_bottom)};
    if (Coin()) return {ca, Relation::kGeq, Degree(Rational(Uniform(1, 10), 10))};
    return {ca, Relation::kLeq, Degree(Rational(Uniform(0, 9), 10))};
  }

  KnowledgeBase RandomKb(const KbShape& shape) {
    KnowledgeBase kb;
    int n = Uniform(1, shape.assertions);
    for (int i = 0; i < n; ++i) kb.AddAssertion(UserAssertion(shape));
    return kb;
  }

  // A query of the form <a:C >= n> or <a:C <= m>, or a role lower bound.
  FuzzyConstraint Query(const KbShape& shape) {
    if (Coin(0.1)) {
      RoleAssertion ra{Individual(), Individual(), Pick(vocab_.roles)};
      return {ra, Relation::kGeq, Degree(Rational(Uniform(1, 10), 10))};
    }
    ConceptAssertion ca{Individual(), RandomConcept(Uniform(0, shape.depth), shape.roles,
                                                    shape.top_bottom)};
    if (Coin()) return {ca, Relation::kGeq, Degree(Rational(Uniform(1, 10), 10))};
    return {ca, Relation::kLeq, Degree(Rational(Uniform(0, 9), 10))};
  }

  // Random finite interpretation over the individuals plus `fresh` elements.
  Interpretation RandomInterpretation(int fresh, double density = 0.6) {
    Interpretation m;
    std::vector<Object> elements;
    for (const auto& name : vocab_.individuals) {
      m.AddIndividual(name);
      elements.push_back(MakeIndividual(name));
    }
    for (int i = 0; i < fresh; ++i) {
      elements.push_back(Variable{static_cast<std::uint64_t>(i)});
      m.AddElement(elements.back());
    }
    for (const auto& e : elements)
      for (const auto& c : vocab_.concepts)
        if (Coin(density)) m.SetConcept(c, e, AnyDegree());
    for (const auto& r : vocab_.roles)
      for (const auto& e1 : elements)
        for (const auto& e2 : elements)
          if (Coin(density / 2)) m.SetRole(r, e1, e2, AnyDegree());
    return m;
  }

 private:
  std::mt19937 rng_;
  Vocabulary vocab_;
};

}  // namespace fuzzydl::testing
