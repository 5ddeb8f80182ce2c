#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>
#include <variant>
#include <vector>

#include "fuzzydl/concept.hpp"
#include "fuzzydl/degree.hpp"

namespace fuzzydl {

struct Individual {
  std::string name;
  friend auto operator<=>(const Individual&, const Individual&) = default;
};

// Generated by the tableau only.
struct Variable {
  std::uint64_t id = 0;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// Individuals order before variables.
using Object = std::variant<Individual, Variable>;

inline Object MakeIndividual(std::string name) {
  return Individual{std::move(name)};
}

inline bool IsIndividual(const Object& o) {
  return std::holds_alternative<Individual>(o);
}

inline std::string ObjectName(const Object& o) {
  if (auto* ind = std::get_if<Individual>(&o)) return ind->name;
  return "_x" + std::to_string(std::get<Variable>(o).id);
}

inline std::size_t HashObject(const Object& o) {
  if (auto* ind = std::get_if<Individual>(&o))
    return std::hash<std::string>{}(ind->name);
  return std::hash<std::uint64_t>{}(std::get<Variable>(o).id) ^ 0x5bd1e995;
}

// w:C
struct ConceptAssertion {
  Object object;
  Concept term;

  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
  friend bool operator<(const ConceptAssertion& a, const ConceptAssertion& b) {
    if (a.object != b.object) return a.object < b.object;
    return a.term < b.term;
  }
};

// (w, w'):R
struct RoleAssertion {
  Object subject;
  Object filler;
  std::string role;

  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
  friend bool operator<(const RoleAssertion& a, const RoleAssertion& b) {
    return std::tie(a.subject, a.filler, a.role) <
           std::tie(b.subject, b.filler, b.role);
  }
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

inline Assertion MakeConceptAssertion(Object o, Concept c) {
  return ConceptAssertion{std::move(o), std::move(c)};
}
inline Assertion MakeRoleAssertion(Object s, Object f, std::string role) {
  return RoleAssertion{std::move(s), std::move(f), std::move(role)};
}

inline std::size_t HashAssertion(const Assertion& a) {
  if (auto* ca = std::get_if<ConceptAssertion>(&a))
    return HashObject(ca->object) * 1000003u ^ ca->term.hash();
  const auto& ra = std::get<RoleAssertion>(a);
  return (HashObject(ra.subject) * 1000003u ^ HashObject(ra.filler)) * 31u ^
         std::hash<std::string>{}(ra.role) ^ 0x27d4eb2d;
}

enum class Relation { kGeq, kGt, kLeq, kLt };

inline bool IsLowerBound(Relation r) {
  return r == Relation::kGeq || r == Relation::kGt;
}
inline bool IsStrict(Relation r) {
  return r == Relation::kGt || r == Relation::kLt;
}

inline const char* RelationSymbol(Relation r) {
  switch (r) {
    case Relation::kGeq: return ">=";
    case Relation::kGt: return ">";
    case Relation::kLeq: return "<=";
    case Relation::kLt: return "<";
  }
  return "?";
}

// Does `value` stand in relation `rel` to `bound`?
inline bool Holds(const Degree& value, Relation rel, const Degree& bound) {
  switch (rel) {
    case Relation::kGeq: return value >= bound;
    case Relation::kGt: return value > bound;
    case Relation::kLeq: return value <= bound;
    case Relation::kLt: return value < bound;
  }
  return false;
}

// <alpha rel n>
struct FuzzyConstraint {
  Assertion assertion;
  Relation rel = Relation::kGeq;
  Degree degree;

  friend bool operator==(const FuzzyConstraint&, const FuzzyConstraint&) = default;
  friend bool operator<(const FuzzyConstraint& a, const FuzzyConstraint& b) {
    if (a.assertion != b.assertion) return a.assertion < b.assertion;
    if (a.rel != b.rel) return a.rel < b.rel;
    return a.degree < b.degree;
  }
};

inline std::size_t HashConstraint(const FuzzyConstraint& c) {
  return HashAssertion(c.assertion) * 131u ^
         static_cast<std::size_t>(c.rel) * 0x632be5ab ^ c.degree.Hash();
}

struct ConstraintHash {
  std::size_t operator()(const FuzzyConstraint& c) const noexcept {
    return HashConstraint(c);
  }
};

struct AssertionHash {
  std::size_t operator()(const Assertion& a) const noexcept {
    return HashAssertion(a);
  }
};

// User-level fuzzy assertions: >= with degree in (0,1], <= with degree in [0,1).
inline bool IsUserLevel(const FuzzyConstraint& c) {
  if (c.rel == Relation::kGeq) return !c.degree.IsZero();
  if (c.rel == Relation::kLeq) return !c.degree.IsOne();
  return false;
}

struct Axiom {
  enum class Kind { kSpecialisation, kDefinition };

  Kind kind = Kind::kDefinition;
  std::string lhs;
  Concept rhs;

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

inline Axiom Specialisation(std::string lhs, Concept rhs) {
  return Axiom{Axiom::Kind::kSpecialisation, std::move(lhs), std::move(rhs)};
}
inline Axiom Definition(std::string lhs, Concept rhs) {
  return Axiom{Axiom::Kind::kDefinition, std::move(lhs), std::move(rhs)};
}

// ABox of fuzzy assertions plus TBox. Insertion order is kept; exact
// duplicate assertions are dropped.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::vector<FuzzyConstraint> abox, std::vector<Axiom> tbox) {
    for (auto& c : abox) AddAssertion(std::move(c));
    tbox_ = std::move(tbox);
  }

  void AddAssertion(FuzzyConstraint c) {
    for (const auto& existing : abox_)
      if (existing == c) return;
    abox_.push_back(std::move(c));
  }
  void AddAxiom(Axiom a) { tbox_.push_back(std::move(a)); }

  const std::vector<FuzzyConstraint>& abox() const { return abox_; }
  const std::vector<Axiom>& tbox() const { return tbox_; }

  bool IsPurelyAssertional() const { return tbox_.empty(); }

  // Individual names in order of first occurrence.
  std::vector<std::string> Individuals() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    auto add = [&](const Object& o) {
      if (auto* ind = std::get_if<Individual>(&o))
        if (seen.insert(ind->name).second) out.push_back(ind->name);
    };
    for (const auto& c : abox_) {
      if (auto* ca = std::get_if<ConceptAssertion>(&c.assertion)) {
        add(ca->object);
      } else {
        const auto& ra = std::get<RoleAssertion>(c.assertion);
        add(ra.subject);
        add(ra.filler);
      }
    }
    return out;
  }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  std::vector<FuzzyConstraint> abox_;
  std::vector<Axiom> tbox_;
};

inline void CollectSignature(const Assertion& a, std::set<std::string>& concepts,
                             std::set<std::string>& roles) {
  if (auto* ca = std::get_if<ConceptAssertion>(&a))
    CollectSignature(ca->term, concepts, roles);
  else
    roles.insert(std::get<RoleAssertion>(a).role);
}

inline void CollectSignature(const KnowledgeBase& kb, std::set<std::string>& concepts,
                             std::set<std::string>& roles) {
  for (const auto& ax : kb.tbox()) {
    concepts.insert(ax.lhs);
    CollectSignature(ax.rhs, concepts, roles);
  }
  for (const auto& c : kb.abox()) CollectSignature(c.assertion, concepts, roles);
}

}  // namespace fuzzydl
