#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fuzzydl/degree.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"

namespace fuzzydl {

// Finite fuzzy interpretation. Unlisted memberships default to degree 0.
class Interpretation {
 public:
  // Adds `element` to the domain (no-op if present).
  void AddElement(const Object& element) {
    if (std::find(domain_.begin(), domain_.end(), element) == domain_.end())
      domain_.push_back(element);
  }

  // Maps individual `name` to `element`, adding the element to the domain.
  // Throws DomainError if another individual already denotes `element`.
  void MapIndividual(const std::string& name, const Object& element) {
    for (const auto& [other, target] : individuals_)
      if (other != name && target == element)
        throw DomainError("unique name assumption violated: '" + name +
                          "' and '" + other + "' share an element");
    AddElement(element);
    individuals_[name] = element;
  }

  // Convenience: individual `name` denotes the element Individual{name}.
  void AddIndividual(const std::string& name) {
    MapIndividual(name, MakeIndividual(name));
  }

  void SetConcept(const std::string& concept_name, const Object& element,
                  const Degree& degree) {
    AddElement(element);
    concepts_[{concept_name, element}] = degree;
  }

  void SetRole(const std::string& role, const Object& subject,
               const Object& filler, const Degree& degree) {
    AddElement(subject);
    AddElement(filler);
    roles_[{role, subject, filler}] = degree;
  }

  Degree ConceptDegree(const std::string& concept_name, const Object& element) const {
    auto it = concepts_.find({concept_name, element});
    return it == concepts_.end() ? Degree::Zero() : it->second;
  }

  Degree RoleDegree(const std::string& role, const Object& subject,
                    const Object& filler) const {
    auto it = roles_.find({role, subject, filler});
    return it == roles_.end() ? Degree::Zero() : it->second;
  }

  bool Contains(const Object& element) const {
    return std::find(domain_.begin(), domain_.end(), element) != domain_.end();
  }

  // Resolves an object of an assertion to a domain element. Variables denote
  // themselves; individuals go through the individual map.
  Object Denotation(const Object& o) const {
    if (auto* ind = std::get_if<Individual>(&o)) {
      auto it = individuals_.find(ind->name);
      if (it == individuals_.end())
        throw DomainError("unmapped individual '" + ind->name + "'");
      return it->second;
    }
    if (!Contains(o)) throw DomainError("variable not in domain: " + ObjectName(o));
    return o;
  }

  const std::vector<Object>& domain() const { return domain_; }
  const std::map<std::string, Object>& individuals() const { return individuals_; }
  const std::map<std::pair<std::string, Object>, Degree>& concept_map() const {
    return concepts_;
  }
  const std::map<std::tuple<std::string, Object, Object>, Degree>& role_map() const {
    return roles_;
  }

 private:
  std::vector<Object> domain_;
  std::map<std::string, Object> individuals_;
  std::map<std::pair<std::string, Object>, Degree> concepts_;
  std::map<std::tuple<std::string, Object, Object>, Degree> roles_;
};

namespace detail {

inline Degree Evaluate(const Interpretation& interp, const Concept& c,
                       const Object& element) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      return Degree::One();
    case ConceptKind::kBottom:
      return Degree::Zero();
    case ConceptKind::kPrimitive:
      return interp.ConceptDegree(c.name(), element);
    case ConceptKind::kNot:
      return Evaluate(interp, c.child(), element).Complement();
    case ConceptKind::kAnd:
      return std::min(Evaluate(interp, c.left(), element),
                      Evaluate(interp, c.right(), element));
    case ConceptKind::kOr:
      return std::max(Evaluate(interp, c.left(), element),
                      Evaluate(interp, c.right(), element));
    case ConceptKind::kAll: {
      Degree inf = Degree::One();
      for (const auto& other : interp.domain()) {
        Degree r = interp.RoleDegree(c.role(), element, other);
        Degree term = std::max(r.Complement(),
                               Evaluate(interp, c.child(), other));
        inf = std::min(inf, term);
      }
      return inf;
    }
    case ConceptKind::kSome: {
      Degree sup = Degree::Zero();
      for (const auto& other : interp.domain()) {
        Degree r = interp.RoleDegree(c.role(), element, other);
        Degree term = std::min(r, Evaluate(interp, c.child(), other));
        sup = std::max(sup, term);
      }
      return sup;
    }
  }
  return Degree::Zero();
}

}  // namespace detail

// Membership degree of `element` in `c` under min/max/1- semantics;
// quantifiers range over the whole (finite) domain.
inline Degree EvaluateConcept(const Interpretation& interp, const Concept& c,
                              const Object& element) {
  if (!interp.Contains(element))
    throw DomainError("element not in domain: " + ObjectName(element));
  return detail::Evaluate(interp, c, element);
}

// Truth degree of an assertion.
inline Degree EvaluateAssertion(const Interpretation& interp, const Assertion& a) {
  if (auto* ca = std::get_if<ConceptAssertion>(&a))
    return detail::Evaluate(interp, ca->term, interp.Denotation(ca->object));
  const auto& ra = std::get<RoleAssertion>(a);
  return interp.RoleDegree(ra.role, interp.Denotation(ra.subject),
                           interp.Denotation(ra.filler));
}

inline bool Satisfies(const Interpretation& interp, const FuzzyConstraint& c) {
  return Holds(EvaluateAssertion(interp, c.assertion), c.rel, c.degree);
}

inline bool Satisfies(const Interpretation& interp, const Axiom& axiom) {
  Concept lhs = Concept::Primitive(axiom.lhs);
  for (const auto& d : interp.domain()) {
    Degree a = detail::Evaluate(interp, lhs, d);
    Degree c = detail::Evaluate(interp, axiom.rhs, d);
    if (axiom.kind == Axiom::Kind::kSpecialisation ? !(a <= c) : !(a == c))
      return false;
  }
  return true;
}

inline bool SatisfiesKb(const Interpretation& interp, const KnowledgeBase& kb) {
  for (const auto& c : kb.abox())
    if (!Satisfies(interp, c)) return false;
  for (const auto& ax : kb.tbox())
    if (!Satisfies(interp, ax)) return false;
  return true;
}

}  // namespace fuzzydl
