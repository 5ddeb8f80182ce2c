#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fuzzydl/concept.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"

namespace fuzzydl {

// Reports duplicate left-hand sides and cycles of the "uses" relation.
// Each cycle is reported once, rotated to start at its smallest name.
inline std::vector<Diagnostic> ValidateTerminology(const std::vector<Axiom>& tbox) {
  std::vector<Diagnostic> out;
  std::map<std::string, std::set<std::string>> uses;
  std::map<std::string, int> count;
  for (const auto& ax : tbox) {
    if (++count[ax.lhs] == 2)
      out.push_back({Diagnostic::Kind::kDuplicateDefinition, ax.lhs, {},
                     "'" + ax.lhs + "' appears more than once as a left-hand side"});
    std::set<std::string> concepts, roles;
    CollectSignature(ax.rhs, concepts, roles);
    uses[ax.lhs].insert(concepts.begin(), concepts.end());
  }

  enum Color { kWhite, kGray, kBlack };
  std::map<std::string, Color> color;
  std::vector<std::string> path;
  std::set<std::vector<std::string>> seen_cycles;
  std::function<void(const std::string&)> visit = [&](const std::string& a) {
    color[a] = kGray;
    path.push_back(a);
    if (auto it = uses.find(a); it != uses.end()) {
      for (const auto& b : it->second) {
        if (!uses.count(b)) continue;
        if (color[b] == kGray) {
          auto from = std::find(path.begin(), path.end(), b);
          std::vector<std::string> cycle(from, path.end());
          std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                      cycle.end());
          if (seen_cycles.insert(cycle).second) {
            std::string msg = "cyclic definition: ";
            for (const auto& n : cycle) msg += n + " -> ";
            msg += cycle.front();
            out.push_back({Diagnostic::Kind::kCycle, cycle.front(), cycle, msg});
          }
        } else if (color[b] == kWhite) {
          visit(b);
        }
      }
    }
    path.pop_back();
    color[a] = kBlack;
  };
  for (const auto& [name, _] : uses)
    if (color[name] == kWhite) visit(name);
  return out;
}

// Replaces A < C with A := C and A*, appending '*' until the name is free.
// `reserved` holds every name that must not be reused; introduced names
// are added to it.
inline std::vector<Axiom> EliminateSpecialisations(const std::vector<Axiom>& tbox,
                                                   std::set<std::string>& reserved,
                                                   std::vector<std::string>* introduced = nullptr) {
  std::vector<Axiom> out;
  out.reserve(tbox.size());
  for (const auto& ax : tbox) {
    if (ax.kind == Axiom::Kind::kDefinition) {
      out.push_back(ax);
      continue;
    }
    std::string star = ax.lhs + "*";
    while (reserved.count(star)) star += "*";
    reserved.insert(star);
    if (introduced) introduced->push_back(star);
    out.push_back(Definition(ax.lhs, Concept::And(ax.rhs, Concept::Primitive(star))));
  }
  return out;
}

inline std::vector<Axiom> EliminateSpecialisations(const std::vector<Axiom>& tbox) {
  std::set<std::string> reserved, roles;
  for (const auto& ax : tbox) {
    reserved.insert(ax.lhs);
    CollectSignature(ax.rhs, reserved, roles);
  }
  reserved.insert(roles.begin(), roles.end());
  return EliminateSpecialisations(tbox, reserved);
}

// Top/bottom absorption, bottom-up.
inline Concept Simplify(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
    case ConceptKind::kPrimitive:
      return c;
    case ConceptKind::kNot: {
      Concept x = Simplify(c.child());
      if (x.is(ConceptKind::kTop)) return Concept::Bottom();
      if (x.is(ConceptKind::kBottom)) return Concept::Top();
      return Concept::Not(x);
    }
    case ConceptKind::kAnd: {
      Concept l = Simplify(c.left()), r = Simplify(c.right());
      if (l.is(ConceptKind::kBottom) || r.is(ConceptKind::kBottom)) return Concept::Bottom();
      if (l.is(ConceptKind::kTop)) return r;
      if (r.is(ConceptKind::kTop)) return l;
      return Concept::And(l, r);
    }
    case ConceptKind::kOr: {
      Concept l = Simplify(c.left()), r = Simplify(c.right());
      if (l.is(ConceptKind::kTop) || r.is(ConceptKind::kTop)) return Concept::Top();
      if (l.is(ConceptKind::kBottom)) return r;
      if (r.is(ConceptKind::kBottom)) return l;
      return Concept::Or(l, r);
    }
    case ConceptKind::kAll: {
      Concept x = Simplify(c.child());
      if (x.is(ConceptKind::kTop)) return Concept::Top();
      return Concept::All(c.role(), x);
    }
    case ConceptKind::kSome: {
      Concept x = Simplify(c.child());
      if (x.is(ConceptKind::kBottom)) return Concept::Bottom();
      return Concept::Some(c.role(), x);
    }
  }
  return c;
}

namespace detail {

inline Concept Nnf(const Concept& c, bool negated) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      return negated ? Concept::Bottom() : c;
    case ConceptKind::kBottom:
      return negated ? Concept::Top() : c;
    case ConceptKind::kPrimitive:
      return negated ? Concept::Not(c) : c;
    case ConceptKind::kNot:
      return Nnf(c.child(), !negated);
    case ConceptKind::kAnd: {
      Concept l = Nnf(c.left(), negated), r = Nnf(c.right(), negated);
      return negated ? Concept::Or(l, r) : Concept::And(l, r);
    }
    case ConceptKind::kOr: {
      Concept l = Nnf(c.left(), negated), r = Nnf(c.right(), negated);
      return negated ? Concept::And(l, r) : Concept::Or(l, r);
    }
    case ConceptKind::kAll: {
      Concept x = Nnf(c.child(), negated);
      return negated ? Concept::Some(c.role(), x) : Concept::All(c.role(), x);
    }
    case ConceptKind::kSome: {
      Concept x = Nnf(c.child(), negated);
      return negated ? Concept::All(c.role(), x) : Concept::Some(c.role(), x);
    }
  }
  return c;
}

}  // namespace detail

inline Concept ToNnf(const Concept& c) { return detail::Nnf(c, false); }

inline bool IsNnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
    case ConceptKind::kPrimitive:
      return true;
    case ConceptKind::kNot:
      return c.child().is(ConceptKind::kPrimitive);
    case ConceptKind::kAnd:
    case ConceptKind::kOr:
      return IsNnf(c.left()) && IsNnf(c.right());
    case ConceptKind::kAll:
    case ConceptKind::kSome:
      return IsNnf(c.child());
  }
  return false;
}

inline FuzzyConstraint ToNnf(const FuzzyConstraint& c) {
  if (auto* ca = std::get_if<ConceptAssertion>(&c.assertion))
    return {ConceptAssertion{ca->object, ToNnf(ca->term)}, c.rel, c.degree};
  return c;
}

struct ExpansionOptions {
  bool simplify = true;
  // Upper bound on the tree size of any single expanded term.
  std::size_t node_budget = 1'000'000;
};

struct ExpansionReport {
  std::vector<std::string> introduced_primitives;
  std::map<std::string, Concept> substitutions;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

// Unfolds defined names of an already specialisation-free, acyclic tbox.
class Unfolder {
 public:
  Unfolder(const std::vector<Axiom>& definitions, ExpansionOptions options)
      : options_(options) {
    for (const auto& ax : definitions) defs_.emplace(ax.lhs, ax.rhs);
  }

  Concept operator()(const Concept& c) {
    Concept out = Walk(c);
    if (options_.simplify) out = Simplify(out);
    CheckBudget(out);
    return out;
  }

  // Fully expanded defining term of `name`; requires name to be defined.
  Concept Expansion(const std::string& name) {
    if (auto it = memo_.find(name); it != memo_.end()) return it->second;
    Concept body = Walk(defs_.at(name));
    if (options_.simplify) body = Simplify(body);
    CheckBudget(body);
    memo_.emplace(name, body);
    return body;
  }

  bool IsDefined(const std::string& name) const { return defs_.count(name) > 0; }

 private:
  void CheckBudget(const Concept& c) const {
    if (c.TreeSize() > options_.node_budget)
      throw ResourceError("expansion exceeds node budget of " +
                          std::to_string(options_.node_budget));
  }

  Concept Walk(const Concept& c) {
    switch (c.kind()) {
      case ConceptKind::kTop:
      case ConceptKind::kBottom:
        return c;
      case ConceptKind::kPrimitive:
        return IsDefined(c.name()) ? Expansion(c.name()) : c;
      case ConceptKind::kNot:
        return Concept::Not(Walk(c.child()));
      case ConceptKind::kAnd:
        return Concept::And(Walk(c.left()), Walk(c.right()));
      case ConceptKind::kOr:
        return Concept::Or(Walk(c.left()), Walk(c.right()));
      case ConceptKind::kAll:
        return Concept::All(c.role(), Walk(c.child()));
      case ConceptKind::kSome:
        return Concept::Some(c.role(), Walk(c.child()));
    }
    return c;
  }

  std::map<std::string, Concept> defs_;
  std::map<std::string, Concept> memo_;
  ExpansionOptions options_;
};

// Purely assertional equivalent of a KB, plus the unfolder so that queries
// can be rewritten the same way as ABox assertions.
class Expansion {
 public:
  Expansion(const KnowledgeBase& kb, ExpansionOptions options = {},
            const std::set<std::string>& extra_reserved = {})
      : unfolder_({}, options) {
    if (auto diags = ValidateTerminology(kb.tbox()); !diags.empty())
      throw ValidationError(std::move(diags));

    std::set<std::string> reserved, roles;
    CollectSignature(kb, reserved, roles);
    reserved.insert(roles.begin(), roles.end());
    reserved.insert(extra_reserved.begin(), extra_reserved.end());
    auto defs = EliminateSpecialisations(kb.tbox(), reserved,
                                         &report_.introduced_primitives);
    unfolder_ = Unfolder(defs, options);

    for (const auto& ax : kb.tbox()) report_.size_before += 1 + ax.rhs.TreeSize();
    for (const auto& ax : defs)
      report_.substitutions.emplace(ax.lhs, unfolder_.Expansion(ax.lhs));

    for (const auto& c : kb.abox()) {
      report_.size_before += AssertionSize(c.assertion);
      FuzzyConstraint e = Apply(c);
      report_.size_after += AssertionSize(e.assertion);
      expanded_.AddAssertion(std::move(e));
    }
  }

  const KnowledgeBase& kb() const { return expanded_; }
  const ExpansionReport& report() const { return report_; }

  Concept Apply(const Concept& c) { return unfolder_(c); }

  Assertion Apply(const Assertion& a) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a))
      return ConceptAssertion{ca->object, Apply(ca->term)};
    return a;
  }

  FuzzyConstraint Apply(const FuzzyConstraint& c) {
    return {Apply(c.assertion), c.rel, c.degree};
  }

 private:
  static std::size_t AssertionSize(const Assertion& a) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) return ca->term.TreeSize();
    return 1;
  }

  Unfolder unfolder_;
  KnowledgeBase expanded_;
  ExpansionReport report_;
};

struct ExpandResult {
  KnowledgeBase kb;
  ExpansionReport report;
};

inline ExpandResult Expand(const KnowledgeBase& kb, ExpansionOptions options = {}) {
  Expansion e(kb, options);
  return {e.kb(), e.report()};
}

}  // namespace fuzzydl
