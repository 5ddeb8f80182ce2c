#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fuzzydl/concept.hpp"
#include "fuzzydl/degree.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"
#include "fuzzydl/parser.hpp"
#include "fuzzydl/semantics.hpp"

namespace fuzzydl {

// Lower bound (rel_lo, n) against upper bound (rel_hi, m).
inline bool ConjugatedBounds(Relation r1, const Degree& n1, Relation r2,
                             const Degree& n2) {
  if (IsLowerBound(r1) == IsLowerBound(r2)) return false;
  if (!IsLowerBound(r1)) {
    std::swap(r1, r2);
    return ConjugatedBounds(r1, n2, r2, n1);
  }
  if (r1 == Relation::kGeq && r2 == Relation::kLeq) return n1 > n2;
  return n1 >= n2;
}

inline bool Conjugated(const FuzzyConstraint& a, const FuzzyConstraint& b) {
  return a.assertion == b.assertion &&
         ConjugatedBounds(a.rel, a.degree, b.rel, b.degree);
}

struct ClashWitness {
  enum class Kind { kTable1, kConjugatedPair };
  Kind kind;
  std::vector<FuzzyConstraint> constraints;
};

// Clashes that a single constraint causes on its own.
inline bool IsSelfClash(const FuzzyConstraint& c) {
  if (c.rel == Relation::kLt && c.degree.IsZero()) return true;
  if (c.rel == Relation::kGt && c.degree.IsOne()) return true;
  auto* ca = std::get_if<ConceptAssertion>(&c.assertion);
  if (!ca) return false;
  if (ca->term.is(ConceptKind::kBottom))
    return c.rel == Relation::kGt || (c.rel == Relation::kGeq && !c.degree.IsZero());
  if (ca->term.is(ConceptKind::kTop))
    return c.rel == Relation::kLt || (c.rel == Relation::kLeq && !c.degree.IsOne());
  return false;
}

inline Relation FlipRelation(Relation r) {
  switch (r) {
    case Relation::kGeq: return Relation::kLeq;
    case Relation::kGt: return Relation::kLt;
    case Relation::kLeq: return Relation::kGeq;
    case Relation::kLt: return Relation::kGt;
  }
  return r;
}

enum class RuleClass { kDeterministic, kNondeterministic, kGenerating };

struct Application {
  std::string rule;
  RuleClass cls = RuleClass::kDeterministic;
  std::vector<FuzzyConstraint> premises;
  // One entry for deterministic and generating rules, two for branching.
  std::vector<std::vector<FuzzyConstraint>> alternatives;
};

namespace detail {

inline const Concept* TermOf(const FuzzyConstraint& c) {
  auto* ca = std::get_if<ConceptAssertion>(&c.assertion);
  return ca ? &ca->term : nullptr;
}

inline const Object& SubjectOf(const FuzzyConstraint& c) {
  if (auto* ca = std::get_if<ConceptAssertion>(&c.assertion)) return ca->object;
  return std::get<RoleAssertion>(c.assertion).subject;
}

inline std::string RuleName(const char* op, Relation rel) {
  return std::string(op) + RelationSymbol(rel);
}

}  // namespace detail

// ∀ with a lower bound or ∃ with an upper bound: fires along role edges.
inline bool IsPropagating(const FuzzyConstraint& c) {
  const Concept* t = detail::TermOf(c);
  if (!t) return false;
  return (t->is(ConceptKind::kAll) && IsLowerBound(c.rel)) ||
         (t->is(ConceptKind::kSome) && !IsLowerBound(c.rel));
}

// ∃ with a lower bound or ∀ with an upper bound: introduces a successor.
inline bool IsGenerating(const FuzzyConstraint& c) {
  const Concept* t = detail::TermOf(c);
  if (!t) return false;
  return (t->is(ConceptKind::kSome) && IsLowerBound(c.rel)) ||
         (t->is(ConceptKind::kAll) && !IsLowerBound(c.rel));
}

// The role constraint whose conjugate triggers a propagating constraint.
inline std::pair<Relation, Degree> PropagationGuard(const FuzzyConstraint& c) {
  const Concept& t = *detail::TermOf(c);
  if (t.is(ConceptKind::kAll)) return {FlipRelation(c.rel), c.degree.Complement()};
  return {c.rel, c.degree};
}

// Role bound introduced by a generating constraint.
inline std::pair<Relation, Degree> GeneratedRoleBound(const FuzzyConstraint& c) {
  const Concept& t = *detail::TermOf(c);
  if (t.is(ConceptKind::kSome)) return {c.rel, c.degree};
  return {FlipRelation(c.rel), c.degree.Complement()};
}

// Working set of fuzzy constraints. Copying yields an independent branch.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(const std::vector<FuzzyConstraint>& constraints) {
    for (const auto& c : constraints) Add(c);
  }

  // Returns false if `c` was already present.
  bool Add(const FuzzyConstraint& c) {
    if (index_.count(c)) return false;
    std::size_t i = items_.size();
    items_.push_back(c);
    index_.emplace(c, i);

    if (!clash_) {
      if (IsSelfClash(c)) {
        clash_ = ClashWitness{ClashWitness::Kind::kTable1, {c}};
      } else {
        for (std::size_t j : by_assertion_[c.assertion]) {
          if (Conjugated(items_[j], c)) {
            clash_ = ClashWitness{ClashWitness::Kind::kConjugatedPair, {items_[j], c}};
            break;
          }
        }
      }
    }
    by_assertion_[c.assertion].push_back(i);

    if (auto* ra = std::get_if<RoleAssertion>(&c.assertion)) {
      roles_from_[ra->subject].push_back(i);
      NoteObject(ra->subject);
      NoteObject(ra->filler);
    } else {
      const auto& ca = std::get<ConceptAssertion>(c.assertion);
      if (IsPropagating(c)) propagating_on_[ca.object].push_back(i);
      NoteObject(ca.object);
    }
    return true;
  }

  bool Contains(const FuzzyConstraint& c) const { return index_.count(c) > 0; }

  const std::vector<FuzzyConstraint>& constraints() const { return items_; }
  std::size_t size() const { return items_.size(); }

  const std::optional<ClashWitness>& clash() const { return clash_; }

  // Objects in order of first occurrence.
  const std::vector<Object>& objects() const { return objects_; }

  Variable FreshVariable() { return Variable{next_variable_id_++}; }
  std::uint64_t next_variable_id() const { return next_variable_id_; }
  void reserve_variables_from(std::uint64_t id) {
    next_variable_id_ = std::max(next_variable_id_, id);
  }

  const std::vector<std::size_t>& RolesFrom(const Object& w) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = roles_from_.find(w);
    return it == roles_from_.end() ? kEmpty : it->second;
  }
  const std::vector<std::size_t>& PropagatingOn(const Object& w) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = propagating_on_.find(w);
    return it == propagating_on_.end() ? kEmpty : it->second;
  }

  // True if some w' already has both constraints the generating rule for
  // items()[i] would add.
  bool IsBlocked(std::size_t i) const {
    const auto& c = items_[i];
    const auto& ca = std::get<ConceptAssertion>(c.assertion);
    auto [rel, deg] = GeneratedRoleBound(c);
    for (std::size_t j : RolesFrom(ca.object)) {
      const auto& r = items_[j];
      const auto& ra = std::get<RoleAssertion>(r.assertion);
      if (ra.role != ca.term.role() || r.rel != rel || r.degree != deg) continue;
      if (Contains({ConceptAssertion{ra.filler, ca.term.child()}, c.rel, c.degree}))
        return true;
    }
    return false;
  }

  // Conclusions of the generating rule for items()[i] with successor x.
  std::vector<FuzzyConstraint> GeneratingConclusions(std::size_t i,
                                                     const Object& x) const {
    const auto& c = items_[i];
    const auto& ca = std::get<ConceptAssertion>(c.assertion);
    auto [rel, deg] = GeneratedRoleBound(c);
    return {{RoleAssertion{ca.object, x, ca.term.role()}, rel, deg},
            {ConceptAssertion{x, ca.term.child()}, c.rel, c.degree}};
  }

  // Next rule instance by priority: deterministic, then nondeterministic,
  // then (if enabled) generating; oldest premise first within a class.
  // Allocates the fresh variable of a generating instance.
  std::optional<Application> NextApplication(bool generating = true) {
    for (; det_cursor_ < items_.size(); ++det_cursor_)
      if (auto app = DeterministicAt(det_cursor_)) return app;
    for (; nondet_cursor_ < items_.size(); ++nondet_cursor_)
      if (auto app = NondeterministicAt(nondet_cursor_)) return app;
    if (!generating) return std::nullopt;
    for (; gen_cursor_ < items_.size(); ++gen_cursor_) {
      const auto& c = items_[gen_cursor_];
      if (!IsGenerating(c) || IsBlocked(gen_cursor_)) continue;
      Application app;
      const Concept& t = *detail::TermOf(c);
      app.rule = detail::RuleName(t.is(ConceptKind::kSome) ? "some" : "all", c.rel);
      app.cls = RuleClass::kGenerating;
      app.premises = {c};
      app.alternatives = {GeneratingConclusions(gen_cursor_, FreshVariable())};
      return app;
    }
    return std::nullopt;
  }

  // Cursor-free check used by contract validation.
  bool IsComplete() const {
    ConstraintSet copy = *this;
    copy.det_cursor_ = copy.nondet_cursor_ = copy.gen_cursor_ = 0;
    return !copy.NextApplication(true);
  }

 private:
  void NoteObject(const Object& o) {
    if (seen_objects_.insert(o).second) {
      objects_.push_back(o);
      if (auto* v = std::get_if<Variable>(&o))
        next_variable_id_ = std::max(next_variable_id_, v->id + 1);
    }
  }

  std::optional<Application> DeterministicAt(std::size_t i) const {
    const auto& c = items_[i];
    if (const Concept* t = detail::TermOf(c)) {
      const Object& w = std::get<ConceptAssertion>(c.assertion).object;
      std::vector<FuzzyConstraint> concl;
      const char* op = nullptr;
      if (t->is(ConceptKind::kNot)) {
        op = "not";
        concl = {{ConceptAssertion{w, t->child()}, FlipRelation(c.rel),
                  c.degree.Complement()}};
      } else if ((t->is(ConceptKind::kAnd) && IsLowerBound(c.rel)) ||
                 (t->is(ConceptKind::kOr) && !IsLowerBound(c.rel))) {
        op = t->is(ConceptKind::kAnd) ? "and" : "or";
        concl = {{ConceptAssertion{w, t->left()}, c.rel, c.degree},
                 {ConceptAssertion{w, t->right()}, c.rel, c.degree}};
      }
      if (op) {
        bool missing = false;
        for (const auto& k : concl) missing = missing || !Contains(k);
        if (missing) return Application{detail::RuleName(op, c.rel),
                                        RuleClass::kDeterministic, {c}, {concl}};
      }
      if (IsPropagating(c)) {
        for (std::size_t j : RolesFrom(w)) {
          if (j >= i) break;
          if (auto app = Propagation(i, j)) return app;
        }
      }
      return std::nullopt;
    }
    const auto& ra = std::get<RoleAssertion>(c.assertion);
    for (std::size_t j : PropagatingOn(ra.subject)) {
      if (j >= i) break;
      if (auto app = Propagation(j, i)) return app;
    }
    return std::nullopt;
  }

  std::optional<Application> Propagation(std::size_t u, std::size_t r) const {
    const auto& uc = items_[u];
    const auto& rc = items_[r];
    const auto& ca = std::get<ConceptAssertion>(uc.assertion);
    const auto& ra = std::get<RoleAssertion>(rc.assertion);
    if (ra.role != ca.term.role()) return std::nullopt;
    auto [grel, gdeg] = PropagationGuard(uc);
    if (!ConjugatedBounds(rc.rel, rc.degree, grel, gdeg)) return std::nullopt;
    FuzzyConstraint concl{ConceptAssertion{ra.filler, ca.term.child()}, uc.rel, uc.degree};
    if (Contains(concl)) return std::nullopt;
    return Application{
        detail::RuleName(ca.term.is(ConceptKind::kAll) ? "all" : "some", uc.rel),
        RuleClass::kDeterministic, {uc, rc}, {{concl}}};
  }

  std::optional<Application> NondeterministicAt(std::size_t i) const {
    const auto& c = items_[i];
    const Concept* t = detail::TermOf(c);
    if (!t) return std::nullopt;
    bool branching = (t->is(ConceptKind::kOr) && IsLowerBound(c.rel)) ||
                     (t->is(ConceptKind::kAnd) && !IsLowerBound(c.rel));
    if (!branching) return std::nullopt;
    const Object& w = std::get<ConceptAssertion>(c.assertion).object;
    FuzzyConstraint l{ConceptAssertion{w, t->left()}, c.rel, c.degree};
    FuzzyConstraint r{ConceptAssertion{w, t->right()}, c.rel, c.degree};
    if (Contains(l) || Contains(r)) return std::nullopt;
    return Application{
        detail::RuleName(t->is(ConceptKind::kOr) ? "or" : "and", c.rel),
        RuleClass::kNondeterministic, {c}, {{l}, {r}}};
  }

  std::vector<FuzzyConstraint> items_;
  std::unordered_map<FuzzyConstraint, std::size_t, ConstraintHash> index_;
  std::unordered_map<Assertion, std::vector<std::size_t>, AssertionHash> by_assertion_;
  std::map<Object, std::vector<std::size_t>> roles_from_;
  std::map<Object, std::vector<std::size_t>> propagating_on_;
  std::vector<Object> objects_;
  std::set<Object> seen_objects_;
  std::optional<ClashWitness> clash_;
  std::uint64_t next_variable_id_ = 0;
  std::size_t det_cursor_ = 0;
  std::size_t nondet_cursor_ = 0;
  std::size_t gen_cursor_ = 0;
};

// Full scan, independent of the incremental check inside ConstraintSet.
inline std::optional<ClashWitness> DetectClash(const std::vector<FuzzyConstraint>& s) {
  for (const auto& c : s)
    if (IsSelfClash(c)) return ClashWitness{ClashWitness::Kind::kTable1, {c}};
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (Conjugated(s[i], s[j]))
        return ClashWitness{ClashWitness::Kind::kConjugatedPair, {s[i], s[j]}};
  return std::nullopt;
}

inline std::optional<ClashWitness> DetectClash(const ConstraintSet& s) {
  return DetectClash(s.constraints());
}

// Applies one rule instance; nullopt when `s` is complete. Each successor
// is a separate copy.
inline std::optional<std::vector<ConstraintSet>> Step(const ConstraintSet& s) {
  ConstraintSet base = s;
  auto app = base.NextApplication(true);
  if (!app) return std::nullopt;
  std::vector<ConstraintSet> out;
  for (const auto& alt : app->alternatives) {
    ConstraintSet next = base;
    for (const auto& c : alt) next.Add(c);
    out.push_back(std::move(next));
  }
  return out;
}

struct ProofStep {
  enum class Kind { kRule, kClash, kComplete };
  Kind kind = Kind::kRule;
  std::string rule;
  std::vector<FuzzyConstraint> premises;
  std::vector<FuzzyConstraint> conclusions;
  int branch = 0;
  // Branch this one was split from; -1 for the root.
  int parent = -1;
};

struct ProofTrace {
  std::vector<ProofStep> steps;

  // Branch ids that no other branch was split from.
  std::vector<int> LeafBranches() const {
    std::set<int> all{0}, parents;
    for (const auto& s : steps) {
      all.insert(s.branch);
      if (s.parent >= 0 && s.branch != s.parent) parents.insert(s.parent);
    }
    std::vector<int> out;
    for (int b : all)
      if (!parents.count(b)) out.push_back(b);
    return out;
  }

  bool EveryLeafClashes() const {
    std::set<int> clashed;
    for (const auto& s : steps)
      if (s.kind == ProofStep::Kind::kClash) clashed.insert(s.branch);
    for (int b : LeafBranches())
      if (!clashed.count(b)) return false;
    return true;
  }

  std::string ToText() const {
    std::string out;
    auto join = [](const std::vector<FuzzyConstraint>& cs) {
      std::string s;
      for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + Render(cs[i]);
      return s;
    };
    for (const auto& s : steps) {
      out += "[b" + std::to_string(s.branch);
      if (s.parent >= 0 && s.parent != s.branch) out += " <- b" + std::to_string(s.parent);
      out += "] ";
      switch (s.kind) {
        case ProofStep::Kind::kRule:
          out += "(" + s.rule + ") " + join(s.premises) + " => " + join(s.conclusions);
          break;
        case ProofStep::Kind::kClash:
          out += "clash: " + join(s.premises);
          break;
        case ProofStep::Kind::kComplete:
          out += "complete, clash-free";
          break;
      }
      out += "\n";
    }
    return out;
  }
};

struct TableauStats {
  std::size_t rule_applications = 0;
  std::size_t branches = 1;
  std::size_t closed_branches = 0;
  std::size_t max_constraints = 0;
  std::size_t variables = 0;
  // Trace mode: constraints held on the recursion stack at the peak.
  std::size_t max_live_constraints = 0;
};

struct SatResult {
  bool satisfiable = false;
  std::optional<ConstraintSet> completion;
  // One witness per closed branch.
  std::vector<ClashWitness> clashes;
  TableauStats stats;
};

struct TableauOptions {
  ProofTrace* proof = nullptr;
  // Trace mode only: merge the per-trace completions into one set.
  bool assemble_completion = false;
  // 0 = unlimited. Exceeding raises ResourceError.
  std::size_t max_rule_applications = 0;
};

namespace detail {

class Search {
 public:
  using Leaf = std::function<bool(ConstraintSet&, int)>;

  explicit Search(TableauOptions options) : options_(options) {}

  bool Explore(ConstraintSet s, int branch, bool generating, const Leaf& leaf) {
    for (;;) {
      stats.max_constraints = std::max(stats.max_constraints, s.size());
      if (const auto& clash = s.clash()) {
        ++stats.closed_branches;
        clashes.push_back(*clash);
        Record(ProofStep::Kind::kClash, "", clash->constraints, {}, branch, branch);
        return false;
      }
      auto app = s.NextApplication(generating);
      if (!app) return leaf(s, branch);
      ++stats.rule_applications;
      if (options_.max_rule_applications &&
          stats.rule_applications > options_.max_rule_applications)
        throw ResourceError("tableau exceeded " +
                            std::to_string(options_.max_rule_applications) +
                            " rule applications");
      if (app->cls == RuleClass::kGenerating) ++stats.variables;
      if (app->alternatives.size() == 1) {
        Record(ProofStep::Kind::kRule, app->rule, app->premises, app->alternatives[0],
               branch, branch);
        for (const auto& c : app->alternatives[0]) s.Add(c);
        continue;
      }
      for (std::size_t k = 0; k < app->alternatives.size(); ++k) {
        int child = next_branch_++;
        ++stats.branches;
        Record(ProofStep::Kind::kRule, app->rule, app->premises, app->alternatives[k],
               child, branch);
        bool last = k + 1 == app->alternatives.size();
        ConstraintSet next = last ? std::move(s) : s;
        for (const auto& c : app->alternatives[k]) next.Add(c);
        if (Explore(std::move(next), child, generating, leaf)) return true;
      }
      return false;
    }
  }

  void Record(ProofStep::Kind kind, const std::string& rule,
              const std::vector<FuzzyConstraint>& premises,
              const std::vector<FuzzyConstraint>& conclusions, int branch, int parent) {
    if (!options_.proof) return;
    options_.proof->steps.push_back(
        {kind, rule, premises, conclusions, branch, parent == branch ? -1 : parent});
  }

  int NewBranch() {
    ++stats.branches;
    return next_branch_++;
  }

  TableauOptions options_;
  TableauStats stats;
  std::vector<ClashWitness> clashes;

 private:
  int next_branch_ = 1;
};

}  // namespace detail

// Depth-first search for a clash-free completion.
inline SatResult Complete(const ConstraintSet& s, TableauOptions options = {}) {
  detail::Search search(options);
  SatResult result;
  result.satisfiable = search.Explore(s, 0, true, [&](ConstraintSet& done, int branch) {
    search.Record(ProofStep::Kind::kComplete, "", {}, {}, branch, branch);
    result.completion = done;
    return true;
  });
  result.clashes = std::move(search.clashes);
  result.stats = search.stats;
  return result;
}

// Every clash-free completion reachable by the rule order; stops after
// `limit` if nonzero.
inline std::vector<ConstraintSet> EnumerateCompletions(const ConstraintSet& s,
                                                       std::size_t limit = 0,
                                                       TableauOptions options = {}) {
  detail::Search search(options);
  std::vector<ConstraintSet> out;
  search.Explore(s, 0, true, [&](ConstraintSet& done, int branch) {
    search.Record(ProofStep::Kind::kComplete, "", {}, {}, branch, branch);
    out.push_back(done);
    return limit != 0 && out.size() >= limit;
  });
  return out;
}

namespace detail {

// Pre-completions saturate everything but the generating rules; each
// generating constraint then spawns an independent subproblem holding only
// the new successor's constraints.
class TraceSearch {
 public:
  explicit TraceSearch(TableauOptions options) : search_(options) {}

  bool Solve(const ConstraintSet& s, int branch, std::optional<ConstraintSet>* out) {
    next_var_ = std::max(next_var_, s.next_variable_id());
    return search_.Explore(s, branch, false, [&](ConstraintSet& pre, int leaf_branch) {
      return Traces(pre, leaf_branch, out);
    });
  }

  TableauStats stats() const {
    TableauStats st = search_.stats;
    st.max_live_constraints = max_live_;
    return st;
  }
  std::vector<ClashWitness>& clashes() { return search_.clashes; }

 private:
  bool Traces(ConstraintSet& pre, int branch, std::optional<ConstraintSet>* out) {
    live_ += pre.size();
    max_live_ = std::max(max_live_, live_);
    struct Pending {
      FuzzyConstraint role;
      ConstraintSet sub;
    };
    std::vector<Pending> subs;
    for (std::size_t i = 0; i < pre.size(); ++i) {
      const auto& g = pre.constraints()[i];
      if (!IsGenerating(g) || pre.IsBlocked(i)) continue;
      Variable x{next_var_++};
      ++search_.stats.variables;
      auto concl = pre.GeneratingConclusions(i, x);
      ConstraintSet sub;
      sub.Add(concl[1]);
      const auto& role = concl[0];
      const auto& ca = std::get<ConceptAssertion>(g.assertion);
      for (std::size_t j : pre.PropagatingOn(ca.object)) {
        const auto& u = pre.constraints()[j];
        const Concept& t = *TermOf(u);
        if (t.role() != ca.term.role()) continue;
        auto [grel, gdeg] = PropagationGuard(u);
        if (ConjugatedBounds(role.rel, role.degree, grel, gdeg))
          sub.Add({ConceptAssertion{x, t.child()}, u.rel, u.degree});
      }
      subs.push_back({role, std::move(sub)});
    }

    bool ok = true;
    std::optional<ConstraintSet> merged;
    if (out) merged = pre;
    for (auto& p : subs) {
      int child = search_.NewBranch();
      search_.Record(ProofStep::Kind::kRule, "trace", {}, {p.role}, child, branch);
      if (IsSelfClash(p.role)) {
        search_.clashes.push_back({ClashWitness::Kind::kTable1, {p.role}});
        search_.Record(ProofStep::Kind::kClash, "", {p.role}, {}, child, child);
        ok = false;
        break;
      }
      std::optional<ConstraintSet> sub_done;
      p.sub.reserve_variables_from(next_var_);
      if (!Solve(p.sub, child, out ? &sub_done : nullptr)) {
        ok = false;
        break;
      }
      if (merged) {
        merged->Add(p.role);
        for (const auto& c : sub_done->constraints()) merged->Add(c);
      }
    }
    live_ -= pre.size();
    if (ok) {
      search_.Record(ProofStep::Kind::kComplete, "", {}, {}, branch, branch);
      if (out) *out = std::move(merged);
    }
    return ok;
  }

  Search search_;
  std::uint64_t next_var_ = 0;
  std::size_t live_ = 0;
  std::size_t max_live_ = 0;
};

}  // namespace detail

// Same verdict as Complete, exploring one successor at a time.
inline SatResult CompleteTrace(const ConstraintSet& s, TableauOptions options = {}) {
  detail::TraceSearch search(options);
  SatResult result;
  std::optional<ConstraintSet> completion;
  result.satisfiable =
      search.Solve(s, 0, options.assemble_completion ? &completion : nullptr);
  if (result.satisfiable) result.completion = std::move(completion);
  result.clashes = std::move(search.clashes());
  result.stats = search.stats();
  return result;
}

struct ModelExtraction {
  Interpretation model;
  Rational epsilon;
};

namespace detail {

struct Bounds {
  std::optional<Degree> geq, gt, leq, lt;

  void Note(Relation rel, const Degree& d) {
    auto keep = [&](std::optional<Degree>& slot, bool larger) {
      if (!slot || (larger ? d > *slot : d < *slot)) slot = d;
    };
    switch (rel) {
      case Relation::kGeq: keep(geq, true); break;
      case Relation::kGt: keep(gt, true); break;
      case Relation::kLeq: keep(leq, false); break;
      case Relation::kLt: keep(lt, false); break;
    }
  }

  Rational Glb(const Rational& eps) const {
    if (!geq && !gt) return 0;
    if (!gt) return geq->value();
    if (!geq || !(*geq > *gt)) return gt->value() + eps;
    return geq->value();
  }

  Rational Lub(const Rational& eps) const {
    if (!leq && !lt) return 1;
    if (!lt) return leq->value();
    if (!leq || !(*leq < *lt)) return lt->value() - eps;
    return leq->value();
  }
};

}  // namespace detail

// Canonical model of a complete, clash-free constraint set.
inline ModelExtraction ExtractModelWithEpsilon(const ConstraintSet& completion) {
  if (completion.clash() || DetectClash(completion))
    throw ContractError("extract_model: constraint set has a clash");
  if (!completion.IsComplete())
    throw ContractError("extract_model: constraint set is not complete");

  std::set<Rational> points{Rational(0), Rational(1)};
  for (const auto& c : completion.constraints()) {
    points.insert(c.degree.value());
    points.insert(1 - c.degree.value());
  }
  Rational gap = 1;
  for (auto it = points.begin(), nx = std::next(it); nx != points.end(); ++it, ++nx)
    gap = std::min(gap, *nx - *it);
  Rational eps = gap / 2;

  std::map<Assertion, detail::Bounds> bounds;
  for (const auto& c : completion.constraints()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&c.assertion))
      if (!ca->term.is(ConceptKind::kPrimitive)) continue;
    bounds[c.assertion].Note(c.rel, c.degree);
  }

  Interpretation interp;
  for (const auto& o : completion.objects()) {
    if (auto* ind = std::get_if<Individual>(&o))
      interp.MapIndividual(ind->name, o);
    else
      interp.AddElement(o);
  }
  for (const auto& [a, b] : bounds) {
    Rational lo = b.Glb(eps), hi = b.Lub(eps);
    if (lo > hi)
      throw ContractError("extract_model: empty interval for " + Render(a));
    Degree value(lo);
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      interp.SetConcept(ca->term.name(), ca->object, value);
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      interp.SetRole(ra.role, ra.subject, ra.filler, value);
    }
  }

  // Caps on role degrees from propagating constraints that did not fire.
  for (const auto& u : completion.constraints()) {
    if (!IsPropagating(u)) continue;
    const auto& ca = std::get<ConceptAssertion>(u.assertion);
    auto [grel, gdeg] = PropagationGuard(u);
    for (const auto& w2 : completion.objects()) {
      FuzzyConstraint concl{ConceptAssertion{w2, ca.term.child()}, u.rel, u.degree};
      if (completion.Contains(concl)) continue;
      Degree r = interp.RoleDegree(ca.term.role(), ca.object, w2);
      if (!Holds(r, grel, gdeg))
        throw ContractError("extract_model: role cap violated for " +
                            ObjectName(ca.object) + ", " + ObjectName(w2));
    }
  }

  for (const auto& c : completion.constraints())
    if (!Satisfies(interp, c))
      throw ContractError("extract_model: canonical model fails " + Render(c));
  return {std::move(interp), eps};
}

inline Interpretation ExtractModel(const ConstraintSet& completion) {
  return ExtractModelWithEpsilon(completion).model;
}

}  // namespace fuzzydl
