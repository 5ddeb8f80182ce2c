#pragma once

#include <algorithm>
#include <future>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fuzzydl/degree.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"
#include "fuzzydl/tableau.hpp"
#include "fuzzydl/terminology.hpp"

namespace fuzzydl {

enum class SearchMode { kFull, kTrace };

struct ReasonerOptions {
  SearchMode mode = SearchMode::kFull;
  ExpansionOptions expansion;
  std::size_t max_rule_applications = 0;
};

struct EntailmentResult {
  bool entailed = false;
  // Set when the KB is satisfiable together with the negated query.
  std::optional<ConstraintSet> countermodel;
  TableauStats stats;
};

struct BoundResult {
  Degree degree;
  bool inconsistent = false;
  std::vector<Degree> candidates;
  std::size_t tests = 0;
};

struct RankEntry {
  std::string individual;
  Degree degree;
};

// {0, 0.5, 1} plus every >= degree and the complement of every <= degree.
inline std::vector<Degree> DegreeCandidates(const KnowledgeBase& kb) {
  std::set<Degree> n{Degree::Zero(), Degree::Half(), Degree::One()};
  for (const auto& c : kb.abox()) {
    if (c.rel == Relation::kGeq) n.insert(c.degree);
    else if (c.rel == Relation::kLeq) n.insert(c.degree.Complement());
  }
  return {n.begin(), n.end()};
}

inline SatResult RunTableau(const ConstraintSet& s, SearchMode mode,
                            TableauOptions options = {}) {
  return mode == SearchMode::kTrace ? CompleteTrace(s, options) : Complete(s, options);
}

// Decision procedures over one knowledge base. The terminology is expanded
// once at construction; queries are rewritten with the same substitution.
class Reasoner {
 public:
  explicit Reasoner(KnowledgeBase kb, ReasonerOptions options = {})
      : kb_(std::move(kb)), options_(options), expansion_(kb_, options.expansion) {
    KnowledgeBase nnf;
    for (const auto& c : expansion_.kb().abox()) nnf.AddAssertion(ToNnf(c));
    abox_ = std::move(nnf);
    candidates_ = DegreeCandidates(abox_);
  }

  Reasoner(const Reasoner&) = delete;
  Reasoner& operator=(const Reasoner&) = delete;

  const KnowledgeBase& kb() const { return kb_; }
  const KnowledgeBase& expanded() const { return abox_; }
  const ExpansionReport& expansion_report() const { return expansion_.report(); }
  const std::vector<Degree>& candidates() const { return candidates_; }
  const ReasonerOptions& options() const { return options_; }

  // Rewrites defined names. Not thread-safe (memo); call before fanning out.
  Concept Expand(const Concept& c) {
    CheckVocabulary(c);
    return ToNnf(expansion_.Apply(c));
  }
  Assertion Expand(const Assertion& a) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a))
      return ConceptAssertion{ca->object, Expand(ca->term)};
    return a;
  }

  SatResult Satisfiability(TableauOptions topts = {}) const {
    topts.max_rule_applications = options_.max_rule_applications;
    return RunTableau(ConstraintSet(abox_.abox()), options_.mode, topts);
  }

  bool IsSatisfiable() const {
    std::call_once(sat_once_, [&] { satisfiable_ = Satisfiability().satisfiable; });
    return satisfiable_;
  }

  EntailmentResult Entails(const FuzzyConstraint& query, ProofTrace* proof = nullptr) {
    return EntailsExpanded({Expand(query.assertion), query.rel, query.degree}, proof);
  }

  // `query` must already be expanded.
  EntailmentResult EntailsExpanded(const FuzzyConstraint& query,
                                   ProofTrace* proof = nullptr) const {
    Relation negated;
    if (query.rel == Relation::kGeq) {
      if (query.degree.IsZero()) throw DomainError("entails: >= query needs degree in (0,1]");
      negated = Relation::kLt;
    } else if (query.rel == Relation::kLeq) {
      if (query.degree.IsOne()) throw DomainError("entails: <= query needs degree in [0,1)");
      negated = Relation::kGt;
    } else {
      throw DomainError("entails: query relation must be >= or <=");
    }
    ConstraintSet s(abox_.abox());
    s.Add({query.assertion, negated, query.degree});
    TableauOptions topts;
    topts.proof = proof;
    topts.max_rule_applications = options_.max_rule_applications;
    topts.assemble_completion = true;
    SatResult r = RunTableau(s, options_.mode, topts);
    EntailmentResult out;
    out.entailed = !r.satisfiable;
    out.countermodel = std::move(r.completion);
    out.stats = r.stats;
    return out;
  }

  BoundResult Glb(const Assertion& a) { return GlbExpanded(Expand(a)); }
  BoundResult Lub(const Assertion& a) { return LubExpanded(Expand(a)); }

  BoundResult GlbExpanded(const Assertion& a) const {
    if (auto* ra = std::get_if<RoleAssertion>(&a)) {
      BoundResult r;
      r.candidates = candidates_;
      r.inconsistent = !IsSatisfiable();
      r.tests = 1;
      if (r.inconsistent) {
        r.degree = Degree::One();
        return r;
      }
      r.degree = ExplicitRoleLowerBound(*ra);
      return r;
    }
    return GlbBySearch(a);
  }

  // Binary search over the nonzero candidates.
  BoundResult GlbBySearch(const Assertion& a) const {
    BoundResult r;
    r.candidates = candidates_;
    std::vector<Degree> n(candidates_.begin() + 1, candidates_.end());
    std::ptrdiff_t lo = -1, hi = static_cast<std::ptrdiff_t>(n.size());
    while (hi - lo > 1) {
      std::ptrdiff_t mid = lo + (hi - lo) / 2;
      ++r.tests;
      if (EntailsExpanded({a, Relation::kGeq, n[mid]}).entailed) lo = mid;
      else hi = mid;
    }
    r.degree = lo < 0 ? Degree::Zero() : n[lo];
    r.inconsistent = r.degree.IsOne() && !IsSatisfiable();
    return r;
  }

  // Smallest m in 1 - N below 1 with an entailed upper bound, else 1.
  BoundResult LubExpanded(const Assertion& a) const {
    BoundResult r;
    r.candidates = candidates_;
    std::vector<Degree> m;
    for (auto it = candidates_.rbegin(); it != candidates_.rend(); ++it)
      if (!it->IsZero()) m.push_back(it->Complement());
    std::ptrdiff_t lo = -1, hi = static_cast<std::ptrdiff_t>(m.size());
    while (hi - lo > 1) {
      std::ptrdiff_t mid = lo + (hi - lo) / 2;
      ++r.tests;
      if (EntailsExpanded({a, Relation::kLeq, m[mid]}).entailed) hi = mid;
      else lo = mid;
    }
    r.degree = hi == static_cast<std::ptrdiff_t>(m.size()) ? Degree::One() : m[hi];
    r.inconsistent = r.degree.IsZero() && !IsSatisfiable();
    return r;
  }

  // Every individual of the KB by glb of membership in `c`, best first.
  std::vector<RankEntry> Rank(const Concept& c, bool parallel = false) {
    Concept q = Expand(c);
    auto individuals = kb_.Individuals();
    std::vector<RankEntry> out(individuals.size());
    auto one = [&](std::size_t i) {
      out[i] = {individuals[i],
                GlbExpanded(ConceptAssertion{MakeIndividual(individuals[i]), q}).degree};
    };
    if (parallel) {
      IsSatisfiable();
      std::vector<std::future<void>> jobs;
      for (std::size_t i = 0; i < individuals.size(); ++i)
        jobs.push_back(std::async(std::launch::async, one, i));
      for (auto& j : jobs) j.get();
    } else {
      for (std::size_t i = 0; i < individuals.size(); ++i) one(i);
    }
    std::stable_sort(out.begin(), out.end(), [](const RankEntry& x, const RankEntry& y) {
      if (x.degree != y.degree) return x.degree > y.degree;
      return x.individual < y.individual;
    });
    return out;
  }

  // c is subsumed by d under the terminology alone.
  bool Subsumes(const Concept& c, const Concept& d) {
    Concept ce = Expand(c), de = Expand(d);
    return SubsumesExpanded(ce, de, options_.mode);
  }

  static bool SubsumesExpanded(const Concept& c, const Concept& d,
                               SearchMode mode = SearchMode::kFull) {
    Object a = MakeIndividual("a");
    for (const Degree& m : {Degree::Half(), Degree::One()}) {
      ConstraintSet s;
      s.Add({ConceptAssertion{a, c}, Relation::kGeq, m});
      s.Add({ConceptAssertion{a, d}, Relation::kLt, m});
      if (RunTableau(s, mode).satisfiable) return false;
    }
    return true;
  }

 private:
  Degree ExplicitRoleLowerBound(const RoleAssertion& ra) const {
    Degree best = Degree::Zero();
    for (const auto& c : abox_.abox())
      if (c.rel == Relation::kGeq && c.assertion == Assertion(ra))
        best = std::max(best, c.degree);
    return best;
  }

  // A query naming an introduced starred primitive would alias it.
  void CheckVocabulary(const Concept& c) const {
    const auto& introduced = expansion_.report().introduced_primitives;
    if (introduced.empty()) return;
    std::set<std::string> concepts, roles;
    CollectSignature(c, concepts, roles);
    for (const auto& n : introduced)
      if (concepts.count(n))
        throw UnsupportedInput("query uses '" + n +
                               "', a name reserved by terminology expansion");
  }

  KnowledgeBase kb_;
  ReasonerOptions options_;
  Expansion expansion_;
  KnowledgeBase abox_;
  std::vector<Degree> candidates_;
  mutable std::once_flag sat_once_;
  mutable bool satisfiable_ = false;
};

// Subsumption of c by d w.r.t. a terminology only.
inline bool Subsumes(const std::vector<Axiom>& tbox, const Concept& c, const Concept& d,
                     SearchMode mode = SearchMode::kFull) {
  ReasonerOptions o;
  o.mode = mode;
  Reasoner r(KnowledgeBase({}, tbox), o);
  return r.Subsumes(c, d);
}

}  // namespace fuzzydl
