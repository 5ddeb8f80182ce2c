#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fuzzydl/concept.hpp"
#include "fuzzydl/degree.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"
#include "fuzzydl/reasoner.hpp"
#include "fuzzydl/semantics.hpp"

namespace fuzzydl {

// Crisp image of a fuzzy KB: plain assertions plus the same axioms.
struct CrispKb {
  std::vector<Assertion> abox;
  std::vector<Axiom> tbox;
};

inline Assertion CrispMap(const FuzzyConstraint& c) {
  if (c.rel == Relation::kGeq) return c.assertion;
  if (c.rel == Relation::kLeq) {
    if (auto* ca = std::get_if<ConceptAssertion>(&c.assertion))
      return ConceptAssertion{ca->object, Concept::Not(ca->term)};
    throw UnsupportedInput("no crisp image for an upper bound on a role assertion");
  }
  throw UnsupportedInput("no crisp image for a strict constraint");
}

inline CrispKb CrispMap(const KnowledgeBase& kb) {
  CrispKb out;
  for (const auto& c : kb.abox()) out.abox.push_back(CrispMap(c));
  out.tbox = kb.tbox();
  return out;
}

// Crisp entailment decided by the fuzzy reasoner: facts at degree 1,
// query at 0.5.
inline bool CrispEntails(const CrispKb& kb, const Assertion& query,
                         SearchMode mode = SearchMode::kFull) {
  KnowledgeBase fuzzy({}, kb.tbox);
  for (const auto& a : kb.abox) fuzzy.AddAssertion({a, Relation::kGeq, Degree::One()});
  ReasonerOptions o;
  o.mode = mode;
  Reasoner r(std::move(fuzzy), o);
  return r.Entails({query, Relation::kGeq, Degree::Half()}).entailed;
}

enum class NormalisationClass { kKbNormalised, kQueryNormalised, kNeither, kBoth };

inline NormalisationClass ClassifyNormalisation(const FuzzyConstraint& c) {
  const Rational half(1, 2);
  bool kb = false, query = false;
  if (c.rel == Relation::kGeq) {
    kb = c.degree.value() > half;
    query = c.degree.value() <= half;
  } else if (c.rel == Relation::kLeq) {
    kb = c.degree.value() < half;
    query = c.degree.value() >= half;
  }
  if (kb && query) return NormalisationClass::kBoth;
  if (kb) return NormalisationClass::kKbNormalised;
  if (query) return NormalisationClass::kQueryNormalised;
  return NormalisationClass::kNeither;
}

struct GridOracleOptions {
  // Default: individuals plus quantifier occurrences in KB and query.
  std::optional<std::size_t> domain_bound;
  std::size_t node_budget = 20'000'000;
};

struct OracleVerdict {
  bool entailed = false;
  std::size_t domain_size = 0;
  std::size_t grid_size = 0;
  std::size_t nodes = 0;
  std::optional<Interpretation> countermodel;
};

namespace detail {

// Exhaustive search for a grid interpretation satisfying the KB and
// violating the query. Truth values are indices into a grid that is closed
// under complement, so 1 - v is (size - 1 - i).
class GridSearch {
 public:
  GridSearch(const KnowledgeBase& kb, const FuzzyConstraint& query,
             const GridOracleOptions& options)
      : options_(options) {
    std::vector<FuzzyConstraint> all = kb.abox();
    all.push_back(query);

    std::set<Rational> consts{Rational(0), Rational(1)};
    std::size_t quantifiers = 0;
    std::vector<std::string> individuals = kb.Individuals();
    for (const auto& c : all) {
      consts.insert(c.degree.value());
      consts.insert(1 - c.degree.value());
      if (auto* ca = std::get_if<ConceptAssertion>(&c.assertion)) {
        quantifiers += QuantifierCount(ca->term);
        AddIndividual(individuals, ca->object);
      } else {
        const auto& ra = std::get<RoleAssertion>(c.assertion);
        AddIndividual(individuals, ra.subject);
        AddIndividual(individuals, ra.filler);
      }
    }
    for (auto it = consts.begin(); it != consts.end(); ++it) {
      grid_.push_back(*it);
      if (auto nx = std::next(it); nx != consts.end()) grid_.push_back((*it + *nx) / 2);
    }
    top_ = static_cast<int>(grid_.size()) - 1;

    std::size_t bound = options.domain_bound.value_or(individuals.size() + quantifiers);
    if (bound < individuals.size())
      throw DomainError("grid oracle: domain bound below the number of individuals");
    for (const auto& name : individuals) {
      element_of_[name] = static_cast<int>(elements_.size());
      elements_.push_back(MakeIndividual(name));
    }
    for (std::uint64_t i = 0; elements_.size() < bound; ++i) elements_.push_back(Variable{i});
    d_ = static_cast<int>(elements_.size());

    for (const auto& c : all) {
      std::set<std::string> cs, rs;
      CollectSignature(c.assertion, cs, rs);
      for (const auto& n : cs) concept_ids_.emplace(n, static_cast<int>(concept_ids_.size()));
      for (const auto& n : rs) role_ids_.emplace(n, static_cast<int>(role_ids_.size()));
    }
    cfact_.assign(concept_ids_.size() * d_, -1);
    rfact_.assign(role_ids_.size() * d_ * d_, -1);

    for (std::size_t i = 0; i < all.size(); ++i) {
      Compiled cc;
      cc.rel = all[i].rel;
      cc.bound = Index(all[i].degree.value());
      cc.is_query = i + 1 == all.size();
      if (auto* ca = std::get_if<ConceptAssertion>(&all[i].assertion)) {
        cc.root = Compile(ca->term);
        cc.element = element_of_.at(std::get<Individual>(ca->object).name);
        Relevant(cc.root, cc.element);
      } else {
        const auto& ra = std::get<RoleAssertion>(all[i].assertion);
        cc.role_fact = RoleFact(role_ids_.at(ra.role),
                                element_of_.at(std::get<Individual>(ra.subject).name),
                                element_of_.at(std::get<Individual>(ra.filler).name));
      }
      compiled_.push_back(cc);
    }
    OrderFacts();
    OrderFreshElements(individuals.size());
    value_.assign(facts_.size(), -1);
  }

  OracleVerdict Run() {
    OracleVerdict v;
    v.domain_size = elements_.size();
    v.grid_size = grid_.size();
    bool found = Search(0);
    v.nodes = nodes_;
    v.entailed = !found;
    if (found) v.countermodel = BuildModel();
    return v;
  }

  Interpretation BuildModel() const {
    Interpretation interp;
    for (const auto& e : elements_) {
      if (auto* ind = std::get_if<Individual>(&e)) interp.MapIndividual(ind->name, e);
      else interp.AddElement(e);
    }
    for (std::size_t f = 0; f < facts_.size(); ++f) {
      int v = value_[f] < 0 ? 0 : value_[f];
      if (v == 0) continue;
      const Fact& fact = facts_[f];
      Degree deg(grid_[v]);
      if (fact.role) interp.SetRole(fact.name, elements_[fact.e1], elements_[fact.e2], deg);
      else interp.SetConcept(fact.name, elements_[fact.e1], deg);
    }
    return interp;
  }

 private:
  struct Node {
    ConceptKind kind;
    int id = -1;  // concept or role id
    int left = -1, right = -1;
  };
  struct Fact {
    bool role;
    std::string name;
    int e1, e2;
  };
  struct Compiled {
    Relation rel;
    int bound;
    bool is_query = false;
    int root = -1;
    int element = -1;
    int role_fact = -2;  // -1: fact fixed at 0
  };
  using Interval = std::pair<int, int>;

  static void AddIndividual(std::vector<std::string>& out, const Object& o) {
    const auto& name = std::get<Individual>(o).name;
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }

  int Index(const Rational& r) const {
    return static_cast<int>(std::lower_bound(grid_.begin(), grid_.end(), r) - grid_.begin());
  }

  int Compile(const Concept& c) {
    Node n{c.kind()};
    switch (c.kind()) {
      case ConceptKind::kPrimitive: n.id = concept_ids_.at(c.name()); break;
      case ConceptKind::kNot: n.left = Compile(c.child()); break;
      case ConceptKind::kAnd:
      case ConceptKind::kOr:
        n.left = Compile(c.left());
        n.right = Compile(c.right());
        break;
      case ConceptKind::kAll:
      case ConceptKind::kSome:
        n.id = role_ids_.at(c.role());
        n.left = Compile(c.child());
        break;
      default: break;
    }
    nodes_ir_.push_back(n);
    return static_cast<int>(nodes_ir_.size()) - 1;
  }

  int ConceptFact(int cid, int e) {
    int& slot = cfact_[cid * d_ + e];
    if (slot < 0) {
      slot = static_cast<int>(facts_.size());
      facts_.push_back({false, ConceptName(cid), e, e});
      depth_.push_back(std::numeric_limits<int>::max());
    }
    return slot;
  }
  int RoleFact(int rid, int e1, int e2) {
    int& slot = rfact_[(rid * d_ + e1) * d_ + e2];
    if (slot < 0) {
      slot = static_cast<int>(facts_.size());
      facts_.push_back({true, RoleName(rid), e1, e2});
      depth_.push_back(std::numeric_limits<int>::max());
    }
    return slot;
  }
  std::string ConceptName(int id) const {
    for (const auto& [n, i] : concept_ids_) if (i == id) return n;
    return {};
  }
  std::string RoleName(int id) const {
    for (const auto& [n, i] : role_ids_) if (i == id) return n;
    return {};
  }

  // Registers the facts that can influence node n at element e (every
  // element when e < 0), noting the shallowest quantifier depth each one is
  // reached at. Facts never registered stay at 0.
  void Relevant(int n, int e, int depth = 0) {
    const Node& node = nodes_ir_[n];
    auto note = [&](int f) { depth_[f] = std::min(depth_[f], depth); };
    switch (node.kind) {
      case ConceptKind::kPrimitive:
        for (int x = 0; x < d_; ++x)
          if (e < 0 || x == e) note(ConceptFact(node.id, x));
        break;
      case ConceptKind::kNot:
        Relevant(node.left, e, depth);
        break;
      case ConceptKind::kAnd:
      case ConceptKind::kOr:
        Relevant(node.left, e, depth);
        Relevant(node.right, e, depth);
        break;
      case ConceptKind::kAll:
      case ConceptKind::kSome:
        ++depth;
        for (int y = 0; y < d_; ++y) {
          if (e >= 0 && y != e) continue;
          for (int x = 0; x < d_; ++x) note(RoleFact(node.id, y, x));
        }
        Relevant(node.left, -1, depth);
        break;
      default: break;
    }
  }

  // Shallow facts first, since they decide most constraints; within one
  // depth, grouped by the highest element they mention.
  void OrderFacts() {
    std::vector<int> order(facts_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto key = [&](int f) {
      return std::pair(depth_[f], std::max(facts_[f].e1, facts_[f].e2));
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    std::vector<int> rank(facts_.size());
    std::vector<Fact> facts;
    std::vector<int> depth;
    for (std::size_t i = 0; i < order.size(); ++i) {
      rank[order[i]] = static_cast<int>(i);
      facts.push_back(facts_[order[i]]);
      depth.push_back(depth_[order[i]]);
    }
    facts_ = std::move(facts);
    depth_ = std::move(depth);
    for (int& slot : cfact_) if (slot >= 0) slot = rank[slot];
    for (int& slot : rfact_) if (slot >= 0) slot = rank[slot];
    for (auto& c : compiled_) if (c.role_fact >= 0) c.role_fact = rank[c.role_fact];
  }

  // Fresh elements are interchangeable, so only models where they appear
  // sorted by their facts towards the individuals (and themselves) are
  // searched. Keys are compared position by position in assignment order.
  void OrderFreshElements(std::size_t individuals) {
    auto key = [&](int x) {
      std::vector<int> k;
      for (std::size_t c = 0; c < concept_ids_.size(); ++c) k.push_back(cfact_[c * d_ + x]);
      for (std::size_t r = 0; r < role_ids_.size(); ++r) {
        for (std::size_t i = 0; i < individuals; ++i) {
          k.push_back(rfact_[(r * d_ + i) * d_ + x]);
          k.push_back(rfact_[(r * d_ + x) * d_ + i]);
        }
        k.push_back(rfact_[(r * d_ + x) * d_ + x]);
      }
      return k;
    };
    for (int x = static_cast<int>(individuals) + 1; x < d_; ++x) {
      auto lhs = key(x - 1), rhs = key(x);
      std::vector<std::pair<int, int>> pos;
      for (std::size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] >= 0 || rhs[i] >= 0) pos.emplace_back(lhs[i], rhs[i]);
      std::stable_sort(pos.begin(), pos.end(), [](auto p, auto q) {
        return std::max(p.first, p.second) < std::max(q.first, q.second);
      });
      if (!pos.empty()) ordered_.push_back(std::move(pos));
    }
  }

  bool InOrder() const {
    for (const auto& pairs : ordered_) {
      for (auto [lf, rf] : pairs) {
        int l = lf < 0 ? 0 : value_[lf], r = rf < 0 ? 0 : value_[rf];
        if (l < 0 || r < 0 || l < r) break;
        if (l > r) return false;
      }
    }
    return true;
  }

  // Thresholds against which fact `target` can still make a difference,
  // given the values assigned so far. Intervals only shrink as the search
  // goes deeper, so a threshold found dead here stays dead.
  void Live(int n, int e, const std::vector<int>& ts, int target, std::set<int>& out) const {
    if (ts.empty()) return;
    const Node& node = nodes_ir_[n];
    auto keep = [&](auto pred) {
      std::vector<int> r;
      for (int t : ts) if (pred(t)) r.push_back(t);
      return r;
    };
    switch (node.kind) {
      case ConceptKind::kPrimitive:
        if (cfact_[node.id * d_ + e] == target) out.insert(ts.begin(), ts.end());
        break;
      case ConceptKind::kNot: {
        std::vector<int> flipped;
        for (int t : ts) flipped.push_back(top_ - t);
        Live(node.left, e, flipped, target, out);
        break;
      }
      case ConceptKind::kAnd: {
        auto l = Eval(node.left, e), r = Eval(node.right, e);
        Live(node.left, e, keep([&](int t) { return r.second >= t; }), target, out);
        Live(node.right, e, keep([&](int t) { return l.second >= t; }), target, out);
        break;
      }
      case ConceptKind::kOr: {
        auto l = Eval(node.left, e), r = Eval(node.right, e);
        Live(node.left, e, keep([&](int t) { return r.first <= t; }), target, out);
        Live(node.right, e, keep([&](int t) { return l.first <= t; }), target, out);
        break;
      }
      case ConceptKind::kSome:
        for (int x = 0; x < d_; ++x) {
          int rf = rfact_[(node.id * d_ + e) * d_ + x];
          if (rf < 0) continue;
          auto [rlo, rhi] = FactInterval(rf);
          auto c = Eval(node.left, x);
          if (rf == target)
            for (int t : ts) if (c.second >= t) out.insert(t);
          Live(node.left, x, keep([&](int t) { return rhi >= t; }), target, out);
        }
        break;
      case ConceptKind::kAll:
        for (int x = 0; x < d_; ++x) {
          int rf = rfact_[(node.id * d_ + e) * d_ + x];
          if (rf < 0) continue;
          auto [rlo, rhi] = FactInterval(rf);
          auto c = Eval(node.left, x);
          if (rf == target)
            for (int t : ts) if (c.first <= t) out.insert(top_ - t);
          Live(node.left, x, keep([&](int t) { return top_ - rhi <= t; }), target, out);
        }
        break;
      default: break;
    }
  }

  // One grid value per cell cut out by the live thresholds. Thresholds are
  // constants, so the index just above one lies strictly inside the cell.
  std::vector<int> Domain(int f) const {
    std::set<int> ts;
    for (const auto& c : compiled_) {
      if (Status(c) >= 0) continue;
      if (c.root >= 0) Live(c.root, c.element, {c.bound}, f, ts);
      else if (c.role_fact == f) ts.insert(c.bound);
    }
    std::vector<int> dom;
    int prev = -1;
    for (int x : ts) {
      if (x > prev + 1) dom.push_back(prev + 1);
      dom.push_back(x);
      prev = x;
    }
    if (prev < top_) dom.push_back(prev + 1);
    return dom;
  }

  Interval FactInterval(int f) const {
    if (f < 0) return {0, 0};
    int v = value_[f];
    return v < 0 ? Interval{0, top_} : Interval{v, v};
  }

  Interval Eval(int n, int e) const {
    const Node& node = nodes_ir_[n];
    switch (node.kind) {
      case ConceptKind::kTop: return {top_, top_};
      case ConceptKind::kBottom: return {0, 0};
      case ConceptKind::kPrimitive: return FactInterval(cfact_[node.id * d_ + e]);
      case ConceptKind::kNot: {
        auto [lo, hi] = Eval(node.left, e);
        return {top_ - hi, top_ - lo};
      }
      case ConceptKind::kAnd: {
        auto l = Eval(node.left, e), r = Eval(node.right, e);
        return {std::min(l.first, r.first), std::min(l.second, r.second)};
      }
      case ConceptKind::kOr: {
        auto l = Eval(node.left, e), r = Eval(node.right, e);
        return {std::max(l.first, r.first), std::max(l.second, r.second)};
      }
      case ConceptKind::kAll: {
        Interval acc{top_, top_};
        for (int x = 0; x < d_; ++x) {
          auto [rlo, rhi] = FactInterval(rfact_[(node.id * d_ + e) * d_ + x]);
          if (rhi == 0) continue;
          auto c = Eval(node.left, x);
          Interval term{std::max(top_ - rhi, c.first), std::max(top_ - rlo, c.second)};
          acc = {std::min(acc.first, term.first), std::min(acc.second, term.second)};
        }
        return acc;
      }
      case ConceptKind::kSome: {
        Interval acc{0, 0};
        for (int x = 0; x < d_; ++x) {
          auto [rlo, rhi] = FactInterval(rfact_[(node.id * d_ + e) * d_ + x]);
          if (rhi == 0) continue;
          auto c = Eval(node.left, x);
          Interval term{std::min(rlo, c.first), std::min(rhi, c.second)};
          acc = {std::max(acc.first, term.first), std::max(acc.second, term.second)};
        }
        return acc;
      }
    }
    return {0, top_};
  }

  // 1: holds for every completion, 0: fails for every completion, -1: open.
  int Status(const Compiled& c) const {
    Interval iv = c.root >= 0 ? Eval(c.root, c.element) : FactInterval(c.role_fact);
    auto holds = [&](int v) {
      switch (c.rel) {
        case Relation::kGeq: return v >= c.bound;
        case Relation::kGt: return v > c.bound;
        case Relation::kLeq: return v <= c.bound;
        case Relation::kLt: return v < c.bound;
      }
      return false;
    };
    bool lo = holds(iv.first), hi = holds(iv.second);
    if (lo && hi) return 1;
    // Each relation is monotone in v, so the endpoints decide "never".
    if (!lo && !hi) return 0;
    return -1;
  }

  // 1: countermodel fixed, 0: dead end, -1: undecided.
  int Check() const {
    bool decided = true;
    for (const auto& c : compiled_) {
      int s = Status(c);
      if (c.is_query) s = s < 0 ? -1 : 1 - s;
      if (s == 0) return 0;
      if (s < 0) decided = false;
    }
    return decided ? 1 : -1;
  }

  bool Search(std::size_t f) {
    if (++nodes_ > options_.node_budget)
      throw ResourceError("grid oracle exceeded node budget of " +
                          std::to_string(options_.node_budget));
    if (!InOrder()) return false;
    int s = Check();
    if (s == 0) return false;
    if (s == 1) return true;
    if (f == facts_.size()) return false;
    for (int v : Domain(static_cast<int>(f))) {
      value_[f] = v;
      if (Search(f + 1)) return true;
    }
    value_[f] = -1;
    return false;
  }

  GridOracleOptions options_;
  std::vector<Rational> grid_;
  int top_ = 0;
  std::vector<Object> elements_;
  std::map<std::string, int> element_of_;
  int d_ = 0;
  std::map<std::string, int> concept_ids_, role_ids_;
  std::vector<int> cfact_, rfact_;
  std::vector<Node> nodes_ir_;
  std::vector<Fact> facts_;
  std::vector<int> depth_;
  std::vector<Compiled> compiled_;
  std::vector<int> value_;
  std::vector<std::vector<std::pair<int, int>>> ordered_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

// Brute-force entailment over grid-valued interpretations of bounded size.
// A "false" verdict comes with a verified countermodel; "true" is only as
// strong as the domain bound.
inline OracleVerdict GridOracleEntails(const KnowledgeBase& kb, const FuzzyConstraint& query,
                                       const GridOracleOptions& options = {}) {
  if (!kb.IsPurelyAssertional())
    throw UnsupportedInput("grid oracle needs a purely assertional KB");
  detail::GridSearch search(kb, query, options);
  OracleVerdict v = search.Run();
  if (v.countermodel) {
    if (!SatisfiesKb(*v.countermodel, kb) || Satisfies(*v.countermodel, query))
      throw ContractError("grid oracle produced an invalid countermodel");
  }
  return v;
}

}  // namespace fuzzydl
