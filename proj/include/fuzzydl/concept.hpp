#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>

namespace fuzzydl {

enum class ConceptKind { kTop, kBottom, kPrimitive, kNot, kAnd, kOr, kAll, kSome };

// Immutable ALC concept term. Copies share structure; equality is structural.
class Concept {
 public:
  // Defaults to top so that containers of concepts are default-constructible.
  Concept() : Concept(Top()) {}

  static Concept Top() {
    static const Concept top(Make(ConceptKind::kTop, {}, nullptr, nullptr));
    return top;
  }
  static Concept Bottom() {
    static const Concept bot(Make(ConceptKind::kBottom, {}, nullptr, nullptr));
    return bot;
  }
  static Concept Primitive(std::string name) {
    return Concept(Make(ConceptKind::kPrimitive, std::move(name), nullptr, nullptr));
  }
  static Concept Not(const Concept& c) {
    return Concept(Make(ConceptKind::kNot, {}, c.node_, nullptr));
  }
  static Concept And(const Concept& a, const Concept& b) {
    return Concept(Make(ConceptKind::kAnd, {}, a.node_, b.node_));
  }
  static Concept Or(const Concept& a, const Concept& b) {
    return Concept(Make(ConceptKind::kOr, {}, a.node_, b.node_));
  }
  static Concept All(std::string role, const Concept& c) {
    return Concept(Make(ConceptKind::kAll, std::move(role), c.node_, nullptr));
  }
  static Concept Some(std::string role, const Concept& c) {
    return Concept(Make(ConceptKind::kSome, std::move(role), c.node_, nullptr));
  }

  ConceptKind kind() const { return node_->kind; }
  bool is(ConceptKind k) const { return node_->kind == k; }

  // Primitive name for kPrimitive, role name for kAll / kSome.
  const std::string& name() const { return node_->name; }
  const std::string& role() const { return node_->name; }

  // Operand of kNot, kAll, kSome; left operand of kAnd, kOr.
  Concept child() const { return Concept(node_->left); }
  Concept left() const { return Concept(node_->left); }
  Concept right() const { return Concept(node_->right); }

  std::size_t hash() const { return node_->hash; }

  // Number of nodes of the term viewed as a tree (shared subterms counted
  // once per occurrence).
  std::size_t TreeSize() const {
    std::unordered_map<const Node*, std::size_t> memo;
    return TreeSize(node_.get(), memo);
  }

  friend bool operator==(const Concept& a, const Concept& b) {
    return Equal(a.node_.get(), b.node_.get());
  }

  // Total order: kind, then name, then operands.
  friend bool operator<(const Concept& a, const Concept& b) {
    return Compare(a.node_.get(), b.node_.get()) < 0;
  }

  // Identity of the shared node; only for memo tables.
  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    ConceptKind kind;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::size_t hash;
  };

  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> Make(ConceptKind kind, std::string name,
                                          std::shared_ptr<const Node> left,
                                          std::shared_ptr<const Node> right) {
    std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(std::hash<std::string>{}(name));
    if (left) mix(left->hash);
    if (right) mix(right->hash * 31);
    return std::make_shared<const Node>(
        Node{kind, std::move(name), std::move(left), std::move(right), h});
  }

  static bool Equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind || a->name != b->name)
      return false;
    return Equal(a->left.get(), b->left.get()) &&
           Equal(a->right.get(), b->right.get());
  }

  static int Compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
    if (int c = Compare(a->left.get(), b->left.get()); c != 0) return c;
    return Compare(a->right.get(), b->right.get());
  }

  static std::size_t TreeSize(const Node* n,
                              std::unordered_map<const Node*, std::size_t>& memo) {
    if (!n) return 0;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::size_t size =
        1 + TreeSize(n->left.get(), memo) + TreeSize(n->right.get(), memo);
    memo.emplace(n, size);
    return size;
  }

  std::shared_ptr<const Node> node_;
};

inline bool IsQuantifier(const Concept& c) {
  return c.is(ConceptKind::kAll) || c.is(ConceptKind::kSome);
}

inline bool IsBinary(const Concept& c) {
  return c.is(ConceptKind::kAnd) || c.is(ConceptKind::kOr);
}

// Primitive concept names and role names occurring in `c`.
inline void CollectSignature(const Concept& c, std::set<std::string>& concepts,
                             std::set<std::string>& roles) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
      return;
    case ConceptKind::kPrimitive:
      concepts.insert(c.name());
      return;
    case ConceptKind::kNot:
      CollectSignature(c.child(), concepts, roles);
      return;
    case ConceptKind::kAnd:
    case ConceptKind::kOr:
      CollectSignature(c.left(), concepts, roles);
      CollectSignature(c.right(), concepts, roles);
      return;
    case ConceptKind::kAll:
    case ConceptKind::kSome:
      roles.insert(c.role());
      CollectSignature(c.child(), concepts, roles);
      return;
  }
}

// Occurrences of quantifiers (each counted once per tree position).
inline std::size_t QuantifierCount(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
    case ConceptKind::kPrimitive:
      return 0;
    case ConceptKind::kNot:
      return QuantifierCount(c.child());
    case ConceptKind::kAnd:
    case ConceptKind::kOr:
      return QuantifierCount(c.left()) + QuantifierCount(c.right());
    case ConceptKind::kAll:
    case ConceptKind::kSome:
      return 1 + QuantifierCount(c.child());
  }
  return 0;
}

}  // namespace fuzzydl

template <>
struct std::hash<fuzzydl::Concept> {
  std::size_t operator()(const fuzzydl::Concept& c) const noexcept {
    return c.hash();
  }
};
