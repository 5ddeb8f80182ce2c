#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzydl/concept.hpp"
#include "fuzzydl/degree.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"

namespace fuzzydl {

namespace detail {

enum class Tok {
  kIdent,
  kNumber,
  kTop,
  kBot,
  kNot,
  kAnd,
  kOr,
  kAll,
  kSome,
  kDot,
  kLParen,
  kRParen,
  kComma,
  kColon,
  kDefine,  // :=
  kGeq,
  kGt,
  kLeq,
  kLt,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline const char* TokName(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kNumber: return "number";
    case Tok::kTop: return "'top'";
    case Tok::kBot: return "'bot'";
    case Tok::kNot: return "'not'";
    case Tok::kAnd: return "'and'";
    case Tok::kOr: return "'or'";
    case Tok::kAll: return "'all'";
    case Tok::kSome: return "'some'";
    case Tok::kDot: return "'.'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kColon: return "':'";
    case Tok::kDefine: return "':='";
    case Tok::kGeq: return "'>='";
    case Tok::kGt: return "'>'";
    case Tok::kLeq: return "'<='";
    case Tok::kLt: return "'<'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

inline std::vector<Token> Lex(std::string_view text, int line_base = 1) {
  static const std::map<std::string, Tok, std::less<>> kKeywords = {
      {"top", Tok::kTop}, {"bot", Tok::kBot}, {"not", Tok::kNot},
      {"and", Tok::kAnd}, {"or", Tok::kOr},   {"all", Tok::kAll},
      {"some", Tok::kSome}};
  std::vector<Token> out;
  int line = line_base, col = 1;
  std::size_t i = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    SourceSpan span{line, col};
    auto emit = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(text.substr(i, len)), span});
      i += len;
      col += static_cast<int>(len);
    };
    if (is_alpha(c)) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (is_alpha(text[j]) || is_digit(text[j]) || text[j] == '_' || text[j] == '*'))
        ++j;
      std::string word(text.substr(i, j - i));
      auto kw = kKeywords.find(word);
      emit(kw == kKeywords.end() ? Tok::kIdent : kw->second, j - i);
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      std::size_t j = i;
      while (j < text.size() && (is_digit(text[j]) || text[j] == '.' || text[j] == '/'))
        ++j;
      emit(Tok::kNumber, j - i);
      continue;
    }
    auto next = i + 1 < text.size() ? text[i + 1] : '\0';
    switch (c) {
      case '.': emit(Tok::kDot, 1); continue;
      case '(': emit(Tok::kLParen, 1); continue;
      case ')': emit(Tok::kRParen, 1); continue;
      case ',': emit(Tok::kComma, 1); continue;
      case ':':
        if (next == '=') emit(Tok::kDefine, 2);
        else emit(Tok::kColon, 1);
        continue;
      case '>':
        if (next == '=') emit(Tok::kGeq, 2);
        else emit(Tok::kGt, 1);
        continue;
      case '<':
        if (next == '=') emit(Tok::kLeq, 2);
        else emit(Tok::kLt, 1);
        continue;
      default:
        throw ParseError(span, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", SourceSpan{line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }

  const Token& expect(Tok k) {
    if (!at(k))
      throw ParseError(peek().span, std::string("expected ") + TokName(k) +
                                        ", found " + Describe(peek()));
    return toks_[pos_++];
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  void ExpectEnd() {
    if (!at(Tok::kEnd))
      throw ParseError(peek().span, "unexpected " + Describe(peek()));
  }

  Concept ParseConcept() {
    Concept c = ParseAnd();
    while (accept(Tok::kOr)) c = Concept::Or(c, ParseAnd());
    return c;
  }

  Assertion ParseAssertion() {
    expect(Tok::kLParen);
    if (accept(Tok::kLParen)) {
      std::string s = expect(Tok::kIdent).text;
      expect(Tok::kComma);
      std::string f = expect(Tok::kIdent).text;
      expect(Tok::kRParen);
      expect(Tok::kColon);
      std::string role = expect(Tok::kIdent).text;
      expect(Tok::kRParen);
      return MakeRoleAssertion(MakeIndividual(s), MakeIndividual(f), role);
    }
    std::string a = expect(Tok::kIdent).text;
    expect(Tok::kColon);
    Concept c = ParseConcept();
    expect(Tok::kRParen);
    return MakeConceptAssertion(MakeIndividual(a), c);
  }

  std::optional<Relation> ParseRelationOpt() {
    switch (peek().kind) {
      case Tok::kGeq: ++pos_; return Relation::kGeq;
      case Tok::kGt: ++pos_; return Relation::kGt;
      case Tok::kLeq: ++pos_; return Relation::kLeq;
      case Tok::kLt: ++pos_; return Relation::kLt;
      default: return std::nullopt;
    }
  }

  Degree ParseDegree() {
    const Token& t = expect(Tok::kNumber);
    auto r = ParseRational(t.text);
    if (!r) throw ParseError(t.span, "malformed degree '" + t.text + "'");
    if (*r > 1) throw ParseError(t.span, "degree " + t.text + " outside [0,1]");
    return Degree(*r);
  }

  std::size_t pos() const { return pos_; }

 private:
  static std::string Describe(const Token& t) {
    if (t.kind == Tok::kIdent || t.kind == Tok::kNumber) return "'" + t.text + "'";
    return TokName(t.kind);
  }

  Concept ParseAnd() {
    Concept c = ParseUnary();
    while (accept(Tok::kAnd)) c = Concept::And(c, ParseUnary());
    return c;
  }

  Concept ParseUnary() {
    if (accept(Tok::kNot)) return Concept::Not(ParseUnary());
    if (at(Tok::kAll) || at(Tok::kSome)) {
      bool all = peek().kind == Tok::kAll;
      ++pos_;
      std::string role = expect(Tok::kIdent).text;
      accept(Tok::kDot);
      Concept body = ParseUnary();
      return all ? Concept::All(role, body) : Concept::Some(role, body);
    }
    return ParseAtom();
  }

  Concept ParseAtom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kTop: ++pos_; return Concept::Top();
      case Tok::kBot: ++pos_; return Concept::Bottom();
      case Tok::kIdent: ++pos_; return Concept::Primitive(t.text);
      case Tok::kLParen: {
        ++pos_;
        Concept c = ParseConcept();
        expect(Tok::kRParen);
        return c;
      }
      default:
        throw ParseError(t.span, "expected a concept, found " + Describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// >= needs (0,1], <= needs [0,1); strict relations are tableau-internal.
inline void CheckUserLevel(Relation rel, const Degree& d, SourceSpan span) {
  if (rel == Relation::kGt || rel == Relation::kLt)
    throw ParseError(span, "strict relation not allowed here; use >= or <=");
  if (rel == Relation::kGeq && d.IsZero())
    throw ParseError(span, "degree of a >= assertion must be in (0,1]");
  if (rel == Relation::kLeq && d.IsOne())
    throw ParseError(span, "degree of a <= assertion must be in [0,1)");
}

}  // namespace detail

inline Concept ParseConcept(std::string_view text) {
  detail::Parser p(detail::Lex(text));
  Concept c = p.ParseConcept();
  p.ExpectEnd();
  return c;
}

// Any relation, any degree in [0,1]. Used for round-tripping tableau output.
inline FuzzyConstraint ParseConstraint(std::string_view text) {
  detail::Parser p(detail::Lex(text));
  Assertion a = p.ParseAssertion();
  SourceSpan at = p.peek().span;
  auto rel = p.ParseRelationOpt();
  if (!rel) throw ParseError(at, "expected a relation (>=, >, <=, <)");
  Degree d = p.ParseDegree();
  p.ExpectEnd();
  return FuzzyConstraint{std::move(a), *rel, d};
}

using Query = std::variant<FuzzyConstraint, Assertion>;

// "(a : C) >= n", "(a : C) <= n", or a bare assertion for glb/lub.
inline Query ParseQuery(std::string_view text) {
  detail::Parser p(detail::Lex(text));
  Assertion a = p.ParseAssertion();
  if (p.at(detail::Tok::kEnd)) return a;
  SourceSpan at = p.peek().span;
  auto rel = p.ParseRelationOpt();
  if (!rel) throw ParseError(at, "expected >= or <= after the assertion");
  Degree d = p.ParseDegree();
  p.ExpectEnd();
  detail::CheckUserLevel(*rel, d, at);
  return FuzzyConstraint{std::move(a), *rel, d};
}

inline KnowledgeBase ParseKb(std::string_view text) {
  KnowledgeBase kb;
  std::map<std::string, SourceSpan> defined;
  std::set<std::string> concept_names, role_names;
  std::map<std::string, SourceSpan> first_seen;

  auto note_signature = [&](const std::set<std::string>& concepts,
                            const std::set<std::string>& roles, SourceSpan span) {
    for (const auto& c : concepts) {
      if (role_names.count(c))
        throw ParseError(span, "'" + c + "' is used both as a role and as a concept");
      concept_names.insert(c);
    }
    for (const auto& r : roles) {
      if (concept_names.count(r))
        throw ParseError(span, "'" + r + "' is used both as a role and as a concept");
      role_names.insert(r);
    }
  };

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto tokens = detail::Lex(line, line_no);
    if (tokens.size() == 1) continue;

    detail::Parser p(std::move(tokens));
    SourceSpan line_span = p.peek().span;
    std::set<std::string> concepts, roles;
    if (p.at(detail::Tok::kIdent)) {
      const detail::Token name = p.peek();
      p.expect(detail::Tok::kIdent);
      bool definition;
      if (p.accept(detail::Tok::kDefine)) {
        definition = true;
      } else if (p.accept(detail::Tok::kLt)) {
        definition = false;
      } else {
        throw ParseError(p.peek().span, "expected '<' or ':=' after '" + name.text + "'");
      }
      Concept rhs = p.ParseConcept();
      p.ExpectEnd();
      if (auto it = defined.find(name.text); it != defined.end())
        throw ParseError(name.span, "'" + name.text +
                                        "' already has an axiom on line " +
                                        std::to_string(it->second.line));
      defined.emplace(name.text, name.span);
      concepts.insert(name.text);
      CollectSignature(rhs, concepts, roles);
      note_signature(concepts, roles, line_span);
      kb.AddAxiom(definition ? Definition(name.text, rhs) : Specialisation(name.text, rhs));
      continue;
    }
    Assertion a = p.ParseAssertion();
    SourceSpan rel_span = p.peek().span;
    auto rel = p.ParseRelationOpt();
    if (!rel) throw ParseError(rel_span, "expected >= or <= after the assertion");
    Degree d = p.ParseDegree();
    p.ExpectEnd();
    detail::CheckUserLevel(*rel, d, rel_span);
    CollectSignature(a, concepts, roles);
    note_signature(concepts, roles, line_span);
    kb.AddAssertion(FuzzyConstraint{std::move(a), *rel, d});
  }
  return kb;
}

namespace detail {

inline int Precedence(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kOr: return 1;
    case ConceptKind::kAnd: return 2;
    case ConceptKind::kNot:
    case ConceptKind::kAll:
    case ConceptKind::kSome: return 3;
    default: return 4;
  }
}

inline void RenderConcept(const Concept& c, int min_prec, std::string& out) {
  bool parens = Precedence(c) < min_prec;
  if (parens) out += '(';
  switch (c.kind()) {
    case ConceptKind::kTop: out += "top"; break;
    case ConceptKind::kBottom: out += "bot"; break;
    case ConceptKind::kPrimitive: out += c.name(); break;
    case ConceptKind::kNot:
      out += "not ";
      RenderConcept(c.child(), 3, out);
      break;
    case ConceptKind::kAnd:
      RenderConcept(c.left(), 2, out);
      out += " and ";
      RenderConcept(c.right(), 3, out);
      break;
    case ConceptKind::kOr:
      RenderConcept(c.left(), 1, out);
      out += " or ";
      RenderConcept(c.right(), 2, out);
      break;
    case ConceptKind::kAll:
    case ConceptKind::kSome:
      out += c.is(ConceptKind::kAll) ? "all " : "some ";
      out += c.role();
      out += " . ";
      RenderConcept(c.child(), 3, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string Render(const Concept& c) {
  std::string out;
  detail::RenderConcept(c, 1, out);
  return out;
}

inline std::string Render(const Assertion& a) {
  if (auto* ca = std::get_if<ConceptAssertion>(&a))
    return "(" + ObjectName(ca->object) + " : " + Render(ca->term) + ")";
  const auto& ra = std::get<RoleAssertion>(a);
  return "((" + ObjectName(ra.subject) + ", " + ObjectName(ra.filler) + ") : " +
         ra.role + ")";
}

inline std::string Render(const FuzzyConstraint& c) {
  return Render(c.assertion) + " " + RelationSymbol(c.rel) + " " + c.degree.ToString();
}

inline std::string Render(const Axiom& ax) {
  return ax.lhs + (ax.kind == Axiom::Kind::kDefinition ? " := " : " < ") +
         Render(ax.rhs);
}

inline std::string Render(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& ax : kb.tbox()) out += Render(ax) + "\n";
  for (const auto& c : kb.abox()) out += Render(c) + "\n";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Concept& c) {
  return os << Render(c);
}
inline std::ostream& operator<<(std::ostream& os, const FuzzyConstraint& c) {
  return os << Render(c);
}

}  // namespace fuzzydl
