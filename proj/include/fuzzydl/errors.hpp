#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzydl {

// 1-based position inside a source text.
struct SourceSpan {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message, std::string source = {})
      : Error((source.empty() ? "" : source + ":") + std::to_string(span.line) + ":" +
              std::to_string(span.column) + ": " + message),
        span_(span),
        message_(message),
        source_(std::move(source)) {}

  SourceSpan span() const { return span_; }
  const std::string& message() const { return message_; }
  // File name or other label of the text; empty if unknown.
  const std::string& source() const { return source_; }

 private:
  SourceSpan span_;
  std::string message_;
  std::string source_;
};

// Evaluation against an interpretation that lacks the element or individual.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Expansion budget exceeded, oracle search space too large, ...
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Input outside the fragment an operation supports.
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

// Violated precondition of an internal operation.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Diagnostic {
  enum class Kind { kDuplicateDefinition, kCycle };

  Kind kind;
  std::string name;
  // Witness path for kCycle, starting and ending at `name` implicitly.
  std::vector<std::string> cycle;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics)
      : Error(Summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string Summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string out = "invalid terminology";
    for (const auto& d : diagnostics) out += "; " + d.message;
    return out;
  }

  std::vector<Diagnostic> diagnostics_;
};

}  // namespace fuzzydl
