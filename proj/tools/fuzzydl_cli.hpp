#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzydl/fuzzydl.hpp"

namespace fuzzydl::cli {

enum ExitCode {
  kAnswered = 0,
  kNegative = 1,
  kInputError = 2,
  kResourceError = 3,
  kOracleDisagreement = 4,
};

struct CliConfig {
  std::string kb_path;
  SearchMode mode = SearchMode::kFull;
  bool json = false;
  bool oracle = false;
  bool proof = false;
  bool parallel = false;
  std::size_t budget = ExpansionOptions{}.node_budget;
  std::size_t domain_bound = 0;  // 0: oracle default
};

namespace detail {

using nlohmann::json;

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnsupportedInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prefixes parse errors with the source they came from.
template <typename F>
auto WithSource(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.span(), e.message(), source);
  }
}

inline json ConstraintsJson(const std::vector<FuzzyConstraint>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(Render(c));
  return arr;
}

inline json ProofJson(const ProofTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json j;
    switch (s.kind) {
      case ProofStep::Kind::kRule: j["kind"] = "rule"; j["rule"] = s.rule; break;
      case ProofStep::Kind::kClash: j["kind"] = "clash"; break;
      case ProofStep::Kind::kComplete: j["kind"] = "complete"; break;
    }
    j["branch"] = s.branch;
    if (s.parent >= 0) j["parent"] = s.parent;
    j["premises"] = ConstraintsJson(s.premises);
    j["conclusions"] = ConstraintsJson(s.conclusions);
    steps.push_back(std::move(j));
  }
  return steps;
}

inline json ModelJson(const Interpretation& m) {
  json j;
  json domain = json::array();
  for (const auto& e : m.domain()) domain.push_back(ObjectName(e));
  j["domain"] = domain;
  json concepts = json::array();
  for (const auto& [key, deg] : m.concept_map())
    concepts.push_back({{"concept", key.first}, {"element", ObjectName(key.second)},
                        {"degree", deg.ToFractionString()}});
  j["concepts"] = concepts;
  json roles = json::array();
  for (const auto& [key, deg] : m.role_map())
    roles.push_back({{"role", std::get<0>(key)},
                     {"subject", ObjectName(std::get<1>(key))},
                     {"filler", ObjectName(std::get<2>(key))},
                     {"degree", deg.ToFractionString()}});
  j["roles"] = roles;
  return j;
}

inline std::string ModelText(const Interpretation& m) {
  std::string out = "domain:";
  for (const auto& e : m.domain()) out += " " + ObjectName(e);
  out += "\n";
  for (const auto& [key, deg] : m.concept_map())
    out += key.first + "(" + ObjectName(key.second) + ") = " + deg.ToString() + "\n";
  for (const auto& [key, deg] : m.role_map())
    out += std::get<0>(key) + "(" + ObjectName(std::get<1>(key)) + ", " +
           ObjectName(std::get<2>(key)) + ") = " + deg.ToString() + "\n";
  return out;
}

class Runner {
 public:
  Runner(const CliConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err) {}

  int Check() {
    Reasoner r(LoadKb(), Options());
    bool sat = r.IsSatisfiable();
    if (config_.json) {
      Emit({{"command", "check"},
            {"satisfiable", sat},
            {"assertions", r.expanded().abox().size()},
            {"introducedPrimitives", r.expansion_report().introduced_primitives}});
    } else {
      out_ << (sat ? "satisfiable" : "unsatisfiable") << "\n";
    }
    return sat ? kAnswered : kNegative;
  }

  int Entails(const std::string& query_text) {
    Reasoner r(LoadKb(), Options());
    Query q = WithSource("query", [&] { return ParseQuery(query_text); });
    auto* fc = std::get_if<FuzzyConstraint>(&q);
    if (!fc) throw UnsupportedInput("entails needs a bound, e.g. \"(a : C) >= 0.5\"");
    FuzzyConstraint expanded{r.Expand(fc->assertion), fc->rel, fc->degree};
    ProofTrace trace;
    auto res = r.EntailsExpanded(expanded, config_.proof ? &trace : nullptr);
    std::optional<OracleVerdict> oracle;
    if (config_.oracle) {
      GridOracleOptions o;
      if (config_.domain_bound) o.domain_bound = config_.domain_bound;
      oracle = GridOracleEntails(r.expanded(), expanded, o);
    }

    if (config_.json) {
      json j{{"command", "entails"},
             {"query", Render(*fc)},
             {"entailed", res.entailed},
             {"ruleApplications", res.stats.rule_applications},
             {"branches", res.stats.branches}};
      if (config_.proof) j["proof"] = ProofJson(trace);
      if (oracle)
        j["oracle"] = {{"entailed", oracle->entailed},
                       {"domainBound", oracle->domain_size},
                       {"gridSize", oracle->grid_size}};
      Emit(std::move(j));
    } else {
      out_ << (res.entailed ? "true" : "false") << "\n";
      if (config_.proof) out_ << trace.ToText();
      if (oracle)
        out_ << "oracle: " << (oracle->entailed ? "true" : "false")
             << " (domain bound " << oracle->domain_size << ")\n";
    }
    if (oracle && oracle->entailed != res.entailed) {
      err_ << "error: reasoner and grid oracle disagree\n";
      return kOracleDisagreement;
    }
    return res.entailed ? kAnswered : kNegative;
  }

  int Bound(const std::string& query_text, bool glb) {
    Reasoner r(LoadKb(), Options());
    Query q = WithSource("query", [&] { return ParseQuery(query_text); });
    auto* a = std::get_if<Assertion>(&q);
    if (!a) throw UnsupportedInput("glb/lub take a bare assertion, e.g. \"(a : C)\"");
    BoundResult b = glb ? r.Glb(*a) : r.Lub(*a);
    if (b.inconsistent) err_ << "warning: knowledge base is inconsistent\n";
    if (config_.json) {
      json cands = json::array();
      for (const auto& d : b.candidates) cands.push_back(d.ToFractionString());
      Emit({{"command", glb ? "glb" : "lub"},
            {"assertion", Render(*a)},
            {"degree", b.degree.ToFractionString()},
            {"inconsistent", b.inconsistent},
            {"candidates", cands},
            {"tests", b.tests}});
    } else {
      out_ << b.degree << "\n"
           << "candidates: " << b.candidates.size() << "\n"
           << "tests: " << b.tests << "\n";
    }
    return kAnswered;
  }

  int Subsumes(const std::string& c_text, const std::string& d_text) {
    Reasoner r(LoadKb(), Options());
    Concept c = WithSource("concept", [&] { return ParseConcept(c_text); });
    Concept d = WithSource("concept", [&] { return ParseConcept(d_text); });
    bool yes = r.Subsumes(c, d);
    if (config_.json) {
      Emit({{"command", "subsumes"},
            {"sub", Render(c)},
            {"super", Render(d)},
            {"subsumed", yes}});
    } else {
      out_ << (yes ? "true" : "false") << "\n";
    }
    return yes ? kAnswered : kNegative;
  }

  int Model() {
    Reasoner r(LoadKb(), Options());
    TableauOptions topts;
    topts.assemble_completion = true;
    SatResult res = r.Satisfiability(topts);
    if (!res.satisfiable) {
      if (config_.json) Emit({{"command", "model"}, {"satisfiable", false}});
      else out_ << "UNSAT\n";
      return kNegative;
    }
    Interpretation m = ExtractModel(*res.completion);
    if (config_.json) {
      json j = ModelJson(m);
      j["command"] = "model";
      j["satisfiable"] = true;
      Emit(std::move(j));
    } else {
      out_ << ModelText(m);
    }
    return kAnswered;
  }

  int Rank(const std::string& concept_text) {
    Reasoner r(LoadKb(), Options());
    Concept c = WithSource("concept", [&] { return ParseConcept(concept_text); });
    auto ranking = r.Rank(c, config_.parallel);
    if (config_.json) {
      json rows = json::array();
      for (const auto& e : ranking)
        rows.push_back({{"individual", e.individual}, {"degree", e.degree.ToFractionString()}});
      Emit({{"command", "rank"}, {"concept", Render(c)}, {"ranking", rows}});
    } else {
      for (const auto& e : ranking) out_ << e.individual << " " << e.degree << "\n";
    }
    return kAnswered;
  }

 private:
  ReasonerOptions Options() const {
    ReasonerOptions o;
    o.mode = config_.mode;
    o.expansion.node_budget = config_.budget;
    return o;
  }

  KnowledgeBase LoadKb() {
    std::string text = ReadFile(config_.kb_path);
    return WithSource(config_.kb_path, [&] { return ParseKb(text); });
  }

  void Emit(json j) {
    j["schemaVersion"] = 1;
    out_ << j.dump(2) << "\n";
  }

  CliConfig config_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace detail

// argv without the program name.
inline int RunCli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy ALC reasoner"};
  app.name("fuzzydl");
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig config;
  std::string mode = "full", format = "text";
  app.add_option("--mode", mode, "search regime")
      ->check(CLI::IsMember({"full", "trace"}));
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--oracle", config.oracle, "cross-check entails with the grid oracle");
  app.add_option("--domain-bound", config.domain_bound, "oracle domain size")
      ->check(CLI::PositiveNumber);
  app.add_flag("--proof", config.proof, "print the tableau proof trace (entails)");
  app.add_flag("--parallel", config.parallel, "rank individuals concurrently");
  app.add_option("--budget", config.budget, "expansion node budget")
      ->check(CLI::PositiveNumber);

  std::string q1, q2;
  auto* check = app.add_subcommand("check", "validate and decide satisfiability");
  check->add_option("kb", config.kb_path)->required();
  auto* entails = app.add_subcommand("entails", "decide a fuzzy entailment");
  entails->add_option("kb", config.kb_path)->required();
  entails->add_option("query", q1)->required();
  auto* glb = app.add_subcommand("glb", "greatest lower bound of an assertion");
  glb->add_option("kb", config.kb_path)->required();
  glb->add_option("assertion", q1)->required();
  auto* lub = app.add_subcommand("lub", "least upper bound of an assertion");
  lub->add_option("kb", config.kb_path)->required();
  lub->add_option("assertion", q1)->required();
  auto* subsumes = app.add_subcommand("subsumes", "decide C subsumed by D");
  subsumes->add_option("kb", config.kb_path)->required();
  subsumes->add_option("C", q1)->required();
  subsumes->add_option("D", q2)->required();
  auto* model = app.add_subcommand("model", "print a canonical model");
  model->add_option("kb", config.kb_path)->required();
  auto* rank = app.add_subcommand("rank", "rank individuals by membership");
  rank->add_option("kb", config.kb_path)->required();
  rank->add_option("concept", q1)->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  config.mode = mode == "trace" ? SearchMode::kTrace : SearchMode::kFull;
  config.json = format == "json";

  detail::Runner runner(config, out, err);
  try {
    if (*check) return runner.Check();
    if (*entails) return runner.Entails(q1);
    if (*glb) return runner.Bound(q1, true);
    if (*lub) return runner.Bound(q1, false);
    if (*subsumes) return runner.Subsumes(q1, q2);
    if (*model) return runner.Model();
    if (*rank) return runner.Rank(q1);
  } catch (const ParseError& e) {
    err << e.source() << ":" << e.span().line << ":" << e.span().column
        << ": error: " << e.message() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fuzzydl::cli
