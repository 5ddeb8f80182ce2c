#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fuzzydl/fuzzydl.hpp"

#ifndef FUZZYDL_KB_DIR
#define FUZZYDL_KB_DIR "knowledge_bases"
#endif

namespace fuzzydl::testing {

inline std::string KbPath(const std::string& file) {
  return std::string(FUZZYDL_KB_DIR) + "/" + file;
}

inline std::string ReadText(const std::string& file) {
  std::ifstream in(KbPath(file));
  if (!in) throw std::runtime_error("missing fixture " + KbPath(file));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline KnowledgeBase LoadKb(const std::string& file) { return ParseKb(ReadText(file)); }

inline Concept C(std::string_view text) { return ParseConcept(text); }
inline FuzzyConstraint Fc(std::string_view text) { return ParseConstraint(text); }
inline Assertion As(std::string_view text) { return std::get<Assertion>(ParseQuery(text)); }

// Interpretation stored as {"domain": [...], "concepts": [...], "roles": [...]}.
// Every named element is an individual of the same name.
inline Interpretation LoadModel(const std::string& file) {
  auto j = nlohmann::json::parse(ReadText(file));
  Interpretation m;
  for (const auto& e : j.at("domain")) m.AddIndividual(e.get<std::string>());
  for (const auto& c : j.at("concepts"))
    m.SetConcept(c.at("concept").get<std::string>(),
                 MakeIndividual(c.at("element").get<std::string>()),
                 Degree::Parse(c.at("degree").get<std::string>()));
  for (const auto& r : j.at("roles"))
    m.SetRole(r.at("role").get<std::string>(),
              MakeIndividual(r.at("subject").get<std::string>()),
              MakeIndividual(r.at("filler").get<std::string>()),
              Degree::Parse(r.at("degree").get<std::string>()));
  return m;
}

inline const char* kFixtures[] = {
    "kb_example1.fkb",          "kb_example2.fkb", "kb_example3.fkb", "kb_example4.fkb",
    "kb_example4_expanded.fkb", "kb_example5.fkb", "kb_example6.fkb",
};

}  // namespace fuzzydl::testing
