#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reasoner/rules.hpp"
#include "sparql/query.hpp"

namespace agilekb::kb {

// Goals and situational factor choices entered for one team.
struct TeamProfile {
  std::vector<std::string> goals;                 // goal/principle IRIs
  std::map<std::string, std::string> situations;  // factor id -> value IRI
};

struct PracticeVerdict {
  rdf::Term practice;
  std::vector<reasoner::TraceNode> traces;  // one per derivation of the edge
};

struct RecommendationReport {
  rdf::Term team;
  std::vector<PracticeVerdict> recommended;  // sorted by practice
  std::vector<PracticeVerdict> discouraged;
  // Team-scoped concern id -> table, registry order.
  std::vector<std::pair<std::string, sparql::ResultTable>> concern_results;
};

}  // namespace agilekb::kb
