#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kb/schema.hpp"
#include "turtle/turtle.hpp"

namespace agilekb::kb {

struct GoalEntry {
  std::string iri;
  std::string name;
  std::string description;
  std::string kind;  // "goal" or "principle"
};

struct FactorValue {
  std::string iri;
  std::string name;
};

struct Factor {
  std::string id;         // kebab-case of the class local name
  std::string title;
  std::string class_iri;  // the Situation sub-class
  std::vector<FactorValue> values;  // file order
};

// Input forms for team profiles. Everything is kept in file order so the
// catalog endpoint is stable.
struct Catalog {
  std::vector<GoalEntry> goals;
  std::vector<Factor> factors;

  const Factor* find_factor(std::string_view id) const;
};

// TeamDistribution -> team-distribution.
std::string kebab_case(std::string_view local_name);

// Goals are the :Goal/:Principle individuals of `goals`; factors are the
// classes typed :SituationalFactor in `factors`, each with the individuals of
// that class as values.
// Errors: SchemaViolation when a factor is not a Situation sub-class, has
// fewer than two values, or two factors share an id.
Catalog build_catalog(const turtle::Document& goals, const turtle::Document& factors, const SchemaDef& schema);

}  // namespace agilekb::kb
