#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turtle/turtle.hpp"

namespace agilekb::kb {

// A registered question answered by one query template. Templates may contain
// {practice} (caller-supplied IRI) and {team} (the temporary team individual
// of a recommendation); both are replaced by <iri> before parsing.
struct Concern {
  std::string id;
  std::string title;
  std::string description;
  std::string query_template;
  bool team_scoped = false;
  bool requires_practice = false;
  std::size_t line = 0;  // where the entry starts

  friend bool operator==(const Concern&, const Concern&) = default;
};

struct ConcernRegistry {
  std::vector<Concern> listed;    // file order
  std::vector<Concern> variants;  // "<id>.team" entries, file order

  const Concern* find(std::string_view id) const;
};

// Line-based registry format:
//
//   [[concern]]
//   id = "slug"
//   title = "..."
//   description = "..."
//   team_scoped = false
//   query = """
//   SELECT ...
//   """
//   team_query = """ ... """      (optional, registers "<id>.team")
//
// Every template must parse with placeholders substituted.
// Errors: Syntax (with line), DuplicateConcern, UnknownPrefix, UnboundVariable.
ConcernRegistry parse_concerns(std::string_view text, const turtle::PrefixMap& predefined);

// Substitutes placeholders. Throws MissingParameter when the template needs a
// value that is absent, InvalidParameter when a value is given but unused or is
// not a valid IRI.
std::string instantiate(const Concern& concern, const std::optional<std::string>& practice_iri,
                        const std::optional<std::string>& team_iri = std::nullopt);

}  // namespace agilekb::kb
