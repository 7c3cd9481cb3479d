#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdf/triple_store.hpp"
#include "turtle/turtle.hpp"

namespace agilekb::sparql {

struct FilterExpr {
  enum class Kind { Equals, NotEquals, Regex };
  Kind kind = Kind::Equals;
  std::string variable;
  rdf::Term value;      // Equals / NotEquals
  std::string pattern;  // Regex
};

struct OrderBy {
  std::string variable;
  bool ascending = true;
};

// SELECT [DISTINCT] (?v+ | *) WHERE { bgp FILTER* } [ORDER BY] [LIMIT]
struct Query {
  turtle::PrefixMap prefixes;
  bool select_all = false;
  std::vector<std::string> projection;  // empty when select_all
  std::vector<rdf::TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  bool distinct = false;
  std::optional<OrderBy> order_by;
  std::optional<std::size_t> limit;

  // Projected column names; for SELECT * the pattern variables in order of
  // first appearance.
  std::vector<std::string> columns() const;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<rdf::Term>> rows;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// Keywords are case-insensitive. `predefined` prefixes (plus rdf/rdfs/owl/xsd)
// are in scope; PREFIX clauses override them.
// Errors: Syntax (with position), UnknownPrefix, UnboundVariable.
Query parse_query(std::string_view text, const turtle::PrefixMap& predefined = {});

// Conjunctive evaluation of the patterns and filters, then projection,
// DISTINCT (first occurrence kept), stable ORDER BY on term order, LIMIT.
// Without ORDER BY rows come out in join order, which is deterministic for a
// given store state. Throws StaleOverlay through the graph.
ResultTable evaluate(const rdf::GraphView& graph, const Query& query);

// Checks that `pattern` stays within the supported regex subset: literal
// characters, escapes of metacharacters, character classes, anchors, `.`,
// `*`, `+`, `?`, alternation and plain groups. Throws Syntax otherwise.
void validate_regex(std::string_view pattern);

}  // namespace agilekb::sparql
