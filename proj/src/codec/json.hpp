#pragma once

#include <nlohmann/json.hpp>

#include "kb/catalog.hpp"
#include "kb/concerns.hpp"
#include "kb/report.hpp"
#include "sparql/query.hpp"

// JSON encodings shared by the HTTP API, the C API, the CLI and the cache file.
namespace agilekb::codec {

using nlohmann::json;

// {"kind": "iri"|"literal", "text": ..., "datatype": ...}; datatype only when set.
json to_json(const rdf::Term& term);
rdf::Term term_from_json(const json& j);  // throws Syntax

// {"columns": [...], "rows": [[term, ...], ...]}
json to_json(const sparql::ResultTable& table);
sparql::ResultTable table_from_json(const json& j);  // throws Syntax

// {"id", "title", "description", "teamScoped", "requiresPractice"}
json to_json(const kb::Concern& concern);

// {"triple": {"subject", "predicate", "object"}, "rule": name|null, "premises": [...]}
json to_json(const reasoner::TraceNode& node);

// {"team", "recommended": [{"practice", "traces"}], "discouraged": [...],
//  "concernResults": {id: table}}
json to_json(const kb::RecommendationReport& report);

// {"goals": [{"iri", "name", "description", "kind"}],
//  "factors": [{"id", "title", "class", "values": [{"iri", "name"}]}]}
json to_json(const kb::Catalog& catalog);

// {"goals": [iri], "situations": {factorId: valueIri}}; absent fields are
// empty. Throws Syntax when the shape is wrong.
kb::TeamProfile profile_from_json(const json& j);

}  // namespace agilekb::codec
