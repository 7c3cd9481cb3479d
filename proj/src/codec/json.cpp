#include "codec/json.hpp"

#include "common/error.hpp"

namespace agilekb::codec {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Syntax, what); }

json triple_json(const rdf::Triple& t) {
  return json{{"subject", to_json(t.subject)}, {"predicate", to_json(t.predicate)}, {"object", to_json(t.object)}};
}

json verdicts_json(const std::vector<kb::PracticeVerdict>& verdicts) {
  json out = json::array();
  for (const auto& v : verdicts) {
    json traces = json::array();
    for (const auto& t : v.traces) traces.push_back(to_json(t));
    out.push_back(json{{"practice", to_json(v.practice)}, {"traces", std::move(traces)}});
  }
  return out;
}

}  // namespace

json to_json(const rdf::Term& term) {
  json j;
  switch (term.kind()) {
    case rdf::TermKind::Iri: j["kind"] = "iri"; break;
    case rdf::TermKind::Literal: j["kind"] = "literal"; break;
    case rdf::TermKind::Variable: j["kind"] = "variable"; break;
  }
  j["text"] = term.text();
  if (!term.datatype().empty()) j["datatype"] = term.datatype();
  return j;
}

rdf::Term term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("text") || !j["kind"].is_string() || !j["text"].is_string()) {
    bad("term must be an object with string 'kind' and 'text'");
  }
  const std::string kind = j["kind"];
  const std::string text = j["text"];
  if (kind == "iri") return rdf::Term::iri(text);
  if (kind == "literal") {
    std::string datatype;
    if (j.contains("datatype")) {
      if (!j["datatype"].is_string()) bad("term datatype must be a string");
      datatype = j["datatype"];
    }
    return rdf::Term::literal(text, datatype);
  }
  bad("unknown term kind '" + kind + "'");
}

json to_json(const sparql::ResultTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& term : row) r.push_back(to_json(term));
    rows.push_back(std::move(r));
  }
  return json{{"columns", table.columns}, {"rows", std::move(rows)}};
}

sparql::ResultTable table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("columns") || !j.contains("rows") || !j["columns"].is_array() ||
      !j["rows"].is_array()) {
    bad("table must be an object with 'columns' and 'rows' arrays");
  }
  sparql::ResultTable table;
  for (const auto& c : j["columns"]) {
    if (!c.is_string()) bad("column names must be strings");
    table.columns.push_back(c.get<std::string>());
  }
  for (const auto& r : j["rows"]) {
    if (!r.is_array() || r.size() != table.columns.size()) bad("row width must match the column count");
    std::vector<rdf::Term> row;
    for (const auto& t : r) row.push_back(term_from_json(t));
    table.rows.push_back(std::move(row));
  }
  return table;
}

json to_json(const kb::Concern& c) {
  return json{{"id", c.id},
              {"title", c.title},
              {"description", c.description},
              {"teamScoped", c.team_scoped},
              {"requiresPractice", c.requires_practice}};
}

json to_json(const reasoner::TraceNode& node) {
  json premises = json::array();
  for (const auto& p : node.premises) premises.push_back(to_json(p));
  return json{{"triple", triple_json(node.triple)},
              {"rule", node.rule_name.empty() ? json(nullptr) : json(node.rule_name)},
              {"premises", std::move(premises)}};
}

json to_json(const kb::RecommendationReport& report) {
  json results = json::object();
  for (const auto& [id, table] : report.concern_results) results[id] = to_json(table);
  return json{{"team", to_json(report.team)},
              {"recommended", verdicts_json(report.recommended)},
              {"discouraged", verdicts_json(report.discouraged)},
              {"concernResults", std::move(results)}};
}

json to_json(const kb::Catalog& catalog) {
  json goals = json::array();
  for (const auto& g : catalog.goals) {
    goals.push_back(json{{"iri", g.iri}, {"name", g.name}, {"description", g.description}, {"kind", g.kind}});
  }
  json factors = json::array();
  for (const auto& f : catalog.factors) {
    json values = json::array();
    for (const auto& v : f.values) values.push_back(json{{"iri", v.iri}, {"name", v.name}});
    factors.push_back(json{{"id", f.id}, {"title", f.title}, {"class", f.class_iri}, {"values", std::move(values)}});
  }
  return json{{"goals", std::move(goals)}, {"factors", std::move(factors)}};
}

kb::TeamProfile profile_from_json(const json& j) {
  if (!j.is_object()) bad("profile must be a JSON object");
  kb::TeamProfile profile;
  if (auto it = j.find("goals"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) bad("'goals' must be an array of IRIs");
    for (const auto& g : *it) {
      if (!g.is_string()) bad("'goals' must be an array of IRIs");
      profile.goals.push_back(g.get<std::string>());
    }
  }
  if (auto it = j.find("situations"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) bad("'situations' must map factor ids to value IRIs");
    for (const auto& [factor, value] : it->items()) {
      if (!value.is_string()) bad("'situations' must map factor ids to value IRIs");
      profile.situations[factor] = value.get<std::string>();
    }
  }
  return profile;
}

}  // namespace agilekb::codec
