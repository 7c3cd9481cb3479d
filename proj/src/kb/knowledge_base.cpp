#include "kb/knowledge_base.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "common/error.hpp"
#include "turtle/turtle.hpp"

namespace agilekb::kb {

namespace fs = std::filesystem;
using rdf::Term;
using rdf::Triple;

namespace {

template <typename F>
auto with_file(const fs::path& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

turtle::Document load_turtle(const fs::path& path) {
  if (path.empty()) return {};
  return with_file(path, [&] { return turtle::parse_turtle(turtle::read_file(path.string())); });
}

std::string uuid_v4() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  const std::uint64_t hi = (rng() & 0xFFFFFFFFFFFF0FFFull) | 0x0000000000004000ull;
  const std::uint64_t lo = (rng() & 0x3FFFFFFFFFFFFFFFull) | 0x8000000000000000ull;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%08x-%04x-%04x-%04x-%012llx", static_cast<unsigned>(hi >> 32),
                static_cast<unsigned>((hi >> 16) & 0xFFFF), static_cast<unsigned>(hi & 0xFFFF),
                static_cast<unsigned>(lo >> 48), static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFull));
  return buf;
}

}  // namespace

KnowledgeBaseConfig KnowledgeBaseConfig::defaults(const fs::path& data_dir) {
  KnowledgeBaseConfig c;
  c.schema = data_dir / "schema.ttl";
  c.ontology = data_dir / "seed.ttl";
  c.rules = data_dir / "rules" / "default.rules";
  c.concerns = data_dir / "concerns.toml";
  c.goals = data_dir / "goals.ttl";
  c.factors = data_dir / "factors.ttl";
  return c;
}

std::unique_ptr<KnowledgeBase> KnowledgeBase::load(const KnowledgeBaseConfig& config) {
  std::unique_ptr<KnowledgeBase> kb(new KnowledgeBase());
  kb->max_derived_ = config.max_derived;

  const turtle::Document schema_doc = load_turtle(config.schema);
  const turtle::Document ontology_doc = load_turtle(config.ontology);
  const turtle::Document goals_doc = load_turtle(config.goals);
  const turtle::Document factors_doc = load_turtle(config.factors);

  const std::string* ns = schema_doc.prefixes.find("");
  kb->ns_ = ns ? *ns : std::string(kDefaultNamespace);
  kb->prefixes_ = turtle::PrefixMap::standard();
  kb->prefixes_.set("", kb->ns_);

  kb->schema_ = with_file(config.schema, [&] { return SchemaDef::from_document(schema_doc, kb->ns_); });

  std::vector<Triple> asserted;
  for (const auto* doc : {&schema_doc, &ontology_doc, &goals_doc, &factors_doc}) {
    asserted.insert(asserted.end(), doc->triples.begin(), doc->triples.end());
  }
  for (const Triple& t : asserted) kb->store_.insert(t);
  kb->asserted_ = kb->store_.size();
  kb->ontology_hash_ = turtle::content_hash(kb->store_);

  const std::string rules_text = with_file(config.rules, [&] { return turtle::read_file(config.rules.string()); });
  kb->rules_ = with_file(config.rules, [&] { return reasoner::parse_rules(rules_text, kb->prefixes_); });

  reasoner::SaturationOptions options;
  options.max_derived = config.max_derived;
  reasoner::SaturationResult sat = reasoner::saturate(kb->store_, kb->rules_, options);
  kb->derived_ = sat.derived.size();
  kb->rounds_ = sat.rounds;
  kb->provenance_ = std::move(sat.provenance);

  std::vector<SchemaViolation> violations = validate(kb->schema_, asserted, kb->store_);
  if (!violations.empty()) {
    std::vector<std::string> lines;
    for (const auto& v : violations) lines.push_back(format_violation(v, kb->prefixes_));
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    const std::string message = std::to_string(lines.size()) + " schema violation(s)";
    throw Error(ErrorCode::SchemaViolation, message, std::move(lines));
  }

  const std::string concerns_text =
      with_file(config.concerns, [&] { return turtle::read_file(config.concerns.string()); });
  kb->concerns_ = with_file(config.concerns, [&] { return parse_concerns(concerns_text, kb->prefixes_); });

  kb->catalog_ = with_file(config.factors, [&] { return build_catalog(goals_doc, factors_doc, kb->schema_); });

  const std::string fingerprint = turtle::sha256_hex(rules_text + '\0' + concerns_text);
  kb->cache_ = std::make_unique<ResultCache>(config.cache_dir, kb->ontology_hash_, fingerprint);
  return kb;
}

sparql::ResultTable KnowledgeBase::answer_concern(std::string_view id, const std::optional<std::string>& practice) {
  const Concern* concern = nullptr;
  for (const Concern& c : concerns_.listed) {
    if (c.id == id) concern = &c;
  }
  if (!concern) {
    if (concerns_.find(id)) {
      throw Error(ErrorCode::InvalidParameter,
                  "concern '" + std::string(id) + "' is team-scoped and only answered inside a recommendation",
                  {std::string(id)});
    }
    throw Error(ErrorCode::UnknownConcern, "unknown concern '" + std::string(id) + "'", {std::string(id)});
  }

  std::optional<std::string> iri;
  if (practice) iri = resolve_iri(*practice);
  const std::string text = instantiate(*concern, iri);
  const std::string key = concern->id + (iri ? "|" + *iri : std::string());

  if (auto hit = cache_->get(key)) {
    ++cache_hits_;
    return *hit;
  }
  ++evaluations_;
  sparql::ResultTable table = sparql::evaluate(store_, sparql::parse_query(text, prefixes_));
  cache_->put(key, table);
  return table;
}

std::size_t KnowledgeBase::warm_cache() {
  std::size_t count = 0;
  for (const Concern& c : concerns_.listed) {
    if (c.team_scoped || c.requires_practice) continue;
    try {
      answer_concern(c.id);
    } catch (const Error& e) {
      throw e.with_context("concern " + c.id);
    }
    ++count;
  }
  return count;
}

RecommendationReport KnowledgeBase::recommend(const TeamProfile& profile) const {
  const Term type = Term::iri(turtle::ns::rdf_type);
  const Term goal_class = Term::iri(ns_ + "Goal");
  const Term principle_class = Term::iri(ns_ + "Principle");

  std::vector<std::string> problems;
  std::vector<Term> goals;
  for (const std::string& g : profile.goals) {
    if (!rdf::is_valid_iri(g)) {
      problems.push_back("goal '" + g + "' is not a valid IRI");
      continue;
    }
    Term t = Term::iri(g);
    if (!store_.contains(Triple::make(t, type, goal_class)) && !store_.contains(Triple::make(t, type, principle_class))) {
      problems.push_back("unknown goal " + g);
      continue;
    }
    goals.push_back(t);
  }
  std::vector<Term> situations;
  for (const auto& [factor_id, value] : profile.situations) {
    const Factor* factor = catalog_.find_factor(factor_id);
    if (!factor) {
      problems.push_back("unknown factor " + factor_id);
      continue;
    }
    bool known = std::any_of(factor->values.begin(), factor->values.end(),
                             [&](const FactorValue& v) { return v.iri == value; });
    if (!known) {
      problems.push_back("unknown value " + value + " for factor " + factor_id);
      continue;
    }
    situations.push_back(Term::iri(value));
  }
  if (!problems.empty()) {
    const std::string message =
        std::to_string(problems.size()) + " invalid profile entr" + (problems.size() == 1 ? "y" : "ies");
    throw Error(ErrorCode::InvalidProfile, message, std::move(problems));
  }

  RecommendationReport report;
  report.team = Term::iri(ns_ + "Team_" + uuid_v4());
  rdf::OverlayStore graph(store_);

  std::vector<Triple> added;
  added.push_back(Triple::make(report.team, type, Term::iri(ns_ + "Team")));
  for (const Term& g : goals) added.push_back(Triple::make(report.team, Term::iri(ns_ + "desiresGoal"), g));
  for (const Term& s : situations) added.push_back(Triple::make(report.team, Term::iri(ns_ + "hasSituation"), s));
  std::vector<Triple> delta;
  for (const Triple& t : added) {
    if (graph.insert(t)) delta.push_back(t);
  }

  reasoner::SaturationOptions options;
  options.max_derived = max_derived_;
  options.initial_delta = &delta;
  options.parent = &provenance_;
  reasoner::SaturationResult sat = reasoner::saturate(graph, rules_, options);

  const Term practice_class = Term::iri(ns_ + "Practice");
  auto collect = [&](const char* predicate) {
    std::vector<PracticeVerdict> out;
    for (const Triple& edge : graph.match({Term::variable("p"), Term::iri(ns_ + predicate), report.team})) {
      if (!graph.contains(Triple::make(edge.subject, type, practice_class))) continue;
      PracticeVerdict v{edge.subject, {}};
      for (const auto& trace : reasoner::explain(graph, rules_, sat.provenance, edge)) {
        v.traces.push_back(reasoner::expand_trace(graph, rules_, sat.provenance, trace));
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  report.recommended = collect("recommendedFor");
  report.discouraged = collect("discouragedFor");

  for (const Concern& c : concerns_.variants) {
    const std::string text = instantiate(c, std::nullopt, report.team.text());
    report.concern_results.emplace_back(c.id, sparql::evaluate(graph, sparql::parse_query(text, prefixes_)));
  }
  return report;
}

sparql::ResultTable KnowledgeBase::query(std::string_view text) const {
  return sparql::evaluate(store_, sparql::parse_query(text, prefixes_));
}

std::string KnowledgeBase::resolve_iri(std::string_view text) const {
  std::string iri;
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    iri = std::string(text.substr(1, text.size() - 2));
  } else if (text.find("://") != std::string_view::npos || text.substr(0, 4) == "urn:") {
    iri = std::string(text);
  } else if (std::size_t colon = text.find(':'); colon != std::string_view::npos) {
    try {
      iri = prefixes_.expand(text.substr(0, colon), text.substr(colon + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidParameter, e.message(), e.details());
    }
  } else {
    iri = ns_ + std::string(text);
  }
  if (!rdf::is_valid_iri(iri)) {
    throw Error(ErrorCode::InvalidParameter, "not a valid IRI: '" + std::string(text) + "'", {std::string(text)});
  }
  return iri;
}

std::string KnowledgeBase::content_hash() const { return turtle::content_hash(store_); }

KnowledgeBaseStats KnowledgeBase::stats() const {
  KnowledgeBaseStats s;
  s.asserted = asserted_;
  s.derived = derived_;
  s.rounds = rounds_;
  s.rules = rules_.rules.size();
  s.concerns = concerns_.listed.size();
  s.cache_hits = cache_hits_.load();
  s.evaluations = evaluations_.load();
  return s;
}

}  // namespace agilekb::kb
