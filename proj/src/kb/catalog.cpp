#include "kb/catalog.hpp"

#include <cctype>
#include <map>
#include <set>

#include "common/error.hpp"

namespace agilekb::kb {

using rdf::Term;
using rdf::Triple;

namespace {

std::string local_name(std::string_view iri) {
  std::size_t cut = iri.find_last_of("#/");
  return std::string(cut == std::string_view::npos ? iri : iri.substr(cut + 1));
}

// subject -> literal text of `predicate`, first occurrence wins.
std::map<Term, std::string> literal_index(const turtle::Document& doc, const Term& predicate) {
  std::map<Term, std::string> out;
  for (const Triple& t : doc.triples) {
    if (t.predicate == predicate && t.object.is_literal()) out.try_emplace(t.subject, t.object.text());
  }
  return out;
}

}  // namespace

const Factor* Catalog::find_factor(std::string_view id) const {
  for (const Factor& f : factors) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::string kebab_case(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(name[i]);
    if (c == '_' || c == '-' || c == ' ') {
      if (!out.empty() && out.back() != '-') out += '-';
      continue;
    }
    if (std::isupper(c)) {
      const bool after_lower = i > 0 && (std::islower(static_cast<unsigned char>(name[i - 1])) ||
                                         std::isdigit(static_cast<unsigned char>(name[i - 1])));
      const bool acronym_end = i > 0 && std::isupper(static_cast<unsigned char>(name[i - 1])) && i + 1 < name.size() &&
                               std::islower(static_cast<unsigned char>(name[i + 1]));
      if ((after_lower || acronym_end) && !out.empty() && out.back() != '-') out += '-';
      out += static_cast<char>(std::tolower(c));
    } else {
      out += static_cast<char>(c);
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out;
}

Catalog build_catalog(const turtle::Document& goals, const turtle::Document& factors, const SchemaDef& schema) {
  const Term type = Term::iri(turtle::ns::rdf_type);
  const Term name = Term::iri(schema.ns + "name");
  const Term description = Term::iri(schema.ns + "description");
  const Term goal = Term::iri(schema.ns + "Goal");
  const Term principle = Term::iri(schema.ns + "Principle");
  const Term situation = Term::iri(schema.ns + "Situation");
  const Term situational_factor = Term::iri(schema.ns + "SituationalFactor");

  Catalog cat;
  {
    auto names = literal_index(goals, name);
    auto descriptions = literal_index(goals, description);
    std::set<Term> seen;
    for (const Triple& t : goals.triples) {
      if (t.predicate != type || (t.object != goal && t.object != principle) || !seen.insert(t.subject).second) continue;
      cat.goals.push_back(GoalEntry{t.subject.text(), names.count(t.subject) ? names[t.subject] : local_name(t.subject.text()),
                                    descriptions.count(t.subject) ? descriptions[t.subject] : std::string(),
                                    t.object == goal ? "goal" : "principle"});
    }
  }

  auto names = literal_index(factors, name);
  auto label = [&](const Term& t) { return names.count(t) ? names[t] : local_name(t.text()); };
  std::vector<std::string> problems;
  std::set<std::string> ids;
  std::set<Term> seen;
  for (const Triple& t : factors.triples) {
    if (t.predicate != type || t.object != situational_factor || !seen.insert(t.subject).second) continue;
    Factor f;
    f.class_iri = t.subject.text();
    f.id = kebab_case(local_name(f.class_iri));
    f.title = label(t.subject);
    std::set<Term> value_seen;
    for (const Triple& v : factors.triples) {
      if (v.predicate == type && v.object == t.subject && value_seen.insert(v.subject).second) {
        f.values.push_back(FactorValue{v.subject.text(), label(v.subject)});
      }
    }
    if (!schema.is_class(t.subject) || t.subject == situation || !schema.is_subclass_of(t.subject, situation)) {
      problems.push_back("factor " + f.class_iri + " is not a declared sub-class of Situation");
    }
    if (f.values.size() < 2) problems.push_back("factor " + f.id + " has fewer than two values");
    if (!ids.insert(f.id).second) problems.push_back("duplicate factor id " + f.id);
    cat.factors.push_back(std::move(f));
  }
  if (!problems.empty()) {
    const std::string message = std::to_string(problems.size()) + " factor catalog error(s)";
    throw Error(ErrorCode::SchemaViolation, message, std::move(problems));
  }
  return cat;
}

}  // namespace agilekb::kb
