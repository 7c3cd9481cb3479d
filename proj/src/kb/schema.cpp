#include "kb/schema.hpp"

#include <functional>

#include "common/error.hpp"

namespace agilekb::kb {

using rdf::Term;
using rdf::Triple;

namespace {

const Term& rdf_type() {
  static const Term t = Term::iri(turtle::ns::rdf_type);
  return t;
}

Term vocab(std::string_view ns, std::string_view local) { return Term::iri(std::string(ns) + std::string(local)); }

bool in_namespace(const Term& t, std::string_view ns) {
  return t.is_iri() && t.text().size() > ns.size() && t.text().compare(0, ns.size(), ns) == 0;
}

std::string show(const Term& t, const turtle::PrefixMap& prefixes) {
  if (t.is_iri()) {
    if (auto c = prefixes.compact(t.text())) return *c;
  }
  return rdf::to_display(t);
}

}  // namespace

SchemaDef SchemaDef::from_document(const turtle::Document& doc, std::string ns) {
  SchemaDef s;
  s.ns = std::move(ns);
  const Term owl_class = vocab(turtle::ns::owl, "Class");
  const Term owl_object_property = vocab(turtle::ns::owl, "ObjectProperty");
  const Term owl_datatype_property = vocab(turtle::ns::owl, "DatatypeProperty");
  const Term owl_inverse = vocab(turtle::ns::owl, "inverseOf");
  const Term sub_class_of = vocab(turtle::ns::rdfs, "subClassOf");
  const Term domain = vocab(turtle::ns::rdfs, "domain");
  const Term range = vocab(turtle::ns::rdfs, "range");

  for (const Triple& t : doc.triples) {
    if (t.predicate != rdf_type()) continue;
    if (t.object == owl_class) {
      s.classes.try_emplace(t.subject, ClassDef{t.subject, {}});
    } else if (t.object == owl_object_property) {
      s.object_properties.try_emplace(t.subject, ObjectPropertyDef{t.subject, {}, {}, {}});
    } else if (t.object == owl_datatype_property) {
      s.data_properties.try_emplace(t.subject, DataPropertyDef{t.subject, {}});
    }
  }

  std::vector<std::string> problems;
  auto require_class = [&](const Term& c, const std::string& where) {
    if (!s.is_class(c)) problems.push_back(where + " refers to undeclared class " + rdf::to_display(c));
  };

  for (const Triple& t : doc.triples) {
    if (t.predicate == sub_class_of) {
      require_class(t.subject, "rdfs:subClassOf subject");
      require_class(t.object, "rdfs:subClassOf of " + rdf::to_display(t.subject));
      if (auto it = s.classes.find(t.subject); it != s.classes.end()) it->second.parents.push_back(t.object);
    } else if (t.predicate == domain || t.predicate == range) {
      const bool is_domain = t.predicate == domain;
      const std::string what = std::string(is_domain ? "rdfs:domain" : "rdfs:range") + " of " + rdf::to_display(t.subject);
      require_class(t.object, what);
      if (auto op = s.object_properties.find(t.subject); op != s.object_properties.end()) {
        (is_domain ? op->second.domains : op->second.ranges).insert(t.object);
      } else if (auto dp = s.data_properties.find(t.subject); dp != s.data_properties.end()) {
        if (is_domain) dp->second.domains.insert(t.object);
      } else {
        problems.push_back(what + ": not a declared property");
      }
    } else if (t.predicate == owl_inverse) {
      auto a = s.object_properties.find(t.subject);
      auto b = s.object_properties.find(t.object);
      if (a == s.object_properties.end() || b == s.object_properties.end()) {
        problems.push_back("owl:inverseOf between " + rdf::to_display(t.subject) + " and " + rdf::to_display(t.object) +
                           " requires two declared object properties");
        continue;
      }
      for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
        if (p->second.inverse && *p->second.inverse != q->first) {
          problems.push_back("conflicting inverses for " + rdf::to_display(p->first));
        }
        p->second.inverse = q->first;
      }
    }
  }
  if (!problems.empty()) {
    const std::string message = std::to_string(problems.size()) + " schema declaration error(s)";
    throw Error(ErrorCode::SchemaViolation, message, std::move(problems));
  }

  // subClassOf must be acyclic.
  enum class Mark { None, Active, Done };
  std::map<Term, Mark> marks;
  std::function<void(const Term&, std::vector<Term>&)> visit = [&](const Term& c, std::vector<Term>& path) {
    Mark& m = marks[c];
    if (m == Mark::Done) return;
    path.push_back(c);
    if (m == Mark::Active) {
      std::string cycle;
      for (const Term& p : path) cycle += (cycle.empty() ? "" : " -> ") + rdf::to_display(p);
      throw Error(ErrorCode::Cycle, "rdfs:subClassOf cycle: " + cycle, {cycle});
    }
    m = Mark::Active;
    for (const Term& parent : s.classes.at(c).parents) visit(parent, path);
    marks[c] = Mark::Done;
    path.pop_back();
  };
  for (const auto& [iri, def] : s.classes) {
    std::vector<Term> path;
    visit(iri, path);
  }
  return s;
}

bool SchemaDef::is_subclass_of(const Term& sub, const Term& super) const {
  if (sub == super) return true;
  auto it = classes.find(sub);
  if (it == classes.end()) return false;
  for (const Term& p : it->second.parents) {
    if (is_subclass_of(p, super)) return true;
  }
  return false;
}

std::vector<SchemaViolation> validate(const SchemaDef& schema, const std::vector<Triple>& asserted,
                                      const rdf::GraphView& closure) {
  std::vector<SchemaViolation> out;
  auto types_of = [&](const Term& individual) {
    std::set<Term> types;
    if (!individual.is_iri()) return types;
    for (const Triple& t : closure.match({individual, rdf_type(), Term::variable("c")})) types.insert(t.object);
    return types;
  };
  auto intersects = [](const std::set<Term>& a, const std::set<Term>& b) {
    for (const Term& t : a) {
      if (b.count(t)) return true;
    }
    return false;
  };

  for (const Triple& t : asserted) {
    std::vector<std::string> reasons;
    if (t.predicate == rdf_type()) {
      if (in_namespace(t.object, schema.ns) && !schema.is_class(t.object)) {
        reasons.push_back("type " + rdf::to_display(t.object) + " is not a declared class");
      }
    } else if (in_namespace(t.predicate, schema.ns)) {
      if (auto op = schema.object_properties.find(t.predicate); op != schema.object_properties.end()) {
        const ObjectPropertyDef& def = op->second;
        if (!t.object.is_iri()) {
          reasons.push_back("object property with a literal value");
        } else {
          if (!def.domains.empty() && !intersects(types_of(t.subject), def.domains)) {
            reasons.push_back("subject is not in the domain");
          }
          if (!def.ranges.empty() && !intersects(types_of(t.object), def.ranges)) {
            reasons.push_back("object is not in the range");
          }
        }
      } else if (auto dp = schema.data_properties.find(t.predicate); dp != schema.data_properties.end()) {
        if (!t.object.is_literal()) reasons.push_back("data property with a non-literal value");
        std::set<Term> types = types_of(t.subject);
        if (dp->second.domains.empty() ? types.empty() : !intersects(types, dp->second.domains)) {
          reasons.push_back("subject is not a typed individual of the property's domain");
        }
      } else {
        reasons.push_back("undeclared property");
      }
    }
    if (!reasons.empty()) {
      std::string joined;
      for (const auto& r : reasons) joined += (joined.empty() ? "" : "; ") + r;
      out.push_back({t, joined});
    }
  }
  return out;
}

std::string format_violation(const SchemaViolation& v, const turtle::PrefixMap& prefixes) {
  return "SchemaViolation: " + show(v.triple.subject, prefixes) + " " + show(v.triple.predicate, prefixes) + " " +
         show(v.triple.object, prefixes) + ": " + v.reason;
}

}  // namespace agilekb::kb
