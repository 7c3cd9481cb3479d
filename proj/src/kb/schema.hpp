#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rdf/triple_store.hpp"
#include "turtle/turtle.hpp"

namespace agilekb::kb {

struct ClassDef {
  rdf::Term iri;
  std::vector<rdf::Term> parents;  // rdfs:subClassOf
};

struct ObjectPropertyDef {
  rdf::Term iri;
  std::set<rdf::Term> domains;  // any-of
  std::set<rdf::Term> ranges;   // any-of
  std::optional<rdf::Term> inverse;
};

struct DataPropertyDef {
  rdf::Term iri;
  std::set<rdf::Term> domains;  // empty: any typed individual
};

// Class and property declarations read from the schema document
// (owl:Class, owl:ObjectProperty, owl:DatatypeProperty, rdfs:subClassOf,
// rdfs:domain, rdfs:range, owl:inverseOf).
struct SchemaDef {
  std::string ns;  // ontology namespace; only its predicates are validated
  std::map<rdf::Term, ClassDef> classes;
  std::map<rdf::Term, ObjectPropertyDef> object_properties;
  std::map<rdf::Term, DataPropertyDef> data_properties;

  // Errors: Cycle when subClassOf loops; SchemaViolation for undeclared
  // domain/range classes or conflicting inverses. owl:inverseOf is made
  // symmetric.
  static SchemaDef from_document(const turtle::Document& doc, std::string ns);

  bool is_class(const rdf::Term& t) const { return classes.count(t) != 0; }
  // Reflexive-transitive subClassOf.
  bool is_subclass_of(const rdf::Term& sub, const rdf::Term& super) const;
};

struct SchemaViolation {
  rdf::Triple triple;
  std::string reason;
};

// Checks every asserted statement against the declarations, using the rdf:type
// statements of `closure` (the saturated store) as each individual's types.
std::vector<SchemaViolation> validate(const SchemaDef& schema, const std::vector<rdf::Triple>& asserted,
                                      const rdf::GraphView& closure);

// One diagnostic line; IRIs compacted with `prefixes` where possible.
std::string format_violation(const SchemaViolation& v, const turtle::PrefixMap& prefixes);

}  // namespace agilekb::kb
