#pragma once

// Random Turtle documents for round-trip and hashing properties.

#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "turtle/turtle.hpp"

namespace agilekb::testing {

inline std::string random_literal_text(Rng& rng) {
  static const std::vector<std::string> pieces = {"a", "Z", "9", " ", "\"", "\\", "\n", "\t", "\r", "é", "→", ":", "#",
                                                  "<", ">", "'", ".", ";", ",", "^^", "@en", "\"\"\""};
  std::string s;
  const std::size_t n = rng.between(1, 8);
  for (std::size_t i = 0; i < n; ++i) s += rng.pick(pieces);
  return s;
}

inline std::vector<std::string> random_namespaces() {
  return {"http://ex.org/", "http://ex.org/deep/", "http://obama.kb/onto#", "urn:x:", "http://other.net/v1#"};
}

inline turtle::PrefixMap random_prefixes(Rng& rng) {
  static const std::vector<std::string> labels = {"", "ex", "o", "deep", "x1", "a-b", "ns_2"};
  turtle::PrefixMap p;
  for (const auto& ns : random_namespaces()) {
    if (rng.chance(0.5)) p.set(rng.pick(labels), ns);
  }
  return p;
}

inline rdf::Term random_iri(Rng& rng) {
  static const std::vector<std::string> locals = {"A", "b", "Daily_Meetings", "x-1", "n42", "", "path/seg", "q?x=1",
                                                  "v.1", "_u"};
  const auto nss = random_namespaces();
  return rdf::Term::iri(rng.pick(nss) + rng.pick(locals));
}

inline turtle::Document random_document(Rng& rng) {
  turtle::Document doc;
  doc.prefixes = random_prefixes(rng);
  const std::size_t n = rng.between(0, 25);
  for (std::size_t i = 0; i < n; ++i) {
    rdf::Term o;
    const std::size_t k = rng.below(4);
    if (k == 0) {
      o = rdf::Term::literal(random_literal_text(rng));
    } else if (k == 1) {
      o = rdf::Term::literal(std::to_string(rng.below(1000)), std::string(turtle::ns::xsd) + "integer");
    } else {
      o = random_iri(rng);
    }
    rdf::Term p = rng.chance(0.2) ? rdf::Term::iri(std::string(turtle::ns::rdf_type)) : random_iri(rng);
    doc.triples.push_back(rdf::Triple::make(random_iri(rng), p, o));
  }
  return doc;
}

}  // namespace agilekb::testing
