#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdf/triple.hpp"
#include "rdf/triple_store.hpp"

namespace agilekb::turtle {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
}  // namespace ns

// Prefix label (possibly empty) -> namespace IRI.
class PrefixMap {
 public:
  PrefixMap() = default;

  // rdf, rdfs, owl, xsd.
  static PrefixMap standard();

  // Throws MalformedTerm when the namespace is not a valid IRI prefix.
  void set(std::string label, std::string namespace_iri);
  const std::string* find(std::string_view label) const;
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

  // Throws UnknownPrefix naming the label.
  std::string expand(std::string_view label, std::string_view local) const;

  // Longest namespace that prefixes `iri` and leaves a local part writable as
  // a prefixed name. Returns "label:local".
  std::optional<std::string> compact(std::string_view iri) const;

  void merge(const PrefixMap& other);  // other wins on conflicts

  friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

 private:
  std::map<std::string, std::string> entries_;
};

struct Document {
  PrefixMap prefixes;
  std::vector<rdf::Triple> triples;  // document order, duplicates kept
};

// Parses the supported Turtle subset: @prefix directives, statements with `;`
// predicate lists and `,` object lists, `a`, <iri>, prefixed names, and
// double-quoted literals with an optional ^^datatype.
// Errors: Syntax (with line/column), UnknownPrefix.
Document parse_turtle(std::string_view text);

// Prefix block (sorted by label) followed by one statement per line, triples
// sorted and deduplicated. Re-parses to the same triple set.
std::string serialize_turtle(const Document& doc);

// Canonical N-Triples line for one statement, including the trailing " .".
std::string to_ntriples(const rdf::Triple& t);

// SHA-256 (lowercase hex) over the sorted, deduplicated N-Triples rendering,
// one line per statement, each terminated by '\n'.
std::string content_hash(const Document& doc);
std::string content_hash(const rdf::GraphView& graph);
std::string content_hash(std::vector<rdf::Triple> triples);

// Hex SHA-256 of raw bytes.
std::string sha256_hex(std::string_view bytes);

// Reads the whole file; throws Error(Io) when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace agilekb::turtle
