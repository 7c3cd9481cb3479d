#include "turtle/turtle.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "common/lexer.hpp"

namespace agilekb::turtle {

using rdf::Term;
using rdf::Triple;

namespace {

bool valid_label(std::string_view label) {
  if (label.empty()) return true;
  if (!std::isalpha(static_cast<unsigned char>(label.front()))) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

// Local part that the lexer reads back unchanged.
bool valid_local(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '-' || local.front() == '.' || local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::string escape_literal(std::string_view value) {
  std::string out;
  out.reserve(value.size() + 2);
  out += '"';
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : cur_(tokenize(text)) {}

  Document run() {
    while (!cur_.at_end()) {
      if (cur_.peek().kind == TokenKind::AtWord) {
        directive();
      } else {
        statement();
      }
    }
    return std::move(doc_);
  }

 private:
  void directive() {
    const Token& at = cur_.advance();
    if (at.text != "prefix") TokenCursor::fail_at(at, "unsupported directive '@" + at.text + "'");
    const Token& label = cur_.peek();
    if (label.kind != TokenKind::PrefixedName || !label.text.empty()) {
      cur_.fail("expected prefix label followed by ':'");
    }
    cur_.advance();
    const Token& iri = cur_.peek();
    if (iri.kind != TokenKind::IriRef) cur_.fail("expected namespace IRI in angle brackets");
    cur_.advance();
    doc_.prefixes.set(label.prefix, iri.text);
    cur_.expect_punct(".");
  }

  void statement() {
    const Token& start = cur_.peek();
    Term subject = resource(start, "subject");
    cur_.advance();
    for (;;) {
      Term predicate = verb();
      for (;;) {
        doc_.triples.push_back(Triple{subject, predicate, object()});
        if (!cur_.accept_punct(",")) break;
      }
      if (!cur_.accept_punct(";")) break;
      // Trailing ';' before the terminator is legal Turtle.
      while (cur_.accept_punct(";")) {
      }
      if (cur_.peek().is_punct(".")) break;
    }
    cur_.expect_punct(".");
  }

  Term verb() {
    const Token& t = cur_.peek();
    if (t.kind == TokenKind::Word && t.text == "a") {
      cur_.advance();
      return Term::iri(ns::rdf_type);
    }
    Term p = resource(t, "predicate");
    cur_.advance();
    return p;
  }

  Term object() {
    const Token& t = cur_.peek();
    if (t.kind == TokenKind::String) {
      std::string value = t.text;
      SourcePosition pos = t.pos;
      cur_.advance();
      std::string datatype;
      if (cur_.accept_punct("^^")) {
        const Token& dt = cur_.peek();
        datatype = resource(dt, "datatype").text();
        cur_.advance();
      } else if (cur_.peek().kind == TokenKind::AtWord) {
        cur_.fail("language-tagged literals are not supported");
      }
      if (value.empty()) throw Error(ErrorCode::MalformedTerm, "empty literal", pos);
      return Term::literal(value, datatype);
    }
    Term o = resource(t, "object");
    cur_.advance();
    return o;
  }

  // IRI from an <iri> or prefixed-name token; does not advance.
  Term resource(const Token& t, const char* role) {
    if (t.kind == TokenKind::IriRef) return make_iri(t, t.text);
    if (t.kind == TokenKind::PrefixedName) {
      if (!doc_.prefixes.find(t.prefix)) {
        throw Error(ErrorCode::UnknownPrefix, "unknown prefix '" + t.prefix + ":'", t.pos, {t.prefix});
      }
      return make_iri(t, doc_.prefixes.expand(t.prefix, t.text));
    }
    if (t.kind == TokenKind::String) TokenCursor::fail_at(t, std::string("literal not allowed as ") + role);
    TokenCursor::fail_at(t, std::string("expected ") + role + " but found " + describe(t));
  }

  static Term make_iri(const Token& t, const std::string& text) {
    if (!rdf::is_valid_iri(text)) TokenCursor::fail_at(t, "malformed IRI");
    return Term::iri(text);
  }

  TokenCursor cur_;
  Document doc_;
};

std::string render_term(const Term& t, const PrefixMap& prefixes) {
  if (t.is_literal()) {
    std::string out = escape_literal(t.text());
    if (!t.datatype().empty()) out += "^^" + render_term(Term::iri(t.datatype()), prefixes);
    return out;
  }
  if (auto compact = prefixes.compact(t.text())) return *compact;
  return "<" + t.text() + ">";
}

std::string ntriples_term(const Term& t) {
  if (t.is_literal()) {
    std::string out = escape_literal(t.text());
    if (!t.datatype().empty()) out += "^^<" + t.datatype() + ">";
    return out;
  }
  return "<" + t.text() + ">";
}

}  // namespace

PrefixMap PrefixMap::standard() {
  PrefixMap m;
  m.set("rdf", std::string(ns::rdf));
  m.set("rdfs", std::string(ns::rdfs));
  m.set("owl", std::string(ns::owl));
  m.set("xsd", std::string(ns::xsd));
  return m;
}

void PrefixMap::set(std::string label, std::string namespace_iri) {
  if (!valid_label(label)) throw Error(ErrorCode::MalformedTerm, "invalid prefix label '" + label + "'");
  if (!rdf::is_valid_iri(namespace_iri)) {
    throw Error(ErrorCode::MalformedTerm, "invalid namespace IRI '" + namespace_iri + "'");
  }
  entries_[std::move(label)] = std::move(namespace_iri);
}

const std::string* PrefixMap::find(std::string_view label) const {
  auto it = entries_.find(std::string(label));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string PrefixMap::expand(std::string_view label, std::string_view local) const {
  const std::string* ns = find(label);
  if (!ns) {
    throw Error(ErrorCode::UnknownPrefix, "unknown prefix '" + std::string(label) + ":'", {std::string(label)});
  }
  return *ns + std::string(local);
}

std::optional<std::string> PrefixMap::compact(std::string_view iri) const {
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    const std::string& ns = entry.second;
    if (iri.size() < ns.size() || iri.compare(0, ns.size(), ns) != 0) continue;
    if (!valid_local(iri.substr(ns.size()))) continue;
    if (!best || ns.size() > best->second.size()) best = &entry;
  }
  if (!best) return std::nullopt;
  return best->first + ":" + std::string(iri.substr(best->second.size()));
}

void PrefixMap::merge(const PrefixMap& other) {
  for (const auto& [label, ns] : other.entries_) entries_[label] = ns;
}

Document parse_turtle(std::string_view text) { return TurtleParser(text).run(); }

std::string serialize_turtle(const Document& doc) {
  std::ostringstream out;
  for (const auto& [label, ns] : doc.prefixes.entries()) {
    out << "@prefix " << label << ": <" << ns << "> .\n";
  }
  std::vector<Triple> sorted = doc.triples;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!doc.prefixes.empty() && !sorted.empty()) out << '\n';
  for (const Triple& t : sorted) {
    out << render_term(t.subject, doc.prefixes) << ' ';
    if (t.predicate.text() == ns::rdf_type) {
      out << 'a';
    } else {
      out << render_term(t.predicate, doc.prefixes);
    }
    out << ' ' << render_term(t.object, doc.prefixes) << " .\n";
  }
  return out.str();
}

std::string to_ntriples(const Triple& t) {
  return ntriples_term(t.subject) + " " + ntriples_term(t.predicate) + " " + ntriples_term(t.object) + " .";
}

std::string content_hash(std::vector<Triple> triples) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const Triple& t : triples) lines.push_back(to_ntriples(t));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string canonical;
  for (const std::string& line : lines) {
    canonical += line;
    canonical += '\n';
  }
  return sha256_hex(canonical);
}

std::string content_hash(const Document& doc) { return content_hash(doc.triples); }

std::string content_hash(const rdf::GraphView& graph) { return content_hash(graph.all()); }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Internal, "SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace agilekb::turtle
