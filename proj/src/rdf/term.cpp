#include "rdf/term.hpp"

#include "common/error.hpp"

namespace agilekb::rdf {

bool is_valid_iri(std::string_view text) noexcept {
  if (text.empty()) return false;
  for (unsigned char c : text) {
    if (c <= 0x20 || c == 0x7f || c == '<' || c == '>' || c == '"') return false;
  }
  return true;
}

namespace {

bool is_valid_variable(std::string_view name) noexcept {
  if (name.empty()) return false;
  for (unsigned char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c >= 0x80;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Term Term::iri(std::string_view text) {
  if (!is_valid_iri(text)) {
    throw Error(ErrorCode::MalformedTerm,
                text.empty() ? std::string("empty IRI") : "malformed IRI '" + std::string(text) + "'");
  }
  return Term(TermKind::Iri, std::string(text), {});
}

Term Term::literal(std::string_view value, std::string_view datatype) {
  if (value.empty()) throw Error(ErrorCode::MalformedTerm, "empty literal");
  if (!datatype.empty() && !is_valid_iri(datatype)) {
    throw Error(ErrorCode::MalformedTerm, "malformed datatype IRI '" + std::string(datatype) + "'");
  }
  return Term(TermKind::Literal, std::string(value), std::string(datatype));
}

Term Term::variable(std::string_view name) {
  if (!is_valid_variable(name)) {
    throw Error(ErrorCode::MalformedTerm, "malformed variable name '" + std::string(name) + "'");
  }
  return Term(TermKind::Variable, std::string(name), {});
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (auto c = a.text_.compare(b.text_); c != 0) return c <=> 0;
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  return a.datatype_.compare(b.datatype_) <=> 0;
}

Term intern_term(TermKind kind, std::string_view text, std::optional<std::string_view> datatype) {
  if (datatype && kind != TermKind::Literal) {
    throw Error(ErrorCode::MalformedTerm, "datatype given for a non-literal term");
  }
  switch (kind) {
    case TermKind::Iri: return Term::iri(text);
    case TermKind::Literal: return Term::literal(text, datatype.value_or(std::string_view{}));
    case TermKind::Variable: return Term::variable(text);
  }
  throw Error(ErrorCode::Internal, "unknown term kind");
}

std::string to_display(const Term& term) {
  switch (term.kind()) {
    case TermKind::Iri: return "<" + term.text() + ">";
    case TermKind::Variable: return "?" + term.text();
    case TermKind::Literal: {
      std::string out = "\"";
      for (char c : term.text()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      if (!term.datatype().empty()) out += "^^<" + term.datatype() + ">";
      return out;
    }
  }
  return {};
}

}  // namespace agilekb::rdf
