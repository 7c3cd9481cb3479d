#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace agilekb::rdf {

enum class TermKind : std::uint8_t { Iri = 0, Literal = 1, Variable = 2 };

// An IRI, a literal, or a query/rule variable. Terms are plain values: two
// terms are equal iff kind, text and datatype are equal. Ordering is by text
// first (code-point order), then kind (IRI < Literal < Variable), then
// datatype, so sorted output reads alphabetically and IRIs win ties.
//
// A default-constructed Term is the empty IRI. It never passes validation and
// only serves as the lowest key for index range scans.
class Term {
 public:
  Term() = default;

  // Factories validate and throw Error(MalformedTerm).
  static Term iri(std::string_view text);
  static Term literal(std::string_view value, std::string_view datatype = {});
  static Term variable(std::string_view name);

  TermKind kind() const noexcept { return kind_; }
  const std::string& text() const noexcept { return text_; }
  // Empty for plain string literals and for non-literals.
  const std::string& datatype() const noexcept { return datatype_; }

  bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
  bool is_literal() const noexcept { return kind_ == TermKind::Literal; }
  bool is_variable() const noexcept { return kind_ == TermKind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  Term(TermKind kind, std::string text, std::string datatype)
      : kind_(kind), text_(std::move(text)), datatype_(std::move(datatype)) {}

  TermKind kind_ = TermKind::Iri;
  std::string text_;
  std::string datatype_;
};

// Validating constructor over all kinds. `datatype` is only legal for literals.
Term intern_term(TermKind kind, std::string_view text,
                 std::optional<std::string_view> datatype = std::nullopt);

// True when `text` is usable as an IRI (non-empty, no whitespace or control
// characters, no angle brackets).
bool is_valid_iri(std::string_view text) noexcept;

// Debug/diagnostic rendering: <iri>, "literal"^^<dt>, ?var.
std::string to_display(const Term& term);

}  // namespace agilekb::rdf
