#pragma once

#include <compare>
#include <string>

#include "rdf/term.hpp"

namespace agilekb::rdf {

// A stored statement. Construction through make() enforces the positional
// invariants (IRI subject and predicate, IRI or literal object).
struct Triple {
  Term subject;
  Term predicate;
  Term object;

  static Triple make(Term subject, Term predicate, Term object);

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Any position may hold a variable, which acts as a wildcard for match().
struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  static TriplePattern of(const Triple& t) { return {t.subject, t.predicate, t.object}; }

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

// True when a Triple with these positions would satisfy the Triple invariants.
bool is_valid_triple(const Term& subject, const Term& predicate, const Term& object) noexcept;

// Non-variable positions of `pattern` equal the corresponding positions of `t`.
bool matches(const TriplePattern& pattern, const Triple& t) noexcept;

std::string to_display(const Triple& t);

}  // namespace agilekb::rdf
