#include "rdf/triple.hpp"

#include "common/error.hpp"

namespace agilekb::rdf {

bool is_valid_triple(const Term& subject, const Term& predicate, const Term& object) noexcept {
  return subject.is_iri() && predicate.is_iri() && !object.is_variable() &&
         !subject.text().empty() && !predicate.text().empty() && !object.text().empty();
}

Triple Triple::make(Term subject, Term predicate, Term object) {
  if (!is_valid_triple(subject, predicate, object)) {
    throw Error(ErrorCode::MalformedTerm,
                "invalid triple " + to_display(subject) + " " + to_display(predicate) + " " +
                    to_display(object));
  }
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

bool matches(const TriplePattern& p, const Triple& t) noexcept {
  return (p.subject.is_variable() || p.subject == t.subject) &&
         (p.predicate.is_variable() || p.predicate == t.predicate) &&
         (p.object.is_variable() || p.object == t.object);
}

std::string to_display(const Triple& t) {
  return to_display(t.subject) + " " + to_display(t.predicate) + " " + to_display(t.object);
}

}  // namespace agilekb::rdf
