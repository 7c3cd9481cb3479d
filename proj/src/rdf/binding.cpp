#include "rdf/binding.hpp"

#include <algorithm>

namespace agilekb::rdf {

int VariableTable::slot_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int VariableTable::add(std::string_view name) {
  int slot = slot_of(name);
  if (slot >= 0) return slot;
  names_.emplace_back(name);
  return static_cast<int>(names_.size() - 1);
}

CompiledPattern CompiledPattern::compile(const TriplePattern& p, VariableTable& vars) {
  CompiledPattern out;
  const Term* positions[3] = {&p.subject, &p.predicate, &p.object};
  for (int i = 0; i < 3; ++i) {
    if (positions[i]->is_variable()) {
      out.slots[i] = vars.add(positions[i]->text());
    } else {
      out.constants[i] = *positions[i];
    }
  }
  return out;
}

TriplePattern CompiledPattern::substitute(const Binding& b) const {
  std::array<Term, 3> terms;
  for (int i = 0; i < 3; ++i) {
    if (slots[i] < 0) {
      terms[i] = constants[i];
    } else if (b[slots[i]]) {
      terms[i] = *b[slots[i]];
    } else {
      terms[i] = Term::variable("v" + std::to_string(slots[i]));
    }
  }
  return {terms[0], terms[1], terms[2]};
}

bool CompiledPattern::unify(const Triple& t, Binding& b) const {
  const Term* values[3] = {&t.subject, &t.predicate, &t.object};
  int newly[3];
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    bool ok = true;
    if (slots[i] < 0) {
      ok = constants[i] == *values[i];
    } else if (b[slots[i]]) {
      ok = *b[slots[i]] == *values[i];
    } else {
      b[slots[i]] = *values[i];
      newly[n++] = slots[i];
    }
    if (!ok) {
      for (int k = 0; k < n; ++k) b[newly[k]].reset();
      return false;
    }
  }
  return true;
}

std::optional<Triple> CompiledPattern::instantiate(const Binding& b) const {
  std::array<Term, 3> terms;
  for (int i = 0; i < 3; ++i) {
    if (slots[i] < 0) {
      terms[i] = constants[i];
    } else if (b[slots[i]]) {
      terms[i] = *b[slots[i]];
    } else {
      return std::nullopt;
    }
  }
  if (!is_valid_triple(terms[0], terms[1], terms[2])) return std::nullopt;
  return Triple{terms[0], terms[1], terms[2]};
}

std::size_t CompiledPattern::variable_count() const noexcept {
  std::size_t n = 0;
  for (int i = 0; i < 3; ++i) {
    bool repeated = false;
    for (int j = 0; j < i; ++j) repeated |= slots[j] == slots[i];
    if (slots[i] >= 0 && !repeated) ++n;
  }
  return n;
}

std::size_t CompiledPattern::unbound_count(const Binding& b) const noexcept {
  std::size_t n = 0;
  for (int i = 0; i < 3; ++i) {
    bool repeated = false;
    for (int j = 0; j < i; ++j) repeated |= slots[j] == slots[i];
    if (slots[i] >= 0 && !repeated && !b[slots[i]]) ++n;
  }
  return n;
}

}  // namespace agilekb::rdf
