#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdf/triple.hpp"

namespace agilekb::rdf {

// Maps variable names to dense slots for the join loops of the query engine
// and the reasoner.
class VariableTable {
 public:
  int slot_of(std::string_view name) const;  // -1 when unknown
  int add(std::string_view name);            // idempotent
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t slot) const { return names_.at(slot); }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

using Binding = std::vector<std::optional<Term>>;

// A triple pattern whose variables are resolved to slots. Constant positions
// keep their term; variable positions hold slot >= 0.
struct CompiledPattern {
  std::array<Term, 3> constants;
  std::array<int, 3> slots{-1, -1, -1};

  static CompiledPattern compile(const TriplePattern& p, VariableTable& vars);

  // Pattern with every bound slot replaced by its value.
  TriplePattern substitute(const Binding& b) const;

  // Extends `b` so that this pattern equals `t`. On failure `b` is left as it
  // was. Returns false when a constant or an existing binding disagrees.
  bool unify(const Triple& t, Binding& b) const;

  // Builds a triple from a fully bound binding; nullopt when the result would
  // violate the Triple invariants (e.g. a literal landed in subject position).
  std::optional<Triple> instantiate(const Binding& b) const;

  std::size_t variable_count() const noexcept;
  std::size_t unbound_count(const Binding& b) const noexcept;
};

}  // namespace agilekb::rdf
