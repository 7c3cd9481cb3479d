#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rdf/triple_store.hpp"
#include "turtle/turtle.hpp"

namespace agilekb::reasoner {

// Horn rule: when every body pattern matches under one substitution, every
// head pattern (instantiated with it) is asserted.
struct Rule {
  std::string name;
  std::vector<rdf::TriplePattern> body;
  std::vector<rdf::TriplePattern> head;
};

struct RuleSet {
  std::vector<Rule> rules;

  const Rule* find(std::string_view name) const;
};

// Rule file grammar, one rule per line:
//
//   @prefix ex: <http://example.org/> .
//   RULE name: IF (s p o) AND (s p o) THEN (s p o) [AND (s p o)]
//
// Positions are <iri>, prefix:local, ?var, or (object only) "literal".
// `a` abbreviates rdf:type. The standard rdf/rdfs/owl/xsd prefixes and
// `predefined` are in scope before the file's own @prefix lines.
// Errors: Syntax (with line), UnknownPrefix, UnsafeRule (head variable not in
// body; details[0] is the variable), DuplicateRule.
RuleSet parse_rules(std::string_view text, const turtle::PrefixMap& predefined = {});

// Which round derived each statement. Asserted statements have no entry and
// count as rank 0. A provenance can sit on top of a parent (the base store's
// closure below an overlay's closure); ranks continue above the parent's.
class Provenance {
 public:
  Provenance() = default;
  explicit Provenance(const Provenance* parent)
      : parent_(parent), rank_offset_(parent ? parent->max_rank() : 0) {}

  // 0 when `t` is not derived anywhere in the chain.
  std::uint32_t rank(const rdf::Triple& t) const;
  bool is_derived(const rdf::Triple& t) const { return rank(t) != 0; }
  std::uint32_t max_rank() const noexcept { return max_rank_ > rank_offset_ ? max_rank_ : rank_offset_; }
  std::uint32_t rank_offset() const noexcept { return rank_offset_; }
  const std::map<rdf::Triple, std::uint32_t>& own() const noexcept { return ranks_; }

  void record(const rdf::Triple& t, std::uint32_t rank);

 private:
  const Provenance* parent_ = nullptr;
  std::uint32_t rank_offset_ = 0;
  std::uint32_t max_rank_ = 0;
  std::map<rdf::Triple, std::uint32_t> ranks_;
};

struct SaturationOptions {
  // ResourceLimit once more than this many statements would be derived.
  std::size_t max_derived = 1'000'000;
  // Statements to treat as the first delta. When null every statement in the
  // graph is the first delta. Passing only the newly asserted statements is
  // valid when the rest of the graph is already closed under the same rules.
  const std::vector<rdf::Triple>* initial_delta = nullptr;
  // Closure of the statements below (see Provenance).
  const Provenance* parent = nullptr;
};

struct SaturationResult {
  std::vector<rdf::Triple> derived;  // sorted; exactly the statements added
  Provenance provenance;
  std::size_t rounds = 0;
};

// Semi-naive forward chaining to the least fixpoint. Every round joins at
// least one statement from the previous round's delta. On ResourceLimit the
// graph keeps the rounds completed so far.
SaturationResult saturate(rdf::MutableGraph& graph, const RuleSet& rules, const SaturationOptions& options = {});

struct DerivationTrace {
  rdf::Triple conclusion;
  std::string rule_name;
  std::vector<rdf::Triple> premises;  // body order

  friend bool operator==(const DerivationTrace&, const DerivationTrace&) = default;
};

// All one-step derivations of `t` whose premises were available strictly
// before `t` was derived, which makes every chain of traces bottom out in
// asserted statements. Empty for asserted statements.
// Errors: NotFound when `t` is not in the graph.
std::vector<DerivationTrace> explain(const rdf::GraphView& graph, const RuleSet& rules,
                                     const Provenance& provenance, const rdf::Triple& t);

// A trace expanded recursively: each derived premise carries its own first
// trace. Leaves (asserted statements) have an empty rule name.
struct TraceNode {
  rdf::Triple triple;
  std::string rule_name;
  std::vector<TraceNode> premises;
};

TraceNode expand_trace(const rdf::GraphView& graph, const RuleSet& rules, const Provenance& provenance,
                       const DerivationTrace& trace);

}  // namespace agilekb::reasoner
