#include <algorithm>
#include <functional>
#include <set>

#include "common/error.hpp"
#include "rdf/binding.hpp"
#include "reasoner/rules.hpp"

namespace agilekb::reasoner {

using rdf::Binding;
using rdf::CompiledPattern;
using rdf::Triple;

namespace {

struct CompiledRule {
  const Rule* source;
  rdf::VariableTable vars;
  std::vector<CompiledPattern> body;
  std::vector<CompiledPattern> head;
};

std::vector<CompiledRule> compile(const RuleSet& rules) {
  std::vector<CompiledRule> out;
  out.reserve(rules.rules.size());
  for (const Rule& r : rules.rules) {
    CompiledRule c{&r, {}, {}, {}};
    for (const auto& p : r.body) c.body.push_back(CompiledPattern::compile(p, c.vars));
    for (const auto& p : r.head) c.head.push_back(CompiledPattern::compile(p, c.vars));
    out.push_back(std::move(c));
  }
  return out;
}

using Emit = std::function<void(const Binding&)>;

// Joins every body atom whose bit is set in `pending` against `graph`,
// choosing at each level the atom with the fewest unbound variables.
void join(const rdf::GraphView& graph, const std::vector<CompiledPattern>& body, std::uint64_t pending,
          const Binding& binding, const Emit& emit) {
  if (pending == 0) {
    emit(binding);
    return;
  }
  std::size_t best = body.size();
  std::size_t best_unbound = 4;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!(pending & (std::uint64_t{1} << i))) continue;
    std::size_t unbound = body[i].unbound_count(binding);
    if (unbound < best_unbound) {
      best = i;
      best_unbound = unbound;
    }
  }
  const CompiledPattern& atom = body[best];
  std::uint64_t rest = pending & ~(std::uint64_t{1} << best);
  for (const Triple& t : graph.match(atom.substitute(binding))) {
    Binding next = binding;
    if (atom.unify(t, next)) join(graph, body, rest, next, emit);
  }
}

std::uint64_t all_atoms(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

SaturationResult saturate(rdf::MutableGraph& graph, const RuleSet& rules, const SaturationOptions& options) {
  SaturationResult result{{}, Provenance(options.parent), 0};
  const std::vector<CompiledRule> compiled = compile(rules);
  for (const CompiledRule& rule : compiled) {
    if (rule.body.size() > 64) {
      throw Error(ErrorCode::ResourceLimit, "rule '" + rule.source->name + "' has more than 64 body atoms");
    }
  }

  std::vector<Triple> delta = options.initial_delta ? *options.initial_delta : graph.all();
  std::size_t derived_total = 0;
  const std::uint32_t offset = result.provenance.rank_offset();

  while (!delta.empty() && !compiled.empty()) {
    ++result.rounds;
    std::set<Triple> fresh;
    for (const CompiledRule& rule : compiled) {
      const Emit fire = [&](const Binding& b) {
        for (const CompiledPattern& h : rule.head) {
          std::optional<Triple> t = h.instantiate(b);
          if (!t || graph.contains(*t)) continue;
          if (fresh.insert(*t).second && derived_total + fresh.size() > options.max_derived) {
            throw Error(ErrorCode::ResourceLimit,
                        "saturation exceeded " + std::to_string(options.max_derived) + " derived statements");
          }
        }
      };
      const std::uint64_t every = all_atoms(rule.body.size());
      for (std::size_t i = 0; i < rule.body.size(); ++i) {
        const std::uint64_t others = every & ~(std::uint64_t{1} << i);
        for (const Triple& d : delta) {
          Binding b(rule.vars.size());
          if (rule.body[i].unify(d, b)) join(graph, rule.body, others, b, fire);
        }
      }
    }
    for (const Triple& t : fresh) {
      graph.insert(t);
      result.provenance.record(t, offset + static_cast<std::uint32_t>(result.rounds));
    }
    derived_total += fresh.size();
    result.derived.insert(result.derived.end(), fresh.begin(), fresh.end());
    delta.assign(fresh.begin(), fresh.end());
  }
  std::sort(result.derived.begin(), result.derived.end());
  return result;
}

std::vector<DerivationTrace> explain(const rdf::GraphView& graph, const RuleSet& rules,
                                     const Provenance& provenance, const Triple& t) {
  if (!graph.contains(t)) throw Error(ErrorCode::NotFound, "statement not in store: " + rdf::to_display(t));
  const std::uint32_t rank = provenance.rank(t);
  std::vector<DerivationTrace> out;
  if (rank == 0) return out;

  for (const CompiledRule& rule : compile(rules)) {
    for (const CompiledPattern& h : rule.head) {
      Binding b(rule.vars.size());
      if (!h.unify(t, b)) continue;
      join(graph, rule.body, all_atoms(rule.body.size()), b, [&](const Binding& full) {
        DerivationTrace trace{t, rule.source->name, {}};
        for (const CompiledPattern& atom : rule.body) {
          std::optional<Triple> premise = atom.instantiate(full);
          if (!premise || provenance.rank(*premise) >= rank) return;
          trace.premises.push_back(*premise);
        }
        if (std::find(out.begin(), out.end(), trace) == out.end()) out.push_back(std::move(trace));
      });
    }
  }
  return out;
}

TraceNode expand_trace(const rdf::GraphView& graph, const RuleSet& rules, const Provenance& provenance,
                       const DerivationTrace& trace) {
  TraceNode node{trace.conclusion, trace.rule_name, {}};
  for (const Triple& premise : trace.premises) {
    std::vector<DerivationTrace> sub = explain(graph, rules, provenance, premise);
    if (sub.empty()) {
      node.premises.push_back(TraceNode{premise, {}, {}});
    } else {
      node.premises.push_back(expand_trace(graph, rules, provenance, sub.front()));
    }
  }
  return node;
}

}  // namespace agilekb::reasoner
