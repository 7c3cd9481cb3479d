#include <algorithm>
#include <functional>
#include <regex>
#include <set>

#include "common/error.hpp"
#include "rdf/binding.hpp"
#include "sparql/query.hpp"

namespace agilekb::sparql {

using rdf::Binding;
using rdf::CompiledPattern;
using rdf::Term;

namespace {

struct CompiledFilter {
  int slot;
  FilterExpr::Kind kind;
  Term value;
  std::regex regex;

  bool accepts(const Term& bound) const {
    switch (kind) {
      case FilterExpr::Kind::Equals: return bound == value;
      case FilterExpr::Kind::NotEquals: return bound != value;
      case FilterExpr::Kind::Regex: return std::regex_search(bound.text(), regex);
    }
    return false;
  }
};

class Evaluator {
 public:
  Evaluator(const rdf::GraphView& graph, const Query& q) : graph_(graph) {
    for (const auto& p : q.patterns) patterns_.push_back(CompiledPattern::compile(p, vars_));
    for (const auto& f : q.filters) {
      CompiledFilter c{vars_.slot_of(f.variable), f.kind, f.value, {}};
      if (c.slot < 0) throw Error(ErrorCode::UnboundVariable, "filter variable ?" + f.variable + " is unbound");
      if (f.kind == FilterExpr::Kind::Regex) {
        try {
          c.regex = std::regex(f.pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
          throw Error(ErrorCode::Syntax, "invalid regex \"" + f.pattern + "\": " + e.what());
        }
      }
      filters_.push_back(std::move(c));
    }
  }

  template <typename Sink>
  void run(Sink&& sink) {
    std::vector<bool> used(patterns_.size(), false);
    Binding b(vars_.size());
    step(used, patterns_.size(), b, sink);
  }

  int slot_of(const std::string& name) const { return vars_.slot_of(name); }

 private:
  bool filters_pass(const Binding& b) const {
    for (const auto& f : filters_) {
      if (b[f.slot] && !f.accepts(*b[f.slot])) return false;
    }
    return true;
  }

  // Greedy join: next pattern is the one with the fewest unbound variables,
  // ties broken by position in the query.
  template <typename Sink>
  void step(std::vector<bool>& used, std::size_t remaining, const Binding& b, Sink& sink) {
    if (remaining == 0) {
      sink(b);
      return;
    }
    std::size_t best = patterns_.size();
    std::size_t best_unbound = 4;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (used[i]) continue;
      std::size_t unbound = patterns_[i].unbound_count(b);
      if (unbound < best_unbound) {
        best = i;
        best_unbound = unbound;
      }
    }
    used[best] = true;
    const CompiledPattern& p = patterns_[best];
    for (const rdf::Triple& t : graph_.match(p.substitute(b))) {
      Binding next = b;
      if (p.unify(t, next) && filters_pass(next)) step(used, remaining - 1, next, sink);
    }
    used[best] = false;
  }

  const rdf::GraphView& graph_;
  rdf::VariableTable vars_;
  std::vector<CompiledPattern> patterns_;
  std::vector<CompiledFilter> filters_;
};

}  // namespace

ResultTable evaluate(const rdf::GraphView& graph, const Query& q) {
  Evaluator ev(graph, q);
  ResultTable table;
  table.columns = q.columns();
  std::vector<int> slots;
  for (const auto& c : table.columns) {
    int slot = ev.slot_of(c);
    if (slot < 0) throw Error(ErrorCode::UnboundVariable, "variable ?" + c + " is unbound", {c});
    slots.push_back(slot);
  }
  const int key_slot = q.order_by ? ev.slot_of(q.order_by->variable) : -1;
  if (q.order_by && key_slot < 0) {
    throw Error(ErrorCode::UnboundVariable, "variable ?" + q.order_by->variable + " is unbound",
                {q.order_by->variable});
  }

  // The sort key travels with each row so ORDER BY works on variables that
  // are not projected.
  std::vector<std::pair<Term, std::vector<Term>>> solutions;
  std::set<std::vector<Term>> seen;
  ev.run([&](const Binding& b) {
    std::vector<Term> row;
    row.reserve(slots.size());
    for (int s : slots) row.push_back(*b[s]);
    if (q.distinct && !seen.insert(row).second) return;
    solutions.emplace_back(key_slot >= 0 ? *b[key_slot] : Term{}, std::move(row));
  });

  if (q.order_by) {
    const bool asc = q.order_by->ascending;
    std::stable_sort(solutions.begin(), solutions.end(),
                     [asc](const auto& a, const auto& b) { return asc ? a.first < b.first : b.first < a.first; });
  }
  if (q.limit && solutions.size() > *q.limit) solutions.resize(*q.limit);
  table.rows.reserve(solutions.size());
  for (auto& s : solutions) table.rows.push_back(std::move(s.second));
  return table;
}

}  // namespace agilekb::sparql
