#pragma once

#include <string>
#include <vector>

#include "reasoner/rules.hpp"
#include "support/oracles.hpp"

namespace agilekb::testing {

// Safe random rules over a vocabulary: every head variable occurs in the body.
inline reasoner::RuleSet random_rules(Rng& rng, const Vocabulary& vocab, std::size_t count) {
  reasoner::RuleSet rs;
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  for (std::size_t i = 0; i < count; ++i) {
    reasoner::Rule r;
    r.name = "r" + std::to_string(i);
    std::vector<std::string> body_vars;
    const std::size_t body = rng.between(1, 3);
    auto slot = [&](bool predicate) -> Term {
      if (predicate) return rng.chance(0.85) ? rng.pick(vocab.predicates) : Term::variable(rng.pick(names));
      if (rng.chance(0.2)) return rng.pick(vocab.nodes);
      return Term::variable(rng.pick(names));
    };
    for (std::size_t b = 0; b < body; ++b) {
      rdf::TriplePattern p{slot(false), slot(true), slot(false)};
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        if (t->is_variable()) body_vars.push_back(t->text());
      }
      r.body.push_back(p);
    }
    if (body_vars.empty()) {
      r.body[0].subject = Term::variable("a");
      body_vars.push_back("a");
    }
    auto head_slot = [&](bool predicate) -> Term {
      if (predicate) return rng.pick(vocab.predicates);
      if (rng.chance(0.15)) return rng.pick(vocab.nodes);
      return Term::variable(rng.pick(body_vars));
    };
    r.head.push_back({head_slot(false), head_slot(true), head_slot(false)});
    rs.rules.push_back(r);
  }
  return rs;
}

}  // namespace agilekb::testing
