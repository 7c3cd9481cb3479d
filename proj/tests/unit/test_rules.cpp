#include <gtest/gtest.h>

#include "common/error.hpp"
#include "reasoner/rules.hpp"
#include "support/oracles.hpp"
#include "support/random_rules.hpp"
#include "turtle/turtle.hpp"

namespace agilekb {
namespace {

using rdf::Term;
using rdf::Triple;
using rdf::TriplePattern;
using rdf::TripleStore;

const std::string kOnto = "http://obama.kb/onto#";
Term onto(const std::string& local) { return Term::iri(kOnto + local); }
Term type() { return Term::iri(turtle::ns::rdf_type); }

turtle::PrefixMap onto_prefixes() {
  turtle::PrefixMap p;
  p.set("", kOnto);
  return p;
}

std::set<Triple> contents(const rdf::GraphView& g) {
  auto all = g.all();
  return {all.begin(), all.end()};
}

TripleStore load_data() {
  TripleStore store;
  for (const char* f : {"/schema.ttl", "/seed.ttl", "/goals.ttl", "/factors.ttl"}) {
    auto doc = turtle::parse_turtle(turtle::read_file(std::string(AGILEKB_TEST_DATA_DIR) + f));
    for (const auto& t : doc.triples) store.insert(t);
  }
  return store;
}

reasoner::RuleSet default_rules() {
  return reasoner::parse_rules(turtle::read_file(AGILEKB_TEST_DATA_DIR "/rules/default.rules"));
}

TEST(Rules, ParseInverseRule) {
  auto rs = reasoner::parse_rules("RULE inv: IF (?x :achieve ?g) THEN (?g :achievedBy ?x)", onto_prefixes());
  ASSERT_EQ(rs.rules.size(), 1u);
  EXPECT_EQ(rs.rules[0].name, "inv");
  ASSERT_EQ(rs.rules[0].body.size(), 1u);
  EXPECT_EQ(rs.rules[0].body[0].predicate, onto("achieve"));
  EXPECT_EQ(rs.rules[0].head[0].subject, Term::variable("g"));
}

TEST(Rules, UnsafeRuleNamesVariable) {
  try {
    reasoner::parse_rules("RULE bad: IF (?x :p ?y) THEN (?x :q ?z)", onto_prefixes());
    FAIL() << "expected UnsafeRule";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsafeRule);
    ASSERT_FALSE(e.details().empty());
    EXPECT_EQ(e.details()[0], "z");
  }
}

TEST(Rules, DuplicateNames) {
  try {
    reasoner::parse_rules("RULE r: IF (?x :p ?y) THEN (?y :p ?x)\nRULE r: IF (?x :p ?y) THEN (?x :q ?y)\n",
                          onto_prefixes());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateRule);
  }
}

TEST(Rules, SyntaxErrorLine) {
  try {
    reasoner::parse_rules("# c\nRULE r: IF (?x :p ?y) THEN (?y :p ?x)\nRULE s IF (?x :p ?y) THEN (?y :p ?x)\n",
                          onto_prefixes());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(e.position()->line, 3u);
  }
}

TEST(Rules, EmptyFileAndEmptyRuleSet) {
  EXPECT_TRUE(reasoner::parse_rules("").rules.empty());
  EXPECT_TRUE(reasoner::parse_rules("# nothing\n\n").rules.empty());
  TripleStore store = load_data();
  const auto before = contents(store);
  auto result = reasoner::saturate(store, reasoner::RuleSet{});
  EXPECT_TRUE(result.derived.empty());
  EXPECT_EQ(contents(store), before);
}

TEST(Saturate, InverseDerivation) {
  TripleStore store;
  store.insert(Triple::make(onto("DailyMeetings"), onto("achieve"), onto("Communication_Goal")));
  auto rs = reasoner::parse_rules("RULE inv: IF (?x :achieve ?g) THEN (?g :achievedBy ?x)", onto_prefixes());
  auto result = reasoner::saturate(store, rs);
  const Triple expected = Triple::make(onto("Communication_Goal"), onto("achievedBy"), onto("DailyMeetings"));
  EXPECT_TRUE(store.contains(expected));
  ASSERT_EQ(result.derived.size(), 1u);
  EXPECT_EQ(result.derived[0], expected);
  EXPECT_TRUE(result.provenance.is_derived(expected));
}

TEST(Saturate, SubclassChain) {
  TripleStore store;
  store.insert(Triple::make(onto("A"), Term::iri(std::string(turtle::ns::rdfs) + "subClassOf"), onto("B")));
  store.insert(Triple::make(onto("B"), Term::iri(std::string(turtle::ns::rdfs) + "subClassOf"), onto("C")));
  store.insert(Triple::make(onto("x"), type(), onto("A")));
  auto rules = default_rules();
  reasoner::saturate(store, rules);
  EXPECT_TRUE(store.contains(Triple::make(onto("x"), type(), onto("C"))));
  EXPECT_TRUE(store.contains(Triple::make(onto("A"), Term::iri(std::string(turtle::ns::rdfs) + "subClassOf"), onto("C"))));
}

TEST(Saturate, SeedClosureMatchesOracle) {
  TripleStore store = load_data();
  const auto asserted = store.all();
  auto rules = default_rules();
  auto result = reasoner::saturate(store, rules);
  auto expected = testing::naive_fixpoint(asserted, rules);
  EXPECT_EQ(contents(store), expected);
  EXPECT_EQ(result.derived.size(), expected.size() - asserted.size());
}

TEST(Saturate, ResourceLimit) {
  TripleStore store;
  for (int i = 0; i < 20; ++i) {
    store.insert(Triple::make(onto("n" + std::to_string(i)), onto("next"), onto("n" + std::to_string(i + 1))));
  }
  auto rs = reasoner::parse_rules("RULE t: IF (?a :next ?b) AND (?b :next ?c) THEN (?a :next ?c)", onto_prefixes());
  reasoner::SaturationOptions opts;
  opts.max_derived = 10;
  try {
    reasoner::saturate(store, rs, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
}

TEST(Explain, AssertedHasNoTrace) {
  TripleStore store;
  const Triple a = Triple::make(onto("DailyMeetings"), onto("achieve"), onto("Communication_Goal"));
  store.insert(a);
  auto rs = reasoner::parse_rules("RULE inv: IF (?x :achieve ?g) THEN (?g :achievedBy ?x)", onto_prefixes());
  auto result = reasoner::saturate(store, rs);
  EXPECT_TRUE(reasoner::explain(store, rs, result.provenance, a).empty());
}

TEST(Explain, OneStep) {
  TripleStore store;
  const Triple a = Triple::make(onto("DailyMeetings"), onto("achieve"), onto("Communication_Goal"));
  store.insert(a);
  auto rs = reasoner::parse_rules("RULE inv: IF (?x :achieve ?g) THEN (?g :achievedBy ?x)", onto_prefixes());
  auto result = reasoner::saturate(store, rs);
  const Triple d = Triple::make(onto("Communication_Goal"), onto("achievedBy"), onto("DailyMeetings"));
  auto traces = reasoner::explain(store, rs, result.provenance, d);
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].rule_name, "inv");
  EXPECT_EQ(traces[0].conclusion, d);
  EXPECT_EQ(traces[0].premises, std::vector<Triple>{a});
}

TEST(Explain, TwoStepsExpandToAsserted) {
  TripleStore store;
  const Triple a = Triple::make(onto("x"), onto("p"), onto("y"));
  store.insert(a);
  auto rs = reasoner::parse_rules(
      "RULE r1: IF (?a :p ?b) THEN (?a :q ?b)\n"
      "RULE r2: IF (?a :q ?b) THEN (?b :r ?a)\n",
      onto_prefixes());
  auto result = reasoner::saturate(store, rs);
  const Triple mid = Triple::make(onto("x"), onto("q"), onto("y"));
  const Triple top = Triple::make(onto("y"), onto("r"), onto("x"));
  auto traces = reasoner::explain(store, rs, result.provenance, top);
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].rule_name, "r2");
  EXPECT_EQ(traces[0].premises, std::vector<Triple>{mid});
  auto node = reasoner::expand_trace(store, rs, result.provenance, traces[0]);
  EXPECT_EQ(node.triple, top);
  ASSERT_EQ(node.premises.size(), 1u);
  EXPECT_EQ(node.premises[0].rule_name, "r1");
  ASSERT_EQ(node.premises[0].premises.size(), 1u);
  EXPECT_EQ(node.premises[0].premises[0].triple, a);
  EXPECT_TRUE(node.premises[0].premises[0].rule_name.empty());
}

TEST(Explain, MissingStatementIsNotFound) {
  TripleStore store;
  reasoner::Provenance prov;
  try {
    reasoner::explain(store, reasoner::RuleSet{}, prov, Triple::make(onto("a"), onto("b"), onto("c")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
}

// ---------------------------------------------------------------------------
// Random rule sets over a small vocabulary.

TEST(SaturateProperty, MatchesNaiveFixpoint) {
  testing::Rng rng(31);
  for (int round = 0; round < 150; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 8), rng.between(1, 4), rng.between(0, 2));
    auto asserted = testing::random_triples(rng, vocab, rng.between(0, 40));
    auto rules = testing::random_rules(rng, vocab, rng.between(0, 6));
    TripleStore store;
    for (const auto& t : asserted) store.insert(t);
    auto result = reasoner::saturate(store, rules);
    auto expected = testing::naive_fixpoint(asserted, rules);
    ASSERT_EQ(contents(store), expected) << "round " << round;

    std::set<Triple> derived(result.derived.begin(), result.derived.end());
    for (const auto& t : asserted) derived.insert(t);
    ASSERT_EQ(derived, expected);

    // Idempotent: a second pass derives nothing.
    auto again = reasoner::saturate(store, rules);
    ASSERT_TRUE(again.derived.empty());
    ASSERT_EQ(contents(store), expected);

    // Insertion order and rule order do not matter.
    auto shuffled_facts = asserted;
    std::shuffle(shuffled_facts.begin(), shuffled_facts.end(), rng.engine());
    auto shuffled_rules = rules;
    std::shuffle(shuffled_rules.rules.begin(), shuffled_rules.rules.end(), rng.engine());
    TripleStore other;
    for (const auto& t : shuffled_facts) other.insert(t);
    reasoner::saturate(other, shuffled_rules);
    ASSERT_EQ(contents(other), expected);

    // Every derived statement has a trace that bottoms out in asserted ones.
    for (const auto& t : result.derived) {
      auto traces = reasoner::explain(store, rules, result.provenance, t);
      ASSERT_FALSE(traces.empty());
      for (const auto& trace : traces) {
        for (const auto& premise : trace.premises) {
          ASSERT_LT(result.provenance.rank(premise), result.provenance.rank(t));
        }
      }
    }
  }
}

TEST(SaturateProperty, Monotone) {
  testing::Rng rng(32);
  for (int round = 0; round < 80; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 6), rng.between(1, 3), 1);
    auto facts = testing::random_triples(rng, vocab, rng.between(0, 30));
    auto rules = testing::random_rules(rng, vocab, rng.between(1, 4));
    const std::size_t cut = facts.empty() ? 0 : rng.below(facts.size());
    std::vector<Triple> subset(facts.begin(), facts.begin() + cut);
    TripleStore small, big;
    for (const auto& t : subset) small.insert(t);
    for (const auto& t : facts) big.insert(t);
    reasoner::saturate(small, rules);
    reasoner::saturate(big, rules);
    for (const auto& t : small.all()) ASSERT_TRUE(big.contains(t));
  }
}

// Incremental saturation over an overlay agrees with saturating a copy.
TEST(SaturateProperty, OverlayDeltaMatchesFullSaturation) {
  testing::Rng rng(33);
  for (int round = 0; round < 80; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 6), rng.between(1, 3), 1);
    auto base_facts = testing::random_triples(rng, vocab, rng.between(0, 30));
    auto rules = testing::random_rules(rng, vocab, rng.between(1, 5));
    TripleStore base;
    for (const auto& t : base_facts) base.insert(t);
    auto base_result = reasoner::saturate(base, rules);

    rdf::OverlayStore ov(base);
    std::vector<Triple> delta;
    for (const auto& t : testing::random_triples(rng, vocab, rng.between(0, 5))) {
      if (ov.insert(t)) delta.push_back(t);
    }
    TripleStore copy = base;
    for (const auto& t : delta) copy.insert(t);

    reasoner::SaturationOptions opts;
    opts.initial_delta = &delta;
    opts.parent = &base_result.provenance;
    reasoner::saturate(ov, rules, opts);
    reasoner::saturate(copy, rules);
    ASSERT_EQ(contents(ov), contents(copy));
  }
}

}  // namespace
}  // namespace agilekb
