#include <gtest/gtest.h>

#include "common/error.hpp"
#include "rdf/triple_store.hpp"
#include "sparql/query.hpp"
#include "support/oracles.hpp"
#include "support/random_queries.hpp"
#include "turtle/turtle.hpp"

namespace agilekb {
namespace {

using rdf::Term;
using rdf::Triple;
using rdf::TripleStore;

const std::string kOnto = "http://obama.kb/onto#";
Term onto(const std::string& local) { return Term::iri(kOnto + local); }

turtle::PrefixMap onto_prefixes() {
  turtle::PrefixMap p;
  p.set("", kOnto);
  return p;
}

TripleStore seed_store() {
  TripleStore store;
  for (const auto& t : turtle::parse_turtle(turtle::read_file(AGILEKB_TEST_DATA_DIR "/seed.ttl")).triples) store.insert(t);
  return store;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::Internal;
}

const char* kFig4 = "SELECT ?sol WHERE { :DailyMeetings :encounter ?prob . ?sol :solve ?prob }";

TEST(ParseQuery, SolutionsQueryShape) {
  auto q = sparql::parse_query(kFig4, onto_prefixes());
  EXPECT_EQ(q.patterns.size(), 2u);
  EXPECT_EQ(q.projection, std::vector<std::string>{"sol"});
  EXPECT_FALSE(q.select_all);
}

TEST(ParseQuery, Star) {
  auto q = sparql::parse_query("SELECT * WHERE { ?s ?p ?o }");
  EXPECT_TRUE(q.select_all);
  EXPECT_EQ(q.patterns.size(), 1u);
  EXPECT_EQ(q.columns(), (std::vector<std::string>{"s", "p", "o"}));
}

TEST(ParseQuery, UnboundProjection) {
  try {
    sparql::parse_query("SELECT ?x WHERE { ?s ?p ?o }");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundVariable);
    ASSERT_FALSE(e.details().empty());
    EXPECT_EQ(e.details()[0], "x");
  }
}

TEST(ParseQuery, UnboundOrderAndFilter) {
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT ?s WHERE { ?s ?p ?o } ORDER BY ?z"); }),
            ErrorCode::UnboundVariable);
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT ?s WHERE { ?s ?p ?o FILTER(?q = <urn:x>) }"); }),
            ErrorCode::UnboundVariable);
}

TEST(ParseQuery, KeywordsAreCaseInsensitive) {
  auto q = sparql::parse_query(
      "prefix ex: <http://ex.org/> select distinct ?s where { ?s ex:p ?o filter(regex(?o, \"a\")) } "
      "order by desc(?s) limit 3");
  EXPECT_TRUE(q.distinct);
  ASSERT_TRUE(q.order_by.has_value());
  EXPECT_FALSE(q.order_by->ascending);
  EXPECT_EQ(q.limit, std::optional<std::size_t>(3));
  ASSERT_EQ(q.filters.size(), 1u);
  EXPECT_EQ(q.filters[0].kind, sparql::FilterExpr::Kind::Regex);
}

TEST(ParseQuery, Errors) {
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT ?s WHERE { ?s nope:p ?o }"); }), ErrorCode::UnknownPrefix);
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT ?s WHERE { }"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT WHERE { ?s ?p ?o }"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT ?s WHERE { ?s ?p ?o } LIMIT 0"); }), ErrorCode::Syntax);
  EXPECT_EQ(code_of([] { sparql::parse_query("SELECT ?s WHERE { ?s ?p ?o OPTIONAL { ?s ?p ?o } }"); }),
            ErrorCode::Syntax);
  try {
    sparql::parse_query("SELECT ?s\nWHERE { ?s ?p }");
    FAIL();
  } catch (const Error& e) {
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(e.position()->line, 2u);
  }
}

TEST(Evaluate, EmptyStore) {
  TripleStore store;
  auto t = sparql::evaluate(store, sparql::parse_query("SELECT * WHERE { ?s ?p ?o }"));
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(t.columns.size(), 3u);
}

TEST(Evaluate, SolutionsForDailyMeetings) {
  TripleStore store = seed_store();
  auto q = sparql::parse_query(kFig4, onto_prefixes());
  auto t = sparql::evaluate(store, q);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][0], onto("Timeboxing"));
  EXPECT_EQ(testing::check_against_oracle(store.all(), q, t), "");
}

TEST(Evaluate, DistinctAdoptedPractice) {
  TripleStore store;
  store.insert(Triple::make(onto("TeamA"), onto("adopt"), onto("DailyMeetings")));
  store.insert(Triple::make(onto("TeamB"), onto("adopt"), onto("DailyMeetings")));
  auto plain = sparql::evaluate(store, sparql::parse_query("SELECT ?p WHERE { ?t :adopt ?p }", onto_prefixes()));
  auto distinct =
      sparql::evaluate(store, sparql::parse_query("SELECT DISTINCT ?p WHERE { ?t :adopt ?p }", onto_prefixes()));
  EXPECT_EQ(plain.rows.size(), 2u);
  ASSERT_EQ(distinct.rows.size(), 1u);
  EXPECT_EQ(distinct.rows[0][0], onto("DailyMeetings"));
}

TEST(Evaluate, FiltersAndOrder) {
  TripleStore store = seed_store();
  auto t = sparql::evaluate(store, sparql::parse_query("SELECT ?p ?n WHERE { ?p a :Practice . ?p :name ?n "
                                                       "FILTER(regex(?n, \"^Team\")) }",
                                                       onto_prefixes()));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][0], onto("Team42_SprintReview"));

  auto desc = sparql::evaluate(
      store, sparql::parse_query("SELECT ?p WHERE { ?p a :Practice } ORDER BY DESC(?p)", onto_prefixes()));
  ASSERT_EQ(desc.rows.size(), 2u);
  EXPECT_EQ(desc.rows[0][0], onto("Team42_SprintReview"));

  auto ne = sparql::evaluate(
      store, sparql::parse_query("SELECT ?p WHERE { ?p a :Practice FILTER(?p != :DailyMeetings) }", onto_prefixes()));
  ASSERT_EQ(ne.rows.size(), 1u);
}

TEST(Evaluate, StaleOverlay) {
  TripleStore store = seed_store();
  rdf::OverlayStore ov(store);
  store.insert(Triple::make(onto("x"), onto("y"), onto("z")));
  EXPECT_EQ(code_of([&] { sparql::evaluate(ov, sparql::parse_query("SELECT * WHERE { ?s ?p ?o }")); }),
            ErrorCode::StaleOverlay);
}

TEST(Regex, SupportedSubset) {
  EXPECT_NO_THROW(sparql::validate_regex("^a[b-c]*(d|e)?\\.$"));
  EXPECT_THROW(sparql::validate_regex("(?=x)"), Error);
  EXPECT_THROW(sparql::validate_regex("a{2}"), Error);
  EXPECT_THROW(sparql::validate_regex("(a"), Error);
  EXPECT_THROW(sparql::validate_regex("a)"), Error);
  EXPECT_THROW(sparql::validate_regex("*a"), Error);
  EXPECT_THROW(sparql::validate_regex("[ab"), Error);
  EXPECT_NO_THROW(sparql::validate_regex("[a\\]]|\\{"));
}

TEST(SparqlProperty, AgreesWithBruteForce) {
  testing::Rng rng(41);
  for (int round = 0; round < 400; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 7), rng.between(1, 3), rng.between(0, 3));
    auto facts = testing::random_triples(rng, vocab, rng.between(0, 60));
    TripleStore store;
    for (const auto& t : facts) store.insert(t);
    auto rq = testing::random_query(rng, vocab);
    auto q = sparql::parse_query(rq.text);
    auto result = sparql::evaluate(store, q);
    ASSERT_EQ(testing::check_against_oracle(facts, q, result), "") << rq.text;
  }
}

TEST(SparqlProperty, PatternOrderDoesNotMatter) {
  testing::Rng rng(42);
  for (int round = 0; round < 200; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 7), rng.between(1, 3), 2);
    auto facts = testing::random_triples(rng, vocab, rng.between(0, 80));
    TripleStore store;
    for (const auto& t : facts) store.insert(t);
    auto q = sparql::parse_query(testing::random_query(rng, vocab).text);
    q.limit.reset();
    auto permuted = q;
    std::shuffle(permuted.patterns.begin(), permuted.patterns.end(), rng.engine());
    auto a = sparql::evaluate(store, q);
    auto b = sparql::evaluate(store, permuted);
    // SELECT * columns follow pattern order, so line rows up by name.
    std::vector<testing::Row> b_rows;
    for (const auto& row : b.rows) {
      testing::Row r;
      for (const auto& c : a.columns) {
        r.push_back(row[std::find(b.columns.begin(), b.columns.end(), c) - b.columns.begin()]);
      }
      b_rows.push_back(r);
    }
    ASSERT_EQ(testing::multiset(a.rows), testing::multiset(b_rows));
  }
}

TEST(SparqlProperty, LimitIsPrefixOfOrderedResult) {
  testing::Rng rng(43);
  for (int round = 0; round < 200; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 7), rng.between(1, 3), 2);
    auto facts = testing::random_triples(rng, vocab, rng.between(0, 80));
    TripleStore store;
    for (const auto& t : facts) store.insert(t);
    auto q = sparql::parse_query(testing::random_query(rng, vocab).text);
    if (!q.order_by) q.order_by = sparql::OrderBy{q.columns().front(), rng.chance(0.5)};
    q.limit.reset();
    auto full = sparql::evaluate(store, q);
    const std::size_t n = rng.between(1, 12);
    q.limit = n;
    auto cut = sparql::evaluate(store, q);
    ASSERT_EQ(cut.rows.size(), std::min(n, full.rows.size()));
    ASSERT_TRUE(std::equal(cut.rows.begin(), cut.rows.end(), full.rows.begin()));
  }
}

TEST(SparqlProperty, ProjectionSoundness) {
  testing::Rng rng(44);
  for (int round = 0; round < 100; ++round) {
    auto vocab = testing::Vocabulary::make(rng.between(2, 7), rng.between(1, 3), 2);
    auto facts = testing::random_triples(rng, vocab, rng.between(0, 80));
    TripleStore store;
    for (const auto& t : facts) store.insert(t);
    std::set<Term> terms;
    for (const auto& t : facts) terms.insert({t.subject, t.predicate, t.object});
    auto q = sparql::parse_query(testing::random_query(rng, vocab).text);
    for (const auto& row : sparql::evaluate(store, q).rows) {
      for (const auto& cell : row) ASSERT_TRUE(terms.count(cell));
    }
  }
}

}  // namespace
}  // namespace agilekb
