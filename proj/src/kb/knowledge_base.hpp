#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kb/catalog.hpp"
#include "kb/concerns.hpp"
#include "kb/report.hpp"
#include "kb/result_cache.hpp"
#include "kb/schema.hpp"
#include "reasoner/rules.hpp"
#include "rdf/triple_store.hpp"
#include "sparql/query.hpp"

namespace agilekb::kb {

inline constexpr std::string_view kDefaultNamespace = "http://obama.kb/onto#";

struct KnowledgeBaseConfig {
  std::filesystem::path schema;
  std::filesystem::path ontology;
  std::filesystem::path rules;
  std::filesystem::path concerns;
  std::filesystem::path goals;    // optional: empty skips the goal catalog
  std::filesystem::path factors;  // optional: empty skips the factor catalog
  std::filesystem::path cache_dir;  // empty: in-memory cache only
  std::size_t max_derived = 1'000'000;

  // The shipped layout under `data_dir` (seed.ttl as the ontology, no cache dir).
  static KnowledgeBaseConfig defaults(const std::filesystem::path& data_dir);
};

struct KnowledgeBaseStats {
  std::size_t asserted = 0;
  std::size_t derived = 0;
  std::size_t rounds = 0;
  std::size_t rules = 0;
  std::size_t concerns = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t evaluations = 0;
};

// Loaded, saturated and validated ontology plus the concern registry, the
// input catalogs and the result cache. The base store is read-only after
// load, so one instance serves concurrent callers; cache writes are
// serialized inside ResultCache.
class KnowledgeBase {
 public:
  // Errors: Io, Syntax/UnknownPrefix (message prefixed with the file),
  // SchemaViolation (one detail line per offending triple), Cycle,
  // DuplicateConcern, ResourceLimit.
  static std::unique_ptr<KnowledgeBase> load(const KnowledgeBaseConfig& config);

  const std::vector<Concern>& concerns() const noexcept { return concerns_.listed; }
  const ConcernRegistry& registry() const noexcept { return concerns_; }

  // Cached table for a listed concern. `practice` is an IRI (see resolve_iri).
  // Errors: UnknownConcern, MissingParameter, InvalidParameter.
  sparql::ResultTable answer_concern(std::string_view id, const std::optional<std::string>& practice = std::nullopt);

  // Evaluates (or finds cached) every listed concern that needs no parameter.
  std::size_t warm_cache();

  // Errors: InvalidProfile (one detail per bad entry), ResourceLimit.
  RecommendationReport recommend(const TeamProfile& profile) const;

  // Ad-hoc query over the saturated base store, uncached.
  sparql::ResultTable query(std::string_view text) const;

  // <iri>, prefix:local, an absolute IRI, or a bare local name in the
  // ontology namespace. Throws InvalidParameter.
  std::string resolve_iri(std::string_view text) const;

  const Catalog& catalog() const noexcept { return catalog_; }
  const SchemaDef& schema() const noexcept { return schema_; }
  const turtle::PrefixMap& prefixes() const noexcept { return prefixes_; }
  const reasoner::RuleSet& rules() const noexcept { return rules_; }
  const rdf::TripleStore& store() const noexcept { return store_; }
  const reasoner::Provenance& provenance() const noexcept { return provenance_; }
  const std::string& ns() const noexcept { return ns_; }

  // Hash of the asserted statements; keys the result cache.
  const std::string& ontology_hash() const noexcept { return ontology_hash_; }
  // Hash of the current base store (asserted and derived).
  std::string content_hash() const;

  KnowledgeBaseStats stats() const;

 private:
  KnowledgeBase() = default;

  std::string ns_;
  turtle::PrefixMap prefixes_;
  SchemaDef schema_;
  reasoner::RuleSet rules_;
  rdf::TripleStore store_;
  reasoner::Provenance provenance_;
  std::size_t asserted_ = 0;
  std::size_t derived_ = 0;
  std::size_t rounds_ = 0;
  std::size_t max_derived_ = 0;
  std::string ontology_hash_;
  ConcernRegistry concerns_;
  Catalog catalog_;
  std::unique_ptr<ResultCache> cache_;
  std::atomic<std::uint64_t> cache_hits_{0};
  std::atomic<std::uint64_t> evaluations_{0};
};

}  // namespace agilekb::kb
