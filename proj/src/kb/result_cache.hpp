#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "sparql/query.hpp"

namespace agilekb::kb {

// Concern results for one ontology hash, persisted as
// <dir>/<ontology_hash>.json. The file also records a fingerprint of the rules
// and concern templates; a file whose hash or fingerprint disagrees, or that
// does not parse, is deleted and the cache starts empty.
//
// An empty directory keeps everything in memory.
class ResultCache {
 public:
  ResultCache(std::filesystem::path dir, std::string ontology_hash, std::string fingerprint);

  std::optional<sparql::ResultTable> get(const std::string& key) const;
  // Stores and persists (write to a temp file, then rename).
  void put(const std::string& key, const sparql::ResultTable& table);

  std::size_t size() const;
  const std::string& ontology_hash() const noexcept { return hash_; }
  std::filesystem::path file() const;
  // True when the entries came from disk at construction.
  bool loaded_from_disk() const noexcept { return loaded_; }

 private:
  void load();
  void persist_locked() const;

  std::filesystem::path dir_;
  std::string hash_;
  std::string fingerprint_;
  std::string created_at_;
  std::string updated_at_;
  bool loaded_ = false;
  mutable std::shared_mutex mutex_;
  std::map<std::string, sparql::ResultTable> entries_;
};

// UTC, second resolution: 2024-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace agilekb::kb
