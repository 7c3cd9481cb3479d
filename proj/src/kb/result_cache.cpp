#include "kb/result_cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "codec/json.hpp"
#include "common/error.hpp"

namespace agilekb::kb {

namespace fs = std::filesystem;
using codec::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ResultCache::ResultCache(fs::path dir, std::string ontology_hash, std::string fingerprint)
    : dir_(std::move(dir)), hash_(std::move(ontology_hash)), fingerprint_(std::move(fingerprint)) {
  created_at_ = updated_at_ = utc_timestamp();
  if (!dir_.empty()) load();
}

fs::path ResultCache::file() const { return dir_.empty() ? fs::path() : dir_ / (hash_ + ".json"); }

void ResultCache::load() {
  const fs::path path = file();
  std::error_code ec;
  if (!fs::exists(path, ec)) return;
  try {
    std::ifstream in(path, std::ios::binary);
    json j = json::parse(in);
    if (j.at("ontologyHash").get<std::string>() != hash_ || j.at("fingerprint").get<std::string>() != fingerprint_) {
      fs::remove(path, ec);
      return;
    }
    std::map<std::string, sparql::ResultTable> entries;
    for (const auto& [key, table] : j.at("entries").items()) entries.emplace(key, codec::table_from_json(table));
    entries_ = std::move(entries);
    created_at_ = j.at("createdAt").get<std::string>();
    updated_at_ = j.at("updatedAt").get<std::string>();
    loaded_ = true;
  } catch (const std::exception&) {
    // Never trust a file we cannot fully read back.
    entries_.clear();
    fs::remove(path, ec);
  }
}

std::optional<sparql::ResultTable> ResultCache::get(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::put(const std::string& key, const sparql::ResultTable& table) {
  std::unique_lock lock(mutex_);
  entries_[key] = table;
  updated_at_ = utc_timestamp();
  if (!dir_.empty()) persist_locked();
}

std::size_t ResultCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void ResultCache::persist_locked() const {
  json entries = json::object();
  for (const auto& [key, table] : entries_) entries[key] = codec::to_json(table);
  json doc{{"ontologyHash", hash_},
           {"fingerprint", fingerprint_},
           {"createdAt", created_at_},
           {"updatedAt", updated_at_},
           {"entries", std::move(entries)}};

  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create cache directory " + dir_.string() + ": " + ec.message());

  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream suffix;
  suffix << std::hex << rng();
  const fs::path tmp = dir_ / (hash_ + ".json.tmp-" + suffix.str());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump(1) << '\n';
    if (!out) throw Error(ErrorCode::Io, "cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, file(), ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot replace cache file " + file().string());
  }
}

}  // namespace agilekb::kb
