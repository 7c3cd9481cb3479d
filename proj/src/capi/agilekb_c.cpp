#include "agilekb/agilekb.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "api/http_server.hpp"
#include "api/router.hpp"
#include "codec/json.hpp"
#include "common/error.hpp"
#include "kb/knowledge_base.hpp"

using namespace agilekb;

struct akb_kb {
  std::unique_ptr<kb::KnowledgeBase> kb;
  std::once_flag router_once;
  std::unique_ptr<api::ApiRouter> router;
};

struct akb_server {
  std::unique_ptr<api::HttpServer> server;
};

namespace {

struct LastError {
  std::string message;
  std::vector<std::string> details;
};

thread_local LastError last_error;

akb_status to_status(ErrorCode code) {
  // ErrorCode and akb_status list the error kinds in the same order.
  return static_cast<akb_status>(static_cast<int>(code) + 1);
}

akb_status fail(akb_status status, std::string message, std::vector<std::string> details = {}) {
  last_error.message = std::move(message);
  last_error.details = std::move(details);
  return status;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs `f`, translating exceptions into a status and the thread's last error.
template <typename F>
akb_status guarded(F&& f) {
  last_error = {};
  try {
    f();
    return AKB_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what(), e.details());
  } catch (const std::bad_alloc&) {
    return fail(AKB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AKB_ERR_INTERNAL, e.what());
  }
}

#define AKB_REQUIRE(cond, what)                                          \
  do {                                                                   \
    if (!(cond)) return fail(AKB_ERR_INVALID_ARGUMENT, (what) + std::string(" must not be NULL")); \
  } while (0)

std::filesystem::path pick(const char* explicit_path, const std::filesystem::path& fallback) {
  return explicit_path ? std::filesystem::path(explicit_path) : fallback;
}

}  // namespace

extern "C" {

const char* akb_status_name(akb_status status) {
  switch (status) {
    case AKB_OK: return "ok";
    case AKB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    default:
      if (status > AKB_OK && status < AKB_ERR_INVALID_ARGUMENT) {
        return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
      }
      return "Unknown";
  }
}

const char* akb_last_error(void) { return last_error.message.c_str(); }

size_t akb_last_error_detail_count(void) { return last_error.details.size(); }

const char* akb_last_error_detail(size_t index) {
  return index < last_error.details.size() ? last_error.details[index].c_str() : nullptr;
}

void akb_free(void* p) { std::free(p); }

akb_status akb_kb_open(const akb_kb_config* config, akb_kb** out) {
  AKB_REQUIRE(config, "config");
  AKB_REQUIRE(out, "out");
  *out = nullptr;
  if (!config->data_dir && !(config->schema_path && config->ontology_path && config->rules_path &&
                             config->concerns_path)) {
    return fail(AKB_ERR_INVALID_ARGUMENT, "config needs data_dir or every file path");
  }
  return guarded([&] {
    kb::KnowledgeBaseConfig c =
        config->data_dir ? kb::KnowledgeBaseConfig::defaults(config->data_dir) : kb::KnowledgeBaseConfig{};
    c.schema = pick(config->schema_path, c.schema);
    c.ontology = pick(config->ontology_path, c.ontology);
    c.rules = pick(config->rules_path, c.rules);
    c.concerns = pick(config->concerns_path, c.concerns);
    c.goals = pick(config->goals_path, c.goals);
    c.factors = pick(config->factors_path, c.factors);
    c.cache_dir = pick(config->cache_dir, {});
    if (config->max_derived) c.max_derived = config->max_derived;
    auto handle = std::make_unique<akb_kb>();
    handle->kb = kb::KnowledgeBase::load(c);
    *out = handle.release();
  });
}

void akb_kb_close(akb_kb* kb) { delete kb; }

akb_status akb_kb_concerns(akb_kb* kb, char** out_json) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(out_json, "out_json");
  return guarded([&] {
    codec::json out = codec::json::array();
    for (const auto& c : kb->kb->concerns()) out.push_back(codec::to_json(c));
    *out_json = dup(out.dump());
  });
}

akb_status akb_kb_catalog(akb_kb* kb, char** out_json) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(out_json, "out_json");
  return guarded([&] { *out_json = dup(codec::to_json(kb->kb->catalog()).dump()); });
}

akb_status akb_kb_answer(akb_kb* kb, const char* concern_id, const char* practice, char** out_json) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(concern_id, "concern_id");
  AKB_REQUIRE(out_json, "out_json");
  return guarded([&] {
    std::optional<std::string> p;
    if (practice) p = practice;
    *out_json = dup(codec::to_json(kb->kb->answer_concern(concern_id, p)).dump());
  });
}

akb_status akb_kb_recommend(akb_kb* kb, const char* profile_json, char** out_json) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(profile_json, "profile_json");
  AKB_REQUIRE(out_json, "out_json");
  return guarded([&] {
    codec::json parsed;
    try {
      parsed = codec::json::parse(profile_json);
    } catch (const codec::json::parse_error& e) {
      throw Error(ErrorCode::Syntax, std::string("malformed profile JSON: ") + e.what());
    }
    *out_json = dup(codec::to_json(kb->kb->recommend(codec::profile_from_json(parsed))).dump());
  });
}

akb_status akb_kb_query(akb_kb* kb, const char* sparql, char** out_json) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(sparql, "sparql");
  AKB_REQUIRE(out_json, "out_json");
  return guarded([&] { *out_json = dup(codec::to_json(kb->kb->query(sparql)).dump()); });
}

akb_status akb_kb_warm_cache(akb_kb* kb, size_t* out_count) {
  AKB_REQUIRE(kb, "kb");
  return guarded([&] {
    const std::size_t n = kb->kb->warm_cache();
    if (out_count) *out_count = n;
  });
}

akb_status akb_kb_stats(akb_kb* kb, char** out_json) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(out_json, "out_json");
  return guarded([&] {
    const kb::KnowledgeBaseStats s = kb->kb->stats();
    codec::json j{{"asserted", s.asserted},     {"derived", s.derived},       {"rounds", s.rounds},
                  {"rules", s.rules},           {"concerns", s.concerns},     {"cacheHits", s.cache_hits},
                  {"evaluations", s.evaluations}, {"ontologyHash", kb->kb->ontology_hash()}};
    *out_json = dup(j.dump());
  });
}

akb_status akb_kb_content_hash(akb_kb* kb, char** out_hex) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(out_hex, "out_hex");
  return guarded([&] { *out_hex = dup(kb->kb->content_hash()); });
}

akb_status akb_kb_resolve_iri(akb_kb* kb, const char* text, char** out_iri) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(text, "text");
  AKB_REQUIRE(out_iri, "out_iri");
  return guarded([&] { *out_iri = dup(kb->kb->resolve_iri(text)); });
}

akb_status akb_kb_compact_iri(akb_kb* kb, const char* iri, char** out_text) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(iri, "iri");
  AKB_REQUIRE(out_text, "out_text");
  return guarded([&] {
    auto compact = kb->kb->prefixes().compact(iri);
    *out_text = dup(compact ? *compact : "<" + std::string(iri) + ">");
  });
}

akb_status akb_api_handle(akb_kb* kb, const char* method, const char* path, const char* query, const char* body,
                          int* out_status, char** out_body) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(method, "method");
  AKB_REQUIRE(path, "path");
  AKB_REQUIRE(out_status, "out_status");
  AKB_REQUIRE(out_body, "out_body");
  return guarded([&] {
    std::call_once(kb->router_once, [&] { kb->router = std::make_unique<api::ApiRouter>(*kb->kb); });
    api::ApiResponse r = kb->router->handle(method, path, query ? query : "", body ? body : "");
    *out_status = r.status;
    *out_body = dup(r.body);
  });
}

akb_status akb_server_create(akb_kb* kb, const akb_server_config* config, akb_server** out) {
  AKB_REQUIRE(kb, "kb");
  AKB_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    api::ServerOptions o;
    if (config) {
      if (config->host) o.host = config->host;
      o.port = config->port;
      if (config->static_dir) o.static_dir = config->static_dir;
      if (config->threads) o.threads = config->threads;
      if (config->max_concurrent_recommendations) {
        o.router.max_concurrent_recommendations = config->max_concurrent_recommendations;
      }
      if (config->access_log) {
        akb_log_fn fn = config->access_log;
        void* user = config->access_log_user;
        o.access_log = [fn, user](const std::string& line) { fn(line.c_str(), user); };
      }
    } else {
      o.port = 0;
    }
    auto handle = std::make_unique<akb_server>();
    handle->server = std::make_unique<api::HttpServer>(*kb->kb, std::move(o));
    *out = handle.release();
  });
}

akb_status akb_server_bind(akb_server* server, int* out_port) {
  AKB_REQUIRE(server, "server");
  return guarded([&] {
    const int port = server->server->bind();
    if (out_port) *out_port = port;
  });
}

akb_status akb_server_run(akb_server* server) {
  AKB_REQUIRE(server, "server");
  return guarded([&] { server->server->listen(); });
}

void akb_server_stop(akb_server* server) {
  if (server) server->server->stop();
}

void akb_server_destroy(akb_server* server) { delete server; }

}  // extern "C"
