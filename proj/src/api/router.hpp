#pragma once

#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"
#include "kb/knowledge_base.hpp"

namespace agilekb::api {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
  std::vector<std::pair<std::string, std::string>> headers;
  std::string content_type = "application/json";
};

struct RouterOptions {
  // Concurrent recommendation requests; extra requests get 503.
  std::size_t max_concurrent_recommendations = 8;
  int retry_after_seconds = 1;
};

// /api/v1 endpoints over one KnowledgeBase, independent of the HTTP library:
//
//   GET  /api/v1/concerns
//   GET  /api/v1/concerns/{id}/results[?practice=<iri>]
//   POST /api/v1/recommendations
//   GET  /api/v1/catalog
//
// Errors are {"error": {"code", "message", "details"?}}.
class ApiRouter {
 public:
  ApiRouter(kb::KnowledgeBase& kb, RouterOptions options = {});

  // `query` is the raw query string without '?', still percent-encoded.
  ApiResponse handle(std::string_view method, std::string_view path, std::string_view query,
                     std::string_view body);

 private:
  ApiResponse concerns();
  ApiResponse results(const std::string& id, const std::map<std::string, std::string>& params);
  ApiResponse recommendations(std::string_view body);
  ApiResponse catalog();

  kb::KnowledgeBase& kb_;
  RouterOptions options_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
};

// %XX and '+' decoding. Returns false on a malformed escape.
bool percent_decode(std::string_view in, std::string& out, bool plus_is_space = true);

// a=1&b=2 -> {a:1, b:2}; later keys win. Returns false on a malformed escape.
bool parse_query_string(std::string_view query, std::map<std::string, std::string>& out);

// Status and machine code for a core error.
std::pair<int, std::string> classify(const Error& e);

ApiResponse error_response(int status, const std::string& code, const std::string& message,
                           const std::vector<std::string>& details = {});

}  // namespace agilekb::api
