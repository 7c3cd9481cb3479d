#include "api/router.hpp"

#include "codec/json.hpp"

namespace agilekb::api {

using codec::json;

namespace {

constexpr std::string_view kPrefix = "/api/v1/";

ApiResponse json_response(const json& j, int status = 200) {
  ApiResponse r;
  r.status = status;
  r.body = j.dump();
  return r;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    std::size_t slash = path.find('/');
    std::string_view part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

// Releases a recommendation slot on scope exit.
struct SlotGuard {
  std::counting_semaphore<>& sem;
  ~SlotGuard() { sem.release(); }
};

}  // namespace

bool percent_decode(std::string_view in, std::string& out, bool plus_is_space) {
  out.clear();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '%') {
      if (i + 2 >= in.size()) return false;
      int hi = hex_value(in[i + 1]), lo = hex_value(in[i + 2]);
      if (hi < 0 || lo < 0) return false;
      out += static_cast<char>(hi * 16 + lo);
      i += 2;
    } else if (in[i] == '+' && plus_is_space) {
      out += ' ';
    } else {
      out += in[i];
    }
  }
  return true;
}

bool parse_query_string(std::string_view query, std::map<std::string, std::string>& out) {
  while (!query.empty()) {
    std::size_t amp = query.find('&');
    std::string_view pair = query.substr(0, amp);
    if (!pair.empty()) {
      std::size_t eq = pair.find('=');
      std::string key, value;
      if (!percent_decode(pair.substr(0, eq), key)) return false;
      if (eq != std::string_view::npos && !percent_decode(pair.substr(eq + 1), value)) return false;
      out[key] = value;
    }
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return true;
}

std::pair<int, std::string> classify(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownConcern: return {404, "unknown_concern"};
    case ErrorCode::NotFound: return {404, "not_found"};
    case ErrorCode::MissingParameter: return {400, "missing_parameter"};
    case ErrorCode::InvalidParameter: return {400, "invalid_parameter"};
    case ErrorCode::InvalidProfile: return {400, "invalid_profile"};
    case ErrorCode::ResourceLimit: return {503, "resource_limit"};
    default: return {500, "internal"};
  }
}

ApiResponse error_response(int status, const std::string& code, const std::string& message,
                           const std::vector<std::string>& details) {
  json err{{"code", code}, {"message", message}};
  if (!details.empty()) err["details"] = details;
  return json_response(json{{"error", std::move(err)}}, status);
}

ApiRouter::ApiRouter(kb::KnowledgeBase& kb, RouterOptions options)
    : kb_(kb),
      options_(options),
      slots_(std::make_unique<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, options.max_concurrent_recommendations)))) {}

ApiResponse ApiRouter::handle(std::string_view method, std::string_view path, std::string_view query,
                              std::string_view body) {
  ApiResponse response;
  try {
    if (path.substr(0, kPrefix.size()) != kPrefix) return error_response(404, "not_found", "no such endpoint");
    std::vector<std::string> parts;
    for (std::string_view raw : split_path(path.substr(kPrefix.size()))) {
      std::string decoded;
      if (!percent_decode(raw, decoded, false)) return error_response(400, "invalid_parameter", "malformed path escape");
      parts.push_back(std::move(decoded));
    }
    auto expect = [&](std::string_view m) { return method == m; };

    if (parts.size() == 1 && parts[0] == "concerns") {
      if (!expect("GET")) return error_response(405, "method_not_allowed", "use GET");
      response = concerns();
    } else if (parts.size() == 3 && parts[0] == "concerns" && parts[2] == "results") {
      if (!expect("GET")) return error_response(405, "method_not_allowed", "use GET");
      std::map<std::string, std::string> params;
      if (!parse_query_string(query, params)) {
        return error_response(400, "invalid_parameter", "malformed query string escape");
      }
      response = results(parts[1], params);
    } else if (parts.size() == 1 && parts[0] == "recommendations") {
      if (!expect("POST")) return error_response(405, "method_not_allowed", "use POST");
      response = recommendations(body);
    } else if (parts.size() == 1 && parts[0] == "catalog") {
      if (!expect("GET")) return error_response(405, "method_not_allowed", "use GET");
      response = catalog();
    } else {
      return error_response(404, "not_found", "no such endpoint");
    }
  } catch (const Error& e) {
    auto [status, code] = classify(e);
    response = error_response(status, code, status == 500 ? std::string("internal error") : e.message(),
                              status == 500 ? std::vector<std::string>{} : e.details());
    if (status == 503) response.headers.emplace_back("Retry-After", std::to_string(options_.retry_after_seconds));
  } catch (const std::exception&) {
    response = error_response(500, "internal", "internal error");
  }
  return response;
}

ApiResponse ApiRouter::concerns() {
  json out = json::array();
  for (const auto& c : kb_.concerns()) out.push_back(codec::to_json(c));
  return json_response(out);
}

ApiResponse ApiRouter::results(const std::string& id, const std::map<std::string, std::string>& params) {
  for (const auto& [key, value] : params) {
    if (key != "practice") return error_response(400, "invalid_parameter", "unknown parameter '" + key + "'", {key});
  }
  std::optional<std::string> practice;
  if (auto it = params.find("practice"); it != params.end()) {
    if (it->second.empty()) return error_response(400, "missing_parameter", "practice is empty", {"practice"});
    practice = it->second;
  }
  return json_response(codec::to_json(kb_.answer_concern(id, practice)));
}

ApiResponse ApiRouter::recommendations(std::string_view body) {
  json parsed;
  try {
    parsed = json::parse(body.empty() ? std::string_view("{}") : body);
  } catch (const json::parse_error& e) {
    return error_response(422, "parse_error", std::string("malformed JSON: ") + e.what());
  }
  kb::TeamProfile profile;
  try {
    profile = codec::profile_from_json(parsed);
  } catch (const Error& e) {
    return error_response(422, "parse_error", e.message());
  }
  // Same name forms as the CLI; anything unresolvable is left for recommend
  // to report as an invalid profile entry.
  auto resolve = [&](std::string& text) {
    try {
      text = kb_.resolve_iri(text);
    } catch (const Error&) {
    }
  };
  for (auto& g : profile.goals) resolve(g);
  for (auto& [factor, value] : profile.situations) resolve(value);
  if (!slots_->try_acquire()) {
    ApiResponse r = error_response(503, "resource_limit", "too many concurrent recommendation requests");
    r.headers.emplace_back("Retry-After", std::to_string(options_.retry_after_seconds));
    return r;
  }
  SlotGuard guard{*slots_};
  return json_response(codec::to_json(kb_.recommend(profile)));
}

ApiResponse ApiRouter::catalog() { return json_response(codec::to_json(kb_.catalog())); }

}  // namespace agilekb::api
