// agilekb command-line tool. Talks to the library only through the C API.

#include <agilekb/agilekb.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <locale>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifndef AGILEKB_DATA_DIR
#define AGILEKB_DATA_DIR "data"
#endif

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Paths {
  std::string data_dir = AGILEKB_DATA_DIR;
  std::optional<std::string> schema, ontology, rules, concerns, goals, factors, cache_dir;
  std::size_t max_derived = 0;
};

// Thrown after a C API call failed; carries the exit code for main().
struct Failure {
  int exit_code;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  akb_free(s);
  return out;
}

int exit_code_for(akb_status status) {
  return (status == AKB_ERR_IO || status == AKB_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitDomain;
}

// Prints the thread's last error in one line plus one line per detail.
[[noreturn]] void report_failure(akb_status status) {
  const std::size_t n = akb_last_error_detail_count();
  if (status == AKB_ERR_SCHEMA_VIOLATION && n > 0) {
    for (std::size_t i = 0; i < n; ++i) std::cerr << akb_last_error_detail(i) << '\n';
    std::cerr << "error: " << akb_last_error() << '\n';
  } else {
    std::cerr << "error: " << akb_status_name(status) << ": " << akb_last_error() << '\n';
    for (std::size_t i = 0; i < n; ++i) std::cerr << "  " << akb_last_error_detail(i) << '\n';
  }
  throw Failure{exit_code_for(status)};
}

void check(akb_status status) {
  if (status != AKB_OK) report_failure(status);
}

class Kb {
 public:
  explicit Kb(const Paths& p) {
    akb_kb_config c{};
    c.data_dir = p.data_dir.c_str();
    auto opt = [](const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; };
    c.schema_path = opt(p.schema);
    c.ontology_path = opt(p.ontology);
    c.rules_path = opt(p.rules);
    c.concerns_path = opt(p.concerns);
    c.goals_path = opt(p.goals);
    c.factors_path = opt(p.factors);
    c.cache_dir = opt(p.cache_dir);
    c.max_derived = p.max_derived;
    check(akb_kb_open(&c, &kb_));
  }
  ~Kb() { akb_kb_close(kb_); }
  Kb(const Kb&) = delete;
  Kb& operator=(const Kb&) = delete;

  akb_kb* get() const { return kb_; }

  json call_json(akb_status (*fn)(akb_kb*, char**)) const {
    char* out = nullptr;
    check(fn(kb_, &out));
    return json::parse(take(out));
  }

  std::string compact(const std::string& iri) const {
    char* out = nullptr;
    check(akb_kb_compact_iri(kb_, iri.c_str(), &out));
    return take(out);
  }

  std::string resolve(const std::string& text) const {
    char* out = nullptr;
    check(akb_kb_resolve_iri(kb_, text.c_str(), &out));
    return take(out);
  }

 private:
  akb_kb* kb_ = nullptr;
};

// Term JSON -> display text. IRIs compacted, literals raw.
std::string render_term(const Kb& kb, const json& term) {
  if (term.at("kind") == "iri") return kb.compact(term.at("text").get<std::string>());
  return term.at("text").get<std::string>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_table(const Kb& kb, const json& table, const std::string& format) {
  if (format == "json") {
    std::cout << table.dump() << '\n';
    return;
  }
  std::vector<std::string> header;
  for (const auto& c : table.at("columns")) header.push_back(c.get<std::string>());
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : table.at("rows")) {
    std::vector<std::string> cells;
    for (const auto& term : row) cells.push_back(render_term(kb, term));
    rows.push_back(std::move(cells));
  }
  if (format == "csv") {
    auto line = [](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
      return out;
    };
    std::cout << line(header) << '\n';
    for (const auto& r : rows) std::cout << line(r) << '\n';
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += cells[i];
      if (i + 1 < cells.size()) out += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    return out;
  };
  std::cout << line(header) << '\n';
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  std::cout << line(rule) << '\n';
  for (const auto& r : rows) std::cout << line(r) << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: Io: cannot open " << path << '\n';
    throw Failure{kExitUsage};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_validate(const Paths& paths) {
  Kb kb(paths);
  json stats = kb.call_json(akb_kb_stats);
  std::cout << "ok: " << stats["asserted"].get<std::size_t>() << " asserted, " << stats["derived"].get<std::size_t>()
            << " derived, " << stats["rules"].get<std::size_t>() << " rules, " << stats["concerns"].get<std::size_t>()
            << " concerns, 0 violations\n"
            << "ontology hash: " << stats["ontologyHash"].get<std::string>() << '\n';
  return kExitOk;
}

int cmd_query(const Paths& paths, const std::string& inline_text, const std::string& file, const std::string& format) {
  const std::string text = file.empty() ? inline_text : read_text_file(file);
  Kb kb(paths);
  char* out = nullptr;
  check(akb_kb_query(kb.get(), text.c_str(), &out));
  print_table(kb, json::parse(take(out)), format);
  return kExitOk;
}

int cmd_concerns(const Paths& paths, const std::string& format) {
  Kb kb(paths);
  json list = kb.call_json(akb_kb_concerns);
  if (format == "json") {
    std::cout << list.dump() << '\n';
    return kExitOk;
  }
  for (const auto& c : list) {
    std::cout << c["id"].get<std::string>() << (c["requiresPractice"].get<bool>() ? " (practice)" : "") << "  "
              << c["title"].get<std::string>() << '\n';
  }
  return kExitOk;
}

int cmd_answer(const Paths& paths, const std::string& id, const std::string& practice, const std::string& format) {
  Kb kb(paths);
  std::string iri;
  if (!practice.empty()) iri = kb.resolve(practice);
  char* out = nullptr;
  check(akb_kb_answer(kb.get(), id.c_str(), practice.empty() ? nullptr : iri.c_str(), &out));
  print_table(kb, json::parse(take(out)), format);
  return kExitOk;
}

int cmd_recommend(const Paths& paths, const std::vector<std::string>& goals, const std::vector<std::string>& situations,
                  const std::string& format) {
  Kb kb(paths);
  json profile{{"goals", json::array()}, {"situations", json::object()}};
  for (const auto& g : goals) profile["goals"].push_back(kb.resolve(g));
  for (const auto& s : situations) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      std::cerr << "error: --situation expects factor=value, got '" << s << "'\n";
      return kExitUsage;
    }
    profile["situations"][s.substr(0, eq)] = kb.resolve(s.substr(eq + 1));
  }
  char* out = nullptr;
  check(akb_kb_recommend(kb.get(), profile.dump().c_str(), &out));
  const json report = json::parse(take(out));
  if (format == "json") {
    std::cout << report.dump() << '\n';
    return kExitOk;
  }

  // The minted team IRI is random; print it as "team" so output is stable.
  const std::string team = report["team"]["text"];
  auto term = [&](const json& t) { return t["text"] == team ? std::string("team") : render_term(kb, t); };
  auto section = [&](const char* title, const json& verdicts) {
    std::cout << title << " (" << verdicts.size() << "):\n";
    if (verdicts.empty()) std::cout << "  (none)\n";
    for (const auto& v : verdicts) {
      std::cout << "  " << term(v["practice"]) << '\n';
      for (const auto& trace : v["traces"]) {
        std::string line = "    " + trace["rule"].get<std::string>() + ":";
        for (const auto& p : trace["premises"]) {
          const auto& t = p["triple"];
          line += " (" + term(t["subject"]) + " " + term(t["predicate"]) + " " + term(t["object"]) + ")";
        }
        std::cout << line << '\n';
      }
    }
  };
  section("recommended", report["recommended"]);
  section("discouraged", report["discouraged"]);
  return kExitOk;
}

std::atomic<akb_server*> g_server{nullptr};

void log_line(const char* line, void*) { std::cerr << line << std::endl; }

int cmd_serve(const Paths& paths, const std::string& host, int port, const std::string& static_dir, std::size_t threads,
              std::size_t max_recommendations) {
  // Block the shutdown signals before any thread exists; a dedicated thread
  // waits for them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGUSR1);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Kb kb(paths);
  std::size_t warmed = 0;
  check(akb_kb_warm_cache(kb.get(), &warmed));

  akb_server_config sc{};
  sc.host = host.c_str();
  sc.port = port;
  sc.static_dir = static_dir.empty() ? nullptr : static_dir.c_str();
  sc.threads = threads;
  sc.max_concurrent_recommendations = max_recommendations;
  sc.access_log = log_line;
  akb_server* server = nullptr;
  check(akb_server_create(kb.get(), &sc, &server));
  std::unique_ptr<akb_server, void (*)(akb_server*)> guard(server, akb_server_destroy);

  int bound = 0;
  if (akb_status st = akb_server_bind(server, &bound); st != AKB_OK) {
    std::cerr << "error: " << akb_status_name(st) << ": " << akb_last_error() << '\n';
    return kExitDomain;
  }
  g_server = server;

  std::thread waiter([&signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    if (sig != SIGUSR1) {
      std::cerr << "agilekb: received " << (sig == SIGINT ? "SIGINT" : "SIGTERM") << ", shutting down" << std::endl;
    }
    if (akb_server* s = g_server.load()) akb_server_stop(s);
  });

  std::cout << "agilekb: ready on http://" << host << ':' << bound << " (" << warmed << " concerns cached)"
            << std::endl;
  const akb_status st = akb_server_run(server);
  g_server = nullptr;
  pthread_kill(waiter.native_handle(), SIGUSR1);
  waiter.join();
  if (st != AKB_OK) report_failure(st);
  std::cerr << "agilekb: stopped" << std::endl;
  return kExitOk;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  std::locale::global(std::locale::classic());
  std::cout.imbue(std::locale::classic());

  CLI::App app{"Agile practice knowledge base: validate, query, recommend, serve."};
  app.require_subcommand(1);
  app.fallthrough();

  Paths paths;
  app.add_option("--data-dir", paths.data_dir, "Directory with the shipped data files")->envname("AGILEKB_DATA_DIR");
  auto path_option = [&](const char* flag, std::optional<std::string>& target, const char* env, const char* help) {
    app.add_option_function<std::string>(flag, [&target](const std::string& v) { target = v; }, help)->envname(env);
  };
  path_option("--schema", paths.schema, "AGILEKB_SCHEMA", "Schema file (default: <data-dir>/schema.ttl)");
  path_option("--ontology", paths.ontology, "AGILEKB_ONTOLOGY", "Ontology file (default: <data-dir>/seed.ttl)");
  path_option("--rules", paths.rules, "AGILEKB_RULES", "Rule file (default: <data-dir>/rules/default.rules)");
  path_option("--concerns", paths.concerns, "AGILEKB_CONCERNS", "Concern registry (default: <data-dir>/concerns.toml)");
  path_option("--goals", paths.goals, "AGILEKB_GOALS", "Goal catalog (default: <data-dir>/goals.ttl)");
  path_option("--factors", paths.factors, "AGILEKB_FACTORS", "Factor catalog (default: <data-dir>/factors.ttl)");
  path_option("--cache-dir", paths.cache_dir, "AGILEKB_CACHE_DIR", "Persist concern results here");
  app.add_option("--max-derived", paths.max_derived, "Saturation limit on derived statements")
      ->envname("AGILEKB_MAX_DERIVED");

  const std::vector<std::string> formats = {"text", "csv", "json"};

  auto* validate = app.add_subcommand("validate", "Load, saturate and validate the knowledge base");

  auto* query = app.add_subcommand("query", "Run a query over the saturated knowledge base");
  std::string query_text, query_file, query_format = "text";
  query->add_option("query", query_text, "Query text");
  query->add_option("-f,--file", query_file, "Read the query from a file");
  query->add_option("--format", query_format, "Output format")->check(CLI::IsMember(formats));

  auto* concerns = app.add_subcommand("concerns", "List the registered concerns");
  std::string concerns_format = "text";
  concerns->add_option("--format", concerns_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* answer = app.add_subcommand("answer", "Answer one concern (cached)");
  std::string answer_id, answer_practice, answer_format = "text";
  answer->add_option("concern", answer_id, "Concern id")->required();
  answer->add_option("--practice", answer_practice, "Practice IRI, prefixed name or local name");
  answer->add_option("--format", answer_format, "Output format")->check(CLI::IsMember(formats));

  auto* recommend = app.add_subcommand("recommend", "Recommend practices for a team profile");
  std::vector<std::string> rec_goals, rec_situations;
  std::string rec_format = "text";
  recommend->add_option("--goal", rec_goals, "Desired goal or principle (repeatable)");
  recommend->add_option("--situation", rec_situations, "factor=value (repeatable)");
  recommend->add_option("--format", rec_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* serve = app.add_subcommand("serve", "Warm the cache and serve the HTTP API");
  std::string host = env_or("AGILEKB_HOST", "127.0.0.1"), static_dir;
  int port = 8080;
  std::size_t threads = 8, max_recommendations = 8;
  serve->add_option("--host", host, "Listen address")->envname("AGILEKB_HOST");
  serve->add_option("--port", port, "Listen port (0 picks a free port)")->envname("AGILEKB_PORT");
  serve->add_option("--static-dir", static_dir, "Serve web UI assets from here")->envname("AGILEKB_STATIC_DIR");
  serve->add_option("--threads", threads, "HTTP worker threads")->envname("AGILEKB_THREADS");
  serve->add_option("--max-recommendations", max_recommendations, "Concurrent recommendation requests")
      ->envname("AGILEKB_MAX_RECOMMENDATIONS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(paths);
    if (*query) {
      if (query_text.empty() == query_file.empty()) {
        std::cerr << "error: give either query text or --file\n";
        return kExitUsage;
      }
      return cmd_query(paths, query_text, query_file, query_format);
    }
    if (*concerns) return cmd_concerns(paths, concerns_format);
    if (*answer) return cmd_answer(paths, answer_id, answer_practice, answer_format);
    if (*recommend) return cmd_recommend(paths, rec_goals, rec_situations, rec_format);
    if (*serve) return cmd_serve(paths, host, port, static_dir, threads, max_recommendations);
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
