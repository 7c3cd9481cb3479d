#include <gtest/gtest.h>
#include <httplib.h>

#include <nlohmann/json.hpp>
#include <regex>
#include <string>
#include <vector>

#include "support/process.hpp"
#include "support/temp_dir.hpp"

namespace {

using agilekb::testing::Child;
using agilekb::testing::RunResult;
using agilekb::testing::TempDir;
using nlohmann::json;
using namespace std::chrono_literals;

const std::string kCli = AGILEKB_CLI_PATH;
const std::string kData = AGILEKB_TEST_DATA_DIR;

RunResult cli(std::vector<std::string> args) {
  std::vector<std::string> argv{kCli, "--data-dir", kData};
  argv.insert(argv.end(), args.begin(), args.end());
  return agilekb::testing::run(argv);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    auto nl = s.find('\n', start);
    if (nl == std::string::npos) nl = s.size();
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

TEST(Cli, ValidateSeed) {
  auto r = cli({"validate"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("ok: 263 asserted, ", 0), 0u) << ls[0];
  EXPECT_NE(ls[0].find("6 rules, 6 concerns, 0 violations"), std::string::npos);
  EXPECT_TRUE(std::regex_match(ls[1], std::regex("ontology hash: [0-9a-f]{64}")));
}

TEST(Cli, ValidateReportsOneViolation) {
  TempDir dir;
  auto bad = dir.write("bad.ttl", agilekb::testing::slurp(kData + "/seed.ttl") +
                                      "\n:Communication_Goal :achieve :DailyMeetings .\n");
  auto r = cli({"--ontology", bad.string(), "validate"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(r.out.empty());
  int violation_lines = 0;
  for (const auto& l : lines(r.err)) {
    if (l.find(":Communication_Goal :achieve :DailyMeetings") != std::string::npos) ++violation_lines;
  }
  EXPECT_EQ(violation_lines, 1) << r.err;
}

TEST(Cli, MissingFileIsUsageExit) {
  auto r = cli({"--ontology", "/nonexistent/x.ttl", "validate"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("/nonexistent/x.ttl"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(agilekb::testing::run({kCli}).exit_code, 2);
  EXPECT_EQ(cli({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(cli({"query"}).exit_code, 2);
  EXPECT_EQ(cli({"query", "SELECT ?s WHERE { ?s ?p ?o }", "--format", "xml"}).exit_code, 2);
  EXPECT_EQ(cli({"recommend", "--situation", "novalue"}).exit_code, 2);
  EXPECT_EQ(agilekb::testing::run({kCli, "--help"}).exit_code, 0);
}

TEST(Cli, QueryTimeboxing) {
  const std::string q =
      "SELECT ?solution WHERE { :DailyMeetings :encounter ?p . ?solution :solve ?p }";
  auto r = cli({"query", q, "--format", "csv"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "solution\n:Timeboxing\n");

  auto text = cli({"query", q});
  ASSERT_EQ(text.exit_code, 0);
  EXPECT_EQ(lines(text.out).size(), 3u);

  auto j = cli({"query", q, "--format", "json"});
  ASSERT_EQ(j.exit_code, 0);
  auto table = json::parse(j.out);
  ASSERT_EQ(table["rows"].size(), 1u);
  EXPECT_EQ(table["rows"][0][0]["text"], "http://obama.kb/onto#Timeboxing");
}

TEST(Cli, QueryFromFile) {
  TempDir dir;
  auto f = dir.write("q.rq", "SELECT ?s WHERE { ?s a :Practice } ORDER BY ?s");
  auto r = cli({"query", "--file", f.string(), "--format", "csv"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 3u);
  EXPECT_EQ(cli({"query", "--file", (dir / "missing.rq").string()}).exit_code, 2);
}

TEST(Cli, EmptyResultPrintsHeaderOnly) {
  auto r = cli({"query", "SELECT ?s WHERE { ?s :solve :NoSuchThing }", "--format", "csv"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "s\n");
}

TEST(Cli, QuerySyntaxErrorHasPosition) {
  auto r = cli({"query", "SELECT ?s WHERE { ?s ?p }"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::regex_search(r.err, std::regex("[0-9]+:[0-9]+"))) << r.err;
}

TEST(Cli, ConcernsAndAnswer) {
  auto list = cli({"concerns", "--format", "json"});
  ASSERT_EQ(list.exit_code, 0);
  EXPECT_EQ(json::parse(list.out).size(), 6u);

  auto r = cli({"answer", "solutions-for-problems", "--practice", "DailyMeetings", "--format", "csv"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "solution\n:Timeboxing\n");
  EXPECT_EQ(cli({"answer", "no-such"}).exit_code, 1);
  EXPECT_EQ(cli({"answer", "solutions-for-problems"}).exit_code, 1);
}

TEST(Cli, RecommendForGoal) {
  auto r = cli({"recommend", "--goal", "Communication_Goal"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 3u);
  EXPECT_EQ(ls[0], "recommended (1):");
  EXPECT_EQ(ls[1], "  :DailyMeetings");
  EXPECT_EQ(ls[2].rfind("    goal-recommendation:", 0), 0u) << ls[2];

  auto j = cli({"recommend", "--goal", ":Communication_Goal", "--format", "json"});
  ASSERT_EQ(j.exit_code, 0);
  EXPECT_EQ(json::parse(j.out)["recommended"][0]["practice"]["text"], "http://obama.kb/onto#DailyMeetings");
}

TEST(Cli, RecommendDiscouraged) {
  auto r = cli({"recommend", "--situation", "team-distribution=Distributed_Team", "--format", "json"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto report = json::parse(r.out);
  std::vector<std::string> discouraged;
  for (const auto& v : report["discouraged"]) discouraged.push_back(v["practice"]["text"]);
  EXPECT_NE(std::find(discouraged.begin(), discouraged.end(), "http://obama.kb/onto#DailyMeetings"), discouraged.end());
}

TEST(Cli, RecommendEmptyProfile) {
  auto r = cli({"recommend"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "recommended (0):\n  (none)\ndiscouraged (0):\n  (none)\n");
}

TEST(Cli, RecommendInvalidProfile) {
  auto r = cli({"recommend", "--situation", "no-such-factor=Distributed_Team"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("no-such-factor"), std::string::npos) << r.err;
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"validate"}, {"recommend", "--goal", "Communication_Goal"},
        {"query", "SELECT ?s ?o WHERE { ?s :achieve ?o } ORDER BY ?s"}, {"concerns"}}) {
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, EnvironmentSuppliesDataDir) {
  auto r = agilekb::testing::run({kCli, "validate"}, {"AGILEKB_DATA_DIR=" + kData});
  EXPECT_EQ(r.exit_code, 0) << r.err;
}

int ready_port(Child& server) {
  auto line = server.read_line(30s);
  if (!line) return 0;
  std::smatch m;
  if (!std::regex_search(*line, m, std::regex(R"(ready on http://127\.0\.0\.1:([0-9]+) \(2 concerns cached\))")))
    return 0;
  return std::stoi(m[1]);
}

TEST(Cli, ServeAndStopOnSigint) {
  Child server({kCli, "--data-dir", kData, "serve", "--port", "0"});
  const int port = ready_port(server);
  ASSERT_GT(port, 0);

  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/v1/concerns");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body).size(), 6u);

  server.signal(SIGINT);
  auto r = server.wait();
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.err.find("\"GET /api/v1/concerns\" 200"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("stopped"), std::string::npos);
}

TEST(Cli, ServePortInUse) {
  Child first({kCli, "--data-dir", kData, "serve", "--port", "0"});
  const int port = ready_port(first);
  ASSERT_GT(port, 0);
  auto second = cli({"serve", "--port", std::to_string(port)});
  EXPECT_EQ(second.exit_code, 1);
  EXPECT_NE(second.err.find(std::to_string(port)), std::string::npos) << second.err;
  first.signal(SIGTERM);
  EXPECT_EQ(first.wait().exit_code, 0);
}

}  // namespace
