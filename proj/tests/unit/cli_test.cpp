// Copyright 2026 The Entity Pulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entity_pulse/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace entity_pulse::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string diag;
};

Result epx(std::vector<std::string> args) {
  args.insert(args.begin(), "epx");
  std::ostringstream out, diag;
  const int code = run(args, out, diag);
  return {code, out.str(), diag.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class Pipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "entity_pulse_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "spec.json") << R"({
      "seed": 3, "window": {"from": "2015-01-01", "to": "2016-01-01"}, "users": 20,
      "background_rate": 40,
      "entities": [{"id": "dbp:Alexis_Tsipras", "rate": 20}, {"id": "dbp:Greece", "rate": 30},
                   {"id": "dbp:Europe", "rate": 10}],
      "events": [
        {"kind": "popularity-spike", "entity": "dbp:Alexis_Tsipras", "period": "2015-07-01", "factor": 10},
        {"kind": "controversy-burst", "entity": "dbp:Greece", "period": "2015-03-01", "share": 0.9},
        {"kind": "signed-pair", "entity": "dbp:Greece", "other": "dbp:Europe", "count": 15},
        {"kind": "spam-block", "fraction": 0.2}
      ]})";
    const auto g = epx({"generate", "--spec", (dir_ / "spec.json").string(), "--output",
                        (dir_ / "corpus.csv").string(), "--manifest",
                        (dir_ / "manifest.json").string()});
    ASSERT_EQ(g.code, 0) << g.diag;
    const auto i = epx({"index", "--input", (dir_ / "corpus.csv").string(), "--output",
                        (dir_ / "corpus.epx").string()});
    ASSERT_EQ(i.code, 0) << i.diag;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string path(const char* name) { return (dir_ / name).string(); }
  static fs::path dir_;
};

fs::path Pipeline::dir_;

TEST_F(Pipeline, SeriesOverAYearHasTwelveRows) {
  const auto r = epx({"series", "--index", path("corpus.epx"), "--entity", "dbp:Alexis_Tsipras",
                      "--from", "2015-01", "--to", "2016-01", "--granularity", "month",
                      "--measure", "popularity_cu"});
  ASSERT_EQ(r.code, 0) << r.diag;
  EXPECT_EQ(lines(r.out), 13u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "entity,period_start,period_end,measure,value,support");
}

TEST_F(Pipeline, QueriesAreByteIdenticalAcrossRuns) {
  const std::vector<std::string> q{"topk", "--index", path("corpus.epx"), "--entity",
                                   "dbp:Greece", "--measure", "controversiality", "--k", "3"};
  const auto a = epx(q);
  const auto b = epx(q);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  // Burst month ranks first.
  EXPECT_NE(a.out.find("\n1,dbp:Greece,2015-03-01,"), std::string::npos) << a.out;
}

TEST_F(Pipeline, NetworkJsonAndGraphExport) {
  const auto r = epx({"network", "--index", path("corpus.epx"), "--entity", "dbp:Greece",
                      "--period", "2015-05", "--k", "10", "--variant", "negative", "--delta",
                      "2.0", "--format", "json", "--graph", path("net")});
  ASSERT_EQ(r.code, 0) << r.diag;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_TRUE(doc.is_array());
  ASSERT_LE(doc.size(), 10u);
  ASSERT_GE(doc.size(), 1u);
  EXPECT_EQ(doc[0]["entity"], "dbp:Europe");
  EXPECT_EQ(slurp(path("net.nodes.csv")).substr(0, 22), "id,label,score,support");
  EXPECT_EQ(lines(slurp(path("net.edges.csv"))), doc.size() + 1);
}

TEST_F(Pipeline, OutputFileIsWrittenAndNotPrinted) {
  const auto r = epx({"series", "--index", path("corpus.epx"), "--entity", "dbp:Greece",
                      "--from", "2015-01", "--to", "2015-04", "--output", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.diag;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(lines(slurp(path("s.csv"))), 4u);
}

TEST_F(Pipeline, ConnectednessKinds) {
  for (const char* kind : {"direct", "indirect"}) {
    const auto r = epx({"connectedness", "--index", path("corpus.epx"), "--entity", "dbp:Greece",
                        "--other", "dbp:Europe", "--period", "2015-05", "--kind", kind});
    ASSERT_EQ(r.code, 0) << r.diag;
    EXPECT_EQ(lines(r.out), 2u);
  }
  const auto set = epx({"connectedness", "--index", path("corpus.epx"), "--entity", "dbp:Greece",
                        "--set", "dbp:Europe", "dbp:Alexis_Tsipras", "--period", "2015-05"});
  ASSERT_EQ(set.code, 0) << set.diag;
  EXPECT_NE(set.out.find("dbp:Europe;dbp:Alexis_Tsipras"), std::string::npos);
}

TEST_F(Pipeline, UnknownEntityWarnsButSucceeds) {
  const auto r = epx({"network", "--index", path("corpus.epx"), "--entity", "dbp:Nobody",
                      "--period", "2015-05"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rank,entity,score,support\n");
  const auto diag = nlohmann::json::parse(r.diag.substr(0, r.diag.find('\n')));
  EXPECT_EQ(diag["level"], "warning");
  EXPECT_EQ(diag["code"], "unknown_entity");
}

TEST_F(Pipeline, SpamTrainFilterAndIndex) {
  ASSERT_EQ(epx({"generate", "--labeled-output", path("labeled.csv")}).code, 0);
  const auto t = epx({"train-spam", "--input", path("labeled.csv"), "--output", path("nb.json")});
  ASSERT_EQ(t.code, 0) << t.diag;
  const auto f = epx({"filter", "--input", path("corpus.csv"), "--spam-model", path("nb.json"),
                      "--output", path("clean.csv")});
  ASSERT_EQ(f.code, 0) << f.diag;
  const auto manifest = nlohmann::json::parse(slurp(path("manifest.json")));
  const std::size_t total = manifest["record_count"];
  const std::size_t spam = manifest["spam_count"];
  const std::size_t kept = lines(slurp(path("clean.csv")));
  EXPECT_NEAR(static_cast<double>(total - kept), static_cast<double>(spam), 0.02 * total);
  const auto i = epx({"index", "--input", path("corpus.csv"), "--spam-model", path("nb.json"),
                      "--output", path("clean.epx")});
  ASSERT_EQ(i.code, 0) << i.diag;
  EXPECT_NE(i.out.find("\"record_count\": " + std::to_string(kept)), std::string::npos) << i.out;
}

TEST_F(Pipeline, InspectReportsSections) {
  const auto r = epx({"inspect", "--index", path("corpus.epx")});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["format"], "EPX1");
  EXPECT_EQ(doc["sections"]["slices"]["count"], 12);
}

TEST_F(Pipeline, ConfigFileSuppliesDefaultsAndFlagsWin) {
  std::ofstream(path("q.json")) << R"({"entity": "dbp:Greece", "k": 2, "measure": "attitude"})";
  const auto r = epx({"topk", "--index", path("corpus.epx"), "--config", path("q.json")});
  ASSERT_EQ(r.code, 0) << r.diag;
  EXPECT_EQ(lines(r.out), 3u);
  EXPECT_NE(r.out.find(",attitude,"), std::string::npos);
  const auto w = epx({"topk", "--index", path("corpus.epx"), "--config", path("q.json"), "--k", "4"});
  EXPECT_EQ(lines(w.out), 5u);
}

TEST_F(Pipeline, GranularityMismatchFails) {
  const auto r = epx({"series", "--index", path("corpus.epx"), "--entity", "dbp:Greece",
                      "--granularity", "week"});
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NE(r.diag.find("\"level\":\"error\""), std::string::npos);
}

TEST_F(Pipeline, IngestWritesRejects) {
  std::ofstream(path("dirty.csv")) << "t1,u1,2015-07-01T00:00:00Z,\"dbp:A:-1\",1,-1\n"
                                      "t2,u1,2015-07-01T00:00:00Z,\"dbp:A:-1\",7,-1\n";
  const auto r = epx({"ingest", "--input", path("dirty.csv"), "--rejects", path("rej.csv")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(slurp(path("rej.csv")), "row,reason\n2,sentiment out of range\n");
  EXPECT_NE(r.out.find("\"rejected_count\": 1"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(epx({}).code, kUsage);
  EXPECT_EQ(epx({"frobnicate"}).code, kUsage);
  EXPECT_EQ(epx({"series", "--entity", "x"}).code, kUsage);  // missing --index
  EXPECT_EQ(epx({"network", "--index", "i", "--entity", "x", "--period", "2015", "--k", "0"}).code,
            kUsage);
  EXPECT_EQ(epx({"network", "--index", "i", "--entity", "x", "--period", "2015", "--delta", "5"})
                .code,
            kUsage);
  const auto r = epx({"series", "--index", "i", "--entity", "x", "--bogus"});
  EXPECT_EQ(r.code, kUsage);
  const auto diag = nlohmann::json::parse(r.diag);
  EXPECT_EQ(diag["code"], "usage");
}

TEST(Cli, HelpExitsZero) {
  const auto r = epx({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("series"), std::string::npos);
}

TEST(Cli, RuntimeFailuresAreMachineReadable) {
  const auto r = epx({"inspect", "--index", "/nonexistent/idx.epx"});
  EXPECT_EQ(r.code, kFailure);
  const auto diag = nlohmann::json::parse(r.diag);
  EXPECT_EQ(diag["level"], "error");
  EXPECT_EQ(diag["code"], "io");
  const auto bad = fs::temp_directory_path() / "entity_pulse_bad_spec.json";
  std::ofstream(bad) << R"({"window": {"from": "2015-01-01", "to": "2014-01-01"}})";
  const auto g = epx({"generate", "--spec", bad.string()});
  EXPECT_EQ(g.code, kFailure);
  EXPECT_NE(g.diag.find("invalid_spec"), std::string::npos);
  fs::remove(bad);
}

TEST(Cli, BinaryRuns) {
  const char* bin = std::getenv("EPX_BIN");
  if (bin == nullptr) GTEST_SKIP() << "EPX_BIN not set";
  const std::string cmd = std::string(bin) + " --help > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
}

}  // namespace
}  // namespace entity_pulse::cli
