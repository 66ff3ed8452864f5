#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "test_support.hpp"

using namespace xcover;
using namespace xcover::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "xcover");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("xcover_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_ / "bench");
    std::ofstream(path("running.matrix")) << kRunningMatrix;
    std::ofstream(path("bench/running.xc")) << kRunningXc;
    std::ofstream(path("graph.txt")) << "5 6\n0 1\n1 2\n2 0\n2 3\n3 4\n4 2\n";
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CountHumanAndJson) {
  auto r = run({"count", path("running.matrix"), "--engine", "dxz"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("count     4"), std::string::npos);
  r = run({"count", path("running.matrix"), "--engine", "oracle", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["count"], "4");
  EXPECT_EQ(j["engine"], "oracle");
  EXPECT_EQ(j["status"], "ok");
  for (const char* key : {"instance", "threads", "nodes", "subs", "time_ms", "cache_hits", "cache_misses"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST_F(Cli, ThreadsDoNotChangeCount) {
  auto one = run({"count", path("bench/running.xc"), "--engine", "dyndxd", "--threads", "1", "--json"});
  auto eight = run({"count", path("bench/running.xc"), "--engine", "dyndxd", "--threads", "8", "--json"});
  EXPECT_EQ(nlohmann::json::parse(one.out)["count"], nlohmann::json::parse(eight.out)["count"]);
}

TEST_F(Cli, Errors) {
  std::ofstream(path("bad.xc")) << "a\nX: q\n";
  auto r = run({"count", path("bad.xc")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"count", path("missing.xc")}).code, 2);
  EXPECT_EQ(run({"count", path("running.matrix"), "--engine", "d3x"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"compile", path("running.matrix"), "--dot", "/nonexistent/dir/x.dot"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, CompileDotAndEnumerate) {
  auto r = run({"compile", path("bench/running.xc"), "--engine", "dxz", "--dot", path("f.dot"), "--enumerate", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("A D\nA E F\n"), std::string::npos);
  EXPECT_EQ(r.out.find("B C D"), std::string::npos);
  const std::string dot = slurp(path("f.dot"));
  for (const char* row : {"A", "B", "C", "D", "E", "F"})
    EXPECT_NE(dot.find("label=\"" + std::string(row) + "\""), std::string::npos) << row;

  r = run({"compile", path("bench/running.xc"), "--enumerate", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "count 4\nnodes 7\nsubs 2\n");
}

TEST_F(Cli, DumpToStdout) {
  auto r = run({"compile", path("bench/running.xc"), "--dump", "-"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("2 lit 0\n", 0), 0u);
  EXPECT_NE(r.out.find("join"), std::string::npos);
  EXPECT_NE(r.out.find("\nroot "), std::string::npos);
  EXPECT_NE(r.out.find("count 4\n"), std::string::npos);
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run({"gen", path("graph.txt"), "--seed", "3", "--out", path("a.xc")}).code, 0);
  ASSERT_EQ(run({"gen", path("graph.txt"), "--seed", "3", "--out", path("b.xc")}).code, 0);
  EXPECT_EQ(slurp(path("a.xc")), slurp(path("b.xc")));
  EXPECT_FALSE(slurp(path("a.xc")).empty());
  EXPECT_NO_THROW(load_instance(path("a.xc")));
}

TEST_F(Cli, BenchRowsAndTimeouts) {
  auto r = run({"bench", path("bench"), "--engines", "dxz,dxd", "--csv", path("out.csv"), "--ratios", path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("out.csv"));
  EXPECT_EQ(csv.rfind("instance,engine,threads,count,nodes,subs,time_ms,status\n", 0), 0u);
  EXPECT_NE(csv.find("running.xc,dxz,1,4,7,0,"), std::string::npos);
  EXPECT_NE(csv.find("running.xc,dxd,1,4,7,2,"), std::string::npos);
  EXPECT_NE(slurp(path("r.csv")).find("running.xc,7,7,2,1.0000"), std::string::npos);

  r = run({"bench", path("bench"), "--engines", "dxz,dxd", "--timeout-s", "0.000000001"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(",TO\n"), std::string::npos);
  EXPECT_EQ(r.out.find(",ok\n"), std::string::npos);
}
