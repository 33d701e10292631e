#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mlwng/cli.hpp"

namespace mlwng::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mlwng_cli_" + name);
  fs::remove_all(p);
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

TEST(Cli, GenerateRandomGraphToStdout) {
  const Result r = call({"generate", "--model", "rg", "--n", "100", "--k", "6", "--seed", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("N 100\n", 0), 0u);
  EXPECT_NE(r.err.find("edges 300\n"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("avg_degree 6\n"), std::string::npos) << r.err;
}

TEST(Cli, GenerateMlwWritesFileAndCommunityStats) {
  const fs::path file = scratch("mlw.edges");
  const Result r = call({"generate", "--n", "300", "--rho", "0.5", "--m0", "5", "--seed", "2",
                         "--out", file.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(fs::exists(file));
  EXPECT_NE(r.out.find("communities 30\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("connected yes\n"), std::string::npos) << r.out;

  const Result s = call({"stats", file.string()});
  ASSERT_EQ(s.code, kOk) << s.err;
  EXPECT_NE(s.out.find("nodes 300\n"), std::string::npos);
  EXPECT_NE(s.out.find("mean_ratio "), std::string::npos);
}

TEST(Cli, InvalidModelParameterIsUsageError) {
  const Result r = call({"generate", "--m0", "2"});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("m0"), std::string::npos) << r.err;
}

TEST(Cli, RunConvergesOnCompleteGraph) {
  const fs::path traj = scratch("traj.csv");
  const Result r = call({"run", "--model", "complete", "--n", "50", "--seed", "4", "--trajectory",
                         traj.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("status converged\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("final_n_diff 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("final_n_total 50\n"), std::string::npos);
  std::ifstream in(traj);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "step,n_total,n_diff,success_rate");
}

TEST(Cli, RunReportsNonConvergenceAtCap) {
  const Result r = call({"run", "--model", "complete", "--n", "50", "--max-steps", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("status NON-CONVERGED\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("steps 3\n"), std::string::npos);
}

TEST(Cli, ZeroMaxStepsIsUsageError) {
  EXPECT_EQ(call({"run", "--model", "complete", "--max-steps", "0"}).code, kUsageError);
}

TEST(Cli, DisconnectedGraphIsRejected) {
  const fs::path file = scratch("split.edges");
  write_file(file, "N 4\n0 1\n2 3\n");
  const Result r = call({"run", "--graph", file.string()});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("disconnected"), std::string::npos) << r.err;
}

TEST(Cli, MissingFileIsUsageError) {
  EXPECT_EQ(call({"stats", "/nonexistent/graph.edges"}).code, kUsageError);
}

TEST(Cli, SweepWritesResults) {
  const fs::path dir = scratch("sweep");
  fs::create_directories(dir);
  write_file(dir / "cfg.json",
             R"({"kind": "m0_sweep", "n": 100, "rho": 0.5, "m0_values": [3, 5], "runs": 2,)"
             R"( "max_steps": 100000, "workers": 1, "stagnation_window": 10000})");
  const fs::path out = dir / "results";
  const Result r = call({"sweep", (dir / "cfg.json").string(), "--runs", "3", "--out",
                         out.string(), "--no-series"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("label,runs,converged,censored_median\nm0-3,3,", 0), 0u) << r.out;
  for (const char* f : {"config.json", "summary.csv", "runs.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_FALSE(fs::exists(out / "series"));
  std::ifstream echoed(out / "config.json");
  std::stringstream text;
  text << echoed.rdbuf();
  EXPECT_NE(text.str().find("\"runs\": 3"), std::string::npos) << text.str();
}

TEST(Cli, SweepRejectsUnknownConfigKey) {
  const fs::path dir = scratch("badcfg");
  fs::create_directories(dir);
  write_file(dir / "cfg.json", R"({"m_0": [3]})");
  const Result r = call({"sweep", (dir / "cfg.json").string(), "--out", (dir / "o").string()});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("m_0"), std::string::npos) << r.err;
}

TEST(Cli, HelpAndMissingSubcommand) {
  const Result help = call({"run", "--help"});
  EXPECT_EQ(help.code, kOk);
  EXPECT_NE(help.out.find("--max-steps"), std::string::npos);
  EXPECT_NE(help.out.find("--selection"), std::string::npos);
  EXPECT_EQ(call({}).code, kUsageError);
}

}  // namespace
}  // namespace mlwng::cli
