#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "pareto_tame/problem.hpp"

namespace pt = pareto_tame;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = pt::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("pareto_tame_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, CheckConcludesExistenceOnEscapeExample) {
  const CliRun r = run({"check", "--theorem", "5.1", "examples/ex_5_8.prob"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("weak-solution-exists"), std::string::npos);
}

TEST(Cli, RabierAtOrigin) {
  const CliRun r = run({"rabier", "--at", "0,0", "examples/ex_5_8.prob"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("nu = 0\n"), std::string::npos) << r.out;
}

TEST(Cli, FrontOfToyQuadrant) {
  const auto dir = temp_dir("front");
  const CliRun r = run({"front", "--window", "-2,2,-2,2", "--res", "81", "--out", dir.string(),
                     "examples/toy_quadrant.prob"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("strong = 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("(0, 0)"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(dir / "front.csv"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"rabier", "no_such_problem.prob"}).code, 2);
  EXPECT_EQ(run({"explode", "examples/ex_5_8.prob"}).code, 2);
  EXPECT_EQ(run({"rabier", "--at", "1", "examples/ex_5_8.prob"}).code, 2);
  EXPECT_EQ(run({"rabier", "--at", "-5,0", "examples/ex_5_8.prob"}).code, 2);
  EXPECT_EQ(run({"check", "--theorem", "9.9", "examples/ex_5_8.prob"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MalformedFileNamesTheLine) {
  const auto dir = temp_dir("bad");
  const auto path = dir / "bad.prob";
  std::ofstream(path) << "dimension = 1\nanchor = 0\n[objectives]\nf1 = x1 ^\n";
  const CliRun r = run({"rabier", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST(Cli, EveryFixtureRunsEveryCommand) {
  const auto dir = temp_dir("all");
  for (const auto& p : pt::fixtures()) {
    const std::string file = "examples/" + p.name + ".prob";
    for (const char* cmd : {"rabier", "tangency", "sections", "index-set", "descent-chain", "front",
                            "limit-sets", "check", "equivalence", "report"}) {
      const std::string c = cmd;
      // Commands that need probe paths or an index set only apply when the
      // fixture supplies them.
      if ((c == "limit-sets") && p.probes.empty()) continue;
      if (c == "equivalence" && (p.probes.empty() || !p.index_set)) continue;
      if (c == "check" && !p.index_set) continue;
      const CliRun r = run({c, "--out", dir.string(), file});
      EXPECT_EQ(r.code, 0) << p.name << " " << c << ": " << r.err;
    }
  }
}

TEST(Cli, ReportIsDeterministic) {
  const CliRun a = run({"report", "examples/ex_5_9.prob"});
  const CliRun b = run({"report", "examples/ex_5_9.prob"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
