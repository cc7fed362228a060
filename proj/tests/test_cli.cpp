#include <gtest/gtest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "sodbench/csv.hpp"

using namespace sodbench;
using namespace sodbench::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SODBENCH_FIXTURE_DIR;
const fs::path kDemo = kFixtures / "demo";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "sodbench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::vector<std::string> eval_args(const fs::path& root, const std::string& model, const fs::path& out) {
  return {"eval", "--root", root.string(), "--dataset", "demo", "--model", model,
          "--out", out.string(), "--quiet"};
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Usage"), std::string::npos);
  for (const char* sub : {"eval", "rank", "fuse", "stats", "bounds", "plot"}) {
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    EXPECT_EQ(run({sub, "--help"}).code, 0) << sub;
  }
}

TEST(Cli, InvalidInvocationsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"eval", "--bogus"}).code, 1);

  const Outcome t = run({"fuse", "--t", "1.5"});
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.err.find("1.5"), std::string::npos);

  TempDir dir("cliinv");
  auto args = eval_args(kFixtures, "demo_model", dir / "o");
  auto beta = args;
  beta.insert(beta.end(), {"--beta2", "0"});
  EXPECT_EQ(run(beta).code, 1);
  auto jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "0"});
  EXPECT_EQ(run(jobs).code, 1);
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, EvalOnFixture) {
  TempDir dir("clieval");
  const Outcome r = run(eval_args(kFixtures, "demo_model", dir / "out"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto records = nlohmann::json::parse(slurp(dir / "out" / "records.json"));
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0]["stem"], "a");
  EXPECT_EQ(records[2]["status"], "ok");
  EXPECT_EQ(line_count(slurp(dir / "out" / "records.csv")), 4u);
  EXPECT_EQ(line_count(slurp(dir / "out" / "curve.csv")), 257u);
  const auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
  EXPECT_EQ(summary["evaluated"], 3);
  const std::string scores = slurp(dir / "out" / "scores.csv");
  EXPECT_EQ(scores.rfind("model,dataset,S,F,E,M\ndemo_model,demo,", 0), 0u);
}

TEST(Cli, EvalIsByteIdenticalAcrossJobs) {
  TempDir dir("clidet");
  std::vector<std::string> files{"records.csv", "records.json", "curve.csv", "summary.json",
                                 "scores.csv"};
  auto a = eval_args(kFixtures, "demo_model", dir / "a");
  a.insert(a.end(), {"--jobs", "1", "--per-image-curves"});
  auto b = eval_args(kFixtures, "demo_model", dir / "b");
  b.insert(b.end(), {"--jobs", "3", "--per-image-curves"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  files.push_back("curves/b.csv");
  for (const auto& f : files) EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
}

TEST(Cli, EvalJobsFromEnvironment) {
  TempDir dir("clienv");
  ::setenv("SODBENCH_JOBS", "2", 1);
  EXPECT_EQ(run(eval_args(kFixtures, "demo_model", dir / "a")).code, 0);
  ::setenv("SODBENCH_JOBS", "0", 1);
  EXPECT_EQ(run(eval_args(kFixtures, "demo_model", dir / "b")).code, 1);
  ::setenv("SODBENCH_JOBS", "two", 1);
  const Outcome bad = run(eval_args(kFixtures, "demo_model", dir / "b"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("SODBENCH_JOBS"), std::string::npos);
  // The flag wins over the environment.
  auto args = eval_args(kFixtures, "demo_model", dir / "c");
  args.insert(args.end(), {"--jobs", "2"});
  EXPECT_EQ(run(args).code, 0);
  ::unsetenv("SODBENCH_JOBS");
}

TEST(Cli, EvalPartialFailure) {
  TempDir dir("clipart");
  fs::copy(kDemo, dir / "demo", fs::copy_options::recursive);
  {
    std::ofstream f(dir / "demo" / "pred" / "demo_model" / "b.png", std::ios::trunc);
    f << "broken";
  }
  const Outcome r = run(eval_args(dir.path(), "demo_model", dir / "out"));
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(fs::exists(dir / "out" / "scores.csv"));
  EXPECT_NE(r.err.find("--allow-partial"), std::string::npos);
  EXPECT_NE(slurp(dir / "out" / "records.csv").find("b,failed"), std::string::npos);

  auto args = eval_args(dir.path(), "demo_model", dir / "out2");
  args.push_back("--allow-partial");
  EXPECT_EQ(run(args).code, 2);
  EXPECT_TRUE(fs::exists(dir / "out2" / "scores.csv"));
}

TEST(Cli, EvalFatalErrors) {
  TempDir dir("clifatal");
  EXPECT_EQ(run(eval_args(kFixtures, "no_such_model", dir / "o")).code, 1);
  { std::ofstream f(dir / "file"); }
  const Outcome r = run(eval_args(kFixtures, "demo_model", dir / "file"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("output directory"), std::string::npos);
}

TEST(Cli, EvalFromManifest) {
  TempDir dir("climan");
  {
    std::ofstream f(dir / "m.json");
    f << nlohmann::json{{"name", "demo"},
                        {"model", "demo_model"},
                        {"pairs",
                         {{{"pred", (kDemo / "pred/demo_model/a.png").string()},
                           {"gt", (kDemo / "GT/a.png").string()}}}}}
             .dump();
  }
  const Outcome r = run({"eval", "--manifest", (dir / "m.json").string(), "--out", (dir / "o").string(), "-q"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "o" / "records.json")).size(), 1u);
}

TEST(Cli, RankTwoModels) {
  TempDir dir("clirank");
  ASSERT_EQ(run(eval_args(kFixtures, "demo_model", dir / "a")).code, 0);
  ASSERT_EQ(run(eval_args(kFixtures, "rgb_model", dir / "b")).code, 0);
  const Outcome md = run({"rank", "--scores", (dir / "a" / "scores.csv").string(), "--scores",
                      (dir / "b" / "scores.csv").string()});
  ASSERT_EQ(md.code, 0) << md.err;
  EXPECT_NE(md.out.find("| Dataset | Measure | demo_model | rgb_model |"), std::string::npos);

  const Outcome c = run({"rank", "--scores", (dir / "a" / "scores.csv").string(), "--scores",
                     (dir / "b" / "scores.csv").string(), "--format", "csv", "--out",
                     (dir / "lb.csv").string()});
  ASSERT_EQ(c.code, 0);
  const Outcome again = run({"rank", "--scores", (dir / "lb.csv").string()});
  EXPECT_EQ(again.out, md.out);
}

TEST(Cli, FuseOnFixture) {
  TempDir dir("clifuse");
  const Outcome r = run({"fuse", "--rgb", (kDemo / "pred/rgb_model").string(), "--rgbd",
                     (kDemo / "pred/demo_model").string(), "--depth",
                     (kDemo / "pred/depth_model").string(), "--out", (dir / "f").string(),
                     "--sweep", "0.01,0.15,1", "--gt", (kDemo / "GT").string(), "--depth-images",
                     (kDemo / "depth").string(), "-q"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(dir / "f" / "decisions.csv"));
  const csv::Table t = csv::read(in);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.header, (std::vector<std::string>{"image", "delta", "gate", "depth_quality"}));
  EXPECT_EQ(t.rows[0][2], "kept-depth");
  EXPECT_EQ(t.rows[2][2], "discarded-depth");
  EXPECT_EQ(t.rows[0][3], "likely-high");
  for (const char* s : {"a", "b", "c"}) EXPECT_TRUE(fs::exists(dir / "f" / (std::string(s) + ".png")));

  const SaliencyMap fused_c = load_map(dir / "f" / "c.png");
  EXPECT_EQ(fused_c, load_map(kDemo / "pred/rgb_model/c.png"));

  std::istringstream sw(slurp(dir / "f" / "sweep.csv"));
  const csv::Table s = csv::read(sw);
  ASSERT_EQ(s.rows.size(), 3u);
  EXPECT_EQ(s.rows[2][1], "3");  // t = 1 keeps every depth prediction
}

TEST(Cli, StatsOnFixture) {
  TempDir dir("clistats");
  const Outcome r = run({"stats", "--gt", (kDemo / "GT").string(), "--out", (dir / "s").string(),
                     "--bins", "10", "-q"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["masks"], 3);
  EXPECT_LE(j["size"]["min"].get<double>(), j["size"]["mean"].get<double>());
  EXPECT_EQ(line_count(slurp(dir / "s" / "distribution.csv")), 11u);
  EXPECT_EQ(line_count(slurp(dir / "s" / "masks.csv")), 4u);
}

TEST(Cli, BoundsAndPlot) {
  TempDir dir("clibp");
  ASSERT_EQ(run(eval_args(kFixtures, "demo_model", dir / "curves" / "demo_model")).code, 0);
  ASSERT_EQ(run(eval_args(kFixtures, "rgb_model", dir / "curves" / "rgb_model")).code, 0);
  const Outcome b = run({"bounds", "--a", (dir / "curves/rgb_model/records.csv").string(), "--b",
                     (dir / "curves/demo_model/records.csv").string()});
  ASSERT_EQ(b.code, 0) << b.err;
  std::istringstream in(b.out);
  const csv::Table t = csv::read(in);
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& row : t.rows) {
    const double lo = csv::parse_double(row[1]);
    const double hi = csv::parse_double(row[2]);
    const double a = csv::parse_double(row[3]);
    if (row[0] == "M") {
      EXPECT_GE(lo, a);
      EXPECT_LE(hi, a);
    } else {
      EXPECT_LE(lo, a);
      EXPECT_GE(hi, a);
    }
  }

  const Outcome p = run({"plot", "--curves", (dir / "curves").string(), "--svg", (dir / "pr.svg").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  const std::string svg = slurp(dir / "pr.svg");
  EXPECT_NE(svg.find("data-model=\"demo_model\""), std::string::npos);
  EXPECT_NE(svg.find("data-model=\"rgb_model\""), std::string::npos);
  EXPECT_EQ(run({"plot", "--curves", (dir / "nothing").string(), "--svg", (dir / "x.svg").string()}).code, 1);
}
