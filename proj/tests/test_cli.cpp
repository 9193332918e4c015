#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using caustica::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("caustica_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, Case) {
  const Result r = cli({"case", "--a", "1", "--b", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Case4\n");
  EXPECT_EQ(cli({"case", "--a", "1", "--b", "2"}).out, "Case1\nboundary b = 2a\n");
}

TEST(Cli, Points) {
  const Result r = cli({"points", "--a", "1", "--b", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("G1 infinite"), std::string::npos);
  EXPECT_NE(r.out.find("J1 not_real"), std::string::npos);
}

TEST(Cli, NormalsJson) {
  const Result r = cli({"normals", "--a", "1", "--b", "4", "--point", "0,0,5", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "caustica/1");
  EXPECT_EQ(j["count"], 5);
  EXPECT_EQ(j["feet"].size(), 5u);
}

TEST(Cli, ClassifyAndOnSurface) {
  Result r = cli({"classify", "--a", "1", "--b", "4", "--point", "0,0,0.1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("count 1\nlocation interior_below\n", 0), 0u);
  r = cli({"on-surface", "--a", "1", "--b", "3", "--xy", "0,0.94280904158206336"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("count 2\n", 0), 0u);
}

TEST(Cli, VerifyAndParabola) {
  EXPECT_NE(cli({"verify", "--a", "1", "--b", "4", "--point", "0.3,0.5,2"}).out.find("agree"), std::string::npos);
  const Result r = cli({"parabola2d", "--a", "1", "--point", "0,5"});
  EXPECT_EQ(r.out.rfind("count 3\nneile above\n", 0), 0u);
  // The cusp of Neile's curve sits in the boundary band.
  EXPECT_EQ(cli({"parabola2d", "--a", "1", "--point", "0,1"}).code, 0);
  EXPECT_EQ(cli({"--strict", "parabola2d", "--a", "1", "--point", "0,1"}).code, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"case", "--a", "1"}).code, 2);
  EXPECT_EQ(cli({"case", "--a", "2", "--b", "1"}).code, 2);
  Result r = cli({"normals", "--a", "1", "--b", "4", "--point", "1,2"});
  EXPECT_EQ(r.code, 2);
  r = cli({"case", "--a", "1", "--b", "4", "--frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("frobnicate"), std::string::npos);
  EXPECT_EQ(cli({"caustic-mesh", "--a", "1", "--b", "4", "--sheet", "3"}).code, 2);
  EXPECT_EQ(cli({"curves", "--a", "1", "--b", "4", "--id", "7"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ConfigMerging) {
  const fs::path d = scratch("config");
  std::ofstream(d / "run.cfg") << "# shared\na = 1\nb = 2.5\nsamples = 100\njson = false\n";
  Result r = cli({"--config", (d / "run.cfg").string(), "case"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Case2\n");
  r = cli({"--config", (d / "run.cfg").string(), "case", "--b", "4"});
  EXPECT_EQ(r.out, "Case4\n");  // flags win over the file
  std::ofstream(d / "bad.cfg") << "a = 1\nb = 4\nwidth = 3\n";
  r = cli({"--config", (d / "bad.cfg").string(), "case"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("width"), std::string::npos);
  EXPECT_EQ(cli({"--config", (d / "missing.cfg").string(), "case"}).code, 2);
  fs::remove_all(d);
}

TEST(Cli, FilesAreDeterministic) {
  const fs::path d = scratch("determinism");
  std::ofstream(d / "run.cfg") << "a = 1\nb = 4\nsamples = 2000\nseed = 9\nsheet = 1\nn = 12\n";
  for (const char* sub : {"one", "two"}) {
    const std::string out = (d / sub).string();
    ASSERT_EQ(cli({"--config", (d / "run.cfg").string(), "--out", out, "census"}).code, 0);
    ASSERT_EQ(cli({"--config", (d / "run.cfg").string(), "--out", out, "caustic-mesh"}).code, 0);
    ASSERT_EQ(cli({"--config", (d / "run.cfg").string(), "--out", out, "curves", "--id", "nodal"}).code, 0);
  }
  for (const char* f : {"census.json", "caustic_sheet1.obj", "caustic_sheet1.ply", "curve_nodal.csv"}) {
    const std::string a = slurp(d / "one" / f), b = slurp(d / "two" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, b) << f;
  }
  const auto j = nlohmann::json::parse(slurp(d / "one" / "census.json"));
  EXPECT_EQ(j["kind"], "census");
  EXPECT_EQ(j["seed"], 9);
  fs::remove_all(d);
}

TEST(Cli, MeshToStdout) {
  const Result r = cli({"caustic-mesh", "--a", "1", "--b", "4", "--n", "2", "--format", "ply"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("ply\n", 0), 0u);
  EXPECT_EQ(cli({"caustic-mesh", "--a", "1", "--b", "4", "--format", "both"}).code, 2);
}
