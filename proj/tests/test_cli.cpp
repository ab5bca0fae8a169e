#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = fixdyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const fs::path& path, const std::string& body) { std::ofstream(path, std::ios::binary) << body; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fixdyn_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CensusExamples) {
  auto r = run({"census", "--p", "3", "--n", "2", "--ell", "1", "--family", "prime-power", "--c", "all"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "p,n,ell,family,c_class,c_repr,fixed_count");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 9);
  EXPECT_NE(r.out.find("3,2,1,prime-power,0,0,3\n"), std::string::npos);
  EXPECT_NE(r.out.find("3,2,1,prime-power,other,t,3\n"), std::string::npos);

  r = run({"census", "--p", "5", "--n", "1", "--ell", "1", "--family", "pminus1", "--c", "0,1,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "p,n,ell,family,c_class,c_repr,fixed_count\n"
            "5,1,1,pminus1,0,0,2\n"
            "5,1,1,pminus1,1,1,1\n"
            "5,1,1,pminus1,-1,4,0\n");

  r = run({"census", "--p", "5", "--n", "1", "--c", ""});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p,n,ell,family,c_class,c_repr,fixed_count\n");
}

TEST_F(CliTest, CensusCapErrorNamesPoint) {
  auto r = run({"--field-cap", "100", "census", "--p", "3", "--n", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("F_3^5"), std::string::npos);

  r = run({"--exp-cap", "100", "census", "--p", "11", "--n", "1", "--ell", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("p=11"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"census", "--p", "x", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"census", "--p", "4", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"census", "--p", "3", "--n", "1", "--family", "nope"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "density", "--kind", "nc3", "--c", "30"}).code, 2);
  EXPECT_EQ(run({"density", "--kind", "nc9", "--c", "30"}).code, 2);
  EXPECT_EQ(run({"claims", "--p", "3,x"}).code, 2);
  EXPECT_EQ(run({"nf", "--d", "3"}).code, 2);
  EXPECT_EQ(run({"nf", "--d", "3", "--X", "100", "--height", "2"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ClaimsGridAndFailsIsData) {
  auto r = run({"--format", "json", "claims", "--p", "3,5", "--n", "1,2", "--ell", "1"});
  EXPECT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc.size(), 8u);
  bool found = false;
  for (const auto& rep : doc) {
    ASSERT_TRUE(rep.contains("claim") && rep.contains("quote") && rep.contains("grid"));
    for (const auto& pt : rep["grid"]) {
      for (const char* key : {"p", "n", "ell", "status", "witnesses"}) ASSERT_TRUE(pt.contains(key)) << key;
      for (const auto& w : pt["witnesses"]) {
        ASSERT_TRUE(w["c"].is_string() && w["predicted"].is_number() && w["actual"].is_number());
      }
      if (rep["claim"] == "C-2.1" && pt["p"] == 3 && pt["n"] == 2) {
        EXPECT_EQ(pt["status"], "FAILS");
        EXPECT_EQ(pt["witnesses"][0]["c"], "t");
        found = true;
      }
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(CliTest, ClaimsExpectations) {
  const auto golden = dir_ / "golden.json";
  auto self = run({"--format", "json", "--out", golden.string(), "claims", "--p", "5", "--n", "1", "--ell", "1"});
  ASSERT_EQ(self.code, 0);
  EXPECT_EQ(run({"claims", "--p", "5", "--n", "1", "--ell", "1", "--expect", golden.string()}).code, 0);

  const auto pinned = dir_ / "pinned.json";
  write(pinned, R"([{"claim": "C-3.1", "grid": [{"p": 5, "n": 2, "ell": 1, "status": "HOLDS"}]}])");
  auto r = run({"claims", "--p", "5", "--n", "2", "--ell", "1", "--expect", pinned.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("C-3.1"), std::string::npos);

  write(pinned, "not json");
  EXPECT_EQ(run({"claims", "--p", "5", "--n", "1", "--expect", pinned.string()}).code, 2);
}

TEST_F(CliTest, AvgDensityNfOrbits) {
  auto r = run({"avg", "--family", "prime-power", "--selector", "p|c", "--c", "3,15"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "c,selector,numerator,denominator,ratio\n3,p|c,3,1,3.000000\n15,p|c,8,2,4.000000\n");

  r = run({"--format", "json", "avg", "--family", "prime-power", "--c", "15"});
  EXPECT_EQ(json::parse(r.out)[0]["ratio"], "4");

  r = run({"density", "--kind", "nc3", "--c", "30"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("30,nc3,2,9,0.222222\n"), std::string::npos);

  r = run({"--format", "json", "density", "--kind", "nc3", "--c", "30"});
  EXPECT_EQ(json::parse(r.out)[0]["ratio"], "2/9");

  r = run({"--format", "json", "nf", "--d", "3", "--X", "100"});
  EXPECT_EQ(r.code, 0);
  const auto nf = json::parse(r.out)[0];
  EXPECT_EQ(nf["count"], 2);
  for (const char* key : {"d", "X", "count", "unknown", "exponent_ref", "bound_ok"}) EXPECT_TRUE(nf.contains(key));

  r = run({"nf", "--d", "3", "--height", "2"});
  EXPECT_NE(r.out.find("3,2,17"), std::string::npos);

  r = run({"--format", "json", "nf", "--d", "3", "--squarefree", "10"});
  const auto sq = json::parse(r.out);
  EXPECT_EQ(sq["fraction"], "1/2");
  EXPECT_EQ(sq["reference_inv_zeta2"], "0.607927");

  r = run({"nf", "--d", "3", "--trinomials", "1"});
  EXPECT_EQ(r.out,
            "d,c,disc,height,irreducibility,squarefree\n"
            "3,-1,-23,1.000000,IRREDUCIBLE,yes\n"
            "3,0,4,0.000000,REDUCIBLE,no\n"
            "3,1,-23,1.000000,IRREDUCIBLE,yes\n");

  r = run({"--format", "json", "orbits", "--p", "5", "--n", "1", "--d", "4", "--c", "2"});
  EXPECT_EQ(r.code, 0);
  const auto orb = json::parse(r.out);
  EXPECT_EQ(orb["components"], 1);
  EXPECT_EQ(orb["cycle_lengths"], json::array({1}));
  EXPECT_EQ(orb["fixed_points"], 1);
  EXPECT_EQ(orb["max_tail"], 2);
}

TEST_F(CliTest, PlotData) {
  const auto plot = dir_ / "plot.csv";
  auto r = run({"density", "--kind", "nc3", "--c", "30,100", "--emit-plot-data", plot.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(plot), "c,ratio\n30,0.222222\n100,0.041667\n");
}

TEST_F(CliTest, DeterministicOutputFiles) {
  const std::vector<std::vector<std::string>> commands{
      {"census", "--p", "3,5,7", "--n", "1,2", "--ell", "1,2", "--c", "all"},
      {"claims", "--p", "3,5,7", "--n", "1,2", "--ell", "1,2"},
      {"avg", "--family", "pminus1", "--selector", "p|c-1", "--c", "30,100,300"},
      {"density", "--kind", "mc0", "--c", "100,1000"},
      {"nf", "--d", "4", "--X", "100,10000"},
      {"orbits", "--p", "7", "--n", "2", "--family", "prime-power", "--c", "t"},
  };
  int i = 0;
  for (const auto& cmd : commands) {
    for (const std::string format : {"csv", "json"}) {
      std::vector<std::string> outputs;
      for (const std::string jobs : {"1", "1", "3"}) {
        const auto path = dir_ / ("run" + std::to_string(i++));
        std::vector<std::string> args{"--format", format, "--jobs", jobs, "--out", path.string()};
        args.insert(args.end(), cmd.begin(), cmd.end());
        ASSERT_EQ(run(args).code, 0) << cmd[0];
        outputs.push_back(slurp(path));
      }
      EXPECT_FALSE(outputs[0].empty());
      EXPECT_EQ(outputs[0], outputs[1]) << cmd[0];
      EXPECT_EQ(outputs[0], outputs[2]) << cmd[0];
    }
  }
}

TEST_F(CliTest, ConfigFile) {
  const auto cfg = dir_ / "cfg.json";
  write(cfg, R"({"format": "json", "field_cap": 100})");
  auto r = run({"--config", cfg.string(), "density", "--kind", "nc3", "--c", "30"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).is_array());

  // Flags override file values.
  r = run({"--config", cfg.string(), "--format", "csv", "density", "--kind", "nc3", "--c", "30"});
  EXPECT_EQ(r.out.rfind("c,kind", 0), 0u);
  EXPECT_EQ(run({"--config", cfg.string(), "census", "--p", "3", "--n", "5"}).code, 2);
  EXPECT_EQ(run({"--config", cfg.string(), "--field-cap", "1000", "census", "--p", "3", "--n", "5"}).code, 0);

  write(cfg, R"({"format": "json", "colour": "blue"})");
  r = run({"--config", cfg.string(), "density", "--kind", "nc3", "--c", "30"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("colour"), std::string::npos);

  write(cfg, R"({"field_cap": 0})");
  EXPECT_EQ(run({"--config", cfg.string(), "density", "--kind", "nc3", "--c", "30"}).code, 2);
  EXPECT_EQ(run({"--config", (dir_ / "missing.json").string(), "density", "--kind", "nc3", "--c", "30"}).code, 2);
}
