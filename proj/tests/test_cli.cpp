#include "birev/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace birev;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("birev_test_" + name)).string();
}

}  // namespace

TEST(Zeta, PrintsClassicalLine) {
  auto r = run({"zeta", "--order", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "sigma(4) = pi^4/96, zeta(4) = pi^4/90\n");
}

TEST(Zeta, OddOrder) {
  auto r = run({"zeta", "--order", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "tau(3) = pi^3/32\n");
}

TEST(Zeta, JsonReportHasChecks) {
  auto r = run({"zeta", "--order", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["value"], "pi^2/8");
  EXPECT_EQ(j["result"]["zeta"], "pi^2/6");
  ASSERT_EQ(j["checks"].size(), 2u);
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c["pass"].get<bool>());
    for (const char* key : {"name", "expected", "actual", "tolerance"}) EXPECT_TRUE(c.contains(key));
  }
  EXPECT_TRUE(j.contains("config"));
}

TEST(LinearEvolve, TimeZeroReproducesStepSamples) {
  auto r = run({"linear-evolve", "--dispersion", "monomial:2", "--ic", "step", "--time", "0", "--truncation", "2047",
                "--grid", "4096"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 12), "x,u_re,u_im\n");
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4096u);
  for (const auto& row : rows) {
    const double x = row[0];
    if (std::min({x, std::abs(x - pi), 2 * pi - x}) < 0.1) continue;
    EXPECT_NEAR(row[1], x < pi ? -1.0 : 1.0, 2e-2) << x;
    EXPECT_NEAR(row[2], 0.0, 1e-12);
  }
}

TEST(LinearEvolve, DeterministicBytes) {
  std::vector<std::string> args{"linear-evolve", "--time", "0.5", "--truncation", "255", "--grid", "1024"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(LinearEvolve, SeventeenDigitsAndLineFeeds) {
  auto r = run({"linear-evolve", "--time", "pi*1/2", "--truncation", "3", "--grid", "8"});
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  EXPECT_NE(r.out.find("0.78539816339744828,"), std::string::npos);
}

TEST(LinearEvolve, ShiftedDomain) {
  auto r = run({"linear-evolve", "--time", "0", "--truncation", "3", "--grid", "8", "--shift"});
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_DOUBLE_EQ(rows.front()[0], -pi);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i][0], rows[i - 1][0]);
  EXPECT_LT(rows.back()[0], pi);
}

TEST(LinearEvolve, HilbertDispersion) {
  auto r = run({"linear-evolve", "--dispersion", "frac:1.5", "--time", "pi*1/3", "--truncation", "255", "--grid", "1024"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_csv(r.out).size(), 1024u);
}

TEST(ClosedForm, BeamThirdPiPieces) {
  auto r = run({"closed-form", "--equation", "beam", "--time", "pi*1/3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  // second piece at its left end: -sqrt3 pi^2/18 - 1
  const auto& p = rows[1];
  const double x = pi / 3;
  EXPECT_NEAR(p[0], x, 1e-15);
  EXPECT_NEAR(p[2] + p[3] * x + p[4] * x * x, -std::sqrt(3.0) * pi * pi / 18 - 1, 1e-12);
  for (const auto& row : rows) {
    const double c2 = std::abs(row[4]);
    EXPECT_TRUE(std::abs(c2 - std::sqrt(3.0) / 6) < 1e-12 || std::abs(c2 - std::sqrt(3.0) / 3) < 1e-12) << c2;
  }
}

TEST(ClosedForm, DecimalTimeRejected) {
  auto r = run({"closed-form", "--time", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("time"), std::string::npos);
}

TEST(ClosedForm, SampledCsv) {
  auto r = run({"closed-form", "--time", "pi*1/2", "--format", "csv", "--grid", "8"});
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_NEAR(rows[2][1], -pi * pi / 8, 1e-12);
}

TEST(RevivalCoeffs, SineBoxesAtThirdPi) {
  auto r = run({"revival-coeffs", "--time", "pi*1/3", "--trig", "sin"});
  ASSERT_EQ(r.code, 0);
  auto rows = parse_csv(r.out);
  const double s = std::sqrt(3.0) / 3;
  const double expect[] = {-s, -2 * s, -s, s, 2 * s, s};
  ASSERT_EQ(rows.size(), 6u);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(rows[j][3], expect[j], 1e-12);
}

TEST(Compare, WritesJsonFile) {
  const auto path = temp_path("compare.json");
  auto r = run({"compare", "--time", "pi*1/2", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("compare beam"), std::string::npos);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  EXPECT_LT(j["result"]["sup_error_excluded"].get<double>(), 1e-2);
  EXPECT_TRUE(j["checks"][0]["pass"].get<bool>());
  std::filesystem::remove(path);
}

TEST(Compare, FailingCheckGivesNonzeroExit) {
  auto r = run({"compare", "--time", "pi*1/3", "--tolerance", "1e-9"});
  EXPECT_EQ(r.code, 1);
}

TEST(ConfigFile, FlagsOverrideFile) {
  const auto path = temp_path("run.cfg");
  {
    std::ofstream f(path);
    f << "order=6\nformat=json\n";
  }
  auto from_file = run({"zeta", "--config", path});
  EXPECT_EQ(nlohmann::json::parse(from_file.out)["result"]["value"], "pi^6/960");
  auto overridden = run({"zeta", "--config", path, "--order", "4"});
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["result"]["value"], "pi^4/96");
  std::filesystem::remove(path);
}

TEST(Errors, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"zeta", "--order", "1"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"linear-evolve", "--dispersion", "monomial:1"}).code, 2);
  EXPECT_EQ(run({"linear-evolve", "--time", "pi*x"}).code, 2);
  EXPECT_EQ(run({"linear-evolve", "--grid", "100"}).code, 2);
  EXPECT_EQ(run({"linear-evolve", "--ic", "banana"}).code, 2);
  EXPECT_EQ(run({"zeta", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonlinear-evolve", "--modes", "100"}).code, 2);
  auto r = run({"asymptotic-gap", "--dispersion", "frac:1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("dispersion"), std::string::npos);
}

TEST(Errors, NumericalAbortExitsThree) {
  auto r = run({"nonlinear-evolve", "--modes", "64", "--dt", "0.5", "--time", "2000"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("advisory"), std::string::npos);
  EXPECT_NE(r.err.find("numerical abort"), std::string::npos);
}

TEST(NonlinearEvolve, SmallRun) {
  auto r = run({"nonlinear-evolve", "--mu", "1", "--eps", "1", "--modes", "64", "--time", "0.1", "--ic", "sin", "--g",
                "zero"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_csv(r.out).size(), 64u);
  EXPECT_NE(r.err.find("energy"), std::string::npos);
}

TEST(PiecewiseFile, ReadsCoefficients) {
  const auto path = temp_path("ic.csv");
  {
    std::ofstream f(path);
    f << "q=2\n0,0\n1,1\n2,0\n3,0\n";
  }
  auto r = run({"linear-evolve", "--ic", "file:" + path, "--g", "zero", "--time", "0", "--truncation", "1023", "--grid",
                "2048"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  EXPECT_NEAR(rows[768][1], 1.0, 2e-2);  // x = 3pi/4
  EXPECT_NEAR(rows[1536][1], 0.0, 2e-2);
  std::filesystem::remove(path);
}

TEST(FractalDim, JsonReport) {
  auto r = run({"fractal-dim", "--time", "0.5", "--g", "zero", "--grid", "16384"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double d = nlohmann::json::parse(r.out)["result"]["dimension"];
  EXPECT_GE(d, 1.3);
  EXPECT_LE(d, 1.7);
}

TEST(AsymptoticGap, Boussinesq) {
  auto r = run({"asymptotic-gap", "--dispersion", "boussinesq", "--times", "0.1,0.5,pi*1/3,pi*1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["rows"].size(), 4u);
  EXPECT_LT(j["result"]["max_bound"].get<double>(), 1.0);
}
