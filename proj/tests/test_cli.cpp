#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(COSTRAT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("costrat_cli_test_" + name);
}

}  // namespace

TEST(Cli, ClebschGordan) {
  const auto r = run("symbol cg 1 1 1 -1 2 0");
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(std::stod(r.out), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Cli, NineJAndSixJ) {
  const auto nine = run("symbol 9j 0 0 0 0 0 0 0 0 0");
  ASSERT_EQ(nine.status, 0);
  EXPECT_EQ(std::stod(nine.out), 1.0);
  const auto six = run("symbol 6j 1 1 2 1 1 2");
  ASSERT_EQ(six.status, 0);
  EXPECT_NEAR(std::stod(six.out), 1.0 / 6.0, 1e-15);
}

TEST(Cli, RejectsInvalidSymbols) {
  EXPECT_EQ(run("symbol cg 1 2 1 1 2 3").status, 2);  // parity mismatch
  EXPECT_EQ(run("symbol 6j 1 1 2").status, 2);
  EXPECT_EQ(run("symbol 10j 1 1 1").status, 2);
}

TEST(Cli, HelpAndBadFlags) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("basis --nonsense").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST(Cli, Basis) {
  const auto r = run("basis --n 2 --cutoff2 1");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["version"], "costrat-1");
  EXPECT_EQ(j["count"], 5);
  EXPECT_EQ(j["indices"][0]["index"], "[0,0|0|0|0]");
}

TEST(Cli, StrataInvariant) {
  const auto r = run("strata pT --n 2 --r 1 --s 2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["terms"].size(), 5u);
  EXPECT_EQ(j["terms"][0]["c"], -3.0);
}

TEST(Cli, SpectrumSinglePlaquette) {
  const auto r = run("spectrum --dims 2,2 --cutoff2 2 --k 1");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["version"], "costrat-1");
  EXPECT_EQ(j["dimension"], 3);
  EXPECT_NEAR(j["eigenvalues"][0].get<double>(), -1.6431586808711065, 1e-12);
}

TEST(Cli, MultiplyFromFileRoundTrip) {
  const auto file = temp_path("vector.json");
  const auto first = run("multiply '[1|1||]' '[1|1||]' --out " + file.string());
  ASSERT_EQ(first.status, 0);
  std::ifstream in(file);
  const auto product = nlohmann::json::parse(in);
  ASSERT_EQ(product["terms"].size(), 2u);
  // (chi_0 + chi_1) * chi_0 = chi_0 + chi_1.
  const auto second = run("multiply " + file.string() + " '[0|0||]'");
  ASSERT_EQ(second.status, 0);
  EXPECT_EQ(nlohmann::json::parse(second.out)["terms"], product["terms"]);
  std::filesystem::remove(file);
  EXPECT_EQ(run("multiply '[1|1||]' '[0,0|0|0|0]'").status, 2);
}
