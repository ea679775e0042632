#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heisenspec/cli.hpp"

using heisenspec::cli::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = heisenspec::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("heisenspec_test_" + name);
}

}  // namespace

TEST(Cli, MomentsJson) {
  const auto r = run({"moments", "--k", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["k"], 4);
  EXPECT_EQ(j["value"], "7/64");
  EXPECT_EQ(j["schema"], "heisenspec/1");
}

TEST(Cli, MomentsCsvAndModulus) {
  const auto r = run({"moments", "--k", "5", "--modulus", "5", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 8), "k,value\n");
  EXPECT_NE(r.out.find("\n2,1/4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n1,0/1\n"), std::string::npos);
}

TEST(Cli, MomentsCap) {
  const auto r = run({"moments", "--k", "31"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cap of 30"), std::string::npos);
}

TEST(Cli, JsonKeysSorted) {
  const auto r = run({"theorem43", "--n", "8", "--alpha", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> keys;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("  \"", 0) == 0) keys.push_back(line.substr(3, line.find('"', 3) - 3));
  EXPECT_GT(keys.size(), 10u);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["N"], 67);
  EXPECT_TRUE(j["lower_ok"].get<bool>());
}

TEST(Cli, MaxEig) {
  const auto r = run({"maxeig", "--n", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_GE(j["gap_times_n"].get<double>(), 6.2);
  EXPECT_LE(j["gap_times_n"].get<double>(), 6.4);
  EXPECT_EQ(j["method"], "power");
  const auto all = Json::parse(run({"maxeig", "--n", "53", "--all-q"}).out);
  EXPECT_GE(all["argmax_q"].get<int>(), 1);
  const auto q = Json::parse(run({"maxeig", "--n", "199", "--q", "40"}).out);
  EXPECT_NEAR(q["lambda"].get<double>(), heisenspec::top_eigenvalue(heisenspec::HarperMatrix(199, 40)), 1e-10);
  EXPECT_EQ(run({"maxeig", "--n", "7", "--q", "7"}).code, 1);
  EXPECT_EQ(run({"maxeig", "--n", "7", "--q", "2", "--all-q"}).code, 1);
}

TEST(Cli, BoundsCsv) {
  const auto r = run({"bounds", "--lemma", "2.2", "--nmin", "53", "--nmax", "80"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,lambda_or_mu,bound_low,bound_high,pass");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 7);  // 53 59 61 67 71 73 79
  EXPECT_EQ(r.out.find("false"), std::string::npos);
  const auto r3 = run({"bounds", "--lemma", "2.3", "--nmin", "53", "--nmax", "60"});
  ASSERT_EQ(r3.code, 0);
  EXPECT_NE(r3.out.find("53,"), std::string::npos);
  EXPECT_NE(r3.err.find("argmax_q"), std::string::npos);
  EXPECT_EQ(run({"bounds", "--lemma", "2.4", "--nmin", "53", "--nmax", "60"}).code, 1);
  EXPECT_EQ(run({"bounds", "--lemma", "2.2", "--nmin", "11", "--nmax", "60"}).code, 1);
}

TEST(Cli, ThresholdOverrides) {
  EXPECT_EQ(run({"--n0-threshold", "11", "bounds", "--lemma", "2.2", "--nmin", "11", "--nmax", "13"}).code, 0);
  EXPECT_EQ(run({"bounds", "--lemma", "2.2", "--nmin", "11", "--nmax", "13", "--n0-threshold", "11"}).code, 0);
  ::setenv(heisenspec::cli::kEnvN0, "11", 1);
  EXPECT_EQ(run({"bounds", "--lemma", "2.2", "--nmin", "11", "--nmax", "13"}).code, 0);
  ::setenv(heisenspec::cli::kEnvN0, "eleven", 1);
  EXPECT_EQ(run({"bounds", "--lemma", "2.2", "--nmin", "11", "--nmax", "13"}).code, 1);
  ::unsetenv(heisenspec::cli::kEnvN0);

  ::setenv(heisenspec::cli::kEnvDeskGuard, "50", 1);
  EXPECT_EQ(run({"measure", "--modulus", "53", "--edges", "0.1"}).code, 1);
  ::unsetenv(heisenspec::cli::kEnvDeskGuard);
  EXPECT_EQ(run({"measure", "--modulus", "53", "--edges", "0.1"}).code, 0);
}

TEST(Cli, Charpoly) {
  const auto j = Json::parse(run({"charpoly", "--n", "3", "--q", "1"}).out);
  const auto c = j["coefficients"].get<std::vector<double>>();
  ASSERT_EQ(c.size(), 4u);
  EXPECT_NEAR(c[0], -4.0, 1e-12);
  EXPECT_NEAR(c[1], -6.0, 1e-12);
  const auto e = Json::parse(run({"charpoly", "--n", "3", "--q", "1", "--eval", "0"}).out);
  EXPECT_NEAR(e["value"].get<double>(), -4.0, 1e-12);
  EXPECT_EQ(run({"charpoly", "--n", "3", "--q", "1", "--eval", "0", "--expand"}).code, 1);
  EXPECT_EQ(run({"charpoly", "--n", "80", "--q", "1", "--expand"}).code, 1);
}

TEST(Cli, ButterflyCsvAndSvg) {
  const auto csv = temp_path("bands.csv"), svg = temp_path("bands.svg");
  const auto r = run({"butterfly", "--max-denominator", "3", "--out", csv.string(), "--svg", svg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto text = slurp(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "n,q,band_index,lower,upper");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
  EXPECT_NE(text.find("3,1,1,-2.4494897427831"), std::string::npos);
  EXPECT_EQ(text.find("-0,"), std::string::npos);
  EXPECT_EQ(text.find("-0\n"), std::string::npos);
  const auto s = slurp(svg);
  std::size_t lines = 0;
  for (auto p = s.find("<line"); p != std::string::npos; p = s.find("<line", p + 1)) ++lines;
  EXPECT_EQ(lines, 6u);
  EXPECT_EQ(run({"butterfly", "--max-denominator", "3", "--svg", svg.string(), "--width", "0"}).code, 1);
  std::filesystem::remove(csv);
  std::filesystem::remove(svg);
}

TEST(Cli, MeasureAndFilter) {
  const auto r = run({"measure", "--modulus", "17", "--edges", "1,0.5,0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = r.out.find("\n1,");
  ASSERT_NE(row, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(row + 3)), 1.0, 1e-12);
  EXPECT_EQ(run({"measure", "--modulus", "15", "--edges", "0.1"}).code, 1);
  EXPECT_EQ(run({"measure", "--modulus", "17", "--edges", "0.1,abc"}).code, 1);
  EXPECT_EQ(run({"measure", "--modulus", "17", "--edges", "2"}).code, 1);
  const auto f = run({"chebfilter", "--n", "16", "--alpha", "0.5", "--grid", "5"});
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(f.out, "x,P(x)\n-1,1\n-0.5," + heisenspec::cli::fmt17(heisenspec::cheb_filter(16, 0.5)(-0.5)) + "\n0," +
                       heisenspec::cli::fmt17(heisenspec::cheb_filter(16, 0.5)(0.0)) + "\n0.5," +
                       heisenspec::cli::fmt17(heisenspec::cheb_filter(16, 0.5)(0.5)) + "\n1,1\n");
  EXPECT_EQ(run({"chebfilter", "--n", "15", "--alpha", "0.5"}).code, 1);
}

TEST(Cli, Irreps) {
  const auto j = Json::parse(run({"irreps", "--n", "3"}).out);
  EXPECT_EQ(j["one_dim"].size(), 9u);
  EXPECT_EQ(j["multi_dim"], Json::array({1, 2}));
  EXPECT_EQ(j["dimension_square_sum"], 27);
  const auto bad = run({"irreps", "--n", "4"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("divisible by 2"), std::string::npos);
}

TEST(Cli, RejectsUnknownInput) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nosuch"}).code, 1);
  EXPECT_EQ(run({"moments", "--k", "4", "--bogus"}).code, 1);
  EXPECT_EQ(run({"moments"}).code, 1);
  EXPECT_EQ(run({"verify", "--level", "medium"}).code, 1);
}

TEST(Cli, NumericalFailureExitsTwo) {
  const auto r = run({"charpoly", "--n", "10000", "--q", "1", "--eval", "4.4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("overflows"), std::string::npos);
}

TEST(Cli, OutputsAreByteIdentical) {
  const std::vector<std::vector<std::string>> cmds = {
      {"irreps", "--n", "5"},
      {"maxeig", "--n", "101"},
      {"bounds", "--lemma", "2.2", "--nmin", "53", "--nmax", "70"},
      {"charpoly", "--n", "7", "--q", "2"},
      {"butterfly", "--max-denominator", "9"},
      {"moments", "--k", "10"},
      {"measure", "--modulus", "29", "--edges", "0.1,0.2"},
      {"chebfilter", "--n", "8", "--alpha", "0.3", "--grid", "101"},
      {"theorem43", "--n", "8", "--alpha", "0.3"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << c[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST(Cli, VerifyQuickAndMutation) {
  const auto ok = run({"verify"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_GE(std::count(ok.out.begin(), ok.out.end(), '\n'), 26);
  EXPECT_NE(ok.out.find("XFAIL"), std::string::npos);
  EXPECT_EQ(ok.out.find("\nFAIL"), std::string::npos);

  const auto bad = run({"verify", "--inject-eigenvalue-error", "1e-3"});
  EXPECT_EQ(bad.code, 2);
  const auto line_start = bad.out.find("FAIL  charpoly: P vanishes at every computed eigenvalue");
  EXPECT_NE(line_start, std::string::npos) << bad.out;
}
