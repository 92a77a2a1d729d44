#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "cli.hpp"
#include "acceptance.hpp"

using anharmonic::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = anharmonic::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "anharmonic_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, PerturbExample) {
  const auto r = invoke({"perturb", "--degree", "3", "--level", "0", "--orders", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["coefficients"], json::array({"1/2", "-11/8", "-465/32"}));
  EXPECT_EQ(j["schema_version"], "1.0");
  EXPECT_EQ(j["config"]["subcommand"], "perturb");
  EXPECT_EQ(j["config"]["orders_K"], 2);
  EXPECT_EQ(j["provenance"]["coefficients"], "exact");
}

TEST(Cli, InstantonExample) {
  const auto r = invoke({"instanton", "--degree", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["action_numeric"], 0.1333333333);
  EXPECT_EQ(j["action_beta"], 0.1333333333);
  EXPECT_EQ(j["closed_form"], "2/15");
  EXPECT_EQ(j["provenance"]["action_numeric"], "quadrature");
}

TEST(Cli, WidthsOutsideSmallCouplingWarns) {
  const auto r = invoke({"widths", "--degree", "4", "--level", "0", "--coupling", "-1"});
  EXPECT_EQ(r.code, 0);
  const auto w = records(r.err);
  ASSERT_FALSE(w.empty());
  EXPECT_NE(w.front()["warning"].get<std::string>().find("unreliable"), std::string::npos);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["warnings"].empty());
  EXPECT_EQ(j["provenance"]["imag_energy"], "asymptotic");
}

TEST(Cli, ExitCodes) {
  auto domain = invoke({"widths", "--degree", "3", "--level", "0", "--coupling", "-0.1"});
  EXPECT_EQ(domain.code, 1);
  auto usage = invoke({"perturb", "--degree", "3"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_EQ(invoke({"perturb", "--degree", "2", "--level", "0", "--orders", "1"}).code, 2);
  EXPECT_EQ(invoke({"perturb", "--degree", "3", "--level", "0", "--orders", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  auto noconv = invoke({"resonance", "--degree", "3", "--level", "0", "--coupling", "1", "--basis", "16"});
  EXPECT_EQ(noconv.code, 3);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, ErrorsAreSingleLineRecords) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"widths", "--degree", "3", "--level", "0", "--coupling", "-0.1"},
           {"perturb", "--degree", "3"},
           {"oracle", "--degree", "3", "--level", "0", "--orders", "5"}}) {
    const auto r = invoke(args);
    ASSERT_NE(r.code, 0);
    const auto recs = records(r.err);
    ASSERT_EQ(recs.size(), 1u) << r.err;
    EXPECT_TRUE(recs[0].contains("error"));
    EXPECT_EQ(recs[0]["exit_code"], r.code);
  }
  const auto dom = records(invoke({"widths", "--degree", "3", "--level", "0", "--coupling", "-0.1"}).err);
  EXPECT_EQ(dom[0]["error"], "domain");
}

TEST(Cli, DelimitedFormats) {
  const auto csv = invoke({"perturb", "--degree", "4", "--level", "0", "--orders", "2", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out, "K,coefficient\n0,1/2\n1,3/4\n2,-21/8\n");
  const auto tsv = invoke({"perturb", "--degree", "4", "--level", "0", "--orders", "1", "--format", "tsv"});
  EXPECT_EQ(tsv.out, "K\tcoefficient\n0\t1/2\n1\t3/4\n");
}

TEST(Cli, PrecisionFlagAndEnvironment) {
  auto flag = json::parse(invoke({"instanton", "--degree", "4", "--precision", "4"}).out);
  EXPECT_EQ(flag["action_numeric"], 0.3333);
  EXPECT_EQ(flag["config"]["precision_digits"], 4);
  setenv("ANHARMONIC_PRECISION", "6", 1);
  auto env = json::parse(invoke({"instanton", "--degree", "4"}).out);
  auto both = json::parse(invoke({"instanton", "--degree", "4", "--precision", "3"}).out);
  unsetenv("ANHARMONIC_PRECISION");
  EXPECT_EQ(env["action_numeric"], 0.333333);
  EXPECT_EQ(both["action_numeric"], 0.333);
  EXPECT_EQ(invoke({"instanton", "--degree", "4", "--precision", "30"}).code, 2);
}

TEST(Cli, OutputFileAndRerunsAreByteIdentical) {
  const auto file = scratch("perturb.json");
  const std::vector<std::string> args{"perturb", "--degree", "3", "--level", "1", "--orders", "15", "-o", file.string()};
  const auto first = invoke(args);
  EXPECT_TRUE(first.out.empty());
  const auto a = slurp(file);
  invoke(args);
  const auto b = slurp(file);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(json::parse(a)["config"]["output_path"], file.string());
}

TEST(Cli, TrajectoryDumpHasCommandHeader) {
  const auto path = scratch("traj.tsv");
  const auto r = invoke({"instanton", "--degree", "4", "--trajectory", path.string(), "--samples", "11",
                         "--t-min", "-1", "--t-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line.rfind("# ", 0), 0u);
  EXPECT_NE(line.find("instanton --degree 4 --trajectory"), std::string::npos);
  int rows = 0;
  while (std::getline(f, line))
    if (!line.empty() && line[0] != '#') ++rows;
  EXPECT_EQ(rows, 11);
}

TEST(Cli, OracleReportsEquality) {
  const auto r = invoke({"oracle", "--degree", "4", "--level", "1", "--orders", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["all_equal"].get<bool>());
}

TEST(Cli, LargeOrderRecords) {
  const auto r = invoke({"largeorder", "--degree", "3", "--level", "0", "--k-min", "10", "--k-max", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["records"].size(), 2u);
  for (const auto& rec : j["records"]) {
    EXPECT_TRUE(rec["exact"].is_string());
    EXPECT_NE(rec["exact"].get<std::string>().find('/'), std::string::npos);
    EXPECT_TRUE(rec["predicted"].is_number());
    EXPECT_TRUE(rec["ratio"].is_number());
  }
  EXPECT_EQ(j["records"][0]["K"], 10);
}

TEST(Cli, ExpansionRoundTrips) {
  const auto r = invoke({"expansion", "--degree", "3", "--level", "0", "--orders", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const auto e = anharmonic::expansion_from_json(j["expansion"]);
  EXPECT_EQ(e.perturbative, anharmonic::perturb_coefficients(anharmonic::OscillatorSpec::natural(3, 0), 6));
  EXPECT_EQ(anharmonic::expansion_to_json(e), j["expansion"]);
}

TEST(Cli, CheckallSubset) {
  const auto r = invoke({"checkall", "--only", "1,2,9"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["criteria"].size(), 3u);
  for (const auto& c : j["criteria"]) EXPECT_EQ(c["status"], "PASS") << c.dump();
  EXPECT_TRUE(j["all_pass"].get<bool>());
}
