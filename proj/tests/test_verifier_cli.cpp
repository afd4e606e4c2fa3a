#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "finslerlab/verifier/verifier.hpp"
#include "support.hpp"

using namespace finslerlab;
using namespace finslerlab::verifier;
using testing_support::expect_error;

namespace {

struct Run
{
  int status = -1;
  std::string out;
};

Run run_cli(const std::string & args)
{
  const std::string cmd = std::string(FINSLERLAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE * pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) { return r; }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) { r.out.append(buf.data(), n); }
  const int st = pclose(pipe);
  r.status     = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const char * name) { return std::string(FINSLERLAB_TEST_DATA) + "/" + name; }

std::vector<nlohmann::json> json_lines(const std::string & text)
{
  std::vector<nlohmann::json> v;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty()) { v.push_back(nlohmann::json::parse(line)); }
  }
  return v;
}

std::string report(const std::vector<CheckResult> & rs)
{
  std::string s;
  for (const auto & r : rs) { s += to_json_line(r) + '\n'; }
  return s;
}

}  // namespace

TEST(Registry, ListsSixteenChecks)
{
  const auto all = list_checks();
  ASSERT_EQ(all.size(), 16u);
  for (std::size_t i = 1; i < all.size(); ++i) { EXPECT_LT(all[i - 1]->id, all[i]->id); }
  ASSERT_EQ(list_checks("CHK-07").size(), 1u);
  EXPECT_EQ(list_checks("CHK-07").front()->id, "CHK-07");
  EXPECT_TRUE(list_checks("CHK-42").empty());
  EXPECT_EQ(list_checks("CHK-15").front()->tolerance, 1e-7);
  EXPECT_EQ(list_checks("CHK-03").front()->tolerance, 1e-9);
  EXPECT_TRUE(is_fixture_id("randers-0.3"));
  EXPECT_FALSE(is_fixture_id("randers"));
}

TEST(Config, DefaultsAndValues)
{
  const auto d = parse_config("");
  EXPECT_EQ(d.seed, kDefaultSeed);
  EXPECT_EQ(d.samples, kDefaultSamples);
  EXPECT_TRUE(d.checks.empty());
  const auto c = parse_config("# comment\nseed = 7\nsamples = 4\nchecks = [CHK-01, CHK-05]\n"
                              "fixtures = euclidean\ntolerance.CHK-01 = 1e-6\n");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.samples, 4);
  EXPECT_EQ(c.checks, (std::vector<std::string>{"CHK-01", "CHK-05"}));
  EXPECT_EQ(c.fixtures, (std::vector<std::string>{"euclidean"}));
  EXPECT_EQ(c.tolerances.at("CHK-01"), 1e-6);
}

TEST(Config, Errors)
{
  for (const char * text : {"checks = [CHK-99]", "colour = red", "seed = -1", "samples = 0", "seed = abc",
                            "seed = 1\nseed = 2", "fixtures = [nope]", "tolerance.CHK-01 = 0", "just words"}) {
    expect_error(ErrorKind::BadConfig, [&] { parse_config(text); });
  }
  try {
    parse_config("seed = 1\n\nchecks = [CHK-99]\n");
    FAIL();
  } catch (const Error & e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  expect_error(ErrorKind::BadConfig, [] { parse_id_list("CHK-01,CHK-77"); });
}

TEST(Runner, DefaultRunPassesAndIsReproducible)
{
  const auto rs = run_checks(RunConfig{});
  ASSERT_EQ(rs.size(), 48u);
  EXPECT_TRUE(all_pass(rs));
  for (const auto & r : rs) {
    EXPECT_TRUE(r.pass) << to_json_line(r);
    EXPECT_EQ(r.samples, kDefaultSamples);
    ASSERT_TRUE(r.max_residual.has_value());
    EXPECT_LE(*r.max_residual, r.tolerance);
  }
  EXPECT_EQ(report(rs), report(run_checks(RunConfig{})));
}

TEST(Runner, ExpectedErrorsAreReported)
{
  RunConfig c;
  c.checks = {"CHK-10"};
  c.fixtures = {"euclidean"};
  const auto rs = run_checks(c);
  ASSERT_EQ(rs.size(), 1u);
  const auto j = nlohmann::json::parse(to_json_line(rs[0]));
  EXPECT_EQ(j["check"], "CHK-10");
  EXPECT_EQ(j["expected_error"], nlohmann::json::array({"HypothesisFailure"}));
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Runner, TightToleranceFails)
{
  RunConfig c;
  c.checks               = {"CHK-15"};
  c.tolerances["CHK-15"] = 1e-30;
  const auto rs          = run_checks(c);
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_FALSE(all_pass(rs));
  EXPECT_FALSE(all_pass({}));
}

TEST(Runner, SeedChangesSamplesButStillPasses)
{
  RunConfig c;
  c.checks  = {"CHK-01", "CHK-05"};
  c.seed    = 7;
  c.samples = 8;
  const auto rs = run_checks(c);
  ASSERT_EQ(rs.size(), 6u);
  EXPECT_TRUE(all_pass(rs));
  EXPECT_EQ(rs.front().samples, 8);
}

TEST(Cli, List)
{
  const auto r = run_cli("list");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 16);
  EXPECT_EQ(r.out.rfind("CHK-01\t", 0), 0u);
}

TEST(Cli, CheckWithConfig)
{
  const auto r = run_cli("check --config " + data("default.conf") + " --only CHK-02,CHK-08");
  EXPECT_EQ(r.status, 0);
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0]["check"], "CHK-02");
  EXPECT_EQ(lines[0]["fixture"], "euclidean");
  EXPECT_EQ(lines[5]["check"], "CHK-08");
  for (const auto & j : lines) {
    for (const char * key : {"check", "fixture", "samples", "max_residual", "tolerance", "pass"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
  }
}

TEST(Cli, OutFileIsByteIdenticalAcrossRuns)
{
  const auto dir = std::filesystem::temp_directory_path();
  const auto a   = (dir / "finslerlab_a.jsonl").string();
  const auto b   = (dir / "finslerlab_b.jsonl").string();
  for (const auto & path : {a, b}) {
    const auto r = run_cli("check --config " + data("default.conf") + " --only CHK-04 --seed 9 --out " + path);
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
  }
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Cli, ExitCodes)
{
  EXPECT_EQ(run_cli("check --config " + data("bad.conf")).status, 2);
  EXPECT_EQ(run_cli("check --config " + data("missing.conf")).status, 2);
  EXPECT_EQ(run_cli("check --config " + data("default.conf") + " --only CHK-99").status, 2);
  EXPECT_NE(run_cli("check").status, 0);
}

TEST(Cli, EvalSprayAndErrors)
{
  const auto r = run_cli("eval --fixture riemannian-exp --object spray --point 0,0,1,2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], nlohmann::json::array({1.0, 2.0, -1.0, 0.0}));
  const auto e = nlohmann::json::parse(run_cli("eval --fixture euclidean --object energy --point 0,0,1,2").out);
  EXPECT_EQ(e["kind"], "scalar");
  EXPECT_EQ(e["value"], 2.5);
  EXPECT_EQ(run_cli("eval --fixture euclidean --object energy --point 0,0,0,0").status, 2);
  EXPECT_EQ(run_cli("eval --fixture nope --object energy --point 0,0,1,2").status, 2);
  EXPECT_EQ(run_cli("eval --fixture euclidean --object nope --point 0,0,1,2").status, 2);
}
