#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <tuple>

#include <json.hpp>

#include "finslerlab/fixtures.hpp"
#include "finslerlab/verifier/verifier.hpp"

namespace finslerlab::verifier {

namespace {

std::vector<std::string> selected_fixtures(const RunConfig & config)
{
  std::set<std::string> ids(config.fixtures.begin(), config.fixtures.end());
  if (ids.empty()) {
    for (const auto & f : fixtures::fixture_list()) { ids.insert(f.id); }
  }
  return {ids.begin(), ids.end()};
}

std::vector<const CheckSpec *> selected_checks(const RunConfig & config)
{
  std::set<std::string> wanted(config.checks.begin(), config.checks.end());
  std::vector<const CheckSpec *> out;
  for (const auto & s : registry()) {
    if (wanted.empty() || wanted.contains(s.id)) { out.push_back(&s); }
  }
  return out;
}

std::string join_failures(const std::vector<std::string> & f)
{
  std::string out;
  for (const auto & s : f) { out += (out.empty() ? "" : "; ") + s; }
  return out;
}

}  // namespace

std::vector<CheckResult> run_checks(const RunConfig & config)
{
  if (config.samples < 1) { throw Error(ErrorKind::BadConfig, "samples must be at least 1"); }
  const auto fixture_ids = selected_fixtures(config);
  const auto checks      = selected_checks(config);
  const auto grid        = sample_slit_points(2, config.samples, config.seed, SampleBox{}, kDefaultMinFiberNorm);

  std::vector<CheckResult> results;
  for (const auto * spec : checks) {
    for (const auto & fx : fixture_ids) {
      if (std::find(spec->fixtures.begin(), spec->fixtures.end(), fx) == spec->fixtures.end()) { continue; }
      CheckResult r;
      r.check           = spec->id;
      r.fixture         = fx;
      r.samples         = config.samples;
      r.expected_errors = spec->expected_errors;
      auto tol          = config.tolerances.find(spec->id);
      r.tolerance       = tol == config.tolerances.end() ? spec->tolerance : tol->second;

      const auto t0 = std::chrono::steady_clock::now();
      try {
        const auto F = validate_finsler(fixtures::fixture_energy(fx), grid);
        CheckContext ctx;
        spec->run(CheckEnv{F, fx, config.seed}, ctx);
        r.max_residual = ctx.max_residual();
        if (!ctx.failures().empty()) { r.error = join_failures(ctx.failures()); }
        r.pass = !r.error && ctx.max_residual() < r.tolerance;
      } catch (const std::exception & e) {
        r.error = e.what();
        r.pass  = false;
      }
      r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      results.push_back(std::move(r));
    }
  }
  std::sort(results.begin(), results.end(), [](const CheckResult & a, const CheckResult & b) {
    return std::tie(a.check, a.fixture) < std::tie(b.check, b.fixture);
  });
  return results;
}

std::string to_json_line(const CheckResult & r)
{
  nlohmann::ordered_json j;
  j["check"]   = r.check;
  j["fixture"] = r.fixture;
  j["samples"] = r.samples;
  if (r.max_residual && std::isfinite(*r.max_residual)) {
    j["max_residual"] = *r.max_residual;
  } else {
    j["max_residual"] = nullptr;
  }
  j["tolerance"] = r.tolerance;
  j["pass"]      = r.pass;
  if (r.error) { j["error"] = *r.error; }
  if (!r.expected_errors.empty()) {
    auto & arr = j["expected_error"] = nlohmann::ordered_json::array();
    for (auto k : r.expected_errors) { arr.push_back(std::string(to_string(k))); }
  }
  return j.dump();
}

bool all_pass(const std::vector<CheckResult> & results)
{
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto & r) { return r.pass; });
}

}  // namespace finslerlab::verifier
