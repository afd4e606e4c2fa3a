#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finslerlab/connections.hpp"
#include "finslerlab/error.hpp"

namespace finslerlab::verifier {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr int kDefaultSamples        = 32;

/// Collects residuals and error expectations while a check runs.
class CheckContext
{
public:
  void add(double residual);

  /// Runs fn and records whether it threw an Error of the given kind.
  void expect(ErrorKind kind, const std::function<void()> & fn);

  double max_residual() const { return max_; }
  const std::vector<std::string> & failures() const { return failures_; }

private:
  double max_ = 0.0;
  std::vector<std::string> failures_;
};

struct CheckEnv
{
  const FinslerStructure & F;
  std::string fixture;
  std::uint64_t seed;
};

struct CheckSpec
{
  std::string id;
  std::string description;
  std::vector<std::string> fixtures;
  double tolerance;
  std::vector<ErrorKind> expected_errors;
  std::function<void(const CheckEnv &, CheckContext &)> run;
};

struct CheckResult
{
  std::string check;
  std::string fixture;
  int samples = 0;
  std::optional<double> max_residual;
  double tolerance = 0.0;
  bool pass        = false;
  std::optional<std::string> error;
  std::vector<ErrorKind> expected_errors;
  double wall_time = 0.0;  // seconds; kept out of the report so reruns stay byte-identical
};

struct RunConfig
{
  std::uint64_t seed = kDefaultSeed;
  int samples        = kDefaultSamples;
  std::vector<std::string> fixtures;
  std::vector<std::string> checks;
  std::map<std::string, double> tolerances;
  std::optional<std::string> out;
};

/// Full registry, ordered by id.
const std::vector<CheckSpec> & registry();

/// Registry entries whose id equals filter (all when filter is empty).
std::vector<const CheckSpec *> list_checks(const std::string & filter = {});

bool is_check_id(const std::string & id);
bool is_fixture_id(const std::string & id);

/// Flat key = value text; unknown keys and ids raise BadConfig with the line number.
RunConfig parse_config(const std::string & text);

/// Comma separated check ids, validated.
std::vector<std::string> parse_id_list(const std::string & text);

/// One result per (check, fixture), sorted by check id then fixture id.
std::vector<CheckResult> run_checks(const RunConfig & config);

std::string to_json_line(const CheckResult & r);

bool all_pass(const std::vector<CheckResult> & results);

}  // namespace finslerlab::verifier
