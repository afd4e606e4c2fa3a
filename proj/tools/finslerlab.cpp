#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "finslerlab/fixtures.hpp"
#include "finslerlab/verifier/verifier.hpp"

namespace fl = finslerlab;
namespace vf = finslerlab::verifier;

namespace {

std::vector<double> parse_point(const std::string & text)
{
  std::vector<double> v;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x         = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw fl::Error(fl::ErrorKind::BadConfig, "bad point coordinate '" + item + "'");
    }
    v.push_back(x);
  }
  if (v.size() < 4 || v.size() % 2 != 0) {
    throw fl::Error(fl::ErrorKind::DimensionMismatch, "point needs 2n coordinates with n >= 2");
  }
  return v;
}

int cmd_list()
{
  for (const auto * s : vf::list_checks()) {
    std::cout << s->id << '\t' << s->tolerance << '\t' << s->description << '\n';
  }
  return 0;
}

int cmd_check(const std::string & config_path, const std::optional<std::uint64_t> & seed,
              const std::optional<int> & samples, const std::string & only, const std::string & out_path)
{
  std::ifstream in(config_path);
  if (!in) { throw fl::Error(fl::ErrorKind::BadConfig, "cannot read config '" + config_path + "'"); }
  std::stringstream buf;
  buf << in.rdbuf();
  auto cfg = vf::parse_config(buf.str());
  if (seed) { cfg.seed = *seed; }
  if (samples) {
    if (*samples < 1) { throw fl::Error(fl::ErrorKind::BadConfig, "--samples must be at least 1"); }
    cfg.samples = *samples;
  }
  if (!only.empty()) { cfg.checks = vf::parse_id_list(only); }
  if (!out_path.empty()) { cfg.out = out_path; }

  const auto results = vf::run_checks(cfg);
  std::ofstream file;
  if (cfg.out) {
    file.open(*cfg.out);
    if (!file) { throw fl::Error(fl::ErrorKind::BadConfig, "cannot write '" + *cfg.out + "'"); }
  }
  std::ostream & os = cfg.out ? file : std::cout;
  for (const auto & r : results) { os << vf::to_json_line(r) << '\n'; }

  int failed = 0;
  double wall = 0.0;
  for (const auto & r : results) {
    failed += r.pass ? 0 : 1;
    wall += r.wall_time;
  }
  std::cerr << results.size() - failed << "/" << results.size() << " records pass (" << wall << " s)\n";
  return vf::all_pass(results) ? 0 : 1;
}

int cmd_eval(const std::string & fixture, const std::string & object, const std::string & point_text)
{
  const auto z = parse_point(point_text);
  const int n  = static_cast<int>(z.size() / 2);
  const auto grid =
    fl::sample_slit_points(n, vf::kDefaultSamples, vf::kDefaultSeed, fl::SampleBox{}, fl::kDefaultMinFiberNorm);
  const auto F = fl::validate_finsler(fl::fixtures::fixture_energy(fixture, n), grid);
  const fl::TangentPoint p(std::vector<double>(z.begin(), z.begin() + n), std::vector<double>(z.begin() + n, z.end()));
  const auto obj = fl::fixtures::resolve_object(F, object);

  nlohmann::ordered_json j;
  j["fixture"] = fixture;
  j["object"]  = object;
  j["point"]   = z;
  std::visit(
    [&](const auto & f) {
      using T = std::decay_t<decltype(f)>;
      if constexpr (std::is_same_v<T, fl::ScalarField>) {
        j["kind"]  = "scalar";
        j["value"] = fl::evaluate(f, p);
      } else {
        if (p.fiber_norm() < fl::kDefaultMinFiberNorm) {
          throw fl::Error(fl::ErrorKind::ZeroSection, "point too close to the zero section");
        }
        const auto v = f.eval(p);
        j["kind"]   = std::is_same_v<T, fl::DifferentialForm> ? "form" : "vector-form";
        j["degree"] = f.degree();
        j["value"]  = v;
      }
    },
    obj);
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Finsler and Frolicher-Nijenhuis calculus verifier"};
  app.require_subcommand(1);

  auto * list = app.add_subcommand("list", "list registered checks");

  auto * check = app.add_subcommand("check", "run checks and emit one JSON record per (check, fixture)");
  std::string config_path, only, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  check->add_option("--config", config_path, "key = value configuration file")->required();
  check->add_option("--seed", seed, "override the sampling seed");
  check->add_option("--samples", samples, "override the number of sample points");
  check->add_option("--only", only, "comma separated check ids");
  check->add_option("--out", out_path, "write the report here instead of stdout");

  auto * eval = app.add_subcommand("eval", "evaluate a registry object at a point");
  std::string fixture, object, point;
  eval->add_option("--fixture", fixture, "fixture id")->required();
  eval->add_option("--object", object, "registry id (energy, spray, omega, J, berwald, wagner:x1, ...)")->required();
  eval->add_option("--point", point, "x1,x2,y1,y2")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) { return cmd_list(); }
    if (*check) { return cmd_check(config_path, seed, samples, only, out_path); }
    if (*eval) { return cmd_eval(fixture, object, point); }
  } catch (const fl::Error & e) {
    std::cerr << "finslerlab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
