#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <string_view>

#include "finslerlab/fixtures.hpp"
#include "finslerlab/verifier/verifier.hpp"

namespace finslerlab::verifier {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
  return s;
}

[[noreturn]] void fail(int line, const std::string & what)
{
  throw Error(ErrorKind::BadConfig, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_list(std::string_view v, int line, const std::string & key)
{
  v = trim(v);
  if (v.starts_with('[')) {
    if (!v.ends_with(']')) { fail(line, key + ": unterminated list"); }
    v = trim(v.substr(1, v.size() - 2));
  }
  std::vector<std::string> out;
  if (v.empty()) { fail(line, key + ": empty list"); }
  while (true) {
    auto comma = v.find(',');
    auto item  = trim(v.substr(0, comma));
    if (item.empty()) { fail(line, key + ": empty list item"); }
    out.emplace_back(item);
    if (comma == std::string_view::npos) { break; }
    v = v.substr(comma + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view v, int line, const std::string & key)
{
  v = trim(v);
  T value{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    fail(line, key + ": cannot parse '" + std::string(v) + "'");
  }
  return value;
}

}  // namespace

bool is_check_id(const std::string & id) { return !list_checks(id).empty(); }

bool is_fixture_id(const std::string & id)
{
  const auto & fx = fixtures::fixture_list();
  return std::any_of(fx.begin(), fx.end(), [&](const auto & f) { return f.id == id; });
}

std::vector<std::string> parse_id_list(const std::string & text)
{
  std::vector<std::string> ids;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto id = std::string(trim(item));
    if (!is_check_id(id)) { throw Error(ErrorKind::BadConfig, "unknown check id '" + id + "'"); }
    ids.push_back(id);
  }
  if (ids.empty()) { throw Error(ErrorKind::BadConfig, "empty check list"); }
  return ids;
}

RunConfig parse_config(const std::string & text)
{
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto hash = s.find('#'); hash != std::string_view::npos) { s = s.substr(0, hash); }
    s = trim(s);
    if (s.empty()) { continue; }
    auto eq = s.find('=');
    if (eq == std::string_view::npos) { fail(line, "expected 'key = value'"); }
    const std::string key(trim(s.substr(0, eq)));
    const auto value = trim(s.substr(eq + 1));
    if (key.empty()) { fail(line, "missing key"); }
    if (!seen.insert(key).second) { fail(line, "duplicate key '" + key + "'"); }

    if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, line, key);
    } else if (key == "samples") {
      cfg.samples = parse_number<int>(value, line, key);
      if (cfg.samples < 1) { fail(line, "samples must be at least 1"); }
    } else if (key == "fixtures") {
      cfg.fixtures = split_list(value, line, key);
      for (const auto & id : cfg.fixtures) {
        if (!is_fixture_id(id)) { fail(line, "unknown fixture '" + id + "'"); }
      }
    } else if (key == "checks") {
      cfg.checks = split_list(value, line, key);
      for (const auto & id : cfg.checks) {
        if (!is_check_id(id)) { fail(line, "unknown check id '" + id + "'"); }
      }
    } else if (key.starts_with("tolerance.")) {
      const auto id = key.substr(10);
      if (!is_check_id(id)) { fail(line, "unknown check id '" + id + "'"); }
      const double tol = parse_number<double>(value, line, key);
      if (!(tol > 0.0)) { fail(line, key + " must be positive"); }
      cfg.tolerances[id] = tol;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace finslerlab::verifier
