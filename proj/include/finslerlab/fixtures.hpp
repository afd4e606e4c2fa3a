#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "finslerlab/connections.hpp"

// Shipped energies and the named constructions the CLI can address by id.

namespace finslerlab::fixtures {

struct FixtureInfo
{
  std::string id;
  std::string label;
  std::string formula;
};

inline const std::vector<FixtureInfo> & fixture_list()
{
  static const std::vector<FixtureInfo> list{
    {"euclidean", "FX-EUC", "E = |y|^2 / 2"},
    {"riemannian-exp", "FX-RIE", "E = (exp(2 x1) y1^2 + y2^2 + ...) / 2"},
    {"randers-0.3", "FX-RAN", "E = (|y| + 0.3 y1)^2 / 2"},
  };
  return list;
}

inline ScalarField euclidean_energy(int n)
{
  return ScalarField::make(n, [n]<class T>(std::span<const T> z) {
    T s(0.0);
    for (int i = 0; i < n; ++i) { s += z[n + i] * z[n + i]; }
    return 0.5 * s;
  });
}

inline ScalarField riemannian_exp_energy(int n)
{
  return ScalarField::make(n, [n]<class T>(std::span<const T> z) {
    T s = jet::exp(2.0 * z[0]) * z[n] * z[n];
    for (int i = 1; i < n; ++i) { s += z[n + i] * z[n + i]; }
    return 0.5 * s;
  });
}

inline ScalarField randers_energy(int n, double b)
{
  return ScalarField::make(n, [n, b]<class T>(std::span<const T> z) {
    T s(0.0);
    for (int i = 0; i < n; ++i) { s += z[n + i] * z[n + i]; }
    T F = jet::sqrt(s) + b * z[n];
    return 0.5 * F * F;
  });
}

/// (y1^2 - y2^2) / 2: not positive.
inline ScalarField indefinite_energy(int n)
{
  return ScalarField::make(n, [n]<class T>(std::span<const T> z) { return 0.5 * (z[n] * z[n] - z[n + 1] * z[n + 1]); });
}

/// y1^2 / 2: positive off y1 = 0 but with singular vertical Hessian.
inline ScalarField degenerate_energy(int n)
{
  return ScalarField::make(n, [n]<class T>(std::span<const T> z) { return 0.5 * z[n] * z[n]; });
}

inline ScalarField fixture_energy(std::string_view id, int n = 2)
{
  if (id == "euclidean") { return euclidean_energy(n); }
  if (id == "riemannian-exp") { return riemannian_exp_energy(n); }
  if (id == "randers-0.3") { return randers_energy(n, 0.3); }
  throw Error(ErrorKind::UnknownId, "unknown fixture '" + std::string(id) + "'");
}

namespace detail {
inline int parse_index(std::string_view s, int n, std::string_view whole)
{
  int v = 0;
  if (s.empty()) { throw Error(ErrorKind::UnknownId, "bad index in '" + std::string(whole) + "'"); }
  for (char c : s) {
    if (c < '0' || c > '9') { throw Error(ErrorKind::UnknownId, "bad index in '" + std::string(whole) + "'"); }
    v = v * 10 + (c - '0');
  }
  if (v < 1 || v > n) { throw Error(ErrorKind::UnknownId, "index out of range in '" + std::string(whole) + "'"); }
  return v - 1;
}
}  // namespace detail

/// Base functions: "zero", "x<i>", "x<i>x<j>" (1-based indices).
inline BaseFunction base_function(std::string_view id, int n = 2)
{
  if (id == "zero") { return constant_base_function(n, 0.0); }
  if (id.size() >= 2 && id[0] == 'x') {
    auto rest = id.substr(1);
    auto pos  = rest.find('x');
    if (pos == std::string_view::npos) {
      const int i = detail::parse_index(rest, n, id);
      return BaseFunction::make(n, [i]<class T>(std::span<const T> x) { return x[i]; });
    }
    const int i = detail::parse_index(rest.substr(0, pos), n, id);
    const int j = detail::parse_index(rest.substr(pos + 1), n, id);
    return BaseFunction::make(n, [i, j]<class T>(std::span<const T> x) { return x[i] * x[j]; });
  }
  throw Error(ErrorKind::UnknownId, "unknown base function '" + std::string(id) + "'");
}

/// F = sqrt(2E).
inline ScalarField finsler_norm(const FinslerStructure & F)
{
  const auto E = F.energy();
  return ScalarField::make(F.dim(), [E]<class T>(std::span<const T> z) { return jet::sqrt(2.0 * E(z)); });
}

/**
 * Vertical fields:
 *   "zero", "C", "vlift:<i>" (lift of d/dx^i), "E-dy1" (E d/dy^1),
 *   "half-y1-C" (y^1 C / 2), "half-F-C" (F C / 2),
 *   "rot-dE" (E_{y2} d/dy^1 - E_{y1} d/dy^2, tangent to the indicatrix),
 *   "x1-over-2E-C" (x^1 C / 2E).
 */
inline VectorField named_vertical_field(const FinslerStructure & F, std::string_view id)
{
  const int n  = F.dim();
  const auto E = F.energy();
  const auto C = liouville_field(n);
  if (id == "zero") { return 0.0 * C; }
  if (id == "C") { return C; }
  if (id.starts_with("vlift:")) {
    const int i = detail::parse_index(id.substr(6), n, id);
    std::vector<BaseFunction> X;
    for (int k = 0; k < n; ++k) { X.push_back(constant_base_function(n, k == i ? 1.0 : 0.0)); }
    return vertical_lift_vector(X);
  }
  if (id == "E-dy1") { return E * coordinate_field(n, n); }
  if (id == "half-y1-C") {
    return ScalarField::make(n, [n]<class T>(std::span<const T> z) { return 0.5 * z[n]; }) * C;
  }
  if (id == "half-F-C") { return 0.5 * finsler_norm(F) * C; }
  if (id == "rot-dE") {
    return VectorField::make(n, [E, n]<class T>(std::span<const T> z) {
      auto jet = first_jet(E, z);
      auto v   = finslerlab::detail::zeros<T>(2 * static_cast<std::size_t>(n));
      v[n]     = jet.partial[n + 1][0];
      v[n + 1] = -jet.partial[n][0];
      return v;
    });
  }
  if (id == "x1-over-2E-C") {
    return ScalarField::make(n, [E]<class T>(std::span<const T> z) { return z[0] / (2.0 * E(z)); }) * C;
  }
  throw Error(ErrorKind::UnknownId, "unknown vertical field '" + std::string(id) + "'");
}

/**
 * Semibasic vector 1-forms:
 *   "zero", "wagner-form:<f>" (L_W), "wagner-diff:<f>" (h-bar - h0),
 *   "jv:<field-id>" ([J, V]), "fvJ:<f>" (f^v J),
 *   "corollary:<f>" (f^v J / (J° E), conservative by construction).
 */
inline VectorForm named_form(const FinslerStructure & F, std::string_view id)
{
  const int n  = F.dim();
  const auto J = vertical_endomorphism(n);
  if (id == "zero") { return 0.0 * J; }
  if (id.starts_with("wagner-form:")) { return wagner_connection(F, base_function(id.substr(12), n)).form; }
  if (id.starts_with("wagner-diff:")) {
    return wagner_connection(F, base_function(id.substr(12), n)).connection.h - berwald_connection(F);
  }
  if (id.starts_with("jv:")) { return fn_bracket(J, VectorForm(named_vertical_field(F, id.substr(3)))); }
  if (id.starts_with("fvJ:")) { return vertical_lift_function(base_function(id.substr(4), n)) * J; }
  if (id.starts_with("corollary:")) {
    // K = J has K° = C, so K°E = CE = 2E never vanishes on the slit bundle.
    const auto fv = vertical_lift_function(base_function(id.substr(10), n));
    return (fv / (2.0 * F.energy())) * J;
  }
  throw Error(ErrorKind::UnknownId, "unknown form '" + std::string(id) + "'");
}

/// Connections: "berwald", "wagner:<f>", "l:<form-id>".
inline EhresmannConnection named_connection(const FinslerStructure & F, std::string_view id)
{
  if (id == "berwald") { return berwald(F); }
  if (id.starts_with("wagner:")) { return wagner_connection(F, base_function(id.substr(7), F.dim())).connection; }
  if (id.starts_with("l:")) {
    auto h       = l_ehresmann_connection(F, named_form(F, id.substr(2)));
    h.provenance = "l-ehresmann(" + std::string(id.substr(2)) + ")";
    return h;
  }
  throw Error(ErrorKind::UnknownId, "unknown connection '" + std::string(id) + "'");
}

using RegistryObject = std::variant<ScalarField, VectorField, DifferentialForm, VectorForm>;

/**
 * Any addressable object: "energy", "spray", "omega", "J", a connection,
 * form or field id. Connections win over forms for the shared "zero" id.
 */
inline RegistryObject resolve_object(const FinslerStructure & F, std::string_view id)
{
  if (id == "energy") { return F.energy(); }
  if (id == "spray") { return canonical_spray(F); }
  if (id == "omega") { return fundamental_two_form(F); }
  if (id == "J") { return vertical_endomorphism(F.dim()); }
  if (id == "berwald" || id.starts_with("wagner:") || id.starts_with("l:")) { return named_connection(F, id).h; }
  try {
    return named_form(F, id);
  } catch (const Error & e) {
    if (e.kind() != ErrorKind::UnknownId) { throw; }
  }
  return named_vertical_field(F, id);
}

// ---------------------------------------------------------------------------
// Seeded random test objects.

namespace detail {
inline double signed_unit(std::mt19937_64 & rng) { return 2.0 * finslerlab::detail::unit_double(rng) - 1.0; }
}  // namespace detail

/**
 * Smooth function on TM from a seeded family: affine part, a squared linear
 * form, a sine wave and a mild exponential.
 */
inline ScalarField random_scalar_field(int n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  const std::size_t N = 2 * static_cast<std::size_t>(n);
  std::vector<double> lin(N), quad(N), wave(N), grow(N);
  const double c0 = detail::signed_unit(rng);
  for (auto & v : lin) { v = detail::signed_unit(rng); }
  for (auto & v : quad) { v = detail::signed_unit(rng); }
  for (auto & v : wave) { v = detail::signed_unit(rng); }
  for (auto & v : grow) { v = 0.3 * detail::signed_unit(rng); }
  const double phase = detail::signed_unit(rng);
  return ScalarField::make(n, [=]<class T>(std::span<const T> z) {
    T a(c0), q(0.0), w(phase), g(0.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      a += lin[k] * z[k];
      q += quad[k] * z[k];
      w += wave[k] * z[k];
      g += grow[k] * z[k];
    }
    return a + 0.5 * q * q + jet::sin(w) + 0.5 * jet::exp(g);
  });
}

/// Random 1-form; semibasic forms only have dx components.
inline DifferentialForm random_one_form(int n, std::uint64_t seed, bool semibasic)
{
  const std::size_t N = 2 * static_cast<std::size_t>(n);
  std::vector<ScalarField> coeffs;
  const std::size_t count = semibasic ? static_cast<std::size_t>(n) : N;
  for (std::size_t a = 0; a < count; ++a) { coeffs.push_back(random_scalar_field(n, seed * 131 + a + 1)); }
  return DifferentialForm::make(n, 1, [coeffs, N]<class T>(std::span<const T> z) {
    auto out = finslerlab::detail::zeros<T>(N);
    for (std::size_t a = 0; a < coeffs.size(); ++a) { out[a] = coeffs[a](z); }
    return out;
  });
}

}  // namespace finslerlab::fixtures
