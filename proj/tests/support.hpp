#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "finslerlab/fixtures.hpp"

// Independent oracles used by the tests. Nothing here calls into the jet
// machinery: derivatives are central differences or written out by hand.

namespace testing_support {

using finslerlab::SampleGrid;
using finslerlab::TangentPoint;

inline TangentPoint p0() { return TangentPoint({0.0, 0.0}, {1.0, 2.0}); }

inline const SampleGrid & grid32()
{
  static const SampleGrid g = finslerlab::sample_slit_points(2, 32, 42);
  return g;
}

inline finslerlab::FinslerStructure fixture(const char * id)
{
  return finslerlab::validate_finsler(finslerlab::fixtures::fixture_energy(id), grid32());
}

using RealFn = std::function<double(const std::vector<double> &)>;

inline double central(const RealFn & f, std::vector<double> z, std::size_t a, double h = 1e-5)
{
  const double z0 = z[a];
  z[a]            = z0 + h;
  const double up = f(z);
  z[a]            = z0 - h;
  const double dn = f(z);
  return (up - dn) / (2.0 * h);
}

inline RealFn as_fn(const finslerlab::ScalarField & f)
{
  return [f](const std::vector<double> & z) { return f(std::span<const double>(z)); };
}

inline RealFn component(const finslerlab::TensorField & f, std::size_t k)
{
  return [f, k](const std::vector<double> & z) { return f.eval(std::span<const double>(z))[k]; };
}

// Hand-written energies and derivatives for the two Riemannian fixtures.

inline double euc_energy(const std::vector<double> & z) { return 0.5 * (z[2] * z[2] + z[3] * z[3]); }

inline double rie_energy(const std::vector<double> & z)
{
  return 0.5 * (std::exp(2.0 * z[0]) * z[2] * z[2] + z[3] * z[3]);
}

inline double ran_energy(const std::vector<double> & z)
{
  const double F = std::hypot(z[2], z[3]) + 0.3 * z[2];
  return 0.5 * F * F;
}

/// Randers gradient in y, by hand: F (y/|y| + b e1).
inline std::vector<double> ran_dy(const std::vector<double> & z)
{
  const double r = std::hypot(z[2], z[3]);
  const double F = r + 0.3 * z[2];
  return {F * (z[2] / r + 0.3), F * (z[3] / r)};
}

/// Randers vertical Hessian by hand: l l^T + F (I - u u^T)/|y| with l = u + b e1.
inline std::vector<double> ran_g(const std::vector<double> & z)
{
  const double r = std::hypot(z[2], z[3]);
  const double F = r + 0.3 * z[2];
  const double u[2] = {z[2] / r, z[3] / r};
  const double l[2] = {u[0] + 0.3, u[1]};
  std::vector<double> g(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) { g[i * 2 + j] = l[i] * l[j] + F * ((i == j ? 1.0 : 0.0) - u[i] * u[j]) / r; }
  }
  return g;
}

/**
 * Geodesic spray of g = diag(exp(2 x1), 1) from Christoffel symbols
 * Gamma^i_jk = g^il (d_j g_lk + d_k g_lj - d_l g_jk) / 2.
 */
inline std::vector<double> rie_christoffel_spray(const std::vector<double> & z)
{
  const double x1 = z[0];
  const double y[2] = {z[2], z[3]};
  const double g[2][2] = {{std::exp(2.0 * x1), 0.0}, {0.0, 1.0}};
  const double ginv[2][2] = {{1.0 / g[0][0], 0.0}, {0.0, 1.0}};
  // dg[l][a][b] = d_l g_ab
  double dg[2][2][2] = {};
  dg[0][0][0] = 2.0 * std::exp(2.0 * x1);
  double G[2][2][2] = {};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l) { s += ginv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]); }
        G[i][j][k] = 0.5 * s;
      }
    }
  }
  std::vector<double> S{y[0], y[1], 0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) { S[2 + i] -= G[i][j][k] * y[j] * y[k]; }
    }
  }
  return S;
}

inline void expect_near_vec(const std::vector<double> & got, const std::vector<double> & want, double tol)
{
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) { EXPECT_NEAR(got[i], want[i], tol) << "component " << i; }
}

template <class Fn>
void expect_error(finslerlab::ErrorKind kind, Fn && fn)
{
  try {
    fn();
  } catch (const finslerlab::Error & e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
    return;
  }
  ADD_FAILURE() << "expected " << finslerlab::to_string(kind);
}

}  // namespace testing_support
