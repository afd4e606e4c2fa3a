#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "finslerlab/error.hpp"
#include "finslerlab/jet.hpp"

namespace finslerlab::linalg {

/**
 * Solve A x = b for a dense row-major N x N matrix over any jet level.
 * Pivots are chosen on primal magnitudes, so the elimination order is the
 * same at every jet level and derivatives stay exact.
 */
template <class T>
std::vector<T> solve(std::vector<T> A, std::vector<T> b, std::size_t N)
{
  std::vector<std::size_t> perm(N);
  for (std::size_t i = 0; i < N; ++i) { perm[i] = i; }
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    double best     = std::abs(primal(A[k * N + k]));
    for (std::size_t r = k + 1; r < N; ++r) {
      double v = std::abs(primal(A[r * N + k]));
      if (v > best) {
        best = v;
        piv  = r;
      }
    }
    if (best == 0.0) { throw Error(ErrorKind::NondegeneracyFailure, "singular matrix in linear solve"); }
    if (piv != k) {
      for (std::size_t c = 0; c < N; ++c) { std::swap(A[k * N + c], A[piv * N + c]); }
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < N; ++r) {
      T f = A[r * N + k] / A[k * N + k];
      for (std::size_t c = k; c < N; ++c) { A[r * N + c] -= f * A[k * N + c]; }
      b[r] -= f * b[k];
    }
  }
  std::vector<T> x(N, T(0.0));
  for (std::size_t i = N; i-- > 0;) {
    T s = b[i];
    for (std::size_t c = i + 1; c < N; ++c) { s -= A[i * N + c] * x[c]; }
    x[i] = s / A[i * N + i];
  }
  return x;
}

/// 1-norm condition number ||A||_1 ||A^-1||_1; infinity when singular.
inline double condition_number(const std::vector<double> & A, std::size_t N)
{
  auto norm1 = [N](const std::vector<double> & M) {
    double m = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < N; ++r) { s += std::abs(M[r * N + c]); }
      m = std::max(m, s);
    }
    return m;
  };
  std::vector<double> inv(N * N);
  try {
    for (std::size_t c = 0; c < N; ++c) {
      std::vector<double> e(N, 0.0);
      e[c]   = 1.0;
      auto x = solve(A, e, N);
      for (std::size_t r = 0; r < N; ++r) { inv[r * N + c] = x[r]; }
    }
  } catch (const Error &) {
    return INFINITY;
  }
  return norm1(A) * norm1(inv);
}

/// Determinant of a small dense matrix by elimination (doubles only).
inline double determinant(std::vector<double> A, std::size_t N)
{
  double det = 1.0;
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < N; ++r) {
      if (std::abs(A[r * N + k]) > std::abs(A[piv * N + k])) { piv = r; }
    }
    if (A[piv * N + k] == 0.0) { return 0.0; }
    if (piv != k) {
      for (std::size_t c = 0; c < N; ++c) { std::swap(A[k * N + c], A[piv * N + c]); }
      det = -det;
    }
    det *= A[k * N + k];
    for (std::size_t r = k + 1; r < N; ++r) {
      double f = A[r * N + k] / A[k * N + k];
      for (std::size_t c = k; c < N; ++c) { A[r * N + c] -= f * A[k * N + c]; }
    }
  }
  return det;
}

}  // namespace finslerlab::linalg
