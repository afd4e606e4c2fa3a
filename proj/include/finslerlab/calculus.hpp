#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "finslerlab/error.hpp"
#include "finslerlab/field.hpp"
#include "finslerlab/point.hpp"

// Frolicher-Nijenhuis calculus on TM in the global chart (x, y).

namespace finslerlab {

inline constexpr double kConstructionTolerance = 1e-9;
inline constexpr double kTheoremTolerance      = 1e-8;

namespace detail {

inline std::size_t ipow(std::size_t b, int e)
{
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) { r *= b; }
  return r;
}

// Multi-index digits of a flat index, most significant first.
inline void digits(std::size_t flat, std::size_t N, int count, std::size_t * out)
{
  for (int i = count - 1; i >= 0; --i) {
    out[i] = flat % N;
    flat /= N;
  }
}

inline std::size_t undigits(const std::size_t * d, std::size_t N, int count)
{
  std::size_t f = 0;
  for (int i = 0; i < count; ++i) { f = f * N + d[i]; }
  return f;
}

template <class T>
std::vector<T> zeros(std::size_t n)
{
  return std::vector<T>(n, T(0.0));
}

template <class F>
concept Field = std::derived_from<F, TensorField> && !std::same_as<F, TensorField>;

inline void require_same_dim(const TensorField & a, const TensorField & b)
{
  if (a.dim() != b.dim()) { throw Error(ErrorKind::DimensionMismatch, "fields live on different bundles"); }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical objects

/// C = y^i d/dy^i.
inline VectorField liouville_field(int n)
{
  return VectorField::make(n, [n]<class T>(std::span<const T> z) {
    auto v = detail::zeros<T>(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) { v[n + i] = z[n + i]; }
    return v;
  });
}

/// J(d/dx^i) = d/dy^i, J(d/dy^i) = 0.
inline VectorForm vertical_endomorphism(int n)
{
  return VectorForm::make(n, 1, [n]<class T>(std::span<const T>) {
    const std::size_t N = 2 * static_cast<std::size_t>(n);
    auto K              = detail::zeros<T>(N * N);
    for (int i = 0; i < n; ++i) { K[i * N + n + i] = T(1.0); }
    return K;
  });
}

inline VectorForm identity_form(int n)
{
  return VectorForm::make(n, 1, [n]<class T>(std::span<const T>) {
    const std::size_t N = 2 * static_cast<std::size_t>(n);
    auto K              = detail::zeros<T>(N * N);
    for (std::size_t a = 0; a < N; ++a) { K[a * N + a] = T(1.0); }
    return K;
  });
}

/// y^i d/dx^i, a semispray on every TM of a chart.
inline VectorField flat_semispray(int n)
{
  return VectorField::make(n, [n]<class T>(std::span<const T> z) {
    auto v = detail::zeros<T>(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) { v[i] = z[n + i]; }
    return v;
  });
}

/// Constant frame field e_a.
inline VectorField coordinate_field(int n, int a)
{
  return VectorField::make(n, [n, a]<class T>(std::span<const T>) {
    auto v = detail::zeros<T>(2 * static_cast<std::size_t>(n));
    v[a]   = T(1.0);
    return v;
  });
}

/// Constant coframe 1-form dz^a.
inline DifferentialForm coordinate_one_form(int n, int a)
{
  return DifferentialForm::make(n, 1, [n, a]<class T>(std::span<const T>) {
    auto v = detail::zeros<T>(2 * static_cast<std::size_t>(n));
    v[a]   = T(1.0);
    return v;
  });
}

inline ScalarField constant_field(int n, double c)
{
  return ScalarField::make(n, [c]<class T>(std::span<const T>) { return T(c); });
}

inline BaseFunction constant_base_function(int n, double c)
{
  return BaseFunction::make(n, [c]<class T>(std::span<const T>) { return T(c); });
}

// ---------------------------------------------------------------------------
// Lifts

/// f^v(x, y) = f(x).
inline ScalarField vertical_lift_function(const BaseFunction & f)
{
  const int n = f.dim();
  return ScalarField::make(n, [f, n]<class T>(std::span<const T> z) { return f(z.first(n)); });
}

/// f^c(x, y) = y^i df/dx^i.
inline ScalarField complete_lift_function(const BaseFunction & f)
{
  const int n = f.dim();
  return ScalarField::make(n, [f, n]<class T>(std::span<const T> z) {
    return directional(f, z.first(n), z.subspan(n, n)).derivative[0];
  });
}

/// X^v = X^i(x) d/dy^i.
inline VectorField vertical_lift_vector(std::vector<BaseFunction> X)
{
  if (X.empty()) { throw Error(ErrorKind::DimensionMismatch, "empty base vector field"); }
  const int n = X.front().dim();
  if (static_cast<int>(X.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "base vector field needs n components");
  }
  return VectorField::make(n, [X, n]<class T>(std::span<const T> z) {
    auto v = detail::zeros<T>(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) { v[n + i] = X[i](z.first(n)); }
    return v;
  });
}

// ---------------------------------------------------------------------------
// Pointwise algebra

template <detail::Field F>
F operator+(const F & a, const F & b)
{
  detail::require_same_dim(a, b);
  if (!(a.shape() == b.shape())) { throw Error(ErrorKind::DegreeOutOfRange, "adding fields of different shape"); }
  return F(TensorField(a.shape(), [a, b]<class T>(std::span<const T> z) {
    auto u = a.eval(z);
    auto v = b.eval(z);
    for (std::size_t i = 0; i < u.size(); ++i) { u[i] += v[i]; }
    return u;
  }));
}

template <detail::Field F>
F operator-(const F & a, const F & b)
{
  detail::require_same_dim(a, b);
  if (!(a.shape() == b.shape())) { throw Error(ErrorKind::DegreeOutOfRange, "subtracting fields of different shape"); }
  return F(TensorField(a.shape(), [a, b]<class T>(std::span<const T> z) {
    auto u = a.eval(z);
    auto v = b.eval(z);
    for (std::size_t i = 0; i < u.size(); ++i) { u[i] -= v[i]; }
    return u;
  }));
}

template <detail::Field F>
F operator*(double c, const F & a)
{
  return F(TensorField(a.shape(), [a, c]<class T>(std::span<const T> z) {
    auto u = a.eval(z);
    for (auto & v : u) { v *= c; }
    return u;
  }));
}

template <detail::Field F>
F operator-(const F & a)
{
  return -1.0 * a;
}

/// Pointwise product with a function.
template <detail::Field F>
F operator*(const ScalarField & s, const F & a)
{
  detail::require_same_dim(s, a);
  return F(TensorField(a.shape(), [s, a]<class T>(std::span<const T> z) {
    auto u = a.eval(z);
    T f    = s(z);
    for (auto & v : u) { v *= f; }
    return u;
  }));
}

inline ScalarField operator/(const ScalarField & a, const ScalarField & b)
{
  detail::require_same_dim(a, b);
  return ScalarField::make(a.dim(), [a, b]<class T>(std::span<const T> z) { return a(z) / b(z); });
}

/// exp(f) pointwise.
inline ScalarField exp(const ScalarField & f)
{
  return ScalarField::make(f.dim(), [f]<class T>(std::span<const T> z) { return jet::exp(f(z)); });
}

/// K(X) for a vector 1-form K.
inline VectorField apply(const VectorForm & K, const VectorField & X)
{
  detail::require_same_dim(K, X);
  if (K.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "apply needs a vector 1-form"); }
  return VectorField::make(K.dim(), [K, X]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto k              = K.eval(z);
    auto x              = X.eval(z);
    auto out            = detail::zeros<T>(N);
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) { out[c] += x[b] * k[b * N + c]; }
    }
    return out;
  });
}

/// (K o L)(X) = K(L(X)) for vector 1-forms.
inline VectorForm compose(const VectorForm & K, const VectorForm & L)
{
  detail::require_same_dim(K, L);
  if (K.degree() != 1 || L.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "compose needs vector 1-forms"); }
  return VectorForm::make(K.dim(), 1, [K, L]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto k              = K.eval(z);
    auto l              = L.eval(z);
    auto out            = detail::zeros<T>(N * N);
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t d = 0; d < N; ++d) {
        for (std::size_t c = 0; c < N; ++c) { out[b * N + c] += l[b * N + d] * k[d * N + c]; }
      }
    }
    return out;
  });
}

/// (alpha (x) X)(Y) = alpha(Y) X.
inline VectorForm tensor(const DifferentialForm & alpha, const VectorField & X)
{
  detail::require_same_dim(alpha, X);
  if (alpha.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "tensor needs a 1-form"); }
  return VectorForm::make(X.dim(), 1, [alpha, X]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto a              = alpha.eval(z);
    auto x              = X.eval(z);
    auto out            = detail::zeros<T>(N * N);
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) { out[b * N + c] = a[b] * x[c]; }
    }
    return out;
  });
}

/// alpha(X) for a 1-form.
inline ScalarField pair(const DifferentialForm & alpha, const VectorField & X)
{
  detail::require_same_dim(alpha, X);
  if (alpha.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "pair needs a 1-form"); }
  return ScalarField::make(X.dim(), [alpha, X]<class T>(std::span<const T> z) {
    auto a = alpha.eval(z);
    auto x = X.eval(z);
    T s(0.0);
    for (std::size_t b = 0; b < a.size(); ++b) { s += a[b] * x[b]; }
    return s;
  });
}

/// Xf = df(X).
inline ScalarField derivative_along(const VectorField & X, const ScalarField & f)
{
  detail::require_same_dim(X, f);
  return ScalarField::make(X.dim(), [X, f]<class T>(std::span<const T> z) {
    auto x = X.eval(z);
    return directional(f, z, std::span<const T>(x)).derivative[0];
  });
}

// ---------------------------------------------------------------------------
// Brackets

/// [X, Y]^a = X^b d_b Y^a - Y^b d_b X^a.
inline VectorField lie_bracket(const VectorField & X, const VectorField & Y)
{
  detail::require_same_dim(X, Y);
  return VectorField::make(X.dim(), [X, Y]<class T>(std::span<const T> z) {
    auto x  = X.eval(z);
    auto dy = directional(Y, z, std::span<const T>(x));
    auto dx = directional(X, z, std::span<const T>(dy.value));
    for (std::size_t a = 0; a < x.size(); ++a) { dy.derivative[a] -= dx.derivative[a]; }
    return dy.derivative;
  });
}

namespace detail {

// [K, Y] for K a vector 1-form and Y a vector field: [K,Y]X = [KX,Y] - K[X,Y].
inline VectorForm fn_bracket_1_0(const VectorForm & K, const VectorField & Y)
{
  return VectorForm::make(K.dim(), 1, [K, Y]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto yj             = first_jet(Y, z);
    auto kd             = directional(K, z, std::span<const T>(yj.value));
    const auto & k      = kd.value;
    auto out            = zeros<T>(N * N);
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) {
        T s = -kd.derivative[b * N + c];
        for (std::size_t a = 0; a < N; ++a) {
          s += k[b * N + a] * yj.partial[a][c];
          s -= yj.partial[b][a] * k[a * N + c];
        }
        out[b * N + c] = s;
      }
    }
    return out;
  });
}

// Frolicher-Nijenhuis bracket of two vector 1-forms on frame pairs:
// [K,L](X,Y) = [KX,LY] + [LX,KY] + (KL+LK)[X,Y] - K([LX,Y]+[X,LY]) - L([KX,Y]+[X,KY]).
inline VectorForm fn_bracket_1_1(const VectorForm & K, const VectorForm & L)
{
  return VectorForm::make(K.dim(), 2, [K, L]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto kj             = first_jet(K, z);
    auto lj             = first_jet(L, z);
    const auto & k      = kj.value;
    const auto & l      = lj.value;
    const auto & dk     = kj.partial;
    const auto & dl     = lj.partial;
    auto out            = zeros<T>(N * N * N);
    std::vector<T> wk(N), wl(N);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        for (std::size_t d = 0; d < N; ++d) {
          wk[d] = dk[a][b * N + d] - dk[b][a * N + d];
          wl[d] = dl[a][b * N + d] - dl[b][a * N + d];
        }
        for (std::size_t c = 0; c < N; ++c) {
          T s(0.0);
          for (std::size_t d = 0; d < N; ++d) {
            // [K e_a, L e_b] + [L e_a, K e_b]
            s += k[a * N + d] * dl[d][b * N + c] - l[b * N + d] * dk[d][a * N + c];
            s += l[a * N + d] * dk[d][b * N + c] - k[b * N + d] * dl[d][a * N + c];
            s -= wl[d] * k[d * N + c] + wk[d] * l[d * N + c];
          }
          out[(a * N + b) * N + c] = s;
        }
      }
    }
    return out;
  });
}

}  // namespace detail

/**
 * Frolicher-Nijenhuis bracket for degree pairs (0,0), (1,0), (0,1), (1,1).
 * For a vector field Y and vector 1-form K, [Y,K] = -[K,Y] is the Lie
 * derivative of K along Y.
 */
inline VectorForm fn_bracket(const VectorForm & K, const VectorForm & L)
{
  detail::require_same_dim(K, L);
  const int k = K.degree();
  const int l = L.degree();
  if (k == 0 && l == 0) { return lie_bracket(K.as_vector_field(), L.as_vector_field()); }
  if (k == 1 && l == 0) { return detail::fn_bracket_1_0(K, L.as_vector_field()); }
  if (k == 0 && l == 1) { return -detail::fn_bracket_1_0(L, K.as_vector_field()); }
  if (k == 1 && l == 1) { return detail::fn_bracket_1_1(K, L); }
  throw Error(ErrorKind::DegreeOutOfRange, "bracket degree would exceed 2");
}

// ---------------------------------------------------------------------------
// Insertions and derivations

/// i_Y on the first slot of a form.
inline DifferentialForm insert_vector(const VectorField & Y, const DifferentialForm & alpha)
{
  detail::require_same_dim(Y, alpha);
  if (alpha.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "cannot insert into a 0-form"); }
  return DifferentialForm::make(Y.dim(), alpha.degree() - 1, [Y, alpha]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto y              = Y.eval(z);
    auto a              = alpha.eval(z);
    const std::size_t block = a.size() / N;
    auto out                = detail::zeros<T>(block);
    for (std::size_t c = 0; c < N; ++c) {
      for (std::size_t r = 0; r < block; ++r) { out[r] += y[c] * a[c * block + r]; }
    }
    return out;
  });
}

inline VectorForm insert_vector(const VectorField & Y, const VectorForm & K)
{
  detail::require_same_dim(Y, K);
  if (K.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "cannot insert into a vector field"); }
  return VectorForm::make(Y.dim(), K.degree() - 1, [Y, K]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto y              = Y.eval(z);
    auto a              = K.eval(z);
    const std::size_t block = a.size() / N;
    auto out                = detail::zeros<T>(block);
    for (std::size_t c = 0; c < N; ++c) {
      for (std::size_t r = 0; r < block; ++r) { out[r] += y[c] * a[c * block + r]; }
    }
    return out;
  });
}

/// (i_K alpha)(X_1..X_p) = sum_i alpha(X_1, .., K X_i, .., X_p).
inline DifferentialForm insert_one_form(const VectorForm & K, const DifferentialForm & alpha)
{
  detail::require_same_dim(K, alpha);
  if (K.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "i_K needs a vector 1-form"); }
  if (alpha.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "i_K of a function is not defined here"); }
  const int p = alpha.degree();
  return DifferentialForm::make(K.dim(), p, [K, alpha, p]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto k              = K.eval(z);
    auto a              = alpha.eval(z);
    auto out            = detail::zeros<T>(a.size());
    std::size_t idx[3], tmp[3];
    for (std::size_t f = 0; f < a.size(); ++f) {
      detail::digits(f, N, p, idx);
      T s(0.0);
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) { tmp[j] = idx[j]; }
        for (std::size_t c = 0; c < N; ++c) {
          tmp[i] = c;
          s += k[idx[i] * N + c] * a[detail::undigits(tmp, N, p)];
        }
      }
      out[f] = s;
    }
    return out;
  });
}

/// df.
inline DifferentialForm differential(const ScalarField & f)
{
  return DifferentialForm::make(f.dim(), 1, [f]<class T>(std::span<const T> z) {
    auto jet = first_jet(f, z);
    std::vector<T> out(z.size());
    for (std::size_t a = 0; a < z.size(); ++a) { out[a] = jet.partial[a][0]; }
    return out;
  });
}

/// Exterior derivative by the alternating sum of coordinate partials.
inline DifferentialForm exterior_derivative(const DifferentialForm & alpha)
{
  const int p = alpha.degree();
  if (p > 2) { throw Error(ErrorKind::DegreeOutOfRange, "d is limited to forms of degree <= 2"); }
  return DifferentialForm::make(alpha.dim(), p + 1, [alpha, p]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto jet            = first_jet(alpha, z);
    const std::size_t size = detail::ipow(N, p + 1);
    auto out               = detail::zeros<T>(size);
    std::size_t idx[3], rest[3];
    for (std::size_t f = 0; f < size; ++f) {
      detail::digits(f, N, p + 1, idx);
      T s(0.0);
      for (int i = 0; i <= p; ++i) {
        int r = 0;
        for (int j = 0; j <= p; ++j) {
          if (j != i) { rest[r++] = idx[j]; }
        }
        const T & v = jet.partial[idx[i]][detail::undigits(rest, N, p)];
        if (i % 2 == 0) {
          s += v;
        } else {
          s -= v;
        }
      }
      out[f] = s;
    }
    return out;
  });
}

inline DifferentialForm exterior_derivative(const ScalarField & f) { return differential(f); }

/// d_K f = df o K for a vector k-form K, k in {1, 2}.
inline DifferentialForm d_K(const VectorForm & K, const ScalarField & f)
{
  detail::require_same_dim(K, f);
  const int k = K.degree();
  if (k < 1 || k > 2) { throw Error(ErrorKind::DegreeOutOfRange, "d_K on functions needs k in {1,2}"); }
  return DifferentialForm::make(K.dim(), k, [K, f]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto kv             = K.eval(z);
    auto jet            = first_jet(f, z);
    const std::size_t rows = kv.size() / N;
    auto out               = detail::zeros<T>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < N; ++c) { out[r] += kv[r * N + c] * jet.partial[c][0]; }
    }
    return out;
  });
}

/// d_K alpha = i_K d alpha - d i_K alpha for a vector 1-form K.
inline DifferentialForm d_K(const VectorForm & K, const DifferentialForm & alpha)
{
  if (K.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "d_K on forms needs a vector 1-form"); }
  if (alpha.degree() > 2) { throw Error(ErrorKind::DegreeOutOfRange, "d_K result would exceed degree 3"); }
  if (alpha.degree() == 0) { return d_K(K, ScalarField(static_cast<const TensorField &>(alpha))); }
  return insert_one_form(K, exterior_derivative(alpha)) - exterior_derivative(insert_one_form(K, alpha));
}

/// L_X alpha = i_X d alpha + d i_X alpha.
inline DifferentialForm lie_derivative(const VectorField & X, const DifferentialForm & alpha)
{
  if (alpha.degree() == 0) {
    return DifferentialForm(derivative_along(X, ScalarField(static_cast<const TensorField &>(alpha))));
  }
  if (alpha.degree() > 2) { throw Error(ErrorKind::DegreeOutOfRange, "Lie derivative limited to degree <= 2"); }
  return insert_vector(X, exterior_derivative(alpha)) + exterior_derivative(insert_vector(X, alpha));
}

// ---------------------------------------------------------------------------
// Residual predicates

/// sup over the grid of the x-components of X.
inline double vertical_residual(const VectorField & X, const SampleGrid & grid)
{
  double m = 0.0;
  for (const auto & p : grid.points) {
    auto v = X.eval(p);
    for (int i = 0; i < X.dim(); ++i) { m = std::max(m, std::abs(v[i])); }
  }
  return m;
}

/// sup of |JS - C|.
inline double semispray_residual(const VectorField & S, const SampleGrid & grid)
{
  return sup_norm(apply(vertical_endomorphism(S.dim()), S) - liouville_field(S.dim()), grid);
}

/// sup of i_{J xi} alpha over frame vectors xi.
inline double semibasic_residual(const DifferentialForm & alpha, const SampleGrid & grid)
{
  if (alpha.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "semibasic test needs degree >= 1"); }
  const int n = alpha.dim();
  const std::size_t N = 2 * static_cast<std::size_t>(n);
  double m = 0.0;
  for (const auto & p : grid.points) {
    auto a                  = alpha.eval(p);
    const std::size_t block = a.size() / N;
    // J e_{x^i} = e_{y^i}; J kills the vertical frame.
    for (int i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < block; ++r) { m = std::max(m, std::abs(a[(n + i) * block + r])); }
    }
  }
  return m;
}

/// sup of J o K and K(J xi, ...) over frame vectors xi.
inline double semibasic_residual(const VectorForm & K, const SampleGrid & grid)
{
  if (K.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "semibasic test needs degree >= 1"); }
  const int n = K.dim();
  const std::size_t N = 2 * static_cast<std::size_t>(n);
  double m = 0.0;
  for (const auto & p : grid.points) {
    auto k                  = K.eval(p);
    const std::size_t block = k.size() / N;
    for (int i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < block; ++r) { m = std::max(m, std::abs(k[(n + i) * block + r])); }
    }
    // (J K(...))^{y^i} = K(...)^{x^i}
    for (std::size_t r = 0; r < k.size() / N; ++r) {
      for (int i = 0; i < n; ++i) { m = std::max(m, std::abs(k[r * N + i])); }
    }
  }
  return m;
}

/// sup of |Cf - r f|.
inline double homogeneity_residual(const ScalarField & f, double r, const SampleGrid & grid)
{
  return sup_norm(derivative_along(liouville_field(f.dim()), f) - r * f, grid);
}

/// sup of |[C, K] - (r - 1) K| for a vector field or vector 1-form.
inline double homogeneity_residual(const VectorForm & K, double r, const SampleGrid & grid)
{
  if (K.degree() > 1) { throw Error(ErrorKind::DegreeOutOfRange, "homogeneity test needs degree <= 1"); }
  return sup_norm(fn_bracket(VectorForm(liouville_field(K.dim())), K) - (r - 1.0) * K, grid);
}

inline double homogeneity_residual(const VectorField & X, double r, const SampleGrid & grid)
{
  return homogeneity_residual(VectorForm(X), r, grid);
}

// ---------------------------------------------------------------------------
// Potentials

namespace detail {
inline void require_semispray(const VectorField & S, const SampleGrid & grid, double tol)
{
  double r = semispray_residual(S, grid);
  if (!(r < tol)) { throw Error(ErrorKind::NotSemispray, "JS - C has sup-norm " + std::to_string(r)); }
}
}  // namespace detail

/// K° = i_S K for a semibasic vector form; independent of the semispray.
inline VectorForm potential(const VectorForm & K, const VectorField & S, const SampleGrid & grid,
                            double tol = kTheoremTolerance)
{
  if (K.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "potential needs degree >= 1"); }
  double r = semibasic_residual(K, grid);
  if (!(r < tol)) { throw Error(ErrorKind::NotSemibasic, "semibasic residual " + std::to_string(r)); }
  detail::require_semispray(S, grid, tol);
  return insert_vector(S, K);
}

inline DifferentialForm potential(const DifferentialForm & alpha, const VectorField & S, const SampleGrid & grid,
                                  double tol = kTheoremTolerance)
{
  if (alpha.degree() < 1) { throw Error(ErrorKind::DegreeOutOfRange, "potential needs degree >= 1"); }
  double r = semibasic_residual(alpha, grid);
  if (!(r < tol)) { throw Error(ErrorKind::NotSemibasic, "semibasic residual " + std::to_string(r)); }
  detail::require_semispray(S, grid, tol);
  return insert_vector(S, alpha);
}

}  // namespace finslerlab
