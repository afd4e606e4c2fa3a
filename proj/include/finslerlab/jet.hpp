#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>

namespace finslerlab {

/**
 * @brief First-order jet a + b*eps with eps^2 = 0.
 *
 * Nesting Dual<Dual<...>> gives exact mixed directional derivatives: every
 * nesting level carries its own infinitesimal, and a derivative request always
 * adds the new level on the outside, so levels never mix.
 */
template <class T>
struct Dual
{
  T re{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(double c) : re(c), eps(0.0) {}  // NOLINT: constants lift implicitly
  constexpr Dual(const T & r, const T & e) : re(r), eps(e) {}
};

template <class T>
struct jet_depth : std::integral_constant<int, 0>
{};

template <class T>
struct jet_depth<Dual<T>> : std::integral_constant<int, 1 + jet_depth<T>::value>
{};

template <class T>
inline constexpr int jet_depth_v = jet_depth<T>::value;

namespace detail {
template <int K>
struct jet_of
{
  using type = Dual<typename jet_of<K - 1>::type>;
};
template <>
struct jet_of<0>
{
  using type = double;
};
}  // namespace detail

/// Jet<0> is double, Jet<k> is k nested duals.
template <int K>
using Jet = typename detail::jet_of<K>::type;

/// Deepest nesting a field can be evaluated at.
inline constexpr int kMaxJetDepth = 5;
inline constexpr std::size_t kJetLevels = kMaxJetDepth + 1;

template <class T>
constexpr double primal(const T & x)
{
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return primal(x.re);
  }
}

// Arithmetic. Mixed operations are only defined against plain doubles.

template <class T>
constexpr Dual<T> operator+(const Dual<T> & a, const Dual<T> & b)
{
  return {a.re + b.re, a.eps + b.eps};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T> & a, const Dual<T> & b)
{
  return {a.re - b.re, a.eps - b.eps};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T> & a)
{
  return {-a.re, -a.eps};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T> & a, const Dual<T> & b)
{
  return {a.re * b.re, a.re * b.eps + a.eps * b.re};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T> & a, const Dual<T> & b)
{
  T inv = 1.0 / b.re;
  T q   = a.re * inv;
  return {q, (a.eps - q * b.eps) * inv};
}

template <class T>
constexpr Dual<T> operator+(const Dual<T> & a, double c)
{
  return {a.re + c, a.eps};
}
template <class T>
constexpr Dual<T> operator+(double c, const Dual<T> & a)
{
  return {c + a.re, a.eps};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T> & a, double c)
{
  return {a.re - c, a.eps};
}
template <class T>
constexpr Dual<T> operator-(double c, const Dual<T> & a)
{
  return {c - a.re, -a.eps};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T> & a, double c)
{
  return {a.re * c, a.eps * c};
}
template <class T>
constexpr Dual<T> operator*(double c, const Dual<T> & a)
{
  return {c * a.re, c * a.eps};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T> & a, double c)
{
  return {a.re / c, a.eps / c};
}
template <class T>
constexpr Dual<T> operator/(double c, const Dual<T> & a)
{
  return Dual<T>(c) / a;
}

template <class T, class U>
constexpr Dual<T> & operator+=(Dual<T> & a, const U & b)
{
  return a = a + b;
}
template <class T, class U>
constexpr Dual<T> & operator-=(Dual<T> & a, const U & b)
{
  return a = a - b;
}
template <class T, class U>
constexpr Dual<T> & operator*=(Dual<T> & a, const U & b)
{
  return a = a * b;
}
template <class T, class U>
constexpr Dual<T> & operator/=(Dual<T> & a, const U & b)
{
  return a = a / b;
}

/// Elementary functions that work on double and on any jet level.
namespace jet {

template <class T>
T exp(const T & x)
{
  if constexpr (std::is_same_v<T, double>) {
    return std::exp(x);
  } else {
    auto e = jet::exp(x.re);
    return {e, e * x.eps};
  }
}

template <class T>
T log(const T & x)
{
  if constexpr (std::is_same_v<T, double>) {
    return std::log(x);
  } else {
    return {jet::log(x.re), x.eps / x.re};
  }
}

template <class T>
T sqrt(const T & x)
{
  if constexpr (std::is_same_v<T, double>) {
    return std::sqrt(x);
  } else {
    auto s = jet::sqrt(x.re);
    return {s, x.eps / (2.0 * s)};
  }
}

template <class T>
T sin(const T & x);
template <class T>
T cos(const T & x);

template <class T>
T sin(const T & x)
{
  if constexpr (std::is_same_v<T, double>) {
    return std::sin(x);
  } else {
    return {jet::sin(x.re), jet::cos(x.re) * x.eps};
  }
}

template <class T>
T cos(const T & x)
{
  if constexpr (std::is_same_v<T, double>) {
    return std::cos(x);
  } else {
    return {jet::cos(x.re), -(jet::sin(x.re) * x.eps)};
  }
}

/// Integer power by repeated multiplication.
template <class T>
T pow(const T & x, int k)
{
  if (k < 0) { return 1.0 / jet::pow(x, -k); }
  T r(1.0);
  for (int i = 0; i < k; ++i) { r = r * x; }
  return r;
}

}  // namespace jet

}  // namespace finslerlab
