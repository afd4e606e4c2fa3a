#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "finslerlab/error.hpp"
#include "finslerlab/jet.hpp"
#include "finslerlab/point.hpp"

namespace finslerlab {

/**
 * @brief What a tensor field on TM looks like pointwise.
 *
 * Components are stored in the coordinate frame e_a = (d/dx^1..d/dx^n,
 * d/dy^1..d/dy^n), row-major over the form slots, with the vector index last:
 *
 *   p-form        alpha(e_a1, ..., e_ap)       at [a1 ... ap]
 *   vector k-form K(e_a1, ..., e_ak)^c         at [a1 ... ak c]
 */
struct Shape
{
  int n{2};
  int degree{0};
  bool vector_valued{false};

  int frame() const { return 2 * n; }

  std::size_t size() const
  {
    std::size_t s = 1;
    for (int i = 0; i < degree; ++i) { s *= static_cast<std::size_t>(frame()); }
    if (vector_valued) { s *= static_cast<std::size_t>(frame()); }
    return s;
  }

  bool operator==(const Shape &) const = default;
};

namespace detail {

template <class T>
using Evaluator = std::function<std::vector<T>(std::span<const T>)>;

template <class Seq>
struct EvaluatorTuple;

template <std::size_t... K>
struct EvaluatorTuple<std::index_sequence<K...>>
{
  using type = std::tuple<Evaluator<Jet<static_cast<int>(K)>>...>;
};

using EvaluatorTable = typename EvaluatorTuple<std::make_index_sequence<kJetLevels>>::type;

template <class F, std::size_t... K>
std::shared_ptr<const EvaluatorTable> make_table(std::shared_ptr<const F> f, std::index_sequence<K...>)
{
  return std::make_shared<const EvaluatorTable>(Evaluator<Jet<static_cast<int>(K)>>(
    [f](std::span<const Jet<static_cast<int>(K)>> z) { return (*f)(z); })...);
}

}  // namespace detail

/**
 * @brief Type-erased tensor field on the slit tangent bundle.
 *
 * The evaluator is a generic callable instantiated once per jet level, so a
 * field can be evaluated on plain doubles or on nested jets. Fields are
 * immutable and cheap to copy.
 */
class TensorField
{
public:
  template <class F>
  TensorField(Shape shape, F && f)
      : shape_(shape),
        table_(detail::make_table(
          std::make_shared<const std::decay_t<F>>(std::forward<F>(f)), std::make_index_sequence<kJetLevels>{}))
  {}

  const Shape & shape() const { return shape_; }
  int dim() const { return shape_.n; }
  int degree() const { return shape_.degree; }
  bool vector_valued() const { return shape_.vector_valued; }

  /// Components at z = (x, y); z has 2n entries.
  template <class T>
  std::vector<T> eval(std::span<const T> z) const
  {
    return std::get<detail::Evaluator<T>>(*table_)(z);
  }

  template <class T>
  std::vector<T> eval(const std::vector<T> & z) const
  {
    return eval(std::span<const T>(z));
  }

  std::vector<double> eval(const TangentPoint & p) const
  {
    if (p.dim() != dim()) { throw Error(ErrorKind::DimensionMismatch, "point dimension differs from field"); }
    return eval(p.coords());
  }

private:
  Shape shape_;
  std::shared_ptr<const detail::EvaluatorTable> table_;
};

namespace detail {
inline void require_shape(const TensorField & f, int degree, bool vector_valued, const char * what)
{
  if (f.vector_valued() != vector_valued || (degree >= 0 && f.degree() != degree)) {
    throw Error(ErrorKind::DegreeOutOfRange, what);
  }
}
}  // namespace detail

/// Smooth function on the slit tangent bundle.
class ScalarField : public TensorField
{
public:
  explicit ScalarField(TensorField f) : TensorField(std::move(f))
  {
    detail::require_shape(*this, 0, false, "not a scalar field");
  }

  /// f is a generic callable (std::span<const T>) -> T.
  template <class F>
  static ScalarField make(int n, F f)
  {
    return ScalarField(TensorField(
      Shape{n, 0, false}, [f]<class T>(std::span<const T> z) -> std::vector<T> { return std::vector<T>{f(z)}; }));
  }

  template <class T>
  T operator()(std::span<const T> z) const
  {
    return eval(z)[0];
  }

  double operator()(const TangentPoint & p) const { return eval(p)[0]; }
};

/// Vector field on TM, 2n components over (d/dx, d/dy).
class VectorField : public TensorField
{
public:
  explicit VectorField(TensorField f) : TensorField(std::move(f))
  {
    detail::require_shape(*this, 0, true, "not a vector field");
  }

  template <class F>
  static VectorField make(int n, F f)
  {
    return VectorField(TensorField(Shape{n, 0, true}, std::move(f)));
  }
};

/// Differential p-form on TM, p <= 3.
class DifferentialForm : public TensorField
{
public:
  explicit DifferentialForm(TensorField f) : TensorField(std::move(f))
  {
    detail::require_shape(*this, -1, false, "not a differential form");
    if (degree() > 3) { throw Error(ErrorKind::DegreeOutOfRange, "differential forms are limited to degree 3"); }
  }

  template <class F>
  static DifferentialForm make(int n, int degree, F f)
  {
    return DifferentialForm(TensorField(Shape{n, degree, false}, std::move(f)));
  }

  /// alpha(X_1, ..., X_p) at a point for arbitrary argument vectors.
  double operator()(const TangentPoint & p, std::span<const std::vector<double>> args) const;
};

/// Vector-valued k-form on TM, k <= 2. Degree 0 is a vector field.
class VectorForm : public TensorField
{
public:
  explicit VectorForm(TensorField f) : TensorField(std::move(f))
  {
    detail::require_shape(*this, -1, true, "not a vector form");
    if (degree() > 2) { throw Error(ErrorKind::DegreeOutOfRange, "vector forms are limited to degree 2"); }
  }

  VectorForm(const VectorField & X) : TensorField(X) {}  // NOLINT: a vector field is a vector 0-form

  template <class F>
  static VectorForm make(int n, int degree, F f)
  {
    return VectorForm(TensorField(Shape{n, degree, true}, std::move(f)));
  }

  VectorField as_vector_field() const
  {
    if (degree() != 0) { throw Error(ErrorKind::DegreeOutOfRange, "vector form is not of degree 0"); }
    return VectorField(static_cast<const TensorField &>(*this));
  }

  std::vector<double> operator()(const TangentPoint & p, std::span<const std::vector<double>> args) const;
};

/// Smooth function on the base R^n; evaluated on the n base coordinates.
class BaseFunction : public TensorField
{
public:
  explicit BaseFunction(TensorField f) : TensorField(std::move(f))
  {
    detail::require_shape(*this, 0, false, "not a base function");
  }

  template <class F>
  static BaseFunction make(int n, F f)
  {
    return BaseFunction(TensorField(
      Shape{n, 0, false}, [f]<class T>(std::span<const T> x) -> std::vector<T> { return std::vector<T>{f(x)}; }));
  }

  template <class T>
  T operator()(std::span<const T> x) const
  {
    return eval(x)[0];
  }
};

// ---------------------------------------------------------------------------
// Jet-level differentiation primitives. Every derivative in the library goes
// through these, so the depth limit is enforced in one place.

template <class T>
struct ValueAndDerivative
{
  std::vector<T> value;
  std::vector<T> derivative;
};

/// Components of f at z together with their derivative along dir.
template <class T>
ValueAndDerivative<T> directional(const TensorField & f, std::span<const T> z, std::span<const T> dir)
{
  if constexpr (jet_depth_v<T> >= kMaxJetDepth) {
    throw Error(ErrorKind::JetDepthExceeded, "derivative requested beyond the deepest jet level");
  } else {
    std::vector<Dual<T>> zz(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) { zz[i] = Dual<T>(z[i], dir[i]); }
    auto r = f.eval(std::span<const Dual<T>>(zz));
    ValueAndDerivative<T> out;
    out.value.resize(r.size());
    out.derivative.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      out.value[i]      = r[i].re;
      out.derivative[i] = r[i].eps;
    }
    return out;
  }
}

template <class T>
ValueAndDerivative<T> directional(const TensorField & f, std::span<const T> z, const std::vector<T> & dir)
{
  return directional(f, z, std::span<const T>(dir));
}

template <class T>
struct FirstJet
{
  std::vector<T> value;
  std::vector<std::vector<T>> partial;  // partial[a] = d/dz^a of every component
};

/// Value and all coordinate partials of f at z.
template <class T>
FirstJet<T> first_jet(const TensorField & f, std::span<const T> z)
{
  FirstJet<T> jet;
  jet.partial.resize(z.size());
  std::vector<T> dir(z.size(), T(0.0));
  for (std::size_t a = 0; a < z.size(); ++a) {
    dir[a]          = T(1.0);
    auto vd         = directional(f, z, std::span<const T>(dir));
    dir[a]          = T(0.0);
    jet.partial[a]  = std::move(vd.derivative);
    if (a == 0) { jet.value = std::move(vd.value); }
  }
  return jet;
}

/// Second mixed partial d^2 f / dz^a dz^b of a scalar component.
template <class T>
T second_partial(const TensorField & f, std::span<const T> z, int a, int b, std::size_t component = 0)
{
  if constexpr (jet_depth_v<T> + 1 >= kMaxJetDepth) {
    throw Error(ErrorKind::JetDepthExceeded, "second derivative requested beyond the deepest jet level");
  } else {
    using D2 = Dual<Dual<T>>;
    std::vector<D2> zz(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      Dual<T> inner(z[i], T(static_cast<int>(i) == a ? 1.0 : 0.0));
      zz[i] = D2(inner, Dual<T>(T(static_cast<int>(i) == b ? 1.0 : 0.0), T(0.0)));
    }
    return f.eval(std::span<const D2>(zz))[component].eps.eps;
  }
}

// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<double> contract(const std::vector<double> & comps, const Shape & s,
                                    std::span<const std::vector<double>> args)
{
  if (static_cast<int>(args.size()) != s.degree) {
    throw Error(ErrorKind::DegreeOutOfRange, "wrong number of arguments for form");
  }
  const std::size_t N     = static_cast<std::size_t>(s.frame());
  std::vector<double> acc(comps);
  std::size_t block = comps.size();
  // Contract slots from the left.
  for (const auto & X : args) {
    if (X.size() != N) { throw Error(ErrorKind::DimensionMismatch, "argument vector has wrong size"); }
    block /= N;
    std::vector<double> next(block, 0.0);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t r = 0; r < block; ++r) { next[r] += X[a] * acc[a * block + r]; }
    }
    acc = std::move(next);
  }
  return acc;
}
}  // namespace detail

inline double DifferentialForm::operator()(const TangentPoint & p, std::span<const std::vector<double>> args) const
{
  return detail::contract(eval(p), shape(), args)[0];
}

inline std::vector<double> VectorForm::operator()(const TangentPoint & p,
                                                  std::span<const std::vector<double>> args) const
{
  return detail::contract(eval(p), shape(), args);
}

// ---------------------------------------------------------------------------
// Point-level operations from the public API.

/// Value of a scalar field at a point of the slit bundle.
inline double evaluate(const ScalarField & f, const TangentPoint & p, double min_fiber_norm = kDefaultMinFiberNorm)
{
  if (p.fiber_norm() < min_fiber_norm) { throw Error(ErrorKind::ZeroSection, "point too close to the zero section"); }
  return f(p);
}

namespace detail {
template <int K, class T>
T nested_derivative(const ScalarField & f, std::span<const T> z, std::span<const std::vector<double>> dirs)
{
  if constexpr (K == 0) {
    return f(z);
  } else {
    std::vector<Dual<T>> zz(z.size());
    const auto & d = dirs[0];
    for (std::size_t i = 0; i < z.size(); ++i) { zz[i] = Dual<T>(z[i], T(d[i])); }
    return nested_derivative<K - 1>(f, std::span<const Dual<T>>(zz), dirs.subspan(1)).eps;
  }
}
}  // namespace detail

/**
 * Exact mixed directional derivative of order dirs.size() (1..3) at p.
 */
inline double directional_derivative(const ScalarField & f, const TangentPoint & p,
                                     std::span<const std::vector<double>> dirs)
{
  if (dirs.empty() || dirs.size() > 3) { throw Error(ErrorKind::OrderOutOfRange, "order must be 1, 2 or 3"); }
  const auto z = p.coords();
  for (const auto & d : dirs) {
    if (d.size() != z.size()) { throw Error(ErrorKind::DimensionMismatch, "direction has wrong size"); }
  }
  std::span<const double> zs(z);
  switch (dirs.size()) {
  case 1: return detail::nested_derivative<1>(f, zs, dirs);
  case 2: return detail::nested_derivative<2>(f, zs, dirs);
  default: return detail::nested_derivative<3>(f, zs, dirs);
  }
}

/// Supremum of |component| over the grid points.
inline double sup_norm(const TensorField & f, const SampleGrid & grid)
{
  double m = 0.0;
  for (const auto & p : grid.points) {
    for (double v : f.eval(p)) {
      if (std::isnan(v)) { return std::numeric_limits<double>::infinity(); }
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

}  // namespace finslerlab
