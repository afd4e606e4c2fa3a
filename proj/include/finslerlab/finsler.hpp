#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "finslerlab/calculus.hpp"
#include "finslerlab/linalg.hpp"

namespace finslerlab {

/// Condition number above which the sharp solve refuses to answer.
inline constexpr double kMaxSharpCondition = 1e12;
inline constexpr double kMinMetricDeterminant = 1e-10;

/**
 * @brief Energy function validated on a sample grid.
 *
 * Holds E together with the grid it was checked on; constructions that need
 * to verify their own preconditions reuse that grid.
 */
class FinslerStructure
{
public:
  int dim() const { return energy_.dim(); }
  const ScalarField & energy() const { return energy_; }
  const SampleGrid & grid() const { return grid_; }

  /// g_ij = d^2 E / dy^i dy^j, row-major n x n.
  template <class T>
  std::vector<T> metric(std::span<const T> z) const
  {
    const int n = dim();
    std::vector<T> g(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        g[i * n + j] = second_partial(energy_, z, n + i, n + j);
        g[j * n + i] = g[i * n + j];
      }
    }
    return g;
  }

  /// Omega_ab = omega(e_a, e_b) for omega = d d_J E, assembled from second partials of E.
  template <class T>
  std::vector<T> omega_matrix(std::span<const T> z) const
  {
    const int n         = dim();
    const std::size_t N = 2 * static_cast<std::size_t>(n);
    // H[a][j] = d_a d_{y^j} E
    std::vector<T> H(N * n);
    for (std::size_t a = 0; a < N; ++a) {
      for (int j = 0; j < n; ++j) {
        if (a >= static_cast<std::size_t>(n) && static_cast<int>(a) - n > j) {
          H[a * n + j] = H[static_cast<std::size_t>(n + j) * n + (a - n)];
        } else {
          H[a * n + j] = second_partial(energy_, z, static_cast<int>(a), n + j);
        }
      }
    }
    auto W = detail::zeros<T>(N * N);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        W[i * N + j]           = H[i * n + j] - H[j * n + i];
        W[i * N + n + j]       = -H[(n + j) * n + i];
        W[(n + i) * N + j]     = H[(n + i) * n + j];
      }
    }
    return W;
  }

  std::vector<double> omega_matrix(const TangentPoint & p) const
  {
    auto z = p.coords();
    return omega_matrix(std::span<const double>(z));
  }

private:
  FinslerStructure(ScalarField E, SampleGrid grid) : energy_(std::move(E)), grid_(std::move(grid)) {}

  friend FinslerStructure validate_finsler(const ScalarField & E, const SampleGrid & grid);

  ScalarField energy_;
  SampleGrid grid_;
};

namespace detail {
inline std::string describe(const TangentPoint & p)
{
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.base().size(); ++i) { os << (i ? "," : "") << p.base()[i]; }
  os << ";";
  for (std::size_t i = 0; i < p.fiber().size(); ++i) { os << (i ? "," : "") << p.fiber()[i]; }
  os << ")";
  return os.str();
}
}  // namespace detail

/**
 * Checks positivity, 2-homogeneity (CE = 2E) and nondegeneracy of the
 * vertical Hessian at every grid point. Throws with the offending point.
 */
inline FinslerStructure validate_finsler(const ScalarField & E, const SampleGrid & grid)
{
  if (grid.points.empty()) { throw Error(ErrorKind::BadConfig, "validation grid is empty"); }
  if (grid.dim() != E.dim()) { throw Error(ErrorKind::DimensionMismatch, "grid and energy dimensions differ"); }
  const int n  = E.dim();
  auto CE      = derivative_along(liouville_field(n), E);
  FinslerStructure F(E, grid);
  for (const auto & p : grid.points) {
    const double e = E(p);
    if (!(e > 0.0)) {
      throw Error(ErrorKind::PositivityFailure, "E = " + std::to_string(e) + " at " + detail::describe(p));
    }
  }
  for (const auto & p : grid.points) {
    const double r = std::abs(CE(p) - 2.0 * E(p));
    if (!(r < kConstructionTolerance)) {
      throw Error(ErrorKind::HomogeneityFailure, "|CE - 2E| = " + std::to_string(r) + " at " + detail::describe(p));
    }
  }
  for (const auto & p : grid.points) {
    auto z       = p.coords();
    auto g       = F.metric(std::span<const double>(z));
    const double det = linalg::determinant(g, static_cast<std::size_t>(n));
    if (!(std::abs(det) > kMinMetricDeterminant)) {
      throw Error(ErrorKind::NondegeneracyFailure, "det g = " + std::to_string(det) + " at " + detail::describe(p));
    }
  }
  return F;
}

/// omega = d d_J E, with its fast-path matrix.
struct FundamentalForm
{
  DifferentialForm omega;
  FinslerStructure structure;

  std::vector<double> matrix(const TangentPoint & p) const { return structure.omega_matrix(p); }
};

inline DifferentialForm fundamental_two_form(const FinslerStructure & F)
{
  return exterior_derivative(d_K(vertical_endomorphism(F.dim()), F.energy()));
}

inline FundamentalForm fundamental_form(const FinslerStructure & F) { return {fundamental_two_form(F), F}; }

/**
 * beta# with i_{beta#} omega = beta, solved pointwise from
 * sum_a X^a Omega_ab = beta_b.
 */
inline VectorField sharp(const FinslerStructure & F, const DifferentialForm & beta)
{
  if (beta.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "sharp needs a 1-form"); }
  detail::require_same_dim(F.energy(), beta);
  return VectorField::make(F.dim(), [F, beta]<class T>(std::span<const T> z) {
    const std::size_t N = z.size();
    auto W              = F.omega_matrix(z);
    std::vector<T> A(N * N);
    std::vector<double> Ap(N * N);
    for (std::size_t r = 0; r < N; ++r) {
      for (std::size_t c = 0; c < N; ++c) {
        A[r * N + c]  = W[c * N + r];
        Ap[r * N + c] = primal(W[c * N + r]);
      }
    }
    const double cond = linalg::condition_number(Ap, N);
    if (!(cond <= kMaxSharpCondition)) {
      throw Error(ErrorKind::NondegeneracyFailure, "fundamental form condition number " + std::to_string(cond));
    }
    return linalg::solve(std::move(A), beta.eval(z), N);
  });
}

inline VectorField gradient(const FinslerStructure & F, const ScalarField & f) { return sharp(F, differential(f)); }

/// S0 = -(dE)#.
inline VectorField canonical_spray(const FinslerStructure & F) { return -gradient(F, F.energy()); }

/// h = (Id + [J, S]) / 2 for a semispray S.
inline VectorForm generated_connection(const VectorField & S)
{
  const int n = S.dim();
  return 0.5 * (identity_form(n) + fn_bracket(vertical_endomorphism(n), VectorForm(S)));
}

/// Berwald connection h0 generated by the canonical spray.
inline VectorForm berwald_connection(const FinslerStructure & F) { return generated_connection(canonical_spray(F)); }

/// E~ = exp(f^v) E, revalidated on the same grid.
inline FinslerStructure conformal_change(const FinslerStructure & F, const BaseFunction & f)
{
  return validate_finsler(exp(vertical_lift_function(f)) * F.energy(), F.grid());
}

struct ProjectorResiduals
{
  double idempotence;  // |h o h - h|
  double j_after_h;    // |J o h - J|
  double h_after_j;    // |h o J|

  double max() const { return std::max({idempotence, j_after_h, h_after_j}); }
};

inline ProjectorResiduals projector_residuals(const VectorForm & h, const SampleGrid & grid)
{
  if (h.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "connection must be a vector 1-form"); }
  const auto J = vertical_endomorphism(h.dim());
  return {sup_norm(compose(h, h) - h, grid), sup_norm(compose(J, h) - J, grid), sup_norm(compose(h, J), grid)};
}

/// sup |d_L E| for a semibasic vector 1-form L.
inline double conservative_form_residual(const FinslerStructure & F, const VectorForm & L,
                                         double tol = kTheoremTolerance)
{
  if (L.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "L must be a vector 1-form"); }
  const double r = semibasic_residual(L, F.grid());
  if (!(r < tol)) { throw Error(ErrorKind::NotSemibasic, "semibasic residual " + std::to_string(r)); }
  return sup_norm(d_K(L, F.energy()), F.grid());
}

/// sup |d_h E| for an Ehresmann connection h.
inline double conservative_connection_residual(const FinslerStructure & F, const VectorForm & h,
                                               double tol = kTheoremTolerance)
{
  const auto pr = projector_residuals(h, F.grid());
  if (!(pr.max() < tol)) { throw Error(ErrorKind::NotConnection, "projector residual " + std::to_string(pr.max())); }
  return sup_norm(d_K(h, F.energy()), F.grid());
}

}  // namespace finslerlab
