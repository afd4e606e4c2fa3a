#pragma once

#include <string>
#include <utility>

#include "finslerlab/finsler.hpp"

// Ehresmann connections built from a Finsler energy: L-Ehresmann and Wagner
// connections, torsion-free forms, S^V sprays and conservative vertical fields.

namespace finslerlab {

/// Third-order identities (d_h omega) get a looser bound.
inline constexpr double kThirdOrderTolerance = 1e-7;

struct EhresmannConnection
{
  VectorForm h;
  std::string provenance;  // berwald | l-ehresmann(...) | wagner(...) | from-semispray
};

struct ConnectionDiagnostics
{
  VectorForm torsion;  // [J, h]
  VectorForm tension;  // [C, h]
  double conservativity;
  double homogeneity;
};

namespace detail {
inline void require_semibasic(const VectorForm & L, const SampleGrid & grid, double tol)
{
  if (L.degree() != 1) { throw Error(ErrorKind::DegreeOutOfRange, "expected a vector 1-form"); }
  const double r = semibasic_residual(L, grid);
  if (!(r < tol)) { throw Error(ErrorKind::NotSemibasic, "semibasic residual " + std::to_string(r)); }
}

inline void require_vertical(const VectorField & V, const SampleGrid & grid, double tol)
{
  const double r = vertical_residual(V, grid);
  if (!(r < tol)) { throw Error(ErrorKind::NotVertical, "horizontal part has sup-norm " + std::to_string(r)); }
}

inline VectorForm J_of(int n) { return vertical_endomorphism(n); }
inline VectorForm C_of(int n) { return VectorForm(liouville_field(n)); }
}  // namespace detail

/// Crampin-Grifone connection h = (Id + [J, S]) / 2 of a semispray.
inline EhresmannConnection connection_from_semispray(const VectorField & S, const SampleGrid & grid,
                                                     double tol = kTheoremTolerance)
{
  detail::require_semispray(S, grid, tol);
  return {generated_connection(S), "from-semispray"};
}

inline EhresmannConnection berwald(const FinslerStructure & F) { return {berwald_connection(F), "berwald"}; }

/// Horizontal projection h(S0) of the canonical spray.
inline VectorField associated_semispray(const FinslerStructure & F, const EhresmannConnection & h)
{
  return apply(h.h, canonical_spray(F));
}

/// Theta_L = L + [J, (d_L E)#].
inline VectorForm theta_operator(const FinslerStructure & F, const VectorForm & L, double tol = kTheoremTolerance)
{
  detail::require_semibasic(L, F.grid(), tol);
  const auto U = sharp(F, d_K(L, F.energy()));
  return L + fn_bracket(detail::J_of(F.dim()), VectorForm(U));
}

/// h_L = h0 + L + [J, (d_L E)#].
inline EhresmannConnection l_ehresmann_connection(const FinslerStructure & F, const VectorForm & L,
                                                  double tol = kTheoremTolerance)
{
  return {berwald_connection(F) + theta_operator(F, L, tol), "l-ehresmann"};
}

struct WagnerConnection
{
  EhresmannConnection connection;  // h-bar
  VectorForm form;                 // L_W = (f^c J - df^v (x) C) / 2
};

/**
 * h-bar = h0 + f^c J - E [J, grad f^v] - d_J E (x) grad f^v, together with
 * the form L_W whose L-Ehresmann connection it is.
 */
inline WagnerConnection wagner_connection(const FinslerStructure & F, const BaseFunction & f)
{
  const int n   = F.dim();
  const auto J  = detail::J_of(n);
  const auto& E = F.energy();
  const auto fv = vertical_lift_function(f);
  const auto fc = complete_lift_function(f);
  const auto gr = gradient(F, fv);
  VectorForm hbar = berwald_connection(F) + fc * J - E * fn_bracket(J, VectorForm(gr))
                    - tensor(d_K(J, E), gr);
  VectorForm LW = 0.5 * (fc * J - tensor(differential(fv), liouville_field(n)));
  return {{hbar, "wagner"}, LW};
}

inline VectorForm weak_torsion(const EhresmannConnection & h) { return fn_bracket(detail::J_of(h.h.dim()), h.h); }

inline VectorForm tension(const EhresmannConnection & h) { return fn_bracket(detail::C_of(h.h.dim()), h.h); }

inline ConnectionDiagnostics diagnose(const FinslerStructure & F, const EhresmannConnection & h)
{
  auto t = weak_torsion(h);
  auto H = tension(h);
  return {t, H, sup_norm(d_K(h.h, F.energy()), F.grid()), sup_norm(H, F.grid())};
}

/// sup |[J, L]| for a semibasic L.
inline double torsion_free_residual(const VectorForm & L, const SampleGrid & grid, double tol = kTheoremTolerance)
{
  detail::require_semibasic(L, grid, tol);
  return sup_norm(fn_bracket(detail::J_of(L.dim()), L), grid);
}

/**
 * Vertical V_L with [J, V_L] = L for torsion-free L:
 * V_L = (S - S0)/2 - (d_L E)#, with S = h_L(S0).
 *
 * S generates h_L whenever h_L is homogeneous (tension zero), which covers
 * L = [J, V] for 2-homogeneous V.
 */
inline VectorField v_from_torsion_free(const FinslerStructure & F, const VectorForm & L,
                                       double tol = kTheoremTolerance)
{
  const double t = torsion_free_residual(L, F.grid(), tol);
  if (!(t < tol)) { throw Error(ErrorKind::NotTorsionFree, "[J, L] has sup-norm " + std::to_string(t)); }
  const auto S0 = canonical_spray(F);
  const auto hL = l_ehresmann_connection(F, L, tol);
  const auto S  = associated_semispray(F, hL);
  return 0.5 * (S - S0) - sharp(F, d_K(L, F.energy()));
}

/**
 * V = L° / (r + 1) for torsion-free L homogeneous of degree r, i.e.
 * [C, L] = (r - 1) L.
 */
inline VectorField v_from_homogeneous(const VectorForm & L, double r, const SampleGrid & grid,
                                      double tol = kTheoremTolerance)
{
  if (r == -1.0) { throw Error(ErrorKind::DegenerateDegree, "degree -1 has no reconstruction"); }
  const double t = torsion_free_residual(L, grid, tol);
  if (!(t < tol)) { throw Error(ErrorKind::NotTorsionFree, "[J, L] has sup-norm " + std::to_string(t)); }
  const double h = homogeneity_residual(L, r, grid);
  if (!(h < tol)) { throw Error(ErrorKind::HomogeneityFailure, "homogeneity residual " + std::to_string(h)); }
  const auto Lo = potential(L, flat_semispray(L.dim()), grid, tol).as_vector_field();
  return (1.0 / (r + 1.0)) * Lo;
}

/// S^V = S0 + 2V + 2 (d_{[J,V]} E)#.
inline VectorField semispray_from_vertical(const FinslerStructure & F, const VectorField & V,
                                           double tol = kTheoremTolerance)
{
  detail::require_vertical(V, F.grid(), tol);
  const auto L = fn_bracket(detail::J_of(F.dim()), VectorForm(V));
  return canonical_spray(F) + 2.0 * V + 2.0 * sharp(F, d_K(L, F.energy()));
}

struct ProjectiveFactor
{
  ScalarField lambda;
  double residual;  // sup |S^V - S^U - lambda C|
};

/**
 * Candidate projective factor lambda = 3 (V - U)E / E and how far S^V, S^U
 * are from being related by it.
 */
inline ProjectiveFactor projective_factor(const FinslerStructure & F, const VectorField & V, const VectorField & U,
                                          double tol = kTheoremTolerance)
{
  detail::require_vertical(V, F.grid(), tol);
  detail::require_vertical(U, F.grid(), tol);
  for (const auto * W : {&V, &U}) {
    const double h = homogeneity_residual(*W, 2.0, F.grid());
    if (!(h < tol)) { throw Error(ErrorKind::HomogeneityFailure, "field is not 2-homogeneous: " + std::to_string(h)); }
  }
  const auto & E     = F.energy();
  ScalarField lambda = 3.0 * (derivative_along(V - U, E) / E);
  const auto diff    = semispray_from_vertical(F, V, tol) - semispray_from_vertical(F, U, tol)
                    - lambda * liouville_field(F.dim());
  return {lambda, sup_norm(diff, F.grid())};
}

/// sup |i_V omega - d_J(VE)|; zero iff V is conservative in Vincze's sense.
inline double vincze_residual(const FinslerStructure & F, const VectorField & V, double tol = kTheoremTolerance)
{
  detail::require_vertical(V, F.grid(), tol);
  const auto J = detail::J_of(F.dim());
  return sup_norm(insert_vector(V, fundamental_two_form(F)) - d_K(J, derivative_along(V, F.energy())), F.grid());
}

/// sup |d_J g|; zero iff g is a vertical lift.
inline double vertical_lift_test(const ScalarField & g, const SampleGrid & grid)
{
  return sup_norm(d_K(detail::J_of(g.dim()), g), grid);
}

inline double vertical_lift_test(const FinslerStructure & F, const ScalarField & g)
{
  return vertical_lift_test(g, F.grid());
}

/**
 * U = V + (d_{[J,V]} E)#, conservative whenever the [J,V]-Ehresmann
 * connection is. Throws HypothesisFailure otherwise.
 */
inline VectorField conservative_lift(const FinslerStructure & F, const VectorField & V, double tol = kTheoremTolerance)
{
  detail::require_vertical(V, F.grid(), tol);
  const auto L  = fn_bracket(detail::J_of(F.dim()), VectorForm(V));
  const auto hL = l_ehresmann_connection(F, L, tol);
  const double r = conservative_connection_residual(F, hL.h, tol);
  if (!(r < tol)) {
    throw Error(ErrorKind::HypothesisFailure, "[J,V]-Ehresmann connection is not conservative, |d_h E| = "
                                                + std::to_string(r));
  }
  return V + sharp(F, d_K(L, F.energy()));
}

/// d_h omega = i_h d omega - d i_h omega.
inline DifferentialForm dh_omega(const FinslerStructure & F, const EhresmannConnection & h)
{
  return d_K(h.h, fundamental_two_form(F));
}

inline double dh_omega_residual(const FinslerStructure & F, const EhresmannConnection & h)
{
  return sup_norm(dh_omega(F, h), F.grid());
}

}  // namespace finslerlab
