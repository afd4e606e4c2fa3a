#include <algorithm>
#include <cmath>

#include "finslerlab/fixtures.hpp"
#include "finslerlab/verifier/verifier.hpp"

namespace finslerlab::verifier {

void CheckContext::add(double residual)
{
  if (std::isnan(residual)) { residual = std::numeric_limits<double>::infinity(); }
  max_ = std::max(max_, residual);
}

void CheckContext::expect(ErrorKind kind, const std::function<void()> & fn)
{
  try {
    fn();
  } catch (const Error & e) {
    if (e.kind() == kind) { return; }
    failures_.push_back("expected " + std::string(to_string(kind)) + ", got " + e.what());
    return;
  }
  failures_.push_back("expected " + std::string(to_string(kind)) + ", nothing was raised");
}

namespace {

using namespace finslerlab::fixtures;

constexpr int kRandomObjects = 5;

std::vector<std::string> all_fixtures()
{
  std::vector<std::string> ids;
  for (const auto & f : fixture_list()) { ids.push_back(f.id); }
  std::sort(ids.begin(), ids.end());
  return ids;
}

VectorForm as_form(const VectorField & X) { return VectorForm(X); }

VectorForm jv(const FinslerStructure & F, const VectorField & V)
{
  return fn_bracket(vertical_endomorphism(F.dim()), as_form(V));
}

VectorField lift_dx1(int n)
{
  std::vector<BaseFunction> X{constant_base_function(n, 1.0)};
  for (int i = 1; i < n; ++i) { X.push_back(constant_base_function(n, 0.0)); }
  return vertical_lift_vector(X);
}

void add_projector(CheckContext & ctx, const VectorForm & h, const SampleGrid & grid)
{
  ctx.add(projector_residuals(h, grid).max());
}

// ---------------------------------------------------------------------------

void finsler_axioms(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F    = env.F;
  const auto & grid = F.grid();
  const int n       = F.dim();
  const auto N      = 2 * static_cast<std::size_t>(n);
  ctx.add(homogeneity_residual(F.energy(), 2.0, grid));
  const auto omega = fundamental_two_form(F);
  for (const auto & p : grid.points) {
    auto fast = F.omega_matrix(p);
    auto ref  = omega.eval(p);
    auto z    = p.coords();
    auto g    = F.metric(std::span<const double>(z));
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        ctx.add(std::abs(fast[a * N + b] - ref[a * N + b]));
        ctx.add(std::abs(fast[a * N + b] + fast[b * N + a]));
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) { ctx.add(std::abs(fast[(n + j) * N + i] - g[j * n + i])); }
    }
  }
  ctx.expect(ErrorKind::PositivityFailure, [&] { validate_finsler(indefinite_energy(n), grid); });
  ctx.expect(ErrorKind::NondegeneracyFailure, [&] { validate_finsler(degenerate_energy(n), grid); });
}

void omega_relations(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F    = env.F;
  const auto & grid = F.grid();
  const auto J      = vertical_endomorphism(F.dim());
  const auto C      = liouville_field(F.dim());
  const auto omega  = fundamental_two_form(F);
  ctx.add(sup_norm(insert_one_form(J, omega), grid));
  ctx.add(sup_norm(insert_vector(C, omega) - d_K(J, F.energy()), grid));
  ctx.add(sup_norm(lie_derivative(C, omega) - omega, grid));
}

void sharp_round_trip(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F   = env.F;
  const auto omega = fundamental_two_form(F);
  for (int k = 0; k < kRandomObjects; ++k) {
    for (bool semibasic : {true, false}) {
      const auto beta = random_one_form(F.dim(), env.seed * 1000 + 10 * k + (semibasic ? 1 : 2), semibasic);
      ctx.add(sup_norm(insert_vector(sharp(F, beta), omega) - beta, F.grid()));
    }
  }
}

void sharp_lemma(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F  = env.F;
  const auto S0   = canonical_spray(F);
  for (int k = 0; k < kRandomObjects; ++k) {
    const auto beta = random_one_form(F.dim(), env.seed * 1000 + 10 * k + 3, true);
    const ScalarField lhs = derivative_along(sharp(F, beta), F.energy());
    const ScalarField rhs(static_cast<const TensorField &>(potential(beta, S0, F.grid())));
    ctx.add(sup_norm(lhs - rhs, F.grid()));
  }
}

void berwald_properties(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  const auto h0  = berwald(F);
  const auto d   = diagnose(F, h0);
  ctx.add(sup_norm(d.torsion, F.grid()));
  ctx.add(d.homogeneity);
  ctx.add(d.conservativity);
  add_projector(ctx, h0.h, F.grid());
  ctx.add(semispray_residual(canonical_spray(F), F.grid()));
  ctx.add(homogeneity_residual(canonical_spray(F), 2.0, F.grid()));
}

void conservative_forms(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  const auto h0  = berwald_connection(F);
  for (const char * id : {"wagner-diff:x1", "wagner-diff:x1x2", "zero"}) {
    const auto L  = named_form(F, id);
    const auto hL = l_ehresmann_connection(F, L);
    ctx.add(conservative_form_residual(F, L));
    ctx.add(sup_norm(hL.h - (h0 + L), F.grid()));
    ctx.add(conservative_connection_residual(F, hL.h));
  }
}

void vertical_lift_biconditional(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F   = env.F;
  const double tol = kTheoremTolerance;
  const auto S0    = canonical_spray(F);
  for (const char * id : {"zero", "wagner-form:x1", "fvJ:x1", "jv:E-dy1", "corollary:x1", "corollary:x1x2"}) {
    const auto L  = named_form(F, id);
    const auto hL = l_ehresmann_connection(F, L);
    const double a = conservative_connection_residual(F, hL.h);
    const auto Lo  = potential(L, S0, F.grid()).as_vector_field();
    const double b = vertical_lift_test(derivative_along(Lo, F.energy()), F.grid());
    if ((a < tol) != (b < tol)) {
      ctx.add(std::max(a, b));
    } else if (a < tol) {
      ctx.add(std::max(a, b));
    }
  }
}

void wagner_properties(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  const auto S0  = canonical_spray(F);
  for (const char * f : {"x1", "x1x2", "zero"}) {
    const auto W  = wagner_connection(F, base_function(f, F.dim()));
    const auto hL = l_ehresmann_connection(F, W.form);
    add_projector(ctx, W.connection.h, F.grid());
    ctx.add(conservative_connection_residual(F, W.connection.h));
    ctx.add(sup_norm(W.connection.h - hL.h, F.grid()));
    ctx.add(sup_norm(potential(W.form, S0, F.grid()), F.grid()));
  }
}

void conformal_invariance(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  for (const char * f : {"x1", "x1x2"}) {
    const auto fb = base_function(f, F.dim());
    const auto Ft = conformal_change(F, fb);
    const auto phi = exp(vertical_lift_function(fb));
    // Conservative forms stay conservative.
    for (const char * id : {"wagner-diff:x1", "wagner-diff:x1x2"}) {
      ctx.add(conservative_form_residual(Ft, named_form(F, id)));
    }
    const auto LW = named_form(F, "wagner-form:x1");
    ctx.add(sup_norm(d_K(LW, Ft.energy()) - phi * d_K(LW, F.energy()), F.grid()));
    // Conservative L-Ehresmann connections stay conservative.
    for (const char * id : {"wagner-form:x1", "corollary:x1", "jv:rot-dE"}) {
      const auto L = named_form(F, id);
      ctx.add(conservative_connection_residual(F, l_ehresmann_connection(F, L).h));
      ctx.add(conservative_connection_residual(Ft, l_ehresmann_connection(Ft, L).h));
    }
  }
}

void conservative_lifts(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  for (const char * id : {"zero", "vlift:1", "rot-dE", "x1-over-2E-C"}) {
    const auto V = named_vertical_field(F, id);
    ctx.add(vincze_residual(F, conservative_lift(F, V)));
  }
  ctx.add(sup_norm(conservative_lift(F, lift_dx1(F.dim())) - lift_dx1(F.dim()), F.grid()));
  // V_L + (d_L E)# for a torsion-free L with conservative h_L.
  const auto L  = jv(F, named_vertical_field(F, "rot-dE"));
  const auto VL = v_from_torsion_free(F, L);
  ctx.add(vincze_residual(F, VL + sharp(F, d_K(L, F.energy()))));
  ctx.expect(ErrorKind::HypothesisFailure, [&] { conservative_lift(F, named_vertical_field(F, "E-dy1")); });
}

void theta_commutator(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  const auto C   = as_form(liouville_field(F.dim()));
  for (const char * id : {"wagner-form:x1", "fvJ:x1", "jv:E-dy1", "wagner-form:x1x2"}) {
    const auto L = named_form(F, id);
    ctx.add(sup_norm(fn_bracket(C, theta_operator(F, L)) - theta_operator(F, fn_bracket(C, L)), F.grid()));
    ctx.add(sup_norm(theta_operator(F, L) - (l_ehresmann_connection(F, L).h - berwald_connection(F)), F.grid()));
  }
}

void torsion_free_reconstruction(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  const auto J   = vertical_endomorphism(F.dim());
  const auto X   = lift_dx1(F.dim());
  for (const char * id : {"zero", "E-dy1", "half-y1-C", "rot-dE", "x1-over-2E-C"}) {
    const auto L  = jv(F, named_vertical_field(F, id));
    const auto VL = v_from_torsion_free(F, L);
    ctx.add(vertical_residual(VL, F.grid()));
    ctx.add(sup_norm(fn_bracket(J, as_form(VL)) - L, F.grid()));
    ctx.add(sup_norm(fn_bracket(J, as_form(VL + X)) - L, F.grid()));
    ctx.add(sup_norm(weak_torsion(l_ehresmann_connection(F, L)) - fn_bracket(J, L), F.grid()));
  }
}

void homogeneous_reconstruction(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  const auto J   = vertical_endomorphism(F.dim());
  const auto V0  = named_vertical_field(F, "E-dy1");
  const auto L   = jv(F, V0);
  const auto V   = v_from_homogeneous(L, 1.0, F.grid());
  ctx.add(sup_norm(V - V0, F.grid()));
  ctx.add(sup_norm(fn_bracket(J, as_form(V)) - L, F.grid()));
  // [C, Z] = 0 makes [J, Z] homogeneous of degree 0.
  const auto Lz = jv(F, named_vertical_field(F, "rot-dE"));
  ctx.add(sup_norm(fn_bracket(J, as_form(v_from_homogeneous(Lz, 0.0, F.grid()))) - Lz, F.grid()));
  const auto Lf = jv(F, named_vertical_field(F, "half-F-C"));
  ctx.add(sup_norm(fn_bracket(J, as_form(v_from_homogeneous(Lf, 1.0, F.grid()))) - Lf, F.grid()));
  ctx.expect(ErrorKind::DegenerateDegree, [&] { v_from_homogeneous(L, -1.0, F.grid()); });
}

void homogeneity_lemma(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  for (const char * id : {"E-dy1", "half-y1-C", "half-F-C", "zero"}) {
    const auto V = named_vertical_field(F, id);
    ctx.add(homogeneity_residual(V, 2.0, F.grid()));
    ctx.add(sup_norm(tension(l_ehresmann_connection(F, jv(F, V))), F.grid()));
    const auto SV = semispray_from_vertical(F, V);
    ctx.add(semispray_residual(SV, F.grid()));
    ctx.add(homogeneity_residual(SV, 2.0, F.grid()));
  }
}

void dh_omega_vanishes(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  ctx.add(dh_omega_residual(F, berwald(F)));
  for (const char * id : {"E-dy1", "half-F-C", "rot-dE"}) {
    const auto L = jv(F, named_vertical_field(F, id));
    ctx.add(dh_omega_residual(F, l_ehresmann_connection(F, L)));
  }
}

void vertical_sprays(const CheckEnv & env, CheckContext & ctx)
{
  const auto & F = env.F;
  for (const char * id : {"zero", "vlift:1", "E-dy1", "half-y1-C", "rot-dE"}) {
    const auto V  = named_vertical_field(F, id);
    const auto SV = semispray_from_vertical(F, V);
    const auto h  = connection_from_semispray(SV, F.grid());
    ctx.add(sup_norm(h.h - l_ehresmann_connection(F, jv(F, V)).h, F.grid()));
  }
  // S^{V_L} generates h_L.
  const auto L  = jv(F, named_vertical_field(F, "E-dy1"));
  const auto VL = v_from_torsion_free(F, L);
  ctx.add(sup_norm(generated_connection(semispray_from_vertical(F, VL)) - l_ehresmann_connection(F, L).h, F.grid()));
  // V = U + F C / 2 is projectively related to U with factor 3F.
  const auto U  = named_vertical_field(F, "E-dy1");
  const auto V  = U + named_vertical_field(F, "half-F-C");
  const auto pf = projective_factor(F, V, U);
  ctx.add(pf.residual);
  ctx.add(homogeneity_residual(pf.lambda, 1.0, F.grid()));
  ctx.add(sup_norm(pf.lambda - 3.0 * finsler_norm(F), F.grid()));
}

}  // namespace

const std::vector<CheckSpec> & registry()
{
  static const std::vector<CheckSpec> specs = [] {
    const auto fx = all_fixtures();
    using enum ErrorKind;
    std::vector<CheckSpec> s{
      {"CHK-01", "Finsler axioms: 2-homogeneity, omega assembly paths agree, omega(dy, dx) = g; bad energies rejected",
       fx, kConstructionTolerance, {PositivityFailure, NondegeneracyFailure}, finsler_axioms},
      {"CHK-02", "i_J omega = 0, i_C omega = d_J E, Lie_C omega = omega", fx, kTheoremTolerance, {}, omega_relations},
      {"CHK-03", "sharp round trip i_{beta#} omega = beta on random 1-forms", fx, kConstructionTolerance, {},
       sharp_round_trip},
      {"CHK-04", "beta# E = beta° for random semibasic 1-forms", fx, kTheoremTolerance, {}, sharp_lemma},
      {"CHK-05", "Berwald connection: torsion, tension and d_h0 E vanish", fx, kTheoremTolerance, {},
       berwald_properties},
      {"CHK-06", "conservative semibasic L gives h_L = h0 + L, conservative", fx, kTheoremTolerance, {},
       conservative_forms},
      {"CHK-07", "h_L conservative iff L°E is a vertical lift", fx, kTheoremTolerance, {},
       vertical_lift_biconditional},
      {"CHK-08", "Wagner connection is conservative and equals h_{L_W}", fx, kTheoremTolerance, {},
       wagner_properties},
      {"CHK-09", "conservativity survives conformal change", fx, kTheoremTolerance, {}, conformal_invariance},
      {"CHK-10", "U = V + (d_[J,V] E)# is conservative; hypothesis failure detected", fx, kTheoremTolerance,
       {HypothesisFailure}, conservative_lifts},
      {"CHK-11", "[C, Theta_L] = Theta_[C,L]", fx, kTheoremTolerance, {}, theta_commutator},
      {"CHK-12", "V_L exists with [J, V_L] = L, unique up to vertical lifts", fx, kTheoremTolerance, {},
       torsion_free_reconstruction},
      {"CHK-13", "V = L° / (r + 1) for homogeneous torsion-free L", fx, kTheoremTolerance, {DegenerateDegree},
       homogeneous_reconstruction},
      {"CHK-14", "2-homogeneous V: h_[J,V] homogeneous and S^V a spray", fx, kTheoremTolerance, {},
       homogeneity_lemma},
      {"CHK-15", "d_{h_L} omega = 0 for torsion-free L", fx, kThirdOrderTolerance, {}, dh_omega_vanishes},
      {"CHK-16", "S^V generates h_[J,V]; projective factor on a related pair", fx, kTheoremTolerance, {},
       vertical_sprays},
    };
    return s;
  }();
  return specs;
}

std::vector<const CheckSpec *> list_checks(const std::string & filter)
{
  std::vector<const CheckSpec *> out;
  for (const auto & s : registry()) {
    if (filter.empty() || s.id == filter) { out.push_back(&s); }
  }
  return out;
}

}  // namespace finslerlab::verifier
