#include <cmath>

#include "support.hpp"

using namespace finslerlab;
using namespace finslerlab::fixtures;
using namespace testing_support;

namespace {

const char * const kFixtures[] = {"euclidean", "riemannian-exp", "randers-0.3"};

std::vector<double> at_p0(const TensorField & f) { return f.eval(p0()); }

ScalarField cubic_energy()
{
  return ScalarField::make(2, []<class T>(std::span<const T> z) {
    T s = z[2] * z[2] + z[3] * z[3];
    return s * jet::sqrt(s);
  });
}

ScalarField stretched_energy()
{
  return ScalarField::make(2, []<class T>(std::span<const T> z) {
    return 0.5 * (1e7 * z[2] * z[2] + 1e-7 * z[3] * z[3]);
  });
}

}  // namespace

TEST(ValidateFinsler, Fixtures)
{
  for (const char * id : kFixtures) { EXPECT_NO_THROW(fixture(id)) << id; }
}

TEST(ValidateFinsler, NegativeControls)
{
  expect_error(ErrorKind::PositivityFailure, [] { validate_finsler(indefinite_energy(2), grid32()); });
  expect_error(ErrorKind::NondegeneracyFailure, [] { validate_finsler(degenerate_energy(2), grid32()); });
  expect_error(ErrorKind::HomogeneityFailure, [] { validate_finsler(cubic_energy(), grid32()); });
  expect_error(ErrorKind::BadConfig, [] { validate_finsler(euclidean_energy(2), SampleGrid{}); });
  expect_error(ErrorKind::DimensionMismatch, [] { validate_finsler(euclidean_energy(3), grid32()); });
}

TEST(ValidateFinsler, ReportsOffendingPoint)
{
  try {
    validate_finsler(indefinite_energy(2), grid32());
    FAIL();
  } catch (const Error & e) {
    EXPECT_NE(std::string(e.what()).find(" at ("), std::string::npos) << e.what();
  }
}

TEST(ValidateFinsler, NegativeOnKnownPoint)
{
  SampleGrid g;
  g.points.push_back(TangentPoint({0.0, 0.0}, {0.0, 1.0}));
  expect_error(ErrorKind::PositivityFailure, [&] { validate_finsler(indefinite_energy(2), g); });
}

TEST(FundamentalForm, SpotValues)
{
  const auto euc = fundamental_form(fixture("euclidean"));
  const auto M   = euc.matrix(p0());
  EXPECT_DOUBLE_EQ(M[0 * 4 + 2], -1.0);
  EXPECT_DOUBLE_EQ(M[0 * 4 + 1], 0.0);
  const auto rie = fundamental_form(fixture("riemannian-exp"));
  EXPECT_DOUBLE_EQ(rie.matrix(p0())[2 * 4 + 0], 1.0);
  const std::vector<std::vector<double>> args{{1, 0, 0, 0}, {0, 0, 1, 0}};
  EXPECT_DOUBLE_EQ(euc.omega(p0(), args), -1.0);
}

TEST(FundamentalForm, FastPathMatchesReferenceAndOracle)
{
  for (const char * id : kFixtures) {
    const auto F     = fixture(id);
    const auto omega = fundamental_two_form(F);
    for (const auto & p : grid32().points) {
      const auto M = F.omega_matrix(p);
      expect_near_vec(M, omega.eval(p), 1e-12);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) { EXPECT_EQ(M[a * 4 + b], -M[b * 4 + a]); }
      }
    }
  }
  // omega(d/dx^i, d/dy^j) = -g_ij with g from nested central differences of the hand energy.
  for (const auto & p : grid32().points) {
    const auto z = p.coords();
    const auto M = fixture("riemannian-exp").omega_matrix(p);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const RealFn dj = [j](const std::vector<double> & w) { return central(rie_energy, w, 2 + j, 1e-4); };
        EXPECT_NEAR(M[i * 4 + 2 + j], -central(dj, z, 2 + i, 1e-4), 1e-5);
      }
    }
  }
}

TEST(Metric, RandersMatchesHandFormula)
{
  const auto F = fixture("randers-0.3");
  for (const auto & p : grid32().points) {
    const auto z = p.coords();
    expect_near_vec(F.metric(std::span<const double>(z)), ran_g(z), 1e-12);
  }
}

TEST(Sharp, SpotValues)
{
  const auto F = fixture("euclidean");
  for (const auto & p : grid32().points) {
    expect_near_vec(sharp(F, coordinate_one_form(2, 0)).eval(p), {0, 0, 1, 0}, 1e-15);
  }
  expect_near_vec(at_p0(sharp(F, differential(F.energy()))), {-1, -2, 0, 0}, 1e-15);
  EXPECT_EQ(sup_norm(sharp(F, 0.0 * coordinate_one_form(2, 1)), grid32()), 0.0);
  expect_error(ErrorKind::DegreeOutOfRange, [&] { sharp(F, fundamental_two_form(F)); });
}

TEST(Sharp, RoundTripOnRandomForms)
{
  for (const char * id : kFixtures) {
    const auto F     = fixture(id);
    const auto omega = fundamental_two_form(F);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      for (bool semibasic : {true, false}) {
        const auto beta = random_one_form(2, s, semibasic);
        EXPECT_LT(sup_norm(insert_vector(sharp(F, beta), omega) - beta, grid32()), 1e-9) << id;
      }
    }
  }
}

TEST(Sharp, RefusesIllConditionedPoints)
{
  const auto F = validate_finsler(stretched_energy(), grid32());
  expect_error(ErrorKind::NondegeneracyFailure, [&] { sharp(F, coordinate_one_form(2, 0)).eval(p0()); });
}

TEST(Gradient, SpotValues)
{
  const auto F = fixture("euclidean");
  expect_near_vec(at_p0(gradient(F, vertical_lift_function(base_function("x1")))), {0, 0, 1, 0}, 1e-15);
  expect_near_vec(at_p0(gradient(F, F.energy())), {-1, -2, 0, 0}, 1e-15);
  EXPECT_EQ(sup_norm(gradient(F, constant_field(2, 4.0)), grid32()), 0.0);
}

TEST(CanonicalSpray, SpotValues)
{
  expect_near_vec(at_p0(canonical_spray(fixture("euclidean"))), {1, 2, 0, 0}, 1e-15);
  expect_near_vec(at_p0(canonical_spray(fixture("riemannian-exp"))), {1, 2, -1, 0}, 1e-15);
  for (const char * id : kFixtures) {
    const auto S0 = canonical_spray(fixture(id));
    EXPECT_LT(semispray_residual(S0, grid32()), 1e-12) << id;
    EXPECT_LT(homogeneity_residual(S0, 2.0, grid32()), 1e-12) << id;
  }
}

TEST(CanonicalSpray, ChristoffelOracle)
{
  const auto S0 = canonical_spray(fixture("riemannian-exp"));
  for (const auto & p : grid32().points) { expect_near_vec(S0.eval(p), rie_christoffel_spray(p.coords()), 1e-9); }
}

TEST(CanonicalSpray, RandersIsFlat)
{
  // A constant Randers term is a Minkowski norm, so geodesics are straight lines.
  const auto S0 = canonical_spray(fixture("randers-0.3"));
  for (const auto & p : grid32().points) {
    const auto z = p.coords();
    expect_near_vec(S0.eval(p), {z[2], z[3], 0, 0}, 1e-12);
  }
}

TEST(Berwald, SpotValues)
{
  const auto h_euc = berwald_connection(fixture("euclidean"));
  for (const auto & p : grid32().points) {
    expect_near_vec(h_euc.eval(p), {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 1e-15);
  }
  const auto h_rie = berwald_connection(fixture("riemannian-exp"));
  expect_near_vec(apply(h_rie, coordinate_field(2, 0)).eval(p0()), {1, 0, -1, 0}, 1e-15);
  for (const char * id : kFixtures) {
    const auto F = fixture(id);
    const auto h = berwald_connection(F);
    EXPECT_LT(sup_norm(compose(h, vertical_endomorphism(2)), grid32()), 1e-12) << id;
    EXPECT_LT(projector_residuals(h, grid32()).max(), 1e-12) << id;
    EXPECT_LT(conservative_connection_residual(F, h), 1e-12) << id;
  }
}

TEST(Berwald, HorizontalLiftByChristoffelOracle)
{
  // h0(d/dx^j) = d/dx^j - Gamma^i_jk y^k d/dy^i; only Gamma^1_11 = 1 is nonzero.
  const auto h = berwald_connection(fixture("riemannian-exp"));
  for (const auto & p : grid32().points) {
    const auto z = p.coords();
    expect_near_vec(apply(h, coordinate_field(2, 0)).eval(p), {1, 0, -z[2], 0}, 1e-12);
    expect_near_vec(apply(h, coordinate_field(2, 1)).eval(p), {0, 1, 0, 0}, 1e-12);
  }
}

TEST(OmegaRelations, LiouvilleInsertionAndLieDerivative)
{
  const auto J = vertical_endomorphism(2);
  const auto C = liouville_field(2);
  for (const char * id : kFixtures) {
    const auto F     = fixture(id);
    const auto omega = fundamental_two_form(F);
    EXPECT_LT(sup_norm(insert_vector(C, omega) - d_K(J, F.energy()), grid32()), 1e-8) << id;
    EXPECT_LT(sup_norm(lie_derivative(C, omega) - omega, grid32()), 1e-8) << id;
  }
}

TEST(SharpLemma, SharpOfSemibasicFormOnEnergy)
{
  for (const char * id : kFixtures) {
    const auto F  = fixture(id);
    const auto S0 = canonical_spray(F);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto beta = random_one_form(2, 40 + s, true);
      const ScalarField pot(static_cast<const TensorField &>(potential(beta, S0, grid32())));
      EXPECT_LT(sup_norm(derivative_along(sharp(F, beta), F.energy()) - pot, grid32()), 1e-8) << id;
    }
  }
}

TEST(ConformalChange, SpotValues)
{
  const auto F  = fixture("euclidean");
  const auto F0 = conformal_change(F, base_function("zero"));
  EXPECT_EQ(sup_norm(F0.energy() - F.energy(), grid32()), 0.0);
  const auto Ft = conformal_change(F, base_function("x1"));
  EXPECT_DOUBLE_EQ(Ft.energy()(p0()), 2.5);
  const auto phi = exp(vertical_lift_function(base_function("x1")));
  const auto LW  = named_form(F, "wagner-form:x1");
  EXPECT_LT(sup_norm(d_K(LW, Ft.energy()) - phi * d_K(LW, F.energy()), grid32()), 1e-12);
}

TEST(ConformalChange, ConservativeFormsStayConservative)
{
  for (const char * id : kFixtures) {
    const auto F = fixture(id);
    const auto L = named_form(F, "wagner-diff:x1");
    ASSERT_LT(conservative_form_residual(F, L), 1e-8) << id;
    for (const char * f : {"x1", "x1x2"}) {
      EXPECT_LT(conservative_form_residual(conformal_change(F, base_function(f)), L), 1e-8) << id;
    }
  }
}

TEST(ConservativeForm, SpotValues)
{
  const auto F = fixture("euclidean");
  EXPECT_EQ(conservative_form_residual(F, berwald_connection(F) - berwald_connection(F)), 0.0);
  const auto dLE = d_K(named_form(F, "wagner-form:x1"), F.energy());
  EXPECT_DOUBLE_EQ(dLE.eval(p0())[0], -2.0);
  expect_near_vec(apply(named_form(F, "wagner-form:x1"), coordinate_field(2, 0)).eval(p0()), {0, 0, 0, -1}, 1e-15);
  EXPECT_LT(conservative_form_residual(F, named_form(F, "wagner-diff:x1")), 1e-12);
  expect_error(ErrorKind::NotSemibasic, [&] { conservative_form_residual(F, berwald_connection(F)); });
}

TEST(ConservativeConnection, SpotValues)
{
  for (const char * id : kFixtures) {
    const auto F = fixture(id);
    EXPECT_LT(conservative_connection_residual(F, berwald_connection(F)), 1e-12) << id;
  }
  const auto F = fixture("euclidean");
  EXPECT_LT(conservative_connection_residual(F, wagner_connection(F, base_function("x1")).connection.h), 1e-12);
  const auto hL = l_ehresmann_connection(F, named_form(F, "jv:E-dy1"));
  EXPECT_GT(conservative_connection_residual(F, hL.h), 0.1);
  expect_error(ErrorKind::NotConnection,
               [&] { conservative_connection_residual(F, vertical_endomorphism(2)); });
}
