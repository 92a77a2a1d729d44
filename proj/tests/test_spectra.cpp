#include <gtest/gtest.h>

#include "support.hpp"

using namespace anharmonic;
using testing_support::oracles;
using testing_support::oracle_double;
using testing_support::rel_diff;

namespace {

ResonanceOptions no_stability() {
  ResonanceOptions o;
  o.compute_stability = false;
  return o;
}

}  // namespace

TEST(Matrices, HarmonicIsDiagonal) {
  const auto H = build_hamiltonian(OscillatorSpec::natural(4, 0, 0.0), 0.0, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      EXPECT_NEAR(std::abs(H(i, j) - cplx(i == j ? i + 0.5 : 0.0)), 0.0, 1e-13) << i << "," << j;
}

TEST(Matrices, PositionPowerElements) {
  const auto x3 = position_power_matrix(3, 16);
  EXPECT_NEAR(x3(0, 1), oracle_double(oracles()["x3_matrix_element_0_1"]), 1e-14);
  const auto x4 = position_power_matrix(4, 16);
  EXPECT_NEAR(x4(0, 0), to_double(testing_support::oracle_rational(oracles()["x4_matrix_element_0_0"])), 1e-14);
  EXPECT_EQ(x3(0, 0), 0.0);
}

TEST(Matrices, ComplexSymmetric) {
  const auto H = build_hamiltonian(OscillatorSpec::natural(3, 0, 0.05), 0.4, 48);
  EXPECT_LT((H - H.transpose()).norm(), 1e-12 * H.norm());
}

TEST(Matrices, BasisRefusals) {
  const auto spec = OscillatorSpec::natural(3, 0, 0.05);
  EXPECT_THROW(build_hamiltonian(spec, 0.4, 8), DomainError);
  EXPECT_THROW(resonance_energy(spec, 4, 32, 0.4), DomainError);
  EXPECT_THROW(resonance_energy(spec, 0, 64, 1.6), DomainError);
}

TEST(Resonance, TinyCubicCouplingIsUnresolved) {
  const auto r = resonance_energy(OscillatorSpec::natural(3, 0, 1e-6));
  EXPECT_NEAR(r.energy.real(), 0.5 - 11.0 / 8.0 * 1e-6, 1e-10);
  EXPECT_FALSE(r.width_resolved);
}

TEST(Resonance, NearThresholdWidthFlag) {
  const auto r = resonance_energy(OscillatorSpec::natural(3, 0, 0.004), no_stability());
  EXPECT_FALSE(r.width_resolved);
}

TEST(Resonance, CubicWidthAgreesWithInstantonSeries) {
  const auto r = resonance_energy(OscillatorSpec::natural(3, 0, 0.02));
  const double series = imag_energy_optimal(3, 0, 0.02).value.real();
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.energy.imag(), 0.0);
  EXPECT_LT(rel_diff(r.energy.imag(), series), 0.02);
}

TEST(Resonance, PtSymmetricCubicIsReal) {
  for (double g : {-0.01, -0.05, -0.1})
    for (int n = 0; n < 4; ++n) {
      const auto spec = OscillatorSpec::natural(3, n, g);
      EXPECT_EQ(default_theta(spec), 0.0);
      const auto r = resonance_energy(spec, n, 256, 0.0, no_stability());
      EXPECT_LT(std::fabs(r.energy.imag()), 1e-8) << "g=" << g << " n=" << n;
    }
}

TEST(Resonance, HarmonicLevelsRestored) {
  for (int n = 0; n < 16; n += 3) {
    const auto r = resonance_energy(OscillatorSpec::natural(4, n, 0.0), n, 128, 0.0, no_stability());
    EXPECT_NEAR(std::abs(r.energy - cplx(n + 0.5)), 0.0, 1e-12) << n;
  }
}

TEST(Resonance, SignConventionAndConjugateBranch) {
  const auto spec = OscillatorSpec::natural(4, 0, -0.1);
  const auto plus = resonance_energy(spec, 0, 128, 0.35, no_stability());
  const auto minus = resonance_energy(spec, 0, 128, -0.35, no_stability());
  EXPECT_LT(plus.energy.imag(), 0.0);
  EXPECT_GT(minus.energy.imag(), 0.0);
  EXPECT_LT(conjugate_branch_check(spec, 0, 128, 0.35), 1e-8);
  EXPECT_LT(conjugate_branch_check(OscillatorSpec::natural(3, 1, 0.05), 1, 128, 0.4), 1e-8);
}

TEST(Resonance, RotationPlateau) {
  const auto spec = OscillatorSpec::natural(3, 0, 0.05);
  std::vector<ResonanceResult> runs;
  for (double th : {0.3, 0.4, 0.5}) runs.push_back(resonance_energy(spec, 0, 256, th));
  double spread = 0.0, stab = 0.0;
  for (const auto& a : runs) {
    stab = std::max(stab, a.stability);
    for (const auto& b : runs) spread = std::max(spread, std::abs(a.energy - b.energy));
  }
  EXPECT_LT(spread, 10.0 * stab) << "spread " << spread << " stability " << stab;
}

TEST(Resonance, BasisConvergence) {
  // differences reach roundoff by N = 128; below 1e-10 they need not shrink
  const auto spec = OscillatorSpec::natural(3, 0, 0.05);
  std::vector<cplx> e;
  for (int N : {64, 128, 256, 512}) e.push_back(resonance_energy(spec, 0, N, 0.4, no_stability()).energy);
  double prev = HUGE_VAL;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const double d = std::abs(e[i] - e[i - 1]);
    EXPECT_LE(d, std::max(prev, 1e-10)) << "step " << i;
    prev = d;
  }
  EXPECT_LT(prev, 1e-10);
}

TEST(Resonance, SmallBasisReportedUnconverged) {
  const auto r = resonance_energy(OscillatorSpec::natural(3, 0, 1.0), 0, 16, 0.4);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(std::isinf(r.stability));
}

TEST(StrongCoupling, LeadingCoefficients) {
  const double ref[3] = {0.762851775, 2.711079923, 4.989240088};
  for (int n = 0; n < 3; ++n) {
    const auto s = strong_coupling_leading(3, n);
    EXPECT_LT(rel_diff(s.modulus, ref[n]), 1e-6) << n;
    EXPECT_LT(s.phase_error, 1e-6) << n;
    EXPECT_TRUE(s.converged) << n;
  }
  EXPECT_THROW(strong_coupling_leading(4, 0), DomainError);
}

TEST(StrongCoupling, ResonancePersistsAtLargeCoupling) {
  // the basis length scale is far from the g^{-1/10} one here; the smaller
  // rotation of the strong-coupling solver keeps N = 256 converged
  const double g = 1e3;
  const auto r = resonance_energy(OscillatorSpec::natural(3, 0, g), 0, 256, 0.3);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.energy.imag(), 0.0);
  const auto lead = strong_coupling_leading(3, 0).coefficient * std::pow(g, 0.2);
  EXPECT_LT(std::abs(r.energy - lead) / std::abs(lead), 0.1);
}
