#include "idtm/diagnostics.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "idtm/solve.hpp"
#include "test_support.hpp"

namespace idtm {
namespace {

const ExactSolution kGas(ExactSolution::Kind::IsothermalGasSphere);
const ExactSolution kThermal(ExactSolution::Kind::ThermalExplosionExact);

SbvpProblem gas_sphere() {
  return SbvpProblem(2.0, Nonlinearity::power_law(5.0), 1.0, 0.0, std::sqrt(3.0) / 2.0);
}
SbvpProblem thermal_explosion() {
  return SbvpProblem(1.0, Nonlinearity::thermal_explosion(-1.0), 1.0, 0.0, 0.0);
}
SbvpProblem oxygen(double alpha) {
  return SbvpProblem(alpha, Nonlinearity::michaelis_menten(0.76129, 0.03119), 5.0, 1.0, 5.0);
}

SeriesSolution good_solution(const SbvpProblem& p, std::size_t order, double hint) {
  return solve_near(p, order, hint, ScanRange{});
}

TEST(ExactSolution, SatisfiesBoundaryValues) {
  EXPECT_DOUBLE_EQ(kGas.eval(0.0), 1.0);
  EXPECT_NEAR(kGas.eval(1.0), std::sqrt(3.0) / 2.0, 1e-16);
  EXPECT_NEAR(kThermal.eval(1.0), 0.0, 1e-16);
  EXPECT_THROW(ExactSolution::from_name("lane_emden"), UsageError);
  EXPECT_EQ(ExactSolution::from_name("thermal_explosion").name(), "thermal_explosion");
}

TEST(ExactSolution, TaylorSeriesMatchesValue) {
  for (const auto& e : {kGas, kThermal}) {
    const auto t = e.taylor(80);
    for (double x : {0.0, 0.3, 0.7, 1.0}) EXPECT_NEAR(ps_eval(t, x), e.eval(x), 1e-13);
  }
}

TEST(ExactSolution, SolvesTheEquation) {
  // Exact Taylor coefficients satisfy the transformed recurrence.
  const auto t = kThermal.taylor(20);
  const SeriesSolution s = build_series(thermal_explosion(), t[0], 20);
  for (std::size_t k = 0; k <= 20; ++k) EXPECT_NEAR(s.coeffs[k], t[k], 1e-15);
}

TEST(Grids, Shapes) {
  const auto c = closed_unit_grid(11);
  EXPECT_EQ(c.front(), 0.0);
  EXPECT_EQ(c.back(), 1.0);
  EXPECT_DOUBLE_EQ(c[3], 0.3);
  const auto o = open_unit_grid(4);
  EXPECT_EQ(o, (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
  EXPECT_THROW(closed_unit_grid(1), UsageError);
}

TEST(AbsError, GasSphere) {
  const double me[] = {6.7714e-3, 1.7264e-3, 5.5389e-4, 1.67764e-4};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t n = 6 + 2 * i;
    const auto e = abs_error(good_solution(gas_sphere(), n, 1.0), kGas, closed_unit_grid(1001));
    EXPECT_NEAR(e.ME, me[i], 1e-4 * me[i]) << n;
    EXPECT_EQ(e.E.size(), 1001u);
  }
}

TEST(AbsError, ThermalExplosion) {
  const auto e = abs_error(good_solution(thermal_explosion(), 10, 0.3), kThermal, closed_unit_grid(1001));
  EXPECT_NEAR(e.ME, 1.04877e-5, 1e-3 * 1.04877e-5);
}

TEST(AbsError, RejectsGridOutsideUnitInterval) {
  EXPECT_THROW(abs_error(build_series(gas_sphere(), 1.0, 4), kGas, {-0.1, 0.5}), UsageError);
}

TEST(TaylorBound, RemainderMatchesHighPrecisionReference) {
  const auto b10 = lemma1_bound(good_solution(gas_sphere(), 10, 1.0), kGas);
  EXPECT_NEAR(b10.M_over_fact, 5.0619031472e-4, 1e-9 * 5.0619031472e-4);
  EXPECT_GE(b10.guard, 60u);
  const auto b12 = lemma1_bound(good_solution(gas_sphere(), 12, 1.0), kGas);
  EXPECT_NEAR(b12.M_over_fact, 1.57891152879e-4, 1e-9 * 1.57891152879e-4);
  const auto t10 = lemma1_bound(good_solution(thermal_explosion(), 10, 0.3), kThermal);
  EXPECT_NEAR(t10.M_over_fact, 2.02002820575e-5, 1e-9 * 2.02002820575e-5);
}

TEST(TaylorBound, CoefficientMismatchVanishesForExactBeta) {
  const auto b = lemma1_bound(build_series(gas_sphere(), 1.0, 10), kGas);
  EXPECT_LT(b.c_max, 1e-15);
  EXPECT_EQ(b.TE, b.M_over_fact + b.c_max);
}

TEST(TaylorBound, BoundDominatesMaximalError) {
  for (std::size_t n : {6u, 8u, 10u, 12u}) {
    const auto g = good_solution(gas_sphere(), n, 1.0);
    EXPECT_GE(lemma1_bound(g, kGas).TE, abs_error(g, kGas, closed_unit_grid(1001)).ME) << n;
    const auto t = good_solution(thermal_explosion(), n, 0.3);
    EXPECT_GE(lemma1_bound(t, kThermal).TE, abs_error(t, kThermal, closed_unit_grid(1001)).ME) << n;
  }
}

TEST(TaylorBound, GuardLimit) {
  BoundOptions opt;
  opt.max_guard = 8;
  EXPECT_THROW(lemma1_bound(build_series(gas_sphere(), 1.0, 10), kGas, opt), BoundUnavailableError);
}

TEST(Residual, OxygenDiffusion) {
  const auto s = good_solution(oxygen(2.0), 12, 0.83);
  EXPECT_NEAR(s.beta, 0.8284832870171, 1e-10);
  const auto r = residual(s, open_unit_grid(1001));
  EXPECT_NEAR(r.MER, 1.8259e-7, 1e-3 * 1.8259e-7);
  EXPECT_EQ(r.excluded, 0u);
  const auto r3 = residual(good_solution(oxygen(3.0), 12, 0.83), open_unit_grid(1001));
  EXPECT_NEAR(r3.MER, 2.4039e-8, 1e-3 * 2.4039e-8);
}

TEST(Residual, GridRefinementChangesLittle) {
  const auto s = good_solution(oxygen(2.0), 12, 0.83);
  const double coarse = residual(s, open_unit_grid(1001)).MER;
  const double fine = residual(s, open_unit_grid(4001)).MER;
  EXPECT_LT(std::abs(fine - coarse), 0.01 * fine);
}

TEST(Residual, FlagsPointsOutsideDomain) {
  // A series crossing zero leaves the domain of a fractional power.
  const SbvpProblem p(2.0, Nonlinearity::power_law(2.5), 1.0, 0.0, 1.0);
  const SeriesSolution s{0.1, TruncatedSeries{0.1, 0.0, -1.0}, 2, p};
  const auto r = residual(s, open_unit_grid(10));
  EXPECT_GT(r.excluded, 0u);
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    EXPECT_EQ(r.flagged[i], std::isinf(r.ER[i]));
  }
  EXPECT_TRUE(std::isfinite(r.MER));
}

TEST(Residual, RejectsOrigin) {
  EXPECT_THROW(residual(build_series(gas_sphere(), 1.0, 4), {0.0}), UsageError);
}

TEST(OdeDefect, VanishesForEveryFamily) {
  const std::vector<SbvpProblem> problems{
      gas_sphere(), thermal_explosion(), oxygen(2.0),
      SbvpProblem(2.0, Nonlinearity::heat_source(1.0, 1.0), 1.0, 1.0, 0.0),
      SbvpProblem(3.0, Nonlinearity::membrane_cap(), 1.0, 0.0, 1.0)};
  for (const auto& p : problems) {
    const auto s = build_series(p, 0.9, 14);
    const auto d = ode_defect(s);
    ASSERT_EQ(d.order(), 13u);
    double scale = 0.0;
    for (double c : s.coeffs.coeffs()) scale = std::max(scale, std::abs(c));
    for (double c : d.coeffs()) EXPECT_LE(std::abs(c), 1e-10 * scale) << p.f.name();
  }
}

}  // namespace
}  // namespace idtm
