#include "smstab/time_stepper.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace smstab;
using smstab::testing::max_abs_diff;

namespace {

SimulationConfig config_for(OperatorSpec op, int l, int m, double tau, int steps, ModeSum initial = ModeSum{{{1, 1.0}}}) {
  SimulationConfig c;
  c.op = op;
  c.l = l;
  c.m = m;
  c.tau = tau;
  c.steps = steps;
  c.initial = std::move(initial);
  return c;
}

const OperatorSpec kCentral = OperatorSpec::pure(ConvectionScheme::Central);
const OperatorSpec kDiff2 = OperatorSpec::pure(DiffusionScheme::Second);

}  // namespace

TEST_CASE("spectral step") {
  const Grid<double> g(31);
  const auto spectrum = spectrum_table(kDiff2, g);
  CVector<double> c = CVector<double>::Zero(31);
  c[15 + 1] = 1.0;
  const double tau = 0.01;
  const auto next = step_spectral(c, spectrum, pade_coeffs(0, 1), tau);
  CHECK(std::abs(next[16] - 1.0 / (1.0 + tau * spectrum.mu(1))) < 1e-15);
  for (Eigen::Index j = 0; j < 31; ++j)
    if (j != 16) CHECK(next[j] == std::complex<double>(0));

  CHECK_THROWS_AS(step_spectral(CVector<double>(CVector<double>::Zero(5)), spectrum, pade_coeffs(0, 1), tau),
                  std::invalid_argument);
}

TEST_CASE("physical step") {
  const Grid<double> g(31);
  std::mt19937_64 rng(5);
  const auto y = smstab::testing::random_function(g, rng);

  SUBCASE("implicit Euler solves (I + tau L) y1 = y0") {
    const auto op = build_diffusion(DiffusionScheme::Second, g);
    const double tau = 0.002;
    const auto y1 = step_physical(y, op, pade_coeffs(0, 1), tau);
    const auto residual = y1 + std::complex<double>(tau) * apply(op, y1) - y;
    CHECK(norm(residual) < 1e-12);
  }

  SUBCASE("zero operator leaves y unchanged") {
    for (int l = 0; l <= 2; ++l)
      for (int m = l; m <= 2; ++m) {
        if (l + m < 1) continue;
        CHECK(max_abs_diff(step_physical(y, StencilOperator<double>::zero(g), pade_coeffs(l, m), 0.3), y) < 1e-15);
      }
  }

  SUBCASE("agrees with the spectral step") {
    for (auto spec : {kCentral, kDiff2, OperatorSpec::mixed(0.5, ConvectionScheme::ThirdOrder, DiffusionScheme::Fourth)}) {
      const auto op = build_operator(spec, g);
      const auto spectrum = spectrum_table(spec, g);
      for (int l = 0; l <= 2; ++l)
        for (int m = l; m <= 2; ++m) {
          if (l + m < 1) continue;
          const auto s = pade_coeffs(l, m);
          const auto a = step_physical(y, op, s, 0.01);
          const auto b = synthesize(g, step_spectral(harmonic_coefficients(y), spectrum, s, 0.01));
          CHECK(max_abs_diff(a, b) < 1e-11);
        }
    }
  }

  SUBCASE("guards") {
    const auto op = build_convection(ConvectionScheme::Central, g);
    CHECK_THROWS_AS(PhysicalStepper<double>(op, pade_coeffs(2, 1), 0.01), std::invalid_argument);
    CHECK_NOTHROW(PhysicalStepper<double>(op, pade_coeffs(2, 1), 0.01, true));
    CHECK_THROWS_AS(PhysicalStepper<double>(op, pade_coeffs(1, 1), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(PhysicalStepper<double>(op, pade_coeffs(1, 1), 0.1).step(GridFunction<double>(Grid<double>(5))),
                    std::invalid_argument);
    // R10 has Q = 1, so the solve is trivially well conditioned
    CHECK(PhysicalStepper<double>(op, pade_coeffs(1, 0), 0.01, true).rcond() == doctest::Approx(1.0));
  }
}

TEST_CASE("simulate: Crank-Nicolson conserves the norm on central differences") {
  auto c = config_for(kCentral, 1, 1, 0.01, 100, ModeSum{{{3, 1.0}}});
  const auto traj = simulate(c);
  REQUIRE(traj.norms.size() == 101);
  CHECK(traj.times.back() == doctest::Approx(1.0));
  for (double n : traj.norms) CHECK(std::abs(n - traj.norms[0]) < 1e-12);
  CHECK(traj.warnings.empty());
  CHECK(traj.snapshot_steps == std::vector<int>{0, 100});

  for (int lm : {1, 2}) {
    auto long_run = config_for(kCentral, lm, lm, 0.05, 1000, ModeSum{{{1, 1.0}, {4, 0.5}, {-7, 0.25}}});
    const auto t = simulate(long_run);
    double drift = 0;
    for (double n : t.norms) drift = std::max(drift, std::abs(n - t.norms[0]));
    CHECK(drift < 1e-11);
  }
}

TEST_CASE("simulate: implicit Euler damps each step by the modulus") {
  const Grid<double> g(31);
  const double tau = 0.01;
  const double expect = 1.0 / std::sqrt(1.0 + std::norm(tau * discrete_eigenvalue(ConvectionScheme::Central, g, 3)));
  const auto traj = simulate(config_for(kCentral, 0, 1, tau, 100, ModeSum{{{3, 1.0}}}));
  for (std::size_t n = 0; n + 1 < traj.norms.size(); ++n)
    CHECK(std::abs(traj.norms[n + 1] / traj.norms[n] - expect) < 1e-12);
  CHECK(stability_estimate_check(traj).nonincreasing);
}

TEST_CASE("simulate: diffusion ratio decreases monotonically") {
  const auto traj = simulate(config_for(kDiff2, 0, 1, 0.001, 50, ModeSum{{{1, 1.0}, {5, 1.0}}}));
  const int K = 15;
  double prev = std::abs(traj.coefficients[0][5 + K]) / std::abs(traj.coefficients[0][1 + K]);
  CHECK(prev == doctest::Approx(1.0));
  for (std::size_t n = 1; n < traj.coefficients.size(); ++n) {
    const double r = std::abs(traj.coefficients[n][5 + K]) / std::abs(traj.coefficients[n][1 + K]);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("simulate: paths agree") {
  for (const auto& spec : {kCentral, kDiff2, OperatorSpec::pure(ConvectionScheme::Upwind1)}) {
    auto c = config_for(spec, 1, 2, 0.01, 40);
    c.initial = GaussianProfile{};
    const auto a = simulate(c);
    c.path = SteppingPath::Physical;
    const auto b = simulate(c);
    CHECK(max_abs_diff(a.snapshots.back(), b.snapshots.back()) < 1e-10);
  }
}

TEST_CASE("simulate: tiny steps reproduce the exact evolution") {
  const auto traj = simulate(config_for(OperatorSpec::pure(ConvectionScheme::Upwind2), 1, 1, 1e-8, 10));
  for (double e : traj.errors) CHECK(e < 1e-13);
}

TEST_CASE("simulate: lower-degree numerators decay on skew problems") {
  for (auto [l, m] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const auto traj = simulate(config_for(kCentral, l, m, 0.05, 20, ModeSum{{{2, 1.0}}}));
    CHECK(traj.norms.back() < traj.norms.front());
    CHECK(stability_estimate_check(traj).nonincreasing);
  }
  // upwind1 with Crank-Nicolson still dissipates through the symmetric part
  const auto up = simulate(config_for(OperatorSpec::pure(ConvectionScheme::Upwind1), 1, 1, 0.01, 20));
  CHECK(up.norms.back() < up.norms.front());
}

TEST_CASE("simulate: warnings and guards") {
  const Grid<double> g(31);
  double mu_max = 0;
  for (int m = -15; m <= 15; ++m) mu_max = std::max(mu_max, discrete_eigenvalue(DiffusionScheme::Second, g, m).real());

  const auto bad = simulate(config_for(kDiff2, 1, 1, 3.0 / mu_max, 5));
  REQUIRE(!bad.warnings.empty());
  CHECK(bad.warnings[0].find("monotonicity violation") != std::string::npos);

  auto unstable = config_for(kCentral, 2, 1, 0.5, 200, ModeSum{{{15, 1.0}}});
  CHECK_THROWS_AS(simulate(unstable), std::invalid_argument);
  unstable.allow_unstable = true;
  const auto grown = simulate(unstable);
  CHECK(!grown.warnings.empty());
  const auto check = stability_estimate_check(grown);
  CHECK(!check.nonincreasing);
  REQUIRE(check.witness_step.has_value());
  CHECK(*check.witness_step == 0);

  CHECK_THROWS_AS(simulate(config_for(kCentral, 1, 1, 0.0, 5)), std::invalid_argument);
  CHECK_THROWS_AS(simulate(config_for(kCentral, 1, 1, 0.1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(simulate(config_for(kCentral, 1, 1, 0.1, 5, ModeSum{{{16, 1.0}}})), std::out_of_range);

  auto snaps = config_for(kCentral, 1, 1, 0.1, 10);
  snaps.keep_every = 4;
  CHECK(simulate(snaps).snapshot_steps == std::vector<int>{0, 4, 8, 10});
}

TEST_CASE("global convergence in tau") {
  const double taus[] = {0.1, 0.05, 0.025, 0.0125};
  CHECK(std::abs(convergence_study(config_for(kCentral, 1, 1, 0.1, 1), taus, 1.0).slope - 2) < 0.3);
  CHECK(std::abs(convergence_study(config_for(kCentral, 2, 2, 0.1, 1), taus, 1.0).slope - 4) < 0.3);
  CHECK(std::abs(convergence_study(config_for(kCentral, 0, 2, 0.1, 1), taus, 1.0).slope - 2) < 0.3);
  const double small[] = {0.004, 0.002, 0.001, 0.0005};
  CHECK(std::abs(convergence_study(config_for(kDiff2, 0, 1, 0.1, 1), small, 0.04).slope - 1) < 0.3);

  const double three[] = {0.1, 0.05, 0.025};
  CHECK_THROWS_AS(convergence_study(config_for(kCentral, 1, 1, 0.1, 1), three, 1.0), std::invalid_argument);
  const double uneven[] = {0.1, 0.05, 0.025, 0.3};
  CHECK_THROWS_AS(convergence_study(config_for(kCentral, 1, 1, 0.1, 1), uneven, 1.0), std::invalid_argument);
}
