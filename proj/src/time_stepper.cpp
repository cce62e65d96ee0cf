#include "smstab/time_stepper.hpp"

#include "smstab/sm_classify.hpp"

#include <cmath>

namespace smstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double periodized_gaussian(double x, const GaussianProfile& g) {
  double acc = 0.0;
  for (int j = -3; j <= 3; ++j) {
    const double d = (x - g.center + j) / g.sigma;
    acc += std::exp(-d * d);
  }
  return acc;
}

}  // namespace

GridFunction<double> initial_values(const SimulationConfig& config, const Grid<double>& grid) {
  return std::visit(overloaded{
                        [&](const ModeSum& s) {
                          if (s.modes.empty()) throw std::invalid_argument("initial mode list is empty");
                          GridFunction<double> y(grid);
                          for (const auto& [k, amp] : s.modes) y += amp * fourier_mode(grid, k);
                          return y;
                        },
                        [&](const GaussianProfile& g) {
                          if (!(g.sigma > 0.0)) throw std::invalid_argument("gaussian width sigma must be positive");
                          GridFunction<double> y(grid);
                          for (int i = 0; i < grid.M(); ++i) y.values()[i] = periodized_gaussian(grid.x(i), g);
                          return y;
                        },
                        [&](const ExplicitValues& v) { return GridFunction<double>(grid, v.values); },
                    },
                    config.initial);
}

Trajectory simulate(const SimulationConfig& config) {
  if (!(config.tau > 0.0)) throw std::invalid_argument("time step tau must be positive");
  if (config.steps < 1) throw std::invalid_argument("number of steps must be at least 1");
  if (config.keep_every < 0) throw std::invalid_argument("snapshot thinning must be nonnegative");

  const Grid<double> grid(config.M);
  const auto op = build_operator(config.op, grid);
  const auto pade = pade_coeffs<double>(config.l, config.m);
  const auto spectrum = spectrum_table(config.op, grid);

  Trajectory traj;
  if (pade.l > pade.m) {
    if (!config.allow_unstable)
      throw std::invalid_argument("Pade scheme " + pade.name() + " has l > m and is not A-stable; enable allow_unstable");
    traj.warnings.push_back("running non-A-stable scheme " + pade.name() + " (l > m)");
  }
  const auto report = classify_operator_problem(op, pade, config.tau);
  traj.warnings.insert(traj.warnings.end(), report.warnings.begin(), report.warnings.end());
  traj.notes.insert(traj.notes.end(), report.notes.begin(), report.notes.end());

  const auto y0 = initial_values(config, grid);
  const CVector<double> c0 = harmonic_coefficients(y0);
  const int K = grid.max_harmonic();

  std::optional<PhysicalStepper<double>> physical;
  if (config.path == SteppingPath::Physical) physical.emplace(op, pade, config.tau, config.allow_unstable);

  auto keep = [&](int n) {
    if (n == 0 || n == config.steps) return true;
    return config.keep_every > 0 && n % config.keep_every == 0;
  };

  GridFunction<double> y = y0;
  CVector<double> c = c0;
  for (int n = 0; n <= config.steps; ++n) {
    if (n > 0) {
      if (physical) {
        y = physical->step(y);
        c = harmonic_coefficients(y);
      } else {
        c = step_spectral(c, spectrum, pade, config.tau);
        y = synthesize(grid, c);
      }
    }
    const double t = n * config.tau;
    double err2 = 0.0;
    for (int m = -K; m <= K; ++m) err2 += std::norm(c[m + K] - c0[m + K] * std::exp(-spectrum.mu(m) * t));
    traj.times.push_back(t);
    traj.norms.push_back(norm(y));
    traj.errors.push_back(std::sqrt(err2));
    traj.coefficients.push_back(c);
    if (keep(n)) {
      traj.snapshot_steps.push_back(n);
      traj.snapshots.push_back(y);
    }
  }
  return traj;
}

ConvergenceResult convergence_study(const SimulationConfig& config, std::span<const double> taus, double final_time) {
  if (taus.size() < 4) throw std::invalid_argument("convergence study needs at least 4 time steps");
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  ConvergenceResult out;
  for (double tau : taus) {
    if (!(tau > 0.0)) throw std::invalid_argument("time steps must be positive");
    const auto n = std::llround(final_time / tau);
    if (n < 1 || std::abs(double(n) * tau - final_time) > 1e-9 * final_time) {
      throw std::invalid_argument("tau = " + std::to_string(tau) + " does not divide T = " + std::to_string(final_time));
    }
    auto run = config;
    run.tau = tau;
    run.steps = static_cast<int>(n);
    run.keep_every = 0;
    const auto traj = simulate(run);
    out.taus.push_back(tau);
    out.errors.push_back(traj.errors.back());
  }
  out.slope = loglog_slope(out.taus, out.errors);
  return out;
}

StabilityCheck stability_estimate_check(const Trajectory& trajectory, double rel_slack) {
  for (std::size_t n = 0; n + 1 < trajectory.norms.size(); ++n) {
    if (trajectory.norms[n + 1] > trajectory.norms[n] * (1.0 + rel_slack))
      return {false, static_cast<int>(n)};
  }
  return {true, std::nullopt};
}

}  // namespace smstab
