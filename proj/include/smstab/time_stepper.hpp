#pragma once

#include "smstab/errors.hpp"
#include "smstab/grid.hpp"
#include "smstab/operators.hpp"
#include "smstab/pade.hpp"
#include "smstab/spectral.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace smstab {

/// c_m <- R(tau mu_m) c_m; coefficients indexed like `spectrum`.
template <typename Real>
CVector<Real> step_spectral(const CVector<Real>& coeffs, const Spectrum<Real>& spectrum, const PadeScheme<Real>& pade,
                            Real tau) {
  if (coeffs.size() != static_cast<Eigen::Index>(spectrum.entries().size()))
    throw std::invalid_argument("coefficient vector and spectrum sizes differ");
  CVector<Real> out(coeffs.size());
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) out[j] = eval_R(pade, tau * spectrum.entries()[j].mu) * coeffs[j];
  return out;
}

/// Solves Q(tau L) y_{n+1} = P(tau L) y_n with dense matrices; the LU factor of Q is built once.
template <typename Real>
class PhysicalStepper {
 public:
  using Matrix = RMatrix<Real>;

  PhysicalStepper(const StencilOperator<Real>& op, const PadeScheme<Real>& pade, Real tau, bool allow_unstable = false)
      : grid_(op.grid()) {
    if (!(tau >= 0)) throw std::invalid_argument("time step tau must be nonnegative");
    if (pade.l > pade.m && !allow_unstable) {
      throw std::invalid_argument("Pade scheme " + pade.name() +
                                  " has l > m and is not A-stable; pass allow_unstable to run it anyway");
    }
    const Matrix tl = tau * to_dense(op);
    numerator_ = dense_polynomial(pade.p, tl);
    lu_.compute(dense_polynomial(pade.q, tl));
    rcond_ = lu_.rcond();
    if (!(rcond_ > Real(1e-12))) {
      throw NumericalError("Q(tau L) is singular or ill-conditioned for " + pade.name() +
                           " (reciprocal condition estimate " + std::to_string(double(rcond_)) + ")");
    }
  }

  GridFunction<Real> step(const GridFunction<Real>& y) const {
    if (!(y.grid() == grid_)) throw std::invalid_argument("grid function does not match the stepper's grid");
    const Eigen::Matrix<Real, Eigen::Dynamic, 1> re = lu_.solve(numerator_ * y.values().real());
    const Eigen::Matrix<Real, Eigen::Dynamic, 1> im = lu_.solve(numerator_ * y.values().imag());
    CVector<Real> out(y.size());
    out.real() = re;
    out.imag() = im;
    return GridFunction<Real>(grid_, std::move(out));
  }

  Real rcond() const { return rcond_; }

 private:
  Grid<Real> grid_;
  Matrix numerator_;
  Eigen::PartialPivLU<Matrix> lu_;
  Real rcond_ = 0;
};

template <typename Real>
GridFunction<Real> step_physical(const GridFunction<Real>& y, const StencilOperator<Real>& op,
                                 const PadeScheme<Real>& pade, Real tau, bool allow_unstable = false) {
  return PhysicalStepper<Real>(op, pade, tau, allow_unstable).step(y);
}

// ---------------------------------------------------------------------------
// Simulation driver (double precision)

/// Sum of c_k w_k over the listed harmonics.
struct ModeSum {
  std::vector<std::pair<int, std::complex<double>>> modes;
};

/// Periodized exp(-((x - center)/sigma)^2).
struct GaussianProfile {
  double center = 0.5;
  double sigma = 0.1;
};

struct ExplicitValues {
  CVector<double> values;
};

using InitialCondition = std::variant<ModeSum, GaussianProfile, ExplicitValues>;

enum class SteppingPath { Spectral, Physical };

struct SimulationConfig {
  int M = 31;
  OperatorSpec op = OperatorSpec::pure(ConvectionScheme::Central);
  int l = 1;
  int m = 1;
  double tau = 0.01;
  int steps = 100;
  InitialCondition initial = ModeSum{{{1, 1.0}}};
  SteppingPath path = SteppingPath::Spectral;
  bool allow_unstable = false;
  int keep_every = 0;  // snapshot thinning; 0 keeps only the first and last

  double final_time() const { return tau * steps; }
};

GridFunction<double> initial_values(const SimulationConfig& config, const Grid<double>& grid);

struct Trajectory {
  std::vector<double> times;                 // t_0 .. t_N
  std::vector<double> norms;                 // ||y_n||
  std::vector<double> errors;                // ||y_n - exact(t_n)||, discrete operator semigroup
  std::vector<CVector<double>> coefficients; // harmonic coefficients per step, m ascending
  std::vector<int> snapshot_steps;
  std::vector<GridFunction<double>> snapshots;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

Trajectory simulate(const SimulationConfig& config);

struct ConvergenceResult {
  std::vector<double> taus;
  std::vector<double> errors;  // final-time error per tau
  double slope;
};

/// Final-time error against the exact discrete evolution for each tau at fixed T; log-log slope.
ConvergenceResult convergence_study(const SimulationConfig& config, std::span<const double> taus, double final_time);

struct StabilityCheck {
  bool nonincreasing;
  std::optional<int> witness_step;  // first n with ||y_{n+1}|| > ||y_n||
};

StabilityCheck stability_estimate_check(const Trajectory& trajectory, double rel_slack = 1e-12);

}  // namespace smstab
