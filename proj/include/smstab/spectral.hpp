#pragma once

#include "smstab/grid.hpp"
#include "smstab/operators.hpp"

#include <vector>

namespace smstab {

/// Eigenvalue of the continuous operator chi d/dx - (1 - chi) d^2/dx^2 for e^{i 2 pi m x}:
/// i 2 pi m for convection (chi = 1), 4 pi^2 m^2 for diffusion (chi = 0).
template <typename Real = double>
std::complex<Real> continuous_eigenvalue(Real chi, int m) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  const std::complex<Real> conv{0, 2 * pi * m};
  const Real diff = 4 * pi * pi * Real(m) * Real(m);
  return chi * conv + (Real(1) - chi) * diff;
}

template <typename Real = double>
std::complex<Real> continuous_eigenvalue(const OperatorSpec& spec, int m) {
  return continuous_eigenvalue<Real>(Real(spec.chi), m);
}

template <typename Real>
std::complex<Real> discrete_eigenvalue(ConvectionScheme scheme, const Grid<Real>& grid, int m) {
  check_harmonic(grid.M(), m);
  const Real h = grid.h();
  const Real theta = 2 * std::numbers::pi_v<Real> * Real(m) * h;
  const Real s = std::sin(theta), c = std::cos(theta);
  switch (scheme) {
    case ConvectionScheme::Upwind1: {
      const Real sh = std::sin(std::numbers::pi_v<Real> * Real(m) * h);
      return {2 * sh * sh / h, s / h};
    }
    case ConvectionScheme::Central:
      return {0, s / h};
    case ConvectionScheme::Upwind2:
      return {(c - 1) * (c - 1) / h, s * (2 - c) / h};
    case ConvectionScheme::ThirdOrder:
      return {(c - 1) * (c - 1) / (3 * h), s * (4 - c) / (3 * h)};
  }
  return {};
}

template <typename Real>
std::complex<Real> discrete_eigenvalue(DiffusionScheme scheme, const Grid<Real>& grid, int m) {
  check_harmonic(grid.M(), m);
  const Real h = grid.h();
  const Real sn = std::sin(std::numbers::pi_v<Real> * Real(m) / Real(grid.M()));
  const Real second = 4 / (h * h) * sn * sn;
  switch (scheme) {
    case DiffusionScheme::Second: return second;
    case DiffusionScheme::Fourth: return second * (1 + sn * sn / 3);
  }
  return {};
}

template <typename Real>
std::complex<Real> discrete_eigenvalue(const OperatorSpec& spec, const Grid<Real>& grid, int m) {
  if (spec.is_mixed()) {
    const Real chi = Real(spec.chi);
    return chi * discrete_eigenvalue(*spec.convection, grid, m) +
           (Real(1) - chi) * discrete_eigenvalue(*spec.diffusion, grid, m);
  }
  if (spec.convection) return discrete_eigenvalue(*spec.convection, grid, m);
  if (spec.diffusion) return discrete_eigenvalue(*spec.diffusion, grid, m);
  throw std::invalid_argument("empty operator specification");
}

/// Rayleigh quotient (Op w_m, w_m); w_m has unit norm and is an exact eigenfunction.
template <typename Real>
std::complex<Real> numeric_eigenvalue(const StencilOperator<Real>& op, int m) {
  const auto w = fourier_mode(op.grid(), m);
  return inner_product(apply(op, w), w);
}

/// sum_k taps[k] e^{i 2 pi m k / M}; the eigenvalue of a circulant stencil, in O(width).
template <typename Real>
std::complex<Real> stencil_symbol(const StencilOperator<Real>& op, int m) {
  std::complex<Real> acc{0};
  for (const auto& [k, v] : op.taps()) acc += v * detail::unit_phase<Real>(m, k, op.grid().M());
  return acc;
}

template <typename Real = double>
struct EigenvaluePair {
  int m;
  std::complex<Real> mu;
  std::complex<Real> lambda;
};

/// Per-harmonic table of discrete and continuous eigenvalues, m ascending.
template <typename Real = double>
class Spectrum {
 public:
  Spectrum(const Grid<Real>& grid, std::vector<EigenvaluePair<Real>> entries, std::string label)
      : grid_(grid), entries_(std::move(entries)), label_(std::move(label)) {
    if (static_cast<int>(entries_.size()) != grid_.M()) throw std::invalid_argument("spectrum must cover every harmonic");
  }

  const Grid<Real>& grid() const { return grid_; }
  const std::vector<EigenvaluePair<Real>>& entries() const { return entries_; }
  const std::string& label() const { return label_; }

  const EigenvaluePair<Real>& at(int m) const {
    check_harmonic(grid_.M(), m);
    return entries_[m + grid_.max_harmonic()];
  }
  std::complex<Real> mu(int m) const { return at(m).mu; }

  Real max_abs_mu() const {
    Real r = 0;
    for (const auto& e : entries_) r = std::max(r, std::abs(e.mu));
    return r;
  }

 private:
  Grid<Real> grid_;
  std::vector<EigenvaluePair<Real>> entries_;
  std::string label_;
};

template <typename Real>
Spectrum<Real> spectrum_table(const OperatorSpec& spec, const Grid<Real>& grid) {
  std::vector<EigenvaluePair<Real>> entries;
  const int K = grid.max_harmonic();
  entries.reserve(grid.M());
  for (int m = -K; m <= K; ++m)
    entries.push_back({m, discrete_eigenvalue(spec, grid, m), continuous_eigenvalue<Real>(spec, m)});
  return Spectrum<Real>(grid, std::move(entries), spec.label());
}

/// Spectrum of an arbitrary stencil by Rayleigh quotients; lambda is taken for the given chi.
template <typename Real>
Spectrum<Real> numeric_spectrum(const StencilOperator<Real>& op, Real chi) {
  std::vector<EigenvaluePair<Real>> entries;
  const int K = op.grid().max_harmonic();
  for (int m = -K; m <= K; ++m) entries.push_back({m, numeric_eigenvalue(op, m), continuous_eigenvalue<Real>(chi, m)});
  return Spectrum<Real>(op.grid(), std::move(entries), op.label());
}

/// sum_m c_m exp(-mu_m t) w_m: exact solution of dy/dt + Lambda y = 0 on the grid.
template <typename Real>
GridFunction<Real> exact_evolution(const GridFunction<Real>& y0, const Spectrum<Real>& spectrum, Real t) {
  if (!(t >= 0)) throw std::invalid_argument("evolution time must be nonnegative");
  auto c = harmonic_coefficients(y0);
  for (const auto& e : spectrum.entries()) c[e.m + spectrum.grid().max_harmonic()] *= std::exp(-e.mu * t);
  return synthesize(y0.grid(), c);
}

/// Continuous-problem evolution of the trigonometric interpolant of y0, sampled on the grid.
template <typename Real>
GridFunction<Real> exact_evolution_continuous(const GridFunction<Real>& y0, Real chi, Real t) {
  if (!(t >= 0)) throw std::invalid_argument("evolution time must be nonnegative");
  auto c = harmonic_coefficients(y0);
  const int K = y0.grid().max_harmonic();
  for (int m = -K; m <= K; ++m) c[m + K] *= std::exp(-continuous_eigenvalue<Real>(chi, m) * t);
  return synthesize(y0.grid(), c);
}

}  // namespace smstab
