#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smstab {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

/// Uniform periodic mesh on [0, 1) with M points and step h = 1/M.
///
/// M is required to be odd so that harmonics are indexed symmetrically,
/// m = -(M-1)/2 .. (M-1)/2, for every operator.
template <typename Real = double>
class Grid {
 public:
  explicit Grid(int M) : M_(M), h_(Real(1) / Real(M)) {
    if (M < 3 || M % 2 == 0) {
      throw std::invalid_argument("grid size M must be odd and >= 3 (harmonics are indexed "
                                  "symmetrically about m = 0), got M = " +
                                  std::to_string(M));
    }
  }

  int M() const { return M_; }
  Real h() const { return h_; }
  Real x(int i) const { return Real(i) * h_; }
  int max_harmonic() const { return (M_ - 1) / 2; }

  bool operator==(const Grid&) const = default;

 private:
  int M_;
  Real h_;
};

template <typename Real = double>
Grid<Real> make_grid(int M) {
  return Grid<Real>(M);
}

/// Complex periodic grid function; value at i + M is the value at i.
template <typename Real = double>
class GridFunction {
 public:
  explicit GridFunction(const Grid<Real>& grid) : grid_(grid), values_(CVector<Real>::Zero(grid.M())) {}

  GridFunction(const Grid<Real>& grid, CVector<Real> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.M()) {
      throw std::invalid_argument("grid function length " + std::to_string(values_.size()) +
                                  " does not match grid size " + std::to_string(grid_.M()));
    }
  }

  const Grid<Real>& grid() const { return grid_; }
  const CVector<Real>& values() const { return values_; }
  CVector<Real>& values() { return values_; }
  int size() const { return grid_.M(); }

  std::complex<Real> operator[](int i) const { return values_[wrap(i)]; }
  std::complex<Real>& operator[](int i) { return values_[wrap(i)]; }

  GridFunction& operator+=(const GridFunction& o) {
    check_same_grid(o);
    values_ += o.values_;
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    check_same_grid(o);
    values_ -= o.values_;
    return *this;
  }
  GridFunction& operator*=(std::complex<Real> s) {
    values_ *= s;
    return *this;
  }

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(std::complex<Real> s, GridFunction a) { return a *= s; }

  void check_same_grid(const GridFunction& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("grid functions live on different grids");
  }

 private:
  int wrap(int i) const {
    const int M = grid_.M();
    return ((i % M) + M) % M;
  }

  Grid<Real> grid_;
  CVector<Real> values_;
};

/// (y, w) = sum_x y(x) conj(w(x)) h
template <typename Real>
std::complex<Real> inner_product(const GridFunction<Real>& y, const GridFunction<Real>& w) {
  y.check_same_grid(w);
  std::complex<Real> acc{0};
  for (int i = 0; i < y.size(); ++i) acc += y.values()[i] * std::conj(w.values()[i]);
  return acc * y.grid().h();
}

template <typename Real>
Real norm(const GridFunction<Real>& y) {
  return std::sqrt(y.values().squaredNorm() * y.grid().h());
}

inline void check_harmonic(int M, int m) {
  if (std::abs(m) > (M - 1) / 2) {
    throw std::out_of_range("harmonic index m = " + std::to_string(m) + " outside [-" +
                            std::to_string((M - 1) / 2) + ", " + std::to_string((M - 1) / 2) +
                            "] for M = " + std::to_string(M));
  }
}

namespace detail {
// e^{i 2 pi m i / M}, with the phase reduced exactly in integers first.
template <typename Real>
std::complex<Real> unit_phase(long long m, long long i, int M) {
  const long long k = ((m * i) % M + M) % M;
  const Real angle = Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(M);
  return {std::cos(angle), std::sin(angle)};
}
}  // namespace detail

/// w_m(x_i) = exp(i 2 pi m x_i). Any integer m is accepted here (aliasing
/// m and m + M is exact); use `fourier_mode` for the checked version.
template <typename Real>
GridFunction<Real> fourier_mode_unchecked(const Grid<Real>& grid, long long m) {
  GridFunction<Real> w(grid);
  for (int i = 0; i < grid.M(); ++i) w.values()[i] = detail::unit_phase<Real>(m, i, grid.M());
  return w;
}

template <typename Real>
GridFunction<Real> fourier_mode(const Grid<Real>& grid, int m) {
  check_harmonic(grid.M(), m);
  return fourier_mode_unchecked(grid, m);
}

/// Harmonic coefficients c_m = (y, w_m), stored at position m + (M-1)/2.
template <typename Real>
CVector<Real> harmonic_coefficients(const GridFunction<Real>& y) {
  const auto& grid = y.grid();
  const int K = grid.max_harmonic();
  CVector<Real> c(grid.M());
  for (int m = -K; m <= K; ++m) {
    std::complex<Real> acc{0};
    for (int i = 0; i < grid.M(); ++i) acc += y.values()[i] * std::conj(detail::unit_phase<Real>(m, i, grid.M()));
    c[m + K] = acc * grid.h();
  }
  return c;
}

/// Inverse of harmonic_coefficients: y = sum_m c_m w_m.
template <typename Real>
GridFunction<Real> synthesize(const Grid<Real>& grid, const CVector<Real>& coeffs) {
  if (coeffs.size() != grid.M()) throw std::invalid_argument("coefficient vector length must equal M");
  const int K = grid.max_harmonic();
  GridFunction<Real> y(grid);
  for (int i = 0; i < grid.M(); ++i) {
    std::complex<Real> acc{0};
    for (int m = -K; m <= K; ++m) acc += coeffs[m + K] * detail::unit_phase<Real>(m, i, grid.M());
    y.values()[i] = acc;
  }
  return y;
}

}  // namespace smstab
