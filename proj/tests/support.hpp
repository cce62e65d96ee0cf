#pragma once

#include "smstab/grid.hpp"

#include <complex>
#include <random>

namespace smstab::testing {

inline GridFunction<double> random_function(const Grid<double>& grid, std::mt19937_64& rng, bool real_only = false) {
  std::normal_distribution<double> n(0.0, 1.0);
  GridFunction<double> y(grid);
  for (int i = 0; i < grid.M(); ++i) y.values()[i] = {n(rng), real_only ? 0.0 : n(rng)};
  return y;
}

inline double max_abs_diff(const GridFunction<double>& a, const GridFunction<double>& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

// e^{i 2 pi m x} evaluated with std::polar, independent of the library's phase reduction.
inline std::complex<double> plane_wave(int m, double x) {
  return std::polar(1.0, 2.0 * 3.14159265358979323846 * m * x);
}

}  // namespace smstab::testing
