#pragma once

#include "smstab/errors.hpp"
#include "smstab/fit.hpp"

#include <Eigen/Dense>

#include <complex>
#include <sstream>
#include <string>
#include <vector>

namespace smstab {

/// Pade approximant R_lm(z) = P_lm(z) / Q_lm(z) of exp(-z); coefficients in ascending powers.
template <typename Real = double>
struct PadeScheme {
  using Coeffs = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  int l = 0;  // numerator degree
  int m = 0;  // denominator degree
  Coeffs p;
  Coeffs q;

  int order() const { return l + m; }
  bool a_stable() const { return l <= m; }
  std::string name() const { return "R" + std::to_string(l) + std::to_string(m); }
};

inline constexpr int kMaxPadeDegree = 12;

template <typename Real = double>
PadeScheme<Real> pade_coeffs(int l, int m) {
  if (l < 0 || m < 0 || l + m < 1 || l + m > kMaxPadeDegree) {
    throw std::invalid_argument("Pade degrees need l, m >= 0 and 1 <= l + m <= " + std::to_string(kMaxPadeDegree) +
                                ", got (" + std::to_string(l) + ", " + std::to_string(m) + ")");
  }
  PadeScheme<Real> s{l, m, {}, {}};
  const int n = l + m;
  s.p.resize(l + 1);
  s.q.resize(m + 1);
  // p_{k+1} / p_k = -(l - k) / ((k + 1)(l + m - k)), p_0 = 1; same for q with m and no sign flip.
  s.p[0] = 1;
  for (int k = 0; k < l; ++k) s.p[k + 1] = -s.p[k] * Real(l - k) / (Real(k + 1) * Real(n - k));
  s.q[0] = 1;
  for (int k = 0; k < m; ++k) s.q[k + 1] = s.q[k] * Real(m - k) / (Real(k + 1) * Real(n - k));
  return s;
}

template <typename Real, typename Z>
Z horner(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& c, const Z& z) {
  Z acc = Z(c[c.size() - 1]);
  for (Eigen::Index k = c.size() - 2; k >= 0; --k) acc = acc * z + Z(c[k]);
  return acc;
}

template <typename Real>
std::complex<Real> eval_R(const PadeScheme<Real>& s, std::complex<Real> z) {
  const auto den = horner(s.q, z);
  const Real guard = Real(1e-14) * s.q.cwiseAbs().maxCoeff();
  if (std::abs(den) <= guard) {
    std::ostringstream os;
    os << s.name() << " evaluated at a pole of Q: z = " << z << ", |Q(z)| = " << std::abs(den);
    throw NumericalError(os.str());
  }
  return horner(s.p, z) / den;
}

/// |R_lm(iy)|, the amplification of a purely oscillatory harmonic.
template <typename Real>
Real stability_modulus(const PadeScheme<Real>& s, Real y) {
  return std::abs(eval_R(s, std::complex<Real>(0, y)));
}

/// Small enough that the leading error term dominates for degrees up to about 6.
inline constexpr double kOrderSamples[] = {0.0125, 0.025, 0.05, 0.1};

/// Log-log slope of |R(z) - exp(-z)| over real samples in (0, 0.5]; ~ l + m + 1.
template <typename Real>
double order_residual(const PadeScheme<Real>& s, std::span<const double> z_samples) {
  if (z_samples.size() < 4) throw std::invalid_argument("order_residual needs at least 4 samples");
  std::vector<double> err;
  for (double z : z_samples) {
    if (!(z > 0.0 && z <= 0.5)) throw std::invalid_argument("order_residual samples must lie in (0, 0.5]");
    const double e = std::abs(double(eval_R(s, std::complex<Real>(Real(z), 0)).real()) - std::exp(-z));
    if (!(e > 0.0)) throw std::invalid_argument("order_residual: residual vanished at z = " + std::to_string(z));
    err.push_back(e);
  }
  return loglog_slope(z_samples, err);
}

/// Canonical two-level form B (y_{n+1} - y_n)/tau + A y_n = 0 with
/// B = sum_k b_k (tau L)^k and A = (1/tau) sum_k a_k (tau L)^k.
template <typename Real = double>
struct SchemeMatrices {
  using Coeffs = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  Coeffs a_poly;
  Coeffs b_poly;
};

template <typename Real>
SchemeMatrices<Real> scheme_matrices(const PadeScheme<Real>& s) {
  const int n = std::max(s.l, s.m) + 1;
  typename SchemeMatrices<Real>::Coeffs a = SchemeMatrices<Real>::Coeffs::Zero(n);
  a.head(s.m + 1) += s.q;
  a.head(s.l + 1) -= s.p;
  // trailing zeros beyond deg Q - P carry no information
  Eigen::Index deg = n - 1;
  while (deg > 0 && a[deg] == Real(0)) --deg;
  return {a.head(deg + 1), s.q};
}

/// sum_k c_k X^k by Horner on dense matrices.
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> dense_polynomial(
    const Eigen::Matrix<Real, Eigen::Dynamic, 1>& c, const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& X) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const auto I = Mat::Identity(X.rows(), X.cols());
  Mat acc = c[c.size() - 1] * I;
  for (Eigen::Index k = c.size() - 2; k >= 0; --k) acc = (acc * X + c[k] * I).eval();
  return acc;
}

}  // namespace smstab
