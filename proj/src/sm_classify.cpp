#include "smstab/sm_classify.hpp"

#include "smstab/spectral.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace smstab {

std::string_view to_string(SkewVerdict v) {
  switch (v) {
    case SkewVerdict::SMStable: return "SMStable";
    case SkewVerdict::DissipativeStable: return "DissipativeStable";
    case SkewVerdict::Unstable: return "Unstable";
  }
  return "?";
}

std::string_view to_string(SelfAdjointVerdict v) {
  switch (v) {
    case SelfAdjointVerdict::SMStable: return "SMStable";
    case SelfAdjointVerdict::ConditionallySMStable: return "ConditionallySMStable";
    case SelfAdjointVerdict::NotSMStable: return "NotSMStable";
    case SelfAdjointVerdict::Unstable: return "Unstable";
  }
  return "?";
}

std::string_view to_string(ProblemRoute r) {
  switch (r) {
    case ProblemRoute::SkewDominant: return "skew-dominant";
    case ProblemRoute::SelfAdjoint: return "self-adjoint";
    case ProblemRoute::Mixed: return "mixed";
  }
  return "?";
}

namespace {

using Poly = Eigen::VectorXd;

Poly derivative(const Poly& c) {
  if (c.size() <= 1) return Poly::Zero(1);
  Poly d(c.size() - 1);
  for (Eigen::Index k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
  return d;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly r = Poly::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly subtract(const Poly& a, const Poly& b) {
  Poly r = Poly::Zero(std::max(a.size(), b.size()));
  r.head(a.size()) += a;
  r.head(b.size()) -= b;
  return r;
}

// lo, lo*10^(1/n), ..., hi (hi always included).
std::vector<double> log_samples(double lo, double hi, int per_decade) {
  std::vector<double> xs;
  if (!(hi > lo)) {
    xs.push_back(hi);
    return xs;
  }
  const double step = std::log(10.0) / per_decade;
  const auto n = static_cast<long>(std::ceil(std::log(hi / lo) / step));
  xs.reserve(n + 1);
  for (long j = 0; j < n; ++j) xs.push_back(lo * std::exp(step * double(j)));
  xs.push_back(hi);
  return xs;
}

// Smallest boundary in (a, b] where `bad` flips from false to true, assuming bad(a) false, bad(b) true.
double bisect(const std::function<bool(double)>& bad, double a, double b, double rel_tol) {
  while (b - a > rel_tol * std::max(1.0, b)) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    (bad(mid) ? b : a) = mid;
  }
  return 0.5 * (a + b);
}

double real_eval(const PadeScheme<double>& s, double x) { return eval_R(s, std::complex<double>(x, 0.0)).real(); }

}  // namespace

// Only m - 2 <= l <= m keeps |R(iy)| <= 1; R03, R04, R14 already overshoot.
SkewVerdict skew_rule(int l, int m) {
  if (l == m) return SkewVerdict::SMStable;
  return l < m && l >= m - 2 ? SkewVerdict::DissipativeStable : SkewVerdict::Unstable;
}

SkewClassification classify_skew(const PadeScheme<double>& scheme, const ClassifyOptions& opt) {
  // |R(-iy)| = |R(iy)| for real coefficients, so y > 0 suffices.
  SkewClassification out{SkewVerdict::SMStable, 0.0, 1.0, std::nullopt};
  double witness = 0.0;
  for (double y : log_samples(opt.lo, opt.far, opt.samples_per_decade)) {
    const double r = stability_modulus(scheme, y);
    out.max_deviation = std::max(out.max_deviation, std::abs(r - 1.0));
    if (r > out.max_modulus) {
      out.max_modulus = r;
      witness = y;
    }
  }
  if (out.max_modulus > 1.0 + opt.growth_tol) {
    out.verdict = SkewVerdict::Unstable;
    out.witness_y = witness;
  } else if (out.max_deviation < opt.neutral_tol) {
    out.verdict = SkewVerdict::SMStable;
  } else {
    out.verdict = SkewVerdict::DissipativeStable;
  }
  return out;
}

SelfAdjointClassification classify_selfadjoint(const PadeScheme<double>& scheme, double x_max,
                                               const ClassifyOptions& opt) {
  if (!(x_max > 0.0)) throw std::invalid_argument("classify_selfadjoint needs x_max > 0");

  SelfAdjointClassification out{SelfAdjointVerdict::SMStable, std::nullopt, std::nullopt, {}};

  // Boundedness on the range the caller actually uses.
  for (double x : log_samples(opt.lo, x_max, opt.samples_per_decade)) {
    if (std::abs(real_eval(scheme, x)) > 1.0 + opt.growth_tol) {
      out.verdict = SelfAdjointVerdict::Unstable;
      out.witness_x = x;
      std::ostringstream os;
      os << "|s(x)| > 1 at x = " << x;
      out.reason = os.str();
      return out;
    }
  }

  // Q > 0 on x >= 0 (positive coefficients), so s < 0 iff P < 0 and s' > 0 iff P'Q - PQ' > 0.
  const Poly& P = scheme.p;
  const Poly& Q = scheme.q;
  const Poly slope_num = subtract(multiply(derivative(P), Q), multiply(P, derivative(Q)));
  const double slope_scale = slope_num.cwiseAbs().maxCoeff();
  auto negative = [&](double x) { return horner(P, x) < 0.0; };
  auto increasing = [&](double x) { return horner(slope_num, x) > 1e-14 * slope_scale; };
  auto fails = [&](double x) { return negative(x) || increasing(x); };

  const double far = std::max(x_max, opt.far);
  const auto xs = log_samples(opt.lo, far, opt.samples_per_decade);
  double prev = 0.0;
  for (double x : xs) {
    if (fails(x)) {
      if (x == xs.front()) {
        out.verdict = SelfAdjointVerdict::NotSMStable;
        out.reason = "s is negative or increasing immediately right of x = 0";
        return out;
      }
      const double neg_at = negative(x) ? bisect(negative, prev, x, opt.bisect_tol) : x;
      const double inc_at = increasing(x) ? bisect(increasing, prev, x, opt.bisect_tol) : x;
      const double x_star = std::min(neg_at, inc_at);
      out.verdict = SelfAdjointVerdict::ConditionallySMStable;
      out.condition = x_star;
      std::ostringstream os;
      os << (neg_at <= inc_at ? "s changes sign" : "s stops decreasing") << " at x* = " << x_star
         << "; spectral monotonicity needs tau * mu_max <= x*";
      out.reason = os.str();
      return out;
    }
    prev = x;
  }

  const double s_lo = real_eval(scheme, opt.lo);
  const double s_far = real_eval(scheme, far);
  if (!(s_lo < 1.0) || !(std::abs(s_far) < opt.decay_tol)) {
    out.verdict = SelfAdjointVerdict::NotSMStable;
    std::ostringstream os;
    os << "no asymptotic decay: s(" << far << ") = " << s_far;
    out.reason = os.str();
    return out;
  }
  std::ostringstream os;
  os << "s is positive, decreasing and decays to " << s_far << " at x = " << far;
  out.reason = os.str();
  return out;
}

OperatorProblemReport classify_operator_problem(const StencilOperator<double>& op, const PadeScheme<double>& scheme,
                                                double tau, double skew_threshold, const ClassifyOptions& opt) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step tau must be positive");

  const auto parts = split_symmetric_skew(op);
  OperatorProblemReport rep{ProblemRoute::Mixed, 0.0, 0.0, 0.0, 0.0, std::nullopt, std::nullopt, {}, {}};
  const int K = op.grid().max_harmonic();
  for (int m = -K; m <= K; ++m) {
    const auto mu = stencil_symbol(op, m);
    rep.max_re_mu = std::max(rep.max_re_mu, mu.real());
    rep.max_abs_im_mu = std::max(rep.max_abs_im_mu, std::abs(mu.imag()));
  }
  rep.skew_ratio = rep.max_abs_im_mu / std::max(rep.max_re_mu, 1e-300);
  rep.x_max = tau * rep.max_re_mu;

  auto add_selfadjoint = [&] {
    if (!(rep.x_max > 0.0)) {
      rep.notes.push_back("symmetric part has a zero spectrum; nothing to certify");
      return;
    }
    rep.selfadjoint = classify_selfadjoint(scheme, rep.x_max, opt);
    const auto& sa = *rep.selfadjoint;
    std::ostringstream os;
    switch (sa.verdict) {
      case SelfAdjointVerdict::ConditionallySMStable:
        if (rep.x_max > *sa.condition) {
          os << "monotonicity violation: tau*mu_max = " << rep.x_max << " exceeds the bound " << *sa.condition
             << " for " << scheme.name() << "; high harmonics change sign or damp slower than low ones";
          rep.warnings.push_back(os.str());
        } else {
          os << "conditional bound tau*mu_max <= " << *sa.condition << " holds (tau*mu_max = " << rep.x_max << ")";
          rep.notes.push_back(os.str());
        }
        break;
      case SelfAdjointVerdict::NotSMStable:
        rep.warnings.push_back("scheme " + scheme.name() + " is not SM stable for the symmetric part: " + sa.reason);
        break;
      case SelfAdjointVerdict::Unstable:
        rep.warnings.push_back("scheme " + scheme.name() + " amplifies symmetric-part harmonics: " + sa.reason);
        break;
      case SelfAdjointVerdict::SMStable:
        break;
    }
  };
  auto add_skew = [&] {
    rep.skew = classify_skew(scheme, opt);
    if (rep.skew->verdict == SkewVerdict::Unstable) {
      std::ostringstream os;
      os << "scheme " << scheme.name() << " amplifies oscillatory harmonics (|R(iy)| = " << rep.skew->max_modulus
         << " at y = " << *rep.skew->witness_y << ")";
      rep.warnings.push_back(os.str());
    } else if (rep.skew->verdict == SkewVerdict::DissipativeStable) {
      rep.notes.push_back("time discretization adds dissipation: scheme " + scheme.name() + " is not neutral on Re z = 0");
    }
  };

  if (parts.skew.is_zero()) {
    rep.route = ProblemRoute::SelfAdjoint;
    add_selfadjoint();
  } else if (rep.skew_ratio >= skew_threshold) {
    rep.route = ProblemRoute::SkewDominant;
    add_skew();
    if (rep.max_re_mu > 0.0) {
      std::ostringstream os;
      os << "spatial discretization contributes a dissipative real part, max Re mu = " << rep.max_re_mu;
      rep.notes.push_back(os.str());
    }
  } else {
    rep.route = ProblemRoute::Mixed;
    add_skew();
    add_selfadjoint();
  }
  return rep;
}

}  // namespace smstab
