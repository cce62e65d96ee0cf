#pragma once

#include "smstab/operators.hpp"
#include "smstab/pade.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smstab {

enum class SkewVerdict { SMStable, DissipativeStable, Unstable };
enum class SelfAdjointVerdict { SMStable, ConditionallySMStable, NotSMStable, Unstable };

std::string_view to_string(SkewVerdict v);
std::string_view to_string(SelfAdjointVerdict v);

/// Behaviour of R(iy) along the imaginary axis (purely skew-symmetric Lambda).
struct SkewClassification {
  SkewVerdict verdict;
  double max_deviation;              // max_y | |R(iy)| - 1 |
  double max_modulus;                // max_y |R(iy)|
  std::optional<double> witness_y;   // y with |R(iy)| > 1 when Unstable
};

/// Behaviour of s(x) = R(x) on x >= 0 (self-adjoint Lambda >= 0).
struct SelfAdjointClassification {
  SelfAdjointVerdict verdict;
  std::optional<double> condition;   // x* with tau mu_max <= x* required; iff ConditionallySMStable
  std::optional<double> witness_x;   // |s(x)| > 1 when Unstable
  std::string reason;
};

struct ClassifyOptions {
  int samples_per_decade = 10000;
  double lo = 1e-6;
  double far = 1e6;            // monotonicity and decay are certified up to max(x_max, far)
  double decay_tol = 1e-3;     // |s(far)| below this counts as decayed
  double neutral_tol = 1e-10;  // max | |R(iy)| - 1 | for neutral stability
  double growth_tol = 1e-12;   // |R| > 1 + growth_tol counts as growth
  double bisect_tol = 1e-12;   // relative width at which boundary bisection stops
};

/// Rule implied by the Pade family: neutral iff l == m, damping iff l < m, growth iff l > m.
SkewVerdict skew_rule(int l, int m);

SkewClassification classify_skew(const PadeScheme<double>& scheme, const ClassifyOptions& opt = {});

SelfAdjointClassification classify_selfadjoint(const PadeScheme<double>& scheme, double x_max,
                                               const ClassifyOptions& opt = {});

enum class ProblemRoute { SkewDominant, SelfAdjoint, Mixed };
std::string_view to_string(ProblemRoute r);

struct OperatorProblemReport {
  ProblemRoute route;
  double skew_ratio;     // max |Im mu| / max(Re mu, eps)
  double max_re_mu;
  double max_abs_im_mu;
  double x_max;          // tau * max Re mu, the self-adjoint certification range
  std::optional<SkewClassification> skew;
  std::optional<SelfAdjointClassification> selfadjoint;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
};

OperatorProblemReport classify_operator_problem(const StencilOperator<double>& op, const PadeScheme<double>& scheme,
                                                double tau, double skew_threshold = 10.0,
                                                const ClassifyOptions& opt = {});

}  // namespace smstab
