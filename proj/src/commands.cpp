#include "smstab/commands.hpp"

#include "smstab/sm_classify.hpp"
#include "smstab/spectral.hpp"
#include "smstab/time_stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace smstab::cli {

namespace {

using json = nlohmann::ordered_json;

std::string join(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

Cell optional_cell(const std::optional<double>& x) { return x ? Cell(*x) : Cell(std::string{}); }

SimulationConfig make_config(const SimulateArgs& a) {
  SimulationConfig c;
  c.M = a.M;
  c.op = parse_operator_spec(a.op, a.chi);
  c.l = a.l;
  c.m = a.m;
  c.tau = a.tau;
  c.steps = a.steps;
  c.allow_unstable = a.allow_unstable;
  c.keep_every = a.keep_every;
  if (a.path == "spectral") {
    c.path = SteppingPath::Spectral;
  } else if (a.path == "physical") {
    c.path = SteppingPath::Physical;
  } else {
    throw std::invalid_argument("unknown stepping path '" + a.path + "' (expected spectral or physical)");
  }
  const int sources = int(!a.modes.empty()) + int(a.gaussian_sigma.has_value()) + int(!a.values.empty());
  if (sources > 1) throw std::invalid_argument("give only one of --mode, --gaussian-sigma, --values");
  if (a.gaussian_sigma) {
    c.initial = GaussianProfile{a.gaussian_center, *a.gaussian_sigma};
  } else if (!a.values.empty()) {
    CVector<double> v(static_cast<Eigen::Index>(a.values.size()));
    for (std::size_t i = 0; i < a.values.size(); ++i) v[static_cast<Eigen::Index>(i)] = a.values[i];
    if (v.size() != a.M)
      throw std::invalid_argument("--values has " + std::to_string(v.size()) + " entries but M = " + std::to_string(a.M));
    c.initial = ExplicitValues{std::move(v)};
  } else {
    ModeSum s;
    for (int k : a.modes.empty() ? std::vector<int>{1} : a.modes) s.modes.emplace_back(k, 1.0);
    c.initial = s;
  }
  return c;
}

json simulate_params(const SimulateArgs& a) {
  json p = {{"M", a.M}, {"operator", a.op}, {"chi", a.chi}, {"l", a.l}, {"m", a.m}, {"tau", a.tau},
            {"steps", a.steps}, {"path", a.path}, {"allow_unstable", a.allow_unstable},
            {"keep_every", a.keep_every}};
  if (!a.modes.empty()) p["modes"] = a.modes;
  if (a.gaussian_sigma) {
    p["gaussian_sigma"] = *a.gaussian_sigma;
    p["gaussian_center"] = a.gaussian_center;
  }
  if (!a.values.empty()) p["values"] = a.values;
  return p;
}

}  // namespace

Report cmd_spectrum(const SpectrumArgs& a) {
  const Grid<double> grid(a.M);
  const auto spec = parse_operator_spec(a.op, a.chi);
  const auto spectrum = spectrum_table(spec, grid);
  const auto op = build_operator(spec, grid);

  Report r;
  r.command = "spectrum";
  r.params = {{"M", a.M}, {"operator", a.op}, {"chi", a.chi}};
  Table t{"spectrum", {"m", "re_mu", "im_mu", "re_lambda", "im_lambda"}, {}};
  double max_re = 0.0, max_abs = 0.0, max_dev = 0.0;
  for (const auto& e : spectrum.entries()) {
    t.add_row({std::int64_t(e.m), e.mu.real(), e.mu.imag(), e.lambda.real(), e.lambda.imag()});
    max_re = std::max(max_re, e.mu.real());
    max_abs = std::max(max_abs, std::abs(e.mu));
    max_dev = std::max(max_dev, std::abs(e.mu - stencil_symbol(op, e.m)));
  }
  r.tables.push_back(std::move(t));
  r.summary = {{"operator", spec.label()},   {"M", a.M}, {"h", grid.h()}, {"rows", a.M},
               {"max_re_mu", max_re},       {"max_abs_mu", max_abs},
               {"max_closed_form_vs_stencil", max_dev}};
  std::ostringstream os;
  os << "spectrum of " << spec.label() << " on M = " << a.M << ": max Re mu = " << format_double(max_re)
     << ", max |mu| = " << format_double(max_abs);
  r.lines.push_back(os.str());
  return r;
}

Report cmd_pade(const PadeArgs& a) {
  const auto s = pade_coeffs<double>(a.l, a.m);
  Report r;
  r.command = "pade";
  r.params = {{"l", a.l}, {"m", a.m}, {"eval_imag", a.eval_imag}};

  Table coeffs{"coefficients", {"k", "p", "q"}, {}};
  for (int k = 0; k <= std::max(a.l, a.m); ++k) {
    coeffs.add_row({std::int64_t(k), k <= a.l ? Cell(s.p[k]) : Cell(std::string{}),
                    k <= a.m ? Cell(s.q[k]) : Cell(std::string{})});
  }
  r.tables.push_back(std::move(coeffs));

  std::vector<double> ys{0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
  ys.insert(ys.end(), a.eval_imag.begin(), a.eval_imag.end());
  Table mod{"modulus", {"y", "abs_R"}, {}};
  json eval = json::array();
  for (double y : ys) mod.add_row({y, stability_modulus(s, y)});
  for (double y : a.eval_imag) eval.push_back({{"y", y}, {"abs_R", stability_modulus(s, y)}});
  r.tables.push_back(std::move(mod));

  const auto skew = classify_skew(s);
  std::optional<double> slope;
  try {
    slope = order_residual(s, kOrderSamples);
  } catch (const std::invalid_argument&) {
    // residual below round-off at high degree
  }
  const bool a_stable = skew.max_modulus <= 1.0 + 1e-13;
  r.summary = {{"l", a.l},
               {"m", a.m},
               {"p", to_std(s.p)},
               {"q", to_std(s.q)},
               {"order", s.order()},
               {"local_order_slope", optional_json(slope)},
               {"max_abs_R_imag_axis", skew.max_modulus},
               {"a_stable", a_stable},
               {"eval_imag", eval}};

  r.lines.push_back(s.name() + "(z) = P(z)/Q(z) approximating exp(-z), order " + std::to_string(s.order()));
  r.lines.push_back("P coefficients: " + join(s.p));
  r.lines.push_back("Q coefficients: " + join(s.q));
  for (const auto& e : eval)
    r.lines.push_back("|R(i*" + format_double(e["y"].get<double>()) + ")| = " + format_double(e["abs_R"].get<double>()));
  r.lines.push_back("max |R(iy)| over sampled y = " + format_double(skew.max_modulus));
  r.lines.push_back(std::string("A-stability: ") + (a_stable ? "A-stable (|R| <= 1 on Re z = 0)" : "not A-stable"));
  if (slope) r.lines.push_back("measured local order slope = " + format_double(*slope));
  return r;
}

Report cmd_classify(const ClassifyArgs& a) {
  const auto s = pade_coeffs<double>(a.l, a.m);
  Report r;
  r.command = "classify";
  r.params = {{"l", a.l}, {"m", a.m}, {"kind", a.kind}};
  Table t{"classification", {"l", "m", "kind", "verdict", "bound", "witness"}, {}};

  if (a.kind == "skew") {
    const auto c = classify_skew(s);
    t.add_row({std::int64_t(a.l), std::int64_t(a.m), a.kind, std::string(to_string(c.verdict)), std::string{},
               optional_cell(c.witness_y)});
    r.summary = {{"verdict", to_string(c.verdict)},
                 {"rule", to_string(skew_rule(a.l, a.m))},
                 {"max_deviation", c.max_deviation},
                 {"max_modulus", c.max_modulus},
                 {"witness_y", optional_json(c.witness_y)}};
    r.lines.push_back(s.name() + " for skew-symmetric problems: " + std::string(to_string(c.verdict)));
    std::ostringstream os;
    os << "max | |R(iy)| - 1 | = " << format_double(c.max_deviation);
    if (c.witness_y) os << "; growth witness y = " << format_double(*c.witness_y);
    r.lines.push_back(os.str());
  } else if (a.kind == "selfadjoint") {
    r.params["x_max"] = a.x_max;
    const auto c = classify_selfadjoint(s, a.x_max);
    t.add_row({std::int64_t(a.l), std::int64_t(a.m), a.kind, std::string(to_string(c.verdict)),
               optional_cell(c.condition), optional_cell(c.witness_x)});
    r.summary = {{"verdict", to_string(c.verdict)},
                 {"bound", optional_json(c.condition)},
                 {"witness_x", optional_json(c.witness_x)},
                 {"reason", c.reason}};
    r.lines.push_back(s.name() + " for self-adjoint problems: " + std::string(to_string(c.verdict)));
    if (c.condition) r.lines.push_back("condition: tau * mu_max <= " + format_double(*c.condition));
    r.lines.push_back(c.reason);
  } else if (a.kind == "operator") {
    r.params.update({{"operator", a.op}, {"chi", a.chi}, {"M", a.M}, {"tau", a.tau},
                     {"skew_threshold", a.skew_threshold}});
    const Grid<double> grid(a.M);
    const auto op = build_operator(parse_operator_spec(a.op, a.chi), grid);
    const auto rep = classify_operator_problem(op, s, a.tau, a.skew_threshold);
    json j = {{"route", to_string(rep.route)},
              {"skew_ratio", rep.skew_ratio},
              {"max_re_mu", rep.max_re_mu},
              {"max_abs_im_mu", rep.max_abs_im_mu},
              {"x_max", rep.x_max}};
    r.lines.push_back("operator " + op.label() + " with " + s.name() + ": " + std::string(to_string(rep.route)));
    if (rep.skew) {
      j["skew_verdict"] = to_string(rep.skew->verdict);
      t.add_row({std::int64_t(a.l), std::int64_t(a.m), std::string("skew"), std::string(to_string(rep.skew->verdict)),
                 std::string{}, optional_cell(rep.skew->witness_y)});
      r.lines.push_back("  skew part: " + std::string(to_string(rep.skew->verdict)));
    }
    if (rep.selfadjoint) {
      j["selfadjoint_verdict"] = to_string(rep.selfadjoint->verdict);
      j["bound"] = optional_json(rep.selfadjoint->condition);
      t.add_row({std::int64_t(a.l), std::int64_t(a.m), std::string("selfadjoint"),
                 std::string(to_string(rep.selfadjoint->verdict)), optional_cell(rep.selfadjoint->condition),
                 optional_cell(rep.selfadjoint->witness_x)});
      r.lines.push_back("  symmetric part: " + std::string(to_string(rep.selfadjoint->verdict)) +
                        " (tau * max Re mu = " + format_double(rep.x_max) + ")");
    }
    j["notes"] = rep.notes;
    for (const auto& n : rep.notes) r.lines.push_back("  note: " + n);
    r.warnings = rep.warnings;
    r.summary = std::move(j);
  } else {
    throw std::invalid_argument("unknown classification kind '" + a.kind + "' (expected skew, selfadjoint or operator)");
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_simulate(const SimulateArgs& a) {
  const auto config = make_config(a);
  const auto traj = simulate(config);
  const Grid<double> grid(a.M);
  const int K = grid.max_harmonic();

  Report r;
  r.command = "simulate";
  r.params = simulate_params(a);
  r.warnings = traj.warnings;

  Table norms{"norms", {"step", "t", "norm", "error_vs_exact"}, {}};
  double drift = 0.0, max_err = 0.0;
  for (std::size_t n = 0; n < traj.norms.size(); ++n) {
    norms.add_row({std::int64_t(n), traj.times[n], traj.norms[n], traj.errors[n]});
    drift = std::max(drift, std::abs(traj.norms[n] - traj.norms[0]));
    max_err = std::max(max_err, traj.errors[n]);
  }
  r.tables.push_back(std::move(norms));

  std::vector<int> tracked = a.modes;
  if (tracked.empty() && !a.gaussian_sigma && a.values.empty()) tracked = {1};
  if (tracked.empty())
    for (int m = -K; m <= K; ++m) tracked.push_back(m);
  const bool with_ratio = a.modes.size() >= 2;
  Table amps{"amplitudes", {"step", "t"}, {}};
  for (int m : tracked) amps.columns.push_back("amp_" + std::to_string(m));
  if (with_ratio) amps.columns.push_back("ratio");
  bool ratio_decreasing = true;
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < traj.coefficients.size(); ++n) {
    std::vector<Cell> row{std::int64_t(n), traj.times[n]};
    for (int m : tracked) row.emplace_back(std::abs(traj.coefficients[n][m + K]));
    if (with_ratio) {
      const double ratio =
          std::abs(traj.coefficients[n][tracked.back() + K]) / std::abs(traj.coefficients[n][tracked.front() + K]);
      row.emplace_back(ratio);
      if (n > 0 && !(ratio < prev_ratio)) ratio_decreasing = false;
      prev_ratio = ratio;
    }
    amps.add_row(std::move(row));
  }
  r.tables.push_back(std::move(amps));

  Table snap{"snapshot", {"i", "x", "re", "im"}, {}};
  const auto& last = traj.snapshots.back();
  for (int i = 0; i < grid.M(); ++i)
    snap.add_row({std::int64_t(i), grid.x(i), last.values()[i].real(), last.values()[i].imag()});
  r.tables.push_back(std::move(snap));

  const auto check = stability_estimate_check(traj);
  r.summary = {{"final_time", config.final_time()},
               {"initial_norm", traj.norms.front()},
               {"final_norm", traj.norms.back()},
               {"max_norm_drift", drift},
               {"max_error_vs_exact", max_err},
               {"norms_nonincreasing", check.nonincreasing},
               {"growth_step", check.witness_step ? json(*check.witness_step) : json(nullptr)}};
  if (with_ratio) r.summary["ratio_strictly_decreasing"] = ratio_decreasing;
  r.summary["notes"] = traj.notes;

  std::ostringstream os;
  os << "simulated " << config.op.label() << " with " << pade_coeffs<double>(a.l, a.m).name() << ", M = " << a.M
     << ", tau = " << format_double(a.tau) << ", " << a.steps << " steps";
  r.lines.push_back(os.str());
  r.lines.push_back("norm: " + format_double(traj.norms.front()) + " -> " + format_double(traj.norms.back()) +
                    " (max drift " + format_double(drift) + ")");
  r.lines.push_back("max error vs exact discrete evolution: " + format_double(max_err));
  if (!check.nonincreasing) r.lines.push_back("norm grows at step " + std::to_string(*check.witness_step));
  return r;
}

Report cmd_sweep(const SweepArgs& a) {
  Report r;
  r.command = "sweep";
  if (a.dim == "tau") {
    std::vector<double> taus = a.taus.empty() ? std::vector<double>{0.1, 0.05, 0.025, 0.0125} : a.taus;
    r.params = simulate_params(a.base);
    r.params["dim"] = "tau";
    r.params["taus"] = taus;
    r.params["final_time"] = a.final_time;
    const auto result = convergence_study(make_config(a.base), taus, a.final_time);
    Table t{"sweep", {"tau", "steps", "error"}, {}};
    for (std::size_t i = 0; i < result.taus.size(); ++i)
      t.add_row({result.taus[i], std::int64_t(std::llround(a.final_time / result.taus[i])), result.errors[i]});
    r.tables.push_back(std::move(t));
    r.summary = {{"slope", result.slope}, {"expected_order", a.base.l + a.base.m}};
    r.lines.push_back("time convergence slope = " + format_double(result.slope) + " (scheme order " +
                      std::to_string(a.base.l + a.base.m) + ")");
  } else if (a.dim == "M") {
    if (a.Ms.size() < 2) throw std::invalid_argument("M sweep needs at least two grid sizes");
    if (a.component != "full" && a.component != "re" && a.component != "im")
      throw std::invalid_argument("unknown component '" + a.component + "' (expected full, re or im)");
    const auto spec = parse_operator_spec(a.base.op, a.base.chi);
    r.params = {{"dim", "M"}, {"operator", a.base.op}, {"chi", a.base.chi}, {"Ms", a.Ms},
                {"harmonic", a.harmonic}, {"component", a.component}};
    Table t{"sweep", {"M", "h", "re_mu", "im_mu", "re_lambda", "im_lambda", "error"}, {}};
    std::vector<double> hs, errs;
    for (int M : a.Ms) {
      const Grid<double> grid(M);
      const auto mu = discrete_eigenvalue(spec, grid, a.harmonic);
      const auto lambda = continuous_eigenvalue<double>(spec, a.harmonic);
      const double err = a.component == "full" ? std::abs(mu - lambda)
                         : a.component == "re" ? std::abs(mu.real() - lambda.real())
                                               : std::abs(mu.imag() - lambda.imag());
      t.add_row({std::int64_t(M), grid.h(), mu.real(), mu.imag(), lambda.real(), lambda.imag(), err});
      hs.push_back(grid.h());
      errs.push_back(err);
    }
    r.tables.push_back(std::move(t));
    const double slope = loglog_slope(hs, errs);
    r.summary = {{"slope", slope}};
    r.lines.push_back("spectral convergence slope for " + spec.label() + " at m = " + std::to_string(a.harmonic) +
                      ": " + format_double(slope));
  } else if (a.dim == "lm") {
    if (a.kind != "skew" && a.kind != "selfadjoint")
      throw std::invalid_argument("unknown classification kind '" + a.kind + "' (expected skew or selfadjoint)");
    r.params = {{"dim", "lm"}, {"ls", a.ls}, {"ms", a.ms}, {"kind", a.kind}, {"x_max", a.x_max}};
    Table t{"sweep", {"l", "m", "verdict", "bound"}, {}};
    json sm = json::array();
    bool diagonal_only = true;
    for (int l : a.ls) {
      for (int m : a.ms) {
        if (l + m < 1) continue;
        const auto s = pade_coeffs<double>(l, m);
        std::string verdict;
        std::optional<double> bound;
        bool is_sm = false;
        if (a.kind == "skew") {
          const auto c = classify_skew(s);
          verdict = to_string(c.verdict);
          is_sm = c.verdict == SkewVerdict::SMStable;
        } else {
          const auto c = classify_selfadjoint(s, a.x_max);
          verdict = to_string(c.verdict);
          bound = c.condition;
          is_sm = c.verdict == SelfAdjointVerdict::SMStable;
        }
        if (is_sm) sm.push_back({l, m});
        if (is_sm != (l == m)) diagonal_only = false;
        t.add_row({std::int64_t(l), std::int64_t(m), verdict, optional_cell(bound)});
      }
    }
    if (t.rows.empty()) throw std::invalid_argument("empty (l, m) sweep");
    r.tables.push_back(std::move(t));
    r.summary = {{"sm_stable", sm}, {"sm_stable_exactly_on_diagonal", diagonal_only}};
    r.lines.push_back("SM-stable pairs: " + sm.dump());
  } else {
    throw std::invalid_argument("unknown sweep dimension '" + a.dim + "' (expected tau, M or lm)");
  }
  return r;
}

}  // namespace smstab::cli
