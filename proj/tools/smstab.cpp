// smstab: spectra, Pade schemes, SM-stability verdicts and simulations from the command line.
//
// Exit codes: 0 success, 2 invalid input, 1 numerical failure.

#include "smstab/commands.hpp"
#include "smstab/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>

namespace {

using namespace smstab;

void add_simulation_flags(CLI::App* app, cli::SimulateArgs& a) {
  app->add_option("--M", a.M, "grid size (odd, >= 3)");
  app->add_option("--operator", a.op, "upwind1|central|upwind2|third3|diff2|diff4 or conv+diff");
  app->add_option("--chi", a.chi, "convection weight for conv+diff operators")->check(CLI::Range(0.0, 1.0));
  app->add_option("--l", a.l, "Pade numerator degree");
  app->add_option("--m", a.m, "Pade denominator degree");
  app->add_option("--tau", a.tau, "time step");
  app->add_option("--steps", a.steps, "number of time steps");
  app->add_option("--mode", a.modes, "initial Fourier modes (unit amplitude each)")->delimiter(',');
  app->add_option("--gaussian-sigma", a.gaussian_sigma, "periodized gaussian initial profile width");
  app->add_option("--gaussian-center", a.gaussian_center, "gaussian center in [0, 1)");
  app->add_option("--values", a.values, "explicit real initial values, comma separated")->delimiter(',');
  app->add_option("--path", a.path, "spectral|physical");
  app->add_flag("--allow-unstable", a.allow_unstable, "permit l > m schemes");
  app->add_option("--keep-every", a.keep_every, "keep every k-th snapshot");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-mimetic stability analysis of periodic difference schemes"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format;
  std::string out_dir;
  std::string name;
  if (const char* env = std::getenv("SMSTAB_OUTPUT_DIR")) out_dir = env;
  app.add_option("--format", format, "text|csv|json (default depends on the command)");
  app.add_option("--out-dir", out_dir, "write data files and a manifest here (env SMSTAB_OUTPUT_DIR)");
  app.add_option("--name", name, "file stem for written outputs (default: command name)");

  std::function<Report()> run;
  std::string default_format;

  cli::SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "per-harmonic discrete and continuous eigenvalues");
  sp->add_option("--M", spectrum.M, "grid size (odd, >= 3)");
  sp->add_option("--operator", spectrum.op, "operator name or conv+diff pair");
  sp->add_option("--chi", spectrum.chi, "convection weight")->check(CLI::Range(0.0, 1.0));
  sp->callback([&] {
    run = [&] { return cli::cmd_spectrum(spectrum); };
    default_format = "csv";
  });

  cli::PadeArgs pade;
  auto* pd = app.add_subcommand("pade", "Pade approximant coefficients and stability function");
  pd->add_option("--l", pade.l, "numerator degree");
  pd->add_option("--m", pade.m, "denominator degree");
  pd->add_option("--eval-imag", pade.eval_imag, "evaluate |R(iy)| at these y")->delimiter(',');
  pd->callback([&] {
    run = [&] { return cli::cmd_pade(pade); };
    default_format = "text";
  });

  cli::ClassifyArgs cls;
  auto* cl = app.add_subcommand("classify", "SM-stability verdict for a Pade scheme");
  cl->add_option("--l", cls.l, "numerator degree");
  cl->add_option("--m", cls.m, "denominator degree");
  cl->add_option("--kind", cls.kind, "skew|selfadjoint|operator");
  cl->add_option("--x-max", cls.x_max, "largest tau*mu to certify (selfadjoint)");
  cl->add_option("--operator", cls.op, "operator for --kind operator");
  cl->add_option("--chi", cls.chi, "convection weight")->check(CLI::Range(0.0, 1.0));
  cl->add_option("--M", cls.M, "grid size for --kind operator");
  cl->add_option("--tau", cls.tau, "time step for --kind operator");
  cl->add_option("--skew-threshold", cls.skew_threshold, "max|Im mu| / max Re mu above which skew dominates");
  cl->callback([&] {
    run = [&] { return cli::cmd_classify(cls); };
    default_format = "text";
  });

  cli::SimulateArgs sim;
  auto* sm = app.add_subcommand("simulate", "advance the semi-discrete problem with a Pade two-level scheme");
  add_simulation_flags(sm, sim);
  sm->callback([&] {
    run = [&] { return cli::cmd_simulate(sim); };
    default_format = "csv";
  });

  cli::SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "convergence studies and classification grids");
  sw->add_option("--dim", sweep.dim, "tau|M|lm");
  add_simulation_flags(sw, sweep.base);
  sw->add_option("--taus", sweep.taus, "time steps for a tau sweep")->delimiter(',');
  sw->add_option("--T", sweep.final_time, "final time for a tau sweep");
  sw->add_option("--Ms", sweep.Ms, "grid sizes for an M sweep")->delimiter(',');
  sw->add_option("--harmonic", sweep.harmonic, "harmonic index for an M sweep");
  sw->add_option("--component", sweep.component, "full|re|im eigenvalue error for an M sweep");
  sw->add_option("--ls", sweep.ls, "numerator degrees for an lm sweep")->delimiter(',');
  sw->add_option("--ms", sweep.ms, "denominator degrees for an lm sweep")->delimiter(',');
  sw->add_option("--kind", sweep.kind, "skew|selfadjoint for an lm sweep");
  sw->add_option("--x-max", sweep.x_max, "certification range for selfadjoint sweeps");
  sw->callback([&] {
    run = [&] { return cli::cmd_sweep(sweep); };
    default_format = "csv";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto fmt = parse_format(format.empty() ? default_format : format);
    const auto report = run();
    if (out_dir.empty()) {
      std::cout << render(report, fmt);
      if (fmt == OutputFormat::Csv) std::cerr << to_text(report);
    } else {
      const auto written = write_report(report, fmt == OutputFormat::Json ? OutputFormat::Json : OutputFormat::Csv,
                                        out_dir, name.empty() ? report.command : name);
      std::cout << to_text(report);
      for (const auto& p : written.data) std::cout << "wrote " << p.string() << '\n';
      std::cout << "wrote " << written.manifest.string() << '\n';
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
