#pragma once

#include "smstab/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace smstab::cli {

struct SpectrumArgs {
  int M = 31;
  std::string op = "central";
  double chi = 0.5;
};

struct PadeArgs {
  int l = 1;
  int m = 1;
  std::vector<double> eval_imag;
};

struct ClassifyArgs {
  int l = 1;
  int m = 1;
  std::string kind = "skew";  // skew | selfadjoint | operator
  double x_max = 1e6;
  // kind == operator
  std::string op = "central";
  double chi = 0.5;
  int M = 31;
  double tau = 0.01;
  double skew_threshold = 10.0;
};

struct SimulateArgs {
  int M = 31;
  std::string op = "central";
  double chi = 0.5;
  int l = 1;
  int m = 1;
  double tau = 0.01;
  int steps = 100;
  std::vector<int> modes;            // default: mode 1
  std::optional<double> gaussian_sigma;
  double gaussian_center = 0.5;
  std::vector<double> values;        // explicit real initial values
  std::string path = "spectral";     // spectral | physical
  bool allow_unstable = false;
  int keep_every = 0;
};

struct SweepArgs {
  std::string dim = "tau";           // tau | M | lm
  // tau sweep
  SimulateArgs base;
  std::vector<double> taus;
  double final_time = 1.0;
  // M sweep
  std::vector<int> Ms{31, 63, 125};
  int harmonic = 1;
  std::string component = "full";   // full | re | im
  // lm sweep
  std::vector<int> ls{0, 1, 2};
  std::vector<int> ms{1, 2};
  std::string kind = "skew";
  double x_max = 1e6;
};

Report cmd_spectrum(const SpectrumArgs& a);
Report cmd_pade(const PadeArgs& a);
Report cmd_classify(const ClassifyArgs& a);
Report cmd_simulate(const SimulateArgs& a);
Report cmd_sweep(const SweepArgs& a);

}  // namespace smstab::cli
