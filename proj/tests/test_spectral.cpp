#include "smstab/fit.hpp"
#include "smstab/spectral.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace smstab;

namespace {

std::vector<OperatorSpec> builtin_specs() {
  std::vector<OperatorSpec> specs;
  for (auto c : kConvectionSchemes) specs.push_back(OperatorSpec::pure(c));
  for (auto d : kDiffusionSchemes) specs.push_back(OperatorSpec::pure(d));
  specs.push_back(OperatorSpec::mixed(0.5, ConvectionScheme::ThirdOrder, DiffusionScheme::Fourth));
  specs.push_back(OperatorSpec::mixed(0.3, ConvectionScheme::Upwind1, DiffusionScheme::Second));
  return specs;
}

double rel_err(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("continuous eigenvalues") {
  constexpr double pi = std::numbers::pi;
  CHECK(std::abs(continuous_eigenvalue(1.0, 1) - std::complex<double>(0, 2 * pi)) < 1e-15);
  CHECK(continuous_eigenvalue(0.0, 0) == std::complex<double>(0));
  CHECK(std::abs(continuous_eigenvalue(0.0, 3) - 36 * pi * pi) < 1e-12);
  CHECK(std::abs(continuous_eigenvalue(0.5, 1) - std::complex<double>(2 * pi * pi, pi)) < 1e-13);
}

TEST_CASE("discrete eigenvalues: closed forms") {
  const Grid<double> g31(31);
  for (int m = -15; m <= 15; ++m) CHECK(discrete_eigenvalue(ConvectionScheme::Central, g31, m).real() == 0.0);
  for (const auto& spec : builtin_specs()) CHECK(std::abs(discrete_eigenvalue(spec, g31, 0)) < 1e-15);

  SUBCASE("upwind1, M = 5, m = 1 against the pointwise Rayleigh ratio") {
    const Grid<double> g(5);
    const auto op = build_convection(ConvectionScheme::Upwind1, g);
    const auto w = fourier_mode(g, 1);
    const auto Aw = apply(op, w);
    const double pi = std::numbers::pi;
    const std::complex<double> expect{10 * std::sin(pi / 5) * std::sin(pi / 5), 5 * std::sin(2 * pi / 5)};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(Aw.values()[i] / w.values()[i] - expect) < 1e-13);
    CHECK(std::abs(discrete_eigenvalue(ConvectionScheme::Upwind1, g, 1) - expect) < 1e-13);
  }

  CHECK_THROWS_AS(discrete_eigenvalue(ConvectionScheme::Central, g31, 16), std::out_of_range);
}

TEST_CASE("numeric eigenvalues agree with closed forms") {
  for (int M : {5, 31}) {
    const Grid<double> g(M);
    const int K = g.max_harmonic();
    for (const auto& spec : builtin_specs()) {
      if (spec.diffusion == DiffusionScheme::Fourth && M < 5) continue;
      const auto op = build_operator(spec, g);
      for (int m = -K; m <= K; ++m) {
        const auto closed = discrete_eigenvalue(spec, g, m);
        CHECK(rel_err(numeric_eigenvalue(op, m), closed) < 1e-12);
        CHECK(rel_err(stencil_symbol(op, m), closed) < 1e-12);
      }
    }
  }
  const Grid<double> g(31);
  CHECK(numeric_eigenvalue(StencilOperator<double>::zero(g), 3) == std::complex<double>(0));

  const auto central = build_convection(ConvectionScheme::Central, g);
  CHECK(std::abs(numeric_eigenvalue(central, 5) - std::complex<double>(0, std::sin(2 * std::numbers::pi * 5 / 31) * 31)) <
        1e-12);

  const auto third = build_convection(ConvectionScheme::ThirdOrder, g);
  for (int m = -15; m <= 15; ++m) {
    const auto w = fourier_mode(g, m);
    CHECK(norm(apply(third, w) - discrete_eigenvalue(ConvectionScheme::ThirdOrder, g, m) * w) < 1e-12);
  }
}

TEST_CASE("spectrum tables") {
  const Grid<double> g(31);
  const auto central = spectrum_table(OperatorSpec::pure(ConvectionScheme::Central), g);
  CHECK(central.entries().size() == 31);
  CHECK(central.entries().front().m == -15);
  CHECK(central.entries().back().m == 15);
  for (const auto& e : central.entries()) CHECK(e.mu.real() == 0.0);

  const auto up1 = spectrum_table(OperatorSpec::pure(ConvectionScheme::Upwind1), g);
  const auto up2 = spectrum_table(OperatorSpec::pure(ConvectionScheme::Upwind2), g);
  const auto third = spectrum_table(OperatorSpec::pure(ConvectionScheme::ThirdOrder), g);
  for (int m = -15; m <= 15; ++m) {
    CHECK(std::abs(up1.mu(m).imag() - central.mu(m).imag()) <= 1e-13);
    CHECK(third.mu(m).real() == doctest::Approx(up2.mu(m).real() / 3).epsilon(1e-12));
  }

  for (const auto& spec : builtin_specs()) {
    const auto s = spectrum_table(spec, g);
    for (int m = 1; m <= 15; ++m) CHECK(std::abs(s.mu(-m) - std::conj(s.mu(m))) < 1e-13 * std::max(1.0, std::abs(s.mu(m))));
    for (const auto& e : s.entries()) CHECK(e.mu.real() >= 0.0);
  }
}

TEST_CASE("dissipation ordering at M = 31") {
  const Grid<double> g(31);
  for (int m = -15; m <= 15; ++m) {
    const double r1 = discrete_eigenvalue(ConvectionScheme::Upwind1, g, m).real();
    const double r2 = discrete_eigenvalue(ConvectionScheme::Upwind2, g, m).real();
    const double r3 = discrete_eigenvalue(ConvectionScheme::ThirdOrder, g, m).real();
    CHECK(r3 <= r2);
    if (m != 0 && std::abs(m) <= 3) CHECK(r3 < r1);
  }
}

TEST_CASE("spectral convergence orders") {
  // odd M near 31, 62, 125
  const int Ms[] = {31, 63, 125};
  auto slope = [&](auto error_at) {
    std::vector<double> hs, errs;
    for (int M : Ms) {
      const Grid<double> g(M);
      hs.push_back(g.h());
      errs.push_back(error_at(g));
    }
    return loglog_slope(hs, errs);
  };
  auto full = [&](OperatorSpec spec) {
    return slope([&](const Grid<double>& g) {
      return std::abs(discrete_eigenvalue(spec, g, 1) - continuous_eigenvalue<double>(spec, 1));
    });
  };
  CHECK(std::abs(full(OperatorSpec::pure(ConvectionScheme::Upwind1)) - 1) < 0.2);
  CHECK(std::abs(full(OperatorSpec::pure(ConvectionScheme::Central)) - 2) < 0.2);
  CHECK(std::abs(full(OperatorSpec::pure(ConvectionScheme::ThirdOrder)) - 3) < 0.2);
  CHECK(std::abs(full(OperatorSpec::pure(DiffusionScheme::Second)) - 2) < 0.2);
  CHECK(std::abs(full(OperatorSpec::pure(DiffusionScheme::Fourth)) - 4) < 0.2);
  const double up2_im = slope([](const Grid<double>& g) {
    return std::abs(discrete_eigenvalue(ConvectionScheme::Upwind2, g, 1).imag() - 2 * std::numbers::pi);
  });
  CHECK(std::abs(up2_im - 2) < 0.2);
}

TEST_CASE("exact evolution") {
  const Grid<double> g(31);
  std::mt19937_64 rng(17);
  const auto y0 = smstab::testing::random_function(g, rng);

  const auto central = spectrum_table(OperatorSpec::pure(ConvectionScheme::Central), g);
  CHECK(smstab::testing::max_abs_diff(exact_evolution(y0, central, 0.0), y0) < 1e-12);
  for (double t : {0.1, 1.0, 7.3}) CHECK(norm(exact_evolution(y0, central, t)) == doctest::Approx(norm(y0)).epsilon(1e-12));

  const auto diff2 = spectrum_table(OperatorSpec::pure(DiffusionScheme::Second), g);
  const auto w1 = fourier_mode(g, 1);
  const auto yt = exact_evolution(w1, diff2, 0.01);
  const double amp = std::exp(-diff2.mu(1).real() * 0.01);
  CHECK(smstab::testing::max_abs_diff(yt, amp * w1) < 1e-13);

  // continuous evolution of a single mode is the mode times exp(-lambda t)
  const auto yc = exact_evolution_continuous(w1, 1.0, 0.25);
  CHECK(smstab::testing::max_abs_diff(yc, std::exp(-continuous_eigenvalue(1.0, 1) * 0.25) * w1) < 1e-13);

  CHECK_THROWS_AS(exact_evolution(y0, central, -1.0), std::invalid_argument);
}
