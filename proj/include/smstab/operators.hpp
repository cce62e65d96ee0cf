#pragma once

#include "smstab/grid.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

namespace smstab {

enum class ConvectionScheme { Upwind1, Central, Upwind2, ThirdOrder };
enum class DiffusionScheme { Second, Fourth };

inline constexpr ConvectionScheme kConvectionSchemes[] = {ConvectionScheme::Upwind1, ConvectionScheme::Central,
                                                          ConvectionScheme::Upwind2, ConvectionScheme::ThirdOrder};
inline constexpr DiffusionScheme kDiffusionSchemes[] = {DiffusionScheme::Second, DiffusionScheme::Fourth};

inline std::string_view to_string(ConvectionScheme s) {
  switch (s) {
    case ConvectionScheme::Upwind1: return "upwind1";
    case ConvectionScheme::Central: return "central";
    case ConvectionScheme::Upwind2: return "upwind2";
    case ConvectionScheme::ThirdOrder: return "third3";
  }
  return "?";
}

inline std::string_view to_string(DiffusionScheme s) {
  switch (s) {
    case DiffusionScheme::Second: return "diff2";
    case DiffusionScheme::Fourth: return "diff4";
  }
  return "?";
}

/// Which discrete operator Lambda = chi C + (1 - chi) D is meant.
/// Pure convection has chi = 1 and no diffusion part; pure diffusion has chi = 0.
struct OperatorSpec {
  std::optional<ConvectionScheme> convection;
  std::optional<DiffusionScheme> diffusion;
  double chi = 1.0;

  static OperatorSpec pure(ConvectionScheme c) { return {c, std::nullopt, 1.0}; }
  static OperatorSpec pure(DiffusionScheme d) { return {std::nullopt, d, 0.0}; }
  static OperatorSpec mixed(double chi, ConvectionScheme c, DiffusionScheme d) {
    if (!(chi >= 0.0 && chi <= 1.0)) throw std::invalid_argument("chi must lie in [0, 1], got " + std::to_string(chi));
    return {c, d, chi};
  }

  bool is_mixed() const { return convection && diffusion; }

  std::string label() const {
    std::ostringstream os;
    if (is_mixed()) {
      os << "chi=" << chi << "*" << to_string(*convection) << "+(1-chi)*" << to_string(*diffusion);
    } else if (convection) {
      os << to_string(*convection);
    } else if (diffusion) {
      os << to_string(*diffusion);
    }
    return os.str();
  }

  bool operator==(const OperatorSpec&) const = default;
};

/// Parses the CLI operator syntax: "central", "diff4", or "upwind2+diff2".
/// `chi` is only used for the pair syntax.
inline OperatorSpec parse_operator_spec(std::string_view text, double chi = 0.5) {
  auto conv = [](std::string_view s) -> std::optional<ConvectionScheme> {
    for (auto c : kConvectionSchemes)
      if (to_string(c) == s) return c;
    return std::nullopt;
  };
  auto diff = [](std::string_view s) -> std::optional<DiffusionScheme> {
    for (auto d : kDiffusionSchemes)
      if (to_string(d) == s) return d;
    return std::nullopt;
  };
  const auto plus = text.find('+');
  if (plus == std::string_view::npos) {
    if (auto c = conv(text)) return OperatorSpec::pure(*c);
    if (auto d = diff(text)) return OperatorSpec::pure(*d);
  } else {
    auto c = conv(text.substr(0, plus));
    auto d = diff(text.substr(plus + 1));
    if (c && d) return OperatorSpec::mixed(chi, *c, *d);
  }
  throw std::invalid_argument("unknown operator '" + std::string(text) +
                              "' (expected one of upwind1, central, upwind2, third3, diff2, diff4, "
                              "or a pair such as central+diff2)");
}

/// Constant-coefficient periodic difference operator stored as offset -> coefficient.
/// Action: (Op y)_i = sum_k taps[k] y_{(i + k) mod M}.
template <typename Real = double>
class StencilOperator {
 public:
  using Taps = std::map<int, Real>;

  StencilOperator(const Grid<Real>& grid, Taps taps, std::string label = {})
      : grid_(grid), taps_(std::move(taps)), label_(std::move(label)) {
    std::erase_if(taps_, [](const auto& kv) { return kv.second == Real(0); });
  }

  static StencilOperator zero(const Grid<Real>& grid) { return StencilOperator(grid, {}, "zero"); }

  const Grid<Real>& grid() const { return grid_; }
  const Taps& taps() const { return taps_; }
  const std::string& label() const { return label_; }

  Real tap(int offset) const {
    auto it = taps_.find(offset);
    return it == taps_.end() ? Real(0) : it->second;
  }

  int width() const {
    int w = 0;
    for (const auto& [k, v] : taps_) w = std::max(w, std::abs(k));
    return w;
  }

  bool is_zero() const { return taps_.empty(); }

  /// Tapwise equality; zero taps are never stored so this is exact structural equality.
  bool operator==(const StencilOperator& o) const { return grid_ == o.grid_ && taps_ == o.taps_; }

  StencilOperator operator-() const {
    Taps t;
    for (const auto& [k, v] : taps_) t[k] = -v;
    return StencilOperator(grid_, std::move(t), "-(" + label_ + ")");
  }

 private:
  Grid<Real> grid_;
  Taps taps_;
  std::string label_;
};

template <typename Real>
StencilOperator<Real> build_convection(ConvectionScheme scheme, const Grid<Real>& grid) {
  const Real h = grid.h();
  typename StencilOperator<Real>::Taps t;
  switch (scheme) {
    case ConvectionScheme::Upwind1:
      t = {{0, Real(1) / h}, {-1, Real(-1) / h}};
      break;
    case ConvectionScheme::Central:
      t = {{1, Real(1) / (2 * h)}, {-1, Real(-1) / (2 * h)}};
      break;
    case ConvectionScheme::Upwind2:
      t = {{0, Real(3) / (2 * h)}, {-1, Real(-4) / (2 * h)}, {-2, Real(1) / (2 * h)}};
      break;
    case ConvectionScheme::ThirdOrder:
      t = {{1, Real(2) / (6 * h)}, {0, Real(3) / (6 * h)}, {-1, Real(-6) / (6 * h)}, {-2, Real(1) / (6 * h)}};
      break;
  }
  return StencilOperator<Real>(grid, std::move(t), std::string(to_string(scheme)));
}

template <typename Real>
StencilOperator<Real> build_diffusion(DiffusionScheme scheme, const Grid<Real>& grid) {
  const Real h2 = grid.h() * grid.h();
  typename StencilOperator<Real>::Taps t;
  switch (scheme) {
    case DiffusionScheme::Second:
      t = {{-1, Real(-1) / h2}, {0, Real(2) / h2}, {1, Real(-1) / h2}};
      break;
    case DiffusionScheme::Fourth:
      // -d+d- + (h^2/12) (d+d-)^2 expanded
      if (grid.M() < 5) {
        throw std::invalid_argument("fourth-order diffusion needs M >= 5 (5-point stencil), got M = " +
                                    std::to_string(grid.M()));
      }
      t = {{-2, Real(1) / (12 * h2)},
           {-1, Real(-16) / (12 * h2)},
           {0, Real(30) / (12 * h2)},
           {1, Real(-16) / (12 * h2)},
           {2, Real(1) / (12 * h2)}};
      break;
  }
  return StencilOperator<Real>(grid, std::move(t), std::string(to_string(scheme)));
}

/// Lambda = chi conv + (1 - chi) diff, tapwise.
template <typename Real>
StencilOperator<Real> build_convection_diffusion(Real chi, const StencilOperator<Real>& conv,
                                                 const StencilOperator<Real>& diff) {
  if (!(chi >= Real(0) && chi <= Real(1))) {
    throw std::invalid_argument("chi must lie in [0, 1], got " + std::to_string(double(chi)));
  }
  if (!(conv.grid() == diff.grid())) throw std::invalid_argument("convection and diffusion operators use different grids");
  typename StencilOperator<Real>::Taps t;
  for (const auto& [k, v] : conv.taps()) t[k] += chi * v;
  for (const auto& [k, v] : diff.taps()) t[k] += (Real(1) - chi) * v;
  std::ostringstream label;
  label << "chi=" << double(chi) << "*" << conv.label() << "+(1-chi)*" << diff.label();
  return StencilOperator<Real>(conv.grid(), std::move(t), label.str());
}

template <typename Real>
StencilOperator<Real> build_operator(const OperatorSpec& spec, const Grid<Real>& grid) {
  if (spec.is_mixed()) {
    return build_convection_diffusion(Real(spec.chi), build_convection(*spec.convection, grid),
                                      build_diffusion(*spec.diffusion, grid));
  }
  if (spec.convection) return build_convection(*spec.convection, grid);
  if (spec.diffusion) return build_diffusion(*spec.diffusion, grid);
  throw std::invalid_argument("empty operator specification");
}

template <typename Real>
GridFunction<Real> apply(const StencilOperator<Real>& op, const GridFunction<Real>& y) {
  if (!(op.grid() == y.grid())) throw std::invalid_argument("operator and grid function use different grids");
  const int M = y.size();
  GridFunction<Real> out(y.grid());
  for (int i = 0; i < M; ++i) {
    std::complex<Real> acc{0};
    for (const auto& [k, v] : op.taps()) acc += v * y.values()[((i + k) % M + M) % M];
    out.values()[i] = acc;
  }
  return out;
}

/// taps'[k] = taps[-k]; (Op y, w) = (y, Op' w).
template <typename Real>
StencilOperator<Real> adjoint(const StencilOperator<Real>& op) {
  typename StencilOperator<Real>::Taps t;
  for (const auto& [k, v] : op.taps()) t[-k] = v;
  return StencilOperator<Real>(op.grid(), std::move(t), op.label() + "*");
}

template <typename Real>
struct SymmetricSkewSplit {
  StencilOperator<Real> symmetric;  // (Op + Op*) / 2
  StencilOperator<Real> skew;       // (Op - Op*) / 2
};

template <typename Real>
SymmetricSkewSplit<Real> split_symmetric_skew(const StencilOperator<Real>& op) {
  typename StencilOperator<Real>::Taps sym, skew;
  for (const auto& [k, v] : op.taps()) {
    const Real mirrored = op.tap(-k);
    sym[k] = (v + mirrored) / 2;
    skew[k] = (v - mirrored) / 2;
    sym[-k] = sym[k];
    skew[-k] = -skew[k];
  }
  return {StencilOperator<Real>(op.grid(), std::move(sym), "sym(" + op.label() + ")"),
          StencilOperator<Real>(op.grid(), std::move(skew), "skew(" + op.label() + ")")};
}

/// Re (Op y, y); equals (Op y, y) for real y.
template <typename Real>
Real energy(const StencilOperator<Real>& op, const GridFunction<Real>& y) {
  return inner_product(apply(op, y), y).real();
}

template <typename Real>
RMatrix<Real> to_dense(const StencilOperator<Real>& op) {
  const int M = op.grid().M();
  RMatrix<Real> A = RMatrix<Real>::Zero(M, M);
  for (int i = 0; i < M; ++i)
    for (const auto& [k, v] : op.taps()) A(i, ((i + k) % M + M) % M) += v;
  return A;
}

}  // namespace smstab
