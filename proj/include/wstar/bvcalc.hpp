#pragma once

#include <optional>
#include <vector>

#include "wstar/chebyshev.hpp"
#include "wstar/flux.hpp"
#include "wstar/measures.hpp"

namespace wstar {

/// amplitude * C((x - carrier.a) / |carrier|): 0 left of the carrier,
/// amplitude right of it.
struct CantorComponent {
  Window carrier;
  double amplitude;
};

/// Piecewise polynomial function of bounded variation on a window.
///
/// Pieces live on the open sub-intervals cut by the interior breakpoints.
/// Values are taken right-continuous; the value exactly at a breakpoint is
/// never needed by any operation.
class PiecewiseBV {
 public:
  PiecewiseBV(Window window, std::vector<double> breakpoints, std::vector<ChebPoly> pieces,
              std::optional<CantorComponent> cantor = std::nullopt);

  /// Pieces given as ascending monomial coefficients in x.
  static PiecewiseBV from_monomials(Window window, std::vector<double> breakpoints,
                                    const std::vector<std::vector<double>>& pieces,
                                    std::optional<CantorComponent> cantor = std::nullopt);
  static PiecewiseBV constant(Window window, double value);

  const Window& window() const noexcept { return window_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<ChebPoly>& pieces() const noexcept { return pieces_; }
  const std::optional<CantorComponent>& cantor() const noexcept { return cantor_; }

  /// Sub-interval of piece i.
  Window cell(int i) const;
  int piece_index(double x) const noexcept;

  double operator()(double x) const noexcept;
  double cantor_value(double x) const noexcept;
  double left_limit(int i) const { return left_.at(i); }
  double right_limit(int i) const { return right_.at(i); }
  double jump(int i) const { return right_.at(i) - left_.at(i); }
  bool is_jump(int i) const;
  /// (location, F(x+) - F(x-)) for every breakpoint that is a genuine jump.
  std::vector<Atom> jumps() const;

  /// Same function on a finer grid (grid must contain the current breakpoints).
  PiecewiseBV refined(const std::vector<double>& grid) const;

 private:
  Window window_;
  std::vector<double> breakpoints_;
  std::vector<ChebPoly> pieces_;
  std::optional<CantorComponent> cantor_;
  std::vector<double> left_, right_;
};

/// n BV components on a shared breakpoint grid.
class BVVector {
 public:
  /// Components are refined to the union of their grids.
  explicit BVVector(std::vector<PiecewiseBV> components);

  int size() const noexcept { return static_cast<int>(components_.size()); }
  const Window& window() const noexcept { return components_.front().window(); }
  const std::vector<double>& breakpoints() const noexcept { return components_.front().breakpoints(); }
  const PiecewiseBV& operator[](int i) const { return components_.at(i); }
  const std::vector<PiecewiseBV>& components() const noexcept { return components_; }
  State operator()(double x) const;
  bool has_cantor() const noexcept;

 private:
  std::vector<PiecewiseBV> components_;
};

struct BVDecomposition {
  PiecewiseBV absolutely_continuous;  // F_c, continuous, F_c(a) = F(a)
  PiecewiseBV jump;                   // F_j, piecewise constant
  PiecewiseBV singular;               // F_s, Cantor component only
};

double total_variation(const PiecewiseBV& f);
BVDecomposition decompose(const PiecewiseBV& f);
/// Distributional derivative: jumps become atoms, piece derivatives the
/// density, the Cantor component a Cantor part of equal mass.
SignedMeasure dderiv(const PiecewiseBV& f);
MeasureVector dderiv(const BVVector& f);

inline constexpr int kDefaultCantorStepDepth = 10;

/// Density measure T_f(E) = int_E f dx. A Cantor component enters through
/// its step approximation (see cantor_step_l1_bound).
SignedMeasure to_measure(const PiecewiseBV& f, int cantor_depth = kDefaultCantorStepDepth);
MeasureVector to_measure(const BVVector& f, int cantor_depth = kDefaultCantorStepDepth);

struct ComposeOptions {
  int cheb_degree = 32;
  double tolerance = 1e-10;
};

struct FluxComposition {
  BVVector value;
  double error_estimate;  // max tail-coefficient estimate over projected pieces
};

/// x -> F(u(x)) piece by piece: exact for polynomial flux components,
/// Chebyshev projection otherwise.
FluxComposition compose_flux(const BVVector& u, const FluxModel& flux, const ComposeOptions& opt = {});

}  // namespace wstar
