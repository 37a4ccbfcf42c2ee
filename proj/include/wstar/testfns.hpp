#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wstar/cantor.hpp"
#include "wstar/window.hpp"

namespace wstar {

enum class BumpKind { Standard, Plateau, PolyTimesBump };

/// Parameters of a compactly supported smooth test function.
///
/// Standard: exp(1 - 1/(1 - r^2)), r = (x - center)/radius, peak 1.
/// Plateau:  identically 1 for |x - center| <= plateau_half_width, then a
///           C-infinity transition (smoothstep of exponentials) to 0 at radius.
/// PolyTimesBump: poly(x) times the plateau bump (or the standard bump when
///           plateau_half_width == 0).
struct BumpSpec {
  BumpKind kind = BumpKind::Standard;
  double center = 0.0;
  double radius = 1.0;
  double plateau_half_width = 0.0;
  std::vector<double> poly;  // ascending monomial coefficients in x
};

class TestFunction {
 public:
  double value(double x) const noexcept;
  double derivative(double x) const noexcept;
  double operator()(double x) const noexcept { return value(x); }

  const BumpSpec& spec() const noexcept { return spec_; }
  /// Closed support [center - radius, center + radius].
  Window support() const { return {spec_.center - spec_.radius, spec_.center + spec_.radius}; }
  /// Closed region where the bump factor is identically 1, if any.
  std::optional<Window> plateau() const;
  /// Upper bound on sup |phi| (exact for Standard and Plateau kinds).
  double sup_norm() const noexcept { return sup_norm_; }

  /// Points where the closed-form expression changes (support and plateau
  /// ends), sorted.
  std::vector<double> breakpoints() const;
  /// Shape of phi on the closed interval [lo, hi].
  CantorRegion classify(double lo, double hi) const;

 private:
  friend TestFunction build(const BumpSpec& spec);
  explicit TestFunction(BumpSpec spec);

  double bump(double x) const noexcept;
  double bump_derivative(double x) const noexcept;
  double poly_factor(double x) const noexcept;
  double poly_factor_derivative(double x) const noexcept;

  BumpSpec spec_;
  double sup_norm_ = 1.0;
};

using TestVector = std::vector<TestFunction>;

/// Validates the spec (InvalidSpec) and returns the test function.
TestFunction build(const BumpSpec& spec);

inline TestFunction standard_bump(double center, double radius) {
  return build({BumpKind::Standard, center, radius, 0.0, {}});
}
inline TestFunction plateau_bump(double center, double radius, double plateau_half_width) {
  return build({BumpKind::Plateau, center, radius, plateau_half_width, {}});
}
/// Plateau bump identically 1 on `flat`, falling to 0 over `margin` on each side.
TestFunction plateau_over(const Window& flat, double margin);
/// poly(x) on `flat`, cut off by a plateau bump with the given margin.
TestFunction poly_over(const Window& flat, double margin, std::vector<double> poly);

/// Deterministic family of plateau bumps, one per stratum of the window,
/// all supported strictly inside the window.
std::vector<TestFunction> seeded_family(const Window& window, int count, std::uint64_t seed);

}  // namespace wstar
