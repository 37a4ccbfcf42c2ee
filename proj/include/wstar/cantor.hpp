#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wstar/window.hpp"

namespace wstar {

/// Standard Cantor function on [0, 1]; 0 to the left, 1 to the right.
double cantor_function(double s) noexcept;

/// Exact moment int s^n dC(s) of the standard Cantor measure.
double cantor_moment(int n);

/// int P(lo + len * s) dC(s) for P given by ascending monomial coefficients.
double cantor_poly_integral(std::span<const double> mono, double lo, double len);

/// What an integrand looks like on a closed interval, so the recursion can
/// stop early.
struct CantorRegion {
  enum class Kind { Zero, Polynomial, General } kind = Kind::General;
  std::vector<double> mono;  // set when kind == Polynomial (global x)
};

using RegionClassifier = std::function<CantorRegion(double lo, double hi)>;

/// int f d(mass * C mapped to carrier). Intervals still General at `depth`
/// use the midpoint; error <= |f'|_inf * |mass| * 3^-depth * len / 2.
double cantor_pair(const std::function<double(double)>& f, const RegionClassifier& classify,
                   const Window& carrier, double mass, int depth);

struct CantorStep {
  double lo, hi, value;
};

/// Piecewise-constant approximation of amplitude * C on the carrier: exact on
/// every gap of level < depth, midpoint value on the 2^depth remaining
/// intervals. L1 error <= |amplitude| * len * 3^-depth / 2.
std::vector<CantorStep> cantor_steps(const Window& carrier, double amplitude, int depth);

double cantor_step_l1_bound(const Window& carrier, double amplitude, int depth) noexcept;

}  // namespace wstar
