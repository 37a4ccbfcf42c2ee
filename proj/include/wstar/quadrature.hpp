#pragma once

#include <functional>
#include <span>

namespace wstar {

struct GaussRule {
  std::span<const double> nodes;    // on [-1, 1]
  std::span<const double> weights;
};

/// n-point Gauss-Legendre rule, 1 <= n <= 64. Tables are built once.
GaussRule gauss_legendre(int n);

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int n);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated |coarse - fine| over accepted panels
  int evals = 0;
  bool converged = true;
};

/// Adaptive composite Gauss-Legendre (10-point panels, bisection on
/// disagreement). Local tolerances are distributed by panel length.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double tol, int max_evals = 200000);

}  // namespace wstar
