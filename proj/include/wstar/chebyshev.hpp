#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wstar/window.hpp"

namespace wstar {

/// Largest polynomial degree stored on a single piece.
inline constexpr int kMaxDegree = 64;

/// Polynomial stored as a Chebyshev series on its own domain [lo, hi]:
/// p(x) = sum_k c_k T_k(s), s = (2x - lo - hi) / (hi - lo).
class ChebPoly {
 public:
  ChebPoly() : coeffs_{0.0} {}
  ChebPoly(Window domain, std::vector<double> coeffs);

  static ChebPoly constant(Window domain, double value);
  /// From monomial coefficients in the global variable x (ascending powers).
  static ChebPoly from_monomial(Window domain, std::span<const double> mono);
  /// Interpolant at degree + 1 Chebyshev points of the first kind.
  static ChebPoly interpolate(Window domain, const std::function<double(double)>& f,
                              int degree);
  /// Chebyshev points of the first kind used by interpolate, n of them.
  static std::vector<double> nodes(Window domain, int n);
  /// Interpolant through values given at nodes(domain, values.size()).
  static ChebPoly from_values(Window domain, const std::vector<double>& values);

  const Window& domain() const noexcept { return domain_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept;

  double operator()(double x) const noexcept;

  ChebPoly derivative() const;
  /// Antiderivative vanishing at the left end of the domain.
  ChebPoly antiderivative() const;
  double integral() const;

  /// Same polynomial re-expressed on a sub-interval (or any interval).
  ChebPoly on(Window sub) const;
  /// Drop trailing coefficients below rel_tol * max|c|.
  ChebPoly chopped(double rel_tol = 1e-15) const;
  /// Sum of the magnitudes of the last k coefficients.
  double tail(int k = 4) const noexcept;
  double max_abs_coeff() const noexcept;

  /// Real roots inside the closed domain, sorted.
  std::vector<double> roots() const;
  /// Total variation over the domain.
  double variation() const;
  /// Integral of |p| over the domain.
  double abs_integral() const;

  ChebPoly operator-() const;
  friend ChebPoly operator+(const ChebPoly& p, const ChebPoly& q);
  friend ChebPoly operator-(const ChebPoly& p, const ChebPoly& q);
  friend ChebPoly operator*(const ChebPoly& p, const ChebPoly& q);
  friend ChebPoly operator*(double c, const ChebPoly& p);
  ChebPoly operator+(double c) const;

 private:
  Window domain_;
  std::vector<double> coeffs_;
};

}  // namespace wstar
