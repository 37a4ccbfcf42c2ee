#pragma once

#include <algorithm>
#include <cmath>

#include "wstar/error.hpp"

namespace wstar {

/// Bounded open interval (a, b). Also used for sub-intervals, supports and
/// carriers.
class Window {
 public:
  constexpr Window() = default;
  Window(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw Error(ErrorCode::InvalidArgument, "window requires finite a < b");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double mid() const noexcept { return 0.5 * (a_ + b_); }

  bool contains_open(double x) const noexcept { return x > a_ && x < b_; }
  bool contains_closed(double x) const noexcept { return x >= a_ && x <= b_; }
  bool contains(const Window& w) const noexcept { return w.a_ >= a_ && w.b_ <= b_; }

  /// Absolute tolerance used for coordinate comparisons inside this window.
  double eps() const noexcept { return 1e-12 * length(); }

  bool same_as(const Window& w) const noexcept {
    const double tol = 1e-12 * std::max(length(), w.length());
    return std::abs(a_ - w.a_) <= tol && std::abs(b_ - w.b_) <= tol;
  }

 private:
  double a_ = 0.0;
  double b_ = 1.0;
};

}  // namespace wstar
