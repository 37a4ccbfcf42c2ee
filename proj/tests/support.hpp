#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "wstar/bvcalc.hpp"
#include "wstar/measures.hpp"
#include "wstar/testfns.hpp"

namespace support {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::vector<double> random_poly(Rng& rng, int degree, double scale = 1.0) {
  std::vector<double> c(degree + 1);
  for (double& x : c) x = uniform(rng, -scale, scale);
  return c;
}

inline std::vector<double> sorted_points(Rng& rng, const wstar::Window& w, int count) {
  std::vector<double> x;
  const double step = w.length() / (count + 1);
  for (int i = 1; i <= count; ++i) x.push_back(w.a() + step * (i + uniform(rng, -0.3, 0.3)));
  return x;
}

/// Piecewise polynomial with random jumps, degree <= max_degree per piece.
inline wstar::PiecewiseBV random_bv(Rng& rng, const wstar::Window& w, int max_breaks, int max_degree) {
  const std::vector<double> bps = sorted_points(rng, w, uniform_int(rng, 0, max_breaks));
  std::vector<std::vector<double>> pieces;
  for (std::size_t i = 0; i <= bps.size(); ++i) pieces.push_back(random_poly(rng, uniform_int(rng, 0, max_degree)));
  return wstar::PiecewiseBV::from_monomials(w, bps, pieces);
}

/// Atoms plus piecewise polynomial density.
inline wstar::SignedMeasure random_measure(Rng& rng, const wstar::Window& w) {
  std::vector<wstar::Atom> atoms;
  for (int i = uniform_int(rng, 0, 4); i > 0; --i) atoms.push_back({uniform(rng, w.a() + 0.01, w.b() - 0.01), uniform(rng, -2, 2)});
  const std::vector<double> cuts = sorted_points(rng, w, uniform_int(rng, 0, 3));
  std::vector<wstar::ChebPoly> density;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double lo = i == 0 ? w.a() : cuts[i - 1];
    const double hi = i == cuts.size() ? w.b() : cuts[i];
    density.push_back(wstar::ChebPoly::from_monomial(wstar::Window(lo, hi), random_poly(rng, uniform_int(rng, 0, 4))));
  }
  return wstar::SignedMeasure(w, std::move(atoms), std::move(density));
}

/// Plateau bump well inside the window.
inline wstar::TestFunction random_test_function(Rng& rng, const wstar::Window& w) {
  const double radius = uniform(rng, 0.1, 0.45) * w.length();
  const double center = uniform(rng, w.a() + radius, w.b() - radius);
  return wstar::plateau_bump(center, radius, uniform(rng, 0.0, 0.8) * radius);
}

/// Sum |f(x_k) - f(x_k-1)| over a uniform n-point partition augmented with
/// points just left of and at every breakpoint.
inline double partition_variation(const std::function<double(double)>& f, const wstar::Window& w, int n,
                                  const std::vector<double>& breakpoints = {}) {
  std::vector<double> x;
  for (int i = 0; i <= n; ++i) x.push_back(w.a() + w.length() * i / n);
  x.back() = w.b() - 1e-13 * w.length();
  for (double b : breakpoints) {
    x.push_back(b - 1e-11 * w.length());
    x.push_back(b);
  }
  std::sort(x.begin(), x.end());
  double v = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) v += std::abs(f(x[i]) - f(x[i - 1]));
  return v;
}

/// Midpoint Riemann sum with n cells.
inline double riemann_sum(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

/// Composite Simpson with n (even) cells; used as an independent quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace support
