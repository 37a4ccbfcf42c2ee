#include "wstar/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "wstar/error.hpp"

namespace wstar {

namespace {

constexpr int kMaxNodes = 64;
constexpr int kPanelNodes = 10;

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

struct Tables {
  std::array<std::vector<double>, kMaxNodes + 1> nodes;
  std::array<std::vector<double>, kMaxNodes + 1> weights;

  Tables() {
    for (int n = 1; n <= kMaxNodes; ++n) {
      nodes[n].resize(n);
      weights[n].resize(n);
      for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
          const auto [p, d] = legendre(n, x);
          dp = d;
          const double dx = p / d;
          x -= dx;
          if (std::abs(dx) < 1e-16) break;
        }
        dp = legendre(n, x).second;
        nodes[n][n - 1 - i] = x;
        weights[n][n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

double panel(const std::function<double(double)>& f, double a, double b, int& evals) {
  const GaussRule rule = gauss_legendre(kPanelNodes);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kPanelNodes; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  evals += kPanelNodes;
  return half * s;
}

struct Adaptive {
  const std::function<double(double)>& f;
  double tol_density;  // tolerance per unit length
  int max_evals;
  QuadResult result;

  void refine(double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid, result.evals);
    const double right = panel(f, mid, b, result.evals);
    const double diff = std::abs(left + right - whole);
    const double local_tol = std::max(tol_density * (b - a), 1e-15 * std::abs(left + right));
    if (diff <= local_tol || depth >= 48) {
      result.value += left + right;
      result.error += diff;
      if (diff > local_tol) result.converged = false;
      return;
    }
    if (result.evals >= max_evals) {
      result.value += left + right;
      result.error += diff;
      result.converged = false;
      return;
    }
    refine(a, mid, left, depth + 1);
    refine(mid, b, right, depth + 1);
  }
};

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1 || n > kMaxNodes) {
    throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order outside [1, 64]");
  }
  const Tables& t = tables();
  return {t.nodes[n], t.weights[n]};
}

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double tol, int max_evals) {
  if (a == b) return {};
  if (b < a) {
    QuadResult r = integrate_adaptive(f, b, a, tol, max_evals);
    r.value = -r.value;
    return r;
  }
  Adaptive ad{f, tol / (b - a), max_evals, {}};
  const double whole = panel(f, a, b, ad.result.evals);
  ad.refine(a, b, whole, 0);
  return ad.result;
}

}  // namespace wstar
