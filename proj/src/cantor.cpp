#include "wstar/cantor.hpp"

#include <cmath>
#include <mutex>

namespace wstar {

double cantor_function(double s) noexcept {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double result = 0.0, scale = 0.5;
  for (int i = 0; i < 64; ++i) {
    s *= 3.0;
    const double digit = std::floor(s);
    s -= digit;
    if (digit >= 2.0) {
      result += scale;
    } else if (digit >= 1.0) {
      return result + scale;
    }
    scale *= 0.5;
  }
  return result;
}

double cantor_moment(int n) {
  static std::mutex mu;
  static std::vector<double> table{1.0};
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    const int m = static_cast<int>(table.size());
    // Self-similarity: m_n = sum_{k<n} C(n,k) 2^(n-k) m_k / (2 (3^n - 1))
    double sum = 0.0, binom = 1.0;
    for (int k = 0; k < m; ++k) {
      sum += binom * std::pow(2.0, m - k) * table[k];
      binom = binom * (m - k) / (k + 1);
    }
    table.push_back(sum / (2.0 * (std::pow(3.0, m) - 1.0)));
  }
  return table[n];
}

double cantor_poly_integral(std::span<const double> mono, double lo, double len) {
  // Taylor shift: P(lo + len s) = sum_n b_n s^n
  const int deg = static_cast<int>(mono.size()) - 1;
  double total = 0.0;
  for (int n = 0; n <= deg; ++n) {
    double bn = 0.0;
    double binom = 1.0;  // C(j, n) for j = n
    for (int j = n; j <= deg; ++j) {
      bn += mono[j] * binom * std::pow(lo, j - n);
      binom = binom * (j + 1) / (j + 1 - n);
    }
    total += bn * std::pow(len, n) * cantor_moment(n);
  }
  return total;
}

namespace {

struct Pairing {
  const std::function<double(double)>& f;
  const RegionClassifier& classify;
  int depth;

  double run(double lo, double len, double mass, int level) const {
    const CantorRegion region = classify(lo, lo + len);
    switch (region.kind) {
      case CantorRegion::Kind::Zero:
        return 0.0;
      case CantorRegion::Kind::Polynomial:
        return mass * cantor_poly_integral(region.mono, lo, len);
      case CantorRegion::Kind::General:
        break;
    }
    if (level >= depth) return mass * f(lo + 0.5 * len);
    const double third = len / 3.0;
    return run(lo, third, 0.5 * mass, level + 1) + run(lo + 2.0 * third, third, 0.5 * mass, level + 1);
  }
};

void steps(std::vector<CantorStep>& out, double lo, double len, double v0, double dv, int level,
           int depth) {
  if (level >= depth) {
    out.push_back({lo, lo + len, v0 + 0.5 * dv});
    return;
  }
  const double third = len / 3.0;
  steps(out, lo, third, v0, 0.5 * dv, level + 1, depth);
  out.push_back({lo + third, lo + 2.0 * third, v0 + 0.5 * dv});
  steps(out, lo + 2.0 * third, third, v0 + 0.5 * dv, 0.5 * dv, level + 1, depth);
}

}  // namespace

double cantor_pair(const std::function<double(double)>& f, const RegionClassifier& classify,
                   const Window& carrier, double mass, int depth) {
  if (mass == 0.0) return 0.0;
  return Pairing{f, classify, depth}.run(carrier.a(), carrier.length(), mass, 0);
}

std::vector<CantorStep> cantor_steps(const Window& carrier, double amplitude, int depth) {
  std::vector<CantorStep> out;
  steps(out, carrier.a(), carrier.length(), 0.0, amplitude, 0, depth);
  out.front().lo = carrier.a();
  out.back().hi = carrier.b();
  return out;
}

double cantor_step_l1_bound(const Window& carrier, double amplitude, int depth) noexcept {
  return 0.5 * std::abs(amplitude) * carrier.length() * std::pow(3.0, -depth);
}

}  // namespace wstar
