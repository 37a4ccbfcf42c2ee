#include "wstar/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wstar {

namespace {

void require_same_domain(const ChebPoly& p, const ChebPoly& q) {
  if (!p.domain().same_as(q.domain())) {
    throw Error(ErrorCode::WindowMismatch, "polynomials live on different domains");
  }
}

double to_unit(const Window& w, double x) { return (2.0 * x - w.a() - w.b()) / w.length(); }

// Newton-polished bisection on [lo, hi] where p changes sign.
double polish_root(const ChebPoly& p, const ChebPoly& dp, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double next = x - p(x) / d;
    if (next < lo || next > hi) break;
    x = next;
  }
  return x;
}

}  // namespace

ChebPoly::ChebPoly(Window domain, std::vector<double> coeffs)
    : domain_(domain), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

ChebPoly ChebPoly::constant(Window domain, double value) { return ChebPoly(domain, {value}); }

ChebPoly ChebPoly::from_monomial(Window domain, std::span<const double> mono) {
  if (mono.empty()) return constant(domain, 0.0);
  // x = mid + half * T_1(s)
  const ChebPoly x(domain, {domain.mid(), 0.5 * domain.length()});
  ChebPoly acc = constant(domain, mono.back());
  for (auto it = mono.rbegin() + 1; it != mono.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

ChebPoly ChebPoly::interpolate(Window domain, const std::function<double(double)>& f,
                               int degree) {
  if (degree < 0 || degree > kMaxDegree) {
    throw Error(ErrorCode::InvalidArgument, "interpolation degree outside [0, 64]");
  }
  std::vector<double> values;
  for (double x : nodes(domain, degree + 1)) values.push_back(f(x));
  return from_values(domain, values);
}

std::vector<double> ChebPoly::nodes(Window domain, int n) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) {
    x[j] = domain.mid() + 0.5 * domain.length() * std::cos(std::numbers::pi * (j + 0.5) / n);
  }
  return x;
}

ChebPoly ChebPoly::from_values(Window domain, const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 1 || n > kMaxDegree + 1) {
    throw Error(ErrorCode::InvalidArgument, "interpolation degree outside [0, 64]");
  }
  std::vector<double> c(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += values[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
    c[k] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  return ChebPoly(domain, std::move(c));
}

bool ChebPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double ChebPoly::operator()(double x) const noexcept {
  // Clenshaw
  const double s = to_unit(domain_, x);
  double b1 = 0.0, b2 = 0.0;
  for (int k = degree(); k >= 1; --k) {
    const double b0 = coeffs_[k] + 2.0 * s * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + s * b1 - b2;
}

ChebPoly ChebPoly::derivative() const {
  const int n = degree();
  if (n == 0) return constant(domain_, 0.0);
  std::vector<double> d(n + 1, 0.0);
  for (int k = n; k >= 1; --k) {
    d[k - 1] = (k + 1 <= n ? d[k + 1] : 0.0) + 2.0 * k * coeffs_[k];
  }
  d[0] *= 0.5;
  d.pop_back();
  const double scale = 2.0 / domain_.length();
  for (double& v : d) v *= scale;
  return ChebPoly(domain_, std::move(d));
}

ChebPoly ChebPoly::antiderivative() const {
  const int n = degree();
  std::vector<double> c(coeffs_);
  c.resize(n + 3, 0.0);
  std::vector<double> b(n + 2, 0.0);
  for (int k = 1; k <= n + 1; ++k) {
    const double prev = (k == 1) ? 2.0 * c[0] : c[k - 1];
    b[k] = (prev - c[k + 1]) / (2.0 * k);
  }
  // value at s = -1 must vanish: sum b_k (-1)^k = 0
  double at_lo = 0.0;
  for (int k = 1; k <= n + 1; ++k) at_lo += (k % 2 == 0 ? 1.0 : -1.0) * b[k];
  b[0] = -at_lo;
  const double scale = 0.5 * domain_.length();
  for (double& v : b) v *= scale;
  return ChebPoly(domain_, std::move(b));
}

double ChebPoly::integral() const {
  double s = 0.0;
  for (int k = 0; k <= degree(); k += 2) s += coeffs_[k] * 2.0 / (1.0 - double(k) * k);
  return 0.5 * domain_.length() * s;
}

ChebPoly ChebPoly::on(Window sub) const {
  if (domain_.same_as(sub)) return *this;
  return interpolate(sub, [this](double x) { return (*this)(x); }, degree());
}

ChebPoly ChebPoly::chopped(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::size_t keep = coeffs_.size();
  while (keep > 1 && std::abs(coeffs_[keep - 1]) <= cut) --keep;
  return ChebPoly(domain_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + keep));
}

double ChebPoly::tail(int k) const noexcept {
  double s = 0.0;
  const int n = static_cast<int>(coeffs_.size());
  for (int i = std::max(0, n - k); i < n; ++i) s += std::abs(coeffs_[i]);
  return s;
}

double ChebPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::vector<double> ChebPoly::roots() const {
  std::vector<double> out;
  const ChebPoly p = chopped(1e-14);
  if (p.degree() == 0) return out;
  const ChebPoly dp = p.derivative();
  const int samples = std::max(64, 16 * (p.degree() + 1));
  const double lo = domain_.a(), len = domain_.length();
  double x_prev = lo;
  double f_prev = p(lo);
  if (f_prev == 0.0) out.push_back(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = (i == samples) ? domain_.b() : lo + len * i / samples;
    const double f = p(x);
    if (f == 0.0) {
      out.push_back(x);
    } else if (f_prev != 0.0 && (f < 0) != (f_prev < 0)) {
      out.push_back(polish_root(p, dp, x_prev, x));
    }
    x_prev = x;
    f_prev = f;
  }
  return out;
}

double ChebPoly::variation() const {
  std::vector<double> pts{domain_.a()};
  for (double r : derivative().roots()) pts.push_back(r);
  pts.push_back(domain_.b());
  double v = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) v += std::abs((*this)(pts[i]) - (*this)(pts[i - 1]));
  return v;
}

double ChebPoly::abs_integral() const {
  const ChebPoly prim = antiderivative();
  std::vector<double> pts{domain_.a()};
  for (double r : roots()) pts.push_back(r);
  pts.push_back(domain_.b());
  double v = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) v += std::abs(prim(pts[i]) - prim(pts[i - 1]));
  return v;
}

ChebPoly ChebPoly::operator-() const { return -1.0 * *this; }

ChebPoly operator+(const ChebPoly& p, const ChebPoly& q) {
  require_same_domain(p, q);
  std::vector<double> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) c[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) c[i] += q.coeffs_[i];
  return ChebPoly(p.domain_, std::move(c));
}

ChebPoly operator-(const ChebPoly& p, const ChebPoly& q) { return p + (-q); }

ChebPoly operator*(const ChebPoly& p, const ChebPoly& q) {
  require_same_domain(p, q);
  const std::size_t m = p.coeffs_.size(), n = q.coeffs_.size();
  std::vector<double> c(m + n - 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 0.5 * p.coeffs_[i] * q.coeffs_[j];
      c[i + j] += h;
      c[i > j ? i - j : j - i] += h;
    }
  }
  return ChebPoly(p.domain_, std::move(c));
}

ChebPoly operator*(double c, const ChebPoly& p) {
  std::vector<double> v(p.coeffs_);
  for (double& x : v) x *= c;
  return ChebPoly(p.domain_, std::move(v));
}

ChebPoly ChebPoly::operator+(double c) const {
  ChebPoly r = *this;
  r.coeffs_[0] += c;
  return r;
}

}  // namespace wstar
