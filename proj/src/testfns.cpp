#include "wstar/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wstar/chebyshev.hpp"

namespace wstar {

namespace {

double transition_f(double t) noexcept { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double transition_df(double t) noexcept { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// 1 at t <= 0, 0 at t >= 1, smooth in between.
double smoothstep_down(double t) noexcept {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = transition_f(1.0 - t), b = transition_f(t);
  return a / (a + b);
}

double smoothstep_down_derivative(double t) noexcept {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = transition_f(1.0 - t), b = transition_f(t);
  const double da = -transition_df(1.0 - t), db = transition_df(t);
  const double den = a + b;
  return (da * b - a * db) / (den * den);
}

double horner(const std::vector<double>& c, double x) noexcept {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& c, double x) noexcept {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * c[k];
  return acc;
}

// Uniform double in [0, 1) from the raw 64-bit engine output; independent of
// the standard library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool uses_plateau(const BumpSpec& s) {
  return s.kind == BumpKind::Plateau ||
         (s.kind == BumpKind::PolyTimesBump && s.plateau_half_width > 0.0);
}

}  // namespace

TestFunction::TestFunction(BumpSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind == BumpKind::PolyTimesBump && !spec_.poly.empty()) {
    const ChebPoly p = ChebPoly::from_monomial(support(), spec_.poly);
    double m = std::max(std::abs(p(support().a())), std::abs(p(support().b())));
    for (double r : p.derivative().roots()) m = std::max(m, std::abs(p(r)));
    sup_norm_ = m;
  } else if (spec_.kind == BumpKind::PolyTimesBump) {
    sup_norm_ = 0.0;
  }
}

TestFunction build(const BumpSpec& spec) {
  if (!std::isfinite(spec.center) || !std::isfinite(spec.radius) || !(spec.radius > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "bump radius must be positive and finite");
  }
  if (spec.kind == BumpKind::Plateau &&
      !(spec.plateau_half_width >= 0.0 && spec.plateau_half_width < spec.radius)) {
    throw Error(ErrorCode::InvalidSpec, "plateau half-width must lie in [0, radius)");
  }
  if (spec.kind == BumpKind::PolyTimesBump &&
      !(spec.plateau_half_width >= 0.0 && spec.plateau_half_width < spec.radius)) {
    throw Error(ErrorCode::InvalidSpec, "plateau half-width must lie in [0, radius)");
  }
  if (spec.kind == BumpKind::Standard && spec.plateau_half_width != 0.0) {
    throw Error(ErrorCode::InvalidSpec, "standard bump has no plateau");
  }
  if (static_cast<int>(spec.poly.size()) > kMaxDegree + 1) {
    throw Error(ErrorCode::InvalidSpec, "polynomial factor degree above cap");
  }
  if (spec.kind != BumpKind::PolyTimesBump && !spec.poly.empty()) {
    throw Error(ErrorCode::InvalidSpec, "only poly-times-bump takes a polynomial factor");
  }
  return TestFunction(spec);
}

TestFunction plateau_over(const Window& flat, double margin) {
  return plateau_bump(flat.mid(), 0.5 * flat.length() + margin, 0.5 * flat.length());
}

TestFunction poly_over(const Window& flat, double margin, std::vector<double> poly) {
  return build({BumpKind::PolyTimesBump, flat.mid(), 0.5 * flat.length() + margin,
                0.5 * flat.length(), std::move(poly)});
}

double TestFunction::bump(double x) const noexcept {
  const double d = std::abs(x - spec_.center);
  if (d >= spec_.radius) return 0.0;
  if (uses_plateau(spec_)) {
    const double w = spec_.plateau_half_width;
    return smoothstep_down((d - w) / (spec_.radius - w));
  }
  const double r = d / spec_.radius;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double TestFunction::bump_derivative(double x) const noexcept {
  const double dx = x - spec_.center;
  const double d = std::abs(dx);
  if (d >= spec_.radius) return 0.0;
  const double sign = dx < 0 ? -1.0 : 1.0;
  if (uses_plateau(spec_)) {
    const double w = spec_.plateau_half_width;
    if (d <= w) return 0.0;
    return sign * smoothstep_down_derivative((d - w) / (spec_.radius - w)) / (spec_.radius - w);
  }
  const double r = dx / spec_.radius;
  const double one_minus = 1.0 - r * r;
  return std::exp(1.0 - 1.0 / one_minus) * (-2.0 * r / (one_minus * one_minus)) / spec_.radius;
}

double TestFunction::poly_factor(double x) const noexcept {
  return spec_.kind == BumpKind::PolyTimesBump ? horner(spec_.poly, x) : 1.0;
}

double TestFunction::poly_factor_derivative(double x) const noexcept {
  return spec_.kind == BumpKind::PolyTimesBump ? horner_derivative(spec_.poly, x) : 0.0;
}

double TestFunction::value(double x) const noexcept { return poly_factor(x) * bump(x); }

double TestFunction::derivative(double x) const noexcept {
  return poly_factor_derivative(x) * bump(x) + poly_factor(x) * bump_derivative(x);
}

std::optional<Window> TestFunction::plateau() const {
  if (!uses_plateau(spec_) || spec_.plateau_half_width <= 0.0) return std::nullopt;
  return Window(spec_.center - spec_.plateau_half_width, spec_.center + spec_.plateau_half_width);
}

std::vector<double> TestFunction::breakpoints() const {
  std::vector<double> pts{support().a(), support().b()};
  if (auto p = plateau()) {
    pts.push_back(p->a());
    pts.push_back(p->b());
  } else {
    pts.push_back(spec_.center);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

CantorRegion TestFunction::classify(double lo, double hi) const {
  const Window s = support();
  if (hi <= s.a() || lo >= s.b()) return {CantorRegion::Kind::Zero, {}};
  if (spec_.kind == BumpKind::PolyTimesBump && spec_.poly.empty()) {
    return {CantorRegion::Kind::Zero, {}};
  }
  if (auto p = plateau(); p && lo >= p->a() && hi <= p->b()) {
    if (spec_.kind == BumpKind::PolyTimesBump) return {CantorRegion::Kind::Polynomial, spec_.poly};
    return {CantorRegion::Kind::Polynomial, {1.0}};
  }
  return {CantorRegion::Kind::General, {}};
}

std::vector<TestFunction> seeded_family(const Window& window, int count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "family count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<TestFunction> family;
  family.reserve(count);
  const double stratum = window.length() / count;
  for (int i = 0; i < count; ++i) {
    // radius in [0.05, 0.25] * L, capped so the support fits the window
    double radius = window.length() * (0.05 + 0.20 * unit(rng));
    radius = std::min(radius, 0.45 * window.length());
    const double lo = window.a() + radius + window.eps() * 8;
    const double hi = window.b() - radius - window.eps() * 8;
    double center = window.a() + stratum * (i + unit(rng));
    center = std::clamp(center, lo, hi);
    const double plateau = radius * (0.2 + 0.4 * unit(rng));
    family.push_back(plateau_bump(center, radius, plateau));
  }
  return family;
}

}  // namespace wstar
