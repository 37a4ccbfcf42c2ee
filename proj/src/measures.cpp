#include "wstar/measures.hpp"

#include <algorithm>
#include <cmath>

#include "wstar/quadrature.hpp"

namespace wstar {

namespace {

std::vector<Atom> normalize_atoms(const Window& w, std::vector<Atom> atoms, double tol) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.weight) || a.x < w.a() - tol || a.x > w.b() + tol) {
      throw Error(ErrorCode::InvalidArgument, "atom outside window");
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && a.x - out.back().x <= tol) {
      out.back().weight += a.weight;
    } else {
      out.push_back(a);
    }
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == 0.0; });
  return out;
}

std::vector<ChebPoly> normalize_density(const Window& w, std::vector<ChebPoly> pieces, double tol) {
  if (pieces.empty()) return {ChebPoly::constant(w, 0.0)};
  std::sort(pieces.begin(), pieces.end(),
            [](const ChebPoly& l, const ChebPoly& r) { return l.domain().a() < r.domain().a(); });
  std::vector<ChebPoly> out;
  double cursor = w.a();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Window& d = pieces[i].domain();
    if (std::abs(d.a() - cursor) > tol) {
      throw Error(ErrorCode::InvalidArgument, "density pieces do not tile the window");
    }
    const double hi = (i + 1 == pieces.size()) ? w.b() : d.b();
    if (std::abs(d.b() - hi) > tol) {
      throw Error(ErrorCode::InvalidArgument, "density pieces do not tile the window");
    }
    if (hi - cursor <= 0.0) continue;
    out.emplace_back(Window(cursor, hi), pieces[i].coeffs());
    cursor = hi;
  }
  return out;
}

std::vector<CantorPart> normalize_cantor(const Window& w, std::vector<CantorPart> parts, double tol) {
  std::erase_if(parts, [](const CantorPart& c) { return c.mass == 0.0; });
  std::sort(parts.begin(), parts.end(),
            [](const CantorPart& l, const CantorPart& r) { return l.carrier.a() < r.carrier.a(); });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Window& c = parts[i].carrier;
    if (c.a() < w.a() - tol || c.b() > w.b() + tol) {
      throw Error(ErrorCode::InvalidArgument, "Cantor carrier outside window");
    }
    if (i > 0 && c.a() < parts[i - 1].carrier.b() - tol) {
      throw Error(ErrorCode::InvalidArgument, "Cantor carriers overlap");
    }
  }
  return parts;
}

// Sorted union of all piece endpoints.
std::vector<double> union_grid(const std::vector<ChebPoly>& p, const std::vector<ChebPoly>& q,
                               double tol) {
  std::vector<double> pts;
  for (const auto& c : p) pts.push_back(c.domain().a());
  for (const auto& c : q) pts.push_back(c.domain().a());
  pts.push_back(p.back().domain().b());
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  out.back() = p.back().domain().b();
  return out;
}

const ChebPoly& piece_at(const std::vector<ChebPoly>& pieces, double x) {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                             [](double v, const ChebPoly& c) { return v < c.domain().b(); });
  if (it == pieces.end()) return pieces.back();
  return *it;
}

double pair_density_piece(const ChebPoly& p, const TestFunction& phi, double window_len,
                          const PairingOptions& opt) {
  if (p.is_zero()) return 0.0;
  const Window& dom = p.domain();
  std::vector<double> cuts{dom.a()};
  for (double x : phi.breakpoints()) {
    if (x > dom.a() && x < dom.b()) cuts.push_back(x);
  }
  cuts.push_back(dom.b());
  const double magnitude = std::max(p.max_abs_coeff() * std::max(phi.sup_norm(), 1e-300), 1e-300);
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = cuts[i - 1], hi = cuts[i];
    if (hi <= lo) continue;
    const CantorRegion region = phi.classify(lo, hi);
    if (region.kind == CantorRegion::Kind::Zero) continue;
    if (region.kind == CantorRegion::Kind::Polynomial) {
      const int deg = p.degree() + static_cast<int>(region.mono.size()) - 1;
      const int nodes = std::min(64, deg / 2 + 1);
      if (deg <= 2 * 64 - 1) {
        total += integrate_fixed([&](double x) { return p(x) * phi(x); }, lo, hi, nodes);
        continue;
      }
    }
    const double tol = opt.quad_tol * magnitude * (hi - lo) / window_len;
    const QuadResult r =
        integrate_adaptive([&](double x) { return p(x) * phi(x); }, lo, hi, tol);
    if (!r.converged) {
      throw Error(ErrorCode::QuadratureNonConvergent, "density pairing did not converge");
    }
    total += r.value;
  }
  return total;
}

}  // namespace

SignedMeasure::SignedMeasure(Window window) : window_(window), density_{ChebPoly::constant(window, 0.0)} {}

SignedMeasure::SignedMeasure(Window window, std::vector<Atom> atoms, std::vector<ChebPoly> density,
                             std::vector<CantorPart> cantor)
    : window_(window),
      atoms_(normalize_atoms(window, std::move(atoms), merge_tolerance())),
      density_(normalize_density(window, std::move(density), merge_tolerance())),
      cantor_(normalize_cantor(window, std::move(cantor), merge_tolerance())) {}

SignedMeasure SignedMeasure::dirac(Window window, double x, double weight) {
  return SignedMeasure(window, {{x, weight}}, {});
}

SignedMeasure SignedMeasure::with_density(Window window, const ChebPoly& density) {
  return SignedMeasure(window, {}, {density.on(window)});
}

bool SignedMeasure::has_density() const noexcept {
  return std::any_of(density_.begin(), density_.end(), [](const ChebPoly& p) { return !p.is_zero(); });
}

MeasureVector::MeasureVector(std::vector<SignedMeasure> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::DimensionMismatch, "measure vector needs n >= 1");
  for (const auto& c : components_) {
    if (!c.window().same_as(components_.front().window())) {
      throw Error(ErrorCode::WindowMismatch, "measure vector components on different windows");
    }
  }
}

MeasureVector MeasureVector::zero(Window window, int n) {
  return MeasureVector(std::vector<SignedMeasure>(std::max(n, 0), SignedMeasure(window)));
}

double pair(const SignedMeasure& mu, const TestFunction& phi, const PairingOptions& opt) {
  const Window& w = mu.window();
  const Window s = phi.support();
  if (s.b() <= w.a() || s.a() >= w.b()) {
    throw Error(ErrorCode::SupportOutsideWindow, "test function support misses the window");
  }
  double total = 0.0;
  for (const Atom& a : mu.atoms()) total += a.weight * phi(a.x);
  for (const ChebPoly& p : mu.density()) total += pair_density_piece(p, phi, w.length(), opt);
  for (const CantorPart& c : mu.cantor_parts()) {
    total += cantor_pair([&](double x) { return phi(x); },
                         [&](double lo, double hi) { return phi.classify(lo, hi); }, c.carrier,
                         c.mass, opt.cantor_depth);
  }
  return total;
}

double tv_norm(const SignedMeasure& mu) {
  double tv = 0.0;
  for (const Atom& a : mu.atoms()) tv += std::abs(a.weight);
  for (const ChebPoly& p : mu.density()) {
    if (!p.is_zero()) tv += p.abs_integral();
  }
  for (const CantorPart& c : mu.cantor_parts()) tv += std::abs(c.mass);
  return tv;
}

SignedMeasure add(const SignedMeasure& mu, const SignedMeasure& nu) {
  if (!mu.window().same_as(nu.window())) {
    throw Error(ErrorCode::WindowMismatch, "cannot add measures on different windows");
  }
  const double tol = mu.merge_tolerance();
  std::vector<Atom> atoms = mu.atoms();
  atoms.insert(atoms.end(), nu.atoms().begin(), nu.atoms().end());

  const std::vector<double> grid = union_grid(mu.density(), nu.density(), tol);
  std::vector<ChebPoly> density;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Window sub(grid[i - 1], grid[i]);
    const double mid = sub.mid();
    density.push_back(piece_at(mu.density(), mid).on(sub) + piece_at(nu.density(), mid).on(sub));
  }

  std::vector<CantorPart> cantor = mu.cantor_parts();
  for (const CantorPart& c : nu.cantor_parts()) {
    bool merged = false;
    for (CantorPart& existing : cantor) {
      if (existing.carrier.same_as(c.carrier)) {
        existing.mass += c.mass;
        merged = true;
        break;
      }
      const bool disjoint = c.carrier.b() <= existing.carrier.a() + tol ||
                            c.carrier.a() >= existing.carrier.b() - tol;
      if (!disjoint) {
        throw Error(ErrorCode::SingularComponentUnsupported,
                    "sum of Cantor parts with overlapping distinct carriers");
      }
    }
    if (!merged) cantor.push_back(c);
  }
  return SignedMeasure(mu.window(), std::move(atoms), std::move(density), std::move(cantor));
}

SignedMeasure scale(const SignedMeasure& mu, double c) {
  std::vector<Atom> atoms = mu.atoms();
  for (Atom& a : atoms) a.weight *= c;
  std::vector<ChebPoly> density;
  for (const ChebPoly& p : mu.density()) density.push_back(c * p);
  std::vector<CantorPart> cantor = mu.cantor_parts();
  for (CantorPart& part : cantor) part.mass *= c;
  return SignedMeasure(mu.window(), std::move(atoms), std::move(density), std::move(cantor));
}

SignedMeasure subtract(const SignedMeasure& mu, const SignedMeasure& nu) { return add(mu, scale(nu, -1.0)); }

SignedMeasure restrict(const SignedMeasure& mu, const Window& sub) {
  const double tol = 1e-12 * std::max(mu.window().length(), sub.length());
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms()) {
    if (sub.contains_open(a.x)) atoms.push_back(a);
  }
  std::vector<ChebPoly> density;
  double cursor = sub.a();
  for (const ChebPoly& p : mu.density()) {
    const double lo = std::max(p.domain().a(), sub.a());
    const double hi = std::min(p.domain().b(), sub.b());
    if (hi - lo <= tol) continue;
    if (lo > cursor + tol) density.push_back(ChebPoly::constant(Window(cursor, lo), 0.0));
    density.push_back(p.on(Window(lo, hi)));
    cursor = hi;
  }
  if (sub.b() > cursor + tol) density.push_back(ChebPoly::constant(Window(cursor, sub.b()), 0.0));
  std::vector<CantorPart> cantor;
  for (const CantorPart& c : mu.cantor_parts()) {
    if (c.carrier.b() <= sub.a() + tol || c.carrier.a() >= sub.b() - tol) continue;
    if (c.carrier.a() >= sub.a() - tol && c.carrier.b() <= sub.b() + tol) {
      cantor.push_back(c);
      continue;
    }
    throw Error(ErrorCode::SingularComponentUnsupported, "restriction cuts through a Cantor carrier");
  }
  if (!cantor.empty()) {
    // carriers are clipped to the closed sub-window
    for (CantorPart& c : cantor) {
      c.carrier = Window(std::max(c.carrier.a(), sub.a()), std::min(c.carrier.b(), sub.b()));
    }
  }
  return SignedMeasure(sub, std::move(atoms), std::move(density), std::move(cantor));
}

double vector_norm(const MeasureVector& mu) {
  double s = 0.0;
  for (const auto& c : mu.components()) {
    const double tv = tv_norm(c);
    s += tv * tv;
  }
  return std::sqrt(s);
}

double pair_vector(const MeasureVector& mu, const TestVector& phi, const PairingOptions& opt) {
  if (static_cast<int>(phi.size()) != mu.size()) {
    throw Error(ErrorCode::DimensionMismatch, "test vector and measure vector sizes differ");
  }
  double total = 0.0;
  for (int i = 0; i < mu.size(); ++i) total += pair(mu[i], phi[i], opt);
  return total;
}

MeasureVector add(const MeasureVector& mu, const MeasureVector& nu) {
  if (mu.size() != nu.size()) throw Error(ErrorCode::DimensionMismatch, "measure vector sizes differ");
  std::vector<SignedMeasure> out;
  for (int i = 0; i < mu.size(); ++i) out.push_back(add(mu[i], nu[i]));
  return MeasureVector(std::move(out));
}

MeasureVector scale(const MeasureVector& mu, double c) {
  std::vector<SignedMeasure> out;
  for (const auto& m : mu.components()) out.push_back(scale(m, c));
  return MeasureVector(std::move(out));
}

MeasureVector subtract(const MeasureVector& mu, const MeasureVector& nu) { return add(mu, scale(nu, -1.0)); }

TestVector unit_test_vector(const TestFunction& phi, int n, int i) {
  const TestFunction zero = build({BumpKind::PolyTimesBump, phi.spec().center, phi.spec().radius, 0.0, {}});
  TestVector v(n, zero);
  v.at(i) = phi;
  return v;
}

double sup_norm(const TestVector& phi) {
  double s = 0.0;
  for (const auto& f : phi) s += f.sup_norm() * f.sup_norm();
  return std::sqrt(s);
}

}  // namespace wstar
