#include "wstar/claw.hpp"

#include <algorithm>
#include <cmath>

#include "wstar/quadrature.hpp"

namespace wstar {

const char* to_string(WaveKind kind) noexcept {
  switch (kind) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Contact: return "contact";
  }
  return "unknown";
}

namespace {

State eigenvector(const FluxModel& f, const State& u, int k) { return f.eigen(u).at(k).r; }

// Point on the k-rarefaction curve through `from` where lambda_k = eps:
// closed form when the model has one, RK4 on dw/deps = r_k(w) otherwise.
State rarefaction_point(const FluxModel& f, int k, const State& from, double eps, double step) {
  if (auto s = f.rarefaction_state(k, from, eps)) return *s;
  const double eps0 = f.lambda(from, k);
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(eps - eps0) / step)));
  const double h = (eps - eps0) / n;
  State w = from;
  for (int i = 0; i < n; ++i) {
    const State k1 = eigenvector(f, w, k);
    const State k2 = eigenvector(f, w + (0.5 * h) * k1, k);
    const State k3 = eigenvector(f, w + (0.5 * h) * k2, k);
    const State k4 = eigenvector(f, w + h * k3, k);
    w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

Wave make_jump(const FluxModel& f, int k, const State& l, const State& r, double speed) {
  Wave w;
  w.kind = f.family(k) == FamilyKind::LinearlyDegenerate ? WaveKind::Contact : WaveKind::Shock;
  w.family = k;
  w.left = l;
  w.right = r;
  w.speed = w.speed_lo = w.speed_hi = speed;
  return w;
}

Wave make_fan(FluxPtr f, int k, const State& l, const State& r, double step) {
  Wave w;
  w.kind = WaveKind::Rarefaction;
  w.family = k;
  w.left = l;
  w.right = r;
  w.speed_lo = f->lambda(l, k);
  w.speed_hi = f->lambda(r, k);
  w.speed = 0.5 * (w.speed_lo + w.speed_hi);
  w.profile = [f, k, l, step](double eps) { return rarefaction_point(*f, k, l, eps, step); };
  return w;
}

RiemannSolution solve_scalar(FluxPtr f, const State& l, const State& r, const RiemannOptions& opt) {
  std::vector<Wave> waves;
  if (l[0] != r[0]) {
    const double ll = f->lambda(l, 0), lr = f->lambda(r, 0);
    if (f->family(0) == FamilyKind::LinearlyDegenerate) {
      waves.push_back(make_jump(*f, 0, l, r, ll));
    } else if (ll > lr) {
      const double speed = (f->flux(r)[0] - f->flux(l)[0]) / (r[0] - l[0]);
      waves.push_back(make_jump(*f, 0, l, r, speed));
    } else {
      waves.push_back(make_fan(f, 0, l, r, opt.rk4_step));
    }
  }
  return RiemannSolution(f, l, r, {l, r}, std::move(waves));
}

// Wave curves of the p-system: the 1-curve forward from L and the 2-curve
// backward from R, both as u(v).
struct PSystemCurves {
  FluxPtr flux;
  const PSystem& ps;
  State L, R;
  double step;

  double u1(double v) const {
    if (v < L[0]) return L[1] - std::sqrt((ps.pressure(v) - ps.pressure(L[0])) * (L[0] - v));
    if (ps.closed_form()) return L[1] + ps.riemann_phi(v) - ps.riemann_phi(L[0]);
    return rarefaction_point(ps, 0, L, -ps.sound_speed(v), step)[1];
  }
  double u2(double v) const {
    if (v < R[0]) return R[1] + std::sqrt((ps.pressure(v) - ps.pressure(R[0])) * (R[0] - v));
    if (ps.closed_form()) return R[1] + ps.riemann_phi(R[0]) - ps.riemann_phi(v);
    return rarefaction_point(ps, 1, R, ps.sound_speed(v), step)[1];
  }
  double h(double v) const { return u1(v) - u2(v); }
};

// A few extra Newton steps once converged, so the jump conditions hold to
// rounding; keeps the best point seen.
double polish(const PSystemCurves& c, double v) {
  double best = v, best_h = std::abs(c.h(v));
  for (int k = 0; k < 4 && best_h > 0.0; ++k) {
    const double dv = 1e-7 * v;
    const double slope = (c.h(v + dv) - c.h(v - dv)) / (2.0 * dv);
    if (!(slope > 0.0)) break;
    v -= c.h(v) / slope;
    const double hv = std::abs(c.h(v));
    if (!(hv < best_h)) break;
    best = v;
    best_h = hv;
  }
  return best;
}

double find_middle_volume(const PSystemCurves& c, const RiemannOptions& opt) {
  double lo = std::min(c.L[0], c.R[0]), hi = std::max(c.L[0], c.R[0]);
  while (c.h(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorCode::VacuumFormation, "wave curves do not meet at positive volume");
  }
  while (c.h(lo) > 0.0) {
    lo *= 0.5;
    if (lo < 1e-12) throw Error(ErrorCode::NoConvergence, "could not bracket the middle state");
  }
  double v = 0.5 * (lo + hi);
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double hv = c.h(v);
    if (hv == 0.0) return v;
    if (hv < 0.0) lo = v; else hi = v;
    const double dv = 1e-7 * v;
    const double slope = (c.h(v + dv) - c.h(v - dv)) / (2.0 * dv);
    double next = (slope > 0.0) ? v - hv / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - v) <= opt.newton_tol * v || hi - lo <= opt.newton_tol * v) return polish(c, next);
    v = next;
  }
  throw Error(ErrorCode::NoConvergence, "middle-state iteration did not converge");
}

RiemannSolution solve_psystem(FluxPtr f, const PSystem& ps, const State& l, const State& r,
                              const RiemannOptions& opt) {
  if (!ps.admissible(l) || !ps.admissible(r)) throw Error(ErrorCode::InvalidArgument, "p-system needs v > 0");
  const PSystemCurves curves{f, ps, l, r, opt.rk4_step};
  const double vm = find_middle_volume(curves, opt);
  const double snap = 1e-10;
  // a negligible wave snaps the middle state onto its neighbour
  State m{vm, curves.u1(vm)};
  if (std::abs(vm - r[0]) <= snap * r[0]) {
    m = r;
  } else if (std::abs(vm - l[0]) <= snap * l[0]) {
    m = l;
  }

  std::vector<Wave> waves;
  std::vector<State> states{l};
  if (m != l) {
    if (m[0] < l[0]) {
      const double s = -std::sqrt((ps.pressure(m[0]) - ps.pressure(l[0])) / (l[0] - m[0]));
      waves.push_back(make_jump(ps, 0, l, m, s));
    } else {
      waves.push_back(make_fan(f, 0, l, m, opt.rk4_step));
    }
    states.push_back(m);
  }
  if (m != r) {
    if (m[0] < r[0]) {
      const double s = std::sqrt((ps.pressure(m[0]) - ps.pressure(r[0])) / (r[0] - m[0]));
      waves.push_back(make_jump(ps, 1, m, r, s));
    } else {
      waves.push_back(make_fan(f, 1, m, r, opt.rk4_step));
    }
    states.push_back(r);
  }
  if (waves.empty()) states = {l, r};
  return RiemannSolution(f, l, r, std::move(states), std::move(waves));
}

// Cells of u(., t) on the window: constant states and fans in order.
struct Cell {
  double lo, hi;
  int wave;  // index of the fan, -1 for a constant state
  State state;
};

struct Layout {
  std::vector<Cell> cells;
  std::vector<int> jump_waves;  // wave index behind each interior cell boundary, -1 for none
};

void require_inside(const Window& w, double x) {
  if (!w.contains_open(x)) throw Error(ErrorCode::WaveOutsideWindow, "wave leaves the window");
}

Layout layout(const RiemannSolution& sol, double t, const Window& window) {
  Layout out;
  double cursor = window.a();
  auto close_cell = [&](double x, int wave, const State& s, int jump) {
    require_inside(window, x);
    if (x > cursor + window.eps()) {
      out.cells.push_back({cursor, x, wave, s});
      out.jump_waves.push_back(jump);
      cursor = x;
    } else if (jump >= 0 && !out.jump_waves.empty()) {
      out.jump_waves.back() = jump;
    }
  };
  const auto& waves = sol.waves();
  const auto& states = sol.states();
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const Wave& w = waves[i];
    if (w.is_jump()) {
      close_cell(w.speed * t, -1, states[i], static_cast<int>(i));
    } else {
      close_cell(w.speed_lo * t, -1, states[i], -1);
      close_cell(w.speed_hi * t, static_cast<int>(i), states[i], -1);
    }
  }
  out.cells.push_back({cursor, window.b(), -1, states.back()});
  return out;
}

std::pair<ChebPoly, double> project(const ChebPoly& raw) {
  const ChebPoly chopped = raw.chopped();
  if (raw.degree() - chopped.degree() >= 4) {
    double dropped = 0.0;
    for (std::size_t k = chopped.coeffs().size(); k < raw.coeffs().size(); ++k) dropped += std::abs(raw.coeffs()[k]);
    return {chopped, dropped};
  }
  return {raw, raw.tail(4)};
}

// Per-component Chebyshev interpolants of g over a fan cell, g evaluated once
// per node.
std::vector<ChebPoly> project_fan(const Window& cell, int n, int degree,
                                  const std::function<State(double)>& g, double& error) {
  std::vector<std::vector<double>> values(n);
  for (double x : ChebPoly::nodes(cell, degree + 1)) {
    const State s = g(x);
    for (int j = 0; j < n; ++j) values[j].push_back(s[j]);
  }
  std::vector<ChebPoly> out;
  for (int j = 0; j < n; ++j) {
    auto [p, err] = project(ChebPoly::from_values(cell, values[j]));
    error = std::max(error, err);
    out.push_back(std::move(p));
  }
  return out;
}

// Measures with atoms from `atom` at jumps and densities from `density` in fans.
MeasureVector derivative_measure(const RiemannSolution& sol, double t, const Window& window, int degree,
                                 const std::function<State(const Wave&)>& atom,
                                 const std::function<State(const Wave&, double)>& density) {
  const int n = sol.flux().size();
  const Layout lay = layout(sol, t, window);
  std::vector<std::vector<Atom>> atoms(n);
  std::vector<std::vector<ChebPoly>> dens(n);
  for (std::size_t c = 0; c < lay.cells.size(); ++c) {
    const Cell& cell = lay.cells[c];
    const Window dom(cell.lo, cell.hi);
    if (cell.wave < 0) {
      for (int j = 0; j < n; ++j) dens[j].push_back(ChebPoly::constant(dom, 0.0));
    } else {
      const Wave& w = sol.waves()[cell.wave];
      double err = 0.0;
      auto pieces = project_fan(dom, n, degree, [&](double x) { return density(w, x); }, err);
      for (int j = 0; j < n; ++j) dens[j].push_back(std::move(pieces[j]));
    }
    if (c < lay.jump_waves.size() && lay.jump_waves[c] >= 0) {
      const Wave& w = sol.waves()[lay.jump_waves[c]];
      const State weight = atom(w);
      for (int j = 0; j < n; ++j) atoms[j].push_back({cell.hi, weight[j]});
    }
  }
  std::vector<SignedMeasure> comps;
  for (int j = 0; j < n; ++j) comps.emplace_back(window, std::move(atoms[j]), std::move(dens[j]));
  return MeasureVector(std::move(comps));
}

BVVector initial_step(const RiemannSolution& sol, const Window& window) {
  const int n = sol.flux().size();
  std::vector<PiecewiseBV> comps;
  if (sol.left() == sol.right()) {
    for (int j = 0; j < n; ++j) comps.push_back(PiecewiseBV::constant(window, sol.left()[j]));
    return BVVector(std::move(comps));
  }
  require_inside(window, 0.0);
  for (int j = 0; j < n; ++j) {
    comps.push_back(PiecewiseBV::from_monomials(window, {0.0}, {{sol.left()[j]}, {sol.right()[j]}}));
  }
  return BVVector(std::move(comps));
}

}  // namespace

RiemannSolution::RiemannSolution(FluxPtr flux, State left, State right, std::vector<State> states,
                                 std::vector<Wave> waves)
    : flux_(std::move(flux)), left_(std::move(left)), right_(std::move(right)), states_(std::move(states)),
      waves_(std::move(waves)) {
  if (!flux_) throw Error(ErrorCode::InvalidArgument, "missing flux");
  const std::size_t n = static_cast<std::size_t>(flux_->size());
  if (left_.size() != n || right_.size() != n) throw Error(ErrorCode::DimensionMismatch, "state size differs from flux size");
  if (states_.size() != waves_.size() + 1 && !(waves_.empty() && states_.size() == 2)) {
    throw Error(ErrorCode::InvalidArgument, "need one more state than waves");
  }
  for (std::size_t i = 1; i < waves_.size(); ++i) {
    if (!(waves_[i].speed_lo >= waves_[i - 1].speed_hi)) {
      throw Error(ErrorCode::InvalidArgument, "waves must be ordered by speed");
    }
  }
}

RiemannSolution RiemannSolution::single_jump(FluxPtr flux, State left, State right, double speed) {
  if (!flux) throw Error(ErrorCode::InvalidArgument, "missing flux");
  std::vector<Wave> waves;
  if (left != right) {
    const State mid = 0.5 * (left + right);
    const auto eig = flux->eigen(mid);
    int k = 0;
    for (int i = 1; i < static_cast<int>(eig.size()); ++i) {
      if (std::abs(eig[i].lambda - speed) < std::abs(eig[k].lambda - speed)) k = i;
    }
    waves.push_back(make_jump(*flux, k, left, right, speed));
  }
  return RiemannSolution(flux, left, right, {left, right}, std::move(waves));
}

State RiemannSolution::sample(double x, double t) const {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be non-negative");
  if (t == 0.0) return x < 0.0 ? left_ : right_;
  const double xi = x / t;
  for (std::size_t i = 0; i < waves_.size(); ++i) {
    const Wave& w = waves_[i];
    if (xi < w.speed_lo) return states_[i];
    if (!w.is_jump() && xi <= w.speed_hi) return w.profile(xi);
  }
  return states_.back();
}

std::pair<State, State> RiemannSolution::partials(double x, double t) const {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "partials need t > 0");
  const std::size_t n = left_.size();
  const double xi = x / t;
  for (const Wave& w : waves_) {
    if (w.is_jump()) {
      if (std::abs(x - w.speed * t) <= 1e-12 * std::max(1.0, std::abs(x))) {
        throw Error(ErrorCode::OnJumpPath, "point lies on a jump path");
      }
    } else if (xi >= w.speed_lo && xi <= w.speed_hi) {
      const State r = eigenvector(*flux_, w.profile(xi), w.family);
      return {(-xi / t) * r, (1.0 / t) * r};
    }
  }
  return {State(n, 0.0), State(n, 0.0)};
}

RiemannSolution riemann_solve(FluxPtr flux, const State& left, const State& right, const RiemannOptions& opt) {
  if (!flux) throw Error(ErrorCode::InvalidArgument, "missing flux");
  const std::size_t n = static_cast<std::size_t>(flux->size());
  if (left.size() != n || right.size() != n) throw Error(ErrorCode::DimensionMismatch, "state size differs from flux size");
  for (double x : left) if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite state");
  for (double x : right) if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite state");
  if (n == 1) return solve_scalar(flux, left, right, opt);
  if (const auto* ps = dynamic_cast<const PSystem*>(flux.get())) return solve_psystem(flux, *ps, left, right, opt);
  throw Error(ErrorCode::InvalidArgument, "no Riemann solver for flux " + flux->name());
}

BVProfile as_bv(const RiemannSolution& sol, double t, const Window& window, int cheb_degree) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be non-negative");
  if (t == 0.0) return {initial_step(sol, window), 0.0};
  const int n = sol.flux().size();
  const Layout lay = layout(sol, t, window);
  std::vector<double> breakpoints;
  std::vector<std::vector<ChebPoly>> pieces(n);
  double error = 0.0;
  for (std::size_t c = 0; c < lay.cells.size(); ++c) {
    const Cell& cell = lay.cells[c];
    const Window dom(cell.lo, cell.hi);
    if (c > 0) breakpoints.push_back(cell.lo);
    if (cell.wave < 0) {
      for (int j = 0; j < n; ++j) pieces[j].push_back(ChebPoly::constant(dom, cell.state[j]));
    } else {
      const Wave& w = sol.waves()[cell.wave];
      auto fan = project_fan(dom, n, cheb_degree, [&](double x) { return w.profile(x / t); }, error);
      for (int j = 0; j < n; ++j) pieces[j].push_back(std::move(fan[j]));
    }
  }
  std::vector<PiecewiseBV> comps;
  for (int j = 0; j < n; ++j) comps.emplace_back(window, breakpoints, std::move(pieces[j]));
  return {BVVector(std::move(comps)), error};
}

MeasureVector time_derivative_measure(const RiemannSolution& sol, double t, const Window& window, int cheb_degree) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be non-negative");
  const FluxModel& f = sol.flux();
  const int n = f.size();
  if (t == 0.0) {
    // each jump carries -s [u]; a fan carries -int eps w'(eps) d eps
    State total(n, 0.0);
    for (const Wave& w : sol.waves()) {
      if (w.is_jump()) {
        total = total + (-w.speed) * (w.right - w.left);
      } else {
        for (int j = 0; j < n; ++j) {
          total[j] -= integrate_fixed(
              [&](double eps) { return eps * eigenvector(f, w.profile(eps), w.family)[j]; }, w.speed_lo, w.speed_hi, 20);
        }
      }
    }
    if (!sol.waves().empty()) require_inside(window, 0.0);
    std::vector<SignedMeasure> comps;
    for (int j = 0; j < n; ++j) {
      comps.push_back(sol.waves().empty() ? SignedMeasure(window) : SignedMeasure::dirac(window, 0.0, total[j]));
    }
    return MeasureVector(std::move(comps));
  }
  return derivative_measure(
      sol, t, window, cheb_degree, [](const Wave& w) { return (-w.speed) * (w.right - w.left); },
      [&](const Wave& w, double x) {
        const double xi = x / t;
        return (-xi / t) * eigenvector(f, w.profile(xi), w.family);
      });
}

MeasureVector flux_derivative_measure(const RiemannSolution& sol, double t, const Window& window, int cheb_degree) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "flux derivative measure needs t > 0");
  const FluxModel& f = sol.flux();
  return derivative_measure(
      sol, t, window, cheb_degree, [&](const Wave& w) { return f.flux(w.right) - f.flux(w.left); },
      [&](const Wave& w, double x) {
        const State u = w.profile(x / t);
        return (1.0 / t) * mat_vec(f.jacobian(u), eigenvector(f, u, w.family));
      });
}

MeasureCurve solution_curve(const RiemannSolution& sol, const Window& window, double horizon, int cheb_degree) {
  // fail early if any wave leaves the window before the horizon
  for (const Wave& w : sol.waves()) {
    require_inside(window, w.speed_lo * horizon);
    require_inside(window, w.speed_hi * horizon);
  }
  auto value = [sol, window, cheb_degree](double t) { return to_measure(as_bv(sol, t, window, cheb_degree).value); };
  auto derivative = [sol, window, cheb_degree](double t) {
    return time_derivative_measure(sol, t, window, cheb_degree);
  };
  auto bv = [sol, window, cheb_degree](double t) { return as_bv(sol, t, window, cheb_degree).value; };
  return MeasureCurve(horizon, value, derivative, bv);
}

MeasureCurve frozen_curve(const RiemannSolution& sol, const Window& window, double horizon) {
  const BVVector u0 = initial_step(sol, window);
  const MeasureVector m0 = to_measure(u0);
  const FluxModel& f = sol.flux();
  const State jump = f.flux(sol.right()) - f.flux(sol.left());
  std::vector<SignedMeasure> d;
  for (int j = 0; j < f.size(); ++j) {
    d.push_back(sol.left() == sol.right() ? SignedMeasure(window) : SignedMeasure::dirac(window, 0.0, -jump[j]));
  }
  const MeasureVector claimed(std::move(d));
  return MeasureCurve(
      horizon, [m0](double) { return m0; }, [claimed](double) { return claimed; }, [u0](double) { return u0; });
}

}  // namespace wstar
