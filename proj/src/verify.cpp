#include "wstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wstar/quadrature.hpp"

namespace wstar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double checked(const QuadResult& r, const char* what) {
  if (!r.converged) throw Error(ErrorCode::QuadratureNonConvergent, what);
  return r.value;
}

std::vector<double> sorted_unique(std::vector<double> v, double lo, double hi) {
  v.push_back(lo);
  v.push_back(hi);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  const double tol = 1e-14 * std::max(1.0, hi - lo);
  for (double x : v) {
    if (x < lo || x > hi) continue;
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  if (out.back() < hi) out.back() = hi;
  return out;
}

// Fan cells (lo, hi, wave index) of a solution at time t.
struct FanCell {
  double lo, hi;
  const Wave* wave;
};

std::vector<FanCell> fan_cells(const RiemannSolution& sol, double t) {
  std::vector<FanCell> out;
  for (const Wave& w : sol.waves()) {
    if (!w.is_jump()) out.push_back({w.speed_lo * t, w.speed_hi * t, &w});
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void ToleranceConfig::validate() const {
  for (double v : {pairing, fd_step, quadrature, rh, entropy, lax_margin, distributional, holder_stability}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (holder_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two Hoelder samples");
}

double weakstar_residual(const MeasureCurve& curve, const FluxModel& flux, const TestVector& phi, double t,
                         const ToleranceConfig& tol) {
  const PairingOptions po = tol.pairing_options();
  const double T = curve.horizon();
  const double dt = fd_derivative([&](double tau) { return pair_at(curve, phi, tau, po); }, t, T, tol.fd_step * T);
  const MeasureVector dF = dderiv(compose_flux(curve.bv(t), flux).value);
  return std::abs(dt + pair_vector(dF, phi, po));
}

MeasureCurve flux_derivative_curve(const MeasureCurve& curve, FluxPtr flux) {
  if (!flux) throw Error(ErrorCode::InvalidArgument, "missing flux");
  auto value = [curve, flux](double t) { return dderiv(compose_flux(curve.bv(t), *flux).value); };
  return MeasureCurve(curve.horizon(), value);
}

double gelfand_form_residual(const MeasureCurve& curve, FluxPtr flux, const TestVector& phi, double s, double t,
                             const ToleranceConfig& tol) {
  const PairingOptions po = tol.pairing_options();
  const double delta = pair_at(curve, phi, t, po) - pair_at(curve, phi, s, po);
  const MeasureCurve dF = flux_derivative_curve(curve, std::move(flux));
  return std::abs(delta + gelfand_integral(dF, phi, s, t, tol.quadrature, po));
}

double rh_check(const Wave& wave, const FluxModel& flux) {
  return norm2(flux.flux(wave.right) - flux.flux(wave.left) - wave.speed * (wave.right - wave.left));
}

LaxVerdict lax_check(const Wave& wave, const FluxModel& flux, double margin) {
  const int k = wave.family;
  const double lm = flux.lambda(wave.left, k), lp = flux.lambda(wave.right, k), s = wave.speed;
  LaxVerdict v;
  if (wave.kind == WaveKind::Rarefaction) {
    v.deficit = std::max(0.0, lm - lp);
  } else if (flux.family(k) == FamilyKind::LinearlyDegenerate) {
    v.deficit = std::max(0.0, std::max(std::abs(lm - s), std::abs(lp - s)) - margin);
  } else {
    v.deficit = std::max({0.0, s - lm + margin, lp - s + margin});
  }
  v.pass = v.deficit == 0.0;
  return v;
}

double quasilinear_residual(const RiemannSolution& sol, double x, double t) {
  const auto [ut, ux] = sol.partials(x, t);
  const State u = sol.sample(x, t);
  return norm2(ut + mat_vec(sol.flux().jacobian(u), ux));
}

EntropyReport entropy_check(const RiemannSolution& sol, double t, const Window& window, double tol,
                            int cheb_degree) {
  const FluxModel& f = sol.flux();
  const auto pair = f.entropy();
  if (!pair) throw Error(ErrorCode::MissingEntropyPair, "flux " + f.name() + " has no entropy pair");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "entropy check needs t > 0");
  EntropyReport rep{MeasureVector::zero(window, 1)};
  std::vector<Atom> atoms;
  for (const Wave& w : sol.waves()) {
    if (!w.is_jump()) continue;
    const double x = w.speed * t;
    if (!window.contains_open(x)) throw Error(ErrorCode::WaveOutsideWindow, "wave leaves the window");
    const double weight = -w.speed * (pair->eta(w.right) - pair->eta(w.left)) + (pair->q(w.right) - pair->q(w.left));
    atoms.push_back({x, weight});
    rep.max_atom = atoms.size() == 1 ? weight : std::max(rep.max_atom, weight);
  }
  auto density_at = [&](double x) {
    const auto [ut, ux] = sol.partials(x, t);
    const State u = sol.sample(x, t);
    return dot(pair->grad_eta(u), ut) + dot(pair->grad_q(u), ux);
  };
  std::vector<double> cuts;
  for (const FanCell& c : fan_cells(sol, t)) {
    if (!window.contains_open(c.lo) || !window.contains_open(c.hi)) {
      throw Error(ErrorCode::WaveOutsideWindow, "wave leaves the window");
    }
    cuts.push_back(c.lo);
    cuts.push_back(c.hi);
  }
  const std::vector<double> grid = sorted_unique(cuts, window.a(), window.b());
  std::vector<ChebPoly> density;
  bool any_density = false;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Window cell(grid[i - 1], grid[i]);
    bool in_fan = false;
    for (const FanCell& c : fan_cells(sol, t)) in_fan = in_fan || (cell.mid() > c.lo && cell.mid() < c.hi);
    if (!in_fan) {
      density.push_back(ChebPoly::constant(cell, 0.0));
      continue;
    }
    any_density = true;
    const GaussRule rule = gauss_legendre(20);
    for (double s : rule.nodes) {
      const double d = density_at(cell.mid() + 0.5 * cell.length() * s);
      rep.max_density = std::max(rep.max_density, d);
    }
    density.push_back(ChebPoly::interpolate(cell, density_at, cheb_degree).chopped());
  }
  if (atoms.empty()) rep.max_atom = 0.0;
  rep.measure = MeasureVector({SignedMeasure(window, std::move(atoms), any_density ? std::move(density) : std::vector<ChebPoly>{})});
  rep.pass = rep.max_atom <= tol && rep.max_density <= tol;
  return rep;
}

double distributional_residual(const RiemannSolution& sol, const TestFunction& alpha, const TestFunction& beta,
                               double tol) {
  const FluxModel& f = sol.flux();
  const int n = f.size();
  const Window xs = alpha.support();
  const double t0 = std::max(0.0, beta.support().a()), t1 = beta.support().b();

  std::vector<double> speeds;
  for (const Wave& w : sol.waves()) {
    speeds.push_back(w.speed_lo);
    if (!w.is_jump()) speeds.push_back(w.speed_hi);
  }
  const std::vector<double> xbreaks = sorted_unique(alpha.breakpoints(), xs.a(), xs.b());
  std::vector<double> tcuts = beta.breakpoints();
  for (double s : speeds) {
    if (s == 0.0) continue;
    for (double xb : xbreaks) tcuts.push_back(xb / s);
  }

  auto integrate_pieces = [&](const std::vector<double>& grid, const std::function<double(double)>& g) {
    double total = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      total += checked(integrate_adaptive(g, grid[i - 1], grid[i], tol), "distributional residual quadrature");
    }
    return total;
  };

  State residual(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double bulk = 0.0;
    if (t1 > t0) {
      auto inner = [&](double t) {
        std::vector<double> cuts(xbreaks);
        for (double s : speeds) cuts.push_back(s * t);
        const double b = beta.value(t), db = beta.derivative(t);
        return integrate_pieces(sorted_unique(cuts, xs.a(), xs.b()), [&](double x) {
          const State u = sol.sample(x, t);
          return u[j] * alpha.value(x) * db + f.flux(u)[j] * alpha.derivative(x) * b;
        });
      };
      bulk = integrate_pieces(sorted_unique(tcuts, t0, t1), inner);
    }
    std::vector<double> cuts(xbreaks);
    cuts.push_back(0.0);
    const double b0 = beta.value(0.0);
    const double initial = b0 == 0.0 ? 0.0 : integrate_pieces(sorted_unique(cuts, xs.a(), xs.b()), [&](double x) {
      return (x < 0.0 ? sol.left()[j] : sol.right()[j]) * alpha.value(x) * b0;
    });
    residual[j] = bulk + initial;
  }
  return norm2(residual);
}

HolderReport holder_check(const MeasureCurve& curve, double q, int n_samples, double stability) {
  if (!(q >= 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in [1, inf]");
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const double exponent = std::isinf(q) ? 1.0 : 1.0 - 1.0 / q;
  const double T = curve.horizon();
  auto constant = [&](int n) {
    std::vector<MeasureVector> values;
    for (int i = 0; i < n; ++i) values.push_back(curve(T * i / (n - 1)));
    double c = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dt = T * (j - i) / (n - 1);
        c = std::max(c, vector_norm(subtract(values[j], values[i])) / std::pow(dt, exponent));
      }
    }
    return c;
  };
  HolderReport rep;
  rep.constant = constant(n_samples);
  rep.refined_constant = constant(2 * n_samples - 1);
  const double scale = std::max(rep.constant, rep.refined_constant);
  rep.stable = scale <= 1e-14 || std::abs(rep.refined_constant - rep.constant) <= stability * scale;
  rep.pass = std::isfinite(scale) && rep.stable;
  return rep;
}

VariationBoundReport variation_bound_check(const MeasureCurve& curve, const std::function<double(double)>& g,
                                           const std::vector<double>& times) {
  VariationBoundReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (double t : times) {
    const double tv = vector_norm(dderiv(curve.bv(t)));
    const double bound = g(t);
    rep.max_variation = std::max(rep.max_variation, tv);
    rep.max_excess = std::max(rep.max_excess, tv - bound - 1e-12 * std::max(1.0, std::abs(bound)));
  }
  if (times.empty()) rep.max_excess = 0.0;
  rep.pass = rep.max_excess <= 0.0;
  return rep;
}

GWeakReport gweak_hypothesis_check(const MeasureCurve& curve, const std::vector<TestVector>& family,
                                   const std::function<double(double)>& v, double q, const std::vector<double>& times,
                                   const ToleranceConfig& tol) {
  const PairingOptions po = tol.pairing_options();
  const double T = curve.horizon();
  const double h = tol.fd_step * T;
  GWeakReport rep;
  rep.max_domination_excess = -std::numeric_limits<double>::infinity();
  for (const TestVector& phi : family) {
    auto g = [&](double t) { return pair_at(curve, phi, t, po); };
    auto vphi = [&](double t) { return fd_derivative(g, t, T, h); };
    const double bound_scale = sup_norm(phi);
    for (std::size_t i = 0; i < times.size(); ++i) {
      rep.max_domination_excess = std::max(rep.max_domination_excess, std::abs(vphi(times[i])) - v(times[i]) * bound_scale);
      if (i == 0) continue;
      const double increment = g(times[i]) - g(times[i - 1]);
      const double integral = checked(integrate_adaptive(vphi, times[i - 1], times[i], 0.1 * tol.pairing),
                                      "G-weak hypothesis quadrature");
      rep.max_ftc_residual = std::max(rep.max_ftc_residual, std::abs(increment - integral));
    }
  }
  if (family.empty() || times.empty()) rep.max_domination_excess = 0.0;
  double vq = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = std::abs(v(times[i - 1])), b = std::abs(v(times[i]));
    vq = std::isinf(q) ? std::max({vq, a, b}) : vq + 0.5 * (times[i] - times[i - 1]) * (std::pow(a, q) + std::pow(b, q));
  }
  rep.v_norm = std::isinf(q) ? vq : std::pow(vq, 1.0 / q);
  rep.pass = rep.max_ftc_residual <= tol.pairing && rep.max_domination_excess <= tol.pairing;
  return rep;
}

std::vector<std::string> CertificationReport::failing() const {
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (!r.pass) out.push_back(r.name);
  }
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "weakstar_residual", "gelfand_form_residual",   "ftc_residual", "rh_check",
      "lax_check",         "entropy_check",           "quasilinear_residual",
      "distributional_residual", "holder_check", "variation_bound_check", "gweak_hypothesis_check"};
  return names;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CertificationReport certify(const Candidate& c, const ToleranceConfig& tol) {
  tol.validate();
  if (!c.flux) throw Error(ErrorCode::InvalidArgument, "candidate has no flux");
  if (c.times.empty()) throw Error(ErrorCode::InvalidArgument, "candidate has no sample times");
  const int n = c.flux->size();
  const double T = c.curve.horizon();

  std::vector<TestVector> vectors;
  for (const TestFunction& phi : c.family) {
    for (int i = 0; i < n; ++i) vectors.push_back(unit_test_vector(phi, n, i));
  }

  std::string common = c.label + "|" + c.flux->name() + "|seed=" + std::to_string(c.seed) + "|T=" + fmt(T) +
                       "|window=" + fmt(c.window.a()) + "," + fmt(c.window.b()) + "|times=";
  for (double t : c.times) common += fmt(t) + ",";
  common += "|family=";
  for (const TestFunction& phi : c.family) {
    const BumpSpec& s = phi.spec();
    common += std::to_string(static_cast<int>(s.kind)) + ":" + fmt(s.center) + ":" + fmt(s.radius) + ":" +
              fmt(s.plateau_half_width) + ";";
  }
  if (c.solution) {
    common += "|left=";
    for (double x : c.solution->left()) common += fmt(x) + ",";
    common += "|right=";
    for (double x : c.solution->right()) common += fmt(x) + ",";
  }

  CertificationReport rep;
  auto wanted = [&](const std::string& name) { return c.checks.empty() || c.checks.count(name) > 0; };
  auto run = [&](const std::string& name, double tolerance, const std::function<std::pair<double, bool>()>& body,
                 const std::string& extra = "") {
    if (!wanted(name)) return;
    CheckRecord r;
    r.name = name;
    r.tolerance = tolerance;
    r.digest = fnv1a_hex(name + "|" + common + "|tol=" + fmt(tolerance) + extra);
    try {
      const auto [residual, pass] = body();
      r.residual = residual;
      r.pass = pass;
    } catch (const std::exception& e) {
      r.residual = kNaN;
      r.pass = false;
      r.detail = e.what();
    }
    rep.records.push_back(std::move(r));
  };
  auto at_most = [](double residual, double tolerance) { return std::pair{residual, residual <= tolerance}; };

  run("weakstar_residual", tol.pairing, [&] {
    double worst = 0.0;
    for (double t : c.times) {
      for (const TestVector& phi : vectors) worst = std::max(worst, weakstar_residual(c.curve, *c.flux, phi, t, tol));
    }
    return at_most(worst, tol.pairing);
  });

  const double s0 = c.times.front(), s1 = c.times.back();
  run("gelfand_form_residual", tol.pairing, [&] {
    double worst = 0.0;
    for (const TestVector& phi : vectors) worst = std::max(worst, gelfand_form_residual(c.curve, c.flux, phi, s0, s1, tol));
    return at_most(worst, tol.pairing);
  });

  if (c.curve.has_derivative()) {
    run("ftc_residual", tol.pairing, [&] {
      GelfandOptions go{tol.pairing_options(), tol.quadrature, tol.fd_step};
      double worst = 0.0;
      for (const TestVector& phi : vectors) worst = std::max(worst, ftc_residual(c.curve, phi, s0, s1, go));
      return at_most(worst, tol.pairing);
    });
  }

  if (c.solution) {
    const RiemannSolution& sol = *c.solution;
    run("rh_check", tol.rh, [&] {
      double worst = 0.0;
      for (const Wave& w : sol.waves()) {
        if (w.is_jump()) worst = std::max(worst, rh_check(w, *c.flux));
      }
      return at_most(worst, tol.rh);
    });
    run("lax_check", tol.lax_margin, [&] {
      double worst = 0.0;
      for (const Wave& w : sol.waves()) worst = std::max(worst, lax_check(w, *c.flux, tol.lax_margin).deficit);
      return std::pair{worst, worst == 0.0};
    });
    run("entropy_check", tol.entropy, [&] {
      double worst = -std::numeric_limits<double>::infinity();
      for (double t : c.times) {
        const EntropyReport e = entropy_check(sol, t, c.window, tol.entropy);
        worst = std::max({worst, e.max_atom, e.max_density});
      }
      return at_most(worst, tol.entropy);
    });
    run("quasilinear_residual", tol.pairing, [&] {
      double worst = 0.0;
      const int points = 41;
      for (double t : c.times) {
        for (int i = 1; i < points; ++i) {
          const double x = c.window.a() + c.window.length() * i / points;
          try {
            worst = std::max(worst, quasilinear_residual(sol, x, t));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::OnJumpPath) throw;
          }
        }
      }
      return at_most(worst, tol.pairing);
    });
    run("distributional_residual", tol.distributional, [&] {
      const TestFunction beta = plateau_over(Window(-0.25 * T, 0.5 * T), 0.25 * T);
      double worst = 0.0;
      for (const TestFunction& alpha : c.family) {
        worst = std::max(worst, distributional_residual(sol, alpha, beta, 0.01 * tol.distributional));
      }
      return at_most(worst, tol.distributional);
    });
  }

  run("holder_check", tol.holder_stability, [&] {
    const HolderReport h = holder_check(c.curve, c.q, tol.holder_samples, tol.holder_stability);
    return std::pair{h.constant, h.pass};
  });

  if (c.variation_bound) {
    const double g = *c.variation_bound;
    run("variation_bound_check", g, [&] {
      const VariationBoundReport v = variation_bound_check(c.curve, [g](double) { return g; }, c.times);
      return std::pair{v.max_variation, v.pass};
    }, "|g=" + fmt(g));
  }

  if (c.dominating_bound) {
    const double v = *c.dominating_bound;
    run("gweak_hypothesis_check", tol.pairing, [&] {
      std::vector<TestVector> fam;
      for (const TestFunction& phi : c.family) fam.push_back({phi});
      if (n != 1) fam = vectors;
      const GWeakReport g = gweak_hypothesis_check(c.curve, fam, [v](double) { return v; }, c.q, c.times, tol);
      return std::pair{std::max(g.max_ftc_residual, g.max_domination_excess), g.pass};
    }, "|v=" + fmt(v));
  }

  rep.overall_pass = !rep.records.empty() &&
                     std::all_of(rep.records.begin(), rep.records.end(), [](const CheckRecord& r) { return r.pass; });
  return rep;
}

}  // namespace wstar
