#include "wstar/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wstar/quadrature.hpp"

namespace wstar {

namespace {

double lerp(double a, double b, double s) { return a + s * (b - a); }

bool same_structure(const SignedMeasure& m, const SignedMeasure& n) {
  return m.atoms().size() == n.atoms().size() && m.density().size() == n.density().size() &&
         m.cantor_parts().size() == n.cantor_parts().size();
}

SignedMeasure interpolate(const SignedMeasure& m, const SignedMeasure& n, double s) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < m.atoms().size(); ++i) {
    atoms.push_back({lerp(m.atoms()[i].x, n.atoms()[i].x, s), lerp(m.atoms()[i].weight, n.atoms()[i].weight, s)});
  }
  std::vector<ChebPoly> density;
  for (std::size_t i = 0; i < m.density().size(); ++i) {
    const ChebPoly& p = m.density()[i];
    const ChebPoly& q = n.density()[i];
    const Window dom(lerp(p.domain().a(), q.domain().a(), s), lerp(p.domain().b(), q.domain().b(), s));
    std::vector<double> c(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double pk = k < p.coeffs().size() ? p.coeffs()[k] : 0.0;
      const double qk = k < q.coeffs().size() ? q.coeffs()[k] : 0.0;
      c[k] = lerp(pk, qk, s);
    }
    density.emplace_back(dom, std::move(c));
  }
  std::vector<CantorPart> cantor;
  for (std::size_t i = 0; i < m.cantor_parts().size(); ++i) {
    const CantorPart& p = m.cantor_parts()[i];
    const CantorPart& q = n.cantor_parts()[i];
    cantor.push_back({Window(lerp(p.carrier.a(), q.carrier.a(), s), lerp(p.carrier.b(), q.carrier.b(), s)),
                      lerp(p.mass, q.mass, s)});
  }
  return SignedMeasure(m.window(), std::move(atoms), std::move(density), std::move(cantor));
}

double require_ok(const QuadResult& r, const char* what) {
  if (!r.converged) throw Error(ErrorCode::QuadratureNonConvergent, what);
  return r.value;
}

}  // namespace

MeasureCurve::MeasureCurve(double horizon, MeasureFn value, MeasureFn derivative, BVFn bv)
    : horizon_(horizon), value_(std::move(value)), derivative_(std::move(derivative)), bv_(std::move(bv)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
  if (!value_) throw Error(ErrorCode::InvalidArgument, "curve needs a value evaluator");
}

MeasureCurve MeasureCurve::from_samples(std::vector<double> times, std::vector<MeasureVector> samples) {
  if (times.size() < 2 || times.size() != samples.size()) {
    throw Error(ErrorCode::InvalidArgument, "need at least two samples with matching times");
  }
  if (times.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "samples must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw Error(ErrorCode::InvalidArgument, "sample times must increase");
    if (samples[i].size() != samples[0].size() || !samples[i].window().same_as(samples[0].window())) {
      throw Error(ErrorCode::DimensionMismatch, "samples differ in size or window");
    }
  }
  const double horizon = times.back();
  auto value = [times = std::move(times), samples = std::move(samples)](double t) {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.end()) return samples.back();
    const std::size_t k = static_cast<std::size_t>(it - times.begin()) - 1;
    const double s = (t - times[k]) / (times[k + 1] - times[k]);
    if (s == 0.0) return samples[k];
    std::vector<SignedMeasure> out;
    for (int i = 0; i < samples[k].size(); ++i) {
      const SignedMeasure& m = samples[k][i];
      const SignedMeasure& n = samples[k + 1][i];
      out.push_back(same_structure(m, n) ? interpolate(m, n, s) : m);
    }
    return MeasureVector(std::move(out));
  };
  return MeasureCurve(horizon, std::move(value));
}

double MeasureCurve::check_time(double t) const {
  const double slack = 1e-12 * horizon_;
  if (!(t >= -slack && t <= horizon_ + slack)) throw Error(ErrorCode::InvalidArgument, "time outside [0, T]");
  return std::clamp(t, 0.0, horizon_);
}

MeasureVector MeasureCurve::operator()(double t) const { return value_(check_time(t)); }

MeasureVector MeasureCurve::derivative(double t) const {
  if (!derivative_) throw Error(ErrorCode::MissingDerivative, "curve has no derivative evaluator");
  return derivative_(check_time(t));
}

BVVector MeasureCurve::bv(double t) const {
  if (!bv_) throw Error(ErrorCode::NotBVRepresentable, "curve values have no BV representation");
  return bv_(check_time(t));
}

double pair_at(const MeasureCurve& curve, const TestVector& phi, double t, const PairingOptions& opt) {
  return pair_vector(curve(t), phi, opt);
}

double fd_derivative(const std::function<double(double)>& g, double t, double horizon, double h) {
  if (t - h >= 0.0 && t + h <= horizon) {
    auto central = [&](double step) { return (g(t + step) - g(t - step)) / (2.0 * step); };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
  }
  const double dir = (t - h < 0.0) ? 1.0 : -1.0;
  if (t + dir * 2.0 * h < 0.0 || t + dir * 2.0 * h > horizon) {
    throw Error(ErrorCode::InvalidArgument, "finite-difference step does not fit in [0, T]");
  }
  const double g0 = g(t);
  auto one_sided = [&](double step) {
    return dir * (-3.0 * g0 + 4.0 * g(t + dir * step) - g(t + dir * 2.0 * step)) / (2.0 * step);
  };
  return (4.0 * one_sided(0.5 * h) - one_sided(h)) / 3.0;
}

double gelfand_integral(const MeasureCurve& curve, const TestVector& phi, double s, double t, double tol,
                        const PairingOptions& opt) {
  if (!(s >= 0.0 && s <= t && t <= curve.horizon() * (1.0 + 1e-12))) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= s <= t <= T");
  }
  if (s == t) return 0.0;
  const QuadResult r = integrate_adaptive([&](double tau) { return pair_at(curve, phi, tau, opt); }, s, t, tol);
  return require_ok(r, "Gelfand integral exceeded its evaluation budget");
}

TVFunctionReport tv_function(const MeasureCurve& curve, double t, double tol, int max_level) {
  TVFunctionReport rep;
  if (!(t >= 0.0 && t <= curve.horizon())) throw Error(ErrorCode::InvalidArgument, "time outside [0, T]");
  if (t == 0.0) {
    rep.grid = {{0.0, 0.0}};
    rep.converged = true;
    return rep;
  }
  std::vector<MeasureVector> values{curve(0.0), curve(t)};
  std::vector<double> increments{vector_norm(subtract(values[1], values[0]))};
  double previous = increments[0];
  int growth_run = 0;
  for (int level = 1; level <= max_level; ++level) {
    const std::size_t intervals = std::size_t{1} << level;
    std::vector<MeasureVector> next;
    next.reserve(intervals + 1);
    for (std::size_t k = 0; k < values.size(); ++k) {
      next.push_back(values[k]);
      if (k + 1 < values.size()) next.push_back(curve(t * double(2 * k + 1) / double(intervals)));
    }
    values = std::move(next);
    increments.assign(intervals, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < intervals; ++k) {
      increments[k] = vector_norm(subtract(values[k + 1], values[k]));
      total += increments[k];
    }
    rep.levels = level;
    growth_run = (previous > 0.0 && total >= 1.9 * previous) ? growth_run + 1 : 0;
    const double change = total - previous;
    previous = total;
    if (growth_run >= 3) {
      rep.divergence_flag = true;
      break;
    }
    if (std::abs(change) < tol) {
      rep.converged = true;
      break;
    }
  }
  const std::size_t intervals = increments.size();
  double cumulative = 0.0;
  rep.grid.emplace_back(0.0, 0.0);
  for (std::size_t k = 0; k < intervals; ++k) {
    cumulative += increments[k];
    rep.grid.emplace_back(t * double(k + 1) / double(intervals), cumulative);
  }
  rep.value = cumulative;
  return rep;
}

double ftc_residual(const MeasureCurve& curve, const TestVector& phi, double s, double t, const GelfandOptions& opt) {
  if (!curve.has_derivative()) throw Error(ErrorCode::MissingDerivative, "FTC residual needs a derivative");
  const double delta = pair_at(curve, phi, t, opt.pairing) - pair_at(curve, phi, s, opt.pairing);
  if (s == t) return std::abs(delta);
  const QuadResult r = integrate_adaptive(
      [&](double tau) { return pair_vector(curve.derivative(tau), phi, opt.pairing); }, s, t, opt.quad_tol);
  return std::abs(delta - require_ok(r, "FTC integral exceeded its evaluation budget"));
}

std::vector<double> lebesgue_diff_check(const MeasureCurve& curve, const TestVector& phi, double t,
                                        const std::vector<double>& hs, const GelfandOptions& opt) {
  const double at = pair_at(curve, phi, t, opt.pairing);
  std::vector<double> out;
  for (double h : hs) {
    if (!(h > 0.0) || t + h > curve.horizon()) throw Error(ErrorCode::InvalidArgument, "need 0 < h, t + h <= T");
    out.push_back(std::abs(gelfand_integral(curve, phi, t, t + h, opt.quad_tol * h, opt.pairing) / h - at));
  }
  return out;
}

IBPReport ibp_check(const MeasureCurve& psi, const TestCurve& f, int samples, const GelfandOptions& opt) {
  if (!psi.has_derivative()) throw Error(ErrorCode::MissingDerivative, "integration by parts needs Psi'");
  const double T = psi.horizon();
  auto pair_value = [&](double t, bool derivative_of_f) {
    const MeasureVector m = psi(t);
    double s = 0.0;
    for (const auto& term : f) s += (derivative_of_f ? term.dbeta(t) : term.beta(t)) * pair_vector(m, term.phi, opt.pairing);
    return s;
  };
  auto pair_derivative = [&](double t) {
    const MeasureVector m = psi.derivative(t);
    double s = 0.0;
    for (const auto& term : f) s += term.beta(t) * pair_vector(m, term.phi, opt.pairing);
    return s;
  };
  IBPReport rep;
  rep.lhs = require_ok(integrate_adaptive(pair_derivative, 0.0, T, opt.quad_tol), "IBP integral exceeded its budget");
  rep.boundary = pair_value(T, false) - pair_value(0.0, false);
  const double inner = require_ok(integrate_adaptive([&](double t) { return pair_value(t, true); }, 0.0, T, opt.quad_tol),
                                  "IBP integral exceeded its budget");
  rep.rhs = rep.boundary - inner;
  const double h = opt.fd_step * T;
  for (int i = 0; i < samples; ++i) {
    const double t = T * (i + 0.5) / samples;
    const double lhs = fd_derivative([&](double tau) { return pair_value(tau, false); }, t, T, h);
    const double rhs = pair_derivative(t) + pair_value(t, true);
    rep.max_product_rule_residual = std::max(rep.max_product_rule_residual, std::abs(lhs - rhs));
  }
  rep.samples = samples;
  return rep;
}

CurveNormReport curve_norm(const MeasureCurve& curve, double q, int n_samples) {
  if (!(q >= 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in [1, inf]");
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const double T = curve.horizon();
  CurveNormReport rep;
  rep.q = q;
  if (std::isinf(q)) {
    for (int i = 0; i < n_samples; ++i) {
      const double t = T * i / (n_samples - 1);
      rep.value_term = std::max(rep.value_term, vector_norm(curve(t)));
      if (curve.has_derivative()) rep.derivative_term = std::max(rep.derivative_term, vector_norm(curve.derivative(t)));
    }
    rep.samples = n_samples;
  } else {
    // composite 5-point Gauss-Legendre
    const int panels = (n_samples + 4) / 5;
    const GaussRule rule = gauss_legendre(5);
    double value = 0.0, deriv = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = T * p / panels, half = 0.5 * T / panels;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = lo + half * (1.0 + rule.nodes[j]);
        value += half * rule.weights[j] * std::pow(vector_norm(curve(t)), q);
        if (curve.has_derivative()) deriv += half * rule.weights[j] * std::pow(vector_norm(curve.derivative(t)), q);
      }
    }
    rep.value_term = std::pow(value, 1.0 / q);
    rep.derivative_term = std::pow(deriv, 1.0 / q);
    rep.samples = panels * 5;
  }
  rep.value = rep.value_term + rep.derivative_term;
  return rep;
}

}  // namespace wstar
