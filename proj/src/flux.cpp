#include "wstar/flux.hpp"

#include <cmath>

#include "wstar/error.hpp"

namespace wstar {

std::optional<EntropyPair> Burgers::entropy() const {
  return EntropyPair{
      [](const State& u) { return 0.5 * u[0] * u[0]; },
      [](const State& u) { return u[0] * u[0] * u[0] / 3.0; },
      [](const State& u) { return State{u[0]}; },
      [](const State& u) { return State{u[0] * u[0]}; },
  };
}

std::optional<EntropyPair> LinearAdvection::entropy() const {
  const double a = a_;
  return EntropyPair{
      [](const State& u) { return 0.5 * u[0] * u[0]; },
      [a](const State& u) { return 0.5 * a * u[0] * u[0]; },
      [](const State& u) { return State{u[0]}; },
      [a](const State& u) { return State{a * u[0]}; },
  };
}

PSystem::PSystem(double K, double gamma, bool closed_form) : K_(K), gamma_(gamma), closed_form_(closed_form) {
  if (!(K > 0.0) || !(gamma >= 1.0) || !std::isfinite(K) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "p-system needs K > 0 and gamma >= 1");
  }
}

double PSystem::pressure(double v) const { return K_ * std::pow(v, -gamma_); }

double PSystem::pressure_derivative(double v) const { return -gamma_ * K_ * std::pow(v, -gamma_ - 1.0); }

double PSystem::sound_speed(double v) const { return std::sqrt(gamma_ * K_) * std::pow(v, -0.5 * (gamma_ + 1.0)); }

double PSystem::riemann_phi(double v) const {
  if (gamma_ == 1.0) return std::sqrt(K_) * std::log(v);
  return std::sqrt(gamma_ * K_) * std::pow(v, 0.5 * (1.0 - gamma_)) * 2.0 / (1.0 - gamma_);
}

double PSystem::volume_for_speed(double c) const {
  return std::pow(c / std::sqrt(gamma_ * K_), -2.0 / (gamma_ + 1.0));
}

State PSystem::flux(const State& u) const { return {-u[1], pressure(u[0])}; }

std::vector<double> PSystem::jacobian(const State& u) const {
  return {0.0, -1.0, pressure_derivative(u[0]), 0.0};
}

std::vector<Eigenpair> PSystem::eigen(const State& u) const {
  const double v = u[0];
  const double c = sound_speed(v);
  const double norm = 2.0 * v / ((gamma_ + 1.0) * c);
  return {{-c, {norm, norm * c}}, {c, {-norm, norm * c}}};
}

State PSystem::lambda_gradient(const State& u, int k) const {
  const double v = u[0];
  const double dc = -0.5 * (gamma_ + 1.0) * sound_speed(v) / v;  // c'(v)
  return k == 0 ? State{-dc, 0.0} : State{dc, 0.0};
}

std::optional<EntropyPair> PSystem::entropy() const {
  const double K = K_, g = gamma_;
  auto p = [K, g](double v) { return K * std::pow(v, -g); };
  auto dp = [K, g](double v) { return -g * K * std::pow(v, -g - 1.0); };
  auto energy = [K, g](double v) {
    return g == 1.0 ? -K * std::log(v) : K * std::pow(v, 1.0 - g) / (g - 1.0);
  };
  return EntropyPair{
      [energy](const State& u) { return 0.5 * u[1] * u[1] + energy(u[0]); },
      [p](const State& u) { return u[1] * p(u[0]); },
      [p](const State& u) { return State{-p(u[0]), u[1]}; },
      [p, dp](const State& u) { return State{u[1] * dp(u[0]), p(u[0])}; },
  };
}

std::optional<MultiPoly> PSystem::polynomial(int i) const {
  if (i == 0) return MultiPoly{{-1.0, {0, 1}}};
  return std::nullopt;
}

std::optional<State> PSystem::rarefaction_state(int k, const State& from, double eps) const {
  if (!closed_form_) return std::nullopt;
  const double c = (k == 0) ? -eps : eps;
  if (!(c > 0.0)) return std::nullopt;
  const double v = volume_for_speed(c);
  const double dphi = riemann_phi(v) - riemann_phi(from[0]);
  return State{v, k == 0 ? from[1] + dphi : from[1] - dphi};
}

State mat_vec(const std::vector<double>& m, const State& v) {
  const std::size_t n = v.size();
  State out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
  }
  return out;
}

double dot(const State& a, const State& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const State& a) { return std::sqrt(dot(a, a)); }

State operator-(const State& a, const State& b) {
  State r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

State operator+(const State& a, const State& b) {
  State r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

State operator*(double c, const State& a) {
  State r(a);
  for (double& x : r) x *= c;
  return r;
}

}  // namespace wstar
