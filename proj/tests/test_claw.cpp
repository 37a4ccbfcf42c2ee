#include <memory>

#include "doctest.h"
#include "support.hpp"
#include "wstar/claw.hpp"
#include "wstar/verify.hpp"

using namespace wstar;
using doctest::Approx;

namespace {

FluxPtr burgers() { return std::make_shared<Burgers>(); }

const Window shock_window(-2.0, 2.0);

double max_diff(const State& a, const State& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// right state on the 2-rarefaction curve of p = K v^-gamma, from Riemann invariants
State psystem_fan_right(double K, double gamma, const State& left, double speed) {
  const double v = std::pow(speed * speed / (gamma * K), -1.0 / (gamma + 1.0));
  auto phi = [&](double w) {
    return gamma == 1.0 ? std::sqrt(K) * std::log(w)
                        : 2.0 * std::sqrt(gamma * K) * std::pow(w, 0.5 * (1.0 - gamma)) / (1.0 - gamma);
  };
  return {v, left[1] - (phi(v) - phi(left[0]))};
}

double residual_sum(const MeasureVector& a, const MeasureVector& b) { return vector_norm(add(a, b)); }

}  // namespace

TEST_CASE("riemann_solve examples") {
  const RiemannSolution s = riemann_solve(burgers(), {1.0}, {0.0});
  REQUIRE(s.waves().size() == 1);
  CHECK(s.waves()[0].kind == WaveKind::Shock);
  CHECK(std::abs(s.waves()[0].speed - 0.5) <= 1e-12);

  CHECK(riemann_solve(burgers(), {0.7}, {0.7}).waves().empty());

  const auto ps = std::make_shared<PSystem>(1.0, 1.0);
  const RiemannSolution p = riemann_solve(ps, {1.0, 0.0}, {0.5, -std::sqrt(2.0) / 2});
  REQUIRE(p.waves().size() == 1);
  const Wave& w = p.waves()[0];
  CHECK(w.kind == WaveKind::Shock);
  CHECK(w.family == 0);
  CHECK(w.speed == Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rh_check(w, *ps) < 1e-12);
  CHECK(p.states().size() == 2);
}

TEST_CASE("reversed Burgers data gives a rarefaction") {
  const RiemannSolution s = riemann_solve(burgers(), {0.0}, {1.0});
  REQUIRE(s.waves().size() == 1);
  CHECK(s.waves()[0].kind == WaveKind::Rarefaction);
  CHECK(s.waves()[0].speed_lo == 0.0);
  CHECK(s.waves()[0].speed_hi == 1.0);
}

TEST_CASE("linear advection gives a contact") {
  const RiemannSolution s = riemann_solve(std::make_shared<LinearAdvection>(0.3), {2.0}, {-1.0});
  REQUIRE(s.waves().size() == 1);
  CHECK(s.waves()[0].kind == WaveKind::Contact);
  CHECK(s.waves()[0].speed == 0.3);
  CHECK(lax_check(s.waves()[0], s.flux()).pass);
}

TEST_CASE("sample examples") {
  CHECK(riemann_solve(burgers(), {1.0}, {0.0}).sample(0.0, 1.0) == State{1.0});
  CHECK(riemann_solve(burgers(), {0.0}, {1.0}).sample(0.5, 1.0)[0] == Approx(0.5).epsilon(1e-15));
  const RiemannSolution p = riemann_solve(std::make_shared<PSystem>(1.0, 1.0), {1.0, 0.0}, {0.5, -std::sqrt(2.0) / 2});
  CHECK(p.sample(-2.0, 1.0) == State{1.0, 0.0});
  CHECK(max_diff(p.sample(0.0, 1.0), {0.5, -std::sqrt(2.0) / 2}) == 0.0);
  // t = 0 is the initial step
  CHECK(p.sample(-1e-9, 0.0) == State{1.0, 0.0});
}

TEST_CASE("as_bv examples") {
  const BVProfile s = as_bv(riemann_solve(burgers(), {1.0}, {0.0}), 1.0, shock_window);
  REQUIRE(s.value[0].breakpoints().size() == 1);
  CHECK(s.value[0].breakpoints()[0] == Approx(0.5).epsilon(1e-15));
  CHECK(s.value[0](0.0) == 1.0);
  CHECK(s.value[0](1.0) == 0.0);
  CHECK(s.projection_error == 0.0);

  const BVProfile r = as_bv(riemann_solve(burgers(), {0.0}, {1.0}), 1.0, shock_window);
  // the fan is x itself; what remains is interpolation rounding
  CHECK(r.projection_error <= 1e-14);
  const int fan = r.value[0].piece_index(0.5);
  CHECK(r.value[0].pieces()[fan].chopped(1e-14).degree() == 1);
  for (double x : {0.1, 0.5, 0.9}) CHECK(r.value[0](x) == Approx(x).epsilon(1e-14));

  CHECK_THROWS_AS(as_bv(riemann_solve(burgers(), {1.0}, {0.0}), 10.0, shock_window), Error);
}

TEST_CASE("p-system 2-rarefaction projects below 1e-10 at degree 32") {
  const double K = 1.0, gamma = 1.4;
  const State left{1.0, 0.0};
  const State right = psystem_fan_right(K, gamma, left, 1.6);
  const RiemannSolution sol = riemann_solve(std::make_shared<PSystem>(K, gamma), left, right);
  REQUIRE(sol.waves().size() == 1);
  CHECK(sol.waves()[0].kind == WaveKind::Rarefaction);
  CHECK(sol.waves()[0].family == 1);
  const Window w(-3.0, 3.0);
  const BVProfile bv = as_bv(sol, 1.0, w, 32);
  CHECK(bv.projection_error < 1e-10);
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = w.a() + w.length() * i / 10000.0;
    worst = std::max(worst, max_diff(bv.value(x), sol.sample(x, 1.0)));
  }
  CHECK(worst < 1e-10);
  // fan states obey lambda_2(w(eps)) = eps
  const Wave& fan = sol.waves()[0];
  for (double eps : {1.2, 1.4, 1.55}) {
    if (eps > fan.speed_lo && eps < fan.speed_hi) CHECK(sol.flux().lambda(fan.profile(eps), 1) == Approx(eps).epsilon(1e-12));
  }
}

TEST_CASE("RK4 integral curves agree with the closed-form fan") {
  const State left{1.0, 0.0};
  const State right = psystem_fan_right(1.0, 1.4, left, 1.6);
  const RiemannSolution exact = riemann_solve(std::make_shared<PSystem>(1.0, 1.4), left, right);
  const RiemannSolution rk4 = riemann_solve(std::make_shared<PSystem>(1.0, 1.4, false), left, right);
  REQUIRE(rk4.waves().size() == exact.waves().size());
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = -3.0 + 6.0 * i / 200.0;
    worst = std::max(worst, max_diff(exact.sample(x, 1.0), rk4.sample(x, 1.0)));
  }
  CHECK(worst < 1e-8);
  CHECK(quasilinear_residual(rk4, 1.4, 1.0) <= 1e-8);
}

TEST_CASE("vacuum is signalled") {
  try {
    riemann_solve(std::make_shared<PSystem>(1.0, 1.4), {1.0, -10.0}, {1.0, 10.0});
    FAIL("expected VacuumFormation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VacuumFormation);
  }
  CHECK_THROWS_AS(riemann_solve(std::make_shared<PSystem>(1.0, 1.4), {-1.0, 0.0}, {1.0, 0.0}), Error);
}

TEST_CASE("derivative measure examples") {
  const RiemannSolution s = riemann_solve(burgers(), {1.0}, {0.0});
  const MeasureVector dt = time_derivative_measure(s, 1.0, shock_window);
  const MeasureVector dx = flux_derivative_measure(s, 1.0, shock_window);
  REQUIRE(dt[0].atoms().size() == 1);
  CHECK(dt[0].atoms()[0].x == Approx(0.5));
  CHECK(dt[0].atoms()[0].weight == Approx(0.5).epsilon(1e-15));
  REQUIRE(dx[0].atoms().size() == 1);
  CHECK(dx[0].atoms()[0].weight == Approx(-0.5).epsilon(1e-15));
  CHECK(residual_sum(dt, dx) <= 1e-15);

  const RiemannSolution c = riemann_solve(burgers(), {0.4}, {0.4});
  CHECK(vector_norm(time_derivative_measure(c, 1.0, shock_window)) == 0.0);
  CHECK(vector_norm(flux_derivative_measure(c, 1.0, shock_window)) == 0.0);

  const RiemannSolution r = riemann_solve(burgers(), {0.0}, {1.0});
  const MeasureVector rt = time_derivative_measure(r, 1.0, shock_window);
  const MeasureVector rx = flux_derivative_measure(r, 1.0, shock_window);
  const SignedMeasure fan_t = restrict(rt[0], Window(0.0, 1.0));
  const SignedMeasure fan_x = restrict(rx[0], Window(0.0, 1.0));
  for (const ChebPoly& p : fan_t.density()) {
    for (double x : {0.2, 0.7}) if (p.domain().contains_open(x)) CHECK(p(x) == Approx(-x).epsilon(1e-13));
  }
  for (const ChebPoly& p : fan_x.density()) {
    for (double x : {0.2, 0.7}) if (p.domain().contains_open(x)) CHECK(p(x) == Approx(x).epsilon(1e-13));
  }
  CHECK(residual_sum(rt, rx) <= 1e-13);
  CHECK_THROWS_AS(flux_derivative_measure(r, 0.0, shock_window), Error);
}

TEST_CASE("solution_curve examples") {
  const RiemannSolution s = riemann_solve(burgers(), {1.0}, {0.0});
  const MeasureCurve u = solution_curve(s, shock_window, 1.0);
  const TestVector flat{plateau_over(Window(-1.9, 1.9), 0.05)};
  const TestVector all{plateau_over(Window(-1.99, 1.99), 0.005)};
  // plateau covering the window up to a sliver at each end
  CHECK(pair_at(u, all, 1.0) == Approx(2.5).epsilon(1e-2));
  CHECK(pair_at(u, flat, 1.0) == Approx(1.9 + 0.5 + support::simpson([&](double x) { return flat[0](x); }, -2, -1.9, 2000)).epsilon(1e-10));

  // initial data attained in the limit t -> 0
  const TestVector phi{standard_bump(0.1, 0.8)};
  const double initial = support::simpson([&](double x) { return x < 0 ? phi[0](x) : 0.0; }, -0.7, 0.0, 20000);
  CHECK(std::abs(pair_at(u, phi, 1e-3) - initial) < 1e-2 * sup_norm(phi));

  const MeasureCurve c = solution_curve(riemann_solve(burgers(), {0.3}, {0.3}), shock_window, 1.0);
  for (double t : {0.1, 0.5, 0.9}) CHECK(pair_at(c, phi, t) == Approx(pair_at(c, phi, 0.05)).epsilon(1e-14));

  CHECK_THROWS_AS(solution_curve(s, shock_window, 10.0), Error);
}

TEST_CASE("Burgers shock derivative has norm |du| |sigma| at every t") {
  const MeasureCurve u = solution_curve(riemann_solve(burgers(), {1.0}, {0.0}), shock_window, 1.0);
  for (double t : {0.1, 0.33, 0.8, 1.0}) CHECK(vector_norm(u.derivative(t)) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rarefaction derivative is bounded by the flux variation along the fan") {
  const MeasureCurve u = solution_curve(riemann_solve(burgers(), {0.0}, {1.0}), shock_window, 1.0);
  for (double t : {0.2, 0.5, 1.0}) CHECK(vector_norm(u.derivative(t)) <= 0.5 + 1e-12);
}

TEST_CASE("property: random p-system solutions satisfy RH, Lax and self-similarity") {
  support::Rng rng(1234);
  int shocks = 0, fans = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double gamma = std::array<double, 3>{1.0, 1.4, 3.0}[support::uniform_int(rng, 0, 2)];
    const auto ps = std::make_shared<PSystem>(support::uniform(rng, 0.5, 2.0), gamma);
    const State l{support::uniform(rng, 0.5, 2.0), support::uniform(rng, -0.5, 0.5)};
    const State r{support::uniform(rng, 0.5, 2.0), support::uniform(rng, -0.5, 0.5)};
    const RiemannSolution sol = riemann_solve(ps, l, r);
    CHECK(sol.states().front() == l);
    CHECK(sol.states().back() == r);
    double prev = -std::numeric_limits<double>::infinity();
    for (const Wave& w : sol.waves()) {
      CHECK(w.speed_lo >= prev);
      prev = w.speed_hi;
      if (w.kind == WaveKind::Shock) {
        ++shocks;
        CHECK(rh_check(w, *ps) <= 1e-12 * std::max(1.0, norm2(ps->flux(w.left))));
        CHECK(lax_check(w, *ps).pass);
      } else {
        ++fans;
        CHECK(w.speed_lo < w.speed_hi);
        const double eps = 0.5 * (w.speed_lo + w.speed_hi);
        CHECK(ps->lambda(w.profile(eps), w.family) == Approx(eps).epsilon(1e-12));
      }
    }
    for (int k = 0; k < 5; ++k) {
      const double x = support::uniform(rng, -3, 3), t = support::uniform(rng, 0.1, 1), c = support::uniform(rng, 0.2, 5);
      CHECK(max_diff(sol.sample(c * x, c * t), sol.sample(x, t)) <= 1e-13);
    }
    for (double t : {0.3, 1.0}) {
      const Window w(-8.0, 8.0);
      const double scale = std::max(1.0, vector_norm(time_derivative_measure(sol, t, w)));
      CHECK(residual_sum(time_derivative_measure(sol, t, w), flux_derivative_measure(sol, t, w)) <= 1e-9 * scale);
    }
  }
  CHECK(shocks > 0);
  CHECK(fans > 0);
}

TEST_CASE("property: quasilinear form vanishes inside random Burgers fans") {
  support::Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = support::uniform(rng, -1, 0.5), b = a + support::uniform(rng, 0.1, 1);
    const RiemannSolution sol = riemann_solve(burgers(), {a}, {b});
    const double t = support::uniform(rng, 0.1, 1);
    const double x = t * support::uniform(rng, a + 1e-3, b - 1e-3);
    CHECK(quasilinear_residual(sol, x, t) <= 1e-12);
  }
  const RiemannSolution s = riemann_solve(burgers(), {1.0}, {0.0});
  CHECK_THROWS_AS(quasilinear_residual(s, 0.5, 1.0), Error);
}
