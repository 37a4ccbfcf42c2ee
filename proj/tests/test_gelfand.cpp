#include <memory>

#include "doctest.h"
#include "support.hpp"
#include "wstar/claw.hpp"
#include "wstar/gelfand.hpp"
#include "wstar/verify.hpp"

using namespace wstar;
using doctest::Approx;

namespace {

const Window wide(-1.0, 2.0);

MeasureVector atom(double x, double w = 1.0) { return MeasureVector({SignedMeasure::dirac(wide, x, w)}); }

MeasureCurve constant_atom() {
  return MeasureCurve(1.0, [](double) { return atom(0.0); },
                      [](double) { return MeasureVector::zero(wide, 1); });
}

MeasureCurve linear_atom() {
  return MeasureCurve(1.0, [](double t) { return atom(0.0, t); }, [](double) { return atom(0.0); });
}

MeasureCurve moving_atom() {
  return MeasureCurve(1.0, [](double t) { return atom(t); });
}

// x on a plateau that covers every atom position in [0, 1]
TestVector identity_phi() { return {poly_over(Window(-0.5, 1.5), 0.4, {0.0, 1.0})}; }

TestVector peak_at_zero() { return {standard_bump(0.0, 0.5)}; }

RiemannSolution burgers_shock() { return riemann_solve(std::make_shared<Burgers>(), {1.0}, {0.0}); }

const Window shock_window(-2.0, 2.0);

}  // namespace

TEST_CASE("gelfand_integral examples") {
  CHECK(gelfand_integral(constant_atom(), peak_at_zero(), 0, 1, 1e-12) == Approx(1.0).epsilon(1e-12));
  CHECK(gelfand_integral(moving_atom(), identity_phi(), 0, 1, 1e-12) == Approx(0.5).epsilon(1e-10));
  const MeasureCurve u = solution_curve(burgers_shock(), shock_window, 1.0);
  const MeasureCurve dF = flux_derivative_curve(u, std::make_shared<Burgers>());
  const TestVector phi{plateau_over(Window(0.0, 0.5), 0.3)};
  CHECK(gelfand_integral(dF, phi, 0, 1, 1e-10) == Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("gelfand_integral rejects bad intervals") {
  CHECK_THROWS_AS(gelfand_integral(constant_atom(), peak_at_zero(), 0.5, 0.2, 1e-10), Error);
  CHECK_THROWS_AS(gelfand_integral(constant_atom(), peak_at_zero(), 0.0, 1.5, 1e-10), Error);
}

TEST_CASE("tv_function examples") {
  const TVFunctionReport c = tv_function(constant_atom(), 1.0, 1e-8);
  CHECK(c.value == 0.0);
  CHECK(c.converged);
  CHECK_FALSE(c.divergence_flag);

  const MeasureCurve u = solution_curve(burgers_shock(), shock_window, 1.0);
  for (double t : {0.25, 0.6, 1.0}) {
    const TVFunctionReport r = tv_function(u, t, 1e-8);
    CHECK(r.value == Approx(t / 2).epsilon(1e-8));
    CHECK(r.converged);
    CHECK_FALSE(r.divergence_flag);
  }

  const TVFunctionReport m = tv_function(moving_atom(), 1.0, 1e-8);
  CHECK(m.divergence_flag);
  CHECK_FALSE(m.converged);
}

TEST_CASE("tv_function estimates are nondecreasing in t") {
  const RiemannSolution rare = riemann_solve(std::make_shared<Burgers>(), {0.0}, {1.0});
  const MeasureCurve u = solution_curve(rare, shock_window, 1.0);
  const TVFunctionReport r = tv_function(u, 1.0, 1e-8);
  for (std::size_t i = 1; i < r.grid.size(); ++i) CHECK(r.grid[i].second >= r.grid[i - 1].second - 1e-14);
}

TEST_CASE("ftc_residual examples") {
  CHECK(ftc_residual(linear_atom(), peak_at_zero(), 0, 1) <= 1e-10);

  const RiemannSolution sol = burgers_shock();
  const MeasureCurve u = solution_curve(sol, shock_window, 1.0);
  const TestVector phi{plateau_over(Window(0.0, 0.5), 0.3)};
  CHECK(ftc_residual(u, phi, 0, 1) <= 1e-8);

  const MeasureCurve frozen = frozen_curve(sol, shock_window, 1.0);
  const TestVector bump = peak_at_zero();
  CHECK(ftc_residual(frozen, bump, 0, 1) == Approx(0.5 * bump[0](0.0)).epsilon(1e-8));

  CHECK_THROWS_AS(ftc_residual(moving_atom(), identity_phi(), 0, 1), Error);
}

TEST_CASE("lebesgue_diff_check examples") {
  std::vector<double> hs;
  for (int k = 1; k <= 8; ++k) hs.push_back(std::ldexp(1.0, -k));
  for (double r : lebesgue_diff_check(constant_atom(), peak_at_zero(), 0.3, hs)) CHECK(r <= 1e-12);

  const std::vector<double> m = lebesgue_diff_check(moving_atom(), identity_phi(), 0.3, hs);
  REQUIRE(m.size() == hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) CHECK(m[i] == Approx(hs[i] / 2).epsilon(1e-9));

  const MeasureCurve u = solution_curve(burgers_shock(), shock_window, 1.0);
  const MeasureCurve dF = flux_derivative_curve(u, std::make_shared<Burgers>());
  const TestVector phi{standard_bump(0.3, 0.5)};
  std::vector<double> small;
  for (int k = 3; k <= 10; ++k) small.push_back(std::ldexp(1.0, -k));
  const std::vector<double> s = lebesgue_diff_check(dF, phi, 0.4, small);
  CHECK(s.back() < s.front());
  CHECK(s.back() < 1e-3);
}

TEST_CASE("ibp_check examples") {
  const TestFunction bump = standard_bump(0.0, 0.5);
  const TestCurve f{{[](double t) { return 1.0 - t; }, [](double) { return -1.0; }, {bump}}};
  const IBPReport r = ibp_check(linear_atom(), f);
  CHECK(r.lhs == Approx(0.5).epsilon(1e-10));
  CHECK(r.rhs == Approx(0.5).epsilon(1e-10));
  CHECK(r.max_product_rule_residual <= 1e-6);

  const TestCurve g{{[](double) { return 1.0; }, [](double) { return 0.0; }, {bump}}};
  const IBPReport c = ibp_check(constant_atom(), g);
  CHECK(std::abs(c.lhs) <= 1e-14);
  CHECK(std::abs(c.rhs) <= 1e-14);

  const MeasureCurve u = solution_curve(burgers_shock(), shock_window, 1.0);
  const double pi = std::acos(-1.0);
  const TestCurve h{{[pi](double t) { return std::sin(pi * t); }, [pi](double t) { return pi * std::cos(pi * t); },
                     {plateau_over(Window(-0.5, 1.0), 0.3)}}};
  const IBPReport b = ibp_check(u, h);
  CHECK(std::abs(b.boundary) <= 1e-14);
  CHECK(std::abs(b.lhs - b.rhs) <= 1e-8);

  CHECK_THROWS_AS(ibp_check(moving_atom(), h), Error);
}

TEST_CASE("curve_norm examples") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(curve_norm(constant_atom(), inf).value == 1.0);
  const CurveNormReport r = curve_norm(solution_curve(burgers_shock(), shock_window, 1.0), inf);
  CHECK(r.value_term == Approx(2.5).epsilon(1e-12));
  CHECK(r.derivative_term == Approx(0.5).epsilon(1e-12));
  CHECK(r.value == Approx(3.0).epsilon(1e-12));
  const MeasureCurve zero(1.0, [](double) { return MeasureVector::zero(wide, 1); });
  for (double q : {1.0, 2.0, 3.5, inf}) CHECK(curve_norm(zero, q).value == 0.0);
  // q = 1 of t * delta: int t dt = 1/2 plus int 1 dt
  CHECK(curve_norm(linear_atom(), 1.0).value == Approx(1.5).epsilon(1e-12));
}

TEST_CASE("property: curve_norm is monotone under scaling") {
  support::Rng rng(8);
  const MeasureCurve base = solution_curve(riemann_solve(std::make_shared<Burgers>(), {0.0}, {1.0}), shock_window, 1.0);
  for (int i = 0; i < 6; ++i) {
    const double c1 = support::uniform(rng, 0.1, 2.0), c2 = c1 * support::uniform(rng, 1.01, 2.0);
    auto scaled = [&base](double c) {
      return MeasureCurve(1.0, [base, c](double t) { return scale(base(t), c); },
                          [base, c](double t) { return scale(base.derivative(t), c); });
    };
    for (double q : {1.0, 2.0}) CHECK(curve_norm(scaled(c1), q, 41).value < curve_norm(scaled(c2), q, 41).value);
  }
}

TEST_CASE("property: pairing bound |<Psi(t), phi>| <= |Psi(t)| sup|phi|") {
  support::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const SignedMeasure a = support::random_measure(rng, wide);
    const SignedMeasure b = support::random_measure(rng, wide);
    const MeasureCurve c(1.0, [a, b](double t) { return MeasureVector({add(scale(a, 1 - t), scale(b, t))}); });
    const TestVector phi{support::random_test_function(rng, wide)};
    const double t = support::uniform(rng, 0, 1);
    CHECK(std::abs(pair_at(c, phi, t)) <= vector_norm(c(t)) * sup_norm(phi) + 1e-12);
  }
}

TEST_CASE("property: |Psi(t) - Psi(s)| <= V(t) - V(s) <= int |Psi'| on analytic curves") {
  support::Rng rng(2024);
  const std::vector<std::pair<State, State>> data{{{1.0}, {0.0}}, {{0.0}, {1.0}}, {{2.0}, {-1.0}}, {{-0.5}, {1.5}}};
  for (const auto& [l, r] : data) {
    const MeasureCurve u = solution_curve(riemann_solve(std::make_shared<Burgers>(), l, r), Window(-4, 4), 1.0);
    for (int k = 0; k < 4; ++k) {
      double s = support::uniform(rng, 0, 1), t = support::uniform(rng, 0, 1);
      if (s > t) std::swap(s, t);
      const double diff = vector_norm(subtract(u(t), u(s)));
      const double dv = tv_function(u, t, 1e-9).value - tv_function(u, s, 1e-9).value;
      const double integral = support::simpson([&u](double tau) { return vector_norm(u.derivative(tau)); }, s, t, 200);
      CHECK(diff <= dv + 1e-8);
      CHECK(dv <= integral + 1e-8);
    }
  }
}

TEST_CASE("property: gelfand_integral is additive over adjacent intervals") {
  support::Rng rng(5);
  const MeasureCurve u = solution_curve(riemann_solve(std::make_shared<Burgers>(), {0.0}, {1.0}), shock_window, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const TestVector phi{support::random_test_function(rng, shock_window)};
    double a = support::uniform(rng, 0, 1), b = support::uniform(rng, 0, 1), c = support::uniform(rng, 0, 1);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const double whole = gelfand_integral(u, phi, a, c, 1e-11);
    const double parts = gelfand_integral(u, phi, a, b, 1e-11) + gelfand_integral(u, phi, b, c, 1e-11);
    CHECK(std::abs(whole - parts) <= 1e-9);
  }
}

TEST_CASE("from_samples interpolates parameters when the structure matches") {
  const MeasureCurve c = MeasureCurve::from_samples({0.0, 1.0}, {atom(0.0, 1.0), atom(1.0, 3.0)});
  const MeasureVector mid = c(0.25);
  REQUIRE(mid[0].atoms().size() == 1);
  CHECK(mid[0].atoms()[0].x == Approx(0.25));
  CHECK(mid[0].atoms()[0].weight == Approx(1.5));

  const MeasureVector two({SignedMeasure(wide, {{0.0, 1.0}, {1.0, 1.0}}, {})});
  const MeasureCurve held = MeasureCurve::from_samples({0.0, 1.0}, {atom(0.0), two});
  CHECK(held(0.7)[0].atoms().size() == 1);
  CHECK(held(1.0)[0].atoms().size() == 2);
  CHECK_THROWS_AS(MeasureCurve::from_samples({0.5, 1.0}, {atom(0.0), atom(1.0)}), Error);
}

TEST_CASE("curves reject times outside [0, T]") {
  CHECK_THROWS_AS(constant_atom()(1.5), Error);
  CHECK_THROWS_AS(constant_atom()(-0.1), Error);
  CHECK_THROWS_AS(moving_atom().derivative(0.5), Error);
  CHECK_THROWS_AS(moving_atom().bv(0.5), Error);
}
