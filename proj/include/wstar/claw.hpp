#pragma once

#include <functional>
#include <vector>

#include "wstar/bvcalc.hpp"
#include "wstar/flux.hpp"
#include "wstar/gelfand.hpp"

namespace wstar {

enum class WaveKind { Shock, Rarefaction, Contact };

const char* to_string(WaveKind kind) noexcept;

/// Centered elementary wave of family k (0-based) between two constant states.
struct Wave {
  WaveKind kind = WaveKind::Shock;
  int family = 0;
  State left, right;
  double speed = 0.0;     // jump speed; fans use speed_lo/speed_hi
  double speed_lo = 0.0;  // lambda_k(left) for fans, speed otherwise
  double speed_hi = 0.0;  // lambda_k(right) for fans, speed otherwise
  /// w_k(eps) with lambda_k(w_k(eps)) = eps; set for rarefactions.
  std::function<State(double)> profile;

  bool is_jump() const noexcept { return kind != WaveKind::Rarefaction; }
};

struct RiemannOptions {
  double rk4_step = 1e-3;
  double newton_tol = 1e-12;
  int max_iterations = 100;
};

class RiemannSolution {
 public:
  RiemannSolution(FluxPtr flux, State left, State right, std::vector<State> states, std::vector<Wave> waves);

  /// One discontinuity moving at `speed`, admissible or not. Used for
  /// counterexamples such as reversed or mis-timed shocks.
  static RiemannSolution single_jump(FluxPtr flux, State left, State right, double speed);

  const FluxModel& flux() const noexcept { return *flux_; }
  const FluxPtr& flux_ptr() const noexcept { return flux_; }
  const State& left() const noexcept { return left_; }
  const State& right() const noexcept { return right_; }
  /// u_0 = left, ..., u_m = right.
  const std::vector<State>& states() const noexcept { return states_; }
  const std::vector<Wave>& waves() const noexcept { return waves_; }

  /// u(x, t) for t > 0; the initial step for t == 0.
  State sample(double x, double t) const;
  /// (du/dt, du/dx) at a point off every jump path; OnJumpPath otherwise.
  std::pair<State, State> partials(double x, double t) const;

 private:
  FluxPtr flux_;
  State left_, right_;
  std::vector<State> states_;
  std::vector<Wave> waves_;
};

RiemannSolution riemann_solve(FluxPtr flux, const State& left, const State& right, const RiemannOptions& opt = {});

struct BVProfile {
  BVVector value;
  double projection_error = 0.0;
};

/// u(., t) on `window` as a piecewise BV vector; fans are projected onto
/// Chebyshev polynomials of the given degree. t == 0 gives the initial step.
BVProfile as_bv(const RiemannSolution& sol, double t, const Window& window, int cheb_degree = 32);

/// u'(t): atoms -s [u] at jumps, du/dt densities in fans. At t == 0 the limit:
/// every wave collapses to an atom at the origin.
MeasureVector time_derivative_measure(const RiemannSolution& sol, double t, const Window& window,
                                      int cheb_degree = 32);
/// D_x F(u(t)): atoms [F(u)] at jumps, DF(u) du/dx densities in fans.
MeasureVector flux_derivative_measure(const RiemannSolution& sol, double t, const Window& window,
                                      int cheb_degree = 32);

/// t -> T(u(t)) on [0, horizon] with its time derivative and BV values.
MeasureCurve solution_curve(const RiemannSolution& sol, const Window& window, double horizon, int cheb_degree = 32);

/// Psi(t) = u0 for all t, claiming Psi' = -D_x F(u0): the frozen non-solution.
MeasureCurve frozen_curve(const RiemannSolution& sol, const Window& window, double horizon);

}  // namespace wstar
