#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wstar/bvcalc.hpp"
#include "wstar/measures.hpp"

namespace wstar {

using MeasureFn = std::function<MeasureVector(double)>;
using BVFn = std::function<BVVector(double)>;

/// t -> Psi(t) in M^n(window) on [0, T], with an optional derivative
/// evaluator and an optional BV representation of each value.
class MeasureCurve {
 public:
  MeasureCurve(double horizon, MeasureFn value, MeasureFn derivative = nullptr, BVFn bv = nullptr);

  /// Curve through samples at increasing times starting at 0. Between samples
  /// with the same structure (atom count, density pieces, Cantor parts) the
  /// parameters are interpolated linearly; otherwise the left sample holds.
  static MeasureCurve from_samples(std::vector<double> times, std::vector<MeasureVector> samples);

  double horizon() const noexcept { return horizon_; }
  MeasureVector operator()(double t) const;
  bool has_derivative() const noexcept { return static_cast<bool>(derivative_); }
  MeasureVector derivative(double t) const;
  bool has_bv() const noexcept { return static_cast<bool>(bv_); }
  BVVector bv(double t) const;

 private:
  double check_time(double t) const;

  double horizon_;
  MeasureFn value_, derivative_;
  BVFn bv_;
};

struct GelfandOptions {
  PairingOptions pairing{};
  double quad_tol = 1e-10;
  double fd_step = 1e-4;  // relative to the horizon
};

/// <Psi(t), phi>.
double pair_at(const MeasureCurve& curve, const TestVector& phi, double t, const PairingOptions& opt = {});
/// d/dt g(t) on [0, T]: central difference with one Richardson step,
/// second-order one-sided near the ends.
double fd_derivative(const std::function<double(double)>& g, double t, double horizon, double h);

/// int_s^t <Psi(tau), phi> dtau; QuadratureNonConvergent past the budget.
double gelfand_integral(const MeasureCurve& curve, const TestVector& phi, double s, double t, double tol,
                        const PairingOptions& opt = {});

struct TVFunctionReport {
  std::vector<std::pair<double, double>> grid;  // (t_k, V(t_k)) at the final level
  double value = 0.0;
  int levels = 0;
  bool converged = false;
  bool divergence_flag = false;
};

/// Dyadic estimate of V_Psi(t) = sup sum ||Psi(t_k) - Psi(t_k-1)||.
TVFunctionReport tv_function(const MeasureCurve& curve, double t, double tol, int max_level = 14);

double ftc_residual(const MeasureCurve& curve, const TestVector& phi, double s, double t,
                    const GelfandOptions& opt = {});

std::vector<double> lebesgue_diff_check(const MeasureCurve& curve, const TestVector& phi, double t,
                                        const std::vector<double>& hs, const GelfandOptions& opt = {});

/// beta(t) * phi with beta continuously differentiable.
struct TestCurveTerm {
  std::function<double(double)> beta;
  std::function<double(double)> dbeta;
  TestVector phi;
};
using TestCurve = std::vector<TestCurveTerm>;

struct IBPReport {
  double lhs = 0.0;  // int <Psi', f>
  double rhs = 0.0;  // boundary - int <Psi, f'>
  double boundary = 0.0;
  double max_product_rule_residual = 0.0;
  int samples = 0;
};

IBPReport ibp_check(const MeasureCurve& psi, const TestCurve& f, int samples = 100,
                    const GelfandOptions& opt = {});

struct CurveNormReport {
  double q = 0.0;
  double value = 0.0;
  double value_term = 0.0;
  double derivative_term = 0.0;
  int samples = 0;
};

/// (int ||Psi||^q)^(1/q) plus the same for Psi' when available; q = inf uses
/// the sampled sup over n_samples equispaced times including both ends.
CurveNormReport curve_norm(const MeasureCurve& curve, double q, int n_samples = 101);

}  // namespace wstar
