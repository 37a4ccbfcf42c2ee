#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wstar/claw.hpp"
#include "wstar/gelfand.hpp"

namespace wstar {

struct ToleranceConfig {
  double pairing = 1e-8;  // weak*, Gelfand-form, FTC and quasilinear residuals
  double fd_step = 1e-4;  // relative to the horizon
  double quadrature = 1e-10;
  double rh = 1e-12;
  double entropy = 1e-10;
  double lax_margin = 1e-10;
  double distributional = 1e-6;
  int holder_samples = 11;
  double holder_stability = 0.1;  // relative change allowed under refinement

  /// InvalidArgument unless every field is positive.
  void validate() const;
  PairingOptions pairing_options() const { return {quadrature, 24}; }
};

/// |d/dt <u(t), phi> + <D_x F(u(t)), phi>| with the time derivative taken by
/// finite differences of pairings.
double weakstar_residual(const MeasureCurve& curve, const FluxModel& flux, const TestVector& phi, double t,
                         const ToleranceConfig& tol = {});

/// tau -> D_x F(u(tau)) built from the BV values of `curve`.
MeasureCurve flux_derivative_curve(const MeasureCurve& curve, FluxPtr flux);

/// |<u(t) - u(s), phi> + int_s^t <D_x F(u(tau)), phi> dtau|.
double gelfand_form_residual(const MeasureCurve& curve, FluxPtr flux, const TestVector& phi, double s, double t,
                             const ToleranceConfig& tol = {});

/// ||F(u+) - F(u-) - s (u+ - u-)||.
double rh_check(const Wave& wave, const FluxModel& flux);

struct LaxVerdict {
  bool pass = false;
  double deficit = 0.0;  // how far the worst inequality misses, 0 when it holds
};
/// Strict lambda_k(u-) > s > lambda_k(u+) for shocks, equality for contacts.
LaxVerdict lax_check(const Wave& wave, const FluxModel& flux, double margin = 1e-10);

/// ||u_t + DF(u) u_x|| at a point off the jump paths (OnJumpPath otherwise).
double quasilinear_residual(const RiemannSolution& sol, double x, double t);

struct EntropyReport {
  MeasureVector measure;  // eta(u)' + D_x q(u), one component
  double max_atom = 0.0;
  double max_density = 0.0;
  bool pass = false;
};
EntropyReport entropy_check(const RiemannSolution& sol, double t, const Window& window, double tol = 1e-10,
                            int cheb_degree = 32);

/// |int int (u beta' alpha + F(u) beta alpha') dx dt + int u0 alpha beta(0) dx|,
/// Euclidean over components, with u sampled directly from the solution.
double distributional_residual(const RiemannSolution& sol, const TestFunction& alpha, const TestFunction& beta,
                               double tol = 1e-11);

struct HolderReport {
  double constant = 0.0;
  double refined_constant = 0.0;
  bool stable = false;
  bool pass = false;
};
/// max ||u(t) - u(s)|| / |t - s|^(1 - 1/q) over all pairs of an n-point grid
/// and of its refinement.
HolderReport holder_check(const MeasureCurve& curve, double q, int n_samples = 11, double stability = 0.1);

struct VariationBoundReport {
  double max_variation = 0.0;
  double max_excess = 0.0;  // max(V(u(t)) - g(t)), may be negative
  bool pass = false;
};
VariationBoundReport variation_bound_check(const MeasureCurve& curve, const std::function<double(double)>& g,
                                           const std::vector<double>& times);

struct GWeakReport {
  double max_ftc_residual = 0.0;
  double max_domination_excess = 0.0;  // max(|v_phi(t)| - v(t) sup|phi|)
  double v_norm = 0.0;                 // (int |v|^q)^(1/q) over the sample times
  bool pass = false;
};
/// For each phi: v_phi = d/dt <Psi, phi> reproduces the pairing increments
/// and is dominated by v(t) sup|phi|. Only the supplied family is checked.
GWeakReport gweak_hypothesis_check(const MeasureCurve& curve, const std::vector<TestVector>& family,
                                   const std::function<double(double)>& v, double q, const std::vector<double>& times,
                                   const ToleranceConfig& tol = {});

struct CheckRecord {
  std::string name;
  std::string digest;
  double residual = 0.0;  // NaN when the check raised
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct CertificationReport {
  std::vector<CheckRecord> records;
  bool overall_pass = false;
  std::vector<std::string> failing() const;
};

/// Candidate weak* solution with everything certify needs.
struct Candidate {
  std::string label;
  FluxPtr flux;
  MeasureCurve curve;
  std::optional<RiemannSolution> solution;
  Window window;
  std::vector<TestFunction> family;  // scalar; applied to every component
  std::vector<double> times;
  std::uint64_t seed = 0;
  double q = std::numeric_limits<double>::infinity();
  std::optional<double> variation_bound;
  std::optional<double> dominating_bound;
  std::set<std::string> checks;  // empty runs every applicable check
};

/// Names certify knows, in report order.
const std::vector<std::string>& check_names();

CertificationReport certify(const Candidate& candidate, const ToleranceConfig& tol = {});

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace wstar
