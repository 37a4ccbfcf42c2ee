#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wstar {

using State = std::vector<double>;

enum class FamilyKind { GenuinelyNonlinear, LinearlyDegenerate };

struct Eigenpair {
  double lambda;
  State r;
};

/// coeff * prod_i u_i^powers[i]
struct PolyTerm {
  double coeff;
  std::vector<int> powers;
};
using MultiPoly = std::vector<PolyTerm>;

/// Convex entropy eta with entropy flux q, plus their gradients.
struct EntropyPair {
  std::function<double(const State&)> eta;
  std::function<double(const State&)> q;
  std::function<State(const State&)> grad_eta;
  std::function<State(const State&)> grad_q;
};

/// Flux F: R^n -> R^n of a strictly hyperbolic system u_t + F(u)_x = 0.
/// Family indices k are 0-based here; reports print k + 1.
class FluxModel {
 public:
  virtual ~FluxModel() = default;

  virtual std::string name() const = 0;
  virtual int size() const = 0;
  virtual State flux(const State& u) const = 0;
  /// Row-major n x n Jacobian DF(u).
  virtual std::vector<double> jacobian(const State& u) const = 0;
  /// Eigenpairs with increasing eigenvalues. Genuinely nonlinear families are
  /// normalized so that r_k . grad(lambda_k) = 1.
  virtual std::vector<Eigenpair> eigen(const State& u) const = 0;
  virtual State lambda_gradient(const State& u, int k) const = 0;
  virtual FamilyKind family(int k) const = 0;
  virtual bool admissible(const State&) const { return true; }
  virtual std::optional<EntropyPair> entropy() const { return std::nullopt; }
  /// Polynomial form of flux component i, when it has one.
  virtual std::optional<MultiPoly> polynomial(int) const { return std::nullopt; }
  /// Closed-form point w_k(eps) on the k-rarefaction curve through `from`.
  virtual std::optional<State> rarefaction_state(int, const State&, double) const {
    return std::nullopt;
  }

  double lambda(const State& u, int k) const { return eigen(u).at(k).lambda; }
};

using FluxPtr = std::shared_ptr<const FluxModel>;

/// F(u) = u^2 / 2, entropy pair (u^2/2, u^3/3).
class Burgers final : public FluxModel {
 public:
  std::string name() const override { return "burgers"; }
  int size() const override { return 1; }
  State flux(const State& u) const override { return {0.5 * u[0] * u[0]}; }
  std::vector<double> jacobian(const State& u) const override { return {u[0]}; }
  std::vector<Eigenpair> eigen(const State& u) const override { return {{u[0], {1.0}}}; }
  State lambda_gradient(const State&, int) const override { return {1.0}; }
  FamilyKind family(int) const override { return FamilyKind::GenuinelyNonlinear; }
  std::optional<EntropyPair> entropy() const override;
  std::optional<MultiPoly> polynomial(int) const override { return MultiPoly{{0.5, {2}}}; }
  std::optional<State> rarefaction_state(int, const State&, double eps) const override {
    return State{eps};
  }
};

/// F(u) = a u; the single family is linearly degenerate.
class LinearAdvection final : public FluxModel {
 public:
  explicit LinearAdvection(double a) : a_(a) {}
  double speed() const noexcept { return a_; }
  std::string name() const override { return "linear_advection"; }
  int size() const override { return 1; }
  State flux(const State& u) const override { return {a_ * u[0]}; }
  std::vector<double> jacobian(const State&) const override { return {a_}; }
  std::vector<Eigenpair> eigen(const State&) const override { return {{a_, {1.0}}}; }
  State lambda_gradient(const State&, int) const override { return {0.0}; }
  FamilyKind family(int) const override { return FamilyKind::LinearlyDegenerate; }
  std::optional<EntropyPair> entropy() const override;
  std::optional<MultiPoly> polynomial(int) const override { return MultiPoly{{a_, {1}}}; }

 private:
  double a_;
};

/// Lagrangian gas dynamics v_t - u_x = 0, u_t + p(v)_x = 0 with
/// p(v) = K v^-gamma, state (v, u), admissible for v > 0.
class PSystem final : public FluxModel {
 public:
  /// closed_form = false forces the RK4 integral-curve fallback for fans.
  PSystem(double K, double gamma, bool closed_form = true);

  double K() const noexcept { return K_; }
  double gamma() const noexcept { return gamma_; }
  bool closed_form() const noexcept { return closed_form_; }

  double pressure(double v) const;
  double pressure_derivative(double v) const;
  double sound_speed(double v) const;  // sqrt(-p'(v))
  /// Primitive of the sound speed; u -/+ Phi(v) is the 1-/2-Riemann invariant.
  double riemann_phi(double v) const;
  /// v with sound_speed(v) = c.
  double volume_for_speed(double c) const;

  std::string name() const override { return "p_system"; }
  int size() const override { return 2; }
  State flux(const State& u) const override;
  std::vector<double> jacobian(const State& u) const override;
  std::vector<Eigenpair> eigen(const State& u) const override;
  State lambda_gradient(const State& u, int k) const override;
  FamilyKind family(int) const override { return FamilyKind::GenuinelyNonlinear; }
  bool admissible(const State& u) const override { return u.size() == 2 && u[0] > 0.0; }
  std::optional<EntropyPair> entropy() const override;
  std::optional<MultiPoly> polynomial(int i) const override;
  std::optional<State> rarefaction_state(int k, const State& from, double eps) const override;

 private:
  double K_, gamma_;
  bool closed_form_;
};

State mat_vec(const std::vector<double>& m, const State& v);
double dot(const State& a, const State& b);
double norm2(const State& a);
State operator-(const State& a, const State& b);
State operator+(const State& a, const State& b);
State operator*(double c, const State& a);

}  // namespace wstar
