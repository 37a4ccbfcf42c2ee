#pragma once

#include <vector>

#include "wstar/chebyshev.hpp"
#include "wstar/testfns.hpp"
#include "wstar/window.hpp"

namespace wstar {

struct Atom {
  double x;
  double weight;
};

/// mass times the standard Cantor measure pushed forward to `carrier`.
struct CantorPart {
  Window carrier;
  double mass;
};

struct PairingOptions {
  double quad_tol = 1e-10;
  int cantor_depth = 24;
};

/// Finite signed Radon measure on a bounded window: atoms, a piecewise
/// polynomial density and affine Cantor parts. The three parts are mutually
/// singular.
class SignedMeasure {
 public:
  explicit SignedMeasure(Window window);
  /// Normalizes on construction: atoms sorted and merged within
  /// 1e-12 * |window|, zero weights dropped; density pieces must tile the
  /// window (an empty list means zero density); Cantor carriers disjoint.
  SignedMeasure(Window window, std::vector<Atom> atoms, std::vector<ChebPoly> density,
                std::vector<CantorPart> cantor = {});

  static SignedMeasure dirac(Window window, double x, double weight = 1.0);
  static SignedMeasure with_density(Window window, const ChebPoly& density);

  const Window& window() const noexcept { return window_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<ChebPoly>& density() const noexcept { return density_; }
  const std::vector<CantorPart>& cantor_parts() const noexcept { return cantor_; }

  bool has_density() const noexcept;
  double merge_tolerance() const noexcept { return 1e-12 * window_.length(); }

 private:
  Window window_;
  std::vector<Atom> atoms_;
  std::vector<ChebPoly> density_;
  std::vector<CantorPart> cantor_;
};

/// n signed measures on one window; the codomain of solution curves.
class MeasureVector {
 public:
  explicit MeasureVector(std::vector<SignedMeasure> components);
  static MeasureVector zero(Window window, int n);

  int size() const noexcept { return static_cast<int>(components_.size()); }
  const Window& window() const noexcept { return components_.front().window(); }
  const SignedMeasure& operator[](int i) const { return components_.at(i); }
  const std::vector<SignedMeasure>& components() const noexcept { return components_; }

 private:
  std::vector<SignedMeasure> components_;
};

double pair(const SignedMeasure& mu, const TestFunction& phi, const PairingOptions& opt = {});
double tv_norm(const SignedMeasure& mu);
SignedMeasure add(const SignedMeasure& mu, const SignedMeasure& nu);
SignedMeasure scale(const SignedMeasure& mu, double c);
SignedMeasure subtract(const SignedMeasure& mu, const SignedMeasure& nu);
/// Restriction to `sub`; the result lives on `sub` and parts of mu outside
/// the original window contribute nothing.
SignedMeasure restrict(const SignedMeasure& mu, const Window& sub);

/// Euclidean combination of component total variations.
double vector_norm(const MeasureVector& mu);
double pair_vector(const MeasureVector& mu, const TestVector& phi, const PairingOptions& opt = {});
MeasureVector add(const MeasureVector& mu, const MeasureVector& nu);
MeasureVector scale(const MeasureVector& mu, double c);
MeasureVector subtract(const MeasureVector& mu, const MeasureVector& nu);

/// Test vector with `phi` in slot i and zero elsewhere.
TestVector unit_test_vector(const TestFunction& phi, int n, int i);
/// max_i sup|phi_i| combined as a Euclidean norm; the dual bound uses it.
double sup_norm(const TestVector& phi);

}  // namespace wstar
