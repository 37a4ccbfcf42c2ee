#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wstar/bvcalc.hpp"
#include "wstar/verify.hpp"

namespace wstar {

inline constexpr int kSchemaVersion = 1;

enum class SolutionKind { Riemann, ForcedJump, Frozen };

struct FluxSpec {
  std::string name;
  double a = 1.0;
  double K = 1.0;
  double gamma = 1.4;
  bool closed_form = true;
};

struct BVSpec {
  Window window;
  std::vector<double> breakpoints;
  std::vector<std::vector<double>> pieces;  // monomial coefficients per cell
  std::optional<CantorComponent> cantor;
};

/// Parsed config. Riemann/verify configs fill the flux and state fields,
/// decompose configs fill `function`.
struct ScenarioConfig {
  std::string label;
  std::optional<FluxSpec> flux;
  State left, right;
  std::optional<Window> window;
  double horizon = 1.0;
  double q = std::numeric_limits<double>::infinity();
  SolutionKind solution = SolutionKind::Riemann;
  std::optional<double> forced_speed;
  int family_count = 10;
  std::uint64_t seed = 42;
  std::vector<double> times;
  ToleranceConfig tolerances;
  std::set<std::string> checks;
  std::optional<double> variation_bound;
  std::optional<double> dominating_bound;
  std::vector<double> sample_times;
  int samples = 201;
  int cheb_degree = 32;
  std::optional<BVSpec> function;
};

/// ConfigError on malformed JSON, unknown names or missing fields.
ScenarioConfig parse_scenario(const std::string& json_text);

FluxPtr make_flux(const FluxSpec& spec);

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  Artifact report;
  std::vector<Artifact> csv;
  bool passed = true;
};

/// Riemann solve; VacuumFormation propagates.
RunResult run_riemann(const ScenarioConfig& config);
/// Certification; check failures are reported, not thrown.
RunResult run_verify(const ScenarioConfig& config);
RunResult run_decompose(const ScenarioConfig& config);

}  // namespace wstar
