#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "wstar/scenario.hpp"
#include "wstar/wstar.h"

struct wstar_scenario {
  wstar::ScenarioConfig config;
};

struct wstar_report {
  wstar::RunResult result;
};

struct wstar_solution {
  wstar::RiemannSolution solution;
};

namespace {

thread_local std::string last_error;

wstar_status from_code(wstar::ErrorCode code) {
  using wstar::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return WSTAR_ERR_INVALID_ARGUMENT;
    case ErrorCode::SupportOutsideWindow: return WSTAR_ERR_SUPPORT_OUTSIDE_WINDOW;
    case ErrorCode::DimensionMismatch: return WSTAR_ERR_DIMENSION_MISMATCH;
    case ErrorCode::WindowMismatch: return WSTAR_ERR_WINDOW_MISMATCH;
    case ErrorCode::SingularComponentUnsupported: return WSTAR_ERR_SINGULAR_COMPONENT_UNSUPPORTED;
    case ErrorCode::ProjectionErrorAboveTolerance: return WSTAR_ERR_PROJECTION_ERROR_ABOVE_TOLERANCE;
    case ErrorCode::QuadratureNonConvergent: return WSTAR_ERR_QUADRATURE_NON_CONVERGENT;
    case ErrorCode::MissingDerivative: return WSTAR_ERR_MISSING_DERIVATIVE;
    case ErrorCode::VacuumFormation: return WSTAR_ERR_VACUUM_FORMATION;
    case ErrorCode::NoConvergence: return WSTAR_ERR_NO_CONVERGENCE;
    case ErrorCode::WaveOutsideWindow: return WSTAR_ERR_WAVE_OUTSIDE_WINDOW;
    case ErrorCode::NotBVRepresentable: return WSTAR_ERR_NOT_BV_REPRESENTABLE;
    case ErrorCode::OnJumpPath: return WSTAR_ERR_ON_JUMP_PATH;
    case ErrorCode::MissingEntropyPair: return WSTAR_ERR_MISSING_ENTROPY_PAIR;
    case ErrorCode::InvalidSpec: return WSTAR_ERR_INVALID_SPEC;
    case ErrorCode::ConfigError: return WSTAR_ERR_CONFIG;
  }
  return WSTAR_ERR_INTERNAL;
}

template <class F>
wstar_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return WSTAR_OK;
  } catch (const wstar::Error& e) {
    last_error = e.what();
    return from_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return WSTAR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return WSTAR_ERR_INTERNAL;
  }
}

wstar_status null_argument() {
  last_error = "null argument";
  return WSTAR_ERR_INVALID_ARGUMENT;
}

template <class Run>
wstar_status run(const wstar_scenario* scenario, wstar_report** out, Run&& runner) {
  if (!scenario || !out) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new wstar_report{runner(scenario->config)}; });
}

}  // namespace

extern "C" {

const char* wstar_status_string(wstar_status status) {
  switch (status) {
    case WSTAR_OK: return "ok";
    case WSTAR_ERR_IO: return "IoError";
    case WSTAR_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  const int code = static_cast<int>(status) - 1;
  if (code >= 0 && code <= static_cast<int>(wstar::ErrorCode::ConfigError)) {
    return wstar::to_string(static_cast<wstar::ErrorCode>(code));
  }
  return "Unknown";
}

const char* wstar_last_error(void) { return last_error.c_str(); }

wstar_status wstar_scenario_from_json(const char* json, wstar_scenario** out) {
  if (!json || !out) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new wstar_scenario{wstar::parse_scenario(json)}; });
}

wstar_status wstar_scenario_from_file(const char* path, wstar_scenario** out) {
  if (!path || !out) return null_argument();
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    last_error = std::string("cannot open ") + path;
    return WSTAR_ERR_IO;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return wstar_scenario_from_json(buf.str().c_str(), out);
}

void wstar_scenario_destroy(wstar_scenario* scenario) { delete scenario; }

wstar_status wstar_scenario_set_seed(wstar_scenario* scenario, uint64_t seed) {
  if (!scenario) return null_argument();
  scenario->config.seed = seed;
  return WSTAR_OK;
}

wstar_status wstar_run_riemann(const wstar_scenario* scenario, wstar_report** out) {
  return run(scenario, out, wstar::run_riemann);
}

wstar_status wstar_run_verify(const wstar_scenario* scenario, wstar_report** out) {
  return run(scenario, out, wstar::run_verify);
}

wstar_status wstar_run_decompose(const wstar_scenario* scenario, wstar_report** out) {
  return run(scenario, out, wstar::run_decompose);
}

const char* wstar_report_name(const wstar_report* report) { return report ? report->result.report.name.c_str() : ""; }

const char* wstar_report_json(const wstar_report* report) {
  return report ? report->result.report.content.c_str() : "";
}

size_t wstar_report_csv_count(const wstar_report* report) { return report ? report->result.csv.size() : 0; }

const char* wstar_report_csv_name(const wstar_report* report, size_t index) {
  if (!report || index >= report->result.csv.size()) return nullptr;
  return report->result.csv[index].name.c_str();
}

const char* wstar_report_csv(const wstar_report* report, size_t index) {
  if (!report || index >= report->result.csv.size()) return nullptr;
  return report->result.csv[index].content.c_str();
}

int wstar_report_passed(const wstar_report* report) { return report && report->result.passed ? 1 : 0; }

void wstar_report_destroy(wstar_report* report) { delete report; }

wstar_status wstar_solution_create(const wstar_scenario* scenario, wstar_solution** out) {
  if (!scenario || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    const wstar::ScenarioConfig& c = scenario->config;
    if (!c.flux) throw wstar::Error(wstar::ErrorCode::ConfigError, "scenario has no flux");
    *out = new wstar_solution{wstar::riemann_solve(wstar::make_flux(*c.flux), c.left, c.right)};
  });
}

void wstar_solution_destroy(wstar_solution* solution) { delete solution; }

size_t wstar_solution_size(const wstar_solution* solution) {
  return solution ? static_cast<size_t>(solution->solution.flux().size()) : 0;
}

size_t wstar_solution_wave_count(const wstar_solution* solution) {
  return solution ? solution->solution.waves().size() : 0;
}

wstar_status wstar_solution_sample(const wstar_solution* solution, double x, double t, double* out, size_t size) {
  if (!solution || !out) return null_argument();
  return guarded([&] {
    const wstar::State u = solution->solution.sample(x, t);
    if (size < u.size()) throw wstar::Error(wstar::ErrorCode::DimensionMismatch, "output buffer too small");
    for (size_t i = 0; i < u.size(); ++i) out[i] = u[i];
  });
}

}  // extern "C"
