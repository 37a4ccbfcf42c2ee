#ifndef WSTAR_WSTAR_H
#define WSTAR_WSTAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WSTAR_BUILDING)
#    define WSTAR_API __declspec(dllexport)
#  else
#    define WSTAR_API __declspec(dllimport)
#  endif
#else
#  define WSTAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wstar_status {
  WSTAR_OK = 0,
  WSTAR_ERR_INVALID_ARGUMENT,
  WSTAR_ERR_SUPPORT_OUTSIDE_WINDOW,
  WSTAR_ERR_DIMENSION_MISMATCH,
  WSTAR_ERR_WINDOW_MISMATCH,
  WSTAR_ERR_SINGULAR_COMPONENT_UNSUPPORTED,
  WSTAR_ERR_PROJECTION_ERROR_ABOVE_TOLERANCE,
  WSTAR_ERR_QUADRATURE_NON_CONVERGENT,
  WSTAR_ERR_MISSING_DERIVATIVE,
  WSTAR_ERR_VACUUM_FORMATION,
  WSTAR_ERR_NO_CONVERGENCE,
  WSTAR_ERR_WAVE_OUTSIDE_WINDOW,
  WSTAR_ERR_NOT_BV_REPRESENTABLE,
  WSTAR_ERR_ON_JUMP_PATH,
  WSTAR_ERR_MISSING_ENTROPY_PAIR,
  WSTAR_ERR_INVALID_SPEC,
  WSTAR_ERR_CONFIG,
  WSTAR_ERR_IO,
  WSTAR_ERR_INTERNAL
} wstar_status;

/* Parsed scenario config (schema_version 1). */
typedef struct wstar_scenario wstar_scenario;
/* Output of one run: a JSON report plus zero or more CSV artifacts. */
typedef struct wstar_report wstar_report;
/* Riemann solution built from a scenario's flux and states. */
typedef struct wstar_solution wstar_solution;

WSTAR_API const char* wstar_status_string(wstar_status status);
/* Message of the last failure on the calling thread; empty if none. */
WSTAR_API const char* wstar_last_error(void);

WSTAR_API wstar_status wstar_scenario_from_json(const char* json, wstar_scenario** out);
WSTAR_API wstar_status wstar_scenario_from_file(const char* path, wstar_scenario** out);
WSTAR_API void wstar_scenario_destroy(wstar_scenario* scenario);
/* Overrides the test-family seed. */
WSTAR_API wstar_status wstar_scenario_set_seed(wstar_scenario* scenario, uint64_t seed);

WSTAR_API wstar_status wstar_run_riemann(const wstar_scenario* scenario, wstar_report** out);
/* Certification failures still produce a report; see wstar_report_passed. */
WSTAR_API wstar_status wstar_run_verify(const wstar_scenario* scenario, wstar_report** out);
WSTAR_API wstar_status wstar_run_decompose(const wstar_scenario* scenario, wstar_report** out);

/* Strings stay valid until the report is destroyed. */
WSTAR_API const char* wstar_report_name(const wstar_report* report);
WSTAR_API const char* wstar_report_json(const wstar_report* report);
WSTAR_API size_t wstar_report_csv_count(const wstar_report* report);
WSTAR_API const char* wstar_report_csv_name(const wstar_report* report, size_t index);
WSTAR_API const char* wstar_report_csv(const wstar_report* report, size_t index);
WSTAR_API int wstar_report_passed(const wstar_report* report);
WSTAR_API void wstar_report_destroy(wstar_report* report);

WSTAR_API wstar_status wstar_solution_create(const wstar_scenario* scenario, wstar_solution** out);
WSTAR_API void wstar_solution_destroy(wstar_solution* solution);
WSTAR_API size_t wstar_solution_size(const wstar_solution* solution);
WSTAR_API size_t wstar_solution_wave_count(const wstar_solution* solution);
/* Writes u(x, t) into out[0..size). */
WSTAR_API wstar_status wstar_solution_sample(const wstar_solution* solution, double x, double t, double* out,
                                             size_t size);

#ifdef __cplusplus
}
#endif

#endif
