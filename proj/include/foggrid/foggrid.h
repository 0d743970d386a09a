/*
 * Copyright 2026 The foggrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef FOGGRID_FOGGRID_H
#define FOGGRID_FOGGRID_H

/*
 * C interface to the foggrid simulator.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns an fg_status; on
 * failure fg_last_error() describes the problem. The message is kept per
 * thread and stays valid until the next failing call on that thread.
 *
 * Handles are not synchronized. Distinct handles may be used from
 * different threads at the same time.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FOGGRID_BUILDING_LIBRARY)
#    define FOGGRID_API __declspec(dllexport)
#  else
#    define FOGGRID_API __declspec(dllimport)
#  endif
#else
#  define FOGGRID_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fg_status {
    FG_OK = 0,
    /* scenario problems */
    FG_ERR_SCHEMA = 10,
    FG_ERR_DANGLING_REFERENCE = 11,
    FG_ERR_INVALID_TOPOLOGY = 12,
    FG_ERR_UNKNOWN_KIND = 13,
    /* argument and model problems */
    FG_ERR_INVALID_ARGUMENT = 20,
    FG_ERR_UNSTABLE = 21,
    FG_ERR_NONPOSITIVE_TARGET = 22,
    FG_ERR_NONPOSITIVE_N = 23,
    /* run-time failures */
    FG_ERR_RUNTIME = 30,
    FG_ERR_IO = 31,
    FG_ERR_INTERNAL = 39
} fg_status;

typedef enum fg_mode {
    FG_MODE_CLOUD_ONLY = 0,
    FG_MODE_FOG_AUGMENTED = 1
} fg_mode;

typedef struct fg_scenario fg_scenario;
typedef struct fg_report fg_report;
typedef struct fg_comparison fg_comparison;

/* Errors ----------------------------------------------------------------- */

FOGGRID_API const char* fg_last_error(void);

/* Stable category name of a status, e.g. "SchemaError". */
FOGGRID_API const char* fg_status_name(fg_status status);

/* Nonzero for the scenario-problem statuses. */
FOGGRID_API int fg_status_is_config_error(fg_status status);

/* Scenarios -------------------------------------------------------------- */

FOGGRID_API fg_status fg_scenario_parse(const char* text, size_t length, fg_scenario** out);
FOGGRID_API fg_status fg_scenario_load(const char* path, fg_scenario** out);
FOGGRID_API fg_status fg_scenario_clone(const fg_scenario* scenario, fg_scenario** out);
FOGGRID_API void fg_scenario_free(fg_scenario* scenario);

FOGGRID_API fg_status fg_scenario_set_seed(fg_scenario* scenario, uint64_t seed);
/* Keeps the warmup if it is still below the new horizon, else resets it to
   1% of the horizon. */
FOGGRID_API fg_status fg_scenario_set_horizon(fg_scenario* scenario, double horizon_s);
FOGGRID_API fg_status fg_scenario_set_warmup(fg_scenario* scenario, double warmup_s);

FOGGRID_API uint64_t fg_scenario_seed(const fg_scenario* scenario);
FOGGRID_API size_t fg_scenario_node_count(const fg_scenario* scenario);
FOGGRID_API size_t fg_scenario_arrival_count(const fg_scenario* scenario);
FOGGRID_API size_t fg_scenario_session_count(const fg_scenario* scenario);
FOGGRID_API fg_mode fg_scenario_mode(const fg_scenario* scenario);

/* Runs ------------------------------------------------------------------- */

/* Runs in the scenario's own mode. */
FOGGRID_API fg_status fg_run(const fg_scenario* scenario, fg_report** out);
FOGGRID_API fg_status fg_run_mode(const fg_scenario* scenario, fg_mode mode, fg_report** out);
FOGGRID_API fg_status fg_compare(const fg_scenario* scenario, fg_comparison** out);

FOGGRID_API void fg_report_free(fg_report* report);
FOGGRID_API void fg_comparison_free(fg_comparison* comparison);

/* Writes nodes.csv, sessions.csv and summary.txt into dir. */
FOGGRID_API fg_status fg_report_emit(const fg_report* report, const char* dir);
/* Writes cloud/, fog/ and comparison.txt into dir. */
FOGGRID_API fg_status fg_comparison_emit(const fg_comparison* comparison, const char* dir);

/* Borrowed view of one side of a comparison; owned by the comparison. */
FOGGRID_API const fg_report* fg_comparison_report(const fg_comparison* comparison, fg_mode mode);

/* Sets *present to 0 and leaves *out untouched when nothing was measured. */
FOGGRID_API void fg_report_mean_wait(const fg_report* report, double* out, int* present);
FOGGRID_API double fg_report_total_energy_mj(const fg_report* report);
FOGGRID_API uint64_t fg_report_trace_digest(const fg_report* report);
FOGGRID_API uint64_t fg_report_message_count(const fg_report* report);
FOGGRID_API uint64_t fg_report_fog_private_opens(const fg_report* report);
FOGGRID_API size_t fg_report_node_count(const fg_report* report);

typedef struct fg_node_stats {
    uint32_t node_id;
    int tier; /* 0 device, 1 fog, 2 cloud */
    double lambda_hat;
    double mean_wait_s;
    double mean_in_system;
    double utilization;
    uint64_t samples;
    double active_time_s;
    double idle_time_s;
    double energy_mj;
} fg_node_stats;

FOGGRID_API fg_status fg_report_node(const fg_report* report, size_t index, fg_node_stats* out);

/* Sets *present to 0 when either side has no measurement. */
FOGGRID_API void fg_comparison_delta_wait(const fg_comparison* comparison, double* out, int* present);
FOGGRID_API double fg_comparison_delta_energy_mj(const fg_comparison* comparison);

/* Models ----------------------------------------------------------------- */

FOGGRID_API fg_status fg_mm1_analytic(double lambda, double mu, double* wait_s, double* in_system,
                                      double* utilization);
FOGGRID_API fg_status fg_calibrate_service_rate(double target_wait_s, double lambda, double* mu);
FOGGRID_API fg_status fg_processing_time_ms(double c_ms, uint64_t n, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FOGGRID_FOGGRID_H */
