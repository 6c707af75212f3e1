#ifndef ROTOFLEX_H
#define ROTOFLEX_H

/* C interface to the rotoflex solver library.
 *
 * The library solves steady-state multi-harmonic AC circuits directly in
 * the frequency domain: waveforms become vectors in a 2N-dimensional
 * Euclidean space and the circuit response becomes a single scale-and-
 * rotate operator. Every solve is cross-checked against an independent
 * classical per-harmonic phasor solution and the report carries the
 * comparison.
 *
 * All functions are thread-safe as long as distinct handles are used from
 * distinct threads; handles are immutable after creation. Error messages
 * are copied into the caller-supplied buffer, always NUL-terminated.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The CLI uses the same numbers as process exit codes. */
typedef enum rf_status {
  RF_OK = 0,
  RF_ERROR_INVALID = 2, /* malformed or inconsistent problem description */
  RF_ERROR_NUMERIC = 3, /* lossless resonance, null signal, failed cross-check */
  RF_ERROR_CHECK = 4    /* built-in golden check failed */
} rf_status;

typedef struct rf_problem rf_problem; /* parsed, validated problem */
typedef struct rf_report rf_report;   /* solved problem with oracle comparison */

/* Parse a problem from JSON text (see the README for the schema).
 * On success *out owns a new handle; free it with rf_problem_free. */
rf_status rf_problem_parse(const char* json_text, rf_problem** out,
                           char* errbuf, size_t errbuf_len);

/* Deterministically generate a randomized dense problem with harmonic
 * orders 1..n_harmonics. Used by the benchmark driver. */
rf_status rf_problem_random(uint64_t seed, int n_harmonics, rf_problem** out,
                            char* errbuf, size_t errbuf_len);

void rf_problem_free(rf_problem* problem);

/* Solve: builds the rotoflex operator, applies it, runs the classical
 * per-harmonic oracle, and embeds the comparison. */
rf_status rf_solve(const rf_problem* problem, rf_report** out,
                   char* errbuf, size_t errbuf_len);

void rf_report_free(rf_report* report);

/* Scalar accessors. */
double rf_report_flextance(const rf_report* report);
double rf_report_power_factor(const rf_report* report);
double rf_report_effective_angle_deg(const rf_report* report);
double rf_report_oracle_delta(const rf_report* report);

/* Per-harmonic rows (solved harmonics in ascending order).
 * rf_report_harmonic returns RF_OK and fills any non-NULL outputs, or
 * RF_ERROR_INVALID when index is out of range. Phases follow the phasor
 * display convention (degrees). */
int rf_report_harmonic_count(const rf_report* report);
rf_status rf_report_harmonic(const rf_report* report, int index, int* order,
                             double* ga_rms, double* ga_phase_deg,
                             double* oracle_rms, double* oracle_phase_deg);

/* Rendered outputs. Returned strings are heap-allocated; release them with
 * rf_string_free. precision is the number of significant digits used for
 * JSON values (1..17); pass 0 to use the problem's configured precision. */
char* rf_report_to_json(const rf_report* report, int precision);
char* rf_report_to_table(const rf_report* report);

/* Time-domain reconstruction: CSV with header "t,input,output" sampled on
 * a uniform grid over `periods` fundamental periods with
 * `samples_per_period` samples each (inclusive endpoint, so
 * periods*samples_per_period + 1 rows). On success *out_csv owns the text;
 * release it with rf_string_free. */
rf_status rf_waveform_csv(const rf_problem* problem, int periods,
                          int samples_per_period, char** out_csv,
                          char* errbuf, size_t errbuf_len);

void rf_string_free(char* text);

/* One benchmark trial: times the geometric solve (operator build + apply)
 * and the classical per-harmonic solve on the same problem, and reports the
 * max component difference between the two answers. Reported times are
 * per-solve averages over an internal repeat loop. */
rf_status rf_bench_trial(const rf_problem* problem, double* ga_seconds,
                         double* oracle_seconds, double* max_delta,
                         char* errbuf, size_t errbuf_len);

/* Built-in golden checks (reference cases, canonical loads, degeneration).
 * Returns RF_OK when all pass, RF_ERROR_CHECK otherwise. When out_text is
 * non-NULL it receives a line-per-check table (free with rf_string_free). */
rf_status rf_selftest(char** out_text);

const char* rf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ROTOFLEX_H */
