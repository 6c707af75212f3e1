#include "rotoflex/rotoflex.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/problem.hpp"
#include "core/report.hpp"
#include "core/selftest.hpp"

struct rf_problem {
  rotoflex::ProblemSpec spec;
};

struct rf_report {
  rotoflex::SolveReport report;
};

namespace {

void copy_error(const char* message, char* errbuf, size_t errbuf_len) {
  if (errbuf == nullptr || errbuf_len == 0) return;
  std::snprintf(errbuf, errbuf_len, "%s", message);
}

// Run fn, translating exceptions into status codes + errbuf text.
template <typename Fn>
rf_status guarded(char* errbuf, size_t errbuf_len, Fn&& fn) {
  try {
    return fn();
  } catch (const rotoflex::Error& e) {
    copy_error(e.what(), errbuf, errbuf_len);
    return e.kind() == rotoflex::ErrorKind::numeric ? RF_ERROR_NUMERIC
                                                    : RF_ERROR_INVALID;
  } catch (const std::exception& e) {
    copy_error(e.what(), errbuf, errbuf_len);
    return RF_ERROR_INVALID;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

extern "C" {

rf_status rf_problem_parse(const char* json_text, rf_problem** out,
                           char* errbuf, size_t errbuf_len) {
  if (json_text == nullptr || out == nullptr) {
    copy_error("rf_problem_parse: null argument", errbuf, errbuf_len);
    return RF_ERROR_INVALID;
  }
  *out = nullptr;
  return guarded(errbuf, errbuf_len, [&]() -> rf_status {
    rotoflex::ProblemSpec spec = rotoflex::parse_problem(json_text);
    *out = new rf_problem{std::move(spec)};
    return RF_OK;
  });
}

rf_status rf_problem_random(uint64_t seed, int n_harmonics, rf_problem** out,
                            char* errbuf, size_t errbuf_len) {
  if (out == nullptr) {
    copy_error("rf_problem_random: null output argument", errbuf, errbuf_len);
    return RF_ERROR_INVALID;
  }
  *out = nullptr;
  return guarded(errbuf, errbuf_len, [&]() -> rf_status {
    *out = new rf_problem{rotoflex::random_problem(seed, n_harmonics)};
    return RF_OK;
  });
}

void rf_problem_free(rf_problem* problem) { delete problem; }

rf_status rf_solve(const rf_problem* problem, rf_report** out, char* errbuf,
                   size_t errbuf_len) {
  if (problem == nullptr || out == nullptr) {
    copy_error("rf_solve: null argument", errbuf, errbuf_len);
    return RF_ERROR_INVALID;
  }
  *out = nullptr;
  return guarded(errbuf, errbuf_len, [&]() -> rf_status {
    *out = new rf_report{rotoflex::solve_problem(problem->spec)};
    return RF_OK;
  });
}

void rf_report_free(rf_report* report) { delete report; }

double rf_report_flextance(const rf_report* report) {
  return report != nullptr ? report->report.op.flextance : 0.0;
}

double rf_report_power_factor(const rf_report* report) {
  return report != nullptr ? report->report.power_factor : 0.0;
}

double rf_report_effective_angle_deg(const rf_report* report) {
  return report != nullptr ? report->report.effective_angle_deg : 0.0;
}

double rf_report_oracle_delta(const rf_report* report) {
  return report != nullptr ? report->report.max_classical_delta : 0.0;
}

int rf_report_harmonic_count(const rf_report* report) {
  return report != nullptr ? static_cast<int>(report->report.rows.size()) : 0;
}

rf_status rf_report_harmonic(const rf_report* report, int index, int* order,
                             double* ga_rms, double* ga_phase_deg,
                             double* oracle_rms, double* oracle_phase_deg) {
  if (report == nullptr || index < 0 ||
      index >= static_cast<int>(report->report.rows.size()))
    return RF_ERROR_INVALID;
  const rotoflex::HarmonicRow& row = report->report.rows[index];
  if (order != nullptr) *order = row.order;
  if (ga_rms != nullptr) *ga_rms = row.ga_rms;
  if (ga_phase_deg != nullptr) *ga_phase_deg = row.ga_phase_deg;
  if (oracle_rms != nullptr) *oracle_rms = row.classical_rms;
  if (oracle_phase_deg != nullptr) *oracle_phase_deg = row.classical_phase_deg;
  return RF_OK;
}

char* rf_report_to_json(const rf_report* report, int precision) {
  if (report == nullptr || precision < 0 || precision > 17) return nullptr;
  try {
    return dup_string(rotoflex::render_json(report->report, precision));
  } catch (const std::exception&) {
    return nullptr;
  }
}

char* rf_report_to_table(const rf_report* report) {
  if (report == nullptr) return nullptr;
  try {
    return dup_string(rotoflex::render_table(report->report));
  } catch (const std::exception&) {
    return nullptr;
  }
}

rf_status rf_waveform_csv(const rf_problem* problem, int periods,
                          int samples_per_period, char** out_csv,
                          char* errbuf, size_t errbuf_len) {
  if (problem == nullptr || out_csv == nullptr) {
    copy_error("rf_waveform_csv: null argument", errbuf, errbuf_len);
    return RF_ERROR_INVALID;
  }
  *out_csv = nullptr;
  return guarded(errbuf, errbuf_len, [&]() -> rf_status {
    *out_csv = dup_string(
        rotoflex::waveform_csv(problem->spec, periods, samples_per_period));
    return RF_OK;
  });
}

void rf_string_free(char* text) { std::free(text); }

rf_status rf_bench_trial(const rf_problem* problem, double* ga_seconds,
                         double* oracle_seconds, double* max_delta,
                         char* errbuf, size_t errbuf_len) {
  if (problem == nullptr) {
    copy_error("rf_bench_trial: null problem", errbuf, errbuf_len);
    return RF_ERROR_INVALID;
  }
  return guarded(errbuf, errbuf_len, [&]() -> rf_status {
    const rotoflex::BenchTrial trial = rotoflex::bench_trial(problem->spec);
    if (ga_seconds != nullptr) *ga_seconds = trial.ga_seconds;
    if (oracle_seconds != nullptr) *oracle_seconds = trial.classical_seconds;
    if (max_delta != nullptr) *max_delta = trial.max_delta;
    return RF_OK;
  });
}

rf_status rf_selftest(char** out_text) {
  try {
    const rotoflex::SelftestResult result = rotoflex::run_selftest();
    if (out_text != nullptr) *out_text = dup_string(result.text);
    return result.ok() ? RF_OK : RF_ERROR_CHECK;
  } catch (const std::exception& e) {
    if (out_text != nullptr) *out_text = dup_string(std::string("selftest aborted: ") + e.what());
    return RF_ERROR_CHECK;
  }
}

const char* rf_version(void) { return "0.1.0"; }

} // extern "C"
