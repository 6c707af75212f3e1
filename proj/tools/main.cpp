#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotoflex/rotoflex.h"

namespace {

constexpr double kBenchDeltaGate = 1e-9;

struct ProblemHandle {
  rf_problem* ptr = nullptr;
  ~ProblemHandle() { rf_problem_free(ptr); }
};

struct ReportHandle {
  rf_report* ptr = nullptr;
  ~ReportHandle() { rf_report_free(ptr); }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { rf_string_free(ptr); }
};

int fail(const std::string& message, rf_status status) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return static_cast<int>(status);
}

bool read_file(const std::string& path, std::string& content, std::string& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot open problem file: " + path;
    return false;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  content = buffer.str();
  return true;
}

bool write_output(const std::string& path, const std::string& content,
                  std::string& err) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err = "cannot open output file: " + path;
    return false;
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    err = "failed writing output file: " + path;
    return false;
  }
  return true;
}

// ROTOFLEX_PRECISION overrides the report precision (significant digits in
// JSON values). Returns false with an error message when it is set but not
// an integer in 1..17. Unset or empty means "use the problem's setting".
bool precision_from_env(int& precision, std::string& err) {
  precision = 0;
  const char* raw = std::getenv("ROTOFLEX_PRECISION");
  if (raw == nullptr || raw[0] == '\0') return true;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1 || value > 17) {
    err = std::string("ROTOFLEX_PRECISION must be an integer between 1 and 17, got \"") +
          raw + "\"";
    return false;
  }
  precision = static_cast<int>(value);
  return true;
}

bool load_problem(const std::string& path, ProblemHandle& problem,
                  std::string& err) {
  std::string content;
  if (!read_file(path, content, err)) return false;
  char errbuf[512] = {0};
  const rf_status status =
      rf_problem_parse(content.c_str(), &problem.ptr, errbuf, sizeof errbuf);
  if (status != RF_OK) {
    err = errbuf;
    return false;
  }
  return true;
}

int run_solve(const std::string& path, const std::string& out_path,
              const std::string& format) {
  std::string err;
  int precision = 0;
  if (!precision_from_env(precision, err)) return fail(err, RF_ERROR_INVALID);

  ProblemHandle problem;
  if (!load_problem(path, problem, err)) return fail(err, RF_ERROR_INVALID);

  char errbuf[512] = {0};
  ReportHandle report;
  const rf_status status =
      rf_solve(problem.ptr, &report.ptr, errbuf, sizeof errbuf);
  if (status != RF_OK) return fail(errbuf, status);

  StringHandle rendered;
  rendered.ptr = format == "table" ? rf_report_to_table(report.ptr)
                                   : rf_report_to_json(report.ptr, precision);
  if (rendered.ptr == nullptr)
    return fail("report rendering failed", RF_ERROR_INVALID);
  if (!write_output(out_path, rendered.ptr, err))
    return fail(err, RF_ERROR_INVALID);
  return 0;
}

int run_waveform(const std::string& path, int periods, int samples,
                 const std::string& out_path) {
  std::string err;
  ProblemHandle problem;
  if (!load_problem(path, problem, err)) return fail(err, RF_ERROR_INVALID);

  char errbuf[512] = {0};
  StringHandle csv;
  const rf_status status = rf_waveform_csv(problem.ptr, periods, samples,
                                           &csv.ptr, errbuf, sizeof errbuf);
  if (status != RF_OK) return fail(errbuf, status);
  if (!write_output(out_path, csv.ptr, err)) return fail(err, RF_ERROR_INVALID);
  return 0;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int run_bench(int max_harmonics, int trials) {
  std::printf("n_harmonics,trial,ga_us,classical_us,delta\n");

  std::vector<int> sweep;
  for (int n : {1, 2, 5, 10, 25, 50, 100})
    if (n <= max_harmonics) sweep.push_back(n);
  if (sweep.empty() || sweep.back() != max_harmonics)
    sweep.push_back(max_harmonics);

  struct Summary {
    int n = 0;
    double ga_us = 0.0;
    double classical_us = 0.0;
    double worst_delta = 0.0;
  };
  std::vector<Summary> summaries;
  bool gate_failed = false;

  for (int n : sweep) {
    std::vector<double> ga_times, classical_times;
    double worst_delta = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const uint64_t seed =
          static_cast<uint64_t>(n) * 100003u + static_cast<uint64_t>(trial);
      char errbuf[512] = {0};
      ProblemHandle problem;
      rf_status status =
          rf_problem_random(seed, n, &problem.ptr, errbuf, sizeof errbuf);
      if (status != RF_OK) return fail(errbuf, status);

      double ga_seconds = 0.0, classical_seconds = 0.0, delta = 0.0;
      status = rf_bench_trial(problem.ptr, &ga_seconds, &classical_seconds,
                              &delta, errbuf, sizeof errbuf);
      if (status != RF_OK) return fail(errbuf, status);

      ga_times.push_back(ga_seconds * 1e6);
      classical_times.push_back(classical_seconds * 1e6);
      worst_delta = std::max(worst_delta, delta);
      if (delta >= kBenchDeltaGate) gate_failed = true;
      std::printf("%d,%d,%.3f,%.3f,%.3e\n", n, trial, ga_seconds * 1e6,
                  classical_seconds * 1e6, delta);
    }
    if (!ga_times.empty())
      summaries.push_back(
          {n, median(ga_times), median(classical_times), worst_delta});
  }

  if (!summaries.empty()) {
    std::printf("\nn_harmonics  median_ga_us  median_classical_us  ratio  worst_delta\n");
    for (const Summary& s : summaries) {
      const double ratio =
          s.ga_us > 0.0 ? s.classical_us / s.ga_us : 0.0;
      std::printf("%11d  %12.3f  %19.3f  %5.2f  %.3e\n", s.n, s.ga_us,
                  s.classical_us, ratio, s.worst_delta);
    }
  }

  if (gate_failed)
    return fail("benchmark correctness gate failed: a trial exceeded the 1e-9 "
                "geometric-vs-classical delta",
                RF_ERROR_CHECK);
  return 0;
}

int run_selftest() {
  char* text = nullptr;
  const rf_status status = rf_selftest(&text);
  if (text != nullptr) {
    std::fputs(text, stdout);
    rf_string_free(text);
  }
  return static_cast<int>(status);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotoflex: multi-harmonic AC steady-state solver with a "
               "classical cross-check"};
  app.require_subcommand(1);

  std::string solve_file, solve_out, solve_format = "json";
  CLI::App* solve = app.add_subcommand(
      "solve", "solve a problem file and print the report");
  solve->add_option("file", solve_file, "problem JSON file")->required();
  solve->add_option("--out", solve_out, "write the report to this path");
  solve->add_option("--format", solve_format, "report format")
      ->check(CLI::IsMember({"json", "table"}));

  std::string wave_file, wave_out;
  int wave_periods = 0, wave_samples = 0;
  CLI::App* waveform = app.add_subcommand(
      "waveform", "sample input and response waveforms as CSV");
  waveform->add_option("file", wave_file, "problem JSON file")->required();
  waveform->add_option("--periods", wave_periods, "fundamental periods to cover")
      ->required();
  waveform->add_option("--samples", wave_samples, "samples per period")
      ->required();
  waveform->add_option("--out", wave_out, "write the CSV to this path");

  int bench_max = 25, bench_trials = 20;
  CLI::App* bench = app.add_subcommand(
      "bench", "time the geometric solve against the classical one");
  bench->add_option("--max-harmonics", bench_max, "largest harmonic count")
      ->check(CLI::Range(1, 32));
  bench->add_option("--trials", bench_trials, "randomized trials per size")
      ->check(CLI::Range(0, 10000));

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in golden checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(RF_ERROR_INVALID);
  }

  if (solve->parsed()) return run_solve(solve_file, solve_out, solve_format);
  if (waveform->parsed())
    return run_waveform(wave_file, wave_periods, wave_samples, wave_out);
  if (bench->parsed()) return run_bench(bench_max, bench_trials);
  if (selftest->parsed()) return run_selftest();
  return 0;
}
