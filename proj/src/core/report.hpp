#pragma once

#include <string>
#include <vector>

#include "core/multivector.hpp"
#include "core/problem.hpp"
#include "core/rotoflex_op.hpp"

namespace rotoflex {

// One solved harmonic, in both computation paths. Phases follow the phasor
// display convention: the angle of A - jB is atan2(-B, A), in degrees.
struct HarmonicRow {
  int order = 1;
  double input_rms = 0.0;
  double input_phase_deg = 0.0;
  double ga_rms = 0.0;
  double ga_phase_deg = 0.0;
  double classical_rms = 0.0;
  double classical_phase_deg = 0.0;
};

// Full result of one solve: the geometric answer, the independent classical
// answer, and their difference. Everything the renderers and the C API
// accessors need is precomputed here.
struct SolveReport {
  Topology topology = Topology::series;
  SourceKind kind = SourceKind::voltage;
  double omega = 0.0;
  int n_harmonics = 0;
  int precision = 6;

  Multivector input;           // embedded source vector
  Multivector output;          // flextance * rotated input
  Multivector classical_output; // phasor-by-phasor answer, same embedding

  Rotoflex op;
  double power_factor = 0.0;
  double effective_angle_deg = 0.0;
  double max_classical_delta = 0.0; // max component |ga - classical|

  std::vector<HarmonicRow> rows;
};

// Unit labels derived from the source kind: a voltage source drives a
// series circuit and yields a current, and dually for a current source.
const char* input_unit(const SolveReport& r);
const char* output_unit(const SolveReport& r);
const char* flextance_unit(const SolveReport& r);

// Build the operator, apply it, run the classical solve, compare.
// Throws on invalid specs, null sources and lossless resonance.
SolveReport solve_problem(const ProblemSpec& spec);

// Deterministic JSON rendering with a fixed key order and %.{p}g numbers.
// precision <= 0 uses the report's configured precision.
std::string render_json(const SolveReport& r, int precision = 0);

// Plain-text table: one row per harmonic, classical and geometric columns
// side by side, operator summary in the footer.
std::string render_table(const SolveReport& r);

// Time-domain reconstruction of input and output over `periods` fundamental
// periods with `samples_per_period` samples each; inclusive endpoint, so
// periods*samples_per_period + 1 data rows after the "t,input,output"
// header. A source with no AC content yields an all-zero output column.
std::string waveform_csv(const ProblemSpec& spec, int periods,
                         int samples_per_period);

// Times the geometric path (operator build + apply) and the classical path
// on the same problem, averaged over an internal repeat loop, and reports
// the max component difference between the two answers.
struct BenchTrial {
  double ga_seconds = 0.0;
  double classical_seconds = 0.0;
  double max_delta = 0.0;
};

BenchTrial bench_trial(const ProblemSpec& spec);

} // namespace rotoflex
