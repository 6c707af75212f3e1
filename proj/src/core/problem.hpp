#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "core/circuit.hpp"
#include "core/signal.hpp"

namespace rotoflex {

enum class SourceKind { voltage, current };

// One source term as written in the problem file:
//   rms * sqrt(2) * form(h*omega*t + phase_deg), form in {cos, sin}.
struct SourceTermSpec {
  int order = 1;
  double rms = 0.0;
  double phase_deg = 0.0;
  bool sine = false;
};

struct ProblemSpec {
  double omega = 0.0;
  Circuit circuit;
  SourceKind kind = SourceKind::voltage;
  double dc = 0.0; // must be 0; the solver covers AC steady state only
  std::vector<SourceTermSpec> terms;
  std::optional<int> n_override;
  int precision = 6; // significant digits in JSON reports
};

// Strict parse + validation of the problem JSON; error messages name the
// offending field. Schema:
//   {"omega": w,
//    "circuit": {"topology": "series"|"parallel", "R"|"G": v, "L": v, "C": v},
//    "source": {"kind": "voltage"|"current", "dc": 0,
//               "harmonics": [{"h": n, "rms": v, "phase_deg": v,
//                              "form": "cos"|"sin"}, ...]},
//    "options": {"n_override": n, "precision": n}}
// A voltage source requires a series circuit; a current source a parallel
// one. R is accepted only for series circuits and G only for parallel.
ProblemSpec parse_problem(std::string_view json_text);

// Convert the file's cos/sin + leading-phase convention to the internal
// cos(h*omega*t - alpha) form.
HarmonicSignal source_signal(const ProblemSpec& spec);

// Number of harmonic planes to embed into: the highest source order, lifted
// by options.n_override, and at least 1.
int ambient_harmonics(const ProblemSpec& spec);

// Deterministic randomized dense problem (orders 1..n_harmonics, all three
// elements present, log-uniform element values). Used by the benchmark and
// the randomized test suites.
ProblemSpec random_problem(std::uint64_t seed, int n_harmonics);

} // namespace rotoflex
