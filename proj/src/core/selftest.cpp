#include "core/selftest.hpp"

#include <cmath>
#include <cstdio>

#include "core/circuit.hpp"
#include "core/multivector.hpp"
#include "core/problem.hpp"
#include "core/report.hpp"
#include "core/rotoflex_op.hpp"
#include "core/signal.hpp"

namespace rotoflex {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Blade masks used by the checks (sigma_j is bit j-1).
constexpr BladeMask kS1 = 0x01, kS2 = 0x02, kS3 = 0x04, kS4 = 0x08;
constexpr BladeMask kS5 = 0x10, kS6 = 0x20;
constexpr BladeMask kS12 = kS1 | kS2, kS13 = kS1 | kS3, kS14 = kS1 | kS4;
constexpr BladeMask kS24 = kS2 | kS4, kS34 = kS3 | kS4, kS45 = kS4 | kS5;
constexpr BladeMask kS56 = kS5 | kS6;

struct Harness {
  int total = 0;
  int failed = 0;
  std::string text;

  void check(const char* name, double expected, double actual, double tol) {
    ++total;
    const double delta = std::abs(expected - actual);
    const bool ok = std::isfinite(actual) && delta <= tol;
    if (!ok) ++failed;
    char line[220];
    std::snprintf(line, sizeof line,
                  "%-4s %-38s expected % -.10g actual % -.10g delta %.2e tol %.0e\n",
                  ok ? "ok" : "FAIL", name, expected, actual, delta, tol);
    text += line;
  }
};

// Two-harmonic series case: R = 3 ohm, L = 1 H, C = 1 F, omega = 1 rad/s,
// u(t) = sqrt(2) (1 cos t + 0.8 cos 2t) V. The fundamental hits the series
// resonance, so Z1 is purely resistive and Z2 = 3 + j1.5 ohm.
ProblemSpec reference_case_series() {
  ProblemSpec s;
  s.omega = 1.0;
  s.circuit = {Topology::series, 3.0, 1.0, 1.0};
  s.kind = SourceKind::voltage;
  s.terms = {{1, 1.0, 0.0, false}, {2, 0.8, 0.0, false}};
  return s;
}

// Three-harmonic parallel case: G = 0.5 S, L = 3 H, C = 0.5 F,
// omega = 2 rad/s, i(t) = sqrt(2) (1.5 cos 2t + 0.9 sin 4t + 0.5 cos 6t) A.
ProblemSpec reference_case_parallel() {
  ProblemSpec s;
  s.omega = 2.0;
  s.circuit = {Topology::parallel, 0.5, 3.0, 0.5};
  s.kind = SourceKind::current;
  s.terms = {{1, 1.5, 0.0, false}, {2, 0.9, 0.0, true}, {3, 0.5, 0.0, false}};
  return s;
}

void series_case_checks(Harness& h) {
  const ProblemSpec spec = reference_case_series();
  const SolveReport r = solve_problem(spec);

  h.check("series_case.input_norm", 1.2806248474865698, norm(r.input), 1e-12);
  h.check("series_case.flextance", 0.32006096980144877, r.op.flextance, 1e-12);
  h.check("series_case.output_s1", 1.0 / 3.0, r.output.coefficient(kS1), 1e-12);
  h.check("series_case.output_s3", 0.21333333333333335, r.output.coefficient(kS3), 1e-12);
  h.check("series_case.output_s4", 0.10666666666666667, r.output.coefficient(kS4), 1e-12);
  h.check("series_case.power_factor", 0.9601829094043464, r.power_factor, 1e-12);
  h.check("series_case.rotance_scalar", 0.9601829094043464,
          r.op.rotance.coefficient(0), 1e-12);
  h.check("series_case.rotance_s13", 0.10160665707982501,
          r.op.rotance.coefficient(kS13), 1e-12);
  h.check("series_case.rotance_s14", -0.20321331415965002,
          r.op.rotance.coefficient(kS14), 1e-12);
  h.check("series_case.rotance_s34", -0.16257065132772,
          r.op.rotance.coefficient(kS34), 1e-12);
  h.check("series_case.rotance_s12", 0.0, r.op.rotance.coefficient(kS12), 1e-14);
  h.check("series_case.effective_angle_deg", 16.22273435115334,
          r.effective_angle_deg, 1e-10);
  h.check("series_case.kernel_h2", 0.29814239699997197,
          spectral_kernel(spec.circuit, 2, spec.omega), 1e-12);
  h.check("series_case.classical_h2_rms", 0.2385139175999776,
          r.rows[1].classical_rms, 1e-12);
  h.check("series_case.classical_h2_phase_deg", -26.56505117707799,
          r.rows[1].classical_phase_deg, 1e-10);
  h.check("series_case.ga_h2_rms", 0.2385139175999776, r.rows[1].ga_rms, 1e-12);
  h.check("series_case.ga_h2_phase_deg", -26.56505117707799,
          r.rows[1].ga_phase_deg, 1e-10);
  h.check("series_case.classical_delta", 0.0, r.max_classical_delta, 1e-12);

  const HarmonicSignal source = source_signal(spec);
  h.check("series_case.sample_t0_input", 2.5455844122715714, sample(source, 0.0),
          1e-12);
  const HarmonicSignal response = from_vector(r.output, spec.omega);
  h.check("series_case.sample_t0_output", 0.773103414097292,
          sample(response, 0.0), 1e-12);

  const Multivector back = apply(invert(r.op), r.output);
  h.check("series_case.invert_round_trip", 0.0,
          max_abs_difference(back, r.input), 1e-10);
}

void parallel_case_checks(Harness& h) {
  const ProblemSpec spec = reference_case_parallel();
  const SolveReport r = solve_problem(spec);

  h.check("parallel_case.input_norm", 1.8193405398660252, norm(r.input), 1e-12);
  h.check("parallel_case.flextance", 0.8891462181184845, r.op.flextance, 1e-12);
  h.check("parallel_case.output_s1", 0.7941176470588235, r.output.coefficient(kS1), 1e-12);
  h.check("parallel_case.output_s2", 1.3235294117647058, r.output.coefficient(kS2), 1e-12);
  h.check("parallel_case.output_s3", -0.43964601769911504, r.output.coefficient(kS3), 1e-12);
  h.check("parallel_case.output_s4", 0.11469026548672567, r.output.coefficient(kS4), 1e-12);
  h.check("parallel_case.output_s5", 0.02802768166089965, r.output.coefficient(kS5), 1e-12);
  h.check("parallel_case.output_s6", 0.16505190311418683, r.output.coefficient(kS6), 1e-12);
  h.check("parallel_case.power_factor", 0.4445731090592423, r.power_factor, 1e-12);
  h.check("parallel_case.effective_angle_deg", 63.60397035657038,
          r.effective_angle_deg, 1e-10);
  h.check("parallel_case.rotance_s12", -0.6745648019071179,
          r.op.rotance.coefficient(kS12), 1e-12);
  h.check("parallel_case.rotance_s24", 0.40473888114427076,
          r.op.rotance.coefficient(kS24), 1e-12);
  h.check("parallel_case.rotance_s45", 0.01091383344262011,
          r.op.rotance.coefficient(kS45), 1e-12);
  h.check("parallel_case.rotance_s56", -0.028040732942021366,
          r.op.rotance.coefficient(kS56), 1e-12);
  h.check("parallel_case.rotance_terms", 13.0,
          static_cast<double>(r.op.rotance.term_count()), 0.5);
  h.check("parallel_case.kernel_h1", 1.028991510855053,
          spectral_kernel(spec.circuit, 1, spec.omega), 1e-12);
  h.check("parallel_case.storance_h2", 1.9166666666666667,
          storance(spec.circuit, 2, spec.omega), 1e-12);
  h.check("parallel_case.classical_h1_rms", 1.5434872662825794,
          r.rows[0].classical_rms, 1e-12);
  h.check("parallel_case.classical_h1_phase_deg", -59.03624346792648,
          r.rows[0].classical_phase_deg, 1e-10);
  h.check("parallel_case.classical_h2_rms", 0.45435941486460496,
          r.rows[1].classical_rms, 1e-12);
  h.check("parallel_case.classical_h2_phase_deg", -165.37912601136836,
          r.rows[1].classical_phase_deg, 1e-10);
  h.check("parallel_case.classical_h3_rms", 0.167414699655973,
          r.rows[2].classical_rms, 1e-12);
  h.check("parallel_case.classical_h3_phase_deg", -80.36246188706906,
          r.rows[2].classical_phase_deg, 1e-10);
  h.check("parallel_case.classical_delta", 0.0, r.max_classical_delta, 1e-12);

  const HarmonicSignal source = source_signal(spec);
  h.check("parallel_case.sample_t0_input", 2.8284271247461903,
          sample(source, 0.0), 1e-12);
}

// The published comparison table rounds magnitudes to 2 decimals, phases
// and angles to 2 decimals, and operator scalars to 4. The tolerances
// below absorb that rounding. The two effective angles additionally track
// the table's rounded power factors rather than the unrounded ones
// (arccos(0.96) vs arccos(0.96018...)), so they carry a 0.05 deg band.
void reference_table_checks(Harness& h) {
  const SolveReport r1 = solve_problem(reference_case_series());
  const SolveReport r2 = solve_problem(reference_case_parallel());

  h.check("reference.series_flextance", 0.3201, r1.op.flextance, 5e-4);
  h.check("reference.series_power_factor", 0.9602, r1.power_factor, 1e-3);
  h.check("reference.series_effective_angle", 16.26, r1.effective_angle_deg, 0.05);
  h.check("reference.series_h1_rms", 0.33, r1.rows[0].ga_rms, 5e-3);
  h.check("reference.series_h1_phase", 0.00, r1.rows[0].ga_phase_deg, 0.03);
  h.check("reference.series_h2_rms", 0.24, r1.rows[1].ga_rms, 5e-3);
  h.check("reference.series_h2_phase", -26.57, r1.rows[1].ga_phase_deg, 0.03);

  h.check("reference.parallel_flextance", 0.8892, r2.op.flextance, 5e-4);
  h.check("reference.parallel_power_factor", 0.4446, r2.power_factor, 1e-3);
  h.check("reference.parallel_effective_angle", 63.58, r2.effective_angle_deg, 0.05);
  h.check("reference.parallel_h1_rms", 1.54, r2.rows[0].ga_rms, 5e-3);
  h.check("reference.parallel_h1_phase", -59.04, r2.rows[0].ga_phase_deg, 0.03);
  h.check("reference.parallel_h2_rms", 0.45, r2.rows[1].ga_rms, 5e-3);
  h.check("reference.parallel_h2_phase", -165.39, r2.rows[1].ga_phase_deg, 0.03);
  h.check("reference.parallel_h3_rms", 0.17, r2.rows[2].ga_rms, 5e-3);
  h.check("reference.parallel_h3_phase", -80.39, r2.rows[2].ga_phase_deg, 0.03);
  h.check("reference.parallel_rotance_s12", -0.6746,
          r2.op.rotance.coefficient(kS12), 1e-3);
  h.check("reference.parallel_rotance_s45", 0.0109,
          r2.op.rotance.coefficient(kS45), 1e-3);
}

// Single-element branches collapse to textbook behavior: k is the element's
// own response magnitude and the rotance is the identity (resistive) or a
// quarter-turn in the driven plane (reactive). Driven at h = 2 so the
// undriven fundamental plane stays inert.
void canonical_load_checks(Harness& h) {
  const double omega = 0.8;
  const int order = 2;
  const double hw = order * omega;
  const HarmonicSignal drive(omega, 0.0, {{order, 1.7, kPi / 6.0}});
  const Multivector x = to_vector(drive, order);

  auto build = [&](Topology topology, double r_or_g, double l, double c) {
    Circuit circuit;
    circuit.topology = topology;
    if (r_or_g > 0) circuit.dissipative = r_or_g;
    if (l > 0) circuit.inductance = l;
    if (c > 0) circuit.capacitance = c;
    return build_rotoflex(circuit, x, omega);
  };

  const Rotoflex rs = build(Topology::series, 2.5, 0, 0);
  h.check("canonical.series_r_flextance", 1.0 / 2.5, rs.flextance, 1e-12);
  h.check("canonical.series_r_rotance_scalar", 1.0, rs.rotance.coefficient(0), 1e-12);
  h.check("canonical.series_r_rotance_s34", 0.0, rs.rotance.coefficient(kS34), 1e-14);

  const Rotoflex rp = build(Topology::parallel, 0.4, 0, 0);
  h.check("canonical.parallel_g_flextance", 1.0 / 0.4, rp.flextance, 1e-12);
  h.check("canonical.parallel_g_rotance_scalar", 1.0, rp.rotance.coefficient(0), 1e-12);

  const Rotoflex ls = build(Topology::series, 0, 0.5, 0);
  h.check("canonical.series_l_flextance", 1.0 / (hw * 0.5), ls.flextance, 1e-12);
  h.check("canonical.series_l_rotance_s34", -1.0, ls.rotance.coefficient(kS34), 1e-12);
  h.check("canonical.series_l_rotance_scalar", 0.0, ls.rotance.coefficient(0), 1e-14);

  const Rotoflex lp = build(Topology::parallel, 0, 0.5, 0);
  h.check("canonical.parallel_l_flextance", hw * 0.5, lp.flextance, 1e-12);
  h.check("canonical.parallel_l_rotance_s34", 1.0, lp.rotance.coefficient(kS34), 1e-12);

  const Rotoflex cs = build(Topology::series, 0, 0, 0.25);
  h.check("canonical.series_c_flextance", hw * 0.25, cs.flextance, 1e-12);
  h.check("canonical.series_c_rotance_s34", 1.0, cs.rotance.coefficient(kS34), 1e-12);

  const Rotoflex cp = build(Topology::parallel, 0, 0, 0.25);
  h.check("canonical.parallel_c_flextance", 1.0 / (hw * 0.25), cp.flextance, 1e-12);
  h.check("canonical.parallel_c_rotance_s34", -1.0, cp.rotance.coefficient(kS34), 1e-12);
}

// A single driven harmonic reduces the whole machinery to one classical
// phasor division: R = 2, L = 0.3, C = 0.8, omega = 5 gives
// Z = 2 + j1.25, so 1.7 V at the fundamental maps to 1.7/|Z| A lagging by
// atan2(1.25, 2).
void single_frequency_checks(Harness& h) {
  ProblemSpec spec;
  spec.omega = 5.0;
  spec.circuit = {Topology::series, 2.0, 0.3, 0.8};
  spec.kind = SourceKind::voltage;
  spec.terms = {{1, 1.7, 0.0, false}};
  const SolveReport r = solve_problem(spec);

  h.check("single.flextance", 0.423999152002544, r.op.flextance, 1e-12);
  h.check("single.output_s1", 0.61123595505617977, r.output.coefficient(kS1), 1e-12);
  h.check("single.output_s2", 0.38202247191011235, r.output.coefficient(kS2), 1e-12);
  h.check("single.power_factor", 0.847998304005088, r.power_factor, 1e-12);
  h.check("single.effective_angle_deg", 32.005383208083494,
          r.effective_angle_deg, 1e-10);
  h.check("single.ga_phase_deg", -32.005383208083494, r.rows[0].ga_phase_deg, 1e-10);
  h.check("single.classical_delta", 0.0, r.max_classical_delta, 1e-13);
}

void randomized_agreement_checks(Harness& h) {
  const struct { const char* name; std::uint64_t seed; } trials[] = {
      {"random.agreement_seed1", 1}, {"random.agreement_seed2", 2},
      {"random.agreement_seed3", 3}};
  for (const auto& trial : trials) {
    const SolveReport r = solve_problem(random_problem(trial.seed, 8));
    h.check(trial.name, 0.0, r.max_classical_delta, 1e-10);
  }
}

} // namespace

SelftestResult run_selftest() {
  Harness h;
  series_case_checks(h);
  parallel_case_checks(h);
  reference_table_checks(h);
  canonical_load_checks(h);
  single_frequency_checks(h);
  randomized_agreement_checks(h);

  char line[96];
  std::snprintf(line, sizeof line, "selftest: %d checks, %d ok, %d failed\n",
                h.total, h.total - h.failed, h.failed);
  h.text += line;
  return {h.total, h.failed, std::move(h.text)};
}

} // namespace rotoflex
