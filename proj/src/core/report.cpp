#include "core/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "core/error.hpp"
#include "core/phasor_oracle.hpp"
#include "core/signal.hpp"

namespace rotoflex {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

const char* kind_name(SourceKind k) {
  return k == SourceKind::voltage ? "voltage" : "current";
}

double to_degrees(double radians) { return radians * 180.0 / kPi; }

// Display angle of the plane (c, s): the phasor c - j*s. Maps an exact -0
// angle to +0 so reports never show "-0.00" for an in-phase line.
double display_phase_deg(double c, double s) {
  if (c == 0.0 && s == 0.0) return 0.0;
  const double deg = to_degrees(std::atan2(-s, c));
  return deg == 0.0 ? 0.0 : deg;
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

// Multivector as a JSON object keyed by blade name, grade-then-index order.
void append_vector_json(std::string& out, const Multivector& m, int precision) {
  std::vector<BladeMask> keys;
  keys.reserve(m.term_count());
  for (const auto& [mask, coeff] : m.terms()) keys.push_back(mask);
  std::sort(keys.begin(), keys.end(), blade_index_less);
  out += '{';
  bool first = true;
  for (BladeMask mask : keys) {
    if (!first) out += ", ";
    first = false;
    out += '"';
    out += blade_name(mask);
    out += "\": ";
    out += format_number(m.coefficient(mask), precision);
  }
  out += '}';
}

} // namespace

const char* input_unit(const SolveReport& r) {
  return r.kind == SourceKind::voltage ? "V" : "A";
}

const char* output_unit(const SolveReport& r) {
  return r.kind == SourceKind::voltage ? "A" : "V";
}

const char* flextance_unit(const SolveReport& r) {
  return r.kind == SourceKind::voltage ? "S" : "ohm";
}

SolveReport solve_problem(const ProblemSpec& spec) {
  validate(spec.circuit);
  const HarmonicSignal source = source_signal(spec);
  const int n = ambient_harmonics(spec);
  const Multivector x = to_vector(source, n);
  if (x.is_zero())
    throw_numeric("the response operator is undefined for a source with no AC content");

  SolveReport r;
  r.topology = spec.circuit.topology;
  r.kind = spec.kind;
  r.omega = spec.omega;
  r.n_harmonics = n;
  r.precision = spec.precision;
  r.input = x;
  r.op = build_rotoflex(spec.circuit, x, spec.omega);
  r.output = apply(r.op, x);

  const auto phasors = oracle::solve_harmonics(spec.circuit, source);
  r.classical_output = oracle::phasors_to_vector(phasors, n);
  r.power_factor = power_factor(x, r.output);
  r.effective_angle_deg = to_degrees(effective_angle(r.op));
  r.max_classical_delta = max_abs_difference(r.output, r.classical_output);

  const auto& terms = source.harmonics();
  r.rows.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const HarmonicTerm& t = terms[i];
    HarmonicRow row;
    row.order = t.order;
    row.input_rms = t.rms;
    const double ic = t.rms * std::cos(t.phase_alpha);
    const double is = t.rms * std::sin(t.phase_alpha);
    row.input_phase_deg = display_phase_deg(ic, is);
    const BladeMask cos_mask = BladeMask{1} << (2 * t.order - 2);
    const BladeMask sin_mask = BladeMask{1} << (2 * t.order - 1);
    const double gc = r.output.coefficient(cos_mask);
    const double gs = r.output.coefficient(sin_mask);
    row.ga_rms = std::hypot(gc, gs);
    row.ga_phase_deg = display_phase_deg(gc, gs);
    const oracle::Phasor p = phasors[i].second;
    row.classical_rms = oracle::magnitude(p);
    const double classical_deg =
        (p.re == 0.0 && p.im == 0.0) ? 0.0 : to_degrees(oracle::angle(p));
    row.classical_phase_deg = classical_deg == 0.0 ? 0.0 : classical_deg;
    r.rows.push_back(row);
  }
  return r;
}

std::string render_json(const SolveReport& r, int precision) {
  const int p = precision > 0 ? precision : r.precision;
  auto num = [p](double v) { return format_number(v, p); };

  std::string out;
  out.reserve(1024);
  out += "{\n";
  out += "  \"problem\": {\"topology\": \"";
  out += topology_name(r.topology);
  out += "\", \"source\": \"";
  out += kind_name(r.kind);
  out += "\", \"omega\": " + num(r.omega);
  out += ", \"n_harmonics\": " + std::to_string(r.n_harmonics) + "},\n";

  out += "  \"input\": {\"unit\": \"";
  out += input_unit(r);
  out += "\", \"vector\": ";
  append_vector_json(out, r.input, p);
  out += "},\n";

  out += "  \"output\": {\"unit\": \"";
  out += output_unit(r);
  out += "\", \"vector\": ";
  append_vector_json(out, r.output, p);
  out += "},\n";

  out += "  \"flextance\": {\"value\": " + num(r.op.flextance) + ", \"unit\": \"";
  out += flextance_unit(r);
  out += "\"},\n";

  out += "  \"rotance\": ";
  append_vector_json(out, r.op.rotance, p);
  out += ",\n";

  out += "  \"power_factor\": " + num(r.power_factor) + ",\n";
  out += "  \"effective_angle_deg\": " + num(r.effective_angle_deg) + ",\n";

  out += "  \"harmonics\": [\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const HarmonicRow& row = r.rows[i];
    out += "    {\"h\": " + std::to_string(row.order);
    out += ", \"input_rms\": " + num(row.input_rms);
    out += ", \"input_phase_deg\": " + num(row.input_phase_deg);
    out += ", \"ga_rms\": " + num(row.ga_rms);
    out += ", \"ga_phase_deg\": " + num(row.ga_phase_deg);
    out += ", \"classical_rms\": " + num(row.classical_rms);
    out += ", \"classical_phase_deg\": " + num(row.classical_phase_deg);
    out += i + 1 < r.rows.size() ? "},\n" : "}\n";
  }
  out += "  ],\n";

  out += "  \"classical_output\": ";
  append_vector_json(out, r.classical_output, p);
  out += ",\n";
  out += "  \"max_classical_delta\": " + num(r.max_classical_delta) + "\n";
  out += "}\n";
  return out;
}

std::string render_table(const SolveReport& r) {
  std::string out;
  char line[256];

  std::snprintf(line, sizeof line,
                "%s circuit driven by a %s source, omega = %.6g rad/s, "
                "%d harmonic plane%s\n\n",
                topology_name(r.topology), kind_name(r.kind), r.omega,
                r.n_harmonics, r.n_harmonics == 1 ? "" : "s");
  out += line;

  std::snprintf(line, sizeof line, "%5s | %12s %10s | %12s %10s | %12s %10s\n",
                "h", "input rms", "phase deg", "classical", "phase deg",
                "geometric", "phase deg");
  out += line;
  for (const HarmonicRow& row : r.rows) {
    std::snprintf(line, sizeof line,
                  "%5d | %12.4f %10.2f | %12.4f %10.2f | %12.4f %10.2f\n",
                  row.order, row.input_rms, row.input_phase_deg,
                  row.classical_rms, row.classical_phase_deg, row.ga_rms,
                  row.ga_phase_deg);
    out += line;
  }

  std::snprintf(line, sizeof line,
                "\n"
                "flextance        %.4f %s\n"
                "power factor     %.4f\n"
                "effective angle  %.2f deg\n"
                "max |geometric - classical| component = %.2e\n",
                r.op.flextance, flextance_unit(r), r.power_factor,
                r.effective_angle_deg, r.max_classical_delta);
  out += line;
  return out;
}

std::string waveform_csv(const ProblemSpec& spec, int periods,
                         int samples_per_period) {
  validate(spec.circuit);
  if (periods < 1 || periods > 10000)
    throw_invalid("periods must be between 1 and 10000");
  if (samples_per_period < 2 || samples_per_period > 100000)
    throw_invalid("samples per period must be between 2 and 100000");
  const long long grid = static_cast<long long>(periods) * samples_per_period;
  if (grid > 5000000)
    throw_invalid("waveform grid too large: periods * samples must stay at or below 5000000");

  const HarmonicSignal source = source_signal(spec);

  // A silent source has a zero response, but no response operator; emit the
  // zero output column directly instead of failing the solve.
  const bool silent = rms_norm(source) == 0.0;
  HarmonicSignal response;
  if (!silent) {
    const int n = ambient_harmonics(spec);
    const Multivector x = to_vector(source, n);
    const Rotoflex theta = build_rotoflex(spec.circuit, x, spec.omega);
    response = from_vector(apply(theta, x), spec.omega);
  }

  const double period = 2.0 * kPi / spec.omega;
  const double dt = period / samples_per_period;

  std::string out = "t,input,output\n";
  out.reserve(static_cast<std::size_t>(grid + 1) * 48 + out.size());
  char line[160];
  for (long long i = 0; i <= grid; ++i) {
    const double t = dt * static_cast<double>(i);
    const double in_value = sample(source, t);
    const double out_value = silent ? 0.0 : sample(response, t);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t, in_value,
                  out_value);
    out += line;
  }
  return out;
}

BenchTrial bench_trial(const ProblemSpec& spec) {
  validate(spec.circuit);
  const HarmonicSignal source = source_signal(spec);
  const int n = ambient_harmonics(spec);
  const Multivector x = to_vector(source, n);
  if (x.is_zero())
    throw_numeric("benchmark needs a source with AC content");

  constexpr int repeat = 50;
  using clock = std::chrono::steady_clock;

  Multivector ga_out(x.dim());
  const auto t0 = clock::now();
  for (int i = 0; i < repeat; ++i) {
    const Rotoflex theta = build_rotoflex(spec.circuit, x, spec.omega);
    ga_out = apply(theta, x);
  }
  const auto t1 = clock::now();

  Multivector classical_out(x.dim());
  for (int i = 0; i < repeat; ++i) {
    const auto phasors = oracle::solve_harmonics(spec.circuit, source);
    classical_out = oracle::phasors_to_vector(phasors, n);
  }
  const auto t2 = clock::now();

  BenchTrial b;
  b.ga_seconds = std::chrono::duration<double>(t1 - t0).count() / repeat;
  b.classical_seconds = std::chrono::duration<double>(t2 - t1).count() / repeat;
  b.max_delta = max_abs_difference(ga_out, classical_out);
  return b;
}

} // namespace rotoflex
