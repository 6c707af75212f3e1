#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "core/error.hpp"
#include "core/problem.hpp"
#include "core/report.hpp"
#include "core/signal.hpp"

using rotoflex::ambient_harmonics;
using rotoflex::bench_trial;
using rotoflex::BenchTrial;
using rotoflex::Error;
using rotoflex::HarmonicSignal;
using rotoflex::parse_problem;
using rotoflex::ProblemSpec;
using rotoflex::random_problem;
using rotoflex::render_json;
using rotoflex::render_table;
using rotoflex::solve_problem;
using rotoflex::SolveReport;
using rotoflex::source_signal;
using rotoflex::SourceKind;
using rotoflex::Topology;
using rotoflex::waveform_csv;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

const char* kSeriesJson = R"({
  "omega": 1.0,
  "circuit": {"topology": "series", "R": 3.0, "L": 1.0, "C": 1.0},
  "source": {"kind": "voltage", "dc": 0,
             "harmonics": [{"h": 1, "rms": 1.0}, {"h": 2, "rms": 0.8}]}
})";

const char* kParallelJson = R"({
  "omega": 2.0,
  "circuit": {"topology": "parallel", "G": 0.5, "L": 3.0, "C": 0.5},
  "source": {"kind": "current",
             "harmonics": [{"h": 1, "rms": 1.5},
                           {"h": 2, "rms": 0.9, "form": "sin"},
                           {"h": 3, "rms": 0.5}]}
})";

std::string parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

} // namespace

TEST_CASE("parsing the reference problems") {
  const ProblemSpec s = parse_problem(kSeriesJson);
  CHECK(s.omega == 1.0);
  CHECK(s.circuit.topology == Topology::series);
  CHECK(*s.circuit.dissipative == 3.0);
  CHECK(*s.circuit.inductance == 1.0);
  CHECK(*s.circuit.capacitance == 1.0);
  CHECK(s.kind == SourceKind::voltage);
  REQUIRE(s.terms.size() == 2);
  CHECK(s.terms[0].order == 1);
  CHECK(s.terms[0].rms == 1.0);
  CHECK(s.terms[0].phase_deg == 0.0);
  CHECK_FALSE(s.terms[0].sine);
  CHECK(s.precision == 6);
  CHECK_FALSE(s.n_override.has_value());
  CHECK(ambient_harmonics(s) == 2);

  const ProblemSpec p = parse_problem(kParallelJson);
  CHECK(p.circuit.topology == Topology::parallel);
  CHECK(p.kind == SourceKind::current);
  REQUIRE(p.terms.size() == 3);
  CHECK(p.terms[1].sine);
  CHECK(ambient_harmonics(p) == 3);
}

TEST_CASE("parse errors name the offending field") {
  CHECK(parse_error("not json").find("not valid JSON") != std::string::npos);
  CHECK(parse_error("[1,2]").find("JSON object") != std::string::npos);
  CHECK(parse_error(R"({"circuit": {}, "source": {}})").find("omega") !=
        std::string::npos);

  std::string msg = parse_error(R"({
    "omega": 1.0, "bogus": 1,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK(msg.find("bogus") != std::string::npos);
  CHECK(msg.find("unknown field") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "parallel", "R": 1.0},
    "source": {"kind": "current", "harmonics": []}})");
  CHECK(msg.find("circuit.R") != std::string::npos);
  CHECK(msg.find("use G for parallel") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "G": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK(msg.find("circuit.G") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "parallel", "G": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK(msg.find("source.kind") != std::string::npos);
  CHECK(msg.find("series") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "dc": 0.5, "harmonics": []}})");
  CHECK(msg.find("source.dc") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage",
               "harmonics": [{"h": 2, "rms": 1.0}, {"h": 2, "rms": 0.5}]}})");
  CHECK(msg.find("harmonics[1].h") != std::string::npos);
  CHECK(msg.find("duplicate") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 0, "rms": 1.0}]}})");
  CHECK(msg.find("harmonics[0].h") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 1, "rms": -1.0}]}})");
  CHECK(msg.find("rms") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage",
               "harmonics": [{"h": 1, "rms": 1.0, "form": "tan"}]}})");
  CHECK(msg.find("form") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 4, "rms": 1.0}]},
    "options": {"n_override": 2}})");
  CHECK(msg.find("n_override") != std::string::npos);
  CHECK(msg.find("4") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 1, "rms": 1.0}]},
    "options": {"precision": 40}})");
  CHECK(msg.find("precision") != std::string::npos);

  msg = parse_error(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 40, "rms": 1.0}]}})");
  CHECK(msg.find("harmonic planes") != std::string::npos);

  msg = parse_error(R"({
    "omega": -2.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK(msg.find("omega") != std::string::npos);
}

TEST_CASE("source conversion to the internal phase convention") {
  ProblemSpec spec = parse_problem(kParallelJson);
  const HarmonicSignal s = source_signal(spec);
  REQUIRE(s.harmonics().size() == 3);
  CHECK(s.harmonics()[0].phase_alpha == 0.0);
  CHECK(s.harmonics()[1].phase_alpha == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(s.harmonics()[2].phase_alpha == 0.0);

  // cos with a -90 degree lead is the same as a sine
  spec = parse_problem(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage",
               "harmonics": [{"h": 1, "rms": 2.0, "phase_deg": -90.0}]}})");
  CHECK(source_signal(spec).harmonics()[0].phase_alpha ==
        doctest::Approx(kPi / 2).epsilon(1e-15));

  // a 30 degree cosine lead turns into alpha = -pi/6
  spec = parse_problem(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage",
               "harmonics": [{"h": 1, "rms": 2.0, "phase_deg": 30.0}]}})");
  CHECK(source_signal(spec).harmonics()[0].phase_alpha ==
        doctest::Approx(-kPi / 6).epsilon(1e-15));
}

TEST_CASE("ambient width respects the override") {
  ProblemSpec spec = parse_problem(kSeriesJson);
  CHECK(ambient_harmonics(spec) == 2);
  spec.n_override = 5;
  CHECK(ambient_harmonics(spec) == 5);

  // no harmonics at all still leaves one plane
  const ProblemSpec empty = parse_problem(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK(ambient_harmonics(empty) == 1);
}

TEST_CASE("randomized problems are deterministic in the seed") {
  const ProblemSpec a = random_problem(1234, 6);
  const ProblemSpec b = random_problem(1234, 6);
  CHECK(a.omega == b.omega);
  CHECK(a.circuit.topology == b.circuit.topology);
  CHECK(*a.circuit.dissipative == *b.circuit.dissipative);
  CHECK(*a.circuit.inductance == *b.circuit.inductance);
  CHECK(*a.circuit.capacitance == *b.circuit.capacitance);
  REQUIRE(a.terms.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.terms[i].rms == b.terms[i].rms);
    CHECK(a.terms[i].phase_deg == b.terms[i].phase_deg);
  }
  const ProblemSpec c = random_problem(1235, 6);
  CHECK(a.omega != c.omega);

  CHECK((a.kind == SourceKind::voltage) == (a.circuit.topology == Topology::series));

  CHECK_THROWS_AS(random_problem(1, 0), Error);
  CHECK_THROWS_AS(random_problem(1, 33), Error);
}

TEST_CASE("solving the series reference fills a consistent report") {
  const SolveReport r = solve_problem(parse_problem(kSeriesJson));
  CHECK(r.topology == Topology::series);
  CHECK(r.kind == SourceKind::voltage);
  CHECK(r.n_harmonics == 2);
  CHECK(std::fabs(r.op.flextance - 0.32006096980144877) <= 1e-14);
  CHECK(std::fabs(r.power_factor - 0.9601829094043464) <= 1e-14);
  CHECK(std::fabs(r.effective_angle_deg - 16.22273435115334) <= 1e-11);
  CHECK(r.max_classical_delta <= 5e-15);

  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].order == 1);
  CHECK(r.rows[0].input_rms == 1.0);
  CHECK(r.rows[0].input_phase_deg == 0.0);
  CHECK(std::fabs(r.rows[0].ga_rms - 1.0 / 3.0) <= 1e-14);
  CHECK(std::fabs(r.rows[0].ga_phase_deg) <= 1e-12);
  CHECK(std::fabs(r.rows[0].classical_rms - 1.0 / 3.0) <= 1e-14);

  CHECK(r.rows[1].order == 2);
  CHECK(std::fabs(r.rows[1].ga_rms - 0.2385139175999776) <= 1e-14);
  CHECK(std::fabs(r.rows[1].ga_phase_deg + 26.56505117707799) <= 1e-11);
  CHECK(std::fabs(r.rows[1].classical_phase_deg + 26.56505117707799) <= 1e-11);

  CHECK(std::string(input_unit(r)) == "V");
  CHECK(std::string(output_unit(r)) == "A");
  CHECK(std::string(flextance_unit(r)) == "S");
}

TEST_CASE("solving the parallel reference fills a consistent report") {
  const SolveReport r = solve_problem(parse_problem(kParallelJson));
  CHECK(r.n_harmonics == 3);
  CHECK(std::fabs(r.op.flextance - 0.8891462181184845) <= 1e-14);
  CHECK(std::fabs(r.power_factor - 0.4445731090592423) <= 1e-14);
  CHECK(std::fabs(r.effective_angle_deg - 63.60397035657038) <= 1e-11);
  CHECK(r.max_classical_delta <= 5e-15);

  REQUIRE(r.rows.size() == 3);
  CHECK(std::fabs(r.rows[0].ga_rms - 1.5434872662825794) <= 1e-13);
  CHECK(std::fabs(r.rows[0].ga_phase_deg + 59.03624346792648) <= 1e-11);
  CHECK(std::fabs(r.rows[1].input_phase_deg + 90.0) <= 1e-12);
  CHECK(std::fabs(r.rows[1].ga_rms - 0.45435941486460496) <= 1e-13);
  CHECK(std::fabs(r.rows[1].ga_phase_deg + 165.37912601136836) <= 1e-11);
  CHECK(std::fabs(r.rows[2].ga_rms - 0.167414699655973) <= 1e-13);
  CHECK(std::fabs(r.rows[2].ga_phase_deg + 80.36246188706906) <= 1e-11);

  CHECK(std::string(input_unit(r)) == "A");
  CHECK(std::string(output_unit(r)) == "V");
  CHECK(std::string(flextance_unit(r)) == "ohm");
}

TEST_CASE("a silent source cannot be solved") {
  const ProblemSpec empty = parse_problem(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK_THROWS_AS(solve_problem(empty), Error);

  const ProblemSpec zeros = parse_problem(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 1, "rms": 0.0}]}})");
  CHECK_THROWS_AS(solve_problem(zeros), Error);
}

TEST_CASE("zero-padding the ambient width changes nothing numeric") {
  ProblemSpec spec = parse_problem(kSeriesJson);
  const SolveReport base = solve_problem(spec);
  spec.n_override = 4;
  const SolveReport padded = solve_problem(spec);

  CHECK(padded.n_harmonics == 4);
  CHECK(std::fabs(padded.op.flextance - base.op.flextance) <= 1e-15);
  CHECK(std::fabs(padded.power_factor - base.power_factor) <= 1e-15);
  CHECK(std::fabs(padded.effective_angle_deg - base.effective_angle_deg) <= 1e-12);
  for (const auto& [mask, coeff] : base.output.terms())
    CHECK(std::fabs(padded.output.coefficient(mask) - coeff) <= 1e-15);
  for (const auto& [mask, coeff] : base.op.rotance.terms())
    CHECK(std::fabs(padded.op.rotance.coefficient(mask) - coeff) <= 1e-15);
}

TEST_CASE("JSON rendering is deterministic and parses back") {
  const SolveReport r = solve_problem(parse_problem(kSeriesJson));
  const std::string a = render_json(r);
  const std::string b = render_json(r);
  CHECK(a == b);
  CHECK(a.back() == '\n');

  const nlohmann::json parsed = nlohmann::json::parse(a);
  CHECK(parsed["problem"]["topology"] == "series");
  CHECK(parsed["problem"]["source"] == "voltage");
  CHECK(parsed["problem"]["n_harmonics"] == 2);
  CHECK(parsed["input"]["unit"] == "V");
  CHECK(parsed["input"]["vector"]["s1"].get<double>() == doctest::Approx(1.0));
  CHECK(parsed["input"]["vector"]["s3"].get<double>() == doctest::Approx(0.8));
  CHECK(parsed["output"]["unit"] == "A");
  CHECK(parsed["flextance"]["value"].get<double>() ==
        doctest::Approx(0.320061).epsilon(1e-6));
  CHECK(parsed["flextance"]["unit"] == "S");
  CHECK(parsed["rotance"]["1"].get<double>() == doctest::Approx(0.960183).epsilon(1e-6));
  CHECK(parsed["rotance"]["s13"].get<double>() == doctest::Approx(0.101607).epsilon(1e-5));
  CHECK(parsed["power_factor"].get<double>() == doctest::Approx(0.960183).epsilon(1e-6));
  CHECK(parsed["effective_angle_deg"].get<double>() ==
        doctest::Approx(16.2227).epsilon(1e-5));
  REQUIRE(parsed["harmonics"].size() == 2);
  CHECK(parsed["harmonics"][0]["h"] == 1);
  CHECK(parsed["harmonics"][1]["classical_rms"].get<double>() ==
        doctest::Approx(0.238514).epsilon(1e-5));
  CHECK(parsed["max_classical_delta"].get<double>() <= 5e-15);

  // negative zero never leaks into the output
  CHECK(a.find(": -0,") == std::string::npos);
  CHECK(a.find(": -0\n") == std::string::npos);
  CHECK(a.find("\"input_phase_deg\": 0,") != std::string::npos);
}

TEST_CASE("JSON precision control") {
  const SolveReport r = solve_problem(parse_problem(kSeriesJson));
  const std::string coarse = render_json(r, 3);
  CHECK(coarse.find("\"value\": 0.32,") != std::string::npos);
  const std::string fine = render_json(r, 15);
  CHECK(fine.find("0.320060969801449") != std::string::npos);

  // a problem-file precision option flows through render_json's default
  ProblemSpec spec = parse_problem(kSeriesJson);
  spec.precision = 4;
  const std::string via_spec = render_json(solve_problem(spec));
  CHECK(via_spec.find("\"value\": 0.3201,") != std::string::npos);
}

TEST_CASE("table rendering carries the operator summary") {
  const SolveReport rs = solve_problem(parse_problem(kSeriesJson));
  const std::string ts = render_table(rs);
  CHECK(ts.find("series circuit driven by a voltage source") != std::string::npos);
  CHECK(ts.find("2 harmonic planes") != std::string::npos);
  CHECK(ts.find("flextance        0.3201 S") != std::string::npos);
  CHECK(ts.find("power factor     0.9602") != std::string::npos);
  CHECK(ts.find("effective angle  16.22 deg") != std::string::npos);
  CHECK(ts.find("max |geometric - classical| component") != std::string::npos);
  CHECK(ts.find("0.3333") != std::string::npos); // h1 current magnitude
  CHECK(ts.find("-26.57") != std::string::npos); // h2 phase

  const SolveReport rp = solve_problem(parse_problem(kParallelJson));
  const std::string tp = render_table(rp);
  CHECK(tp.find("parallel circuit driven by a current source") != std::string::npos);
  CHECK(tp.find("flextance        0.8891 ohm") != std::string::npos);
  CHECK(tp.find("power factor     0.4446") != std::string::npos);
  CHECK(tp.find("effective angle  63.60 deg") != std::string::npos);
  CHECK(tp.find("1.5435") != std::string::npos);
  CHECK(tp.find("-165.38") != std::string::npos);
}

TEST_CASE("waveform reconstruction") {
  const ProblemSpec spec = parse_problem(kSeriesJson);
  const std::string csv = waveform_csv(spec, 2, 8);
  CHECK(count_lines(csv) == 2 * 8 + 2); // header + inclusive endpoint
  CHECK(csv.rfind("t,input,output\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);

  // first row: t = 0, input = sqrt(2)*(1 + 0.8), output from the operator
  double t0 = -1.0, in0 = 0.0, out0 = 0.0;
  REQUIRE(std::sscanf(csv.c_str() + csv.find('\n') + 1, "%lf,%lf,%lf", &t0,
                      &in0, &out0) == 3);
  CHECK(t0 == 0.0);
  CHECK(std::fabs(in0 - 2.5455844122715714) <= 1e-14);
  CHECK(std::fabs(out0 - 0.773103414097292) <= 1e-12);

  CHECK_THROWS_AS(waveform_csv(spec, 0, 8), Error);
  CHECK_THROWS_AS(waveform_csv(spec, 20000, 8), Error);
  CHECK_THROWS_AS(waveform_csv(spec, 1, 1), Error);
  CHECK_THROWS_AS(waveform_csv(spec, 5000, 200000), Error);
  CHECK_THROWS_AS(waveform_csv(spec, 100, 100000), Error); // grid too large

  // silent source: zero output column instead of a solve failure
  const ProblemSpec quiet = parse_problem(R"({
    "omega": 2.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": [{"h": 1, "rms": 0.0}]}})");
  const std::string quiet_csv = waveform_csv(quiet, 1, 4);
  CHECK(count_lines(quiet_csv) == 6);
  std::size_t pos = quiet_csv.find('\n') + 1;
  while (pos < quiet_csv.size()) {
    double t = 0.0, in_v = 1.0, out_v = 1.0;
    REQUIRE(std::sscanf(quiet_csv.c_str() + pos, "%lf,%lf,%lf", &t, &in_v, &out_v) == 3);
    CHECK(in_v == 0.0);
    CHECK(out_v == 0.0);
    pos = quiet_csv.find('\n', pos) + 1;
  }
}

TEST_CASE("benchmark trial times both paths on the same answer") {
  const BenchTrial b = bench_trial(random_problem(99, 10));
  CHECK(b.ga_seconds > 0.0);
  CHECK(b.classical_seconds > 0.0);
  CHECK(b.max_delta <= 1e-11);

  const ProblemSpec empty = parse_problem(R"({
    "omega": 1.0,
    "circuit": {"topology": "series", "R": 1.0},
    "source": {"kind": "voltage", "harmonics": []}})");
  CHECK_THROWS_AS(bench_trial(empty), Error);
}
