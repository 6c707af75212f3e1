#include "core/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "json.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"

namespace rotoflex {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw_invalid(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& require_field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "must be finite");
  return d;
}

int as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "must be a string");
  return v.get<std::string>();
}

} // namespace

ProblemSpec parse_problem(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw_invalid(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw_invalid("problem file must contain a JSON object");
  check_keys(root, "", {"omega", "circuit", "source", "options"});

  ProblemSpec spec;
  spec.omega = as_number(require_field(root, "", "omega"), "omega");
  if (spec.omega <= 0.0) fail("omega", "must be positive");

  // circuit
  const json& circuit = require_field(root, "", "circuit");
  if (!circuit.is_object()) fail("circuit", "must be an object");
  check_keys(circuit, "circuit", {"topology", "R", "G", "L", "C"});
  const std::string topology = as_string(require_field(circuit, "circuit", "topology"),
                                         "circuit.topology");
  if (topology == "series")
    spec.circuit.topology = Topology::series;
  else if (topology == "parallel")
    spec.circuit.topology = Topology::parallel;
  else
    fail("circuit.topology", "must be \"series\" or \"parallel\"");
  if (circuit.contains("R")) {
    if (spec.circuit.topology != Topology::series)
      fail("circuit.R", "resistance applies to series circuits; use G for parallel");
    spec.circuit.dissipative = as_number(circuit["R"], "circuit.R");
  }
  if (circuit.contains("G")) {
    if (spec.circuit.topology != Topology::parallel)
      fail("circuit.G", "conductance applies to parallel circuits; use R for series");
    spec.circuit.dissipative = as_number(circuit["G"], "circuit.G");
  }
  if (circuit.contains("L")) spec.circuit.inductance = as_number(circuit["L"], "circuit.L");
  if (circuit.contains("C")) spec.circuit.capacitance = as_number(circuit["C"], "circuit.C");
  validate(spec.circuit);

  // source
  const json& source = require_field(root, "", "source");
  if (!source.is_object()) fail("source", "must be an object");
  check_keys(source, "source", {"kind", "dc", "harmonics"});
  const std::string kind = as_string(require_field(source, "source", "kind"), "source.kind");
  if (kind == "voltage")
    spec.kind = SourceKind::voltage;
  else if (kind == "current")
    spec.kind = SourceKind::current;
  else
    fail("source.kind", "must be \"voltage\" or \"current\"");
  if (spec.kind == SourceKind::voltage && spec.circuit.topology != Topology::series)
    fail("source.kind", "a voltage source requires topology \"series\"");
  if (spec.kind == SourceKind::current && spec.circuit.topology != Topology::parallel)
    fail("source.kind", "a current source requires topology \"parallel\"");
  if (source.contains("dc")) {
    spec.dc = as_number(source["dc"], "source.dc");
    if (spec.dc != 0.0)
      fail("source.dc", "nonzero DC components are not supported; the solver covers the AC "
                        "steady state only");
  }
  const json& harmonics = require_field(source, "source", "harmonics");
  if (!harmonics.is_array()) fail("source.harmonics", "must be an array");
  std::set<int> seen;
  for (std::size_t i = 0; i < harmonics.size(); ++i) {
    const std::string path = "source.harmonics[" + std::to_string(i) + "]";
    const json& term = harmonics[i];
    if (!term.is_object()) fail(path, "must be an object");
    check_keys(term, path, {"h", "rms", "phase_deg", "form"});
    SourceTermSpec t;
    t.order = as_integer(require_field(term, path, "h"), path + ".h");
    if (t.order < 1) fail(path + ".h", "must be >= 1");
    if (!seen.insert(t.order).second) fail(path + ".h", "duplicate harmonic order");
    t.rms = as_number(require_field(term, path, "rms"), path + ".rms");
    if (t.rms < 0.0) fail(path + ".rms", "must be non-negative");
    if (term.contains("phase_deg")) t.phase_deg = as_number(term["phase_deg"], path + ".phase_deg");
    if (term.contains("form")) {
      const std::string form = as_string(term["form"], path + ".form");
      if (form == "sin")
        t.sine = true;
      else if (form != "cos")
        fail(path + ".form", "must be \"cos\" or \"sin\"");
    }
    spec.terms.push_back(t);
  }

  // options
  if (root.contains("options")) {
    const json& options = root["options"];
    if (!options.is_object()) fail("options", "must be an object");
    check_keys(options, "options", {"n_override", "precision"});
    if (options.contains("n_override")) {
      const int n = as_integer(options["n_override"], "options.n_override");
      if (n < 1) fail("options.n_override", "must be >= 1");
      spec.n_override = n;
    }
    if (options.contains("precision")) {
      spec.precision = as_integer(options["precision"], "options.precision");
      if (spec.precision < 1 || spec.precision > 17)
        fail("options.precision", "must be between 1 and 17");
    }
  }

  int max_order = 0;
  for (const auto& t : spec.terms) max_order = std::max(max_order, t.order);
  if (spec.n_override && *spec.n_override < max_order)
    fail("options.n_override", "below the highest harmonic order " + std::to_string(max_order));
  if (2 * ambient_harmonics(spec) > Multivector::max_dim)
    fail("source.harmonics", "too many harmonic planes; the limit is " +
                                 std::to_string(Multivector::max_dim / 2));
  return spec;
}

HarmonicSignal source_signal(const ProblemSpec& spec) {
  std::vector<HarmonicTerm> terms;
  terms.reserve(spec.terms.size());
  for (const auto& t : spec.terms) {
    // rms*sqrt(2)*cos(wt + theta) = rms*sqrt(2)*cos(wt - (-theta));
    // a sine is a cosine lagging by 90 degrees.
    const double theta = t.phase_deg * kPi / 180.0;
    const double alpha = (t.sine ? kPi / 2.0 : 0.0) - theta;
    terms.push_back({t.order, t.rms, alpha});
  }
  return HarmonicSignal(spec.omega, spec.dc, std::move(terms));
}

int ambient_harmonics(const ProblemSpec& spec) {
  int n = 1;
  for (const auto& t : spec.terms) n = std::max(n, t.order);
  if (spec.n_override) n = std::max(n, *spec.n_override);
  return n;
}

ProblemSpec random_problem(std::uint64_t seed, int n_harmonics) {
  if (n_harmonics < 1 || 2 * n_harmonics > Multivector::max_dim)
    throw_invalid("randomized problems support 1 to " +
                  std::to_string(Multivector::max_dim / 2) + " harmonics");
  SplitMix64 rng(seed);
  ProblemSpec spec;
  spec.omega = rng.log_uniform(0.1, 100.0);
  const bool series = rng.coin();
  spec.circuit.topology = series ? Topology::series : Topology::parallel;
  spec.kind = series ? SourceKind::voltage : SourceKind::current;
  spec.circuit.dissipative = rng.log_uniform(1e-2, 1e2);
  spec.circuit.inductance = rng.log_uniform(1e-2, 1e2);
  spec.circuit.capacitance = rng.log_uniform(1e-2, 1e2);
  for (int h = 1; h <= n_harmonics; ++h) {
    SourceTermSpec t;
    t.order = h;
    t.rms = rng.uniform(0.1, 3.0);
    t.phase_deg = rng.uniform(-180.0, 180.0);
    spec.terms.push_back(t);
  }
  return spec;
}

} // namespace rotoflex
