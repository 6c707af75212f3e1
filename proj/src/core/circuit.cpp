#include "core/circuit.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace rotoflex {

namespace {

void check_rank(const Circuit& c, int h, double omega) {
  if (h < 1) throw_invalid("harmonic order must be >= 1, got " + std::to_string(h));
  if (!(omega > 0.0) || !std::isfinite(omega)) throw_invalid("omega must be positive and finite");
  validate(c);
}

} // namespace

void validate(const Circuit& c) {
  if (!c.dissipative && !c.inductance && !c.capacitance)
    throw_invalid("circuit has no elements");
  const char* dname = c.topology == Topology::series ? "circuit.R" : "circuit.G";
  if (c.dissipative) {
    if (!std::isfinite(*c.dissipative)) throw_invalid(std::string(dname) + " must be finite");
    if (*c.dissipative < 0.0) throw_invalid(std::string(dname) + " must be non-negative");
  }
  if (c.inductance && (!std::isfinite(*c.inductance) || *c.inductance <= 0.0))
    throw_invalid("circuit.L must be positive and finite");
  if (c.capacitance && (!std::isfinite(*c.capacitance) || *c.capacitance <= 0.0))
    throw_invalid("circuit.C must be positive and finite");
}

const char* topology_name(Topology t) {
  return t == Topology::series ? "series" : "parallel";
}

double dissipance(const Circuit& c) { return c.dissipative.value_or(0.0); }

double storance(const Circuit& c, int h, double omega) {
  check_rank(c, h, omega);
  const double w = h * omega;
  if (c.topology == Topology::series) {
    double x = 0.0;
    if (c.inductance) x += w * *c.inductance;
    if (c.capacitance) x -= 1.0 / (w * *c.capacitance);
    return x;
  }
  double x = 0.0;
  if (c.capacitance) x += w * *c.capacitance;
  if (c.inductance) x -= 1.0 / (w * *c.inductance);
  return x;
}

double spectral_kernel(const Circuit& c, int h, double omega) {
  const double d = dissipance(c);
  const double x = storance(c, h, omega);
  const double m = std::hypot(d, x);
  if (m == 0.0)
    throw_numeric("infinite kernel at resonance (harmonic " + std::to_string(h) + ")");
  return 1.0 / m;
}

double harmonic_angle(const Circuit& c, int h, double omega) {
  const double d = dissipance(c);
  const double x = storance(c, h, omega);
  if (d == 0.0 && x == 0.0)
    throw_numeric("infinite kernel at resonance (harmonic " + std::to_string(h) + ")");
  return std::atan2(-x, d);
}

HarmonicResponse harmonic_response(const Circuit& c, int h, double omega) {
  const double d = dissipance(c);
  const double x = storance(c, h, omega);
  const double m = std::hypot(d, x);
  if (m == 0.0)
    throw_numeric("infinite kernel at resonance (harmonic " + std::to_string(h) + ")");
  return {h, 1.0 / m, std::atan2(-x, d), d, x};
}

} // namespace rotoflex
