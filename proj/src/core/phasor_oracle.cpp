#include "core/phasor_oracle.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace rotoflex::oracle {

Phasor add(Phasor a, Phasor b) { return {a.re + b.re, a.im + b.im}; }

Phasor multiply(Phasor a, Phasor b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Phasor conjugate(Phasor a) { return {a.re, -a.im}; }

Phasor divide(Phasor num, Phasor den) {
  const double d2 = den.re * den.re + den.im * den.im;
  if (d2 == 0.0) throw_numeric("division by zero at lossless resonance");
  return {(num.re * den.re + num.im * den.im) / d2,
          (num.im * den.re - num.re * den.im) / d2};
}

double magnitude(Phasor a) { return std::hypot(a.re, a.im); }

double angle(Phasor a) { return std::atan2(a.im, a.re); }

Phasor impedance(const Circuit& c, int h, double omega) {
  if (c.topology != Topology::series)
    throw_invalid("impedance is defined for series circuits");
  if (h < 1) throw_invalid("harmonic order must be >= 1");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw_invalid("omega must be positive and finite");
  validate(c);
  const double w = h * omega;
  double x = 0.0;
  if (c.inductance) x += w * *c.inductance;
  if (c.capacitance) x -= 1.0 / (w * *c.capacitance);
  return {c.dissipative.value_or(0.0), x};
}

Phasor admittance(const Circuit& c, int h, double omega) {
  if (c.topology != Topology::parallel)
    throw_invalid("admittance is defined for parallel circuits");
  if (h < 1) throw_invalid("harmonic order must be >= 1");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw_invalid("omega must be positive and finite");
  validate(c);
  const double w = h * omega;
  double b = 0.0;
  if (c.capacitance) b += w * *c.capacitance;
  if (c.inductance) b -= 1.0 / (w * *c.inductance);
  return {c.dissipative.value_or(0.0), b};
}

std::vector<std::pair<int, Phasor>> solve_harmonics(const Circuit& c,
                                                    const HarmonicSignal& source) {
  validate(c);
  std::vector<std::pair<int, Phasor>> out;
  out.reserve(source.harmonics().size());
  for (const auto& term : source.harmonics()) {
    if (term.rms == 0.0) {
      out.push_back({term.order, Phasor{}});
      continue;
    }
    const Phasor x{term.rms * std::cos(term.phase_alpha),
                   -term.rms * std::sin(term.phase_alpha)};
    const Phasor den = c.topology == Topology::series
                           ? impedance(c, term.order, source.omega())
                           : admittance(c, term.order, source.omega());
    if (den.re == 0.0 && den.im == 0.0)
      throw_numeric("division by zero at lossless resonance (harmonic " +
                    std::to_string(term.order) + ")");
    out.push_back({term.order, divide(x, den)});
  }
  return out;
}

Multivector phasors_to_vector(const std::vector<std::pair<int, Phasor>>& phasors,
                              int n_harmonics) {
  if (n_harmonics < 1) throw_invalid("ambient harmonic count must be >= 1");
  if (2 * n_harmonics > Multivector::max_dim)
    throw_invalid("too many harmonic planes; the limit is " +
                  std::to_string(Multivector::max_dim / 2));
  Multivector v(2 * n_harmonics);
  for (const auto& [h, p] : phasors) {
    if (h < 1 || h > n_harmonics)
      throw_invalid("harmonic order " + std::to_string(h) +
                    " exceeds the ambient harmonic count " + std::to_string(n_harmonics));
    // X = A - jB maps to A on the cosine axis and B on the sine axis
    v.set(1ull << (2 * h - 2), v.coefficient(1ull << (2 * h - 2)) + p.re);
    v.set(1ull << (2 * h - 1), v.coefficient(1ull << (2 * h - 1)) - p.im);
  }
  return v;
}

} // namespace rotoflex::oracle
