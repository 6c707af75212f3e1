#pragma once

#include <utility>
#include <vector>

#include "core/circuit.hpp"
#include "core/multivector.hpp"
#include "core/signal.hpp"

// Classical per-harmonic phasor solver used to cross-check every geometric
// solve. The complex arithmetic is implemented locally on purpose (and the
// element formulas are written out again rather than reusing the circuit
// module) so this stays an independent computation path.
namespace rotoflex::oracle {

// re + j*im. A source term rms, alpha maps to the phasor
// rms*(cos(alpha) - j*sin(alpha)), matching the x(t) = sqrt(2)*rms*
// cos(h*omega*t - alpha) time convention.
struct Phasor {
  double re = 0.0;
  double im = 0.0;
};

Phasor add(Phasor a, Phasor b);
Phasor multiply(Phasor a, Phasor b);
Phasor conjugate(Phasor a);
Phasor divide(Phasor num, Phasor den); // throws at a zero denominator
double magnitude(Phasor a);
double angle(Phasor a); // radians, atan2(im, re)

// Z_h = R + j*(h*omega*L - 1/(h*omega*C)); series circuits only.
Phasor impedance(const Circuit& c, int h, double omega);

// Y_h = G + j*(h*omega*C - 1/(h*omega*L)); parallel circuits only.
Phasor admittance(const Circuit& c, int h, double omega);

// Superposition: independently solve each harmonic of the source.
// Series circuits divide the voltage phasor by Z_h; parallel circuits
// divide the current phasor by Y_h. Zero-amplitude terms pass through as
// zero phasors without touching the element values.
std::vector<std::pair<int, Phasor>> solve_harmonics(const Circuit& c,
                                                    const HarmonicSignal& source);

// Lay the phasor list out in the same grade-1 embedding the geometric path
// uses: A - jB lands on A*sigma_{2h-1} + B*sigma_{2h}.
Multivector phasors_to_vector(const std::vector<std::pair<int, Phasor>>& phasors,
                              int n_harmonics);

} // namespace rotoflex::oracle
