#pragma once

#include <vector>

#include "core/circuit.hpp"
#include "core/multivector.hpp"

namespace rotoflex {

// The circuit response to one specific excitation, packaged as a single
// scale-and-rotate operator: output = flextance * <rotance * input>_1.
// The rotance is a unit even multivector (grades {0, 2}) built as the
// geometric product of the normalized output and input vectors; the
// flextance is the overall RMS gain. Both are tied to the input signal's
// spectral mix, not to the circuit alone.
struct Rotoflex {
  Topology topology = Topology::series;
  int n_harmonics = 0;
  double flextance = 0.0;
  Multivector rotance;
};

// gamma_h = |x_h| / |x|: the fraction of signal norm in each harmonic
// plane. Sum of squares is 1 by construction.
std::vector<double> spectral_weights(const Multivector& x);

// k = sqrt(sum_h gamma_h^2 * kappa_h^2); only driven planes contribute,
// so an undriven resonant harmonic is harmless.
double flextance(const Circuit& c, const Multivector& x, double omega);

// Per-plane solve: scale by kappa_h and rotate by the plane rotor at
// phi_h (left product), summed over the driven planes in ascending order.
Multivector construct_output(const Circuit& c, const Multivector& x, double omega);

// R = normalize(output) * normalize(input) (geometric product). Scalar
// part is the power factor between the two signals.
Multivector rotance(const Multivector& input, const Multivector& output);

// Assembles flextance, output and rotance for the given circuit and input,
// and cross-checks the independently computed flextance against
// norm(output)/norm(input) before returning.
Rotoflex build_rotoflex(const Circuit& c, const Multivector& x, double omega);

// flextance * <rotance * x>_1. For the construction input this reproduces
// construct_output; the discarded higher-grade residual must stay at
// floating-point-noise level or the operator does not match the input.
Multivector apply(const Rotoflex& theta, const Multivector& x);

// (1/k, reverse(R)): maps outputs back to inputs.
Rotoflex invert(const Rotoflex& theta);

// cos of the effective angle between two signals: (u . i) / (|u| |i|).
double power_factor(const Multivector& u, const Multivector& i);

// acos of the rotance's scalar part, in radians.
double effective_angle(const Rotoflex& theta);

} // namespace rotoflex
