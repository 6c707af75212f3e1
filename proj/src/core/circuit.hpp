#pragma once

#include <optional>

namespace rotoflex {

enum class Topology { series, parallel };

// Single-branch RLC circuit. The dissipative element is a resistance in
// ohms for a series branch and a conductance in siemens for a parallel
// branch. Absent elements simply contribute nothing (open capacitor /
// shorted inductor in series, and dually in parallel).
struct Circuit {
  Topology topology = Topology::series;
  std::optional<double> dissipative; // R [ohm] (series) or G [S] (parallel)
  std::optional<double> inductance;  // L [H], > 0 when present
  std::optional<double> capacitance; // C [F], > 0 when present
};

// Throws on: no elements at all, negative dissipative value, non-positive
// L or C, non-finite values.
void validate(const Circuit& c);

const char* topology_name(Topology t);

// D: the loss term of the harmonic response (R or G; 0 when absent).
double dissipance(const Circuit& c);

// X_h: the reactive term at harmonic h.
//   series:   h*omega*L - 1/(h*omega*C)
//   parallel: h*omega*C - 1/(h*omega*L)
double storance(const Circuit& c, int h, double omega);

// kappa_h = 1/sqrt(D^2 + X_h^2): per-harmonic magnitude scaling.
// D = X_h = 0 is a lossless resonance and has no finite response.
double spectral_kernel(const Circuit& c, int h, double omega);

// phi_h = atan2(-X_h, D): rotation angle of the response at harmonic h.
double harmonic_angle(const Circuit& c, int h, double omega);

struct HarmonicResponse {
  int order = 1;
  double kappa = 0.0;
  double phi = 0.0;
  double dissipance = 0.0;
  double storance = 0.0;
};

HarmonicResponse harmonic_response(const Circuit& c, int h, double omega);

} // namespace rotoflex
