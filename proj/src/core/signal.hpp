#pragma once

#include <vector>

#include "core/multivector.hpp"

namespace rotoflex {

// One spectral line of a periodic signal written as
//   x(t) = dc + sqrt(2) * sum_h  rms_h * cos(h*omega*t - alpha_h).
struct HarmonicTerm {
  int order = 1;           // h >= 1
  double rms = 0.0;        // RMS magnitude, >= 0
  double phase_alpha = 0.0; // radians, normalized to (-pi, pi]
};

// Immutable multi-harmonic signal. Construction validates: omega > 0,
// distinct positive orders (kept sorted ascending), non-negative finite
// RMS values, finite phases (wrapped). Zero-amplitude terms are legal and
// keep their plane in the ambient dimension.
class HarmonicSignal {
public:
  HarmonicSignal() = default;
  HarmonicSignal(double omega, double dc, std::vector<HarmonicTerm> terms);

  double omega() const { return omega_; }
  double dc() const { return dc_; }
  const std::vector<HarmonicTerm>& harmonics() const { return terms_; }
  int max_order() const { return terms_.empty() ? 0 : terms_.back().order; }

private:
  double omega_ = 1.0;
  double dc_ = 0.0;
  std::vector<HarmonicTerm> terms_;
};

// wrap an angle to (-pi, pi]
double wrap_phase(double radians);

// Embed the AC content into the grade-1 subspace of G(2*n_harmonics, 0):
// harmonic h contributes rms*cos(alpha) on sigma_{2h-1} and rms*sin(alpha)
// on sigma_{2h}. The DC term is dropped (AC analysis only).
Multivector to_vector(const HarmonicSignal& s, int n_harmonics);

// Inverse embedding; planes whose components vanish produce no term.
HarmonicSignal from_vector(const Multivector& v, double omega);

// Instantaneous value at time t (includes DC).
double sample(const HarmonicSignal& s, double t);

// sqrt(sum rms^2) over the AC terms; equals norm(to_vector(s, n)).
double rms_norm(const HarmonicSignal& s);

} // namespace rotoflex
