#include "core/signal.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace rotoflex {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw_invalid(std::string(what) + " must be finite");
}

} // namespace

double wrap_phase(double radians) {
  double x = std::fmod(radians + kPi, 2.0 * kPi);
  if (x <= 0.0) x += 2.0 * kPi;
  return x - kPi;
}

HarmonicSignal::HarmonicSignal(double omega, double dc, std::vector<HarmonicTerm> terms)
    : omega_(omega), dc_(dc), terms_(std::move(terms)) {
  check_finite(omega_, "omega");
  if (omega_ <= 0.0) throw_invalid("omega must be positive");
  check_finite(dc_, "dc");
  for (auto& t : terms_) {
    if (t.order < 1) throw_invalid("harmonic order must be >= 1, got " + std::to_string(t.order));
    check_finite(t.rms, "harmonic rms");
    if (t.rms < 0.0) throw_invalid("harmonic rms must be non-negative");
    check_finite(t.phase_alpha, "harmonic phase");
    t.phase_alpha = wrap_phase(t.phase_alpha);
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const HarmonicTerm& a, const HarmonicTerm& b) { return a.order < b.order; });
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i].order == terms_[i - 1].order)
      throw_invalid("duplicate harmonic order " + std::to_string(terms_[i].order));
}

Multivector to_vector(const HarmonicSignal& s, int n_harmonics) {
  if (n_harmonics < 1) throw_invalid("ambient harmonic count must be >= 1");
  if (2 * n_harmonics > Multivector::max_dim)
    throw_invalid("too many harmonic planes; the limit is " +
                  std::to_string(Multivector::max_dim / 2));
  if (s.max_order() > n_harmonics)
    throw_invalid("harmonic order " + std::to_string(s.max_order()) +
                  " exceeds the ambient harmonic count " + std::to_string(n_harmonics));
  Multivector v(2 * n_harmonics);
  for (const auto& t : s.harmonics()) {
    v.set(1ull << (2 * t.order - 2), t.rms * std::cos(t.phase_alpha));
    v.set(1ull << (2 * t.order - 1), t.rms * std::sin(t.phase_alpha));
  }
  return v;
}

HarmonicSignal from_vector(const Multivector& v, double omega) {
  if (!v.is_grade(1)) throw_invalid("from_vector requires a grade-1 multivector");
  std::vector<HarmonicTerm> terms;
  const int planes = (v.dim() + 1) / 2;
  for (int h = 1; h <= planes; ++h) {
    const double c = v.coefficient(1ull << (2 * h - 2));
    const double s = 2 * h <= v.dim() ? v.coefficient(1ull << (2 * h - 1)) : 0.0;
    const double rms = std::hypot(c, s);
    if (rms == 0.0) continue;
    terms.push_back({h, rms, wrap_phase(std::atan2(s, c))});
  }
  return HarmonicSignal(omega, 0.0, std::move(terms));
}

double sample(const HarmonicSignal& s, double t) {
  double value = s.dc();
  for (const auto& term : s.harmonics())
    value += std::sqrt(2.0) * term.rms * std::cos(term.order * s.omega() * t - term.phase_alpha);
  return value;
}

double rms_norm(const HarmonicSignal& s) {
  double sum = 0.0;
  for (const auto& term : s.harmonics()) sum += term.rms * term.rms;
  return std::sqrt(sum);
}

} // namespace rotoflex
