#include "core/rotoflex_op.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace rotoflex {

namespace {

void check_signal_vector(const Multivector& x) {
  if (!x.is_grade(1)) throw_invalid("signal vector must be grade-1");
  if (x.dim() % 2 != 0) throw_invalid("signal vector needs an even ambient dimension");
}

// components of x in the plane of harmonic h
std::pair<double, double> plane_components(const Multivector& x, int h) {
  return {x.coefficient(1ull << (2 * h - 2)), x.coefficient(1ull << (2 * h - 1))};
}

} // namespace

std::vector<double> spectral_weights(const Multivector& x) {
  check_signal_vector(x);
  const double total = norm(x);
  if (total == 0.0) throw_numeric("undefined spectral weights for null signal");
  const int n = x.dim() / 2;
  std::vector<double> weights(n, 0.0);
  for (int h = 1; h <= n; ++h) {
    const auto [a, b] = plane_components(x, h);
    weights[h - 1] = std::hypot(a, b) / total;
  }
  return weights;
}

double flextance(const Circuit& c, const Multivector& x, double omega) {
  validate(c);
  const std::vector<double> weights = spectral_weights(x);
  double sum = 0.0;
  for (int h = 1; h <= static_cast<int>(weights.size()); ++h) {
    const double g = weights[h - 1];
    if (g == 0.0) continue;
    const double kappa = spectral_kernel(c, h, omega);
    sum += g * g * kappa * kappa;
  }
  return std::sqrt(sum);
}

Multivector construct_output(const Circuit& c, const Multivector& x, double omega) {
  validate(c);
  check_signal_vector(x);
  const int n = x.dim() / 2;
  Multivector out(x.dim());
  for (int h = 1; h <= n; ++h) {
    const auto [a, b] = plane_components(x, h);
    if (a == 0.0 && b == 0.0) continue;
    const HarmonicResponse resp = harmonic_response(c, h, omega);
    Multivector xh(x.dim());
    xh.set(1ull << (2 * h - 2), a);
    xh.set(1ull << (2 * h - 1), b);
    out += geometric_product(plane_rotor(x.dim(), h, resp.phi), xh) * resp.kappa;
  }
  return out;
}

Multivector rotance(const Multivector& input, const Multivector& output) {
  check_signal_vector(input);
  check_signal_vector(output);
  if (norm(input) == 0.0) throw_numeric("rotance undefined for a null input vector");
  if (norm(output) == 0.0) throw_numeric("rotance undefined for a null output vector");
  return geometric_product(normalized(output), normalized(input));
}

Rotoflex build_rotoflex(const Circuit& c, const Multivector& x, double omega) {
  const double k = flextance(c, x, omega);
  const Multivector out = construct_output(c, x, omega);
  const Multivector r = rotance(x, out);

  // The flextance comes from the spectral sum, the output norm from the
  // per-plane rotor construction; they must agree or something is wrong
  // with one of the two paths. The relative term guards circuits whose
  // gain is large enough that 1e-10 sits below double resolution.
  const double ratio = norm(out) / norm(x);
  if (std::fabs(k - ratio) > std::max(1e-10, 1e-12 * k))
    throw_numeric("flextance cross-check failed: spectral sum " + std::to_string(k) +
                  " vs output/input norm ratio " + std::to_string(ratio));

  if (std::fabs(norm(r) - 1.0) > 1e-10) throw_numeric("rotance lost unit norm");
  // No explicit R R~ = 1 check: r is a product of two unit vectors, so it
  // holds by construction up to rounding, and forming R R~ costs O(terms^2)
  // (about 1.5M blade products at 25 harmonics). apply() rejects non-versor
  // rotances anyway through its higher-grade residual gate.
  const double scalar_part = r.coefficient(0);
  if (std::fabs(scalar_part) > 1.0 + 1e-10)
    throw_numeric("rotance scalar part escaped [-1, 1]");

  return {c.topology, x.dim() / 2, k, r};
}

Multivector apply(const Rotoflex& theta, const Multivector& x) {
  check_signal_vector(x);
  if (theta.rotance.dim() != x.dim())
    throw_invalid("ambient dimension mismatch: " + std::to_string(theta.rotance.dim()) + " vs " +
                  std::to_string(x.dim()));
  const Multivector full = geometric_product(theta.rotance, x);
  const Multivector vector_part = grade_projection(full, 1);
  const double residual = norm(full - vector_part);
  if (residual > 1e-8 * std::max(norm(full), 1e-300))
    throw_numeric("rotoflex does not match this input: higher-grade residual " +
                  std::to_string(residual));
  return vector_part * theta.flextance;
}

Rotoflex invert(const Rotoflex& theta) {
  if (theta.flextance <= 0.0) throw_numeric("rotoflex with non-positive flextance");
  return {theta.topology, theta.n_harmonics, 1.0 / theta.flextance, reverse(theta.rotance)};
}

double power_factor(const Multivector& u, const Multivector& i) {
  const double nu = norm(u);
  const double ni = norm(i);
  if (nu == 0.0 || ni == 0.0) throw_numeric("power factor undefined for a null signal");
  const double pf = inner_product_vectors(u, i) / (nu * ni);
  // Cauchy-Schwarz bounds |pf| by 1; floating point may overshoot by ulps.
  return std::clamp(pf, -1.0, 1.0);
}

double effective_angle(const Rotoflex& theta) {
  const double s = std::clamp(theta.rotance.coefficient(0), -1.0, 1.0);
  return std::acos(s);
}

} // namespace rotoflex
