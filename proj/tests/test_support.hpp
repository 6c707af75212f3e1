#pragma once

// Shared helpers for the test suites: deterministic randomized inputs in
// ranges that keep the numerics well away from over/underflow.

#include <utility>
#include <vector>

#include "core/circuit.hpp"
#include "core/multivector.hpp"
#include "core/rng.hpp"
#include "core/signal.hpp"

namespace testsupport {

using rotoflex::BladeMask;
using rotoflex::Circuit;
using rotoflex::HarmonicSignal;
using rotoflex::HarmonicTerm;
using rotoflex::Multivector;
using rotoflex::SplitMix64;
using rotoflex::Topology;

inline BladeMask random_mask(SplitMix64& rng, int dim) {
  const BladeMask all = dim >= 64 ? ~0ull : ((1ull << dim) - 1ull);
  return rng.next() & all;
}

// Sparse multivector with up to `terms` random blades of any grade.
inline Multivector random_multivector(SplitMix64& rng, int dim, int terms) {
  Multivector m(dim);
  for (int i = 0; i < terms; ++i)
    m += Multivector::basis_blade(dim, random_mask(rng, dim),
                                  rng.uniform(-2.0, 2.0));
  return m;
}

// Dense grade-1 vector with coefficients in [-2, 2].
inline Multivector random_vector(SplitMix64& rng, int dim) {
  Multivector v(dim);
  for (int j = 1; j <= dim; ++j)
    v += Multivector::basis_vector(dim, j) * rng.uniform(-2.0, 2.0);
  return v;
}

// As above but guaranteed comfortably nonzero.
inline Multivector random_nonzero_vector(SplitMix64& rng, int dim) {
  for (;;) {
    Multivector v = random_vector(rng, dim);
    if (norm(v) > 0.5) return v;
  }
}

// Full RLC branch with log-uniform element values, well conditioned.
inline Circuit random_circuit(SplitMix64& rng, Topology topology) {
  Circuit c;
  c.topology = topology;
  c.dissipative = rng.log_uniform(1e-2, 1e2);
  c.inductance = rng.log_uniform(1e-2, 1e2);
  c.capacitance = rng.log_uniform(1e-2, 1e2);
  return c;
}

inline Topology random_topology(SplitMix64& rng) {
  return rng.coin() ? Topology::series : Topology::parallel;
}

// Dense multi-harmonic signal with orders 1..n.
inline HarmonicSignal random_signal(SplitMix64& rng, double omega, int n) {
  std::vector<HarmonicTerm> terms;
  terms.reserve(n);
  for (int h = 1; h <= n; ++h)
    terms.push_back({h, rng.uniform(0.1, 3.0), rng.uniform(-3.0, 3.0)});
  return HarmonicSignal(omega, 0.0, std::move(terms));
}

} // namespace testsupport
