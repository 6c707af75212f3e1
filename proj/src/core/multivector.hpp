#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace rotoflex {

// Basis blades of the Euclidean algebra G(dim, 0) are encoded as bitmasks:
// bit (j-1) set means basis vector sigma_j participates. The canonical form
// keeps indices ascending, so sigma_1^sigma_3^sigma_4 is mask 0b1101.
using BladeMask = std::uint64_t;

int blade_grade(BladeMask mask);

// Geometric product of two canonical blades. The result mask is a XOR b;
// the sign counts the adjacent transpositions needed to sort the
// concatenated index sequence (sigma_j^2 = +1, so contractions of repeated
// indices are sign-neutral).
std::pair<BladeMask, int> blade_product(BladeMask a, BladeMask b);

// Human-readable blade notation used in reports and debugging: "1" for the
// scalar blade, "s13" for sigma_1^sigma_3. Indices above 9 are separated by
// underscores ("s9_12") to stay unambiguous.
std::string blade_name(BladeMask mask);
BladeMask parse_blade(std::string_view name, int dim);

// Ordering used when printing terms: by grade, then lexicographically by
// the ascending index sequence (s12 < s13 < s24 < s34).
bool blade_index_less(BladeMask a, BladeMask b);

// Sparse multivector over G(dim, 0), dim <= 64. Terms whose coefficient
// falls below prune_threshold in absolute value are never stored, so a
// freshly computed product is already clean of floating-point dust.
class Multivector {
public:
  static constexpr double prune_threshold = 1e-14;
  static constexpr int max_dim = 64;

  Multivector() = default;
  explicit Multivector(int dim);

  static Multivector scalar(int dim, double value);
  static Multivector basis_vector(int dim, int index); // 1-based index
  static Multivector basis_blade(int dim, BladeMask mask, double coefficient = 1.0);
  static Multivector with_terms(int dim, std::map<BladeMask, double> terms);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<BladeMask, double>& terms() const { return terms_; }

  // 0.0 for absent terms
  double coefficient(BladeMask mask) const;

  // insert or overwrite one term (prunes small values), builder style
  Multivector& set(BladeMask mask, double value);

  // A zero multivector matches any grade.
  bool is_grade(int grade) const;
  bool has_only_grades(std::initializer_list<int> grades) const;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double factor);

  friend Multivector operator+(Multivector lhs, const Multivector& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend Multivector operator-(Multivector lhs, const Multivector& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend Multivector operator*(Multivector lhs, double factor) {
    lhs *= factor;
    return lhs;
  }
  friend Multivector operator*(double factor, Multivector rhs) {
    rhs *= factor;
    return rhs;
  }

  std::string to_string() const;

private:
  void store(BladeMask mask, double value);

  int dim_ = 0;
  std::map<BladeMask, double> terms_;
};

Multivector geometric_product(const Multivector& lhs, const Multivector& rhs);
Multivector outer_product(const Multivector& lhs, const Multivector& rhs);

// Euclidean dot product of two grade-1 multivectors.
double inner_product_vectors(const Multivector& a, const Multivector& b);

// Reversion: each grade-j part picks up (-1)^(j(j-1)/2).
Multivector reverse(const Multivector& m);

Multivector grade_projection(const Multivector& m, int grade);

// sqrt(<M M~>_0). In a Euclidean signature this equals the root of the sum
// of squared coefficients; the unit tests pin that identity against the
// literal product route.
double norm(const Multivector& m);

Multivector normalized(const Multivector& m);

// a / |a|^2 for grade-1 a.
Multivector inverse_vector(const Multivector& a);

// cos(angle) + sin(angle) * sigma_{2h-1} sigma_{2h}: unit rotor in the
// plane of harmonic h. Acts on in-plane vectors by left geometric product
// through the full angle: exp(phi B) sigma_1 = cos(phi) sigma_1 - sin(phi) sigma_2.
Multivector plane_rotor(int dim, int harmonic, double angle);

// rotor_half * v * reverse(rotor_half) for grade-1 v. With
// rotor_half = plane_rotor(dim, h, phi/2) this equals the left product by
// plane_rotor(dim, h, phi) on in-plane vectors. rotor_half must satisfy
// R R~ = 1 within tolerance.
Multivector sandwich_rotate(const Multivector& rotor_half, const Multivector& v);

// max |a_mask - b_mask| over the union of stored terms
double max_abs_difference(const Multivector& a, const Multivector& b);

} // namespace rotoflex
