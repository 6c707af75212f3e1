#include "core/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

#include "core/error.hpp"

namespace rotoflex {

namespace {

BladeMask mask_for_dim(int dim) {
  return dim >= 64 ? ~0ull : ((1ull << dim) - 1ull);
}

void check_dim(int dim) {
  if (dim < 0 || dim > Multivector::max_dim)
    throw_invalid("ambient dimension must be between 0 and 64, got " + std::to_string(dim));
}

void check_mask(BladeMask mask, int dim) {
  if ((mask & ~mask_for_dim(dim)) != 0)
    throw_invalid("blade mask uses basis vectors beyond dimension " + std::to_string(dim));
}

void check_same_dim(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim())
    throw_invalid("ambient dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                  std::to_string(b.dim()));
}

std::vector<int> blade_indices(BladeMask mask) {
  std::vector<int> ix;
  while (mask) {
    ix.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return ix;
}

} // namespace

int blade_grade(BladeMask mask) { return std::popcount(mask); }

std::pair<BladeMask, int> blade_product(BladeMask a, BladeMask b) {
  // Count transpositions: each bit of b must move left past every higher
  // bit of a. Summing popcount(a >> (i+1) & b) over the bits i of a does
  // that in O(grade) word operations.
  int swaps = 0;
  BladeMask t = a >> 1;
  while (t) {
    swaps += std::popcount(t & b);
    t >>= 1;
  }
  return {a ^ b, (swaps & 1) ? -1 : 1};
}

std::string blade_name(BladeMask mask) {
  if (mask == 0) return "1";
  const std::vector<int> ix = blade_indices(mask);
  bool wide = false;
  for (int i : ix)
    if (i > 9) wide = true;
  std::string out = "s";
  for (std::size_t k = 0; k < ix.size(); ++k) {
    if (wide && k > 0) out += '_';
    out += std::to_string(ix[k]);
  }
  return out;
}

BladeMask parse_blade(std::string_view name, int dim) {
  check_dim(dim);
  if (name == "1") return 0;
  if (name.size() < 2 || name[0] != 's')
    throw_invalid("unrecognized blade name '" + std::string(name) + "'");
  std::string_view body = name.substr(1);
  std::vector<int> ix;
  if (body.find('_') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t end = body.find('_', pos);
      if (end == std::string_view::npos) end = body.size();
      if (end == pos) throw_invalid("unrecognized blade name '" + std::string(name) + "'");
      int v = 0;
      for (std::size_t i = pos; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(body[i])))
          throw_invalid("unrecognized blade name '" + std::string(name) + "'");
        v = v * 10 + (body[i] - '0');
      }
      ix.push_back(v);
      pos = end + 1;
    }
  } else {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw_invalid("unrecognized blade name '" + std::string(name) + "'");
      ix.push_back(c - '0');
    }
  }
  BladeMask mask = 0;
  int prev = 0;
  for (int v : ix) {
    if (v <= prev)
      throw_invalid("blade indices must be distinct and ascending in '" + std::string(name) + "'");
    if (v > dim)
      throw_invalid("blade index " + std::to_string(v) + " exceeds dimension " +
                    std::to_string(dim));
    mask |= 1ull << (v - 1);
    prev = v;
  }
  return mask;
}

bool blade_index_less(BladeMask a, BladeMask b) {
  const int ga = blade_grade(a), gb = blade_grade(b);
  if (ga != gb) return ga < gb;
  while (a && b) {
    const int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

Multivector::Multivector(int dim) : dim_(dim) { check_dim(dim); }

Multivector Multivector::scalar(int dim, double value) {
  Multivector m(dim);
  m.store(0, value);
  return m;
}

Multivector Multivector::basis_vector(int dim, int index) {
  Multivector m(dim);
  if (index < 1 || index > dim)
    throw_invalid("basis vector index " + std::to_string(index) + " out of range for dimension " +
                  std::to_string(dim));
  m.store(1ull << (index - 1), 1.0);
  return m;
}

Multivector Multivector::basis_blade(int dim, BladeMask mask, double coefficient) {
  Multivector m(dim);
  check_mask(mask, dim);
  m.store(mask, coefficient);
  return m;
}

Multivector Multivector::with_terms(int dim, std::map<BladeMask, double> terms) {
  Multivector m(dim);
  for (auto it = terms.begin(); it != terms.end();) {
    check_mask(it->first, dim);
    if (std::fabs(it->second) < prune_threshold)
      it = terms.erase(it);
    else
      ++it;
  }
  m.terms_ = std::move(terms);
  return m;
}

double Multivector::coefficient(BladeMask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0.0 : it->second;
}

Multivector& Multivector::set(BladeMask mask, double value) {
  check_mask(mask, dim_);
  store(mask, value);
  return *this;
}

void Multivector::store(BladeMask mask, double value) {
  if (std::fabs(value) < prune_threshold)
    terms_.erase(mask);
  else
    terms_[mask] = value;
}

bool Multivector::is_grade(int grade) const {
  for (const auto& [mask, c] : terms_) {
    (void)c;
    if (blade_grade(mask) != grade) return false;
  }
  return true;
}

bool Multivector::has_only_grades(std::initializer_list<int> grades) const {
  for (const auto& [mask, c] : terms_) {
    (void)c;
    const int g = blade_grade(mask);
    bool found = false;
    for (int allowed : grades)
      if (g == allowed) found = true;
    if (!found) return false;
  }
  return true;
}

Multivector Multivector::operator-() const {
  Multivector out(dim_);
  for (const auto& [mask, c] : terms_) out.terms_[mask] = -c;
  return out;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  check_same_dim(*this, rhs);
  for (const auto& [mask, c] : rhs.terms_) store(mask, coefficient(mask) + c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  check_same_dim(*this, rhs);
  for (const auto& [mask, c] : rhs.terms_) store(mask, coefficient(mask) - c);
  return *this;
}

Multivector& Multivector::operator*=(double factor) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= factor;
    if (std::fabs(it->second) < prune_threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

std::string Multivector::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<BladeMask> masks;
  masks.reserve(terms_.size());
  for (const auto& [mask, c] : terms_) {
    (void)c;
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end(), blade_index_less);
  std::string out;
  char buf[64];
  for (BladeMask mask : masks) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "%g", coefficient(mask));
    out += buf;
    if (mask != 0) {
      out += ' ';
      out += blade_name(mask);
    }
  }
  return out;
}

Multivector geometric_product(const Multivector& lhs, const Multivector& rhs) {
  check_same_dim(lhs, rhs);
  std::map<BladeMask, double> acc;
  for (const auto& [ma, ca] : lhs.terms()) {
    for (const auto& [mb, cb] : rhs.terms()) {
      const auto [mask, sign] = blade_product(ma, mb);
      acc[mask] += sign * ca * cb;
    }
  }
  return Multivector::with_terms(lhs.dim(), std::move(acc));
}

Multivector outer_product(const Multivector& lhs, const Multivector& rhs) {
  check_same_dim(lhs, rhs);
  std::map<BladeMask, double> acc;
  for (const auto& [ma, ca] : lhs.terms()) {
    for (const auto& [mb, cb] : rhs.terms()) {
      if ((ma & mb) != 0) continue; // shared basis vector wedges to zero
      const auto [mask, sign] = blade_product(ma, mb);
      acc[mask] += sign * ca * cb;
    }
  }
  return Multivector::with_terms(lhs.dim(), std::move(acc));
}

double inner_product_vectors(const Multivector& a, const Multivector& b) {
  check_same_dim(a, b);
  if (!a.is_grade(1) || !b.is_grade(1))
    throw_invalid("inner product requires grade-1 multivectors");
  double sum = 0.0;
  for (const auto& [mask, c] : a.terms()) sum += c * b.coefficient(mask);
  return sum;
}

Multivector reverse(const Multivector& m) {
  std::map<BladeMask, double> acc;
  for (const auto& [mask, c] : m.terms()) {
    const int g = blade_grade(mask);
    acc[mask] = ((g * (g - 1) / 2) % 2) ? -c : c;
  }
  return Multivector::with_terms(m.dim(), std::move(acc));
}

Multivector grade_projection(const Multivector& m, int grade) {
  if (grade < 0 || grade > m.dim())
    throw_invalid("grade " + std::to_string(grade) + " out of range for dimension " +
                  std::to_string(m.dim()));
  std::map<BladeMask, double> acc;
  for (const auto& [mask, c] : m.terms())
    if (blade_grade(mask) == grade) acc[mask] = c;
  return Multivector::with_terms(m.dim(), std::move(acc));
}

double norm(const Multivector& m) {
  double sum = 0.0;
  for (const auto& [mask, c] : m.terms()) {
    (void)mask;
    sum += c * c;
  }
  return std::sqrt(sum);
}

Multivector normalized(const Multivector& m) {
  const double n = norm(m);
  if (n == 0.0) throw_numeric("cannot normalize a null multivector");
  return m * (1.0 / n);
}

Multivector inverse_vector(const Multivector& a) {
  if (!a.is_grade(1)) throw_invalid("inverse_vector requires a grade-1 multivector");
  const double n = norm(a);
  if (n == 0.0) throw_numeric("non-invertible null vector");
  return a * (1.0 / (n * n));
}

Multivector plane_rotor(int dim, int harmonic, double angle) {
  if (harmonic < 1 || 2 * harmonic > dim)
    throw_invalid("harmonic " + std::to_string(harmonic) + " out of range for dimension " +
                  std::to_string(dim));
  const BladeMask plane = (1ull << (2 * harmonic - 2)) | (1ull << (2 * harmonic - 1));
  Multivector r(dim);
  r.set(0, std::cos(angle));
  r.set(plane, std::sin(angle));
  return r;
}

Multivector sandwich_rotate(const Multivector& rotor_half, const Multivector& v) {
  check_same_dim(rotor_half, v);
  if (!v.is_grade(1)) throw_invalid("sandwich_rotate requires a grade-1 operand");
  if (!rotor_half.has_only_grades({0, 2}))
    throw_invalid("rotor must contain only grades 0 and 2");
  // R R~ = 1 is the defining property of a rotor; for a {0,2}-graded element
  // it holds exactly when the bivector part is simple and the norm is 1.
  Multivector residue = geometric_product(rotor_half, reverse(rotor_half));
  residue -= Multivector::scalar(rotor_half.dim(), 1.0);
  if (norm(residue) > 1e-9) throw_invalid("non-unit rotor passed to sandwich_rotate");
  const Multivector full =
      geometric_product(geometric_product(rotor_half, v), reverse(rotor_half));
  return grade_projection(full, 1);
}

double max_abs_difference(const Multivector& a, const Multivector& b) {
  check_same_dim(a, b);
  double worst = 0.0;
  for (const auto& [mask, c] : a.terms())
    worst = std::max(worst, std::fabs(c - b.coefficient(mask)));
  for (const auto& [mask, c] : b.terms())
    if (a.terms().find(mask) == a.terms().end()) worst = std::max(worst, std::fabs(c));
  return worst;
}

} // namespace rotoflex
