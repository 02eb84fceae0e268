#pragma once

// Exact arithmetic in Q(alpha) = Q[t]/(P) for a monic integer cubic P with a
// unique real root alpha > 1, plus certified enclosures of that root.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "covering/interval.hpp"

namespace covering {

/// Monic cubic t^3 + c2 t^2 + c1 t + c0.
struct CubicPolynomial {
  std::int64_t c2 = 0;
  std::int64_t c1 = 0;
  std::int64_t c0 = 0;

  mpq_class evaluate(const mpq_class& t) const;
  mpz_class evaluate(const mpz_class& t) const;
  mpz_class discriminant() const;
  std::string to_string(const std::string& var = "t") const;

  friend bool operator==(const CubicPolynomial&, const CubicPolynomial&) = default;
};

/// Certified enclosure [lo, hi] of the unique real root of a polynomial.
struct RealRootEnclosure {
  mpq_class lo;
  mpq_class hi;
  mpq_class target_width;

  mpq_class width() const { return hi - lo; }
  bool contains(const RealRootEnclosure& inner) const { return lo <= inner.lo && inner.hi <= hi; }
};

/// Empty string iff P has exactly one real root and that root exceeds 1.
std::string unique_root_above_one_failure(const CubicPolynomial& p);

/// Bisection on the dyadic grid of [0, 2^e]; successive calls with narrower
/// widths return nested intervals. Throws NotAdmissible when P does not have
/// a unique real root > 1, std::invalid_argument when width <= 0.
RealRootEnclosure real_root(const CubicPolynomial& p, const mpq_class& width);

class CubicFieldElement;

/// The field Q(alpha). Shared by every element built over it; the root
/// enclosure cache is guarded so the field may be used from several threads.
class CubicField : public std::enable_shared_from_this<CubicField> {
 public:
  /// Requires P irreducible over Q with a unique real root > 1.
  static std::shared_ptr<const CubicField> create(const CubicPolynomial& p);

  const CubicPolynomial& polynomial() const { return poly_; }

  /// Dyadic enclosure of alpha of width <= 2^-bits.
  RationalInterval root_enclosure(long bits) const;
  Interval root_interval(long precision_bits) const;

  CubicFieldElement generator() const;
  CubicFieldElement element(const mpq_class& q) const;
  CubicFieldElement element(const mpq_class& c0, const mpq_class& c1, const mpq_class& c2) const;

  /// Exponent e of the initial bracket [0, 2^e].
  long bracket_exponent() const { return exponent_; }

 private:
  explicit CubicField(const CubicPolynomial& p);

  CubicPolynomial poly_;
  long exponent_;
  mutable std::mutex mutex_;
  // path_[j] = k means alpha lies in [k 2^(e-j), (k+1) 2^(e-j)].
  mutable std::vector<mpz_class> path_;
};

using FieldPtr = std::shared_ptr<const CubicField>;

/// c0 + c1 alpha + c2 alpha^2, fully reduced.
class CubicFieldElement {
 public:
  CubicFieldElement() = default;
  CubicFieldElement(FieldPtr field, mpq_class c0, mpq_class c1, mpq_class c2);

  const FieldPtr& field() const { return field_; }
  const mpq_class& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
  const std::array<mpq_class, 3>& coefficients() const { return c_; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

  CubicFieldElement operator-() const;
  friend CubicFieldElement operator+(const CubicFieldElement& x, const CubicFieldElement& y);
  friend CubicFieldElement operator-(const CubicFieldElement& x, const CubicFieldElement& y);
  friend CubicFieldElement operator*(const CubicFieldElement& x, const CubicFieldElement& y);
  friend CubicFieldElement operator*(const mpq_class& s, const CubicFieldElement& x);
  friend CubicFieldElement operator/(const CubicFieldElement& x, const CubicFieldElement& y);
  CubicFieldElement& operator+=(const CubicFieldElement& y) { return *this = *this + y; }
  CubicFieldElement& operator*=(const CubicFieldElement& y) { return *this = *this * y; }

  /// Throws std::domain_error for zero.
  CubicFieldElement inverse() const;
  CubicFieldElement pow(long k) const;

  friend bool operator==(const CubicFieldElement& x, const CubicFieldElement& y);

  /// Enclosure of the real value from an alpha enclosure of width 2^-bits.
  RationalInterval enclosure(long bits) const;
  Interval to_interval(long precision_bits) const;
  /// Enclosure narrower than `width`.
  RationalInterval enclosure_within(const mpq_class& width) const;
  /// -1, 0, +1; refines the root enclosure until the sign is certain.
  int sign() const;
  /// Value of c0 + c1 x + c2 x^2 at a complex point (the Galois image when x
  /// is a conjugate root).
  ComplexInterval evaluate_at(const ComplexInterval& x) const;

  std::string to_string() const;
  std::string decimal(int digits = 30) const;

 private:
  void require_same_field(const CubicFieldElement& other) const;

  FieldPtr field_;
  std::array<mpq_class, 3> c_{};
};

/// Exact comparison by sign of the difference: -1, 0, +1.
int compare(const CubicFieldElement& x, const CubicFieldElement& y);
/// Exact comparison of absolute values.
int compare_abs(const CubicFieldElement& x, const CubicFieldElement& y);

}  // namespace covering
