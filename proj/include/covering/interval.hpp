#pragma once

// Certified enclosures: exact rational intervals for the z-axis data and
// MPFR-backed outward-rounded intervals for everything involving beta.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace covering {

constexpr long kDefaultPrecisionBits = 128;

/// Closed interval with exact rational endpoints, lo <= hi.
struct RationalInterval {
  mpq_class lo;
  mpq_class hi;

  RationalInterval() = default;
  explicit RationalInterval(const mpq_class& point) : lo(point), hi(point) {}
  RationalInterval(mpq_class l, mpq_class h);

  mpq_class width() const { return hi - lo; }
  mpq_class midpoint() const { return (lo + hi) / 2; }
  bool contains(const mpq_class& q) const { return lo <= q && q <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool certainly_positive() const { return lo > 0; }
  bool certainly_negative() const { return hi < 0; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  /// Upper bound for |x| over the interval.
  mpq_class magnitude() const;
  /// Lower bound for |x| over the interval (0 if it straddles zero).
  mpq_class mignitude() const;
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const mpq_class& s, const RationalInterval& a);

/// Decimal rendering of a rational rounded toward -inf / +inf at `digits`
/// fractional digits.
std::string decimal_floor(const mpq_class& q, int digits);
std::string decimal_ceil(const mpq_class& q, int digits);
/// Round-to-nearest decimal rendering, for display only.
std::string decimal_nearest(const mpq_class& q, int digits);

/// Real interval with MPFR endpoints rounded outward on every operation.
class Interval {
 public:
  explicit Interval(long precision_bits = kDefaultPrecisionBits);
  Interval(long value, long precision_bits);
  Interval(const mpq_class& value, long precision_bits);
  Interval(const mpq_class& lo, const mpq_class& hi, long precision_bits);
  explicit Interval(const RationalInterval& r, long precision_bits)
      : Interval(r.lo, r.hi, precision_bits) {}

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  long precision() const { return static_cast<long>(mpfr_get_prec(lo_)); }

  mpq_class lower() const;
  mpq_class upper() const;
  mpq_class width() const { return upper() - lower(); }
  double midpoint() const;

  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const mpq_class& q) const;
  bool overlaps(const Interval& other) const;
  /// Every point of *this is strictly below every point of `other`.
  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval square() const;
  Interval sqrt() const;
  Interval abs() const;

  std::string lower_string(int digits = 40) const;
  std::string upper_string(int digits = 40) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Rectangle in the complex plane.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(long precision_bits = kDefaultPrecisionBits)
      : re(precision_bits), im(precision_bits) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  long precision() const { return re.precision(); }
  Interval abs() const;
  Interval norm() const;  // |z|^2
  ComplexInterval conj() const { return {re, -im}; }
  bool overlaps(const ComplexInterval& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  /// Max of the real and imaginary widths.
  mpq_class width() const;
  ComplexInterval pow(long k) const;
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const Interval& s, const ComplexInterval& a);
ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);

}  // namespace covering
