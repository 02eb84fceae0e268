#include "covering/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace covering {

RationalInterval::RationalInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw std::invalid_argument("RationalInterval: lo > hi");
}

mpq_class RationalInterval::magnitude() const {
  mpq_class a = abs(lo);
  mpq_class b = abs(hi);
  return a > b ? a : b;
}

mpq_class RationalInterval::mignitude() const {
  if (contains_zero()) return 0;
  return lo > 0 ? lo : mpq_class(-hi);
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator-(const RationalInterval& a) { return {-a.hi, -a.lo}; }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return {*mn, *mx};
}

RationalInterval operator*(const mpq_class& s, const RationalInterval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

namespace {

mpz_class pow10(int digits) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return p;
}

std::string render_scaled(const mpz_class& scaled, int digits) {
  mpz_class mag = abs(scaled);
  std::string s = mag.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  return scaled < 0 ? "-" + s : s;
}

}  // namespace

std::string decimal_floor(const mpq_class& q, int digits) {
  mpz_class num = q.get_num() * pow10(digits);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return render_scaled(out, digits);
}

std::string decimal_ceil(const mpq_class& q, int digits) {
  mpz_class num = q.get_num() * pow10(digits);
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return render_scaled(out, digits);
}

std::string decimal_nearest(const mpq_class& q, int digits) {
  mpq_class shifted = q * mpq_class(pow10(digits)) + mpq_class(1, 2);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return render_scaled(out, digits);
}

// ---------------------------------------------------------------------------

Interval::Interval(long precision_bits) {
  mpfr_init2(lo_, precision_bits);
  mpfr_init2(hi_, precision_bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, long precision_bits) {
  mpfr_init2(lo_, precision_bits);
  mpfr_init2(hi_, precision_bits);
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const mpq_class& value, long precision_bits) {
  mpfr_init2(lo_, precision_bits);
  mpfr_init2(hi_, precision_bits);
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& lo, const mpq_class& hi, long precision_bits) {
  if (hi < lo) throw std::invalid_argument("Interval: lo > hi");
  mpfr_init2(lo_, precision_bits);
  mpfr_init2(hi_, precision_bits);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  // Leave `other` as a valid minimal-precision interval.
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

mpq_class Interval::lower() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class Interval::upper() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::midpoint() const {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

namespace {
long joint_precision(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint_precision(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint_precision(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const long prec = joint_precision(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("Interval division by an interval containing zero");
  const long prec = joint_precision(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::square() const {
  Interval r(precision());
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, precision());
    mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
    mpfr_sqr(t, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
  }
  return r;
}

Interval Interval::sqrt() const {
  if (certainly_negative()) throw std::domain_error("Interval sqrt of a negative interval");
  Interval r(precision());
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r(precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

std::string Interval::lower_string(int digits) const { return decimal_floor(lower(), digits); }
std::string Interval::upper_string(int digits) const { return decimal_ceil(upper(), digits); }

// ---------------------------------------------------------------------------

Interval ComplexInterval::norm() const { return re.square() + im.square(); }

Interval ComplexInterval::abs() const { return norm().sqrt(); }

mpq_class ComplexInterval::width() const {
  mpq_class a = re.width();
  mpq_class b = im.width();
  return a > b ? a : b;
}

ComplexInterval ComplexInterval::pow(long k) const {
  if (k < 0) {
    ComplexInterval one(Interval(1, precision()), Interval(0, precision()));
    return one / pow(-k);
  }
  ComplexInterval result(Interval(1, precision()), Interval(0, precision()));
  ComplexInterval base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const Interval& s, const ComplexInterval& a) { return {s * a.re, s * a.im}; }

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = b.norm();
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

}  // namespace covering
