#include "covering/cubic_field.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "covering/errors.hpp"

namespace covering {

namespace {

// Generous: a nonzero element of Q(alpha) with moderate coefficients is
// separated from zero at a few hundred bits.
constexpr long kMaxSignBits = 1L << 15;

mpz_class pow2(long e) {
  mpz_class p = 1;
  p <<= static_cast<mp_bitcnt_t>(e);
  return p;
}

long bracket_exponent_for(const CubicPolynomial& p) {
  mpz_class bound = 1;
  for (std::int64_t c : {p.c2, p.c1, p.c0}) {
    mpz_class a = abs(mpz_class(static_cast<long>(c)));
    if (a + 1 > bound) bound = a + 1;
  }
  long e = 0;
  while (pow2(e) < bound) ++e;
  return e;
}

// Sign of P(num * 2^shift) for an integer shift of either sign.
int sign_at_dyadic(const CubicPolynomial& p, const mpz_class& num, long shift) {
  if (shift >= 0) {
    mpz_class x = num << static_cast<mp_bitcnt_t>(shift);
    return sgn(p.evaluate(x));
  }
  // Scale by 2^(3s): N^3 + c2 N^2 2^s + c1 N 2^2s + c0 2^3s with s = -shift.
  const long s = -shift;
  mpz_class v = num * num * num;
  v += mpz_class(static_cast<long>(p.c2)) * num * num * pow2(s);
  v += mpz_class(static_cast<long>(p.c1)) * num * pow2(2 * s);
  v += mpz_class(static_cast<long>(p.c0)) * pow2(3 * s);
  return sgn(v);
}

// Extend the bisection path (path[j] = k: root in [k 2^(e-j), (k+1) 2^(e-j)])
// to include `depth`.
void extend_path(const CubicPolynomial& p, long e, long depth, std::vector<mpz_class>& path) {
  if (path.empty()) path.emplace_back(0);
  while (static_cast<long>(path.size()) <= depth) {
    const long j = static_cast<long>(path.size()) - 1;
    const mpz_class& k = path.back();
    mpz_class mid = 2 * k + 1;  // at spacing 2^(e-j-1)
    if (sign_at_dyadic(p, mid, e - j - 1) >= 0) {
      path.emplace_back(2 * k);
    } else {
      path.emplace_back(2 * k + 1);
    }
  }
}

mpq_class dyadic(const mpz_class& k, long shift) {
  if (shift >= 0) return mpq_class(k << static_cast<mp_bitcnt_t>(shift));
  mpq_class q(k, pow2(-shift));
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

mpq_class CubicPolynomial::evaluate(const mpq_class& t) const {
  return ((t + c2) * t + c1) * t + c0;
}

mpz_class CubicPolynomial::evaluate(const mpz_class& t) const {
  return ((t + c2) * t + c1) * t + c0;
}

mpz_class CubicPolynomial::discriminant() const {
  const mpz_class b(static_cast<long>(c2)), c(static_cast<long>(c1)), d(static_cast<long>(c0));
  return 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
}

std::string CubicPolynomial::to_string(const std::string& var) const {
  std::ostringstream os;
  os << var << "^3";
  auto term = [&](std::int64_t c, const std::string& mono) {
    if (c == 0) return;
    os << (c < 0 ? " - " : " + ");
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || mono.empty()) os << a;
    os << mono;
  };
  term(c2, var + "^2");
  term(c1, var);
  term(c0, "");
  return os.str();
}

std::string unique_root_above_one_failure(const CubicPolynomial& p) {
  const mpz_class disc = p.discriminant();
  if (disc > 0) return "three distinct real roots (discriminant > 0)";
  if (disc == 0) return "repeated root (discriminant = 0)";
  if (p.evaluate(mpq_class(1)) >= 0) return "the real root does not exceed 1";
  return {};
}

RealRootEnclosure real_root(const CubicPolynomial& p, const mpq_class& width) {
  if (width <= 0) throw std::invalid_argument("real_root: width must be positive");
  if (auto why = unique_root_above_one_failure(p); !why.empty()) {
    throw NotAdmissible("real_root: " + p.to_string() + ": " + why);
  }
  const long e = bracket_exponent_for(p);
  long depth = 0;
  while (dyadic(1, e - depth) > width) ++depth;
  std::vector<mpz_class> path;
  extend_path(p, e, depth, path);
  const mpz_class& k = path[static_cast<size_t>(depth)];
  return {dyadic(k, e - depth), dyadic(k + 1, e - depth), width};
}

// ---------------------------------------------------------------------------

CubicField::CubicField(const CubicPolynomial& p) : poly_(p), exponent_(bracket_exponent_for(p)) {}

std::shared_ptr<const CubicField> CubicField::create(const CubicPolynomial& p) {
  if (auto why = unique_root_above_one_failure(p); !why.empty()) {
    throw NotAdmissible("CubicField: " + p.to_string() + ": " + why);
  }
  if (p.c0 == 0) throw NotAdmissible("CubicField: " + p.to_string() + " is divisible by t");
  // Rational roots of a monic integer cubic are integer divisors of c0.
  const std::int64_t c0 = std::llabs(p.c0);
  for (std::int64_t d = 1; d * d <= c0; ++d) {
    if (c0 % d != 0) continue;
    for (std::int64_t cand : {d, -d, c0 / d, -(c0 / d)}) {
      if (p.evaluate(mpz_class(static_cast<long>(cand))) == 0) {
        throw NotAdmissible("CubicField: " + p.to_string() + " has rational root " + std::to_string(cand));
      }
    }
  }
  return std::shared_ptr<const CubicField>(new CubicField(p));
}

RationalInterval CubicField::root_enclosure(long bits) const {
  if (bits < 0) bits = 0;
  const long depth = exponent_ + bits;
  mpz_class k;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    extend_path(poly_, exponent_, depth, path_);
    k = path_[static_cast<size_t>(depth)];
  }
  return {dyadic(k, -bits), dyadic(k + 1, -bits)};
}

Interval CubicField::root_interval(long precision_bits) const {
  return Interval(root_enclosure(precision_bits + 8), precision_bits);
}

CubicFieldElement CubicField::generator() const { return element(0, 1, 0); }

CubicFieldElement CubicField::element(const mpq_class& q) const { return element(q, 0, 0); }

CubicFieldElement CubicField::element(const mpq_class& c0, const mpq_class& c1, const mpq_class& c2) const {
  return CubicFieldElement(shared_from_this(), c0, c1, c2);
}

// ---------------------------------------------------------------------------

CubicFieldElement::CubicFieldElement(FieldPtr field, mpq_class c0, mpq_class c1, mpq_class c2)
    : field_(std::move(field)), c_{std::move(c0), std::move(c1), std::move(c2)} {
  for (auto& c : c_) c.canonicalize();
}

void CubicFieldElement::require_same_field(const CubicFieldElement& other) const {
  if (!field_ || !other.field_) throw std::logic_error("CubicFieldElement: element without a field");
  if (field_ != other.field_ && !(field_->polynomial() == other.field_->polynomial())) {
    throw std::logic_error("CubicFieldElement: elements of different fields");
  }
}

CubicFieldElement CubicFieldElement::operator-() const {
  return CubicFieldElement(field_, -c_[0], -c_[1], -c_[2]);
}

CubicFieldElement operator+(const CubicFieldElement& x, const CubicFieldElement& y) {
  x.require_same_field(y);
  return CubicFieldElement(x.field_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]);
}

CubicFieldElement operator-(const CubicFieldElement& x, const CubicFieldElement& y) {
  x.require_same_field(y);
  return CubicFieldElement(x.field_, x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]);
}

CubicFieldElement operator*(const CubicFieldElement& x, const CubicFieldElement& y) {
  x.require_same_field(y);
  const auto& a = x.c_;
  const auto& b = y.c_;
  const mpq_class d0 = a[0] * b[0];
  const mpq_class d1 = a[0] * b[1] + a[1] * b[0];
  const mpq_class d2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
  const mpq_class d3 = a[1] * b[2] + a[2] * b[1];
  const mpq_class d4 = a[2] * b[2];
  const auto& p = x.field_->polynomial();
  const mpq_class c2(static_cast<long>(p.c2)), c1(static_cast<long>(p.c1)), c0(static_cast<long>(p.c0));
  // t^3 = -c2 t^2 - c1 t - c0;  t^4 = (c2^2 - c1) t^2 + (c2 c1 - c0) t + c2 c0.
  return CubicFieldElement(x.field_, d0 - d3 * c0 + d4 * c2 * c0, d1 - d3 * c1 + d4 * (c2 * c1 - c0),
                           d2 - d3 * c2 + d4 * (c2 * c2 - c1));
}

CubicFieldElement operator*(const mpq_class& s, const CubicFieldElement& x) {
  return CubicFieldElement(x.field_, s * x.c_[0], s * x.c_[1], s * x.c_[2]);
}

CubicFieldElement operator/(const CubicFieldElement& x, const CubicFieldElement& y) { return x * y.inverse(); }

bool operator==(const CubicFieldElement& x, const CubicFieldElement& y) {
  x.require_same_field(y);
  return x.c_ == y.c_;
}

CubicFieldElement CubicFieldElement::inverse() const {
  if (!field_) throw std::logic_error("CubicFieldElement: element without a field");
  if (is_zero()) throw std::domain_error("CubicFieldElement: inverse of zero");
  // Columns of the multiplication-by-x matrix are x, x*alpha, x*alpha^2.
  const CubicFieldElement alpha = field_->generator();
  const CubicFieldElement cols[3] = {*this, *this * alpha, *this * alpha * alpha};
  mpq_class m[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = cols[j].coeff(i);
    m[i][3] = (i == 0) ? 1 : 0;
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    while (piv < 3 && m[piv][col] == 0) ++piv;
    if (piv == 3) throw std::domain_error("CubicFieldElement: singular multiplication matrix");
    if (piv != col) {
      for (int j = 0; j < 4; ++j) std::swap(m[piv][j], m[col][j]);
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const mpq_class f = m[r][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return CubicFieldElement(field_, m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]);
}

CubicFieldElement CubicFieldElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CubicFieldElement result = field_->element(1);
  CubicFieldElement base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

RationalInterval CubicFieldElement::enclosure(long bits) const {
  if (!field_) throw std::logic_error("CubicFieldElement: element without a field");
  if (is_rational()) return RationalInterval(c_[0]);
  const RationalInterval alpha = field_->root_enclosure(bits);
  // alpha > 0, so alpha^2 is monotone on the enclosure.
  const RationalInterval alpha2(alpha.lo * alpha.lo, alpha.hi * alpha.hi);
  return RationalInterval(c_[0]) + c_[1] * alpha + c_[2] * alpha2;
}

Interval CubicFieldElement::to_interval(long precision_bits) const {
  return Interval(enclosure(precision_bits + 16), precision_bits);
}

RationalInterval CubicFieldElement::enclosure_within(const mpq_class& width) const {
  for (long bits = 64; bits <= kMaxSignBits; bits *= 2) {
    RationalInterval e = enclosure(bits);
    if (e.width() < width) return e;
  }
  throw PrecisionExhausted("CubicFieldElement: enclosure width target not reached");
}

int CubicFieldElement::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(c_[0]);
  for (long bits = 64; bits <= kMaxSignBits; bits *= 2) {
    const RationalInterval e = enclosure(bits);
    if (e.certainly_positive()) return 1;
    if (e.certainly_negative()) return -1;
  }
  throw PrecisionExhausted("CubicFieldElement: sign undecided at the precision cap");
}

ComplexInterval CubicFieldElement::evaluate_at(const ComplexInterval& x) const {
  const long prec = x.precision();
  auto coeff = [&](int i) { return ComplexInterval(Interval(c_[static_cast<size_t>(i)], prec), Interval(0, prec)); };
  return coeff(0) + x * (coeff(1) + x * coeff(2));
}

std::string CubicFieldElement::to_string() const {
  std::ostringstream os;
  os << rational_string(c_[0]) << " + (" << rational_string(c_[1]) << ")*alpha + ("
     << rational_string(c_[2]) << ")*alpha^2";
  return os.str();
}

std::string CubicFieldElement::decimal(int digits) const {
  mpq_class tol(1, 1);
  for (int i = 0; i < digits + 2; ++i) tol /= 10;
  return decimal_nearest(enclosure_within(tol).midpoint(), digits);
}

int compare(const CubicFieldElement& x, const CubicFieldElement& y) { return (x - y).sign(); }

int compare_abs(const CubicFieldElement& x, const CubicFieldElement& y) { return (x * x - y * y).sign(); }

}  // namespace covering
