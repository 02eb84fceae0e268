#include "covering/algebraic.hpp"

#include <sstream>
#include <stdexcept>

#include "covering/checked.hpp"
#include "covering/errors.hpp"

namespace covering {

std::int64_t determinant(const IntMat3& m) {
  const auto d0 = checked_sub(checked_mul(m[1][1], m[2][2]), checked_mul(m[1][2], m[2][1]));
  const auto d1 = checked_sub(checked_mul(m[1][0], m[2][2]), checked_mul(m[1][2], m[2][0]));
  const auto d2 = checked_sub(checked_mul(m[1][0], m[2][1]), checked_mul(m[1][1], m[2][0]));
  return checked_add(checked_sub(checked_mul(m[0][0], d0), checked_mul(m[0][1], d1)), checked_mul(m[0][2], d2));
}

IntMat3 transpose(const IntMat3& m) {
  IntMat3 t{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

IntMat3 multiply(const IntMat3& a, const IntMat3& b) {
  IntMat3 c{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (size_t k = 0; k < 3; ++k) s = checked_add(s, checked_mul(a[i][k], b[k][j]));
      c[i][j] = s;
    }
  return c;
}

IntVec3 apply(const IntMat3& m, const IntVec3& v) {
  IntVec3 out{};
  for (size_t i = 0; i < 3; ++i) {
    std::int64_t s = 0;
    for (size_t k = 0; k < 3; ++k) s = checked_add(s, checked_mul(m[i][k], v[k]));
    out[i] = s;
  }
  return out;
}

UnimodularMatrix::UnimodularMatrix(const IntMat3& entries) : m_(entries) {
  if (determinant(m_) != 1) throw std::invalid_argument("UnimodularMatrix: determinant is not +1");
}

UnimodularMatrix UnimodularMatrix::from_row_major(std::span<const std::int64_t> values) {
  if (values.size() != 9) throw std::invalid_argument("UnimodularMatrix: expected 9 integers");
  IntMat3 m{};
  for (size_t i = 0; i < 9; ++i) m[i / 3][i % 3] = values[i];
  return UnimodularMatrix(m);
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  const auto& m = m_;
  IntMat3 adj{};
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      // Cofactor of (j, i).
      const size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = checked_sub(checked_mul(m[r0][c0], m[r1][c1]), checked_mul(m[r0][c1], m[r1][c0]));
    }
  }
  return UnimodularMatrix(adj);
}

std::array<std::int64_t, 9> UnimodularMatrix::row_major() const {
  std::array<std::int64_t, 9> out{};
  for (size_t i = 0; i < 9; ++i) out[i] = m_[i / 3][i % 3];
  return out;
}

std::string UnimodularMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < 3; ++i) {
    os << (i ? ",[" : "[") << m_[i][0] << "," << m_[i][1] << "," << m_[i][2] << "]";
  }
  os << "]";
  return os.str();
}

UnimodularMatrix canonical_matrix() { return UnimodularMatrix(IntMat3{{{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}}); }

namespace {

CubicPolynomial char_poly_of(const IntMat3& m) {
  const std::int64_t trace = m[0][0] + m[1][1] + m[2][2];
  const std::int64_t minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                              m[1][1] * m[2][2] - m[1][2] * m[2][1];
  return {-trace, minors, -determinant(m)};
}

AdmissibilityVerdict verdict_for(const CubicPolynomial& p) {
  const std::int64_t at_one = 1 + p.c2 + p.c1 + p.c0;
  const std::int64_t at_minus_one = -1 + p.c2 - p.c1 + p.c0;
  if (at_one == 0) return {false, "reducible: 1 is a root of " + p.to_string()};
  if (at_minus_one == 0) return {false, "reducible: -1 is a root of " + p.to_string()};
  if (p.discriminant() >= 0) return {false, "no complex-conjugate pair: discriminant of " + p.to_string() + " >= 0"};
  if (at_one > 0) return {false, "real eigenvalue below 1 for " + p.to_string()};
  return {true, "irreducible " + p.to_string() + " with one real root > 1 and a complex pair"};
}

}  // namespace

CubicPolynomial char_poly(const UnimodularMatrix& a) { return char_poly_of(a.entries()); }

AdmissibilityVerdict is_admissible(const UnimodularMatrix& a) { return verdict_for(char_poly(a)); }

void for_each_admissible(int bound, const std::function<bool(const UnimodularMatrix&)>& visit) {
  if (bound < 1) return;
  std::array<std::int64_t, 9> e;
  e.fill(-bound);
  while (true) {
    IntMat3 m{};
    for (size_t i = 0; i < 9; ++i) m[i / 3][i % 3] = e[i];
    if (determinant(m) == 1 && verdict_for(char_poly_of(m)).admissible) {
      if (!visit(UnimodularMatrix(m))) return;
    }
    // Odometer over row-major entries, last entry fastest.
    int pos = 8;
    while (pos >= 0 && e[static_cast<size_t>(pos)] == bound) {
      e[static_cast<size_t>(pos)] = -bound;
      --pos;
    }
    if (pos < 0) return;
    ++e[static_cast<size_t>(pos)];
  }
}

std::vector<UnimodularMatrix> search_admissible(int bound) {
  std::vector<UnimodularMatrix> out;
  for_each_admissible(bound, [&](const UnimodularMatrix& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Precision Precision::from_width(const mpq_class& width) {
  if (width <= 0) throw std::invalid_argument("Precision: width must be positive");
  long bits = 0;
  mpq_class w = width;
  while (w < 1) {
    w *= 2;
    ++bits;
  }
  return {std::max(64L, bits + 32)};
}

std::array<CubicFieldElement, 3> real_eigenvector(const UnimodularMatrix& a, const FieldPtr& field) {
  if (auto v = is_admissible(a); !v) throw NotAdmissible("real_eigenvector: " + v.reason);
  const CubicFieldElement alpha = field->generator();
  std::array<std::array<CubicFieldElement, 3>, 3> rows;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CubicFieldElement e = field->element(mpq_class(static_cast<long>(a(i, j))));
      rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i == j) ? e - alpha : e;
    }
  }
  auto cross = [](const std::array<CubicFieldElement, 3>& u, const std::array<CubicFieldElement, 3>& v) {
    return std::array<CubicFieldElement, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                            u[0] * v[1] - u[1] * v[0]};
  };
  const std::pair<size_t, size_t> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : pairs) {
    auto v = cross(rows[i], rows[j]);
    if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) continue;
    int pivot = -1;
    for (int k = 0; k < 3 && pivot < 0; ++k)
      if (!v[static_cast<size_t>(k)].is_zero() && v[static_cast<size_t>(k)].is_rational()) pivot = k;
    for (int k = 0; k < 3 && pivot < 0; ++k)
      if (!v[static_cast<size_t>(k)].is_zero()) pivot = k;
    const CubicFieldElement scale = v[static_cast<size_t>(pivot)].inverse();
    for (auto& c : v) c = c * scale;
    return v;
  }
  throw std::logic_error("real_eigenvector: A - alpha I has rank < 2");
}

namespace {

void fill_intervals(SpectralData& s, long bits) {
  s.precision_bits = bits;
  const RationalInterval alpha_q = s.field->root_enclosure(bits);
  s.alpha_enclosure = {alpha_q.lo, alpha_q.hi, alpha_q.width()};

  // P(t) = (t - alpha)(t^2 + u t + v): u = c2 + alpha, v = |beta|^2.
  const CubicFieldElement u = s.field->element(mpq_class(static_cast<long>(s.polynomial.c2))) + s.alpha;
  const Interval u_i = u.to_interval(bits);
  const Interval v_i = s.beta_modulus_squared.to_interval(bits);
  const Interval disc = Interval(4, bits) * v_i - u_i.square();
  if (!disc.certainly_positive()) throw std::logic_error("spectral_data: complex pair not separated");
  const Interval two(2, bits);
  s.beta = ComplexInterval(-u_i / two, disc.sqrt() / two);
  for (size_t j = 0; j < 3; ++j) s.b[j] = s.a[j].evaluate_at(s.beta);

  const Interval product = s.field->root_interval(bits) * s.beta.norm();
  if (!product.contains(mpq_class(1))) throw std::logic_error("spectral_data: alpha |beta|^2 = 1 not confirmed");
}

}  // namespace

SpectralData SpectralData::at_precision(Precision p) const {
  SpectralData out = *this;
  fill_intervals(out, p.bits);
  return out;
}

SpectralData spectral_data(const UnimodularMatrix& a, Precision precision) {
  if (auto v = is_admissible(a); !v) throw NotAdmissible("spectral_data: " + v.reason);
  const CubicPolynomial p = char_poly(a);
  FieldPtr field = CubicField::create(p);
  const CubicFieldElement alpha = field->generator();
  const CubicFieldElement v = field->element(mpq_class(static_cast<long>(p.c1))) +
                              mpq_class(static_cast<long>(p.c2)) * alpha + alpha * alpha;
  if (!(alpha * v == field->element(1))) throw std::logic_error("spectral_data: alpha |beta|^2 != 1");
  if (compare(v, field->element(1)) >= 0) throw std::logic_error("spectral_data: |beta| >= 1");

  SpectralData s{a,
                 p,
                 field,
                 alpha,
                 {},
                 real_eigenvector(a, field),
                 v,
                 precision.bits,
                 ComplexInterval(precision.bits),
                 {ComplexInterval(precision.bits), ComplexInterval(precision.bits), ComplexInterval(precision.bits)}};
  fill_intervals(s, precision.bits);
  return s;
}

std::array<CubicFieldElement, 3> eigen_residual(const SpectralData& s) {
  std::array<CubicFieldElement, 3> out;
  for (int i = 0; i < 3; ++i) {
    CubicFieldElement acc = -(s.alpha * s.a[static_cast<size_t>(i)]);
    for (int j = 0; j < 3; ++j) {
      acc += mpq_class(static_cast<long>(s.matrix(i, j))) * s.a[static_cast<size_t>(j)];
    }
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

}  // namespace covering
