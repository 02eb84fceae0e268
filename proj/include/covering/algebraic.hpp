#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "covering/cubic_field.hpp"
#include "covering/interval.hpp"

namespace covering {

using IntVec3 = std::array<std::int64_t, 3>;
using IntMat3 = std::array<IntVec3, 3>;

std::int64_t determinant(const IntMat3& m);
IntMat3 transpose(const IntMat3& m);
IntMat3 multiply(const IntMat3& a, const IntMat3& b);
/// Overflow-checked matrix-vector product; throws std::overflow_error.
IntVec3 apply(const IntMat3& m, const IntVec3& v);

/// Integer 3x3 matrix with determinant +1.
class UnimodularMatrix {
 public:
  /// Throws std::invalid_argument unless det == 1.
  explicit UnimodularMatrix(const IntMat3& entries);
  /// Nine integers, row-major.
  static UnimodularMatrix from_row_major(std::span<const std::int64_t> values);

  const IntMat3& entries() const { return m_; }
  std::int64_t operator()(int i, int j) const { return m_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  UnimodularMatrix transposed() const { return UnimodularMatrix(transpose(m_)); }
  /// Adjugate, exact since det == 1.
  UnimodularMatrix inverse() const;
  std::array<std::int64_t, 9> row_major() const;
  std::string to_string() const;

  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

 private:
  IntMat3 m_;
};

/// [[0,0,1],[1,0,0],[0,1,1]], characteristic polynomial t^3 - t^2 - 1.
UnimodularMatrix canonical_matrix();

/// det(tI - A); the constant term is -det A = -1.
CubicPolynomial char_poly(const UnimodularMatrix& a);

struct AdmissibilityVerdict {
  bool admissible = false;
  std::string reason;
  explicit operator bool() const { return admissible; }
};

/// Irreducible characteristic polynomial with one real root alpha > 1 and a
/// complex-conjugate pair. With constant term -1 the only possible rational
/// roots are +-1, so irreducibility is P(1) != 0 and P(-1) != 0.
AdmissibilityVerdict is_admissible(const UnimodularMatrix& a);

/// Visits admissible matrices with max-norm <= bound in lexicographic order of
/// the row-major entries; `visit` returns false to stop early.
void for_each_admissible(int bound, const std::function<bool(const UnimodularMatrix&)>& visit);
std::vector<UnimodularMatrix> search_admissible(int bound);

/// Working precision for everything computed with intervals.
struct Precision {
  long bits = kDefaultPrecisionBits;
  /// Enough bits that an interval of width `width` is resolvable, plus guard bits.
  static Precision from_width(const mpq_class& width);
};

/// Kernel vector of A - alpha I over Q(alpha), column convention A a = alpha a.
/// Built as the cross product of the first independent pair of rows, then
/// scaled so its first rational coordinate is 1 (first nonzero coordinate if
/// none is rational). Throws NotAdmissible for inadmissible matrices.
std::array<CubicFieldElement, 3> real_eigenvector(const UnimodularMatrix& a, const FieldPtr& field);

struct SpectralData {
  UnimodularMatrix matrix;
  CubicPolynomial polynomial;
  FieldPtr field;
  CubicFieldElement alpha;
  RealRootEnclosure alpha_enclosure;
  std::array<CubicFieldElement, 3> a;
  /// |beta|^2 = 1/alpha, exact.
  CubicFieldElement beta_modulus_squared;
  long precision_bits;
  /// Conjugate eigenvalue with positive imaginary part.
  ComplexInterval beta;
  /// b_j is the Galois image of a_j under alpha -> beta.
  std::array<ComplexInterval, 3> b;

  /// Same exact data with the interval parts recomputed at `p`.
  SpectralData at_precision(Precision p) const;
};

/// Throws NotAdmissible for inadmissible matrices.
SpectralData spectral_data(const UnimodularMatrix& a, Precision precision = {});

/// Exact residual A a - alpha a (all zero for valid data).
std::array<CubicFieldElement, 3> eigen_residual(const SpectralData& s);

}  // namespace covering
