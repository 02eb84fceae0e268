#include <doctest.h>

#include <array>

#include "covering/algebraic.hpp"
#include "covering/diophantine.hpp"

using namespace covering;

namespace {

std::int64_t det3(const std::array<std::int64_t, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Oracle: det 1, negative discriminant (one real root), P(1) < 0 (that root exceeds 1).
bool oracle_admissible(const std::array<std::int64_t, 9>& m) {
  if (det3(m) != 1) return false;
  const std::int64_t tr = m[0] + m[4] + m[8];
  const std::int64_t minors = (m[0] * m[4] - m[1] * m[3]) + (m[0] * m[8] - m[2] * m[6]) + (m[4] * m[8] - m[5] * m[7]);
  const mpz_class b = -tr, c = minors, d = -1;
  const mpz_class disc = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
  const mpz_class p1 = 1 + b + c + d;
  return disc < 0 && p1 < 0;
}

}  // namespace

TEST_CASE("characteristic polynomial of the canonical matrix") {
  const CubicPolynomial p = char_poly(canonical_matrix());
  CHECK(p == CubicPolynomial{-1, 0, -1});
  CHECK(p.to_string() == "t^3 - t^2 - 1");
  CHECK(p.discriminant() == -31);
}

TEST_CASE("admissibility verdicts") {
  CHECK(is_admissible(canonical_matrix()));
  const auto id = UnimodularMatrix::from_row_major(std::array<std::int64_t, 9>{1, 0, 0, 0, 1, 0, 0, 0, 1});
  const AdmissibilityVerdict v = is_admissible(id);
  CHECK_FALSE(v);
  CHECK_FALSE(v.reason.empty());
  // det -1
  CHECK_THROWS(UnimodularMatrix::from_row_major(std::array<std::int64_t, 9>{0, 1, 0, 1, 0, 0, 0, 0, 1}));
  // companion of t^3 - 3t - 1, three real roots
  const auto real3 = UnimodularMatrix::from_row_major(std::array<std::int64_t, 9>{0, 0, 1, 1, 0, 3, 0, 1, 0});
  CHECK(char_poly(real3) == CubicPolynomial{0, -3, -1});
  CHECK_FALSE(is_admissible(real3));
  CHECK_THROWS(UnimodularMatrix::from_row_major(std::array<std::int64_t, 8>{}));
}

TEST_CASE("exhaustive search matches a direct discriminant oracle") {
  std::size_t expected = 0;
  std::array<std::int64_t, 9> m{};
  for (int code = 0; code < 19683; ++code) {  // 3^9
    int c = code;
    for (auto& x : m) {
      x = c % 3 - 1;
      c /= 3;
    }
    expected += oracle_admissible(m);
  }
  std::size_t found = 0;
  for_each_admissible(1, [&](const UnimodularMatrix& a) {
    ++found;
    CHECK(oracle_admissible(a.row_major()));
    return true;
  });
  CHECK(found == expected);
  CHECK(found > 0);
}

TEST_CASE("search with bound 2 contains the canonical matrix and every hit passes the checks") {
  const auto all = search_admissible(2);
  CHECK(all.size() > 1000);
  bool canonical = false;
  for (const auto& a : all) canonical = canonical || a == canonical_matrix();
  CHECK(canonical);
  for (size_t i = 0; i < all.size(); i += 97) {
    const CubicPolynomial p = char_poly(all[i]);
    CHECK(nonquadratic_check(p));
    CHECK(independence_over_Q(real_eigenvector(all[i], CubicField::create(p))));
  }
}

TEST_CASE("spectral data of the canonical matrix") {
  const SpectralData s = spectral_data(canonical_matrix());
  for (const auto& x : eigen_residual(s)) CHECK(x.is_zero());
  const auto one = s.field->element(1);
  CHECK(s.alpha * s.beta_modulus_squared == one);
  CHECK(compare(s.beta_modulus_squared, one) < 0);
  // a = (alpha, 1, alpha^2) for A0 under A a = alpha a
  CHECK(s.a[0] == s.alpha);
  CHECK(s.a[1] == one);
  CHECK(s.a[2] == s.alpha * s.alpha);
  // beta is a root of P: |P(beta)| is tiny
  const ComplexInterval b = s.beta;
  const ComplexInterval pb = b.pow(3) - b.pow(2) - ComplexInterval(Interval(1, s.precision_bits), Interval(0, s.precision_bits));
  CHECK(pb.abs().upper() < mpq_class("1/1000000000000"));
  CHECK(b.im.certainly_positive());
}

TEST_CASE("precision from width has enough bits") {
  CHECK(Precision::from_width(mpq_class(1, 1000)).bits >= 10);
  CHECK(Precision::from_width(mpq_class("1/1000000000000000000000000000000")).bits >= 100);
}

TEST_CASE("transpose has the same characteristic polynomial") {
  CHECK(char_poly(canonical_matrix().transposed()) == char_poly(canonical_matrix()));
  CHECK(is_admissible(canonical_matrix().transposed()));
}

TEST_CASE("bound 0 admits nothing") { CHECK(search_admissible(0).empty()); }

TEST_CASE("alpha times alpha^2 is alpha^2 + 1 and |beta|^2 = 1/alpha") {
  const SpectralData s = spectral_data(canonical_matrix());
  const auto one = s.field->element(1);
  CHECK(s.alpha * s.alpha.pow(2) == s.alpha.pow(2) + one);
  const RationalInterval m = s.beta_modulus_squared.enclosure(80);
  CHECK(m.lo > mpq_class(68232, 100000));
  CHECK(m.hi < mpq_class(68233, 100000));
  CHECK(s.beta.abs().square().overlaps(Interval(m, s.precision_bits)));
}
