#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <set>

#include "covering/diophantine.hpp"
#include "covering/errors.hpp"
#include "covering/group.hpp"
#include "covering/lattice.hpp"
#include "gen.hpp"

using namespace covering;

namespace {

const SpectralData& canonical() {
  static const SpectralData s = spectral_data(canonical_matrix());
  return s;
}

// long double value of r.a with a = (alpha, 1, alpha^2)
long double approx(const IntVec3& r) {
  const long double alpha = 1.46557123187676802665673L;
  return r[0] * alpha + r[1] + r[2] * alpha * alpha;
}

}  // namespace

TEST_CASE("independence over Q") {
  CHECK(independence_over_Q(canonical().a));
  const FieldPtr f = canonical().field;
  CHECK_FALSE(independence_over_Q({f->element(1), f->element(2), f->generator()}));
  CHECK_FALSE(independence_over_Q({f->generator(), f->generator() * f->element(3), f->element(1)}));
  CHECK(independence_over_Q({f->element(1), f->generator(), f->generator() + f->generator().pow(2)}));
}

TEST_CASE("nonquadratic check rejects reducible cubics") {
  CHECK(nonquadratic_check(CubicPolynomial{-1, 0, -1}));
  CHECK_FALSE(nonquadratic_check(CubicPolynomial{-3, 3, -1}));  // (t-1)^3
  CHECK_FALSE(nonquadratic_check(CubicPolynomial{0, -1, 0}));   // t(t^2-1)
  CHECK_FALSE(nonquadratic_check(CubicPolynomial{-2, -1, 2}));  // (t-1)(t+1)(t-2)
  CHECK(nonquadratic_check(CubicPolynomial{0, 0, -2}));         // t^3 - 2
}

TEST_CASE("certify_below") {
  const FieldPtr f = canonical().field;
  CHECK(certify_below(f->element(mpq_class(1, 1000)), mpq_class(1, 100)).has_value());
  CHECK_FALSE(certify_below(f->element(mpq_class(1, 10)), mpq_class(1, 100)).has_value());
  CHECK_FALSE(certify_below(f->element(mpq_class(1, 100)), mpq_class(1, 100)).has_value());
}

TEST_CASE("minimizer beats an exhaustive long double scan") {
  // Oracle: the smallest |r.a| over the box of radius 40.
  long double best = 1e9L;
  for (std::int64_t x = -40; x <= 40; ++x)
    for (std::int64_t y = -40; y <= 40; ++y)
      for (std::int64_t z = -40; z <= 40; ++z)
        if (x || y || z) best = std::min(best, std::fabs(approx({x, y, z})));
  const mpq_class eps(1, 1000);
  const MinimizationResult m = minimize_linear_form(Sublattice::full(), {}, canonical().a, eps);
  CHECK(m.r != IntVec3{0, 0, 0});
  CHECK(certify_below(linear_form(m.r, canonical().a), eps).has_value());
  CHECK(std::fabs(approx(m.r)) < 1e-3L);
  CHECK(best < 1e-3L);  // the oracle agrees that such vectors exist
  CHECK(m.enclosure.lo > -eps);
  CHECK(m.enclosure.hi < eps);
}

TEST_CASE("exhaustive and reduction strategies both certify") {
  const mpq_class eps(1, 500);
  for (Strategy s : {Strategy::ExhaustiveOnly, Strategy::ReductionOnly, Strategy::Auto}) {
    const MinimizationResult m = minimize_linear_form(Sublattice::full(), {}, canonical().a, eps, s);
    CHECK(linear_form(m.r, canonical().a) == m.value);
    CHECK(certify_below(m.value, eps).has_value());
  }
  CHECK(exhaustive_bound(mpq_class(1, 100)) == 50);
  CHECK(exhaustive_bound(mpq_class(1, 1000000)) == 1000);
}

TEST_CASE("excluded vectors are avoided") {
  const mpq_class eps(1, 100);
  const MinimizationResult first = minimize_linear_form(Sublattice::full(), {}, canonical().a, eps);
  ExclusionSet ex{first.r, {-first.r[0], -first.r[1], -first.r[2]}};
  const MinimizationResult second = minimize_linear_form(Sublattice::full(), ex, canonical().a, eps);
  CHECK_FALSE(ex.count(second.r));
  CHECK(certify_below(second.value, eps).has_value());
}

TEST_CASE("sublattices of rank two still accumulate, rank one does not") {
  const Sublattice plane({{1, 0, 0}, {0, 1, 0}});
  const MinimizationResult m = minimize_linear_form(plane, {}, canonical().a, mpq_class(1, 10000));
  CHECK(m.r[2] == 0);
  CHECK(plane.contains(m.r));
  const Sublattice skew({{2, 1, 0}, {0, 1, 3}});
  const MinimizationResult k = minimize_linear_form(skew, {}, canonical().a, mpq_class(1, 10000));
  CHECK(skew.contains(k.r));
  CHECK_THROWS_AS(minimize_linear_form(Sublattice({{1, 2, 3}}), {}, canonical().a, mpq_class(1, 10)), NoAccumulation);
  CHECK_THROWS(Sublattice({{1, 0, 0}, {2, 0, 0}}));
  CHECK_THROWS(Sublattice(std::vector<IntVec3>{}));
}

TEST_CASE("shrinking sequence at 1e-3, 1e-6, 1e-9") {
  const auto seq = shrinking_sequence(Sublattice::full(), {}, canonical().a, mpq_class(1, 1000), 3, mpq_class(1000));
  REQUIRE(seq.size() == 3);
  mpq_class bound(1, 1000);
  for (size_t i = 0; i < seq.size(); ++i, bound /= 1000) {
    CHECK(certify_below(linear_form(seq[i].r, canonical().a), bound).has_value());
    if (i) CHECK(compare_abs(seq[i].value, seq[i - 1].value) < 0);
  }
  CHECK(seq[0].r != seq[1].r);
  CHECK(seq[1].r != seq[2].r);
  CHECK_THROWS(shrinking_sequence(Sublattice::full(), {}, canonical().a, mpq_class(1, 10), 2, mpq_class(1)));
}

TEST_CASE("LLL output is reduced and spans the same lattice") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    lattice::ZMatrix b(3, lattice::ZVector(3));
    do {
      for (auto& row : b)
        for (auto& x : row) x = static_cast<long>(gen::integer(rng, -30, 30));
    } while (lattice::rank(b) < 3);
    const lattice::ZMatrix r = lattice::lll_reduce(b);
    CHECK(lattice::is_lll_reduced(r));
    // same lattice: r = U b with U integral and unimodular
    auto det = [](const lattice::ZMatrix& m) -> mpz_class {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    CHECK(abs(det(r)) == abs(det(b)));
  }
}

TEST_CASE("integer kernel") {
  const lattice::ZMatrix m{{1, 2, 3}, {2, 4, 6}};
  const lattice::KernelSplit k = lattice::integer_kernel(m, 3);
  CHECK(k.kernel.size() == 2);
  for (const auto& v : k.kernel)
    for (const auto& row : m) CHECK(row[0] * v[0] + row[1] * v[1] + row[2] * v[2] == 0);
  CHECK(k.kernel.size() + k.complement.size() == 3);
}

TEST_CASE("rationally dependent vectors are detected") {
  const FieldPtr& f = canonical().field;
  CHECK_FALSE(independence_over_Q({f->element(1), f->element(2), f->element(3)}));
  CHECK_FALSE(independence_over_Q({canonical().alpha, canonical().alpha * f->element(2), f->element(1)}));
}

TEST_CASE("empty shrinking sequence") {
  CHECK(shrinking_sequence(Sublattice::full(), {}, canonical().a, mpq_class(1, 1000), 0).empty());
}

TEST_CASE("growing exclusion sets up to eight vectors") {
  ExclusionSet excluded{{0, 0, 0}};
  std::set<IntVec3> seen;
  const mpq_class eps(1, 10000);
  for (int i = 0; i < 8; ++i) {
    const MinimizationResult m = minimize_linear_form(Sublattice::full(), excluded, canonical().a, eps);
    CHECK(excluded.count(m.r) == 0);
    CHECK(certify_below(linear_form(m.r, canonical().a), eps).has_value());
    CHECK(seen.insert(m.r).second);
    excluded.insert(m.r);
  }
}

TEST_CASE("the 1e-6 certificate is small and minima do not grow") {
  const auto seq = shrinking_sequence(Sublattice::full(), {}, canonical().a, mpq_class(1, 1000), 4);
  REQUIRE(seq.size() == 4);
  for (size_t i = 1; i < seq.size(); ++i) CHECK(compare_abs(seq[i].value, seq[i - 1].value) <= 0);
  for (std::int64_t c : seq[3].r) CHECK(std::llabs(c) <= 10000);  // epsilon 1e-6
}
