#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <set>

#include "covering/analysis.hpp"
#include "covering/errors.hpp"
#include "covering/group.hpp"

using namespace covering;

namespace {

const SpectralData& canonical() {
  static const SpectralData s = spectral_data(canonical_matrix());
  return s;
}

constexpr long double kAlpha = 1.46557123187676802665673L;

// Oracle: max |2/(z + i)| over z = alpha^d i + (alpha^d - 1) r.a, r in the box.
long double sup_oracle(int d, int radius) {
  const long double ad = std::pow(kAlpha, d);
  long double best = 0;
  for (int x = -radius; x <= radius; ++x)
    for (int y = -radius; y <= radius; ++y)
      for (int z = -radius; z <= radius; ++z) {
        const long double ra = x * kAlpha + y + z * kAlpha * kAlpha;
        const std::complex<long double> pt((ad - 1) * ra, ad + 1);
        best = std::max(best, 2 / std::abs(pt));
      }
  return best;
}

bool inside(const Interval& x, long double v, long double slack) {
  return x.lower() <= mpq_class(static_cast<double>(v + slack)) && mpq_class(static_cast<double>(v - slack)) <= x.upper();
}

}  // namespace

TEST_CASE("F is bounded by one on the upper half plane and equals one in modulus at the base point") {
  const ComplexInterval f = eval_F(base_point());
  CHECK(f.abs().contains(mpq_class(1)));
  CHECK(f.re.contains(mpq_class(0)));
  CHECK_THROWS(make_point(ComplexInterval(Interval(0, 128), Interval(-1, 128)), ComplexInterval(128)));
}

TEST_CASE("least exponent with alpha^d > 2") {
  CHECK(least_exponent_above_two(canonical()) == 2);  // alpha^2 = 2.147...
}

TEST_CASE("sup over truncated class orbits matches a long double oracle") {
  const mpq_class width("1/100000000000000000000");
  for (int radius : {0, 1, 2, 5}) {
    const SupReport r = sup_F_on_class(2, radius, canonical(), width);
    CHECK(r.chain_verified);
    CHECK(r.sup.width() <= width);
    CHECK(inside(r.sup, sup_oracle(2, radius), 1e-15L));
    CHECK(r.argmax == IntVec3{0, 0, 0});
    // bound = 2/(alpha^2+1) and the sup is attained at r = 0
    CHECK(r.sup.overlaps(r.bound));
    CHECK(r.sup.upper() < mpq_class(2, 3));
    CHECK(r.f_at_base.contains(mpq_class(1)));
  }
  const long double value = 2 / (kAlpha * kAlpha + 1);
  CHECK(std::fabs(value - 0.63534439234396134526L) < 1e-15L);
}

TEST_CASE("sup_F_on_class requires alpha^d > 2") {
  CHECK_THROWS_AS(sup_F_on_class(1, 1, canonical()), PreconditionFailed);
  CHECK_NOTHROW(sup_F_on_class(3, 1, canonical()));
}

TEST_CASE("orbit evaluation agrees with the oracle pointwise") {
  const auto evals = evaluate_orbit(2, 1, canonical());
  CHECK(evals.size() == 27);
  const long double ad = kAlpha * kAlpha;
  for (const auto& e : evals) {
    const long double ra = e.r[0] * kAlpha + e.r[1] + e.r[2] * kAlpha * kAlpha;
    const long double expect = 2 / std::abs(std::complex<long double>((ad - 1) * ra, ad + 1));
    CHECK(inside(e.abs_f, expect, 1e-15L));
  }
}

TEST_CASE("hull certificate for the full lattice") {
  const mpq_class eps(1, 1000000);
  const HullCertificate h = hull_certificate(Sublattice::full(), {{0, 0, 0}}, base_point(), eps, canonical());
  CHECK_FALSE(h.trivial);
  CHECK(h.witnesses.size() == 3);
  CHECK(h.gap < eps);
  for (const Witness& w : h.witnesses) {
    CHECK(w.r != IntVec3{0, 0, 0});
    CHECK(w.distance.lo > -eps);
    CHECK(w.distance.hi < eps);
  }
  const HullCertificate t = hull_certificate(Sublattice::full(), {}, base_point(), eps, canonical());
  CHECK(t.trivial);
  CHECK_THROWS_AS(hull_certificate(Sublattice({{0, 1, 0}}), {}, base_point(), eps, canonical()), NoAccumulation);
}

TEST_CASE("uniqueness limit witnesses approach alpha^d z") {
  const mpq_class eps(1, 10000);
  const UniquenessWitnesses u = uniqueness_limit(1, base_point(), eps, canonical());
  CHECK(u.witnesses.size() == 3);
  // limit is alpha * i
  CHECK(u.limit.re.contains(mpq_class(0)));
  CHECK(inside(u.limit.im, kAlpha, 1e-15L));
  for (const Witness& w : u.witnesses) {
    CHECK(w.distance.lo > -eps);
    CHECK(w.distance.hi < eps);
  }
}

TEST_CASE("precision cap comes from the environment") {
  ::setenv("COVERING_LAB_PRECISION_CAP", "512", 1);
  CHECK(precision_cap_bits() == 512);
  ::setenv("COVERING_LAB_PRECISION_CAP", "16", 1);
  CHECK(precision_cap_bits() == kDefaultPrecisionCapBits);  // below the start precision: ignored
  ::setenv("COVERING_LAB_PRECISION_CAP", "128", 1);
  CHECK_THROWS_AS(sup_F_on_class(2, 0, canonical(), mpq_class(1) / (mpz_class(1) << 300)), PrecisionExhausted);
  ::unsetenv("COVERING_LAB_PRECISION_CAP");
  CHECK(precision_cap_bits() == kDefaultPrecisionCapBits);
  CHECK_NOTHROW(sup_F_on_class(2, 0, canonical(), mpq_class(1) / (mpz_class(1) << 300)));
}

TEST_CASE("F at i alpha^d is 2/(alpha^d + 1), and F decays at infinity") {
  for (int d : {0, 1, 2, 3, 5}) {
    const auto e = evaluate_orbit(d, 0, canonical());
    REQUIRE(e.size() == 1);
    CHECK(inside(e[0].abs_f, 2 / (std::pow(kAlpha, d) + 1), 1e-15L));
  }
  const Point far = make_point(ComplexInterval(Interval(0, 128), Interval(1000000, 128)), ComplexInterval(128));
  CHECK(eval_F(far).abs().upper() <= mpq_class(2, 1000000));
}

TEST_CASE("orbit points") {
  for (int radius : {0, 1, 2}) {
    const auto pts = orbit_points(2, radius, canonical());
    CHECK(pts.size() == static_cast<size_t>((2 * radius + 1) * (2 * radius + 1) * (2 * radius + 1)));
    std::set<std::array<mpq_class, 3>> distinct;
    for (const auto& p : pts) {
      distinct.insert(p.z_real.coefficients());
      if (p.r == IntVec3{0, 0, 0}) {
        CHECK(p.z_real.is_zero());
        CHECK(inside(p.x.z.im, kAlpha * kAlpha, 1e-15L));
      }
    }
    CHECK(distinct.size() == pts.size());
  }
  for (const auto& p : orbit_points(0, 1, canonical())) {
    CHECK(p.z_real.is_zero());
    CHECK(p.x.z.im.contains(mpq_class(1)));
  }
}

TEST_CASE("uniqueness limit rejects d = 0 and bad epsilon") {
  CHECK_THROWS_AS(uniqueness_limit(0, base_point(), mpq_class(1, 100), canonical()), std::invalid_argument);
  CHECK_THROWS_AS(uniqueness_limit(1, base_point(), mpq_class(0), canonical()), std::invalid_argument);
  CHECK_THROWS_AS(hull_certificate(Sublattice::full(), {}, base_point(), mpq_class(-1), canonical()), std::invalid_argument);
}

TEST_CASE("hull witnesses are orbit points and stay valid for larger epsilon") {
  const InoueGroup G(canonical());
  const mpq_class eps(1, 1000000);
  const HullCertificate h = hull_certificate(Sublattice::full(), {{0, 0, 0}}, base_point(), eps, canonical());
  for (const Witness& w : h.witnesses) {
    const Point image = G.to_affine(GroupElement{0, w.r}).apply(base_point());
    CHECK(image.z.re.overlaps(w.point.z.re));
    CHECK(image.z.im.overlaps(w.point.z.im));
    CHECK(image.w.re.overlaps(w.point.w.re));
    for (const mpq_class& larger : {mpq_class(1, 1000), mpq_class(1, 10)}) {
      CHECK(w.distance.lo > -larger);
      CHECK(w.distance.hi < larger);
    }
  }
}

TEST_CASE("the sup bound chain holds for other admissible matrices") {
  const auto all = search_admissible(1);
  REQUIRE_FALSE(all.empty());
  for (size_t i = 0; i < all.size(); i += std::max<size_t>(1, all.size() / 6)) {
    const SpectralData s = spectral_data(all[i]);
    const SupReport r = sup_F_on_class(least_exponent_above_two(s), 1, s);
    CHECK(r.chain_verified);
    CHECK(r.sup.upper() < mpq_class(2, 3));
  }
}
