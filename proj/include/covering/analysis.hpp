#pragma once

// Certified checks on bounded holomorphic functions of H x C: the separating
// function F(z, w) = 2 / (z + i), class orbits of g0^d, hull membership via
// accumulation of projections, and limit points forcing uniqueness.

#include <cstdint>
#include <vector>

#include "covering/diophantine.hpp"
#include "covering/group.hpp"

namespace covering {

/// Interval precision used for the first attempt of any certified report.
constexpr long kStartPrecisionBits = 128;
/// Default ceiling for precision doubling; COVERING_LAB_PRECISION_CAP overrides
/// (values below kStartPrecisionBits or unparsable ones are ignored).
constexpr long kDefaultPrecisionCapBits = 2048;
long precision_cap_bits();

/// Throws std::invalid_argument unless Im z is certainly positive.
Point make_point(ComplexInterval z, ComplexInterval w);
/// x0 = (i, 0).
Point base_point(long precision_bits = kStartPrecisionBits);

/// F(z, w) = 2 / (z + i).
ComplexInterval eval_F(const Point& x);

struct OrbitPoint {
  IntVec3 r;
  /// Exact real part (alpha^d - 1) r.a of z; Im z = alpha^d.
  CubicFieldElement z_real;
  Point x;
};

/// The g0^d class orbit of x0: z = (alpha^d - 1) r.a + i alpha^d,
/// w = (beta^d - 1) r.b, for ||r||_inf <= radius in lexicographic order.
std::vector<OrbitPoint> orbit_points(std::int64_t d, int radius, const SpectralData& spectral);

struct SupReport {
  std::int64_t d = 0;
  int radius = 0;
  long precision_bits = 0;
  CubicFieldElement alpha_power;  // alpha^d
  Interval alpha_power_enclosure;
  /// 2 / (alpha^d + 1).
  Interval bound;
  /// Supremum of |F| over the truncated orbit.
  Interval sup;
  IntVec3 argmax{0, 0, 0};
  /// |F(x0)| = 1 > 2/3 > 2/(alpha^d + 1) >= sup, every link certified.
  bool chain_verified = false;
  Interval f_at_base;
};

/// Throws PreconditionFailed unless alpha^d > 2; the detail carries the
/// enclosure of alpha^d. Refines precision from 128 bits, doubling, until the
/// sup enclosure is narrower than `sup_width` or the cap is reached.
SupReport sup_F_on_class(std::int64_t d, int radius, const SpectralData& spectral,
                         const mpq_class& sup_width = mpq_class("1/100000000000000000000"));

struct OrbitEvaluation {
  IntVec3 r;
  Interval abs_f;
};
std::vector<OrbitEvaluation> evaluate_orbit(std::int64_t d, int radius, const SpectralData& spectral);

struct Witness {
  IntVec3 r;
  Point point;
  /// Certified enclosure of the z-distance to the target (a real number).
  RationalInterval distance;
};

struct HullCertificate {
  Point target;
  std::vector<Witness> witnesses;
  /// Max |witness z - target z| (upper bound), certified below epsilon.
  mpq_class gap;
  mpq_class epsilon;
  bool trivial = false;
};

/// Witnesses h x = (z + r.a, w + r.b), h in H \ S, approaching x in the
/// z-coordinate. Throws NoAccumulation for rank H <= 1, std::invalid_argument
/// for epsilon <= 0.
HullCertificate hull_certificate(const Sublattice& h, const ExclusionSet& excluded, const Point& x,
                                 const mpq_class& epsilon, const SpectralData& spectral, int witness_count = 3);

struct UniquenessWitnesses {
  std::int64_t d = 0;
  /// alpha^d z, the limit point in H.
  ComplexInterval limit;
  std::vector<Witness> witnesses;
  mpq_class epsilon;
};

/// Class-orbit points of x within epsilon of alpha^d z. Throws
/// std::invalid_argument for d == 0 or epsilon <= 0.
UniquenessWitnesses uniqueness_limit(std::int64_t d, const Point& x, const mpq_class& epsilon,
                                     const SpectralData& spectral, int witness_count = 3);

/// Least d >= 1 with alpha^d > 2.
std::int64_t least_exponent_above_two(const SpectralData& spectral);

}  // namespace covering
