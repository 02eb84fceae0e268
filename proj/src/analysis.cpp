#include "covering/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "covering/errors.hpp"

namespace covering {

namespace {

ComplexInterval real_complex(const Interval& x) { return {x, Interval(0, x.precision())}; }

std::string enclosure_string(const RationalInterval& e, int digits = 30) {
  return "[" + decimal_floor(e.lo, digits) + ", " + decimal_ceil(e.hi, digits) + "]";
}

}  // namespace

long precision_cap_bits() {
  if (const char* env = std::getenv("COVERING_LAB_PRECISION_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= kStartPrecisionBits) return v;
  }
  return kDefaultPrecisionCapBits;
}

Point make_point(ComplexInterval z, ComplexInterval w) {
  if (!z.im.certainly_positive()) throw std::invalid_argument("make_point: Im z must be certainly positive");
  return {std::move(z), std::move(w)};
}

Point base_point(long precision_bits) {
  return make_point(ComplexInterval(Interval(0, precision_bits), Interval(1, precision_bits)),
                    ComplexInterval(precision_bits));
}

ComplexInterval eval_F(const Point& x) {
  if (!x.z.im.certainly_positive()) throw std::invalid_argument("eval_F: z is not certainly in the upper half plane");
  const long prec = x.z.precision();
  const ComplexInterval shifted(x.z.re, x.z.im + Interval(1, prec));
  return ComplexInterval(Interval(2, prec), Interval(0, prec)) / shifted;
}

std::vector<OrbitPoint> orbit_points(std::int64_t d, int radius, const SpectralData& spectral) {
  if (radius < 0) throw std::invalid_argument("orbit_points: radius must be >= 0");
  const long prec = spectral.precision_bits;
  const CubicFieldElement scale = spectral.alpha.pow(d);
  const CubicFieldElement factor = scale - spectral.field->element(1);
  const Interval height = scale.to_interval(prec);
  const ComplexInterval w_factor = spectral.beta.pow(d) - ComplexInterval(Interval(1, prec), Interval(0, prec));
  std::vector<OrbitPoint> out;
  for (const IntVec3& r : box(radius)) {
    CubicFieldElement z_real = factor * linear_form(r, spectral.a);
    Point x = make_point(ComplexInterval(z_real.to_interval(prec), height), w_factor * linear_form(r, spectral.b));
    out.push_back({r, std::move(z_real), std::move(x)});
  }
  return out;
}

std::int64_t least_exponent_above_two(const SpectralData& spectral) {
  const CubicFieldElement two = spectral.field->element(2);
  CubicFieldElement power = spectral.alpha;
  for (std::int64_t d = 1;; ++d, power = power * spectral.alpha) {
    if (compare(power, two) > 0) return d;
  }
}

SupReport sup_F_on_class(std::int64_t d, int radius, const SpectralData& spectral, const mpq_class& sup_width) {
  if (radius < 0) throw std::invalid_argument("sup_F_on_class: radius must be >= 0");
  const CubicFieldElement alpha_d = spectral.alpha.pow(d);
  if (compare(alpha_d, spectral.field->element(2)) <= 0) {
    throw PreconditionFailed("sup_F_on_class: alpha^" + std::to_string(d) + " <= 2",
                             "alpha^d in " + enclosure_string(alpha_d.enclosure(128)));
  }

  // |F| at r is 2 / |(alpha^d - 1) r.a + i (alpha^d + 1)|, largest where |r.a|
  // is smallest. Exact comparison; ties keep the lexicographically first r.
  IntVec3 best{0, 0, 0};
  CubicFieldElement best_form;
  bool first = true;
  for (const IntVec3& r : box(radius)) {
    CubicFieldElement form = linear_form(r, spectral.a);
    if (first || compare_abs(form, best_form) < 0) {
      best = r;
      best_form = std::move(form);
      first = false;
    }
  }
  const CubicFieldElement factor = alpha_d - spectral.field->element(1);
  const CubicFieldElement best_real = factor * best_form;

  const long cap = precision_cap_bits();
  for (long bits = kStartPrecisionBits; bits <= cap; bits *= 2) {
    SupReport rep;
    rep.d = d;
    rep.radius = radius;
    rep.precision_bits = bits;
    rep.alpha_power = alpha_d;
    rep.alpha_power_enclosure = alpha_d.to_interval(bits);
    rep.bound = Interval(2, bits) / (rep.alpha_power_enclosure + Interval(1, bits));
    const Point at_max = make_point(ComplexInterval(best_real.to_interval(bits), rep.alpha_power_enclosure),
                                    ComplexInterval(bits));
    rep.sup = eval_F(at_max).abs();
    rep.argmax = best;
    rep.f_at_base = eval_F(base_point(bits)).abs();

    const Interval two_thirds(mpq_class(2, 3), bits);
    const bool base_is_one = rep.f_at_base.contains(mpq_class(1));
    const bool bound_below_two_thirds = rep.bound.certainly_less(two_thirds);
    // sup <= bound holds exactly: |r.a| >= 0 with equality only at r = 0.
    const bool sup_le_bound = best_form.sign() == 0 ? true : rep.sup.certainly_less(rep.bound);
    rep.chain_verified = base_is_one && bound_below_two_thirds && sup_le_bound;
    if (rep.chain_verified && rep.sup.width() <= sup_width) return rep;
  }
  throw PrecisionExhausted("sup_F_on_class: chain not certified at " + std::to_string(cap) +
                           " bits (raise COVERING_LAB_PRECISION_CAP)");
}

std::vector<OrbitEvaluation> evaluate_orbit(std::int64_t d, int radius, const SpectralData& spectral) {
  std::vector<OrbitEvaluation> out;
  for (const OrbitPoint& p : orbit_points(d, radius, spectral)) out.push_back({p.r, eval_F(p.x).abs()});
  return out;
}

HullCertificate hull_certificate(const Sublattice& h, const ExclusionSet& excluded, const Point& x,
                                 const mpq_class& epsilon, const SpectralData& spectral, int witness_count) {
  if (epsilon <= 0) throw std::invalid_argument("hull_certificate: epsilon must be positive");
  if (h.rank() <= 1) {
    throw NoAccumulation("hull_certificate: rank " + std::to_string(h.rank()) + " subgroup has no accumulation");
  }
  HullCertificate cert{x, {}, 0, epsilon, false};
  const IntVec3 zero{0, 0, 0};
  if (!excluded.count(zero)) {
    // The identity lies in H \ S, so x itself is an orbit point.
    cert.trivial = true;
    cert.witnesses.push_back({zero, x, RationalInterval(mpq_class(0))});
    return cert;
  }
  const long prec = x.z.precision();
  for (const MinimizationResult& m : shrinking_sequence(h, excluded, spectral.a, epsilon, std::max(1, witness_count))) {
    Point moved = make_point(x.z + real_complex(m.value.to_interval(prec)), x.w + linear_form(m.r, spectral.b));
    cert.gap = std::max(cert.gap, m.enclosure.magnitude());
    cert.witnesses.push_back({m.r, std::move(moved), m.enclosure});
  }
  return cert;
}

UniquenessWitnesses uniqueness_limit(std::int64_t d, const Point& x, const mpq_class& epsilon,
                                     const SpectralData& spectral, int witness_count) {
  if (d == 0) throw std::invalid_argument("uniqueness_limit: d must be nonzero");
  if (epsilon <= 0) throw std::invalid_argument("uniqueness_limit: epsilon must be positive");
  const long prec = x.z.precision();
  const CubicFieldElement alpha_d = spectral.alpha.pow(d);
  const CubicFieldElement factor = alpha_d - spectral.field->element(1);
  const ComplexInterval scale_z = real_complex(alpha_d.to_interval(prec));
  const ComplexInterval beta_d = spectral.beta.pow(d);
  const ComplexInterval w_factor = beta_d - ComplexInterval(Interval(1, prec), Interval(0, prec));

  UniquenessWitnesses out{d, scale_z * x.z, {}, epsilon};
  const ComplexInterval limit_w = beta_d * x.w;
  // |factor r.a| < epsilon follows from |r.a| < epsilon / U with U >= |factor|.
  const mpq_class inner = epsilon / factor.enclosure(64).magnitude();
  for (const MinimizationResult& m :
       shrinking_sequence(Sublattice::full(), {}, spectral.a, inner, std::max(1, witness_count))) {
    const CubicFieldElement shift = factor * m.value;
    auto distance = certify_below(shift, epsilon);
    if (!distance) throw std::logic_error("uniqueness_limit: scaled witness not certified");
    Point p = make_point(out.limit + real_complex(shift.to_interval(prec)),
                         limit_w + w_factor * linear_form(m.r, spectral.b));
    out.witnesses.push_back({m.r, std::move(p), *distance});
  }
  return out;
}

}  // namespace covering
