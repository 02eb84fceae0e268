#include "covering/group.hpp"

#include <stdexcept>

#include "covering/checked.hpp"

namespace covering {

GroupElement GroupElement::generator(int j) {
  if (j < 0 || j > 3) throw std::out_of_range("GroupElement::generator: index must be 0..3");
  GroupElement g;
  if (j == 0) {
    g.m = 1;
  } else {
    g.r[static_cast<size_t>(j - 1)] = 1;
  }
  return g;
}

Point AffineMap::apply(const Point& x) const {
  const long prec = w_scale.precision();
  ComplexInterval zs(z_scale.to_interval(prec), Interval(0, prec));
  ComplexInterval zt(z_shift.to_interval(prec), Interval(0, prec));
  return {zs * x.z + zt, w_scale * x.w + w_shift};
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  return {f.z_scale * g.z_scale, f.z_scale * g.z_shift + f.z_shift, f.w_scale * g.w_scale,
          f.w_scale * g.w_shift + f.w_shift};
}

CubicFieldElement linear_form(const IntVec3& r, const std::array<CubicFieldElement, 3>& a) {
  CubicFieldElement acc = a[0].field()->element(0);
  for (size_t j = 0; j < 3; ++j) {
    if (r[j] != 0) acc += mpq_class(static_cast<long>(r[j])) * a[j];
  }
  return acc;
}

ComplexInterval linear_form(const IntVec3& r, const std::array<ComplexInterval, 3>& b) {
  const long prec = b[0].precision();
  ComplexInterval acc(prec);
  for (size_t j = 0; j < 3; ++j) {
    if (r[j] != 0) acc = acc + Interval(static_cast<long>(r[j]), prec) * b[j];
  }
  return acc;
}

// ---------------------------------------------------------------------------

InoueGroup::InoueGroup(SpectralData spectral)
    : spec_(std::move(spectral)),
      twist_(transpose(spec_.matrix.entries())),
      twist_inv_(transpose(spec_.matrix.inverse().entries())) {}

IntVec3 InoueGroup::twist_power(const IntVec3& r, std::int64_t k) const {
  IntVec3 out = r;
  const IntMat3& step = k >= 0 ? twist_ : twist_inv_;
  for (std::int64_t i = 0, n = k >= 0 ? k : -k; i < n; ++i) out = covering::apply(step, out);
  return out;
}

GroupElement InoueGroup::mul(const GroupElement& g, const GroupElement& h) const {
  const IntVec3 moved = twist_power(g.r, -h.m);
  return {checked_add(g.m, h.m),
          {checked_add(moved[0], h.r[0]), checked_add(moved[1], h.r[1]), checked_add(moved[2], h.r[2])}};
}

GroupElement InoueGroup::inv(const GroupElement& g) const {
  // (m, r)^-1 = (-m, -T^m r).
  const IntVec3 moved = twist_power(g.r, g.m);
  return {checked_sub(0, g.m), {checked_sub(0, moved[0]), checked_sub(0, moved[1]), checked_sub(0, moved[2])}};
}

GroupElement InoueGroup::conj(const GroupElement& s, const GroupElement& g) const { return mul(mul(inv(g), s), g); }

AffineMap InoueGroup::identity_map() const {
  const long prec = spec_.precision_bits;
  return {spec_.field->element(1), spec_.field->element(0), ComplexInterval(Interval(1, prec), Interval(0, prec)),
          ComplexInterval(prec)};
}

AffineMap InoueGroup::to_affine(const GroupElement& g) const {
  const CubicFieldElement scale = spec_.alpha.pow(g.m);
  const ComplexInterval w_scale = spec_.beta.pow(g.m);
  return {scale, scale * linear_form(g.r, spec_.a), w_scale, w_scale * linear_form(g.r, spec_.b)};
}

bool InoueGroup::is_period(const GroupElement& g) const { return to_affine(g).z_is_identity(); }

bool InoueGroup::is_fc_element(const GroupElement& g) const {
  if (g.is_identity()) return true;
  const CubicFieldElement one = spec_.field->element(1);
  if (g.m != 0) {
    // T^m = I would make alpha^m an eigenvalue equal to 1.
    if (spec_.alpha.pow(g.m) == one) throw std::logic_error("is_fc_element: alpha^m = 1");
    return false;
  }
  // A finite orbit T^k r = r forces alpha^k (r.a) = r.a; r.a != 0 and alpha > 1.
  if (linear_form(g.r, spec_.a).is_zero()) throw std::logic_error("is_fc_element: r.a = 0 for r != 0");
  if (compare(spec_.alpha, one) <= 0) throw std::logic_error("is_fc_element: alpha <= 1");
  return false;
}

// ---------------------------------------------------------------------------

AffineMap ConjClassDescriptor::member(const IntVec3& r) const {
  return {z_scale, z_factor * linear_form(r, a), w_scale, w_factor * linear_form(r, b)};
}

ConjClassDescriptor conjugacy_class(const InoueGroup& group, std::int64_t d) {
  const SpectralData& s = group.spectral();
  const long prec = s.precision_bits;
  const CubicFieldElement scale = s.alpha.pow(d);
  const ComplexInterval w_scale = s.beta.pow(d);
  const ComplexInterval one(Interval(1, prec), Interval(0, prec));
  return {d, scale, scale - s.field->element(1), w_scale, w_scale - one, s.a, s.b};
}

std::vector<IntVec3> box(int radius) {
  std::vector<IntVec3> out;
  if (radius < 0) return out;
  for (std::int64_t i = -radius; i <= radius; ++i)
    for (std::int64_t j = -radius; j <= radius; ++j)
      for (std::int64_t k = -radius; k <= radius; ++k) out.push_back({i, j, k});
  return out;
}

std::vector<ClassMember> enumerate(const ConjClassDescriptor& cls, int radius) {
  if (radius < 0) throw std::invalid_argument("enumerate: radius must be >= 0");
  if (cls.is_identity_class()) return {{IntVec3{0, 0, 0}, cls.member({0, 0, 0})}};
  std::vector<ClassMember> out;
  for (const IntVec3& r : box(radius)) out.push_back({r, cls.member(r)});
  return out;
}

}  // namespace covering
