#pragma once

// The covering group G = Z^3 x| Z acting on H x C, in the normal form
// g0^m g1^r1 g2^r2 g3^r3.

#include <compare>
#include <cstdint>
#include <vector>

#include "covering/algebraic.hpp"

namespace covering {

/// Normal form (m, r) of g0^m g1^r1 g2^r2 g3^r3.
struct GroupElement {
  std::int64_t m = 0;
  IntVec3 r{0, 0, 0};

  static GroupElement identity() { return {}; }
  /// g0 for j == 0, otherwise the translation g_j (1 <= j <= 3).
  static GroupElement generator(int j);
  bool is_identity() const { return m == 0 && r == IntVec3{0, 0, 0}; }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// A point (z, w) of H x C as a pair of complex enclosures.
struct Point {
  ComplexInterval z;
  ComplexInterval w;
};

/// (z, w) -> (z_scale z + z_shift, w_scale w + w_shift), exact in z.
struct AffineMap {
  CubicFieldElement z_scale;
  CubicFieldElement z_shift;
  ComplexInterval w_scale;
  ComplexInterval w_shift;

  Point apply(const Point& x) const;
  bool z_equals(const AffineMap& other) const { return z_scale == other.z_scale && z_shift == other.z_shift; }
  bool w_overlaps(const AffineMap& other) const {
    return w_scale.overlaps(other.w_scale) && w_shift.overlaps(other.w_shift);
  }
  bool z_is_identity() const { return z_scale == z_scale.field()->element(1) && z_shift.is_zero(); }
};

/// f o g, i.e. x -> f(g(x)).
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// r1 a1 + r2 a2 + r3 a3.
CubicFieldElement linear_form(const IntVec3& r, const std::array<CubicFieldElement, 3>& a);
ComplexInterval linear_form(const IntVec3& r, const std::array<ComplexInterval, 3>& b);

class InoueGroup {
 public:
  explicit InoueGroup(SpectralData spectral);

  const SpectralData& spectral() const { return spec_; }
  /// Conjugation twist T = A^T: g0 (0, r) g0^-1 = (0, T r).
  const IntMat3& twist() const { return twist_; }
  const IntMat3& twist_inverse() const { return twist_inv_; }

  /// T^k r, overflow-checked.
  IntVec3 twist_power(const IntVec3& r, std::int64_t k) const;

  /// (m, r)(m', r') = (m + m', T^-m' r + r').
  GroupElement mul(const GroupElement& g, const GroupElement& h) const;
  GroupElement inv(const GroupElement& g) const;
  /// g^-1 s g.
  GroupElement conj(const GroupElement& s, const GroupElement& g) const;

  /// Homomorphism to Aut(H x C) with (gh)(x) = g(h(x)).
  AffineMap to_affine(const GroupElement& g) const;
  AffineMap identity_map() const;

  /// The z-part of the action is trivial. Every bounded holomorphic function
  /// factors through the projection to H, so these are exactly the periods.
  bool is_period(const GroupElement& g) const;

  /// Finite conjugacy class. For m != 0, T^m = I would force alpha^m = 1;
  /// for m = 0, r != 0, a finite T-orbit would give alpha^k (r.a) = r.a with
  /// r.a != 0. Both are excluded exactly, so only the identity qualifies.
  bool is_fc_element(const GroupElement& g) const;

 private:
  SpectralData spec_;
  IntMat3 twist_;
  IntMat3 twist_inv_;
};

/// (m, r) -> m, the quotient map onto Z.
inline std::int64_t quotient_degree(const GroupElement& g) { return g.m; }

/// The conjugacy class of g0^d: maps
/// (z, w) -> (alpha^d z + (alpha^d - 1) r.a, beta^d w + (beta^d - 1) r.b).
struct ConjClassDescriptor {
  std::int64_t d = 0;
  CubicFieldElement z_scale;   // alpha^d
  CubicFieldElement z_factor;  // alpha^d - 1
  ComplexInterval w_scale;     // beta^d
  ComplexInterval w_factor;    // beta^d - 1
  std::array<CubicFieldElement, 3> a;
  std::array<ComplexInterval, 3> b;

  bool is_identity_class() const { return d == 0; }
  AffineMap member(const IntVec3& r) const;
};

ConjClassDescriptor conjugacy_class(const InoueGroup& group, std::int64_t d);

struct ClassMember {
  IntVec3 r;
  AffineMap map;
};

/// Members for ||r||_inf <= radius in lexicographic order of r. The identity
/// class (d == 0) yields the single identity map.
std::vector<ClassMember> enumerate(const ConjClassDescriptor& cls, int radius);

/// All r with ||r||_inf <= radius, lexicographic.
std::vector<IntVec3> box(int radius);

}  // namespace covering
