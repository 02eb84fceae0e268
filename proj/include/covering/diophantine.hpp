#pragma once

// Linear independence of the eigenvector coordinates over Q and effective
// density of {r.a : r in L \ S} near zero.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "covering/algebraic.hpp"

namespace covering {

/// Subgroup of Z^3 given by a basis of 1..3 independent integer vectors.
class Sublattice {
 public:
  /// Throws std::invalid_argument for empty or dependent bases.
  explicit Sublattice(std::vector<IntVec3> basis);
  static Sublattice full() { return Sublattice({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

  const std::vector<IntVec3>& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  bool contains(const IntVec3& r) const;

 private:
  std::vector<IntVec3> basis_;
};

using ExclusionSet = std::set<IntVec3>;

enum class MinimizationMethod { Reduction, Exhaustive };
std::string to_string(MinimizationMethod m);

/// r in L \ S with |r.a| certified below epsilon.
struct MinimizationResult {
  IntVec3 r;
  CubicFieldElement value;
  RationalInterval enclosure;
  mpq_class epsilon;
  MinimizationMethod method;
};

/// Rank of the rational coordinate matrix of (a1, a2, a3) in the basis
/// {1, alpha, alpha^2} equals 3.
bool independence_over_Q(const std::array<CubicFieldElement, 3>& a);

/// P irreducible over Q (no rational root). For |c0| = 1 only +-1 can be
/// roots; otherwise every divisor of c0 is tried.
bool nonquadratic_check(const CubicPolynomial& p);

/// Enclosure of `value` strictly inside (-epsilon, epsilon), if one exists
/// below the precision cap.
std::optional<RationalInterval> certify_below(const CubicFieldElement& value, const mpq_class& epsilon);

enum class Strategy { Auto, ReductionOnly, ExhaustiveOnly };

/// Nonzero r in L \ S with certified |r.a| < epsilon. Reduces the embedding
/// lattice {(r, round(N r.a))} starting from N = ceil(2/epsilon) and growing N
/// until a certificate appears; falls back to a bounded exhaustive search.
/// Throws NoAccumulation when rank L <= 1.
MinimizationResult minimize_linear_form(const Sublattice& lattice, const ExclusionSet& excluded,
                                        const std::array<CubicFieldElement, 3>& a, const mpq_class& epsilon,
                                        Strategy strategy = Strategy::Auto);

/// k certificates at epsilon0, epsilon0/ratio, epsilon0/ratio^2, ...; values
/// strictly decreasing in absolute value and vectors distinct.
std::vector<MinimizationResult> shrinking_sequence(const Sublattice& lattice, const ExclusionSet& excluded,
                                                   const std::array<CubicFieldElement, 3>& a,
                                                   const mpq_class& epsilon0, int count,
                                                   const mpq_class& ratio = mpq_class(10));

/// Coefficient bound of the exhaustive fallback: max(50, ceil(epsilon^-1/2)).
long exhaustive_bound(const mpq_class& epsilon);

}  // namespace covering
