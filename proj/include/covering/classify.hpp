#pragma once

// Decision procedures on the family Z^n x|_M Z (n <= 4): finite order of M,
// FC-center, upper FC-series, and growth / Varopoulos classification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covering/algebraic.hpp"
#include "covering/lattice.hpp"

namespace covering {

/// (m, r) with r in Z^n; multiplication (m, r)(m', r') = (m + m', M^-m' r + r').
struct ExtElement {
  std::int64_t m = 0;
  lattice::ZVector r;

  bool operator==(const ExtElement&) const = default;
};

/// Z^n x|_M Z for M in GL(n, Z), or the trivial group.
class LatticeExtensionGroup {
 public:
  /// Throws std::invalid_argument unless M is square with determinant +-1.
  /// n = 0 (empty M) presents Z.
  explicit LatticeExtensionGroup(lattice::ZMatrix m);
  static LatticeExtensionGroup trivial();
  /// Z^rank as Z^(rank-1) x|_I Z; rank 0 gives the trivial group.
  static LatticeExtensionGroup free_abelian(int rank);
  /// The Inoue covering group with its conjugation twist T.
  static LatticeExtensionGroup from_twist(const IntMat3& t);

  bool is_trivial() const { return trivial_; }
  int n() const { return static_cast<int>(m_.size()); }
  const lattice::ZMatrix& matrix() const { return m_; }
  const lattice::ZMatrix& matrix_inverse() const { return m_inv_; }
  /// M^k for any integer k.
  lattice::ZMatrix power(std::int64_t k) const;

  ExtElement identity() const { return {0, lattice::ZVector(m_.size(), 0)}; }
  ExtElement mul(const ExtElement& g, const ExtElement& h) const;
  ExtElement inv(const ExtElement& g) const;
  /// g^-1 s g.
  ExtElement conj(const ExtElement& s, const ExtElement& g) const;
  /// The stable generators: t = (1, 0) then e_1..e_n.
  std::vector<ExtElement> generators() const;

  std::string describe() const;

 private:
  LatticeExtensionGroup() = default;
  bool trivial_ = false;
  lattice::ZMatrix m_;
  lattice::ZMatrix m_inv_;
};

/// {(m, r) : r in the lattice spanned by `lattice_basis`, m = 0 mod m_modulus};
/// m_modulus == 0 means m = 0. The basis is kept in Hermite normal form.
struct SubgroupDescription {
  lattice::ZMatrix lattice_basis;
  std::int64_t m_modulus = 0;

  static SubgroupDescription trivial() { return {}; }
  static SubgroupDescription whole(int n);
  static SubgroupDescription make(lattice::ZMatrix basis, std::int64_t m_modulus);

  bool contains(const ExtElement& g) const;
  bool contains(const SubgroupDescription& other) const;
  bool is_trivial() const { return lattice_basis.empty() && m_modulus == 0; }
  bool is_whole(int n) const;
  /// Index in G when finite.
  std::optional<mpz_class> index(int n) const;
  std::string describe() const;

  bool operator==(const SubgroupDescription&) const = default;
};

struct FCSeriesReport {
  /// FC_1, FC_2, ...; consecutive repeats are not listed.
  std::vector<SubgroupDescription> terms;
  bool stabilized = false;
  std::optional<int> fc_nilpotent_class;
};

struct GrowthClass {
  enum class Kind { Finite, Polynomial, Exponential };
  Kind kind = Kind::Finite;
  /// Growth degree for Polynomial, 0 otherwise.
  int degree = 0;
  bool varopoulos = false;

  std::string describe() const;
  bool operator==(const GrowthClass&) const = default;
};

/// Largest finite order of an element of GL(n, Z) for n <= 4.
int max_finite_order(int n);
/// Exponent L such that M^L is unipotent whenever every eigenvalue of M is a
/// root of unity (lcm of the possible orders).
int unipotent_exponent(int n);

/// Least k with M^k = I, or nullopt for infinite order. Throws Unsupported
/// for n > 4.
std::optional<int> finite_order_test(const lattice::ZMatrix& m);

/// det(tI - M), coefficients from t^0 up to the leading 1.
std::vector<mpz_class> characteristic_polynomial(const lattice::ZMatrix& m);

/// Every eigenvalue of M is a root of unity, decided by dividing the
/// characteristic polynomial by cyclotomic polynomials of degree <= n.
bool all_eigenvalues_roots_of_unity(const lattice::ZMatrix& m);

SubgroupDescription fc_center(const LatticeExtensionGroup& g);
FCSeriesReport upper_fc_series(const LatticeExtensionGroup& g, int max_steps = 8);
GrowthClass classify_varopoulos(const LatticeExtensionGroup& g);

/// Row Hermite normal form of the lattice spanned by the rows; zero rows are
/// dropped.
lattice::ZMatrix hermite_normal_form(lattice::ZMatrix rows);

}  // namespace covering
