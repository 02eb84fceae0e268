#include "covering/diophantine.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "covering/errors.hpp"
#include "covering/group.hpp"
#include "covering/lattice.hpp"

namespace covering {

namespace {

constexpr long kMaxCertifyBits = 1L << 13;
constexpr int kMaxScalingRounds = 48;

lattice::QMatrix as_columns(const std::vector<IntVec3>& basis) {
  lattice::QMatrix m(3, std::vector<mpq_class>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < 3; ++i) m[i][j] = mpq_class(static_cast<long>(basis[j][i]));
  return m;
}

mpz_class ceil_div(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class round_nearest(const mpq_class& q) {
  mpq_class shifted = q + mpq_class(1, 2);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

long bit_length(const mpz_class& z) { return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

bool fits_int64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

std::optional<MinimizationResult> try_candidate(const IntVec3& r, const ExclusionSet& excluded,
                                                const std::array<CubicFieldElement, 3>& a, const mpq_class& epsilon,
                                                MinimizationMethod method) {
  if (r == IntVec3{0, 0, 0} || excluded.count(r)) return std::nullopt;
  CubicFieldElement value = linear_form(r, a);
  auto enclosure = certify_below(value, epsilon);
  if (!enclosure) return std::nullopt;
  return MinimizationResult{r, std::move(value), *enclosure, epsilon, method};
}

std::optional<MinimizationResult> by_reduction(const Sublattice& lattice, const ExclusionSet& excluded,
                                               const std::array<CubicFieldElement, 3>& a, const mpq_class& epsilon) {
  std::vector<CubicFieldElement> chi;
  for (const auto& b : lattice.basis()) chi.push_back(linear_form(b, a));

  mpz_class scale = ceil_div(mpq_class(2) / epsilon);
  for (int round = 0; round < kMaxScalingRounds; ++round, scale *= 16) {
    const long bits = bit_length(scale) + 64;
    lattice::ZMatrix rows;
    for (size_t i = 0; i < chi.size(); ++i) {
      const auto& b = lattice.basis()[i];
      const mpq_class approx = chi[i].enclosure(bits).midpoint();
      rows.push_back({static_cast<long>(b[0]), static_cast<long>(b[1]), static_cast<long>(b[2]),
                      round_nearest(approx * scale)});
    }
    const lattice::ZMatrix reduced = lattice::lll_reduce(rows);

    std::vector<lattice::ZVector> candidates(reduced.begin(), reduced.end());
    for (size_t i = 0; i < reduced.size(); ++i)
      for (size_t j = i + 1; j < reduced.size(); ++j) {
        lattice::ZVector sum(4), diff(4);
        for (size_t c = 0; c < 4; ++c) {
          sum[c] = reduced[i][c] + reduced[j][c];
          diff[c] = reduced[i][c] - reduced[j][c];
        }
        candidates.push_back(std::move(sum));
        candidates.push_back(std::move(diff));
      }
    for (const auto& v : candidates) {
      if (!fits_int64(v[0]) || !fits_int64(v[1]) || !fits_int64(v[2])) continue;
      const IntVec3 r{v[0].get_si(), v[1].get_si(), v[2].get_si()};
      if (auto hit = try_candidate(r, excluded, a, epsilon, MinimizationMethod::Reduction)) return hit;
    }
  }
  return std::nullopt;
}

std::optional<MinimizationResult> by_exhaustion(const Sublattice& lattice, const ExclusionSet& excluded,
                                                const std::array<CubicFieldElement, 3>& a, const mpq_class& epsilon) {
  const long bound = exhaustive_bound(epsilon);
  const auto& basis = lattice.basis();
  const size_t k = basis.size();
  std::vector<double> chi;
  for (const auto& b : basis) chi.push_back(linear_form(b, a).enclosure(80).midpoint().get_d());
  const double eps = epsilon.get_d();

  auto combine = [&](const std::vector<long>& c) {
    IntVec3 r{0, 0, 0};
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < 3; ++j) r[j] += c[i] * basis[i][j];
    return r;
  };

  // Free coefficients c_0..c_{k-2}; the last one is solved for.
  std::vector<long> c(k, -bound);
  while (true) {
    double partial = 0;
    for (size_t i = 0; i + 1 < k; ++i) partial += static_cast<double>(c[i]) * chi[i];
    const double best = std::nearbyint(-partial / chi[k - 1]);
    for (double delta : {0.0, -1.0, 1.0}) {
      const double last = best + delta;
      if (std::fabs(last) > static_cast<double>(bound)) continue;
      const double approx = partial + last * chi[k - 1];
      if (std::fabs(approx) > 2 * eps + 1e-12) continue;
      c[k - 1] = static_cast<long>(last);
      if (auto hit = try_candidate(combine(c), excluded, a, epsilon, MinimizationMethod::Exhaustive)) return hit;
    }
    size_t pos = k - 1;
    while (pos > 0 && c[pos - 1] == bound) {
      c[pos - 1] = -bound;
      --pos;
    }
    if (pos == 0) break;
    ++c[pos - 1];
  }
  return std::nullopt;
}

mpq_class abs_lower_bound(const CubicFieldElement& value) {
  for (long bits = 64; bits <= kMaxCertifyBits; bits *= 2) {
    const RationalInterval e = value.enclosure(bits);
    if (!e.contains_zero()) return e.mignitude();
  }
  throw PrecisionExhausted("abs_lower_bound: value not separated from zero");
}

}  // namespace

Sublattice::Sublattice(std::vector<IntVec3> basis) : basis_(std::move(basis)) {
  if (basis_.empty() || basis_.size() > 3) throw std::invalid_argument("Sublattice: basis must have 1..3 vectors");
  if (lattice::rank(as_columns(basis_)) != basis_.size()) {
    throw std::invalid_argument("Sublattice: basis vectors are linearly dependent");
  }
}

bool Sublattice::contains(const IntVec3& r) const {
  lattice::QMatrix m = as_columns(basis_);
  const size_t k = basis_.size();
  for (size_t i = 0; i < 3; ++i) m[i].push_back(mpq_class(static_cast<long>(r[i])));
  // Reduced row echelon form of [B | r].
  size_t row = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c <= k && row < 3; ++c) {
    size_t piv = row;
    while (piv < 3 && m[piv][c] == 0) ++piv;
    if (piv == 3) continue;
    std::swap(m[piv], m[row]);
    const mpq_class p = m[row][c];
    for (auto& x : m[row]) x /= p;
    for (size_t i = 0; i < 3; ++i) {
      if (i == row || m[i][c] == 0) continue;
      const mpq_class f = m[i][c];
      for (size_t j = 0; j <= k; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  for (size_t p : pivots)
    if (p == k) return false;  // inconsistent
  for (size_t i = 0; i < pivots.size(); ++i)
    if (m[i][k].get_den() != 1) return false;
  return true;
}

std::string to_string(MinimizationMethod m) { return m == MinimizationMethod::Reduction ? "reduction" : "exhaustive"; }

bool independence_over_Q(const std::array<CubicFieldElement, 3>& a) {
  lattice::QMatrix m;
  for (const auto& x : a) m.emplace_back(x.coefficients().begin(), x.coefficients().end());
  return lattice::rank(std::move(m)) == 3;
}

bool nonquadratic_check(const CubicPolynomial& p) {
  if (p.c0 == 0) return false;
  const std::int64_t c0 = std::llabs(p.c0);
  std::vector<std::int64_t> candidates;
  if (c0 == 1) {
    candidates = {1, -1};
  } else {
    for (std::int64_t d = 1; d * d <= c0; ++d) {
      if (c0 % d != 0) continue;
      for (std::int64_t x : {d, -d, c0 / d, -(c0 / d)}) candidates.push_back(x);
    }
  }
  for (std::int64_t x : candidates)
    if (p.evaluate(mpz_class(static_cast<long>(x))) == 0) return false;
  return true;
}

std::optional<RationalInterval> certify_below(const CubicFieldElement& value, const mpq_class& epsilon) {
  for (long bits = 64; bits <= kMaxCertifyBits; bits *= 2) {
    RationalInterval e = value.enclosure(bits);
    if (e.lo > -epsilon && e.hi < epsilon) return e;
    if (e.lo >= epsilon || e.hi <= -epsilon) return std::nullopt;
  }
  return std::nullopt;
}

long exhaustive_bound(const mpq_class& epsilon) {
  const double root = std::ceil(1.0 / std::sqrt(epsilon.get_d()));
  return std::max(50L, static_cast<long>(root));
}

MinimizationResult minimize_linear_form(const Sublattice& lattice, const ExclusionSet& excluded,
                                        const std::array<CubicFieldElement, 3>& a, const mpq_class& epsilon,
                                        Strategy strategy) {
  if (lattice.rank() <= 1) {
    throw NoAccumulation("minimize_linear_form: rank " + std::to_string(lattice.rank()) +
                         " sublattice; |r.a| has a positive minimum on a line");
  }
  if (epsilon <= 0) throw std::invalid_argument("minimize_linear_form: epsilon must be positive");
  if (!independence_over_Q(a)) throw std::invalid_argument("minimize_linear_form: coordinates are dependent over Q");
  for (const auto& s : excluded) {
    if (!lattice.contains(s)) throw std::invalid_argument("minimize_linear_form: excluded vector outside L");
  }
  if (strategy != Strategy::ExhaustiveOnly) {
    if (auto hit = by_reduction(lattice, excluded, a, epsilon)) return *hit;
  }
  if (strategy != Strategy::ReductionOnly) {
    if (auto hit = by_exhaustion(lattice, excluded, a, epsilon)) return *hit;
  }
  throw Error("minimize_linear_form: no certificate found below epsilon = " + epsilon.get_str());
}

std::vector<MinimizationResult> shrinking_sequence(const Sublattice& lattice, const ExclusionSet& excluded,
                                                   const std::array<CubicFieldElement, 3>& a,
                                                   const mpq_class& epsilon0, int count, const mpq_class& ratio) {
  std::vector<MinimizationResult> out;
  if (count <= 0) return out;
  if (ratio <= 1) throw std::invalid_argument("shrinking_sequence: ratio must exceed 1");
  ExclusionSet skip = excluded;
  mpq_class nominal = epsilon0;
  std::optional<mpq_class> previous;
  for (int i = 0; i < count; ++i, nominal /= ratio) {
    const mpq_class target = previous && *previous < nominal ? *previous : nominal;
    MinimizationResult hit = minimize_linear_form(lattice, skip, a, target);
    hit.epsilon = nominal;
    previous = abs_lower_bound(hit.value);
    skip.insert(hit.r);
    out.push_back(std::move(hit));
  }
  return out;
}

}  // namespace covering
