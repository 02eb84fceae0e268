#pragma once

// Small exact integer lattice toolkit: LLL, rank, integer kernels.

#include <gmpxx.h>

#include <vector>

namespace covering::lattice {

using ZVector = std::vector<mpz_class>;
/// Row-major; each row is one vector.
using ZMatrix = std::vector<ZVector>;
using QMatrix = std::vector<std::vector<mpq_class>>;

/// LLL reduction of the rows (assumed linearly independent) with exact
/// rational Gram-Schmidt. `delta` in (1/4, 1].
ZMatrix lll_reduce(ZMatrix basis, const mpq_class& delta = mpq_class(99, 100));

/// True iff rows satisfy the size and Lovasz conditions for `delta`.
bool is_lll_reduced(const ZMatrix& basis, const mpq_class& delta = mpq_class(99, 100));

std::size_t rank(QMatrix m);
std::size_t rank(const ZMatrix& m);

struct KernelSplit {
  /// Basis of {x in Z^n : M x = 0}.
  ZMatrix kernel;
  /// Vectors completing `kernel` to a basis of Z^n; kernel rows come first
  /// in that basis.
  ZMatrix complement;
};

/// Integer kernel of an r x n matrix via unimodular column reduction.
KernelSplit integer_kernel(const ZMatrix& m, std::size_t columns);

/// Exact inverse of a square integer matrix with determinant +-1.
ZMatrix unimodular_inverse(const ZMatrix& m);

ZMatrix identity(std::size_t n);
ZMatrix multiply(const ZMatrix& a, const ZMatrix& b);
ZMatrix transpose(const ZMatrix& a);

}  // namespace covering::lattice
