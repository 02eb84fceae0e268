#include "covering/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace covering::lattice {

namespace {

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  mpq_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramSchmidt {
  QMatrix star;                      // b*_i
  std::vector<mpq_class> norms;      // |b*_i|^2
  std::vector<std::vector<mpq_class>> mu;
};

GramSchmidt gram_schmidt(const ZMatrix& b) {
  const size_t n = b.size();
  GramSchmidt gs;
  gs.star.resize(n);
  gs.norms.resize(n);
  gs.mu.assign(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<mpq_class> v(b[i].begin(), b[i].end());
    for (size_t j = 0; j < i; ++j) {
      std::vector<mpq_class> bi(b[i].begin(), b[i].end());
      gs.mu[i][j] = dot(bi, gs.star[j]) / gs.norms[j];
      for (size_t c = 0; c < v.size(); ++c) v[c] -= gs.mu[i][j] * gs.star[j][c];
    }
    gs.norms[i] = dot(v, v);
    if (gs.norms[i] == 0) throw std::invalid_argument("lll_reduce: rows are linearly dependent");
    gs.star[i] = std::move(v);
  }
  return gs;
}

mpz_class round_nearest(const mpq_class& q) {
  mpq_class shifted = q + mpq_class(1, 2);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

}  // namespace

ZMatrix lll_reduce(ZMatrix b, const mpq_class& delta) {
  const size_t n = b.size();
  if (n <= 1) return b;
  size_t k = 1;
  GramSchmidt gs = gram_schmidt(b);
  while (k < n) {
    for (size_t jj = k; jj-- > 0;) {
      const mpz_class q = round_nearest(gs.mu[k][jj]);
      if (q == 0) continue;
      for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[jj][c];
      for (size_t i = 0; i < jj; ++i) gs.mu[k][i] -= q * gs.mu[jj][i];
      gs.mu[k][jj] -= q;
    }
    if (gs.norms[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = gram_schmidt(b);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return b;
}

bool is_lll_reduced(const ZMatrix& b, const mpq_class& delta) {
  if (b.size() <= 1) return true;
  const GramSchmidt gs = gram_schmidt(b);
  const mpq_class half(1, 2);
  for (size_t i = 1; i < b.size(); ++i) {
    for (size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > half) return false;
    if (gs.norms[i] < (delta - gs.mu[i][i - 1] * gs.mu[i][i - 1]) * gs.norms[i - 1]) return false;
  }
  return true;
}

std::size_t rank(QMatrix m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const mpq_class f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::size_t rank(const ZMatrix& m) {
  QMatrix q;
  for (const auto& row : m) q.emplace_back(row.begin(), row.end());
  return rank(std::move(q));
}

KernelSplit integer_kernel(const ZMatrix& m, std::size_t n) {
  ZMatrix work = m;                // r x n, modified by column operations
  ZMatrix u = identity(n);         // columns track the same operations
  auto col_op = [&](size_t dst, size_t src, const mpz_class& q) {  // col dst -= q col src
    for (auto& row : work) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto col_swap = [&](size_t a, size_t b) {
    for (auto& row : work) std::swap(row[a], row[b]);
    for (auto& row : u) std::swap(row[a], row[b]);
  };
  size_t pivot = 0;
  for (size_t i = 0; i < work.size() && pivot < n; ++i) {
    auto& row = work[i];
    while (true) {
      // Smallest nonzero |entry| among columns >= pivot.
      size_t best = n;
      for (size_t j = pivot; j < n; ++j)
        if (row[j] != 0 && (best == n || abs(row[j]) < abs(row[best]))) best = j;
      if (best == n) break;
      bool done = true;
      for (size_t j = pivot; j < n; ++j) {
        if (j == best || row[j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), row[j].get_mpz_t(), row[best].get_mpz_t());
        col_op(j, best, q);
        if (row[j] != 0) done = false;
      }
      if (done) {
        col_swap(pivot, best);
        ++pivot;
        break;
      }
    }
  }
  KernelSplit out;
  for (size_t j = 0; j < n; ++j) {
    ZVector col(n);
    for (size_t i = 0; i < n; ++i) col[i] = u[i][j];
    (j >= pivot ? out.kernel : out.complement).push_back(std::move(col));
  }
  return out;
}

ZMatrix unimodular_inverse(const ZMatrix& m) {
  const size_t n = m.size();
  QMatrix a(n, std::vector<mpq_class>(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("unimodular_inverse: singular matrix");
    std::swap(a[piv], a[c]);
    const mpq_class p = a[c][c];
    for (auto& x : a[c]) x /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  ZMatrix inv(n, ZVector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const mpq_class& q = a[i][n + j];
      if (q.get_den() != 1) throw std::invalid_argument("unimodular_inverse: determinant is not +-1");
      inv[i][j] = q.get_num();
    }
  return inv;
}

ZMatrix identity(std::size_t n) {
  ZMatrix id(n, ZVector(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

ZMatrix multiply(const ZMatrix& a, const ZMatrix& b) {
  const size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  ZMatrix c(n, ZVector(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < p; ++j)
      for (size_t t = 0; t < k; ++t) c[i][j] += a[i][t] * b[t][j];
  return c;
}

ZMatrix transpose(const ZMatrix& a) {
  if (a.empty()) return {};
  ZMatrix t(a[0].size(), ZVector(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace covering::lattice
