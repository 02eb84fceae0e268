#include "covering/classify.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "covering/errors.hpp"

namespace covering {

using lattice::ZMatrix;
using lattice::ZVector;

namespace {

mpq_class determinant(const ZMatrix& m) {
  const size_t n = m.size();
  lattice::QMatrix a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  mpq_class det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

ZVector mat_vec(const ZMatrix& m, const ZVector& v) {
  ZVector out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

ZMatrix matrix_power(ZMatrix base, std::uint64_t k) {
  ZMatrix result = lattice::identity(base.size());
  while (k) {
    if (k & 1) result = lattice::multiply(result, base);
    k >>= 1;
    if (k) base = lattice::multiply(base, base);
  }
  return result;
}

ZMatrix minus_identity(ZMatrix m) {
  for (size_t i = 0; i < m.size(); ++i) m[i][i] -= 1;
  return m;
}

bool is_identity(const ZMatrix& m) { return m == lattice::identity(m.size()); }

bool is_zero(const ZMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

// Columns j0..j1 of `b` as row vectors.
ZMatrix columns(const ZMatrix& b, size_t j0, size_t j1) {
  ZMatrix out;
  for (size_t j = j0; j < j1; ++j) {
    ZVector col(b.size());
    for (size_t i = 0; i < b.size(); ++i) col[i] = b[i][j];
    out.push_back(std::move(col));
  }
  return out;
}

// Square matrix whose columns are the given vectors.
ZMatrix from_columns(const ZMatrix& cols, size_t n) {
  ZMatrix b(n, ZVector(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < n; ++i) b[i][j] = cols[j][i];
  return b;
}

void check_supported(int n) {
  if (n > 4) throw Unsupported("matrices of size " + std::to_string(n) + " > 4 are not supported");
}

// Polynomials as coefficient lists, lowest degree first.
using Poly = std::vector<mpz_class>;

Poly cyclotomic(int k) {
  switch (k) {
    case 1: return {-1, 1};
    case 2: return {1, 1};
    case 3: return {1, 1, 1};
    case 4: return {1, 0, 1};
    case 5: return {1, 1, 1, 1, 1};
    case 6: return {1, -1, 1};
    case 8: return {1, 0, 0, 0, 1};
    case 10: return {1, -1, 1, -1, 1};
    case 12: return {1, 0, -1, 0, 1};
  }
  throw std::logic_error("cyclotomic: unexpected index");
}

// Exact division by a monic divisor; nullopt when the remainder is nonzero.
std::optional<Poly> divide_exact(Poly num, const Poly& den) {
  const size_t dn = den.size() - 1;
  if (num.size() < den.size()) return std::nullopt;
  Poly quot(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    const mpz_class c = num[i];
    quot[i - dn] = c;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (size_t i = 0; i < dn; ++i)
    if (num[i] != 0) return std::nullopt;
  return quot;
}

std::string vector_string(const ZVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

}  // namespace

ZMatrix hermite_normal_form(ZMatrix rows) {
  if (rows.empty()) return rows;
  const size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r.. until one nonzero entry remains.
    while (true) {
      size_t best = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      for (size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

LatticeExtensionGroup::LatticeExtensionGroup(ZMatrix m) : m_(std::move(m)) {
  for (const auto& row : m_)
    if (row.size() != m_.size()) throw std::invalid_argument("LatticeExtensionGroup: M must be square");
  const mpq_class det = determinant(m_);
  if (det != 1 && det != -1) throw std::invalid_argument("LatticeExtensionGroup: det M must be +-1");
  m_inv_ = lattice::unimodular_inverse(m_);
}

LatticeExtensionGroup LatticeExtensionGroup::trivial() {
  LatticeExtensionGroup g;
  g.trivial_ = true;
  return g;
}

LatticeExtensionGroup LatticeExtensionGroup::free_abelian(int rank) {
  if (rank < 0) throw std::invalid_argument("free_abelian: negative rank");
  if (rank == 0) return trivial();
  return LatticeExtensionGroup(lattice::identity(static_cast<size_t>(rank - 1)));
}

LatticeExtensionGroup LatticeExtensionGroup::from_twist(const IntMat3& t) {
  ZMatrix m(3, ZVector(3));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) m[i][j] = static_cast<long>(t[i][j]);
  return LatticeExtensionGroup(std::move(m));
}

ZMatrix LatticeExtensionGroup::power(std::int64_t k) const {
  if (k >= 0) return matrix_power(m_, static_cast<std::uint64_t>(k));
  return matrix_power(m_inv_, static_cast<std::uint64_t>(-(k + 1)) + 1);
}

ExtElement LatticeExtensionGroup::mul(const ExtElement& g, const ExtElement& h) const {
  if (trivial_) return {};
  ZVector r = mat_vec(power(-h.m), g.r);
  for (size_t i = 0; i < r.size(); ++i) r[i] += h.r[i];
  return {g.m + h.m, std::move(r)};
}

ExtElement LatticeExtensionGroup::inv(const ExtElement& g) const {
  if (trivial_) return {};
  ZVector r = mat_vec(power(g.m), g.r);
  for (auto& x : r) x = -x;
  return {-g.m, std::move(r)};
}

ExtElement LatticeExtensionGroup::conj(const ExtElement& s, const ExtElement& g) const {
  return mul(mul(inv(g), s), g);
}

std::vector<ExtElement> LatticeExtensionGroup::generators() const {
  if (trivial_) return {};
  std::vector<ExtElement> out{{1, ZVector(m_.size(), 0)}};
  for (size_t i = 0; i < m_.size(); ++i) {
    ExtElement e = identity();
    e.r[i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

std::string LatticeExtensionGroup::describe() const {
  if (trivial_) return "1";
  std::string s = "Z^" + std::to_string(n()) + " x| Z, M = [";
  for (size_t i = 0; i < m_.size(); ++i) s += (i ? ", " : "") + vector_string(m_[i]);
  return s + "]";
}

SubgroupDescription SubgroupDescription::whole(int n) {
  return {lattice::identity(static_cast<size_t>(n)), 1};
}

SubgroupDescription SubgroupDescription::make(ZMatrix basis, std::int64_t m_modulus) {
  if (m_modulus < 0) throw std::invalid_argument("SubgroupDescription: negative modulus");
  return {hermite_normal_form(std::move(basis)), m_modulus};
}

bool SubgroupDescription::contains(const ExtElement& g) const {
  if (m_modulus == 0 ? g.m != 0 : g.m % m_modulus != 0) return false;
  ZVector r = g.r;
  for (const auto& row : lattice_basis) {
    size_t p = 0;
    while (row[p] == 0) ++p;
    if (!mpz_divisible_p(r[p].get_mpz_t(), row[p].get_mpz_t())) return false;
    const mpz_class q = r[p] / row[p];
    for (size_t j = 0; j < r.size(); ++j) r[j] -= q * row[j];
  }
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool SubgroupDescription::contains(const SubgroupDescription& other) const {
  if (other.m_modulus != 0) {
    if (m_modulus == 0 || other.m_modulus % m_modulus != 0) return false;
  }
  for (const auto& row : other.lattice_basis)
    if (!contains(ExtElement{0, row})) return false;
  return true;
}

bool SubgroupDescription::is_whole(int n) const { return *this == whole(n); }

std::optional<mpz_class> SubgroupDescription::index(int n) const {
  if (m_modulus == 0 || static_cast<int>(lattice_basis.size()) != n) return std::nullopt;
  mpz_class idx = static_cast<long>(m_modulus);
  for (size_t i = 0; i < lattice_basis.size(); ++i) idx *= lattice_basis[i][i];
  return idx;
}

std::string SubgroupDescription::describe() const {
  std::string lat = "{";
  for (size_t i = 0; i < lattice_basis.size(); ++i) lat += (i ? ", " : "") + vector_string(lattice_basis[i]);
  lat += "}";
  const std::string cond = m_modulus == 0 ? "m = 0" : m_modulus == 1 ? "m any" : std::to_string(m_modulus) + " | m";
  return "{(m, r) : " + cond + ", r in span" + lat + "}";
}

std::string GrowthClass::describe() const {
  switch (kind) {
    case Kind::Finite: return "finite";
    case Kind::Polynomial: return "polynomial(" + std::to_string(degree) + ")";
    case Kind::Exponential: return "exponential";
  }
  return "";
}

int max_finite_order(int n) {
  check_supported(n);
  static constexpr int kOrders[] = {1, 2, 6, 6, 12};
  return kOrders[n];
}

int unipotent_exponent(int n) {
  check_supported(n);
  static constexpr int kExponents[] = {1, 2, 12, 12, 120};
  return kExponents[n];
}

std::optional<int> finite_order_test(const ZMatrix& m) {
  const int n = static_cast<int>(m.size());
  check_supported(n);
  ZMatrix p = lattice::identity(m.size());
  for (int k = 1; k <= max_finite_order(n); ++k) {
    p = lattice::multiply(p, m);
    if (is_identity(p)) return k;
  }
  return std::nullopt;
}

std::vector<mpz_class> characteristic_polynomial(const ZMatrix& m) {
  // Faddeev-LeVerrier: every division below is exact.
  const size_t n = m.size();
  std::vector<mpz_class> c(n + 1, 0);
  c[n] = 1;
  ZMatrix mk(n, ZVector(n, 0));
  for (size_t k = 1; k <= n; ++k) {
    mk = lattice::multiply(m, mk);
    for (size_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    const ZMatrix amk = lattice::multiply(m, mk);
    mpz_class trace = 0;
    for (size_t i = 0; i < n; ++i) trace += amk[i][i];
    c[n - k] = -trace / static_cast<long>(k);
  }
  return c;
}

bool all_eigenvalues_roots_of_unity(const ZMatrix& m) {
  const int n = static_cast<int>(m.size());
  check_supported(n);
  Poly p = characteristic_polynomial(m);
  for (int k : {1, 2, 3, 4, 6, 5, 8, 10, 12}) {
    const Poly phi = cyclotomic(k);
    if (static_cast<int>(phi.size()) - 1 > n) continue;
    while (p.size() > 1) {
      auto q = divide_exact(p, phi);
      if (!q) break;
      p = std::move(*q);
    }
  }
  return p.size() == 1;
}

FCSeriesReport upper_fc_series(const LatticeExtensionGroup& g, int max_steps) {
  FCSeriesReport rep;
  if (g.is_trivial()) {
    rep.terms.push_back(SubgroupDescription::whole(0));
    rep.stabilized = true;
    rep.fc_nilpotent_class = 0;
    return rep;
  }
  const size_t n = static_cast<size_t>(g.n());
  check_supported(g.n());
  const SubgroupDescription whole = SubgroupDescription::whole(g.n());

  // Invariant: the current term is {(0, r) : r in span of the first k columns
  // of b}; b is unimodular and b^-1 M b is block upper triangular.
  ZMatrix b = lattice::identity(n);
  size_t k = 0;
  auto push = [&](SubgroupDescription t) {
    rep.terms.push_back(std::move(t));
    return static_cast<int>(rep.terms.size()) >= max_steps;
  };
  auto reach_whole = [&] {
    rep.terms.push_back(whole);
    rep.stabilized = true;
    rep.fc_nilpotent_class = static_cast<int>(rep.terms.size());
  };

  while (true) {
    // The quotient by the current term is Z^q x|_{M_Q} Z.
    const size_t q = n - k;
    const ZMatrix mb = lattice::multiply(lattice::unimodular_inverse(b), lattice::multiply(g.matrix(), b));
    ZMatrix mq(q, ZVector(q));
    for (size_t i = 0; i < q; ++i)
      for (size_t j = 0; j < q; ++j) mq[i][j] = mb[k + i][k + j];

    if (auto order = finite_order_test(mq)) {
      if (*order > 1) {
        if (push(SubgroupDescription::make(lattice::identity(n), *order))) return rep;
      }
      // Past this point the quotient is finite cyclic or trivial, hence FC.
      reach_whole();
      return rep;
    }
    const ZMatrix nq = minus_identity(matrix_power(mq, static_cast<std::uint64_t>(unipotent_exponent(static_cast<int>(q)))));
    const lattice::KernelSplit split = lattice::integer_kernel(nq, q);
    if (split.kernel.empty()) {
      if (rep.terms.empty()) rep.terms.push_back(SubgroupDescription::trivial());
      rep.stabilized = true;
      return rep;
    }
    // New basis [K, C Kq, C Cq] with C the trailing columns of b.
    const ZMatrix c = columns(b, k, n);
    ZMatrix cols = columns(b, 0, k);
    auto lift = [&](const ZVector& y) {
      ZVector v(n, 0);
      for (size_t j = 0; j < q; ++j)
        for (size_t i = 0; i < n; ++i) v[i] += c[j][i] * y[j];
      return v;
    };
    for (const auto& y : split.kernel) cols.push_back(lift(y));
    const size_t k_next = cols.size();
    for (const auto& y : split.complement) cols.push_back(lift(y));
    b = from_columns(cols, n);
    k = k_next;
    if (push(SubgroupDescription::make(columns(b, 0, k), 0))) return rep;
  }
}

SubgroupDescription fc_center(const LatticeExtensionGroup& g) { return upper_fc_series(g, 1).terms.front(); }

GrowthClass classify_varopoulos(const LatticeExtensionGroup& g) {
  GrowthClass out;
  if (g.is_trivial()) {
    out.kind = GrowthClass::Kind::Finite;
    out.varopoulos = true;
    return out;
  }
  const int n = g.n();
  check_supported(n);
  if (finite_order_test(g.matrix())) {
    out.kind = GrowthClass::Kind::Polynomial;
    out.degree = n + 1;
  } else if (all_eigenvalues_roots_of_unity(g.matrix())) {
    // M^L = I + N is unipotent; the finite-index subgroup Z^n x|_{M^L} Z is
    // nilpotent, and Bass-Guivarc'h sums k * rank of the k-th lower central
    // quotient: the abelianization has rank 1 + (n - rk N), and gamma_k for
    // k >= 2 is commensurable with N^(k-1) Z^n.
    const ZMatrix nil = minus_identity(matrix_power(g.matrix(), static_cast<std::uint64_t>(unipotent_exponent(n))));
    std::vector<int> ranks{n};
    ZMatrix p = lattice::identity(static_cast<size_t>(n));
    while (ranks.back() > 0) {
      p = lattice::multiply(p, nil);
      ranks.push_back(static_cast<int>(lattice::rank(p)));
      if (is_zero(p)) break;
    }
    int degree = 1 + (n - ranks[1]);
    for (size_t k = 2; k < ranks.size(); ++k) degree += static_cast<int>(k) * (ranks[k - 1] - ranks[k]);
    out.kind = GrowthClass::Kind::Polynomial;
    out.degree = degree;
  } else {
    out.kind = GrowthClass::Kind::Exponential;
  }
  out.varopoulos = out.kind == GrowthClass::Kind::Finite ||
                   (out.kind == GrowthClass::Kind::Polynomial && out.degree <= 2);
  return out;
}

}  // namespace covering
