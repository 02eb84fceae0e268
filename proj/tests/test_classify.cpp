#include <doctest.h>

#include <random>
#include <set>

#include "covering/classify.hpp"
#include "covering/errors.hpp"
#include "covering/group.hpp"
#include "gen.hpp"

using namespace covering;
using lattice::ZMatrix;
using lattice::ZVector;

namespace {

const ZMatrix kRotation{{0, -1}, {1, 0}};
const ZMatrix kHeisenberg{{1, 1}, {0, 1}};
const ZMatrix kHyperbolic{{2, 1}, {1, 1}};
const ZMatrix kMinusI{{-1, 0}, {0, -1}};

mpz_class det(ZMatrix m) {
  // cofactor expansion, fine for n <= 4
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class acc = 0;
  for (size_t c = 0; c < n; ++c) {
    ZMatrix minor;
    for (size_t i = 1; i < n; ++i) {
      ZVector row;
      for (size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    const mpz_class term = m[0][c] * det(minor);
    acc += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return acc;
}

std::vector<ExtElement> ball(int n, int radius) {
  std::vector<ExtElement> out;
  const int side = 2 * radius + 1;
  int total = side;
  for (int i = 0; i < n; ++i) total *= side;
  for (int code = 0; code < total; ++code) {
    int c = code;
    ExtElement e{c % side - radius, ZVector(static_cast<size_t>(n))};
    c /= side;
    for (int i = 0; i < n; ++i, c /= side) e.r[static_cast<size_t>(i)] = c % side - radius;
    out.push_back(e);
  }
  return out;
}

// Number of distinct conjugates of x by elements of the box of the given radius.
size_t class_size(const LatticeExtensionGroup& g, const ExtElement& x, int radius) {
  std::set<std::pair<std::int64_t, std::vector<std::string>>> seen;
  for (const ExtElement& y : ball(g.n(), radius)) {
    const ExtElement c = g.conj(x, y);
    std::vector<std::string> key;
    for (const auto& v : c.r) key.push_back(v.get_str());
    seen.insert({c.m, key});
  }
  return seen.size();
}

}  // namespace

TEST_CASE("semidirect product law") {
  const LatticeExtensionGroup g(kHeisenberg);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto pick = [&] {
      return ExtElement{gen::integer(rng, -3, 3),
                        {static_cast<long>(gen::integer(rng, -4, 4)), static_cast<long>(gen::integer(rng, -4, 4))}};
    };
    const ExtElement a = pick(), b = pick(), c = pick();
    REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    REQUIRE(g.mul(a, g.inv(a)) == g.identity());
    REQUIRE(g.conj(a, g.identity()) == a);
  }
  CHECK_THROWS(LatticeExtensionGroup(ZMatrix{{2, 0}, {0, 1}}));
  CHECK_THROWS(LatticeExtensionGroup(ZMatrix{{1, 0}}));
}

TEST_CASE("from_twist matches the Inoue group law") {
  const InoueGroup inoue(spectral_data(canonical_matrix()));
  const LatticeExtensionGroup g = LatticeExtensionGroup::from_twist(inoue.twist());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const GroupElement a = gen::element(rng), b = gen::element(rng);
    const GroupElement p = inoue.mul(a, b);
    auto ext = [](const GroupElement& e) {
      return ExtElement{e.m, {static_cast<long>(e.r[0]), static_cast<long>(e.r[1]), static_cast<long>(e.r[2])}};
    };
    REQUIRE(g.mul(ext(a), ext(b)) == ext(p));
  }
}

TEST_CASE("characteristic polynomial agrees with det(kI - M)") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      ZMatrix m(static_cast<size_t>(n), ZVector(static_cast<size_t>(n)));
      for (auto& row : m)
        for (auto& x : row) x = static_cast<long>(gen::integer(rng, -3, 3));
      const auto coeffs = characteristic_polynomial(m);
      REQUIRE(coeffs.size() == static_cast<size_t>(n + 1));
      CHECK(coeffs.back() == 1);
      for (long k = -2; k <= 2; ++k) {
        ZMatrix shifted = m;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) shifted[i][j] = (i == j ? mpz_class(k) : mpz_class(0)) - m[i][j];
        mpz_class value = 0, power = 1;
        for (const auto& c : coeffs) {
          value += c * power;
          power *= k;
        }
        CHECK(value == det(shifted));
      }
    }
}

TEST_CASE("finite order test agrees with brute powers") {
  const std::vector<ZMatrix> cases{kRotation, kHeisenberg, kHyperbolic, kMinusI, {{0, -1}, {1, 1}},
                                   {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}}};
  for (const ZMatrix& m : cases) {
    const LatticeExtensionGroup g(m);
    std::optional<int> brute;
    for (int k = 1; k <= 24 && !brute; ++k)
      if (g.power(k) == lattice::identity(m.size())) brute = k;
    CHECK(finite_order_test(m) == brute);
  }
  CHECK(max_finite_order(2) == 6);
  CHECK(max_finite_order(4) == 12);
  CHECK_THROWS_AS(finite_order_test(lattice::identity(5)), Unsupported);
}

TEST_CASE("roots of unity test") {
  CHECK(all_eigenvalues_roots_of_unity(kRotation));
  CHECK(all_eigenvalues_roots_of_unity(kHeisenberg));
  CHECK_FALSE(all_eigenvalues_roots_of_unity(kHyperbolic));
  CHECK_FALSE(all_eigenvalues_roots_of_unity(ZMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}));
}

TEST_CASE("FC-center agrees with brute-force class sizes") {
  for (const ZMatrix& m : {kRotation, kHeisenberg, kHyperbolic, kMinusI}) {
    const LatticeExtensionGroup g(m);
    const SubgroupDescription fc = fc_center(g);
    for (const ExtElement& x : ball(2, 2)) {
      const bool bounded = class_size(g, x, 3) == class_size(g, x, 6);
      INFO(g.describe(), " element m=", x.m, " r=", x.r[0].get_str(), ",", x.r[1].get_str());
      CHECK(fc.contains(x) == bounded);
    }
  }
}

TEST_CASE("reference series") {
  SUBCASE("identity: abelian, class 1") {
    const FCSeriesReport r = upper_fc_series(LatticeExtensionGroup(lattice::identity(3)));
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].is_whole(3));
    CHECK(r.fc_nilpotent_class == 1);
  }
  SUBCASE("rotation of order 4: FC_1 of index 4, class 2") {
    const FCSeriesReport r = upper_fc_series(LatticeExtensionGroup(kRotation));
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms[0].m_modulus == 4);
    CHECK(r.terms[0].index(2) == mpz_class(4));
    CHECK(r.terms[1].is_whole(2));
    CHECK(r.fc_nilpotent_class == 2);
  }
  SUBCASE("Heisenberg: class 2") {
    const FCSeriesReport r = upper_fc_series(LatticeExtensionGroup(kHeisenberg));
    CHECK(r.fc_nilpotent_class == 2);
    CHECK_FALSE(r.terms[0].index(2).has_value());
  }
  SUBCASE("canonical Inoue group: trivial FC-center, stabilized") {
    const InoueGroup inoue(spectral_data(canonical_matrix()));
    const FCSeriesReport r = upper_fc_series(LatticeExtensionGroup::from_twist(inoue.twist()));
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].is_trivial());
    CHECK(r.stabilized);
    CHECK_FALSE(r.fc_nilpotent_class.has_value());
  }
  SUBCASE("trivial group") {
    const FCSeriesReport r = upper_fc_series(LatticeExtensionGroup::trivial());
    CHECK(r.fc_nilpotent_class == 0);
  }
}

TEST_CASE("FC-center is normal") {
  for (const ZMatrix& m : {kRotation, kHeisenberg, kMinusI, lattice::identity(3)}) {
    const LatticeExtensionGroup g(m);
    const SubgroupDescription fc = fc_center(g);
    for (const ExtElement& x : ball(g.n(), 1))
      if (fc.contains(x))
        for (const ExtElement& y : ball(g.n(), 1)) REQUIRE(fc.contains(g.conj(x, y)));
  }
}

TEST_CASE("upper FC-series is ascending") {
  for (const ZMatrix& m : {kRotation, kHeisenberg, kHyperbolic, kMinusI}) {
    const FCSeriesReport r = upper_fc_series(LatticeExtensionGroup(m));
    for (size_t i = 1; i < r.terms.size(); ++i) CHECK(r.terms[i].contains(r.terms[i - 1]));
  }
}

TEST_CASE("growth and Varopoulos classification") {
  using K = GrowthClass::Kind;
  const auto trivial = classify_varopoulos(LatticeExtensionGroup::trivial());
  CHECK(trivial.kind == K::Finite);
  CHECK(trivial.varopoulos);
  for (int rank = 1; rank <= 4; ++rank) {
    const auto g = classify_varopoulos(LatticeExtensionGroup::free_abelian(rank));
    CHECK(g.kind == K::Polynomial);
    CHECK(g.degree == rank);
    CHECK(g.varopoulos == (rank <= 2));
  }
  const auto rot = classify_varopoulos(LatticeExtensionGroup(kRotation));
  CHECK(rot.kind == K::Polynomial);
  CHECK(rot.degree == 3);
  CHECK_FALSE(rot.varopoulos);
  const auto heis = classify_varopoulos(LatticeExtensionGroup(kHeisenberg));
  CHECK(heis.degree == 4);
  CHECK(classify_varopoulos(LatticeExtensionGroup(kHyperbolic)).kind == K::Exponential);
  CHECK(classify_varopoulos(LatticeExtensionGroup(ZMatrix{})).degree == 1);  // n = 0 presents Z
}

TEST_CASE("Hermite normal form") {
  const ZMatrix h = hermite_normal_form({{2, 4}, {6, 8}, {0, 0}});
  CHECK(h.size() == 2);
  CHECK(h[0][0] > 0);
  CHECK(h[1][0] == 0);
  CHECK(abs(h[0][0] * h[1][1]) == 8);
  CHECK(hermite_normal_form({{3, 0}, {0, 3}}) == hermite_normal_form({{3, 3}, {0, 3}}));
}

TEST_CASE("the canonical twist has infinite order") {
  const auto& a = canonical_matrix().entries();
  ZMatrix m(3, ZVector(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
  CHECK_FALSE(finite_order_test(m).has_value());
  CHECK_FALSE(all_eigenvalues_roots_of_unity(m));
}

TEST_CASE("finite-order twists grow like Z^(n+1)") {
  const ZMatrix order6{{0, -1}, {1, 1}};
  const ZMatrix swap3{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  for (const ZMatrix& m : {kRotation, kMinusI, order6, swap3}) {
    REQUIRE(finite_order_test(m).has_value());
    const int n = static_cast<int>(m.size());
    CHECK(classify_varopoulos(LatticeExtensionGroup(m)) == classify_varopoulos(LatticeExtensionGroup::free_abelian(n + 1)));
  }
}
