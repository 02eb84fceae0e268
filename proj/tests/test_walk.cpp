#include <doctest.h>

#include <cmath>
#include <map>

#include "covering/errors.hpp"
#include "covering/walk.hpp"

using namespace covering;

namespace {

// Exact return probabilities of the lazy walk on Z^k with steps +-e_i, by
// dynamic programming over the (small) reachable box.
std::vector<double> dp_returns(int k, int steps) {
  std::map<std::vector<int>, double> dist{{std::vector<int>(static_cast<size_t>(k), 0), 1.0}};
  std::vector<double> out{1.0};
  const double move = 1.0 / (4.0 * k);
  for (int t = 1; t <= steps; ++t) {
    std::map<std::vector<int>, double> next;
    for (const auto& [x, p] : dist) {
      next[x] += 0.5 * p;
      for (int i = 0; i < k; ++i)
        for (int s : {-1, 1}) {
          auto y = x;
          y[static_cast<size_t>(i)] += s;
          next[y] += move * p;
        }
    }
    dist.swap(next);
    out.push_back(dist[std::vector<int>(static_cast<size_t>(k), 0)]);
  }
  return out;
}

void compare_with_dp(const std::string& group, int k) {
  WalkConfig c;
  c.group = WalkGroup::named(group);
  c.steps = 64;
  c.trials = 200000;
  c.seed = 99;
  const WalkStats s = simulate(c);
  const auto exact = dp_returns(k, 64);
  REQUIRE(s.return_counts.size() == 65);
  CHECK(s.return_counts[0] == 200000u);
  for (int t = 1; t <= 64; ++t) {
    const double p = exact[static_cast<size_t>(t)];
    const double freq = static_cast<double>(s.return_counts[static_cast<size_t>(t)]) / c.trials;
    const double se = std::sqrt(p * (1 - p) / c.trials);
    INFO(group, " t=", t, " p=", p, " freq=", freq);
    CHECK(std::fabs(freq - p) <= 3 * se);
  }
}

}  // namespace

TEST_CASE("return frequencies match the exact DP on Z") { compare_with_dp("z", 1); }
TEST_CASE("return frequencies match the exact DP on Z^2") { compare_with_dp("z2", 2); }

TEST_CASE("two-step return probability on the Inoue group") {
  WalkConfig c;
  c.group = WalkGroup::named("inoue");
  c.steps = 2;
  c.trials = 400000;
  c.seed = 5;
  const WalkStats s = simulate(c);
  const double p = 0.25 + 8.0 / 256.0;  // hold twice, or a generator and its inverse
  const double freq = static_cast<double>(s.return_counts[2]) / c.trials;
  CHECK(std::fabs(freq - p) <= 4 * std::sqrt(p * (1 - p) / c.trials));
}

TEST_CASE("a single non-lazy step never returns") {
  for (const char* g : {"z", "z3", "inoue"}) {
    WalkConfig c;
    c.group = WalkGroup::named(g);
    c.steps = 1;
    c.trials = 1000;
    c.lazy = false;
    const WalkStats s = simulate(c);
    CHECK(s.return_counts[1] == 0u);
    CHECK(s.mean_squared_distance[1] == 1.0);
  }
}

TEST_CASE("the trivial group returns every time and fits slope 0") {
  WalkConfig c = default_walk_config(WalkGroup::named("1"), 9);
  const WalkStats s = simulate(c);
  for (auto n : s.return_counts) REQUIRE(n == static_cast<std::uint64_t>(c.trials));
  REQUIRE(s.exponent.has_value());
  CHECK(s.exponent->slope == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mean squared distance grows linearly on Z") {
  WalkConfig c;
  c.group = WalkGroup::named("z");
  c.steps = 200;
  c.trials = 50000;
  c.seed = 17;
  const WalkStats s = simulate(c);
  // lazy: E|X_t|^2 = t/2
  CHECK(s.mean_squared_distance[0] == 0.0);
  CHECK(std::fabs(s.mean_squared_distance[200] / 100.0 - 1.0) < 0.03);
}

TEST_CASE("simple walk on Z^2 returns only at even times") {
  WalkConfig c;
  c.group = WalkGroup::named("z2");
  c.steps = 50;
  c.trials = 5000;
  c.seed = 1;
  c.lazy = false;
  const WalkStats s = simulate(c);
  for (size_t t = 1; t < s.return_counts.size(); t += 2) CHECK(s.return_counts[t] == 0u);
  CHECK(s.return_counts[2] > 0u);
}

TEST_CASE("results do not depend on the thread count") {
  WalkConfig c;
  c.group = WalkGroup::named("inoue");
  c.steps = 300;
  c.trials = 9000;
  c.seed = 3;
  const WalkStats one = simulate(c);
  c.threads = 3;
  const WalkStats three = simulate(c);
  CHECK(one.return_counts == three.return_counts);
  CHECK(one.mean_squared_distance == three.mean_squared_distance);
  c.seed = 4;
  CHECK(simulate(c).return_counts != one.return_counts);
}

TEST_CASE("configuration errors") {
  WalkConfig c;
  c.group = WalkGroup::named("z2");
  c.steps = 0;
  CHECK_THROWS_AS(simulate(c), std::invalid_argument);
  c.steps = 10;
  c.generators = {{0, {1, 0}}};  // not symmetric
  CHECK_THROWS_AS(simulate(c), std::invalid_argument);
  CHECK_THROWS(WalkGroup::named("q8"));
}

TEST_CASE("standard generators") {
  CHECK(standard_generators(WalkGroup::named("z3")).size() == 6);
  CHECK(standard_generators(WalkGroup::named("inoue")).size() == 8);
  CHECK(standard_generators(WalkGroup::named("1")).size() == 1);
}

TEST_CASE("exponent fit recovers a planted power law") {
  WalkStats s;
  s.steps = 4096;
  s.trials = 10000000;
  s.return_counts.assign(4097, 0);
  for (std::int64_t t = 0; t <= 4096; t += 2)
    s.return_counts[static_cast<size_t>(t)] =
        static_cast<std::uint64_t>(std::llround(s.trials * 0.6 * std::pow(std::max<double>(1.0, static_cast<double>(t)), -1.5)));
  const ExponentEstimate e = estimate_exponent(s);
  CHECK(std::fabs(e.slope + 1.5) < 0.01);
  CHECK(e.ci_low <= e.slope);
  CHECK(e.slope <= e.ci_high);
  CHECK(e.bins >= 3);

  WalkStats sparse = s;
  std::fill(sparse.return_counts.begin() + 1, sparse.return_counts.end(), 0);
  CHECK_THROWS_AS(estimate_exponent(sparse), NoEstimate);
}

TEST_CASE("labels and cross-check on small walks") {
  WalkConfig c = default_walk_config(WalkGroup::named("z"), 1);
  c.steps = 2000;
  c.trials = 4000;
  const WalkStats z = simulate(c);
  CHECK(empirical_label(z) == EmpiricalLabel::RecurrentLike);
  const CrossCheck cz = cross_check(WalkGroup::named("z"), z);
  CHECK(cz.predicted_varopoulos);
  CHECK(cz.agree);

  const CrossCheck ci = cross_check(WalkGroup::named("inoue"), 2);
  CHECK_FALSE(ci.predicted_varopoulos);
  CHECK(ci.empirical == EmpiricalLabel::TransientLike);
  CHECK(ci.agree);

  const CrossCheck ct = cross_check(WalkGroup::named("1"), 2);
  CHECK(ct.empirical == EmpiricalLabel::RecurrentLike);
  CHECK(ct.agree);
}
