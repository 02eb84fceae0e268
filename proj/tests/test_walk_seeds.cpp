#include <doctest.h>

#include "covering/walk.hpp"

using namespace covering;

// Full-size walks: the empirical label must not depend on the seed.
TEST_CASE("labels are stable across five seeds") {
  for (const char* name : {"z", "z2", "z3"}) {
    const WalkGroup g = WalkGroup::named(name);
    const EmpiricalLabel expected = std::string(name) == "z3" ? EmpiricalLabel::TransientLike : EmpiricalLabel::RecurrentLike;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      WalkConfig c = default_walk_config(g, seed);
      REQUIRE(c.trials == 100000);
      REQUIRE(c.steps == 10000);
      const WalkStats s = simulate(c);
      INFO(name, " seed ", seed, " slope ", s.exponent ? s.exponent->slope : 0.0);
      CHECK(empirical_label(s) == expected);
    }
  }
}
