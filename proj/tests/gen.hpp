#pragma once

// Small hand-rolled generators for the property tests.

#include <gmpxx.h>

#include <cstdint>
#include <random>

#include "covering/algebraic.hpp"
#include "covering/group.hpp"

namespace gen {

inline std::int64_t integer(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// p/q with |p| <= num, 1 <= q <= den
inline mpq_class rational(std::mt19937_64& rng, std::int64_t num = 50, std::int64_t den = 20) {
  mpq_class q(mpz_class(static_cast<long>(integer(rng, -num, num))), mpz_class(static_cast<long>(integer(rng, 1, den))));
  q.canonicalize();
  return q;
}

inline covering::CubicFieldElement field_element(std::mt19937_64& rng, const covering::FieldPtr& f) {
  return f->element(rational(rng), rational(rng), rational(rng));
}

inline covering::IntVec3 vec(std::mt19937_64& rng, std::int64_t radius) {
  return {integer(rng, -radius, radius), integer(rng, -radius, radius), integer(rng, -radius, radius)};
}

inline covering::GroupElement element(std::mt19937_64& rng, std::int64_t m_radius = 3, std::int64_t r_radius = 5) {
  return {integer(rng, -m_radius, m_radius), vec(rng, r_radius)};
}

}  // namespace gen
