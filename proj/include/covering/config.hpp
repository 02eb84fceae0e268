#pragma once

// Suite configuration read from a TOML subset: [section] headers, key = value
// with integers, floats, strings, booleans and (nested) arrays, # comments.
// Defaults reproduce the canonical experiment.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "covering/json_io.hpp"

namespace covering {

struct TomlValue {
  enum class Kind { Integer, Float, String, Boolean, Array };
  Kind kind = Kind::Integer;
  std::int64_t integer = 0;
  double floating = 0;
  std::string text;  // string contents, or the literal as written for numbers
  bool boolean = false;
  std::vector<TomlValue> items;
  int line = 0;
};

struct TomlEntry {
  TomlValue value;
  int line = 0;
};

/// section -> key -> value; keys before any header live in section "".
using TomlDocument = std::map<std::string, std::map<std::string, TomlEntry>>;

/// Throws ConfigError with the offending line.
TomlDocument parse_toml(const std::string& text);

/// Exact value of "0.001", "1e-9", "-2.5E3" or "1/1000".
std::optional<mpq_class> parse_rational(const std::string& text);

struct SpectralSettings {
  mpq_class width{mpq_class("1/1000000000000000000000000000000")};
  int search_bound = 2;
};

struct GroupSettings {
  int random_checks = 10000;
  int homomorphism_checks = 1000;
  int conjugation_radius = 3;
  std::vector<std::int64_t> conjugation_exponents{1, 2, 3};
  /// Box |m| <= radius, ||r||_inf <= radius for the FC and period scans.
  int element_radius = 3;
  std::uint64_t seed = 7;
};

struct DiophantineSettings {
  mpq_class epsilon0{1, 1000};
  int count = 3;
  mpq_class ratio{1000};
};

struct HullSettings {
  /// Absent: the least d with alpha^d > 2.
  std::optional<std::int64_t> d;
  std::vector<int> radii{0, 1, 2, 5};
  mpq_class sup_width{mpq_class("1/100000000000000000000")};
  mpq_class hull_epsilon{1, 1000000};
  std::int64_t uniqueness_d = 1;
  mpq_class uniqueness_epsilon{1, 10000};
  int witnesses = 3;
};

struct ClassifySettings {
  int max_steps = 8;
  int consistency_radius = 3;
};

struct WalkSettings {
  std::uint64_t seed = 20240607;
  std::int64_t trials = 100000;
  std::int64_t steps = 10000;
  std::vector<std::string> groups{"z", "z2", "z3"};
  std::vector<double> targets{-0.5, -1.0, -1.5};
  double tolerance = 0.15;
  std::vector<std::string> cross_check{"1", "z", "z2", "z3", "inoue"};
  /// Walk length and count for non-abelian groups in the cross-check.
  std::int64_t twisted_steps = 1000;
  std::int64_t twisted_trials = 20000;
  int threads = 1;
  bool lazy = true;
};

struct Config {
  std::array<std::int64_t, 9> matrix{0, 0, 1, 1, 0, 0, 0, 1, 1};
  SpectralSettings spectral;
  GroupSettings group;
  DiophantineSettings diophantine;
  HullSettings hull;
  ClassifySettings classify;
  WalkSettings walk;
  bool parallel = false;
};

Config default_config();
/// Unknown sections or keys, wrong types and out-of-range values raise
/// ConfigError carrying the line and "section.key".
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// The effective parameters, in a fixed order.
Json config_json(const Config& c);

}  // namespace covering
