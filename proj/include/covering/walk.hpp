#pragma once

// Monte-Carlo random walks on Cayley graphs of Z^n x|_M Z and the Inoue
// group, with return-probability exponent fits.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covering/classify.hpp"
#include "covering/group.hpp"

namespace covering {

/// Either a lattice extension (or the trivial group) or the Inoue group with
/// its exact group-engine arithmetic.
struct WalkGroup {
  LatticeExtensionGroup ext = LatticeExtensionGroup::trivial();
  std::shared_ptr<const InoueGroup> inoue;
  std::string name;

  static WalkGroup lattice(LatticeExtensionGroup g, std::string name);
  static WalkGroup inoue_group(std::shared_ptr<const InoueGroup> g, std::string name = "inoue");
  /// "1", "z", "z2", "z3", "z4", "inoue" (canonical matrix).
  static WalkGroup named(const std::string& name);

  bool is_inoue() const { return inoue != nullptr; }
  /// Rank of the r-part (0 for Z and the trivial group).
  int lattice_rank() const;
  /// Same group as a lattice extension, used for classification.
  LatticeExtensionGroup as_extension() const;
};

/// Element (m, r) in normal-form coordinates, r of length lattice_rank().
struct WalkStep {
  std::int64_t m = 0;
  std::vector<std::int64_t> r;

  bool operator==(const WalkStep&) const = default;
  auto operator<=>(const WalkStep&) const = default;
};

struct WalkConfig {
  WalkGroup group;
  /// Symmetric: closed under inverse. Empty means the standard set.
  std::vector<WalkStep> generators;
  std::int64_t steps = 1000;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  /// Hold with probability 1/2 at every step.
  bool lazy = true;
  int threads = 1;
};

/// +-t and +-e_i; the identity alone for the trivial group.
std::vector<WalkStep> standard_generators(const WalkGroup& group);

struct ExponentEstimate {
  double slope = 0;
  double intercept = 0;
  double standard_error = 0;
  double ci_low = 0;
  double ci_high = 0;
  /// Weighted residual sum of squares of the fit.
  double residual = 0;
  int bins = 0;
  std::int64_t first_time = 0;
  std::int64_t last_time = 0;
};

struct WalkStats {
  std::int64_t steps = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  bool lazy = true;
  /// Index t = 0..steps: walks at the identity after t steps.
  std::vector<std::uint64_t> return_counts;
  /// Mean squared Euclidean norm of the normal-form coordinates (m, r).
  std::vector<double> mean_squared_distance;
  std::optional<ExponentEstimate> exponent;
  /// Why `exponent` is absent, if it is.
  std::string no_estimate_reason;
};

/// Deterministic in the config: trial t draws from a stream seeded by
/// (seed, t). Throws std::invalid_argument for empty or non-symmetric
/// generator sets and nonpositive steps or trials.
WalkStats simulate(const WalkConfig& config);

/// Weighted least squares of log return frequency against log time over even
/// times, binned geometrically. Throws NoEstimate with fewer than 10 nonzero
/// counts or too few populated bins.
ExponentEstimate estimate_exponent(const WalkStats& stats);

enum class EmpiricalLabel { RecurrentLike, TransientLike };
std::string to_string(EmpiricalLabel label);

constexpr double kRecurrenceThreshold = -1.1;

struct CrossCheck {
  std::string group;
  GrowthClass growth;
  bool predicted_varopoulos = false;
  EmpiricalLabel empirical = EmpiricalLabel::TransientLike;
  std::optional<ExponentEstimate> exponent;
  /// Returns during the last tenth of the walk.
  std::uint64_t late_returns = 0;
  bool agree = false;
};

/// Steps and trials sized so the probe finishes quickly and exact arithmetic
/// stays within 64 bits.
WalkConfig default_walk_config(const WalkGroup& group, std::uint64_t seed = 20240607);

/// Recurrent-like iff the fitted exponent is >= -1.1 and returns persist in
/// the last tenth of the walk.
EmpiricalLabel empirical_label(const WalkStats& stats, std::uint64_t* late_returns = nullptr);

CrossCheck cross_check(const WalkGroup& group, std::uint64_t seed = 20240607);
/// Same, reusing stats already simulated for `group`.
CrossCheck cross_check(const WalkGroup& group, const WalkStats& stats);

}  // namespace covering
