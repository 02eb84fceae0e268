#pragma once

// Verification suites: each runs its module's checks and returns claims.

#include <string>
#include <vector>

#include "covering/config.hpp"
#include "covering/report.hpp"

namespace covering {

/// spectral, group, diophantine, hull, classify, walk (the order of "all").
const std::vector<std::string>& suite_names();

/// The fixed anchor of a claim id within a suite; throws std::out_of_range
/// for unknown ids.
std::string claim_anchor(const std::string& suite, const std::string& id);

/// `name` is one of suite_names() or "all". Claims that need an admissible
/// matrix are skipped when the configured one is not. Throws
/// std::invalid_argument for unknown suite names.
VerificationReport run_suite(const std::string& name, const Config& config);
/// Reads the config first; ConfigError propagates.
VerificationReport run_suite(const std::string& name, const std::string& config_path);

}  // namespace covering
