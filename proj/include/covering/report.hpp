#pragma once

// Verification reports and their JSON / CSV / human renderings.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "covering/json_io.hpp"

namespace covering {

enum class ClaimStatus { Verified, Failed, Skipped };
std::string to_string(ClaimStatus s);
ClaimStatus parse_status(const std::string& s);

struct Claim {
  std::string suite;
  std::string id;
  std::string anchor;
  ClaimStatus status = ClaimStatus::Failed;
  /// Certified values backing the status; required when verified.
  Json certificate = Json::object();
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::array<std::int64_t, 9> matrix{};
  Json parameters = Json::object();
  std::vector<Claim> claims;
  Json toolchain = Json::object();
  /// The only field that differs between identical runs.
  std::string timestamp;
};

enum class ReportFormat { Json, Csv, Human };
/// Throws std::invalid_argument for anything but json, csv, human.
ReportFormat parse_format(const std::string& name);

Json report_json(const VerificationReport& r);
/// Inverse of report_json; throws std::invalid_argument on schema violations.
VerificationReport report_from_json(const Json& j);
std::string emit(const VerificationReport& r, ReportFormat format);

/// 0 iff every claim is verified or skipped, 1 otherwise.
int exit_status(const VerificationReport& r);

/// Throws std::logic_error if a verified claim lacks a certificate, an id
/// repeats within a suite, or an anchor is empty.
void check_report(const VerificationReport& r);

Json toolchain_metadata();
std::string utc_timestamp();

}  // namespace covering
