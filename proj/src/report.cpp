#include "covering/report.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <chrono>
#include <ctime>
#include <set>
#include <sstream>
#include <stdexcept>

namespace covering {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("report: missing field '") + key + "'");
  return j.at(key);
}

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("report: field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Verified: return "verified";
    case ClaimStatus::Failed: return "failed";
    case ClaimStatus::Skipped: return "skipped";
  }
  return "failed";
}

ClaimStatus parse_status(const std::string& s) {
  if (s == "verified") return ClaimStatus::Verified;
  if (s == "failed") return ClaimStatus::Failed;
  if (s == "skipped") return ClaimStatus::Skipped;
  throw std::invalid_argument("unknown claim status '" + s + "'");
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "human") return ReportFormat::Human;
  throw std::invalid_argument("unknown format '" + name + "' (expected json, csv or human)");
}

Json report_json(const VerificationReport& r) {
  Json claims = Json::array();
  for (const Claim& c : r.claims) {
    claims.push_back(Json{{"suite", c.suite},
                          {"id", c.id},
                          {"anchor", c.anchor},
                          {"status", to_string(c.status)},
                          {"note", c.note},
                          {"certificate", c.certificate}});
  }
  int verified = 0, failed = 0, skipped = 0;
  for (const Claim& c : r.claims) {
    (c.status == ClaimStatus::Verified ? verified : c.status == ClaimStatus::Failed ? failed : skipped) += 1;
  }
  return Json{{"schema", "covering-lab/report/1"},
              {"suite", r.suite},
              {"matrix", r.matrix},
              {"parameters", r.parameters},
              {"summary", Json{{"claims", r.claims.size()}, {"verified", verified}, {"failed", failed}, {"skipped", skipped}}},
              {"claims", claims},
              {"toolchain", r.toolchain},
              {"timestamp", r.timestamp}};
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  if (require_string(j, "schema") != "covering-lab/report/1") throw std::invalid_argument("report: unknown schema");
  r.suite = require_string(j, "suite");
  const Json& m = require(j, "matrix");
  if (!m.is_array() || m.size() != 9) throw std::invalid_argument("report: matrix must have 9 entries");
  for (size_t i = 0; i < 9; ++i) r.matrix[i] = m[i].get<std::int64_t>();
  r.parameters = require(j, "parameters");
  const Json& claims = require(j, "claims");
  if (!claims.is_array()) throw std::invalid_argument("report: claims must be an array");
  for (const Json& c : claims) {
    Claim claim;
    claim.suite = require_string(c, "suite");
    claim.id = require_string(c, "id");
    claim.anchor = require_string(c, "anchor");
    claim.status = parse_status(require_string(c, "status"));
    claim.note = require_string(c, "note");
    claim.certificate = require(c, "certificate");
    r.claims.push_back(std::move(claim));
  }
  r.toolchain = require(j, "toolchain");
  r.timestamp = require_string(j, "timestamp");
  return r;
}

std::string emit(const VerificationReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return report_json(r).dump(2) + "\n";
    case ReportFormat::Csv: {
      std::ostringstream out;
      out << "suite,claim,anchor,status,note\n";
      for (const Claim& c : r.claims)
        out << csv_field(c.suite) << ',' << csv_field(c.id) << ',' << csv_field(c.anchor) << ','
            << to_string(c.status) << ',' << csv_field(c.note) << '\n';
      return out.str();
    }
    case ReportFormat::Human: {
      std::ostringstream out;
      out << "covering-lab verification: suite " << r.suite << "\n";
      out << "matrix:";
      for (size_t i = 0; i < 9; ++i) out << (i % 3 == 0 ? "  [" : " ") << r.matrix[i] << (i % 3 == 2 ? "]" : "");
      out << "\n\n";
      int verified = 0, failed = 0, skipped = 0;
      for (const Claim& c : r.claims) {
        std::string tag = to_string(c.status);
        for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out << tag << std::string(10 - tag.size(), ' ') << c.suite << "/" << c.id << "\n";
        out << "          anchor: " << c.anchor << "\n";
        if (!c.note.empty()) out << "          " << c.note << "\n";
        (c.status == ClaimStatus::Verified ? verified : c.status == ClaimStatus::Failed ? failed : skipped) += 1;
      }
      out << "\n" << verified << " verified, " << failed << " failed, " << skipped << " skipped\n";
      out << "generated " << r.timestamp << "\n";
      return out.str();
    }
  }
  throw std::invalid_argument("emit: unknown format");
}

int exit_status(const VerificationReport& r) {
  for (const Claim& c : r.claims)
    if (c.status == ClaimStatus::Failed) return 1;
  return 0;
}

void check_report(const VerificationReport& r) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const Claim& c : r.claims) {
    if (!seen.insert({c.suite, c.id}).second) throw std::logic_error("duplicate claim id " + c.suite + "/" + c.id);
    if (c.anchor.empty()) throw std::logic_error("claim " + c.id + " has no anchor");
    if (c.status == ClaimStatus::Verified && (c.certificate.is_null() || c.certificate.empty()))
      throw std::logic_error("verified claim " + c.id + " has no certificate");
  }
}

Json toolchain_metadata() {
  return Json{{"library", "covering-lab 0.1.0"},
              {"compiler", __VERSION__},
              {"cxx_standard", static_cast<long>(__cplusplus)},
              {"gmp", gmp_version},
              {"mpfr", mpfr_get_version()},
              {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                           "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace covering
