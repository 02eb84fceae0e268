#include <doctest.h>

#include <sstream>

#include "covering/config.hpp"
#include "covering/errors.hpp"
#include "covering/report.hpp"
#include "covering/suites.hpp"

using namespace covering;

namespace {

// Line and field of the ConfigError raised by `text`.
std::pair<int, std::string> error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return {e.line(), e.field()};
  }
  return {-1, ""};
}

VerificationReport sample_report() {
  VerificationReport r;
  r.suite = "hull";
  r.matrix = {0, 0, 1, 1, 0, 0, 0, 1, 1};
  r.parameters = config_json(default_config());
  Claim a{"hull", "one", "anchor, with a comma", ClaimStatus::Verified, Json{{"x", "1/3"}}, ""};
  Claim b{"hull", "two", "second anchor", ClaimStatus::Failed, Json::object(), "went \"wrong\""};
  Claim c{"hull", "three", "third anchor", ClaimStatus::Skipped, Json::object(), "skipped: dependency"};
  r.claims = {a, b, c};
  r.toolchain = toolchain_metadata();
  r.timestamp = "2026-01-01T00:00:00Z";
  return r;
}

}  // namespace

TEST_CASE("TOML subset parsing") {
  const TomlDocument doc = parse_toml(
      "# comment\n"
      "[a]\n"
      "x = 3  # trailing\n"
      "y = \"s\\\"q\"\n"
      "z = [1, 2,\n"
      "     3]\n"
      "w = 1.5e-3\n"
      "b = true\n");
  const auto& a = doc.at("a");
  CHECK(a.at("x").value.integer == 3);
  CHECK(a.at("x").line == 3);
  CHECK(a.at("y").value.text == "s\"q");
  CHECK(a.at("z").value.items.size() == 3);
  CHECK(a.at("z").value.items[2].line == 6);
  CHECK(a.at("w").value.text == "1.5e-3");
  CHECK(a.at("b").value.boolean);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1e-3") == mpq_class(1, 1000));
  CHECK(parse_rational("2.50") == mpq_class(5, 2));
  CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
  CHECK(parse_rational("1_000") == mpq_class(1000));
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("abc").has_value());
  CHECK_FALSE(parse_rational("1e").has_value());
}

TEST_CASE("the shipped defaults equal the built-in ones") {
  const Config c = load_config(COVERING_LAB_SOURCE_DIR "/paper.toml");
  CHECK(config_json(c) == config_json(default_config()));
}

TEST_CASE("config errors carry line and field") {
  CHECK(error_of("[hull]\nradii = [0, 1]\nsup_widht = \"1e-20\"\n") == std::make_pair(3, std::string("hull.sup_widht")));
  CHECK(error_of("[walk]\ntrials = \"many\"\n") == std::make_pair(2, std::string("walk.trials")));
  CHECK(error_of("[walk]\n\nsteps = 0\n") == std::make_pair(3, std::string("walk.steps")));
  CHECK(error_of("[matrix]\nentries = [1, 2, 3]\n") == std::make_pair(2, std::string("matrix.entries")));
  CHECK(error_of("[nonsense]\nx = 1\n").second == "nonsense");
  CHECK(error_of("[diophantine]\nratio = 1\n") == std::make_pair(2, std::string("diophantine.ratio")));
  CHECK(error_of("[hull]\nhull_epsilon = \"-1\"\n") == std::make_pair(2, std::string("hull.hull_epsilon")));
  CHECK(error_of("[walk]\ngroups = [\"z\", \"q8\"]\ntargets = [1, 2]\n") == std::make_pair(2, std::string("walk.groups")));
  CHECK(error_of("[spectral]\nwidth = 1\nwidth = 2\n").first == 3);
  CHECK(error_of("[a\n").first == 1);
  CHECK(error_of("[run]\nparallel = \"yes\"\n") == std::make_pair(2, std::string("run.parallel")));
  CHECK_THROWS_AS(load_config("/nonexistent/path.toml"), ConfigError);
}

TEST_CASE("config values are applied") {
  const Config c = parse_config(
      "[matrix]\nentries = [1,0,0, 0,1,0, 0,0,1]\n"
      "[hull]\nd = 3\nradii = [0, 1]\n"
      "[walk]\ngroups = [\"z\"]\ntargets = [-0.5]\ntrials = 10\n");
  CHECK(c.matrix[4] == 1);
  CHECK(c.hull.d == 3);
  CHECK(c.hull.radii == std::vector<int>{0, 1});
  CHECK(c.walk.trials == 10);
  CHECK(c.walk.groups.size() == 1);
}

TEST_CASE("report JSON round trip") {
  const VerificationReport r = sample_report();
  const Json j = report_json(r);
  const VerificationReport back = report_from_json(Json::parse(j.dump()));
  CHECK(report_json(back) == j);
  CHECK(j["summary"]["verified"] == 1);
  CHECK(j["summary"]["failed"] == 1);
  CHECK(j["summary"]["skipped"] == 1);
  Json broken = j;
  broken.erase("claims");
  CHECK_THROWS_AS(report_from_json(broken), std::invalid_argument);
}

TEST_CASE("csv has one row per claim, human shows anchors") {
  const VerificationReport r = sample_report();
  const std::string csv = emit(r, ReportFormat::Csv);
  // anchors and notes with commas or quotes are quoted, never split
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + static_cast<int>(r.claims.size()));
  CHECK(csv.find("\"anchor, with a comma\"") != std::string::npos);
  CHECK(csv.find("\"went \"\"wrong\"\"\"") != std::string::npos);
  const std::string human = emit(r, ReportFormat::Human);
  for (const Claim& c : r.claims) CHECK(human.find("anchor: " + c.anchor) != std::string::npos);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("exit status and report checks") {
  VerificationReport r = sample_report();
  CHECK(exit_status(r) == 1);
  r.claims.erase(r.claims.begin() + 1);
  CHECK(exit_status(r) == 0);
  CHECK_NOTHROW(check_report(r));
  r.claims.push_back(r.claims.front());
  CHECK_THROWS_AS(check_report(r), std::logic_error);
  r.claims.pop_back();
  r.claims[0].certificate = Json::object();
  CHECK_THROWS_AS(check_report(r), std::logic_error);
}

TEST_CASE("anchors exist for every claim id and unknown ids are rejected") {
  CHECK(suite_names().size() == 6);
  CHECK_FALSE(claim_anchor("hull", "sup-bound-chain").empty());
  CHECK_THROWS_AS(claim_anchor("hull", "nope"), std::out_of_range);
  CHECK_THROWS_AS(run_suite("nope", default_config()), std::invalid_argument);
}

TEST_CASE("an inadmissible matrix fails admissibility and skips dependent claims") {
  Config c = default_config();
  c.matrix = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  c.spectral.search_bound = 1;
  const VerificationReport r = run_suite("spectral", c);
  REQUIRE(r.claims.size() == 7);
  CHECK(r.claims[0].id == "admissibility");
  CHECK(r.claims[0].status == ClaimStatus::Failed);
  for (size_t i = 1; i + 1 < r.claims.size(); ++i) CHECK(r.claims[i].status == ClaimStatus::Skipped);
  CHECK(r.claims.back().status == ClaimStatus::Verified);  // the search ignores the configured matrix
  CHECK(exit_status(r) == 1);

  const VerificationReport h = run_suite("hull", c);
  for (const Claim& claim : h.claims) CHECK(claim.status == ClaimStatus::Skipped);
  CHECK(exit_status(h) == 0);
}

TEST_CASE("a non-unimodular matrix is reported, not thrown") {
  Config c = default_config();
  c.matrix = {2, 0, 0, 0, 1, 0, 0, 0, 1};
  const VerificationReport r = run_suite("group", c);
  for (const Claim& claim : r.claims) CHECK(claim.status == ClaimStatus::Skipped);
}
