// covering-lab command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "covering/analysis.hpp"
#include "covering/classify.hpp"
#include "covering/config.hpp"
#include "covering/diophantine.hpp"
#include "covering/errors.hpp"
#include "covering/json_io.hpp"
#include "covering/report.hpp"
#include "covering/suites.hpp"
#include "covering/walk.hpp"

using namespace covering;

namespace {

int write_out(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "covering-lab: cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

UnimodularMatrix matrix_from(const std::vector<std::int64_t>& entries) {
  if (entries.empty()) return canonical_matrix();
  if (entries.size() != 9) throw std::invalid_argument("--matrix takes 9 integers, row-major");
  return UnimodularMatrix::from_row_major(entries);
}

mpq_class rational_arg(const std::string& text, const char* flag) {
  const auto q = parse_rational(text);
  if (!q || *q <= 0) throw std::invalid_argument(std::string(flag) + " must be a positive number, got '" + text + "'");
  return *q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covering-lab: exact computations on the Inoue-surface covering group Z^3 x| Z"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites and print a report");
  std::string suite = "all", config_path, format = "human", output;
  bool parallel = false;
  verify->add_option("--suite", suite, "spectral, group, diophantine, hull, classify, walk or all")
      ->check(CLI::IsMember({"spectral", "group", "diophantine", "hull", "classify", "walk", "all"}));
  verify->add_option("--config", config_path, "TOML config (defaults reproduce the canonical matrix run)");
  verify->add_option("--format", format, "json, csv or human");
  verify->add_option("-o,--output", output, "write the report here instead of stdout");
  verify->add_flag("--parallel", parallel, "run suites concurrently");

  // search
  auto* search = app.add_subcommand("search", "list admissible matrices with entries in [-B, B]");
  int bound = 2;
  bool search_check = false;
  search->add_option("--bound", bound, "entry bound B")->check(CLI::Range(0, 3));
  search->add_flag("--check", search_check, "also run the irrationality and independence checks");

  // minimize
  auto* minimize = app.add_subcommand("minimize", "find r with certified |r1 a1 + r2 a2 + r3 a3| < eps");
  std::string eps = "1e-9";
  std::vector<std::int64_t> matrix;
  int count = 1;
  std::string ratio = "10";
  minimize->add_option("--eps", eps, "target bound");
  minimize->add_option("--matrix", matrix, "9 integers, row-major")->delimiter(',')->expected(9);
  minimize->add_option("--count", count, "length of a shrinking sequence")->check(CLI::PositiveNumber);
  minimize->add_option("--ratio", ratio, "shrink factor between successive bounds");

  // walk
  auto* walk = app.add_subcommand("walk", "Monte Carlo random walk return probabilities");
  std::string group = "z2", walk_format = "json";
  std::int64_t trials = -1, steps = -1;
  std::uint64_t seed = 20240607;
  bool no_lazy = false;
  int threads = 1;
  walk->add_option("--group", group, "1, z, z2, z3, z4, z5 or inoue");
  walk->add_option("--trials", trials, "number of independent walks");
  walk->add_option("--steps", steps, "walk length");
  walk->add_option("--seed", seed, "RNG seed");
  walk->add_flag("--no-lazy", no_lazy, "simple walk instead of the lazy one");
  walk->add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  walk->add_option("--format", walk_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  walk->add_option("-o,--output", output, "write here instead of stdout");

  // classify
  auto* classify = app.add_subcommand("classify", "upper FC-series and growth of Z^n x|_M Z");
  std::vector<std::int64_t> twist;
  std::string named;
  int max_steps = 8;
  classify->add_option("--matrix", twist, "n*n integers, row-major (det +-1)")->delimiter(',');
  classify->add_option("--group", named, "1, z, z2, z3 or inoue");
  classify->add_option("--max-steps", max_steps, "series length cap")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      Config config = config_path.empty() ? default_config() : load_config(config_path);
      config.parallel = config.parallel || parallel;
      const ReportFormat fmt = parse_format(format);
      const VerificationReport report = run_suite(suite, config);
      if (const int rc = write_out(emit(report, fmt), output)) return rc;
      return exit_status(report);
    }
    if (*search) {
      Json list = Json::array();
      bool all_pass = true;
      for_each_admissible(bound, [&](const UnimodularMatrix& a) {
        Json item{{"matrix", to_json(a)}, {"characteristic_polynomial", char_poly(a).to_string()}};
        if (search_check) {
          const CubicPolynomial p = char_poly(a);
          const bool nq = nonquadratic_check(p);
          const bool ind = independence_over_Q(real_eigenvector(a, CubicField::create(p)));
          all_pass = all_pass && nq && ind;
          item["nonquadratic"] = nq;
          item["independent"] = ind;
        }
        list.push_back(std::move(item));
        return true;
      });
      Json out{{"bound", bound}, {"count", list.size()}, {"matrices", list}};
      std::cout << out.dump(2) << "\n";
      return all_pass ? 0 : 1;
    }
    if (*minimize) {
      const UnimodularMatrix a = matrix_from(matrix);
      const SpectralData s = spectral_data(a);
      const mpq_class e = rational_arg(eps, "--eps");
      Json results = Json::array();
      for (const auto& m : shrinking_sequence(Sublattice::full(), {}, s.a, e, count, rational_arg(ratio, "--ratio")))
        results.push_back(to_json(m));
      Json out{{"matrix", to_json(a)}, {"epsilon", to_json(e)}, {"results", results}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*walk) {
      WalkConfig wc = default_walk_config(WalkGroup::named(group), seed);
      if (trials > 0) wc.trials = trials;
      if (steps > 0) wc.steps = steps;
      wc.lazy = !no_lazy;
      wc.threads = threads;
      const WalkStats stats = simulate(wc);
      return write_out(walk_format == "csv" ? walk_csv(stats) : summary_json(stats).dump(2) + "\n", output);
    }
    if (*classify) {
      LatticeExtensionGroup g = LatticeExtensionGroup::trivial();
      if (!named.empty()) {
        g = WalkGroup::named(named).as_extension();
      } else {
        size_t n = 0;
        while (n * n < twist.size()) ++n;
        if (n * n != twist.size()) throw std::invalid_argument("--matrix needs a square number of entries");
        lattice::ZMatrix m(n, lattice::ZVector(n));
        for (size_t i = 0; i < twist.size(); ++i) m[i / n][i % n] = twist[i];
        g = LatticeExtensionGroup(m);
      }
      std::cout << classification_json(g, max_steps).dump(2) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "covering-lab: config error: " << e.what();
    if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
    std::cerr << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "covering-lab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
