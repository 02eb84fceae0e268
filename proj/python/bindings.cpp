// Python bindings. Structured results cross the boundary as JSON text and are
// decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "covering/analysis.hpp"
#include "covering/classify.hpp"
#include "covering/config.hpp"
#include "covering/diophantine.hpp"
#include "covering/errors.hpp"
#include "covering/json_io.hpp"
#include "covering/report.hpp"
#include "covering/suites.hpp"
#include "covering/walk.hpp"

namespace py = pybind11;
using namespace covering;

namespace {

Config config_from(const std::optional<std::string>& path) { return path ? load_config(*path) : default_config(); }

UnimodularMatrix matrix_from(const std::optional<std::vector<std::int64_t>>& m) {
  if (!m) return canonical_matrix();
  if (m->size() != 9) throw std::invalid_argument("matrix takes 9 integers, row-major");
  return UnimodularMatrix::from_row_major(*m);
}

mpq_class rational(const std::string& text) {
  const auto q = parse_rational(text);
  if (!q || *q <= 0) throw std::invalid_argument("expected a positive number, got '" + text + "'");
  return *q;
}

std::string spectral_json(const std::optional<std::vector<std::int64_t>>& m, const std::string& width) {
  const UnimodularMatrix a = matrix_from(m);
  const AdmissibilityVerdict v = is_admissible(a);
  Json out{{"matrix", to_json(a)}, {"characteristic_polynomial", char_poly(a).to_string()}, {"admissible", v.admissible}};
  if (!v) {
    out["reason"] = v.reason;
    return out.dump();
  }
  const SpectralData s = spectral_data(a, Precision::from_width(rational(width)));
  const RealRootEnclosure e = real_root(s.polynomial, rational(width));
  out["alpha"] = enclosure_json(RationalInterval(e.lo, e.hi), 40);
  out["a"] = Json::array({to_json(s.a[0]), to_json(s.a[1]), to_json(s.a[2])});
  out["beta"] = to_json(s.beta);
  out["beta_modulus_squared"] = to_json(s.beta_modulus_squared);
  out["least_exponent_above_two"] = least_exponent_above_two(s);
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "covering-lab core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NoAccumulation>(m, "NoAccumulation", PyExc_ArithmeticError);
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", PyExc_ValueError);
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", PyExc_ArithmeticError);

  m.def("suite_names", &suite_names);

  m.def(
      "run_suite",
      [](const std::string& name, const std::optional<std::string>& config, const std::string& format) {
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, config_from(config));
        }
        return py::make_tuple(emit(r, parse_format(format)), exit_status(r));
      },
      py::arg("name") = "all", py::arg("config") = py::none(), py::arg("format") = "json");

  m.def(
      "config_json", [](const std::optional<std::string>& config) { return config_json(config_from(config)).dump(); },
      py::arg("config") = py::none());

  m.def("spectral_json", &spectral_json, py::arg("matrix") = py::none(), py::arg("width") = "1e-30");

  m.def(
      "search",
      [](int bound) {
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& a : search_admissible(bound)) {
          const auto rm = a.row_major();
          out.emplace_back(rm.begin(), rm.end());
        }
        return out;
      },
      py::arg("bound") = 2);

  m.def(
      "minimize_json",
      [](const std::string& eps, int count, const std::string& ratio,
         const std::optional<std::vector<std::int64_t>>& matrix) {
        const SpectralData s = spectral_data(matrix_from(matrix));
        Json out = Json::array();
        for (const auto& r : shrinking_sequence(Sublattice::full(), {}, s.a, rational(eps), count, rational(ratio)))
          out.push_back(to_json(r));
        return out.dump();
      },
      py::arg("eps") = "1e-9", py::arg("count") = 1, py::arg("ratio") = "10", py::arg("matrix") = py::none());

  m.def(
      "walk_json",
      [](const std::string& group, std::int64_t trials, std::int64_t steps, std::uint64_t seed, bool lazy,
         int threads) {
        WalkConfig c = default_walk_config(WalkGroup::named(group), seed);
        if (trials > 0) c.trials = trials;
        if (steps > 0) c.steps = steps;
        c.lazy = lazy;
        c.threads = threads;
        WalkStats s;
        {
          py::gil_scoped_release release;
          s = simulate(c);
        }
        Json out = summary_json(s);
        out["return_counts"] = s.return_counts;
        return out.dump();
      },
      py::arg("group") = "z2", py::arg("trials") = -1, py::arg("steps") = -1, py::arg("seed") = 20240607,
      py::arg("lazy") = true, py::arg("threads") = 1);

  m.def(
      "classify_json",
      [](const std::optional<std::vector<std::int64_t>>& matrix, const std::optional<std::string>& group,
         int max_steps) {
        if (group) return classification_json(WalkGroup::named(*group).as_extension(), max_steps).dump();
        const std::vector<std::int64_t> entries = matrix.value_or(std::vector<std::int64_t>{});
        size_t n = 0;
        while (n * n < entries.size()) ++n;
        if (n * n != entries.size()) throw std::invalid_argument("matrix needs a square number of entries");
        lattice::ZMatrix mz(n, lattice::ZVector(n));
        for (size_t i = 0; i < entries.size(); ++i) mz[i / n][i % n] = static_cast<long>(entries[i]);
        return classification_json(LatticeExtensionGroup(mz), max_steps).dump();
      },
      py::arg("matrix") = py::none(), py::arg("group") = py::none(), py::arg("max_steps") = 8);
}
