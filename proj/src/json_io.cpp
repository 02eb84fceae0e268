#include "covering/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace covering {

namespace {

std::string double_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Json to_json(const mpq_class& q) { return q.get_str(); }

Json enclosure_json(const RationalInterval& e, int digits) {
  return Json{{"lower", decimal_floor(e.lo, digits)}, {"upper", decimal_ceil(e.hi, digits)}};
}

Json enclosure_json(const Interval& x, int digits) { return enclosure_json(RationalInterval(x.lower(), x.upper()), digits); }

Json to_json(const ComplexInterval& z, int digits) {
  return Json{{"re", enclosure_json(z.re, digits)}, {"im", enclosure_json(z.im, digits)}};
}

Json to_json(const CubicFieldElement& x, int digits) {
  Json coords = Json::array();
  for (const auto& c : x.coefficients()) coords.push_back(c.get_str());
  return Json{{"basis", "1, alpha, alpha^2"}, {"coordinates", coords},
              {"enclosure", enclosure_json(x.enclosure(4 * digits + 64), digits)}};
}

Json to_json(const IntVec3& r) { return Json::array({r[0], r[1], r[2]}); }

Json to_json(const UnimodularMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.entries()) rows.push_back(to_json(row));
  return rows;
}

Json to_json(const lattice::ZMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json to_json(const MinimizationResult& m) {
  return Json{{"r", to_json(m.r)},
              {"value", to_json(m.value)},
              {"certified_enclosure", enclosure_json(m.enclosure)},
              {"epsilon", m.epsilon.get_str()},
              {"method", to_string(m.method)}};
}

Json to_json(const SupReport& s) {
  return Json{{"d", s.d},
              {"radius", s.radius},
              {"precision_bits", s.precision_bits},
              {"alpha_power", to_json(s.alpha_power)},
              {"f_at_base", enclosure_json(s.f_at_base)},
              {"bound", enclosure_json(s.bound)},
              {"sup", enclosure_json(s.sup)},
              {"sup_width", decimal_ceil(s.sup.width(), kEnclosureDigits)},
              {"argmax", to_json(s.argmax)},
              {"chain_verified", s.chain_verified}};
}

Json to_json(const Witness& w) {
  return Json{{"r", to_json(w.r)}, {"z", to_json(w.point.z)}, {"w", to_json(w.point.w)},
              {"distance", enclosure_json(w.distance)}};
}

Json to_json(const HullCertificate& h) {
  Json ws = Json::array();
  for (const auto& w : h.witnesses) ws.push_back(to_json(w));
  return Json{{"target", Json{{"z", to_json(h.target.z)}, {"w", to_json(h.target.w)}}},
              {"epsilon", h.epsilon.get_str()},
              {"trivial", h.trivial},
              {"gap_upper_bound", decimal_ceil(h.gap, kEnclosureDigits)},
              {"witnesses", ws}};
}

Json to_json(const UniquenessWitnesses& u) {
  Json ws = Json::array();
  for (const auto& w : u.witnesses) ws.push_back(to_json(w));
  return Json{{"d", u.d}, {"limit", to_json(u.limit)}, {"epsilon", u.epsilon.get_str()}, {"witnesses", ws}};
}

Json to_json(const SubgroupDescription& s) {
  return Json{{"lattice_basis", to_json(s.lattice_basis)}, {"m_modulus", s.m_modulus}, {"description", s.describe()}};
}

Json to_json(const GrowthClass& g) {
  Json out{{"kind", g.kind == GrowthClass::Kind::Finite       ? "finite"
                    : g.kind == GrowthClass::Kind::Polynomial ? "polynomial"
                                                              : "exponential"}};
  if (g.kind == GrowthClass::Kind::Polynomial) out["degree"] = g.degree;
  out["varopoulos"] = g.varopoulos;
  return out;
}

Json to_json(const FCSeriesReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(to_json(t));
  return Json{{"terms", terms},
              {"stabilized", r.stabilized},
              {"fc_nilpotent_class", r.fc_nilpotent_class ? Json(*r.fc_nilpotent_class) : Json(nullptr)}};
}

Json classification_json(const LatticeExtensionGroup& g, int max_steps) {
  const FCSeriesReport series = upper_fc_series(g, max_steps);
  const GrowthClass growth = classify_varopoulos(g);
  Json out;
  out["group"] = g.describe();
  out["n"] = g.is_trivial() ? 0 : g.n();
  out["M"] = to_json(g.is_trivial() ? lattice::ZMatrix{} : g.matrix());
  out["fc_center"] = to_json(series.terms.front());
  out["series"] = to_json(series);
  out["class"] = series.fc_nilpotent_class ? Json(*series.fc_nilpotent_class) : Json(nullptr);
  out["growth"] = to_json(growth);
  out["varopoulos"] = growth.varopoulos;
  return out;
}

Json to_json(const ExponentEstimate& e) {
  return Json{{"slope", double_string(e.slope)},
              {"intercept", double_string(e.intercept)},
              {"standard_error", double_string(e.standard_error)},
              {"ci95", Json::array({double_string(e.ci_low), double_string(e.ci_high)})},
              {"residual", double_string(e.residual)},
              {"bins", e.bins},
              {"time_range", Json::array({e.first_time, e.last_time})}};
}

Json summary_json(const WalkStats& s) {
  std::uint64_t total = 0;
  for (size_t t = 1; t < s.return_counts.size(); ++t) total += s.return_counts[t];
  Json out{{"steps", s.steps},
           {"trials", s.trials},
           {"seed", s.seed},
           {"lazy", s.lazy},
           {"total_returns", total},
           {"final_msd", double_string(s.mean_squared_distance.back())}};
  if (s.exponent) {
    out["exponent"] = to_json(*s.exponent);
  } else {
    out["exponent"] = nullptr;
    out["no_estimate"] = s.no_estimate_reason;
  }
  return out;
}

Json to_json(const CrossCheck& c) {
  Json out{{"group", c.group},
           {"growth", to_json(c.growth)},
           {"predicted_varopoulos", c.predicted_varopoulos},
           {"empirical", to_string(c.empirical)},
           {"late_returns", c.late_returns},
           {"agree", c.agree}};
  out["exponent"] = c.exponent ? to_json(*c.exponent) : Json(nullptr);
  return out;
}

std::string walk_csv(const WalkStats& s) {
  std::ostringstream out;
  out << "time,returns,trials,msd\n";
  for (size_t t = 0; t < s.return_counts.size(); ++t)
    out << t << ',' << s.return_counts[t] << ',' << s.trials << ',' << double_string(s.mean_squared_distance[t]) << '\n';
  return out.str();
}

}  // namespace covering
