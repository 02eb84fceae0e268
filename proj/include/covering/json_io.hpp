#pragma once

// JSON views of library values. Exact values are written as strings
// (fractions or field coordinates); real numbers as outward-rounded decimal
// enclosures.

#include <json.hpp>
#include <string>

#include "covering/analysis.hpp"
#include "covering/classify.hpp"
#include "covering/walk.hpp"

namespace covering {

using Json = nlohmann::ordered_json;

/// Digits after the decimal point in enclosure strings.
constexpr int kEnclosureDigits = 30;

Json to_json(const mpq_class& q);
Json enclosure_json(const RationalInterval& e, int digits = kEnclosureDigits);
Json enclosure_json(const Interval& x, int digits = kEnclosureDigits);
Json to_json(const ComplexInterval& z, int digits = kEnclosureDigits);
Json to_json(const CubicFieldElement& x, int digits = kEnclosureDigits);
Json to_json(const IntVec3& r);
Json to_json(const UnimodularMatrix& m);
Json to_json(const lattice::ZMatrix& m);

Json to_json(const MinimizationResult& m);
Json to_json(const SupReport& s);
Json to_json(const Witness& w);
Json to_json(const HullCertificate& h);
Json to_json(const UniquenessWitnesses& u);

Json to_json(const SubgroupDescription& s);
Json to_json(const GrowthClass& g);
Json to_json(const FCSeriesReport& r);
/// {n, M, fc_center, series, class, growth, varopoulos}.
Json classification_json(const LatticeExtensionGroup& g, int max_steps = 8);

Json to_json(const ExponentEstimate& e);
/// Summary without the per-time arrays.
Json summary_json(const WalkStats& s);
Json to_json(const CrossCheck& c);
/// Rows time,returns,trials,msd for t = 0..steps.
std::string walk_csv(const WalkStats& s);

}  // namespace covering
