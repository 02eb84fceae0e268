#include "covering/suites.hpp"

#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

#include "covering/errors.hpp"

namespace covering {

namespace {

const std::map<std::string, std::string>& anchors() {
  static const std::map<std::string, std::string> table{
      {"spectral/admissibility", "admissible matrix: one real eigenvalue alpha > 1 and a complex-conjugate pair"},
      {"spectral/real-eigenvalue", "real eigenvalue alpha > 1 of A"},
      {"spectral/eigenvector-residual", "real eigenvector a with A a = alpha a"},
      {"spectral/beta-modulus", "complex eigenvalue beta with alpha |beta|^2 = 1"},
      {"spectral/nonquadratic-irrationality", "alpha is a nonquadratic irrationality"},
      {"spectral/coordinate-independence", "a1, a2, a3 are linearly independent over Q"},
      {"spectral/admissible-search", "irrationality and independence for every admissible matrix of small entries"},
      {"group/group-axioms", "normal form g0^m g1^r1 g2^r2 g3^r3 and the semidirect product law"},
      {"group/affine-homomorphism", "action of G on H x C by affine maps"},
      {"group/conjugacy-class-formula", "conjugacy class of g0^d"},
      {"group/fc-elements", "finite conjugacy classes of the covering group"},
      {"group/period-subgroup", "period subgroup of the covering"},
      {"diophantine/shrinking-sequence", "r1 a1 + r2 a2 + r3 a3 accumulates at zero"},
      {"diophantine/exhaustive-fallback", "r1 a1 + r2 a2 + r3 a3 accumulates at zero"},
      {"diophantine/rank-one-no-accumulation", "no accumulation along cyclic subgroups"},
      {"hull/sup-bound-chain", "separating bound 1 > 2/3 > 2/(alpha^d + 1) >= sup |F| on the class orbit"},
      {"hull/hull-membership", "x lies in the hull of its orbit under subgroups of rank at least 2"},
      {"hull/hull-rank-one", "no accumulation along cyclic subgroups"},
      {"hull/uniqueness-limit", "class orbits of g0^d accumulate at alpha^d z"},
      {"hull/contrast", "g0^d is neither an FC-element nor a period, yet its class orbit is separated from x"},
      {"classify/reference-identity", "upper FC-series of Z^n x| Z"},
      {"classify/reference-rotation", "upper FC-series of Z^n x| Z"},
      {"classify/reference-inoue", "FC-center of the covering group"},
      {"classify/fc-center-normal", "FC-center is a normal subgroup"},
      {"classify/fc-element-consistency", "FC-center of the covering group"},
      {"classify/varopoulos-list", "recurrent coverings have Varopoulos groups 1, Z, Z^2"},
      {"walk/return-exponent", "return probability decay of random walks on Z^k"},
      {"walk/cross-check", "recurrence of the random walk against the Varopoulos classification"},
      {"walk/reproducibility", "random walk probe determinism"},
  };
  return table;
}

struct Context {
  const Config& config;
  std::optional<UnimodularMatrix> matrix;
  std::optional<SpectralData> spectral;
  std::string inadmissible;
};

Context make_context(const Config& c) {
  Context ctx{c, std::nullopt, std::nullopt, ""};
  try {
    ctx.matrix = UnimodularMatrix::from_row_major(c.matrix);
  } catch (const std::invalid_argument& e) {
    ctx.inadmissible = e.what();
    return ctx;
  }
  const AdmissibilityVerdict v = is_admissible(*ctx.matrix);
  if (!v) {
    ctx.inadmissible = v.reason;
    return ctx;
  }
  ctx.spectral = spectral_data(*ctx.matrix, Precision::from_width(c.spectral.width));
  return ctx;
}

class ClaimList {
 public:
  explicit ClaimList(std::string suite) : suite_(std::move(suite)) {}

  // Runs `body`, which fills the certificate and returns whether the claim
  // holds. Exceptions become failures carrying the message.
  void check(const std::string& id, const std::function<bool(Claim&)>& body) {
    Claim c = fresh(id);
    try {
      c.status = body(c) ? ClaimStatus::Verified : ClaimStatus::Failed;
    } catch (const PreconditionFailed& e) {
      c.status = ClaimStatus::Failed;
      c.note = std::string(e.what()) + "; " + e.detail();
    } catch (const std::exception& e) {
      c.status = ClaimStatus::Failed;
      c.note = e.what();
    }
    claims_.push_back(std::move(c));
  }

  void skip(const std::string& id, const std::string& reason) {
    Claim c = fresh(id);
    c.status = ClaimStatus::Skipped;
    c.note = "skipped: " + reason;
    claims_.push_back(std::move(c));
  }

  // Either runs the check or, without spectral data, skips it.
  void dependent(const Context& ctx, const std::string& id, const std::function<bool(Claim&)>& body) {
    if (ctx.spectral) {
      check(id, body);
    } else {
      skip(id, "requires an admissible matrix (" + ctx.inadmissible + ")");
    }
  }

  std::vector<Claim> take() { return std::move(claims_); }

 private:
  Claim fresh(const std::string& id) const {
    Claim c;
    c.suite = suite_;
    c.id = id;
    c.anchor = claim_anchor(suite_, id);
    return c;
  }

  std::string suite_;
  std::vector<Claim> claims_;
};

// ---------------------------------------------------------------------------

std::vector<Claim> spectral_suite(const Context& ctx) {
  ClaimList out("spectral");
  out.check("admissibility", [&](Claim& c) {
    if (!ctx.matrix) {
      c.note = ctx.inadmissible;
      return false;
    }
    const CubicPolynomial p = char_poly(*ctx.matrix);
    c.certificate = Json{{"characteristic_polynomial", p.to_string()},
                         {"discriminant", p.discriminant().get_str()},
                         {"P(1)", p.evaluate(mpz_class(1)).get_str()},
                         {"P(-1)", p.evaluate(mpz_class(-1)).get_str()}};
    if (!ctx.spectral) c.note = ctx.inadmissible;
    return ctx.spectral.has_value();
  });
  out.dependent(ctx, "real-eigenvalue", [&](Claim& c) {
    const SpectralData& s = *ctx.spectral;
    const RealRootEnclosure e = real_root(s.polynomial, ctx.config.spectral.width);
    const mpq_class plo = s.polynomial.evaluate(e.lo), phi = s.polynomial.evaluate(e.hi);
    c.certificate = Json{{"enclosure", enclosure_json(RationalInterval(e.lo, e.hi), 40)},
                         {"width", decimal_ceil(e.width(), 40)},
                         {"sign_change", Json{{"P(lower)", plo < 0 ? "negative" : "nonnegative"},
                                              {"P(upper)", phi > 0 ? "positive" : "nonpositive"}}}};
    return e.width() <= ctx.config.spectral.width && plo < 0 && phi > 0 && e.lo > 1;
  });
  out.dependent(ctx, "eigenvector-residual", [&](Claim& c) {
    const SpectralData& s = *ctx.spectral;
    bool zero = true;
    for (const auto& x : eigen_residual(s)) zero = zero && x.is_zero();
    c.certificate = Json{{"a", Json::array({to_json(s.a[0]), to_json(s.a[1]), to_json(s.a[2])})},
                         {"residual_exactly_zero", zero}};
    return zero;
  });
  out.dependent(ctx, "beta-modulus", [&](Claim& c) {
    const SpectralData& s = *ctx.spectral;
    const bool exact = s.alpha * s.beta_modulus_squared == s.field->element(1);
    const bool below_one = compare(s.beta_modulus_squared, s.field->element(1)) < 0;
    const bool interval_ok = (s.beta.norm() * s.alpha.to_interval(s.precision_bits)).contains(mpq_class(1));
    c.certificate = Json{{"beta", to_json(s.beta)},
                         {"beta_modulus_squared", to_json(s.beta_modulus_squared)},
                         {"alpha_times_modulus_squared_is_one", exact},
                         {"modulus_below_one", below_one},
                         {"interval_check", interval_ok}};
    return exact && below_one && interval_ok;
  });
  out.dependent(ctx, "nonquadratic-irrationality", [&](Claim& c) {
    const bool ok = nonquadratic_check(ctx.spectral->polynomial);
    c.certificate = Json{{"polynomial", ctx.spectral->polynomial.to_string()}, {"no_rational_root", ok}};
    return ok;
  });
  out.dependent(ctx, "coordinate-independence", [&](Claim& c) {
    const bool ok = independence_over_Q(ctx.spectral->a);
    Json rows = Json::array();
    for (const auto& x : ctx.spectral->a) {
      Json row = Json::array();
      for (const auto& q : x.coefficients()) row.push_back(q.get_str());
      rows.push_back(row);
    }
    c.certificate = Json{{"coordinate_matrix", rows}, {"rank_three", ok}};
    return ok;
  });
  out.check("admissible-search", [&](Claim& c) {
    const int bound = ctx.config.spectral.search_bound;
    std::size_t found = 0, passed = 0;
    bool contains_canonical = false;
    for_each_admissible(bound, [&](const UnimodularMatrix& a) {
      ++found;
      contains_canonical = contains_canonical || a == canonical_matrix();
      const CubicPolynomial p = char_poly(a);
      const auto field = CubicField::create(p);
      if (nonquadratic_check(p) && independence_over_Q(real_eigenvector(a, field))) ++passed;
      return true;
    });
    c.certificate = Json{{"entry_bound", bound},
                         {"admissible_found", found},
                         {"passing_both_checks", passed},
                         {"contains_canonical", contains_canonical}};
    return found == passed && (bound < 1 || contains_canonical);
  });
  return out.take();
}

std::vector<Claim> group_suite(const Context& ctx) {
  ClaimList out("group");
  std::optional<InoueGroup> group;
  if (ctx.spectral) group.emplace(*ctx.spectral);
  const GroupSettings& gs = ctx.config.group;

  out.dependent(ctx, "group-axioms", [&](Claim& c) {
    std::mt19937_64 rng(gs.seed);
    std::uniform_int_distribution<std::int64_t> dm(-8, 8), dr(-1000, 1000);
    auto random_element = [&] {
      GroupElement g;
      g.m = dm(rng);
      for (auto& x : g.r) x = dr(rng);
      return g;
    };
    std::size_t failures = 0;
    const GroupElement e = GroupElement::identity();
    for (int i = 0; i < gs.random_checks; ++i) {
      const GroupElement g = random_element(), h = random_element(), k = random_element();
      if (group->mul(group->mul(g, h), k) != group->mul(g, group->mul(h, k))) ++failures;
      if (!group->mul(g, group->inv(g)).is_identity() || !group->mul(group->inv(g), g).is_identity()) ++failures;
      if (group->mul(g, e) != g || group->mul(e, g) != g) ++failures;
    }
    c.certificate = Json{{"checks", gs.random_checks}, {"seed", gs.seed}, {"max_abs_m", 8}, {"max_abs_r", 1000},
                         {"failures", failures}};
    return failures == 0;
  });
  out.dependent(ctx, "affine-homomorphism", [&](Claim& c) {
    std::mt19937_64 rng(gs.seed + 1);
    std::uniform_int_distribution<std::int64_t> dm(-8, 8), dr(-1000, 1000);
    std::size_t z_mismatch = 0, w_disjoint = 0;
    mpq_class widest = 0;
    for (int i = 0; i < gs.homomorphism_checks; ++i) {
      GroupElement g, h;
      g.m = dm(rng);
      h.m = dm(rng);
      for (auto& x : g.r) x = dr(rng);
      for (auto& x : h.r) x = dr(rng);
      const AffineMap lhs = group->to_affine(group->mul(g, h));
      const AffineMap rhs = compose(group->to_affine(g), group->to_affine(h));
      if (!lhs.z_equals(rhs)) ++z_mismatch;
      if (!lhs.w_overlaps(rhs)) ++w_disjoint;
      for (const AffineMap* f : {&lhs, &rhs})
        widest = std::max({widest, f->w_scale.width(), f->w_shift.width()});
    }
    // Rival row convention (twist T = A): g_j g0 would be (1, A^-1 e_j), whose
    // z-shift alpha (A^-1 e_j).a has to equal a_j. Recorded, not required.
    const IntMat3 a_inv = ctx.matrix->inverse().entries();
    bool rival_holds = true;
    for (int j = 0; j < 3; ++j) {
      IntVec3 e{0, 0, 0};
      e[static_cast<size_t>(j)] = 1;
      const SpectralData& sd = group->spectral();
      rival_holds = rival_holds && sd.alpha * linear_form(covering::apply(a_inv, e), sd.a) == sd.a[static_cast<size_t>(j)];
    }
    c.certificate = Json{{"checks", gs.homomorphism_checks},
                         {"convention", "column eigenvector A a = alpha a, twist T = A^T"},
                         {"row_convention_twist_A_consistent", rival_holds},
                         {"z_part_exact_mismatches", z_mismatch},
                         {"w_part_disjoint_enclosures", w_disjoint},
                         {"widest_w_enclosure", decimal_ceil(widest, 40)},
                         {"width_target", ctx.config.spectral.width.get_str()}};
    return z_mismatch == 0 && w_disjoint == 0 && widest <= ctx.config.spectral.width;
  });
  out.dependent(ctx, "conjugacy-class-formula", [&](Claim& c) {
    std::size_t compared = 0, mismatches = 0;
    for (std::int64_t d : gs.conjugation_exponents) {
      const ConjClassDescriptor cls = conjugacy_class(*group, d);
      GroupElement s;
      s.m = d;
      for (std::int64_t k = -1; k <= 1; ++k) {
        for (const IntVec3& r : box(gs.conjugation_radius)) {
          // g = g0^k g1^r1 g2^r2 g3^r3 conjugates g0^d to the class member at r.
          const AffineMap brute = group->to_affine(group->conj(s, {k, r}));
          const AffineMap closed = cls.member(r);
          ++compared;
          if (!brute.z_equals(closed) || !brute.w_overlaps(closed)) ++mismatches;
        }
      }
    }
    c.certificate = Json{{"exponents", gs.conjugation_exponents},
                         {"radius", gs.conjugation_radius},
                         {"compared", compared},
                         {"mismatches", mismatches}};
    return mismatches == 0;
  });
  auto scan = [&](const std::function<bool(const GroupElement&)>& predicate, std::size_t& positives) {
    std::size_t wrong = 0;
    const int radius = gs.element_radius;
    for (std::int64_t m = -radius; m <= radius; ++m) {
      for (const IntVec3& r : box(radius)) {
        const GroupElement g{m, r};
        const bool p = predicate(g);
        positives += p;
        if (p != g.is_identity()) ++wrong;
      }
    }
    return wrong;
  };
  out.dependent(ctx, "fc-elements", [&](Claim& c) {
    std::size_t positives = 0;
    const std::size_t wrong = scan([&](const GroupElement& g) { return group->is_fc_element(g); }, positives);
    c.certificate = Json{{"radius", gs.element_radius}, {"fc_elements_found", positives}, {"wrong", wrong}};
    return wrong == 0;
  });
  out.dependent(ctx, "period-subgroup", [&](Claim& c) {
    std::size_t positives = 0;
    const std::size_t wrong = scan([&](const GroupElement& g) { return group->is_period(g); }, positives);
    c.certificate = Json{{"radius", gs.element_radius}, {"periods_found", positives}, {"wrong", wrong}};
    return wrong == 0;
  });
  return out.take();
}

std::vector<Claim> diophantine_suite(const Context& ctx) {
  ClaimList out("diophantine");
  const DiophantineSettings& ds = ctx.config.diophantine;
  out.dependent(ctx, "shrinking-sequence", [&](Claim& c) {
    const SpectralData& s = *ctx.spectral;
    const auto seq = shrinking_sequence(Sublattice::full(), {}, s.a, ds.epsilon0, ds.count, ds.ratio);
    bool ok = static_cast<int>(seq.size()) == ds.count;
    Json items = Json::array();
    mpq_class nominal = ds.epsilon0;
    ExclusionSet seen;
    for (size_t i = 0; i < seq.size(); ++i, nominal /= ds.ratio) {
      const MinimizationResult& m = seq[i];
      // Independent re-evaluation in Q(alpha) and a fresh certificate.
      const bool same_value = linear_form(m.r, s.a) == m.value;
      const bool recertified = certify_below(m.value, nominal).has_value();
      const bool decreasing = i == 0 || compare_abs(m.value, seq[i - 1].value) < 0;
      const bool distinct = seen.insert(m.r).second && m.r != IntVec3{0, 0, 0};
      ok = ok && same_value && recertified && decreasing && distinct;
      Json item = to_json(m);
      item["reverified"] = same_value && recertified;
      items.push_back(item);
    }
    c.certificate = Json{{"epsilon0", ds.epsilon0.get_str()}, {"ratio", ds.ratio.get_str()}, {"results", items}};
    return ok;
  });
  out.dependent(ctx, "exhaustive-fallback", [&](Claim& c) {
    const SpectralData& s = *ctx.spectral;
    const MinimizationResult m =
        minimize_linear_form(Sublattice::full(), {}, s.a, ds.epsilon0, Strategy::ExhaustiveOnly);
    const bool ok = certify_below(linear_form(m.r, s.a), ds.epsilon0).has_value();
    c.certificate = to_json(m);
    c.certificate["coefficient_bound"] = exhaustive_bound(ds.epsilon0);
    return ok;
  });
  out.dependent(ctx, "rank-one-no-accumulation", [&](Claim& c) {
    const SpectralData& s = *ctx.spectral;
    bool raised = false;
    try {
      minimize_linear_form(Sublattice({{1, 0, 0}}), {}, s.a, ds.epsilon0);
    } catch (const NoAccumulation& e) {
      raised = true;
      c.certificate = Json{{"sublattice", Json::array({Json::array({1, 0, 0})})}, {"error", e.what()}};
    }
    return raised;
  });
  return out.take();
}

std::vector<Claim> hull_suite(const Context& ctx) {
  ClaimList out("hull");
  const HullSettings& hs = ctx.config.hull;
  std::int64_t d = 0;
  if (ctx.spectral) d = hs.d ? *hs.d : least_exponent_above_two(*ctx.spectral);

  out.dependent(ctx, "sup-bound-chain", [&](Claim& c) {
    bool ok = true;
    Json reports = Json::array();
    for (int radius : hs.radii) {
      const SupReport rep = sup_F_on_class(d, radius, *ctx.spectral, hs.sup_width);
      ok = ok && rep.chain_verified && rep.sup.width() <= hs.sup_width;
      reports.push_back(to_json(rep));
    }
    c.certificate = Json{{"d", d}, {"sup_width_target", hs.sup_width.get_str()}, {"reports", reports}};
    return ok;
  });
  out.dependent(ctx, "hull-membership", [&](Claim& c) {
    const HullCertificate h =
        hull_certificate(Sublattice::full(), {{0, 0, 0}}, base_point(), hs.hull_epsilon, *ctx.spectral, hs.witnesses);
    bool ok = !h.witnesses.empty() && h.gap < hs.hull_epsilon;
    for (const Witness& w : h.witnesses)
      ok = ok && w.r != IntVec3{0, 0, 0} && w.distance.lo > -hs.hull_epsilon && w.distance.hi < hs.hull_epsilon;
    c.certificate = to_json(h);
    c.certificate["subgroup"] = "Z^3";
    c.certificate["excluded"] = Json::array({Json::array({0, 0, 0})});
    return ok;
  });
  out.dependent(ctx, "hull-rank-one", [&](Claim& c) {
    try {
      hull_certificate(Sublattice({{1, 0, 0}}), {}, base_point(), hs.hull_epsilon, *ctx.spectral);
    } catch (const NoAccumulation& e) {
      c.certificate = Json{{"sublattice", Json::array({Json::array({1, 0, 0})})}, {"error", e.what()}};
      return true;
    }
    return false;
  });
  out.dependent(ctx, "uniqueness-limit", [&](Claim& c) {
    const UniquenessWitnesses u =
        uniqueness_limit(hs.uniqueness_d, base_point(), hs.uniqueness_epsilon, *ctx.spectral, hs.witnesses);
    bool ok = !u.witnesses.empty();
    for (const Witness& w : u.witnesses)
      ok = ok && w.distance.lo > -hs.uniqueness_epsilon && w.distance.hi < hs.uniqueness_epsilon;
    c.certificate = to_json(u);
    return ok;
  });
  out.dependent(ctx, "contrast", [&](Claim& c) {
    const InoueGroup group(*ctx.spectral);
    GroupElement s;
    s.m = d;
    const bool not_fc = !group.is_fc_element(s);
    const bool not_period = !group.is_period(s);
    std::size_t tested = 0, periods = 0;
    const int radius = ctx.config.group.element_radius;
    for (std::int64_t m = -radius; m <= radius; ++m)
      for (const IntVec3& r : box(radius)) {
        ++tested;
        if (!GroupElement{m, r}.is_identity() && group.is_period({m, r})) ++periods;
      }
    const int sup_radius = hs.radii.empty() ? 0 : *std::max_element(hs.radii.begin(), hs.radii.end());
    const SupReport rep = sup_F_on_class(d, sup_radius, *ctx.spectral, hs.sup_width);
    const Interval one(1, rep.precision_bits);
    const bool separated = rep.chain_verified && rep.f_at_base.contains(mpq_class(1)) && rep.sup.certainly_less(one);
    c.certificate = Json{{"element", Json{{"m", d}, {"r", Json::array({0, 0, 0})}}},
                         {"is_fc_element", !not_fc},
                         {"is_period", !not_period},
                         {"elements_tested", tested},
                         {"nontrivial_periods", periods},
                         {"abs_F_at_base", enclosure_json(rep.f_at_base)},
                         {"sup_abs_F_on_class", enclosure_json(rep.sup)},
                         {"base_point_outside_hull", separated}};
    return not_fc && not_period && periods == 0 && separated;
  });
  return out.take();
}

lattice::ZMatrix rotation() { return {{0, -1}, {1, 0}}; }

LatticeExtensionGroup canonical_extension() {
  return LatticeExtensionGroup::from_twist(transpose(canonical_matrix().entries()));
}

std::vector<Claim> classify_suite(const Context& ctx) {
  ClaimList out("classify");
  const ClassifySettings& cs = ctx.config.classify;
  out.check("reference-identity", [&](Claim& c) {
    const LatticeExtensionGroup g(lattice::identity(3));
    const FCSeriesReport r = upper_fc_series(g, cs.max_steps);
    c.certificate = classification_json(g, cs.max_steps);
    return r.terms.size() == 1 && r.terms[0].is_whole(3) && r.fc_nilpotent_class == 1;
  });
  out.check("reference-rotation", [&](Claim& c) {
    const LatticeExtensionGroup g(rotation());
    const FCSeriesReport r = upper_fc_series(g, cs.max_steps);
    c.certificate = classification_json(g, cs.max_steps);
    const auto index = r.terms.empty() ? std::nullopt : r.terms[0].index(2);
    return r.terms.size() == 2 && index && *index == 4 && r.terms[0].m_modulus == 4 && r.terms[1].is_whole(2) &&
           r.fc_nilpotent_class == 2;
  });
  out.check("reference-inoue", [&](Claim& c) {
    const LatticeExtensionGroup g = canonical_extension();
    const FCSeriesReport r = upper_fc_series(g, cs.max_steps);
    c.certificate = classification_json(g, cs.max_steps);
    return r.terms.size() == 1 && r.terms[0].is_trivial() && r.stabilized && !r.fc_nilpotent_class;
  });
  out.check("fc-center-normal", [&](Claim& c) {
    std::size_t checked = 0, escapes = 0;
    for (const LatticeExtensionGroup& g :
         {LatticeExtensionGroup(lattice::identity(3)), LatticeExtensionGroup(rotation()), canonical_extension()}) {
      const SubgroupDescription fc = fc_center(g);
      std::vector<ExtElement> members;
      for (const auto& row : fc.lattice_basis) members.push_back({0, row});
      if (fc.m_modulus > 0) members.push_back({fc.m_modulus, lattice::ZVector(static_cast<size_t>(g.n()), 0)});
      for (const ExtElement& x : members)
        for (const ExtElement& gen : g.generators())
          for (const ExtElement& y : {gen, g.inv(gen)}) {
            ++checked;
            if (!fc.contains(g.conj(x, y))) ++escapes;
          }
    }
    c.certificate = Json{{"conjugations", checked}, {"escapes", escapes}};
    return escapes == 0;
  });
  out.check("fc-element-consistency", [&](Claim& c) {
    const InoueGroup group(spectral_data(canonical_matrix()));
    const SubgroupDescription fc = fc_center(LatticeExtensionGroup::from_twist(group.twist()));
    const int radius = cs.consistency_radius;
    std::size_t tested = 0, disagreements = 0;
    for (std::int64_t m = -radius; m <= radius; ++m)
      for (const IntVec3& r : box(radius)) {
        ++tested;
        const ExtElement e{m, {static_cast<long>(r[0]), static_cast<long>(r[1]), static_cast<long>(r[2])}};
        if (group.is_fc_element({m, r}) != fc.contains(e)) ++disagreements;
      }
    c.certificate = Json{{"radius", radius}, {"elements", tested}, {"disagreements", disagreements}};
    return disagreements == 0;
  });
  out.check("varopoulos-list", [&](Claim& c) {
    const std::vector<std::pair<std::string, LatticeExtensionGroup>> groups{
        {"1", LatticeExtensionGroup::trivial()},
        {"Z", LatticeExtensionGroup::free_abelian(1)},
        {"Z^2", LatticeExtensionGroup::free_abelian(2)},
        {"Z^3", LatticeExtensionGroup::free_abelian(3)},
        {"Inoue", canonical_extension()}};
    const std::vector<bool> expected{true, true, true, false, false};
    bool ok = true;
    Json rows = Json::array();
    for (size_t i = 0; i < groups.size(); ++i) {
      const GrowthClass g = classify_varopoulos(groups[i].second);
      ok = ok && g.varopoulos == expected[i];
      rows.push_back(Json{{"group", groups[i].first}, {"growth", to_json(g)}, {"expected_varopoulos", expected[i]}});
    }
    c.certificate = Json{{"groups", rows}};
    return ok;
  });
  return out.take();
}

std::vector<Claim> walk_suite(const Context& ctx) {
  ClaimList out("walk");
  const WalkSettings& ws = ctx.config.walk;
  auto config_for = [&](const WalkGroup& g) {
    WalkConfig wc = default_walk_config(g, ws.seed);
    wc.lazy = ws.lazy;
    wc.threads = ws.threads;
    if (g.is_inoue() || !(g.ext.is_trivial() || g.ext.matrix() == lattice::identity(static_cast<size_t>(g.ext.n())))) {
      wc.steps = ws.twisted_steps;
      wc.trials = ws.twisted_trials;
    } else if (!g.ext.is_trivial()) {
      wc.steps = ws.steps;
      wc.trials = ws.trials;
    }
    return wc;
  };
  std::map<std::string, WalkStats> cache;
  auto stats_for = [&](const std::string& name) -> const WalkStats& {
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, simulate(config_for(WalkGroup::named(name)))).first;
    return it->second;
  };

  out.check("return-exponent", [&](Claim& c) {
    bool ok = true;
    Json rows = Json::array();
    for (size_t i = 0; i < ws.groups.size(); ++i) {
      const WalkStats& st = stats_for(ws.groups[i]);
      const bool within = st.exponent && std::abs(st.exponent->slope - ws.targets[i]) <= ws.tolerance;
      ok = ok && within;
      Json row{{"group", ws.groups[i]}, {"target", ws.targets[i]}, {"within_tolerance", within}};
      row["stats"] = summary_json(st);
      rows.push_back(row);
    }
    c.certificate = Json{{"tolerance", ws.tolerance}, {"results", rows}};
    return ok;
  });
  out.check("cross-check", [&](Claim& c) {
    bool ok = true;
    Json rows = Json::array();
    for (const std::string& name : ws.cross_check) {
      const CrossCheck cc = cross_check(WalkGroup::named(name), stats_for(name));
      ok = ok && cc.agree;
      rows.push_back(to_json(cc));
    }
    c.certificate = Json{{"threshold", kRecurrenceThreshold}, {"groups", rows}};
    c.note = "walks run on Cayley graphs with the standard symmetric generators; "
             "equating this with the covering manifold is the classical discretization, not checked here";
    return ok;
  });
  out.check("reproducibility", [&](Claim& c) {
    WalkConfig wc = default_walk_config(WalkGroup::named("z2"), ws.seed);
    wc.steps = 256;
    wc.trials = 2000;
    const WalkStats a = simulate(wc), b = simulate(wc);
    const bool same = a.return_counts == b.return_counts && a.mean_squared_distance == b.mean_squared_distance;
    c.certificate = Json{{"group", "z2"}, {"steps", wc.steps}, {"trials", wc.trials}, {"identical", same}};
    return same;
  });
  return out.take();
}

using SuiteFn = std::vector<Claim> (*)(const Context&);

SuiteFn suite_function(const std::string& name) {
  if (name == "spectral") return spectral_suite;
  if (name == "group") return group_suite;
  if (name == "diophantine") return diophantine_suite;
  if (name == "hull") return hull_suite;
  if (name == "classify") return classify_suite;
  if (name == "walk") return walk_suite;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spectral", "group", "diophantine", "hull", "classify", "walk"};
  return names;
}

std::string claim_anchor(const std::string& suite, const std::string& id) {
  return anchors().at(suite + "/" + id);
}

VerificationReport run_suite(const std::string& name, const Config& config) {
  std::vector<std::string> names;
  if (name == "all") {
    names = suite_names();
  } else {
    suite_function(name);
    names = {name};
  }
  const Context ctx = make_context(config);

  VerificationReport report;
  report.suite = name;
  report.matrix = config.matrix;
  report.parameters = config_json(config);
  if (config.parallel && names.size() > 1) {
    std::vector<std::future<std::vector<Claim>>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, suite_function(n), std::cref(ctx)));
    for (auto& j : jobs)
      for (Claim& c : j.get()) report.claims.push_back(std::move(c));
  } else {
    for (const auto& n : names)
      for (Claim& c : suite_function(n)(ctx)) report.claims.push_back(std::move(c));
  }
  report.toolchain = toolchain_metadata();
  report.timestamp = utc_timestamp();
  check_report(report);
  return report;
}

VerificationReport run_suite(const std::string& name, const std::string& config_path) {
  return run_suite(name, load_config(config_path));
}

}  // namespace covering
