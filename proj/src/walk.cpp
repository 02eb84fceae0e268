#include "covering/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "covering/checked.hpp"
#include "covering/errors.hpp"

namespace covering {

namespace {

constexpr std::int64_t kChunkTrials = 4096;
// Keeps |position| <= 2^24 in the abelian kernel so squared norms and their
// per-chunk sums fit in 64 bits.
constexpr std::int64_t kAbelianReach = std::int64_t{1} << 24;

struct ChunkResult {
  std::vector<std::uint64_t> returns;
  std::vector<double> squared;
};

std::mt19937_64 trial_stream(std::uint64_t seed, std::int64_t trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

// Uniform draws from [0, outcomes) by slicing 64-bit words into `bits`-wide
// fields, rejecting fields >= outcomes.
class OutcomeSource {
 public:
  OutcomeSource(std::mt19937_64& rng, std::uint64_t outcomes) : rng_(rng), outcomes_(outcomes) {
    while ((std::uint64_t{1} << bits_) < outcomes) ++bits_;
    mask_ = (std::uint64_t{1} << bits_) - 1;
  }
  std::uint64_t next() {
    if (bits_ == 0) return 0;
    while (true) {
      if (avail_ < bits_) {
        word_ = rng_();
        avail_ = 64;
      }
      const std::uint64_t u = word_ & mask_;
      word_ >>= bits_;
      avail_ -= bits_;
      if (u < outcomes_) return u;
    }
  }

 private:
  std::mt19937_64& rng_;
  std::uint64_t outcomes_;
  int bits_ = 0;
  std::uint64_t mask_ = 0;
  std::uint64_t word_ = 0;
  int avail_ = 0;
};

std::uint64_t outcome_count(const WalkConfig& c) {
  return (c.lazy ? 2 : 1) * static_cast<std::uint64_t>(c.generators.size());
}

template <int D>
ChunkResult abelian_chunk(const WalkConfig& c, std::int64_t first, std::int64_t last) {
  const auto steps = static_cast<size_t>(c.steps);
  const std::uint64_t outcomes = outcome_count(c);
  // Outcomes past the generator list are holds: zero vectors.
  std::vector<std::array<std::int64_t, D>> table(outcomes);
  std::vector<std::int64_t> table_norm(outcomes, 0);
  for (size_t g = 0; g < c.generators.size(); ++g) {
    const WalkStep& s = c.generators[g];
    table[g][0] = s.m;
    for (int d = 1; d < D; ++d) table[g][d] = s.r[static_cast<size_t>(d - 1)];
    for (int d = 0; d < D; ++d) table_norm[g] += table[g][d] * table[g][d];
  }
  std::vector<std::uint64_t> returns(steps + 1, 0), squared(steps + 1, 0);
  for (std::int64_t trial = first; trial < last; ++trial) {
    std::mt19937_64 rng = trial_stream(c.seed, trial);
    OutcomeSource source(rng, outcomes);
    std::array<std::int64_t, D> pos{};
    std::int64_t norm2 = 0;
    for (size_t t = 1; t <= steps; ++t) {
      const auto u = source.next();
      const auto& g = table[u];
      for (int d = 0; d < D; ++d) {
        norm2 += 2 * pos[d] * g[d];
        pos[d] += g[d];
      }
      norm2 += table_norm[u];
      returns[t] += norm2 == 0;
      squared[t] += static_cast<std::uint64_t>(norm2);
    }
  }
  returns[0] = static_cast<std::uint64_t>(last - first);
  return {std::move(returns), std::vector<double>(squared.begin(), squared.end())};
}

double squared_norm(std::int64_t m, const std::int64_t* r, size_t n) {
  double s = static_cast<double>(m) * static_cast<double>(m);
  for (size_t i = 0; i < n; ++i) s += static_cast<double>(r[i]) * static_cast<double>(r[i]);
  return s;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw std::overflow_error("walk: matrix entry exceeds 64 bits");
  return z.get_si();
}

ChunkResult extension_chunk(const WalkConfig& c, std::int64_t first, std::int64_t last) {
  const auto steps = static_cast<size_t>(c.steps);
  const size_t n = static_cast<size_t>(c.group.lattice_rank());
  const std::uint64_t outcomes = outcome_count(c);
  // Right multiplication by (m', r'): r <- M^-m' r + r', m <- m + m'.
  std::vector<std::vector<std::int64_t>> twist;
  for (const WalkStep& s : c.generators) {
    const lattice::ZMatrix p = c.group.ext.power(-s.m);
    std::vector<std::int64_t> flat;
    for (const auto& row : p)
      for (const auto& x : row) flat.push_back(to_int64(x));
    twist.push_back(std::move(flat));
  }
  std::vector<std::uint64_t> returns(steps + 1, 0);
  std::vector<double> squared(steps + 1, 0.0);
  std::vector<std::int64_t> r(n), next(n);
  for (std::int64_t trial = first; trial < last; ++trial) {
    std::mt19937_64 rng = trial_stream(c.seed, trial);
    OutcomeSource source(rng, outcomes);
    std::int64_t m = 0;
    std::fill(r.begin(), r.end(), 0);
    for (size_t t = 1; t <= steps; ++t) {
      const auto u = source.next();
      if (u < c.generators.size()) {
        const WalkStep& g = c.generators[u];
        const auto& p = twist[u];
        for (size_t i = 0; i < n; ++i) {
          std::int64_t acc = g.r[i];
          for (size_t j = 0; j < n; ++j) acc = checked_add(acc, checked_mul(p[i * n + j], r[j]));
          next[i] = acc;
        }
        std::swap(r, next);
        m = checked_add(m, g.m);
      }
      const bool home = m == 0 && std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
      returns[t] += home;
      squared[t] += squared_norm(m, r.data(), n);
    }
  }
  returns[0] = static_cast<std::uint64_t>(last - first);
  return {std::move(returns), std::move(squared)};
}

ChunkResult inoue_chunk(const WalkConfig& c, std::int64_t first, std::int64_t last) {
  const auto steps = static_cast<size_t>(c.steps);
  const std::uint64_t outcomes = outcome_count(c);
  std::vector<GroupElement> gens;
  for (const WalkStep& s : c.generators) gens.push_back({s.m, {s.r[0], s.r[1], s.r[2]}});
  const InoueGroup& group = *c.group.inoue;
  std::vector<std::uint64_t> returns(steps + 1, 0);
  std::vector<double> squared(steps + 1, 0.0);
  for (std::int64_t trial = first; trial < last; ++trial) {
    std::mt19937_64 rng = trial_stream(c.seed, trial);
    OutcomeSource source(rng, outcomes);
    GroupElement pos;
    for (size_t t = 1; t <= steps; ++t) {
      const auto u = source.next();
      if (u < gens.size()) pos = group.mul(pos, gens[u]);
      returns[t] += pos.is_identity();
      squared[t] += squared_norm(pos.m, pos.r.data(), 3);
    }
  }
  returns[0] = static_cast<std::uint64_t>(last - first);
  return {std::move(returns), std::move(squared)};
}

bool is_abelian(const WalkGroup& g) {
  if (g.is_inoue()) return false;
  if (g.ext.is_trivial()) return true;
  return g.ext.matrix() == lattice::identity(static_cast<size_t>(g.ext.n()));
}

WalkStep inverse(const WalkGroup& group, const WalkStep& s) {
  if (group.is_inoue()) {
    const GroupElement inv = group.inoue->inv({s.m, {s.r[0], s.r[1], s.r[2]}});
    return {inv.m, {inv.r[0], inv.r[1], inv.r[2]}};
  }
  if (group.ext.is_trivial()) return s;
  ExtElement e{s.m, {}};
  for (auto x : s.r) e.r.emplace_back(static_cast<long>(x));
  const ExtElement inv = group.ext.inv(e);
  WalkStep out{inv.m, {}};
  for (const auto& x : inv.r) out.r.push_back(to_int64(x));
  return out;
}

void validate(const WalkConfig& c) {
  if (c.steps < 1) throw std::invalid_argument("simulate: steps must be >= 1");
  if (c.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  if (c.threads < 1) throw std::invalid_argument("simulate: threads must be >= 1");
  if (c.generators.empty()) throw std::invalid_argument("simulate: empty generator set");
  if (c.generators.size() > (1u << 16)) throw std::invalid_argument("simulate: too many generators");
  const size_t n = static_cast<size_t>(c.group.lattice_rank());
  for (const WalkStep& s : c.generators) {
    if (s.r.size() != n) throw std::invalid_argument("simulate: generator has the wrong rank");
    if (c.group.ext.is_trivial() && !c.group.is_inoue() && s.m != 0)
      throw std::invalid_argument("simulate: the trivial group has only the identity");
  }
  const std::set<WalkStep> set(c.generators.begin(), c.generators.end());
  for (const WalkStep& s : c.generators)
    if (!set.count(inverse(c.group, s))) throw std::invalid_argument("simulate: generator set is not symmetric");
  if (is_abelian(c.group)) {
    std::int64_t reach = 0;
    for (const WalkStep& s : c.generators) {
      reach = std::max(reach, static_cast<std::int64_t>(std::llabs(s.m)));
      for (auto x : s.r) reach = std::max<std::int64_t>(reach, std::llabs(x));
    }
    if (reach > 0 && c.steps > kAbelianReach / reach)
      throw std::invalid_argument("simulate: walk too long for exact 64-bit tracking");
  }
}

ChunkResult run_chunk(const WalkConfig& c, std::int64_t first, std::int64_t last) {
  if (c.group.is_inoue()) return inoue_chunk(c, first, last);
  if (!is_abelian(c.group)) return extension_chunk(c, first, last);
  switch (c.group.lattice_rank()) {
    case 0: return abelian_chunk<1>(c, first, last);
    case 1: return abelian_chunk<2>(c, first, last);
    case 2: return abelian_chunk<3>(c, first, last);
    case 3: return abelian_chunk<4>(c, first, last);
    case 4: return abelian_chunk<5>(c, first, last);
  }
  throw Unsupported("simulate: lattice rank above 4");
}

}  // namespace

WalkGroup WalkGroup::lattice(LatticeExtensionGroup g, std::string name) {
  WalkGroup w;
  w.ext = std::move(g);
  w.name = std::move(name);
  return w;
}

WalkGroup WalkGroup::inoue_group(std::shared_ptr<const InoueGroup> g, std::string name) {
  WalkGroup w;
  w.ext = LatticeExtensionGroup::from_twist(g->twist());
  w.inoue = std::move(g);
  w.name = std::move(name);
  return w;
}

WalkGroup WalkGroup::named(const std::string& name) {
  if (name == "1" || name == "trivial") return lattice(LatticeExtensionGroup::trivial(), "1");
  if (name == "z") return lattice(LatticeExtensionGroup::free_abelian(1), "z");
  if (name.size() == 2 && name[0] == 'z' && name[1] >= '2' && name[1] <= '5')
    return lattice(LatticeExtensionGroup::free_abelian(name[1] - '0'), name);
  if (name == "inoue") return inoue_group(std::make_shared<const InoueGroup>(spectral_data(canonical_matrix())));
  throw std::invalid_argument("unknown group '" + name + "' (expected 1, z, z2..z5, inoue)");
}

int WalkGroup::lattice_rank() const {
  if (inoue) return 3;
  return ext.is_trivial() ? 0 : ext.n();
}

LatticeExtensionGroup WalkGroup::as_extension() const { return ext; }

std::vector<WalkStep> standard_generators(const WalkGroup& group) {
  const size_t n = static_cast<size_t>(group.lattice_rank());
  if (!group.is_inoue() && group.ext.is_trivial()) return {WalkStep{0, {}}};
  std::vector<WalkStep> out{{1, std::vector<std::int64_t>(n, 0)}, {-1, std::vector<std::int64_t>(n, 0)}};
  for (size_t i = 0; i < n; ++i) {
    for (std::int64_t sign : {1, -1}) {
      WalkStep s{0, std::vector<std::int64_t>(n, 0)};
      s.r[i] = sign;
      out.push_back(std::move(s));
    }
  }
  return out;
}

WalkStats simulate(const WalkConfig& config) {
  WalkConfig c = config;
  if (c.generators.empty()) c.generators = standard_generators(c.group);
  validate(c);

  const std::int64_t chunks = (c.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkResult> results(static_cast<size_t>(chunks));
  auto work = [&](std::int64_t k) {
    const std::int64_t first = k * kChunkTrials;
    results[static_cast<size_t>(k)] = run_chunk(c, first, std::min(c.trials, first + kChunkTrials));
  };
  const int threads = static_cast<int>(std::min<std::int64_t>(c.threads, chunks));
  if (threads <= 1) {
    for (std::int64_t k = 0; k < chunks; ++k) work(k);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        try {
          for (std::int64_t k; (k = next.fetch_add(1)) < chunks;) work(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Merge in chunk order so floating-point sums do not depend on scheduling.
  WalkStats stats;
  stats.steps = c.steps;
  stats.trials = c.trials;
  stats.seed = c.seed;
  stats.lazy = c.lazy;
  const auto len = static_cast<size_t>(c.steps + 1);
  stats.return_counts.assign(len, 0);
  std::vector<double> squared(len, 0.0);
  for (const ChunkResult& r : results) {
    for (size_t t = 0; t < len; ++t) {
      stats.return_counts[t] += r.returns[t];
      squared[t] += r.squared[t];
    }
  }
  stats.mean_squared_distance.resize(len);
  for (size_t t = 0; t < len; ++t) stats.mean_squared_distance[t] = squared[t] / static_cast<double>(c.trials);
  try {
    stats.exponent = estimate_exponent(stats);
  } catch (const NoEstimate& e) {
    stats.no_estimate_reason = e.what();
  }
  return stats;
}

ExponentEstimate estimate_exponent(const WalkStats& stats) {
  const auto& counts = stats.return_counts;
  const std::int64_t steps = static_cast<std::int64_t>(counts.size()) - 1;
  std::int64_t nonzero = 0;
  for (std::int64_t t = 1; t <= steps; ++t) nonzero += counts[static_cast<size_t>(t)] != 0;
  if (nonzero < 10) throw NoEstimate("estimate_exponent: only " + std::to_string(nonzero) + " nonzero return counts");

  constexpr std::uint64_t kMinBinCount = 25;
  const std::int64_t start = steps >= 64 ? 16 : 2;
  const double ratio = std::pow(2.0, 0.25);
  struct Bin {
    double x, y, w;
    std::int64_t first, last;
  };
  std::vector<Bin> bins;
  for (std::int64_t lo = start; lo <= steps;) {
    const std::int64_t hi = std::max(lo + 2, static_cast<std::int64_t>(std::ceil(static_cast<double>(lo) * ratio)));
    std::uint64_t total = 0;
    double log_sum = 0;
    std::int64_t times = 0, first = -1, last = -1;
    for (std::int64_t t = lo + (lo & 1); t < hi && t <= steps; t += 2) {
      total += counts[static_cast<size_t>(t)];
      log_sum += std::log(static_cast<double>(t));
      ++times;
      if (first < 0) first = t;
      last = t;
    }
    lo = hi;
    if (times == 0 || total < kMinBinCount) continue;
    const double freq = static_cast<double>(total) / (static_cast<double>(times) * static_cast<double>(stats.trials));
    bins.push_back({log_sum / static_cast<double>(times), std::log(freq), static_cast<double>(total), first, last});
  }
  if (bins.size() < 3) throw NoEstimate("estimate_exponent: " + std::to_string(bins.size()) + " populated bins");

  // Var(log frequency) ~ 1/count, so counts are the inverse-variance weights.
  double sw = 0, sx = 0, sy = 0;
  for (const Bin& b : bins) {
    sw += b.w;
    sx += b.w * b.x;
    sy += b.w * b.y;
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (const Bin& b : bins) {
    sxx += b.w * (b.x - mx) * (b.x - mx);
    sxy += b.w * (b.x - mx) * (b.y - my);
  }
  ExponentEstimate est;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  for (const Bin& b : bins) {
    const double e = b.y - (est.intercept + est.slope * b.x);
    est.residual += b.w * e * e;
  }
  const double dispersion = std::max(1.0, est.residual / static_cast<double>(bins.size() - 2));
  est.standard_error = std::sqrt(dispersion / sxx);
  est.ci_low = est.slope - 1.96 * est.standard_error;
  est.ci_high = est.slope + 1.96 * est.standard_error;
  est.bins = static_cast<int>(bins.size());
  est.first_time = bins.front().first;
  est.last_time = bins.back().last;
  return est;
}

std::string to_string(EmpiricalLabel label) {
  return label == EmpiricalLabel::RecurrentLike ? "recurrent-like" : "transient-like";
}

WalkConfig default_walk_config(const WalkGroup& group, std::uint64_t seed) {
  WalkConfig c;
  c.group = group;
  c.generators = standard_generators(group);
  c.seed = seed;
  if (!group.is_inoue() && group.ext.is_trivial()) {
    c.steps = 1000;
    c.trials = 1000;
  } else if (is_abelian(group)) {
    c.steps = 10000;
    c.trials = 100000;
  } else {
    // Twisted coordinates grow like alpha^|m|; 1000 steps keeps them far
    // inside 64 bits.
    c.steps = 1000;
    c.trials = 20000;
  }
  return c;
}

EmpiricalLabel empirical_label(const WalkStats& stats, std::uint64_t* late_returns) {
  std::uint64_t late = 0;
  const std::int64_t from = stats.steps - stats.steps / 10;
  for (std::int64_t t = std::max<std::int64_t>(from + 1, 1); t <= stats.steps; ++t)
    late += stats.return_counts[static_cast<size_t>(t)];
  if (late_returns) *late_returns = late;
  const bool recurrent = stats.exponent && stats.exponent->slope >= kRecurrenceThreshold && late > 0;
  return recurrent ? EmpiricalLabel::RecurrentLike : EmpiricalLabel::TransientLike;
}

CrossCheck cross_check(const WalkGroup& group, const WalkStats& stats) {
  CrossCheck out;
  out.group = group.name;
  out.growth = classify_varopoulos(group.as_extension());
  out.predicted_varopoulos = out.growth.varopoulos;
  out.empirical = empirical_label(stats, &out.late_returns);
  out.exponent = stats.exponent;
  out.agree = out.predicted_varopoulos == (out.empirical == EmpiricalLabel::RecurrentLike);
  return out;
}

CrossCheck cross_check(const WalkGroup& group, std::uint64_t seed) {
  return cross_check(group, simulate(default_walk_config(group, seed)));
}

}  // namespace covering
