#include "turan/verifier.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "turan/errors.hpp"
#include "turan/parallel.hpp"

namespace turan {

const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kCovered: return "covered";
    case VerifyStatus::kCounterexample: return "counterexample";
    default: return "sampled_ok";
  }
}

namespace {

// Membership oracle over either representation.
bool edge_in(const RGraph& g, std::span<const int> e) { return g.contains(e); }
bool edge_in(const TuranSystem& sys, std::span<const int> e) { return sys.contains(e); }
int uniformity(const RGraph& g) { return g.r(); }
int uniformity(const TuranSystem& sys) { return sys.r(); }

// Does some r-subset of x belong to the system? Drop sets are visited
// largest-positions-first so the subset of smallest elements is probed
// first.
template <class Sys>
bool covers_generic(const Sys& sys, std::span<const int> x) {
  const int s = static_cast<int>(x.size());
  const int r = uniformity(sys);
  const int R = s - r;
  if (R < 0) throw std::invalid_argument("covers: set smaller than uniformity");
  if (R == 0) return edge_in(sys, x);
  std::vector<int> keep(static_cast<std::size_t>(r));
  if (R == 1) {
    for (int d = s - 1; d >= 0; --d) {
      int t = 0;
      for (int j = 0; j < s; ++j)
        if (j != d) keep[static_cast<std::size_t>(t++)] = x[static_cast<std::size_t>(j)];
      if (edge_in(sys, keep)) return true;
    }
    return false;
  }
  // mirror the standard combination walk so the first drop set is the R
  // largest positions
  std::vector<int> pick(static_cast<std::size_t>(R));
  for (int i = 0; i < R; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<char> dropped(static_cast<std::size_t>(s));
  for (;;) {
    std::fill(dropped.begin(), dropped.end(), 0);
    for (int e : pick) dropped[static_cast<std::size_t>(s - 1 - e)] = 1;
    int t = 0;
    for (int j = 0; j < s; ++j)
      if (!dropped[static_cast<std::size_t>(j)])
        keep[static_cast<std::size_t>(t++)] = x[static_cast<std::size_t>(j)];
    if (edge_in(sys, keep)) return true;
    int i = R - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == s - R + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < R; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
  }
  return false;
}

template <class Sys>
VerifyResult verify_full_generic(const Sys& sys, int n, int s, std::uint64_t budget,
                                 int threads) {
  const int r = uniformity(sys);
  if (s < r) throw std::invalid_argument("verify_full: s below uniformity");
  VerifyResult out;
  if (n < s) return out;  // vacuously covered, checked = C(n, s) = 0
  if (!binomial_table().fits64(n, s) || binom64(n, s) > budget) {
    std::ostringstream os;
    os << "verify_full: C(" << n << ", " << s << ") exceeds the enumeration budget "
       << budget;
    throw InstanceTooLarge(os.str());
  }
  const std::uint64_t total = binom64(n, s);
  int t = resolve_threads(threads);
  if (total < 4096) t = 1;
  std::atomic<std::uint64_t> first_bad{UINT64_MAX};
  std::vector<std::uint64_t> checked(static_cast<std::size_t>(t), 0);
  parallel_blocks(total, t, [&](int tid, std::uint64_t lo, std::uint64_t hi) {
    Subset x = unrank_colex(lo, s);
    std::uint64_t local = 0;
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
      // an earlier block already holds a lower-rank counterexample
      if ((rank & 1023u) == 0 && first_bad.load(std::memory_order_relaxed) < lo) break;
      ++local;
      if (!covers_generic(sys, x)) {
        std::uint64_t cur = first_bad.load(std::memory_order_relaxed);
        while (rank < cur &&
               !first_bad.compare_exchange_weak(cur, rank, std::memory_order_relaxed)) {
        }
        break;
      }
      if (rank + 1 < hi) next_colex(std::span<int>(x), n);
    }
    checked[static_cast<std::size_t>(tid)] = local;
  });
  for (int i = 0; i < t; ++i) out.checked += checked[static_cast<std::size_t>(i)];
  std::uint64_t bad = first_bad.load();
  if (bad != UINT64_MAX) {
    out.status = VerifyStatus::kCounterexample;
    out.counterexample = unrank_colex(bad, s);
  }
  return out;
}

template <class Sys>
VerifyResult verify_sampled_generic(const Sys& sys, int n, int s, std::uint64_t samples,
                                    std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_sampled: samples must be >= 1");
  const int r = uniformity(sys);
  if (s < r) throw std::invalid_argument("verify_sampled: s below uniformity");
  VerifyResult out;
  out.status = VerifyStatus::kSampledOk;
  out.samples = 0;
  if (n < s) {  // nothing to sample; vacuously covered
    out.failure_rate_bound = 0.0;
    return out;
  }
  if (!binomial_table().fits64(n, s))
    throw InstanceTooLarge("verify_sampled: C(n, s) exceeds the rank space");
  const std::uint64_t total = binom64(n, s);
  std::mt19937_64 rng(seed);
  // rejection sampling keeps the draw exactly uniform and reproducible
  // across platforms
  const std::uint64_t reject_below = (0 - total) % total;  // 2^64 mod total
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t u;
    do {
      u = rng();
    } while (u < reject_below);
    std::uint64_t rank = u % total;
    Subset x = unrank_colex(rank, s);
    ++out.checked;
    ++*out.samples;
    if (!covers_generic(sys, x)) {
      out.status = VerifyStatus::kCounterexample;
      out.counterexample = std::move(x);
      return out;
    }
  }
  // zero failures in m draws: one-sided 95% bound 1 - 0.05^{1/m}
  out.failure_rate_bound = -std::expm1(std::log(0.05) / static_cast<double>(samples));
  return out;
}

}  // namespace

bool covers(const RGraph& g, std::span<const int> x) { return covers_generic(g, x); }

VerifyResult verify_full(const RGraph& g, int s, std::uint64_t budget, int threads) {
  return verify_full_generic(g, g.n(), s, budget, threads);
}

VerifyResult verify_sampled(const RGraph& g, int s, std::uint64_t samples,
                            std::uint64_t seed) {
  return verify_sampled_generic(g, g.n(), s, samples, seed);
}

VerifyResult verify_full(const TuranSystem& sys, std::uint64_t budget, int threads) {
  if (sys.materialized()) return verify_full_generic(sys.graph(), sys.n(), sys.s(), budget, threads);
  return verify_full_generic(sys, sys.n(), sys.s(), budget, threads);
}

VerifyResult verify_sampled(const TuranSystem& sys, std::uint64_t samples,
                            std::uint64_t seed) {
  if (sys.materialized())
    return verify_sampled_generic(sys.graph(), sys.n(), sys.s(), samples, seed);
  return verify_sampled_generic(sys, sys.n(), sys.s(), samples, seed);
}

DensityReport density_report_sized(int n, int r, std::uint64_t size, int s,
                                   std::optional<double> mu_target) {
  if (s < r || r < 0) throw std::invalid_argument("density_report: need 0 <= r <= s");
  DensityReport rep;
  rep.n = n;
  rep.s = s;
  rep.r = r;
  rep.size = size;
  const Int ambient = binom(n, r);
  if (ambient != 0) {
    rep.density = Rat(Int(size)) / Rat(ambient);
    rep.normalized_trivial = Rat(Int(size) * binom(s, s - r)) / Rat(ambient);
    rep.decaen_ratio = Rat(Int(size) * binom(s - 1, s - r)) / Rat(ambient);
  }
  rep.mu_target = mu_target;
  if (mu_target) {
    rep.mu_slack = *mu_target - rat_to_double(rep.normalized_trivial);
    rep.meets_mu_target =
        rep.normalized_trivial <= rat_from_double(*mu_target) + Rat(1, 1000000000);
  }
  return rep;
}

DensityReport density_report(const RGraph& g, int s, std::optional<double> mu_target) {
  return density_report_sized(g.n(), g.r(), g.size(), s, mu_target);
}

std::vector<TableCell> bound_table(const ConstructionConfig& cfg, int r_min, int r_max,
                                   int n_min, int n_max, const BuildOptions& bopts,
                                   const TableOptions& topts) {
  std::vector<TableCell> table;
  if (r_min > r_max || n_min > n_max) return table;
  Builder builder(cfg, bopts);
  const double mu_target = cfg.mu_d();
  for (int r = r_min; r <= r_max; ++r) {
    for (int n = n_min; n <= n_max; ++n) {
      TableCell cell;
      cell.n = n;
      cell.r = r;
      try {
        auto sys = builder.construct(n, r);
        cell.size = sys->size();
        cell.ledger_bound = sys->bound();
        const int s = sys->s();
        VerifyResult vr;
        bool can_full =
            n < s || (binomial_table().fits64(n, s) && binom64(n, s) <= topts.full_budget);
        if (can_full) {
          vr = verify_full(*sys, topts.full_budget, topts.threads);
        } else {
          vr = verify_sampled(*sys, topts.samples, topts.sample_seed);
        }
        cell.verify_status = to_string(vr.status);
        cell.ok = vr.status != VerifyStatus::kCounterexample;
        cell.report = density_report_sized(n, r, sys->size(), s, mu_target);
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      table.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace turan
