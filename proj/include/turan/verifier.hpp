#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "turan/bigint.hpp"
#include "turan/combinat.hpp"
#include "turan/constructor.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

enum class VerifyStatus { kCovered, kCounterexample, kSampledOk };

const char* to_string(VerifyStatus s);

struct VerifyResult {
  VerifyStatus status = VerifyStatus::kCovered;
  std::optional<Subset> counterexample;  // an s-set containing no edge
  std::uint64_t checked = 0;             // s-subsets examined
  std::optional<std::uint64_t> samples;  // set by sampled verification
  // one-sided 95% upper confidence bound on the uncovered fraction,
  // set when sampling finishes without a failure
  std::optional<double> failure_rate_bound;
};

// True iff some r-subset of x is an edge of g (r = g.r(), |x| >= r).
// Probes the subsets keeping the smallest elements first: extension-built
// systems are prefix-biased, so these hit earliest.
bool covers(const RGraph& g, std::span<const int> x);

// Exhaustive check that every s-subset of [n] contains an edge of g.
// Counterexamples are reported at the lowest colex rank. n < s is
// vacuously covered with checked = 0. Throws InstanceTooLarge when
// C(n, s) exceeds budget.
VerifyResult verify_full(const RGraph& g, int s, std::uint64_t budget = 10000000,
                         int threads = 0);

// Checks `samples` uniform s-subsets (deterministic in seed); stops at the
// first uncovered one.
VerifyResult verify_sampled(const RGraph& g, int s, std::uint64_t samples,
                            std::uint64_t seed);

// Same checks against a constructed system (s = sys.s()); works for both
// materialized and recursive representations.
VerifyResult verify_full(const TuranSystem& sys, std::uint64_t budget = 10000000,
                         int threads = 0);
VerifyResult verify_sampled(const TuranSystem& sys, std::uint64_t samples,
                            std::uint64_t seed);

// Density figures, all exact rationals:
//   density            = size / C(n, r)
//   normalized_trivial = size * C(s, s-r) / C(n, r)   (the mu normalization)
//   decaen_ratio       = size * C(s-1, s-r) / C(n, r) (reported, never asserted)
struct DensityReport {
  int n = 0, s = 0, r = 0;
  std::uint64_t size = 0;
  Rat density = 0;
  Rat normalized_trivial = 0;
  Rat decaen_ratio = 0;
  std::optional<double> mu_target;
  std::optional<double> mu_slack;  // mu_target - normalized_trivial
  bool meets_mu_target = true;     // normalized_trivial <= mu_target + 1e-9
};

DensityReport density_report(const RGraph& g, int s,
                             std::optional<double> mu_target = std::nullopt);

// Same figures from (n, r, size) alone, for systems kept in recursive form.
DensityReport density_report_sized(int n, int r, std::uint64_t size, int s,
                                   std::optional<double> mu_target = std::nullopt);

// One (n, r) cell of a parameter sweep. A failed construction or
// verification is captured in `error` without aborting the sweep.
struct TableCell {
  int n = 0, r = 0;
  bool ok = false;
  std::string error;
  std::uint64_t size = 0;
  Rat ledger_bound = 0;
  std::string verify_status;
  std::optional<DensityReport> report;
};

struct TableOptions {
  std::uint64_t full_budget = 10000000;  // verify_full above this -> sampled
  std::uint64_t samples = 100000;
  std::uint64_t sample_seed = 12345;
  int threads = 0;
};

// Builds, verifies, and measures every cell (r, n) in
// [r_min, r_max] x [n_min, n_max] under one shared builder cache.
std::vector<TableCell> bound_table(const ConstructionConfig& cfg, int r_min,
                                   int r_max, int n_min, int n_max,
                                   const BuildOptions& bopts = {},
                                   const TableOptions& topts = {});

}  // namespace turan
