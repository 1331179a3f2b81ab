#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "turan/bigint.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

// Which split rule the recursion uses at a node of uniformity r:
//   kMain:    k = floor(beta * (r + 1)), gap R must be 1
//   kGeneral: k = floor(beta * r), any gap R >= 1
enum class Lemma { kMain, kGeneral };

enum class BuildMode { kRandom, kDerandomized };

const char* to_string(Lemma l);
const char* to_string(BuildMode m);

struct ConstructionConfig {
  int R = 1;
  Lemma lemma = Lemma::kMain;
  BuildMode mode = BuildMode::kDerandomized;
  // Held exactly; every size bound downstream is computed in exact
  // rational arithmetic from these.
  Rat beta = 0;
  Rat c = 0;
  Rat mu = 0;
  std::uint64_t seed = 0;
  int max_resamples = 64;
  std::optional<int> r0_override;

  // The (0.784, 2.89, 6.239) parameter set: feasible for the one-step
  // recursion at every r, giving size <= mu/(r+1) * C(n, r).
  static ConstructionConfig preset_all_r();

  // Optimal constants for gap R derived by constants::solve_c0, paired
  // with the general split rule.
  static ConstructionConfig optimal(int R);

  double beta_d() const { return rat_to_double(beta); }
  double c_d() const { return rat_to_double(c); }
  double mu_d() const { return rat_to_double(mu); }

  // Split size at uniformity r (exact floor).
  int k_of(int r) const;

  // Largest uniformity built as a complete graph. kMain: floor(mu) - 1.
  // kGeneral: smallest value such that every recursive level r > r0 has
  // k_of(r) >= R and c <= C(k_of(r), R). r0_override replaces the derived
  // value; lowering it can make a recursive split infeasible, which the
  // build reports as ConfigInfeasible.
  int r0() const;

  // Inclusion probability at uniformity r: c / C(k_of(r), R), exact.
  Rat p_of(int r) const;

  // Throws ConfigInfeasible when the feasibility conditions of the chosen
  // recursion fail, std::invalid_argument on malformed fields.
  void validate() const;
};

// Exact recursion bound B(n, r):
//   B = C(n, r)                                        r <= r0
//   B = 0                                              n <= r (and r > r0)
//   B = min(C(n,r), p*C(n,r)
//           + (1-p)^{C(k,R)} * sum_y C(y-1, k-1) * B(n-y, r-k))
// with k = k_of(r), p = c/C(k,R), y ranging over [k, n]. Every random-mode
// outcome is accepted only if its size is <= B; derandomized outputs meet
// it deterministically.
class BoundLedger {
 public:
  explicit BoundLedger(const ConstructionConfig& cfg);
  const Rat& bound(int n, int r);

 private:
  ConstructionConfig cfg_;
  std::map<std::pair<int, int>, Rat> memo_;
};

// Deterministic per-node stream: hash of (seed, n, r, attempt).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t r,
                          std::uint64_t attempt);

// Includes every kR-subset of [n] independently with probability p
// (p in [0, 1], exact threshold on a mt19937_64 stream). Candidates are
// visited in colex order, one draw each, so the result is reproducible.
RGraph sample_blocker(int n, int kR, const Rat& p, std::uint64_t seed);

// Number of set bits of g with colex rank in [lo, hi).
std::uint64_t popcount_range(const RGraph& g, std::uint64_t lo, std::uint64_t hi);

// True iff some kR-subset of y (uniformity of blocker) is in the blocker.
bool hits_blocker(const RGraph& blocker, std::span<const int> y);

// Uncovered k-sets of [n]: those containing no edge of the blocker.
struct SweepResult {
  std::vector<std::uint64_t> uncovered_by_max;  // index y in [0, n]
  std::uint64_t uncovered_total = 0;
  // colex ranks of uncovered k-sets, ascending; filled only on request
  std::vector<std::uint64_t> uncovered_ranks;
};
SweepResult sweep_uncovered(const RGraph& blocker, int k, bool collect_ranks,
                            int threads);

// Pessimistic-estimator value of a fixed blocker S:
//   sum_{A in S} ext_weight[max A] + sum_{uncovered Y} cost[max Y].
// ext_weight/cost are indexed by max element (index 0 serves the empty
// set when kR = 0).
Int blocker_estimator(const RGraph& blocker, int k,
                      std::span<const std::uint64_t> ext_weight_by_max,
                      std::span<const std::uint64_t> cost_by_max);

struct DerandResult {
  RGraph blocker;
  Int estimator_final = 0;   // realized estimator = resulting system size
  Rat estimator_initial = 0; // expectation before any decision
  SweepResult sweep;         // uncovered counts under the final blocker
};

// Conditional-expectation derandomization. Candidates (kR-subsets of [n])
// are visited in colex order and greedily fixed in or out, whichever does
// not increase
//   E[ sum_{A in S} ext_weight[max A] + sum_{Y uncovered} cost[max Y] ],
// ties broken toward exclusion. All comparisons are exact (integer
// arithmetic on a common denominator), so the final estimator value never
// exceeds the initial expectation. pair_budget caps the number of
// (candidate, superset) pairs examined; exceeding it is InstanceTooLarge.
DerandResult derandomize_blocker(int n, int kR, int k, const Rat& p,
                                 std::span<const std::uint64_t> ext_weight_by_max,
                                 std::span<const std::uint64_t> cost_by_max,
                                 std::uint64_t pair_budget = 600000000ull);

struct BuildOptions {
  // Largest C(n, r) that will be stored as an explicit bitvector; larger
  // systems stay in recursive (blocker + subsystems) form.
  std::uint64_t materialize_bits = 1ull << 28;
  std::uint64_t derand_pair_budget = 600000000ull;
  int threads = 0;  // 0 = one thread per hardware core, capped at 8
};

// A covering system produced by the recursion: every (r + R)-subset of [n]
// contains an edge. Either materialized as an RGraph or held recursively
// as (blocker, subsystems); both forms answer membership queries and know
// their exact size.
class TuranSystem {
 public:
  int n() const { return n_; }
  int r() const { return r_; }
  int gap() const { return gap_; }
  int s() const { return r_ + gap_; }
  std::uint64_t size() const { return size_; }
  const Rat& bound() const { return bound_; }

  bool materialized() const { return dense_.has_value(); }
  const RGraph& graph() const;  // throws std::logic_error when lazy

  bool contains(std::span<const int> edge) const;

  // Exact split of the size into extension part and recursive part
  // (the two are disjoint families).
  std::uint64_t size_blocker_part() const { return size_s_star_; }
  std::uint64_t size_recursive_part() const { return size_t_star_; }

  struct LazyNode {
    int k = 0;
    RGraph blocker;  // uniformity k - gap
    std::vector<std::shared_ptr<const TuranSystem>> child_by_m;  // [0, n-k]
  };
  const LazyNode* lazy() const { return lazy_ ? &*lazy_ : nullptr; }

 private:
  friend class Builder;
  int n_ = 0, r_ = 0, gap_ = 1;
  std::uint64_t size_ = 0;
  std::uint64_t size_s_star_ = 0, size_t_star_ = 0;
  Rat bound_ = 0;
  std::optional<RGraph> dense_;
  std::optional<LazyNode> lazy_;
};

// Memoizing recursive builder. One instance per configuration; safe to
// call from several threads (a shared lock serializes cache access).
class Builder {
 public:
  explicit Builder(ConstructionConfig cfg, BuildOptions opts = {});

  std::shared_ptr<const TuranSystem> construct(int n, int r);

  const ConstructionConfig& config() const { return cfg_; }
  BoundLedger& ledger() { return ledger_; }
  const BuildOptions& options() const { return opts_; }

 private:
  std::shared_ptr<const TuranSystem> build_node(int n, int r);

  ConstructionConfig cfg_;
  BuildOptions opts_;
  BoundLedger ledger_;
  std::map<std::pair<int, int>, std::shared_ptr<const TuranSystem>> cache_;
  std::recursive_mutex mu_;
};

// One-shot materialized constructions. The first requires lemma kMain
// (gap 1); the second lemma kGeneral. Both validate cfg, build with a
// fresh cache, and return the explicit edge set.
RGraph construct_r_plus_1(int n, int r, const ConstructionConfig& cfg,
                          const BuildOptions& opts = {});
RGraph construct_general(int n, int r, const ConstructionConfig& cfg,
                         const BuildOptions& opts = {});

}  // namespace turan
