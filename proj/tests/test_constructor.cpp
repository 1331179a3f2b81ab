// Tests for the recursive construction: config arithmetic, the exact size
// ledger, blocker sampling, the conditional-expectation derandomizer, and
// the builder itself (dense and recursive forms).
//
// Oracles: an independent test-side implementation of the ledger recursion
// in exact rationals, brute-force covering checks straight from the
// definition, and brute-force re-derivations of sweeps and estimators.

#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "turan/combinat.hpp"
#include "turan/constructor.hpp"
#include "turan/errors.hpp"
#include "turan/hypergraph.hpp"

using namespace turan;

namespace {

// Brute-force covering check, straight from the definition: every s-subset
// of [n] contains at least one edge.
bool covers_all(const TuranSystem& sys) {
  if (sys.n() < sys.s()) return true;
  bool ok = true;
  for_each_subset(sys.n(), sys.s(), [&](std::span<const int> xs) {
    if (!ok) return;
    bool hit = false;
    Subset pick(sys.r());
    std::vector<int> idx(sys.r());
    // enumerate r-subsets of xs via an index odometer
    for (int i = 0; i < sys.r(); ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < sys.r(); ++i) pick[i] = xs[idx[i]];
      if (sys.contains(pick)) {
        hit = true;
        break;
      }
      int i = sys.r() - 1;
      while (i >= 0 && idx[i] == static_cast<int>(xs.size()) - sys.r() + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < sys.r(); ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ok = false;
  });
  return ok;
}

// Independent re-implementation of the ledger recursion.
class LedgerOracle {
 public:
  explicit LedgerOracle(ConstructionConfig cfg) : cfg_(std::move(cfg)) {}

  Rat bound(int n, int r) {
    auto key = std::make_pair(n, r);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Rat b;
    if (r <= cfg_.r0()) {
      b = Rat(binom(n, r));
    } else if (n <= r) {
      b = 0;
    } else {
      int k = cfg_.k_of(r);
      Rat p = cfg_.p_of(r);
      Rat q = Rat(1) - p;
      Rat qe = 1;
      std::uint64_t e = binom64(k, cfg_.R);
      for (std::uint64_t i = 0; i < e; ++i) qe *= q;
      Rat tail = 0;
      for (int y = k; y <= n; ++y)
        tail += Rat(binom(y - 1, k - 1)) * bound(n - y, r - k);
      b = p * Rat(binom(n, r)) + qe * tail;
      Rat cap = Rat(binom(n, r));
      if (cap < b) b = cap;
    }
    memo_.emplace(key, b);
    return b;
  }

 private:
  ConstructionConfig cfg_;
  std::map<std::pair<int, int>, Rat> memo_;
};

}  // namespace

TEST_CASE("preset config: split sizes, probabilities, and base threshold") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  CHECK(cfg.R == 1);
  CHECK(cfg.lemma == Lemma::kMain);
  CHECK(cfg.beta == Rat(784, 1000));
  CHECK(cfg.c == Rat(289, 100));
  CHECK(cfg.mu == Rat(6239, 1000));
  CHECK(cfg.r0() == 5);  // floor(6.239) - 1
  CHECK(cfg.k_of(6) == 5);
  CHECK(cfg.k_of(12) == 10);
  CHECK(cfg.p_of(6) == Rat(289, 500));  // 2.89 / C(5,1)
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("optimal configs validate and derive sensible thresholds") {
  for (int R = 1; R <= 4; ++R) {
    ConstructionConfig cfg = ConstructionConfig::optimal(R);
    CHECK(cfg.R == R);
    CHECK(cfg.lemma == Lemma::kGeneral);
    CHECK_NOTHROW(cfg.validate());
  }
  CHECK(ConstructionConfig::optimal(1).r0() == 4);
  CHECK(ConstructionConfig::optimal(2).r0() == 4);
  // The general rule uses k = floor(beta*r).
  ConstructionConfig c2 = ConstructionConfig::optimal(2);
  CHECK(c2.k_of(6) == 5);
}

TEST_CASE("config validation failures") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  SUBCASE("main split rule demands gap one") {
    cfg.R = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("beta outside (0,1)") {
    cfg.beta = Rat(3, 2);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("infeasible mu is a config error, not a usage error") {
    cfg.mu = Rat(5);
    CHECK_THROWS_AS(cfg.validate(), ConfigInfeasible);
  }
  SUBCASE("pair that fails the gap-two side condition") {
    ConstructionConfig g;
    g.R = 2;
    g.lemma = Lemma::kGeneral;
    g.beta = Rat(715, 1000);
    g.c = Rat(251, 100);
    g.mu = Rat(10);
    CHECK_THROWS_AS(g.validate(), ConfigInfeasible);
  }
}

TEST_CASE("ledger matches an independent recursion oracle") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  BoundLedger ledger(cfg);
  LedgerOracle oracle(cfg);
  for (int r = 0; r <= 10; ++r)
    for (int n = 0; n <= 16; ++n)
      CHECK(ledger.bound(n, r) == oracle.bound(n, r));
  // Spot value: at (12,6) the recursive branch beats C(12,6) = 924.
  Rat b126 = ledger.bound(12, 6);
  CHECK(b126 < Rat(924));
  CHECK(b126 > Rat(546));
  CHECK(b126 == oracle.bound(12, 6));
}

TEST_CASE("ledger base cases and the trivial cap") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  BoundLedger ledger(cfg);
  for (int n = 0; n <= 12; ++n)
    for (int r = 0; r <= 5; ++r)
      CHECK(ledger.bound(n, r) == Rat(binom(n, r)));
  CHECK(ledger.bound(3, 7) == 0);
  CHECK(ledger.bound(7, 7) == 0);  // n <= r and r > r0
  for (int n = 8; n <= 20; ++n)
    for (int r = 6; r <= 9; ++r)
      CHECK(ledger.bound(n, r) <= Rat(binom(n, r)));
}

TEST_CASE("ledger soundness: bound stays under mu/(r+1) of the edge space") {
  // Exact rational comparison over the whole working grid; this is the
  // arithmetic backbone of the all-r size guarantee.
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  BoundLedger ledger(cfg);
  for (int r = 0; r <= 20; ++r)
    for (int n = r + 1; n <= 40; ++n) {
      Rat lhs = ledger.bound(n, r) * Rat(r + 1);
      Rat rhs = cfg.mu * Rat(binom(n, r));
      CHECK(lhs <= rhs);
    }
}

TEST_CASE("derived seeds separate streams") {
  CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 3, 5));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 4, 3));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(2, 2, 3, 4));
}

TEST_CASE("blocker sampling: degenerate probabilities and reproducibility") {
  CHECK(sample_blocker(10, 3, Rat(0), 7).size() == 0);
  CHECK(sample_blocker(10, 3, Rat(1), 7) == complete_graph(10, 3));
  CHECK(sample_blocker(10, 3, Rat(1, 2), 123) == sample_blocker(10, 3, Rat(1, 2), 123));
  CHECK_THROWS_AS((void)sample_blocker(10, 3, Rat(3, 2), 7), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_blocker(10, 3, Rat(-1, 2), 7), std::invalid_argument);
}

TEST_CASE("blocker sampling: empirical mean matches the binomial mean") {
  // |S| ~ Binomial(C(10,3) = 120, 1/2): mean 60, per-sample sd ~5.48.
  // Over 1000 seeds the mean's 3-sigma window is +-0.52.
  double total = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i)
    total += static_cast<double>(sample_blocker(10, 3, Rat(1, 2), 1000 + i).size());
  double mean = total / trials;
  CHECK(mean > 59.4);
  CHECK(mean < 60.6);
}

TEST_CASE("popcount_range agrees with per-rank membership") {
  RGraph g = sample_blocker(11, 4, Rat(1, 3), 99);
  const std::uint64_t m = binom64(11, 4);
  for (std::uint64_t lo = 0; lo <= m; lo += 37)
    for (std::uint64_t hi = lo; hi <= m; hi += 61) {
      std::uint64_t expect = 0;
      for (std::uint64_t rk = lo; rk < hi; ++rk) expect += g.contains_rank(rk);
      CHECK(popcount_range(g, lo, hi) == expect);
    }
}

TEST_CASE("hits_blocker agrees with subset brute force") {
  std::mt19937_64 seeds(3);
  for (auto [k, kR] : {std::pair{5, 4}, {5, 3}, {4, 2}, {3, 3}}) {
    RGraph blocker = sample_blocker(10, kR, Rat(1, 5), seeds());
    auto edges = blocker.edges();
    for_each_subset(10, k, [&](std::span<const int> y) {
      bool expect = false;
      for (const auto& e : edges)
        if (std::includes(y.begin(), y.end(), e.begin(), e.end())) {
          expect = true;
          break;
        }
      Subset yv(y.begin(), y.end());
      CHECK(hits_blocker(blocker, yv) == expect);
    });
  }
}

TEST_CASE("sweep matches the covered-sets complement") {
  std::mt19937_64 seeds(17);
  for (auto [n, k, kR, den] : std::vector<std::array<int, 4>>{
           {10, 5, 4, 4}, {10, 4, 2, 6}, {9, 4, 3, 3}, {8, 3, 3, 2}}) {
    RGraph blocker = sample_blocker(n, kR, Rat(1, den), seeds());
    RGraph uncovered = complement_within(covered_sets(blocker, k - kR, k));
    for (int threads : {1, 2}) {
      SweepResult sw = sweep_uncovered(blocker, k, true, threads);
      CHECK(sw.uncovered_total == uncovered.size());
      CHECK(sw.uncovered_ranks.size() == uncovered.size());
      CHECK(std::is_sorted(sw.uncovered_ranks.begin(), sw.uncovered_ranks.end()));
      for (std::uint64_t rk : sw.uncovered_ranks) CHECK(uncovered.contains_rank(rk));
      // per-max counts; block [C(y-1,k), C(y,k)) holds the max-y sets
      for (int y = k; y <= n; ++y)
        CHECK(sw.uncovered_by_max[static_cast<std::size_t>(y)] ==
              popcount_range(uncovered, binom64(y - 1, k), binom64(y, k)));
    }
    SweepResult no_ranks = sweep_uncovered(blocker, k, false, 1);
    CHECK(no_ranks.uncovered_total == uncovered.size());
    CHECK(no_ranks.uncovered_ranks.empty());
  }
}

TEST_CASE("estimator of a fixed blocker equals the definition") {
  const int n = 9, k = 4, kR = 3;
  std::vector<std::uint64_t> ws(static_cast<std::size_t>(n) + 1),
      wt(static_cast<std::size_t>(n) + 1);
  for (int a = 0; a <= n; ++a) {
    ws[static_cast<std::size_t>(a)] = static_cast<std::uint64_t>(3 * a + 1);
    wt[static_cast<std::size_t>(a)] = static_cast<std::uint64_t>(a * a);
  }
  std::mt19937_64 seeds(29);
  for (int trial = 0; trial < 5; ++trial) {
    RGraph blocker = sample_blocker(n, kR, Rat(1, 4), seeds());
    Int expect = 0;
    blocker.for_each_edge([&](std::span<const int> e) {
      expect += ws[static_cast<std::size_t>(e.back())];
    });
    RGraph uncovered = complement_within(covered_sets(blocker, k - kR, k));
    uncovered.for_each_edge([&](std::span<const int> y) {
      expect += wt[static_cast<std::size_t>(y.back())];
    });
    CHECK(blocker_estimator(blocker, k, ws, wt) == expect);
  }
}

namespace {

// The canonical small derandomization instance: n=8, r=4, gap 1, split
// k=3. Extension weights C(8-a, 2); recursion costs 8-y (complete
// children of uniformity 1).
struct SmallInstance {
  int n = 8, k = 3, kR = 2;
  Rat p = Rat(289, 300);
  std::vector<std::uint64_t> ws, wt;
  SmallInstance() {
    ws.assign(static_cast<std::size_t>(n) + 1, 0);
    wt.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int a = 2; a <= n; ++a) ws[static_cast<std::size_t>(a)] = binom64(n - a, 2);
    for (int y = 3; y <= n; ++y) wt[static_cast<std::size_t>(y)] = static_cast<std::uint64_t>(n - y);
  }
};

}  // namespace

TEST_CASE("derandomization: degenerate inputs") {
  SmallInstance inst;
  SUBCASE("zero recursion costs let the blocker stay empty") {
    std::vector<std::uint64_t> zero(static_cast<std::size_t>(inst.n) + 1, 0);
    DerandResult res =
        derandomize_blocker(inst.n, inst.kR, inst.k, Rat(1, 2), inst.ws, zero);
    CHECK(res.blocker.size() == 0);
    CHECK(res.estimator_final == 0);
  }
  SUBCASE("probability one forces the complete blocker") {
    DerandResult res =
        derandomize_blocker(inst.n, inst.kR, inst.k, Rat(1), inst.ws, inst.wt);
    CHECK(res.blocker == complete_graph(inst.n, inst.kR));
    Int all = 0;
    for (int a = inst.kR; a <= inst.n; ++a)
      all += Int(binom(a - 1, inst.kR - 1)) * inst.ws[static_cast<std::size_t>(a)];
    CHECK(res.estimator_final == all);
  }
  SUBCASE("probability zero keeps everything uncovered") {
    DerandResult res =
        derandomize_blocker(inst.n, inst.kR, inst.k, Rat(0), inst.ws, inst.wt);
    CHECK(res.blocker.size() == 0);
    Int all = 0;
    for (int y = inst.k; y <= inst.n; ++y)
      all += Int(binom(y - 1, inst.k - 1)) * inst.wt[static_cast<std::size_t>(y)];
    CHECK(res.estimator_final == all);
    CHECK(res.sweep.uncovered_total == binom64(inst.n, inst.k));
  }
}

TEST_CASE("derandomization never exceeds the initial expectation") {
  SmallInstance inst;
  for (int den = 2; den <= 6; ++den) {
    DerandResult res = derandomize_blocker(inst.n, inst.kR, inst.k,
                                           Rat(1, den), inst.ws, inst.wt);
    CHECK(Rat(res.estimator_final) <= res.estimator_initial);
    // Bookkeeping must agree with the standalone estimator and sweep.
    CHECK(res.estimator_final ==
          blocker_estimator(res.blocker, inst.k, inst.ws, inst.wt));
    SweepResult sw = sweep_uncovered(res.blocker, inst.k, false, 1);
    CHECK(sw.uncovered_total == res.sweep.uncovered_total);
    CHECK(sw.uncovered_by_max == res.sweep.uncovered_by_max);
  }
}

TEST_CASE("derandomized estimator beats the Monte Carlo average") {
  SmallInstance inst;
  DerandResult res =
      derandomize_blocker(inst.n, inst.kR, inst.k, inst.p, inst.ws, inst.wt);
  CHECK(Rat(res.estimator_final) <= res.estimator_initial);
  double acc = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    RGraph s = sample_blocker(inst.n, inst.kR, inst.p, 5000 + i);
    acc += rat_to_double(Rat(blocker_estimator(s, inst.k, inst.ws, inst.wt)));
  }
  double mc_mean = acc / trials;
  CHECK(rat_to_double(Rat(res.estimator_final)) <= mc_mean);
  // The sample mean in turn hugs the exact expectation.
  CHECK(mc_mean == doctest::Approx(rat_to_double(res.estimator_initial)).epsilon(0.05));
}

TEST_CASE("builder base cases") {
  Builder b(ConstructionConfig::preset_all_r());
  auto complete5 = b.construct(5, 3);
  CHECK(complete5->size() == 10);
  CHECK(complete5->graph() == complete_graph(5, 3));
  CHECK(complete5->bound() == Rat(10));
  auto point = b.construct(4, 4);  // n = r <= r0 keeps the single full edge
  CHECK(point->size() == 1);
  auto empty = b.construct(7, 8);  // r beyond r0, no (r+1)-sets exist
  CHECK(empty->size() == 0);
  CHECK(empty->graph().size() == 0);
  auto empty2 = b.construct(5, 8);
  CHECK(empty2->size() == 0);
}

TEST_CASE("derandomized build at (12,6): size, split, covering") {
  Builder b(ConstructionConfig::preset_all_r());
  auto sys = b.construct(12, 6);
  CHECK(sys->materialized());
  CHECK(sys->size() == sys->size_blocker_part() + sys->size_recursive_part());
  CHECK(Rat(sys->size()) <= sys->bound());
  CHECK(sys->size() <= 823);  // mu/(r+1) * C(12,6) = 823.5...
  CHECK(sys->graph().size() == sys->size());
  CHECK(covers_all(*sys));
}

TEST_CASE("random builds stay within the ledger and cover") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  cfg.mode = BuildMode::kRandom;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    cfg.seed = seed;
    Builder b(cfg);
    auto sys = b.construct(11, 6);
    CHECK(Rat(sys->size()) <= b.ledger().bound(11, 6));
    CHECK(covers_all(*sys));
  }
}

TEST_CASE("identical config and seed build identical systems") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  cfg.mode = BuildMode::kRandom;
  cfg.seed = 42;
  Builder b1(cfg), b2(cfg);
  auto s1 = b1.construct(13, 6);
  auto s2 = b2.construct(13, 6);
  CHECK(s1->size() == s2->size());
  CHECK(s1->graph() == s2->graph());
}

TEST_CASE("memoization returns the same node and is transparent") {
  Builder b(ConstructionConfig::preset_all_r());
  auto first = b.construct(16, 7);
  auto again = b.construct(16, 7);
  CHECK(first.get() == again.get());  // cache hit
  // A child parameter requested directly comes from the same cache.
  auto child = b.construct(9, 1);
  CHECK(child->graph() == complete_graph(9, 1));
  // A fresh builder reproduces the same system (derandomized mode).
  Builder b3(ConstructionConfig::preset_all_r());
  CHECK(b3.construct(16, 7)->graph() == first->graph());
}

TEST_CASE("general split rule, gap two") {
  ConstructionConfig cfg = ConstructionConfig::optimal(2);
  Builder b(cfg);
  auto base = b.construct(6, 3);  // r = 3 <= r0 = 4
  CHECK(base->size() == 20);
  CHECK(base->graph() == complete_graph(6, 3));
  auto sys = b.construct(14, 6);
  CHECK(sys->gap() == 2);
  CHECK(sys->s() == 8);
  CHECK(Rat(sys->size()) <= b.ledger().bound(14, 6));
  CHECK(covers_all(*sys));
}

TEST_CASE("general split rule, gap one, published pair") {
  ConstructionConfig cfg;
  cfg.R = 1;
  cfg.lemma = Lemma::kGeneral;
  cfg.beta = Rat(715, 1000);
  cfg.c = Rat(251, 100);
  cfg.mu = Rat(4911, 1000);
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.r0() == 4);
  Builder b(cfg);
  auto sys = b.construct(12, 6);
  CHECK(Rat(sys->size()) <= b.ledger().bound(12, 6));
  CHECK(covers_all(*sys));
}

TEST_CASE("deep recursion (three levels) still covers") {
  ConstructionConfig cfg = ConstructionConfig::optimal(1);
  Builder b(cfg);
  // (20,15) -> children of uniformity 5 -> grandchildren of uniformity 2.
  auto sys = b.construct(20, 15);
  CHECK(sys->materialized());
  CHECK(Rat(sys->size()) <= b.ledger().bound(20, 15));
  CHECK(covers_all(*sys));
}

TEST_CASE("lowering the base threshold can break a split") {
  ConstructionConfig cfg = ConstructionConfig::optimal(2);
  cfg.r0_override = 3;
  CHECK(cfg.r0() == 3);
  Builder b(cfg);
  // r = 4 now splits with k = floor(beta*4) = 3, but C(3,2) = 3 < c.
  CHECK_THROWS_AS((void)b.construct(8, 4), ConfigInfeasible);
}

TEST_CASE("raising the base threshold widens the complete region") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  cfg.r0_override = 8;
  CHECK(cfg.r0() == 8);
  Builder b(cfg);
  auto sys = b.construct(9, 8);
  CHECK(sys->graph() == complete_graph(9, 8));
}

TEST_CASE("recursive representation answers the same membership queries") {
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  Builder dense_b(cfg);
  auto dense = dense_b.construct(12, 6);

  BuildOptions small;
  small.materialize_bits = 512;  // C(12,6) = 924 stays recursive
  Builder lazy_b(cfg, small);
  auto lazy = lazy_b.construct(12, 6);

  CHECK_FALSE(lazy->materialized());
  CHECK(lazy->lazy() != nullptr);
  CHECK_THROWS_AS((void)lazy->graph(), std::logic_error);
  CHECK(lazy->size() == dense->size());
  CHECK(lazy->size_blocker_part() == dense->size_blocker_part());
  for (std::uint64_t rk = 0; rk < binom64(12, 6); ++rk) {
    Subset e = unrank_colex(rk, 6);
    CHECK(lazy->contains(e) == dense->graph().contains_rank(rk));
  }
}

TEST_CASE("nested recursive representation (lazy children of a lazy root)") {
  ConstructionConfig cfg = ConstructionConfig::optimal(1);
  Builder dense_b(cfg);
  auto dense = dense_b.construct(20, 15);

  BuildOptions small;
  small.materialize_bits = 100;  // root and the larger children stay lazy
  Builder lazy_b(cfg, small);
  auto lazy = lazy_b.construct(20, 15);

  CHECK_FALSE(lazy->materialized());
  CHECK(lazy->size() == dense->size());
  bool saw_lazy_child = false, saw_dense_child = false;
  for (const auto& ch : lazy->lazy()->child_by_m)
    (ch->materialized() ? saw_dense_child : saw_lazy_child) = true;
  CHECK(saw_lazy_child);
  CHECK(saw_dense_child);
  for (std::uint64_t rk = 0; rk < binom64(20, 15); ++rk) {
    Subset e = unrank_colex(rk, 15);
    CHECK(lazy->contains(e) == dense->graph().contains_rank(rk));
  }
}

TEST_CASE("one-shot wrappers enforce their split rule") {
  ConstructionConfig main_cfg = ConstructionConfig::preset_all_r();
  ConstructionConfig gen_cfg = ConstructionConfig::optimal(2);
  CHECK_THROWS_AS((void)construct_r_plus_1(10, 5, gen_cfg), std::invalid_argument);
  CHECK_THROWS_AS((void)construct_general(10, 5, main_cfg), std::invalid_argument);
  RGraph g = construct_r_plus_1(12, 6, main_cfg);
  Builder b(main_cfg);
  CHECK(g == b.construct(12, 6)->graph());
  RGraph h = construct_general(10, 4, gen_cfg);
  CHECK(h.size() == binom64(10, 4));  // r = 4 is the base threshold
}

TEST_CASE("random mode reports exhaustion when no attempt meets the bound") {
  // At (12,6) the expected size sits essentially on the ledger bound, so
  // a single attempt fails for about half of all seeds; seed 2 is one.
  ConstructionConfig cfg = ConstructionConfig::preset_all_r();
  cfg.mode = BuildMode::kRandom;
  cfg.seed = 2;
  cfg.max_resamples = 1;
  Builder b(cfg);
  CHECK_THROWS_AS((void)b.construct(12, 6), ResampleExhausted);
  // More attempts rescue the same seed.
  cfg.max_resamples = 64;
  Builder b2(cfg);
  CHECK(Rat(b2.construct(12, 6)->size()) <= b2.ledger().bound(12, 6));
  // A non-positive attempt budget is a config error.
  cfg.max_resamples = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
