#include "turan/constructor.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <random>
#include <sstream>
#include <stdexcept>

#include "turan/constants.hpp"
#include "turan/errors.hpp"
#include "turan/parallel.hpp"

namespace turan {

const char* to_string(Lemma l) { return l == Lemma::kMain ? "main" : "general"; }
const char* to_string(BuildMode m) {
  return m == BuildMode::kRandom ? "random" : "derandomized";
}

// ---------------------------------------------------------------------------
// configuration

ConstructionConfig ConstructionConfig::preset_all_r() {
  ConstructionConfig cfg;
  cfg.R = 1;
  cfg.lemma = Lemma::kMain;
  cfg.beta = rat_from_decimal("0.784");
  cfg.c = rat_from_decimal("2.89");
  cfg.mu = rat_from_decimal("6.239");
  return cfg;
}

ConstructionConfig ConstructionConfig::optimal(int R) {
  ConstantsReport rep = solve_c0(R);
  ConstructionConfig cfg;
  cfg.R = R;
  cfg.lemma = Lemma::kGeneral;
  cfg.beta = rat_from_double(rep.beta0);
  cfg.c = rat_from_double(rep.c0);
  cfg.mu = rat_from_double(rep.mu);
  return cfg;
}

int ConstructionConfig::k_of(int r) const {
  if (r < 0) throw std::invalid_argument("k_of: r < 0");
  Rat arg = (lemma == Lemma::kMain) ? Rat(beta * (r + 1)) : Rat(beta * r);
  return static_cast<int>(rat_floor(arg));
}

int ConstructionConfig::r0() const {
  if (r0_override) return *r0_override;
  if (lemma == Lemma::kMain) return static_cast<int>(rat_floor(mu)) - 1;
  for (int m = 0; m <= 100000; ++m) {
    int k = k_of(m + 1);
    if (k >= R && k >= 1 && Rat(c) <= Rat(binom(k, R))) return m;
  }
  throw ConfigInfeasible("r0: no safe base-case threshold below 100000");
}

Rat ConstructionConfig::p_of(int r) const {
  int k = k_of(r);
  return c / Rat(binom(k, R));
}

void ConstructionConfig::validate() const {
  if (R < 1) throw std::invalid_argument("config: R must be >= 1");
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("config: beta must be in (0,1)");
  if (!(c > 0)) throw std::invalid_argument("config: c must be positive");
  if (!(mu > 0)) throw std::invalid_argument("config: mu must be positive");
  if (max_resamples < 1) throw std::invalid_argument("config: max_resamples must be >= 1");
  if (r0_override && *r0_override < 0)
    throw std::invalid_argument("config: r0_override must be >= 0");
  if (lemma == Lemma::kMain) {
    if (R != 1) throw std::invalid_argument("config: the one-step split rule requires R = 1");
    FeasibilityReport rep = check_feasibility_main(beta_d(), c_d(), mu_d());
    if (!rep.ok) {
      std::ostringstream os;
      os << "config infeasible for the one-step recursion: floor(beta*mu)-c = "
         << rep.side_slack << ", inequality slack = " << rep.residual;
      throw ConfigInfeasible(os.str());
    }
  } else {
    FeasibilityReport rep = check_feasibility_general(beta_d(), c_d(), mu_d(), R);
    if (!rep.ok) {
      std::ostringstream os;
      os << "config infeasible for the general recursion: (1-beta)^R - e^{-c} = "
         << rep.side_slack << ", inequality slack = " << rep.residual;
      throw ConfigInfeasible(os.str());
    }
  }
}

// ---------------------------------------------------------------------------
// ledger

namespace {

// Guards shared by ledger and builder: the split at uniformity r must give
// k >= max(R, 1) and an inclusion probability <= 1.
void check_split(const ConstructionConfig& cfg, int r, int k) {
  if (k < 1 || k < cfg.R || Rat(cfg.c) > Rat(binom(k, cfg.R))) {
    std::ostringstream os;
    os << "split at uniformity " << r << " gives k = " << k
       << " with C(k, R) < c; raise r0 (base-case threshold)";
    throw ConfigInfeasible(os.str());
  }
}

}  // namespace

BoundLedger::BoundLedger(const ConstructionConfig& cfg) : cfg_(cfg) {}

const Rat& BoundLedger::bound(int n, int r) {
  if (n < 0 || r < 0) throw std::invalid_argument("BoundLedger: negative n or r");
  auto key = std::make_pair(n, r);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  Rat value;
  int r0 = cfg_.r0();
  if (r <= r0) {
    value = Rat(binom(n, r));
  } else if (n <= r) {
    value = 0;
  } else {
    int k = cfg_.k_of(r);
    check_split(cfg_, r, k);
    Rat p = cfg_.p_of(r);
    Rat q = Rat(1) - p;
    unsigned expo = static_cast<unsigned>(binom64(k, cfg_.R));
    Rat acc = 0;
    for (int y = k; y <= n; ++y) {
      const Rat& child = bound(n - y, r - k);
      if (child != 0) acc += Rat(binom(y - 1, k - 1)) * child;
    }
    Rat formula = p * Rat(binom(n, r)) + rat_pow(q, expo) * acc;
    Rat cap = Rat(binom(n, r));
    value = formula < cap ? formula : cap;
  }
  return memo_.emplace(key, std::move(value)).first->second;
}

// ---------------------------------------------------------------------------
// seeding and sampling

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t r,
                          std::uint64_t attempt) {
  std::uint64_t x = splitmix64(seed ^ 0xA24BAED4963EE407ull);
  x = splitmix64(x ^ (n * 0x9E3779B97F4A7C15ull));
  x = splitmix64(x ^ (r * 0xC2B2AE3D27D4EB4Full));
  x = splitmix64(x ^ (attempt * 0x165667B19E3779F9ull));
  return x;
}

RGraph sample_blocker(int n, int kR, const Rat& p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("sample_blocker: p outside [0, 1]");
  RGraph s(n, kR);
  std::uint64_t total = s.ambient();
  if (p == 1) {
    for (std::uint64_t i = 0; i < total; ++i) s.insert_rank(i);
    return s;
  }
  if (p == 0) return s;
  // threshold = floor(p * 2^64); the bias is < 2^-64 and fully deterministic
  Int thr_i = (boost::multiprecision::numerator(p) << 64) / boost::multiprecision::denominator(p);
  std::uint64_t thr = static_cast<std::uint64_t>(thr_i);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (rng() < thr) s.insert_rank(i);
  }
  return s;
}

std::uint64_t popcount_range(const RGraph& g, std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) return 0;
  const auto& w = g.words();
  std::uint64_t count = 0;
  std::uint64_t wlo = lo >> 6, whi = (hi - 1) >> 6;
  for (std::uint64_t i = wlo; i <= whi; ++i) {
    std::uint64_t word = w[i];
    if (i == wlo) word &= ~0ull << (lo & 63u);
    if (i == whi && ((hi & 63u) != 0)) word &= ~0ull >> (64 - (hi & 63u));
    count += static_cast<std::uint64_t>(__builtin_popcountll(word));
  }
  return count;
}

// ---------------------------------------------------------------------------
// uncovered sweep

bool hits_blocker(const RGraph& blocker, std::span<const int> y) {
  const int k = static_cast<int>(y.size());
  const int kR = blocker.r();
  const int R = k - kR;
  if (R < 0) throw std::invalid_argument("hits_blocker: set smaller than blocker uniformity");
  if (R == 0) return blocker.contains(y);
  const BinomialTable& bt = binomial_table();
  if (R == 1) {
    // rank of y with position d dropped = pre[d] + suf[d+1]
    std::uint64_t pre = 0;
    std::vector<std::uint64_t> suf(static_cast<std::size_t>(k) + 1, 0);
    for (int j = k - 1; j >= 0; --j)
      suf[static_cast<std::size_t>(j)] =
          suf[static_cast<std::size_t>(j) + 1] + bt.at64_sat(y[static_cast<std::size_t>(j)] - 1, j);
    for (int d = 0; d < k; ++d) {
      if (blocker.contains_rank(pre + suf[static_cast<std::size_t>(d) + 1])) return true;
      pre += bt.at64_sat(y[static_cast<std::size_t>(d)] - 1, d + 1);
    }
    return false;
  }
  // generic: enumerate dropped-position sets of size R
  std::vector<int> drop(static_cast<std::size_t>(R));
  for (int i = 0; i < R; ++i) drop[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::uint64_t rank = 0;
    int pos = 0;
    std::size_t di = 0;
    for (int j = 0; j < k; ++j) {
      if (di < drop.size() && drop[di] == j) {
        ++di;
        continue;
      }
      rank += bt.at64_sat(y[static_cast<std::size_t>(j)] - 1, ++pos);
    }
    if (blocker.contains_rank(rank)) return true;
    int i = R - 1;
    while (i >= 0 && drop[static_cast<std::size_t>(i)] == k - R + i) --i;
    if (i < 0) break;
    ++drop[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < R; ++j)
      drop[static_cast<std::size_t>(j)] = drop[static_cast<std::size_t>(j) - 1] + 1;
  }
  return false;
}

namespace {

// One thread's share of the uncovered sweep over colex ranks [lo, hi).
void sweep_block(const RGraph& blocker, int n, int k, std::uint64_t lo, std::uint64_t hi,
                 bool collect, std::vector<std::uint64_t>& by_max,
                 std::vector<std::uint64_t>& ranks, std::uint64_t& total) {
  const int kR = blocker.r();
  const int R = k - kR;
  const BinomialTable& bt = binomial_table();
  Subset y = unrank_colex(lo, k);
  if (R == 1) {
    // Flat per-position binomial rows for the hot loop: term0[j][v] is the
    // rank term of value v at 0-based position j after a drop earlier in
    // the set; term1[j][v] is the term at the unshifted position.
    std::vector<std::uint64_t> term0(static_cast<std::size_t>(k) * (n + 1));
    std::vector<std::uint64_t> term1(static_cast<std::size_t>(k) * (n + 1));
    for (int j = 0; j < k; ++j)
      for (int v = 1; v <= n; ++v) {
        term0[static_cast<std::size_t>(j) * (n + 1) + v] = bt.at64_sat(v - 1, j);
        term1[static_cast<std::size_t>(j) * (n + 1) + v] = bt.at64_sat(v - 1, j + 1);
      }
    const std::uint64_t* words = blocker.words().data();
    // suf[j] = rank contribution of positions >= j, each shifted down one
    // (the state once some earlier position is dropped)
    std::vector<std::uint64_t> suf(static_cast<std::size_t>(k) + 1, 0);
    auto rebuild_suf = [&](int i) {
      for (int j = i; j >= 0; --j)
        suf[static_cast<std::size_t>(j)] =
            suf[static_cast<std::size_t>(j) + 1] +
            term0[static_cast<std::size_t>(j) * (n + 1) + y[static_cast<std::size_t>(j)]];
    };
    rebuild_suf(k - 1);
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
      // probe the k sets obtainable by one drop; prefix accumulates lazily
      bool covered = false;
      std::uint64_t pre = 0;
      for (int d = 0; d < k; ++d) {
        std::uint64_t rd = pre + suf[static_cast<std::size_t>(d) + 1];
        if ((words[rd >> 6] >> (rd & 63u)) & 1u) {
          covered = true;
          break;
        }
        pre += term1[static_cast<std::size_t>(d) * (n + 1) + y[static_cast<std::size_t>(d)]];
      }
      if (!covered) {
        ++by_max[static_cast<std::size_t>(y[static_cast<std::size_t>(k) - 1])];
        ++total;
        if (collect) ranks.push_back(rank);
      }
      if (rank + 1 < hi) {
        int i = 0;
        for (; i < k; ++i) {
          int cap = (i + 1 < k) ? y[static_cast<std::size_t>(i) + 1] : n + 1;
          if (y[static_cast<std::size_t>(i)] + 1 < cap) {
            ++y[static_cast<std::size_t>(i)];
            for (int j = 0; j < i; ++j) y[static_cast<std::size_t>(j)] = j + 1;
            break;
          }
        }
        rebuild_suf(i);
      }
    }
    return;
  }
  // generic gap
  for (std::uint64_t rank = lo; rank < hi; ++rank) {
    if (!hits_blocker(blocker, y)) {
      ++by_max[static_cast<std::size_t>(y[static_cast<std::size_t>(k) - 1])];
      ++total;
      if (collect) ranks.push_back(rank);
    }
    if (rank + 1 < hi) next_colex(std::span<int>(y), n);
  }
}

}  // namespace

SweepResult sweep_uncovered(const RGraph& blocker, int k, bool collect_ranks, int threads) {
  const int n = blocker.n();
  if (k < blocker.r()) throw std::invalid_argument("sweep_uncovered: k below blocker uniformity");
  SweepResult out;
  out.uncovered_by_max.assign(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t total = binom64(n, k);
  if (total == 0) return out;
  int t = resolve_threads(threads);
  if (total < 65536) t = 1;
  std::vector<std::vector<std::uint64_t>> by_max(
      static_cast<std::size_t>(t),
      std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  std::vector<std::vector<std::uint64_t>> ranks(static_cast<std::size_t>(t));
  std::vector<std::uint64_t> totals(static_cast<std::size_t>(t), 0);
  parallel_blocks(total, t, [&](int tid, std::uint64_t lo, std::uint64_t hi) {
    sweep_block(blocker, n, k, lo, hi, collect_ranks, by_max[static_cast<std::size_t>(tid)],
                ranks[static_cast<std::size_t>(tid)], totals[static_cast<std::size_t>(tid)]);
  });
  for (int i = 0; i < t; ++i) {
    out.uncovered_total += totals[static_cast<std::size_t>(i)];
    for (int v = 0; v <= n; ++v)
      out.uncovered_by_max[static_cast<std::size_t>(v)] +=
          by_max[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
    if (collect_ranks)
      out.uncovered_ranks.insert(out.uncovered_ranks.end(),
                                 ranks[static_cast<std::size_t>(i)].begin(),
                                 ranks[static_cast<std::size_t>(i)].end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// estimators

namespace {

// sum over A in blocker of w[max A], via popcounts of the max-element
// rank blocks [C(a-1, kR), C(a, kR)).
Int blocker_part(const RGraph& blocker, std::span<const std::uint64_t> w) {
  const int n = blocker.n();
  const int kR = blocker.r();
  Int sum = 0;
  if (kR == 0) {
    if (blocker.size() > 0) sum += Int(w[0]);
    return sum;
  }
  for (int a = kR; a <= n; ++a) {
    std::uint64_t cnt = popcount_range(blocker, binom64(a - 1, kR), binom64(a, kR));
    if (cnt) sum += Int(cnt) * Int(w[static_cast<std::size_t>(a)]);
  }
  return sum;
}

Int cost_part(const SweepResult& sweep, std::span<const std::uint64_t> cost) {
  Int sum = 0;
  for (std::size_t y = 0; y < sweep.uncovered_by_max.size(); ++y) {
    std::uint64_t cnt = sweep.uncovered_by_max[y];
    if (cnt) sum += Int(cnt) * Int(cost[y]);
  }
  return sum;
}

}  // namespace

Int blocker_estimator(const RGraph& blocker, int k,
                      std::span<const std::uint64_t> ext_weight_by_max,
                      std::span<const std::uint64_t> cost_by_max) {
  SweepResult sweep = sweep_uncovered(blocker, k, false, 1);
  return blocker_part(blocker, ext_weight_by_max) + cost_part(sweep, cost_by_max);
}

// ---------------------------------------------------------------------------
// derandomization

DerandResult derandomize_blocker(int n, int kR, int k, const Rat& p,
                                 std::span<const std::uint64_t> ext_weight_by_max,
                                 std::span<const std::uint64_t> cost_by_max,
                                 std::uint64_t pair_budget) {
  if (k > n || kR < 0 || kR >= k)
    throw std::invalid_argument("derandomize_blocker: need 0 <= kR < k <= n");
  if (p < 0 || p > 1) throw std::invalid_argument("derandomize_blocker: p outside [0, 1]");
  const int R = k - kR;
  {
    Int pairs = binom(n, kR) * binom(n - kR, R);
    if (pairs > Int(pair_budget))
      throw InstanceTooLarge("derandomize_blocker: candidate/superset pairs exceed budget");
  }
  const std::uint64_t Cnk = binom64(n, k);
  const std::uint64_t CnkR = binom64(n, kR);
  const std::uint64_t expo = binom64(k, R);  // undecided subsets per k-set
  if (expo > 60000) throw InstanceTooLarge("derandomize_blocker: C(k, R) too large");

  DerandResult res;
  res.blocker = RGraph(n, kR);
  res.sweep.uncovered_by_max.assign(static_cast<std::size_t>(n) + 1, 0);

  // initial expectation: p * sum_A w_s + (1-p)^expo * sum_Y w_t
  Int sumS = 0;
  if (kR == 0) {
    sumS = Int(ext_weight_by_max[0]);
  } else {
    for (int a = kR; a <= n; ++a)
      sumS += binom(a - 1, kR - 1) * Int(ext_weight_by_max[static_cast<std::size_t>(a)]);
  }
  Int sumT = 0;
  for (int y = k; y <= n; ++y)
    sumT += binom(y - 1, k - 1) * Int(cost_by_max[static_cast<std::size_t>(y)]);
  res.estimator_initial =
      p * Rat(sumS) + rat_pow(Rat(1) - p, static_cast<unsigned>(expo)) * Rat(sumT);

  const BinomialTable& bt = binomial_table();

  auto finalize_uncovered = [&](const std::vector<std::uint64_t>& covered_words) {
    for (std::uint64_t rank = 0; rank < Cnk; ++rank) {
      if (!((covered_words[rank >> 6] >> (rank & 63u)) & 1u)) {
        res.sweep.uncovered_ranks.push_back(rank);
        ++res.sweep.uncovered_total;
      }
    }
    // counts by max element: ranks [C(y-1, k), C(y, k)) have max y
    int y = k;
    for (std::uint64_t rank : res.sweep.uncovered_ranks) {
      while (rank >= bt.at64_sat(y, k)) ++y;
      ++res.sweep.uncovered_by_max[static_cast<std::size_t>(y)];
    }
  };

  if (p == 1) {
    for (std::uint64_t i = 0; i < CnkR; ++i) res.blocker.insert_rank(i);
    res.estimator_final = sumS;  // every k-set is covered (k >= kR + 1)
    return res;
  }
  if (p == 0) {
    std::vector<std::uint64_t> covered((Cnk + 63) / 64, 0);
    finalize_uncovered(covered);
    res.estimator_final = cost_part(res.sweep, cost_by_max);
    return res;
  }

  const Rat q = Rat(1) - p;
  const Int q_num = boost::multiprecision::numerator(q);
  const Int q_den = boost::multiprecision::denominator(q);
  // PT[u] = q_num^{u-1} * q_den^{expo-u}; the candidate A is included iff
  //   w_s[max A] * q_den^{expo-1} < sum over its uncovered supersets Y of
  //   PT[u(Y)] * w_t[max Y],
  // which is the exact E_in < E_out comparison scaled by q_den^{expo-1}.
  std::vector<Int> PT(static_cast<std::size_t>(expo) + 1);
  for (std::uint64_t u = 1; u <= expo; ++u) {
    Int v = 1;
    for (std::uint64_t i = 1; i < u; ++i) v *= q_num;
    for (std::uint64_t i = u; i < expo; ++i) v *= q_den;
    PT[static_cast<std::size_t>(u)] = v;
  }
  Int lhs_scale = 1;
  for (std::uint64_t i = 1; i < expo; ++i) lhs_scale *= q_den;

  std::vector<std::uint64_t> covered((Cnk + 63) / 64, 0);
  std::vector<std::uint16_t> undecided(Cnk, static_cast<std::uint16_t>(expo));

  Subset a = first_subset(kR);
  std::vector<std::uint64_t> sup_ranks;
  std::vector<int> sup_max;
  sup_ranks.reserve(static_cast<std::size_t>(n));
  sup_max.reserve(static_cast<std::size_t>(n));
  std::vector<std::uint64_t> pre_ins(static_cast<std::size_t>(kR) + 1, 0);
  std::vector<std::uint64_t> suf_ins(static_cast<std::size_t>(kR) + 1, 0);
  Int rhs, lhs;

  for (std::uint64_t ra = 0; ra < CnkR; ++ra) {
    sup_ranks.clear();
    sup_max.clear();
    rhs = 0;
    if (R == 1) {
      // insertion rank: placing v between positions t-1 and t gives
      // pre_ins[t] + C(v-1, t+1) + suf_ins[t]
      for (int t = 0; t < kR; ++t)
        pre_ins[static_cast<std::size_t>(t) + 1] =
            pre_ins[static_cast<std::size_t>(t)] +
            bt.at64_sat(a[static_cast<std::size_t>(t)] - 1, t + 1);
      suf_ins[static_cast<std::size_t>(kR)] = 0;
      for (int t = kR - 1; t >= 0; --t)
        suf_ins[static_cast<std::size_t>(t)] =
            suf_ins[static_cast<std::size_t>(t) + 1] +
            bt.at64_sat(a[static_cast<std::size_t>(t)] - 1, t + 2);
      int t = 0;
      for (int v = 1; v <= n; ++v) {
        if (t < kR && a[static_cast<std::size_t>(t)] == v) {
          ++t;
          continue;
        }
        std::uint64_t ry = pre_ins[static_cast<std::size_t>(t)] +
                           bt.at64_sat(v - 1, t + 1) + suf_ins[static_cast<std::size_t>(t)];
        if (!((covered[ry >> 6] >> (ry & 63u)) & 1u)) {
          sup_ranks.push_back(ry);
          int my = (t == kR) ? v : a[static_cast<std::size_t>(kR) - 1];
          sup_max.push_back(my);
          rhs += PT[undecided[ry]] * Int(cost_by_max[static_cast<std::size_t>(my)]);
        }
      }
    } else {
      // generic gap: merge each R-subset of the complement
      std::vector<int> comp;
      comp.reserve(static_cast<std::size_t>(n - kR));
      {
        int t = 0;
        for (int v = 1; v <= n; ++v) {
          if (t < kR && a[static_cast<std::size_t>(t)] == v) {
            ++t;
          } else {
            comp.push_back(v);
          }
        }
      }
      const int csz = static_cast<int>(comp.size());
      std::vector<int> pick(static_cast<std::size_t>(R));
      for (int i = 0; i < R; ++i) pick[static_cast<std::size_t>(i)] = i;
      std::vector<int> merged(static_cast<std::size_t>(k));
      for (;;) {
        {
          std::size_t ai = 0, pi = 0, mi = 0;
          while (mi < merged.size()) {
            int av = ai < a.size() ? a[ai] : n + 1;
            int pv = pi < pick.size() ? comp[static_cast<std::size_t>(pick[pi])] : n + 1;
            merged[mi++] = av < pv ? a[ai++] : comp[static_cast<std::size_t>(pick[pi++])];
          }
        }
        std::uint64_t ry = rank_colex(merged);
        if (!((covered[ry >> 6] >> (ry & 63u)) & 1u)) {
          sup_ranks.push_back(ry);
          int my = merged.back();
          sup_max.push_back(my);
          rhs += PT[undecided[ry]] * Int(cost_by_max[static_cast<std::size_t>(my)]);
        }
        int i = R - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == csz - R + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < R; ++j)
          pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
      }
    }
    int amax = (kR == 0) ? 0 : a[static_cast<std::size_t>(kR) - 1];
    lhs = Int(ext_weight_by_max[static_cast<std::size_t>(amax)]) * lhs_scale;
    if (lhs < rhs) {
      res.blocker.insert_rank(ra);
      for (std::uint64_t ry : sup_ranks) covered[ry >> 6] |= 1ull << (ry & 63u);
    } else {
      for (std::uint64_t ry : sup_ranks) --undecided[ry];
    }
    if (kR > 0 && ra + 1 < CnkR) next_colex(std::span<int>(a), n);
  }

  finalize_uncovered(covered);
  res.estimator_final =
      blocker_part(res.blocker, ext_weight_by_max) + cost_part(res.sweep, cost_by_max);
  return res;
}

// ---------------------------------------------------------------------------
// system handle

const RGraph& TuranSystem::graph() const {
  if (!dense_) throw std::logic_error("TuranSystem: not materialized");
  return *dense_;
}

bool TuranSystem::contains(std::span<const int> edge) const {
  if (static_cast<int>(edge.size()) != r_) return false;
  if (dense_) return dense_->contains(edge);
  const LazyNode& ln = *lazy_;
  const int kR = ln.blocker.r();
  if (!edge.empty() && edge.back() > n_) return false;
  if (ln.blocker.contains(edge.first(static_cast<std::size_t>(kR)))) return true;
  auto y = edge.first(static_cast<std::size_t>(ln.k));
  if (hits_blocker(ln.blocker, y)) return false;  // covered, but not via the prefix
  int ymax = edge[static_cast<std::size_t>(ln.k) - 1];
  const auto& child = ln.child_by_m[static_cast<std::size_t>(n_ - ymax)];
  Subset z(edge.begin() + ln.k, edge.end());
  for (int& v : z) v -= ymax;
  return child->contains(z);
}

// ---------------------------------------------------------------------------
// builder

Builder::Builder(ConstructionConfig cfg, BuildOptions opts)
    : cfg_(std::move(cfg)), opts_(opts), ledger_(cfg_) {
  cfg_.validate();
}

std::shared_ptr<const TuranSystem> Builder::construct(int n, int r) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return build_node(n, r);
}

std::shared_ptr<const TuranSystem> Builder::build_node(int n, int r) {
  if (n < 0 || r < 0) throw std::invalid_argument("construct: negative n or r");
  auto key = std::make_pair(n, r);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  auto sys = std::make_shared<TuranSystem>();
  sys->n_ = n;
  sys->r_ = r;
  sys->gap_ = cfg_.R;
  const int r0 = cfg_.r0();

  if (r <= r0 || n <= r) {
    // complete below the threshold, empty when no recursion is possible;
    // when both apply (n <= r <= r0) the two coincide except at n = r,
    // where the complete rule keeps the single full edge
    bool complete = (r <= r0);
    if (!binomial_table().fits64(n, r) || binom64(n, r) > opts_.materialize_bits)
      throw InstanceTooLarge("construct: base case exceeds materialize budget");
    sys->dense_ = complete ? complete_graph(n, r) : RGraph(n, r);
    sys->size_ = sys->dense_->size();
    sys->bound_ = ledger_.bound(n, r);
    cache_.emplace(key, sys);
    return sys;
  }

  const int k = cfg_.k_of(r);
  check_split(cfg_, r, k);
  const int R = cfg_.R;
  const int kR = k - R;
  const int m_ext = r - k + R;
  const Rat p = cfg_.p_of(r);

  if (!binomial_table().fits64(n, r))
    throw InstanceTooLarge("construct: C(n, r) exceeds uint64");

  std::vector<std::shared_ptr<const TuranSystem>> child(static_cast<std::size_t>(n - k) + 1);
  for (int m = 0; m <= n - k; ++m) child[static_cast<std::size_t>(m)] = build_node(m, r - k);

  std::vector<std::uint64_t> w_s(static_cast<std::size_t>(n) + 1, 0);
  if (kR == 0) {
    w_s[0] = binom64(n, m_ext);
  } else {
    for (int a = kR; a <= n; ++a) w_s[static_cast<std::size_t>(a)] = binom64(n - a, m_ext);
  }
  std::vector<std::uint64_t> w_t(static_cast<std::size_t>(n) + 1, 0);
  for (int y = k; y <= n; ++y)
    w_t[static_cast<std::size_t>(y)] = child[static_cast<std::size_t>(n - y)]->size();

  const Rat& B = ledger_.bound(n, r);
  const bool dense_target = binom64(n, r) <= opts_.materialize_bits;

  RGraph blocker;
  SweepResult sweep;
  Int szS = 0, szT = 0;

  if (cfg_.mode == BuildMode::kDerandomized) {
    DerandResult dres =
        derandomize_blocker(n, kR, k, p, w_s, w_t, opts_.derand_pair_budget);
    blocker = std::move(dres.blocker);
    sweep = std::move(dres.sweep);
    szS = blocker_part(blocker, w_s);
    szT = cost_part(sweep, w_t);
    if (Rat(szS + szT) > B)
      throw std::logic_error("construct: derandomized size exceeded the ledger bound");
  } else {
    bool accepted = false;
    for (int attempt = 0; attempt < cfg_.max_resamples; ++attempt) {
      std::uint64_t sd = derive_seed(cfg_.seed, static_cast<std::uint64_t>(n),
                                     static_cast<std::uint64_t>(r),
                                     static_cast<std::uint64_t>(attempt));
      blocker = sample_blocker(n, kR, p, sd);
      sweep = sweep_uncovered(blocker, k, dense_target, opts_.threads);
      szS = blocker_part(blocker, w_s);
      szT = cost_part(sweep, w_t);
      if (Rat(szS + szT) <= B) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream os;
      os << "construct(" << n << ", " << r << "): no sample met the size bound in "
         << cfg_.max_resamples << " attempts";
      throw ResampleExhausted(os.str());
    }
  }

  sys->size_s_star_ = static_cast<std::uint64_t>(szS);
  sys->size_t_star_ = static_cast<std::uint64_t>(szT);
  sys->size_ = sys->size_s_star_ + sys->size_t_star_;
  sys->bound_ = B;

  if (dense_target) {
    RGraph g = extend(blocker, m_ext);
    const BinomialTable& bt = binomial_table();
    // attach the shifted subsystems under every uncovered k-set, grouped
    // by max element so each child edge is ranked once per group
    std::size_t idx = 0;
    for (int y = k; y <= n && idx < sweep.uncovered_ranks.size(); ++y) {
      std::uint64_t block_end = bt.at64_sat(y, k);
      std::size_t lo = idx;
      while (idx < sweep.uncovered_ranks.size() && sweep.uncovered_ranks[idx] < block_end)
        ++idx;
      if (lo == idx) continue;
      const auto& ch = child[static_cast<std::size_t>(n - y)];
      if (ch->size() == 0) continue;
      ch->graph().for_each_edge([&](std::span<const int> z) {
        std::uint64_t sumz = 0;
        for (std::size_t j = 0; j < z.size(); ++j)
          sumz += bt.at64_sat(z[j] + y - 1, k + 1 + static_cast<int>(j));
        for (std::size_t i = lo; i < idx; ++i)
          g.insert_rank(sweep.uncovered_ranks[i] + sumz);
      });
    }
    if (Int(g.size()) != szS + szT)
      throw std::logic_error("construct: assembled size disagrees with the exact count");
    sys->dense_ = std::move(g);
  } else {
    TuranSystem::LazyNode ln;
    ln.k = k;
    ln.blocker = std::move(blocker);
    ln.child_by_m = std::move(child);
    sys->lazy_ = std::move(ln);
  }

  cache_.emplace(key, sys);
  return sys;
}

// ---------------------------------------------------------------------------
// one-shot wrappers

namespace {

RGraph construct_materialized(int n, int r, const ConstructionConfig& cfg,
                              const BuildOptions& opts) {
  Builder b(cfg, opts);
  auto sys = b.construct(n, r);
  if (!sys->materialized())
    throw InstanceTooLarge("construct: result too large to materialize");
  return sys->graph();
}

}  // namespace

RGraph construct_r_plus_1(int n, int r, const ConstructionConfig& cfg,
                          const BuildOptions& opts) {
  if (cfg.lemma != Lemma::kMain)
    throw std::invalid_argument("construct_r_plus_1 requires the one-step split rule");
  return construct_materialized(n, r, cfg, opts);
}

RGraph construct_general(int n, int r, const ConstructionConfig& cfg,
                         const BuildOptions& opts) {
  if (cfg.lemma != Lemma::kGeneral)
    throw std::invalid_argument("construct_general requires the general split rule");
  return construct_materialized(n, r, cfg, opts);
}

}  // namespace turan
