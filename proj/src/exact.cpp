#include "turan/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "turan/combinat.hpp"
#include "turan/errors.hpp"

namespace turan {

Rat lower_bound_lp(int n, int s, int r) {
  if (!(0 <= r && r < s && s <= n))
    throw std::invalid_argument("lower_bound_lp: need 0 <= r < s <= n");
  return Rat(binom(n, r)) / Rat(binom(s, s - r));
}

namespace {

// Incidence between the C(n, r) candidate edges and the C(n, s) target
// sets, both indexed by colex rank. Sized for oracle-scale instances only.
struct Incidence {
  int n, s, r;
  std::uint32_t num_sets;   // C(n, s)
  std::uint32_t num_edges;  // C(n, r)
  std::vector<std::uint32_t> subs;        // per set: its C(s, r) r-subsets
  std::uint32_t subs_per_set;
  std::vector<std::uint32_t> sets_flat;   // per edge: the sets containing it
  std::vector<std::uint32_t> sets_begin;  // offsets into sets_flat

  Incidence(int n_, int s_, int r_) : n(n_), s(s_), r(r_) {
    const std::uint64_t cs = binom64(n, s);
    const std::uint64_t ce = binom64(n, r);
    const std::uint64_t pairs = cs * binom64(s, r);
    if (cs > 200000 || ce > 200000 || pairs > 20000000)
      throw InstanceTooLarge("solve_exact: instance beyond oracle scale");
    num_sets = static_cast<std::uint32_t>(cs);
    num_edges = static_cast<std::uint32_t>(ce);
    subs_per_set = static_cast<std::uint32_t>(binom64(s, r));
    subs.resize(static_cast<std::size_t>(num_sets) * subs_per_set);
    std::vector<std::uint32_t> deg(num_edges, 0);
    Subset keep(static_cast<std::size_t>(r));
    std::uint32_t set_rank = 0;
    for_each_subset(n, s, [&](std::span<const int> x) {
      std::uint32_t j = 0;
      for_each_subset(s, r, [&](std::span<const int> idx) {
        for (int t = 0; t < r; ++t)
          keep[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(idx[t]) - 1];
        std::uint32_t e = static_cast<std::uint32_t>(rank_colex(keep));
        subs[static_cast<std::size_t>(set_rank) * subs_per_set + j++] = e;
        ++deg[e];
      });
      ++set_rank;
    });
    sets_begin.resize(static_cast<std::size_t>(num_edges) + 1, 0);
    for (std::uint32_t e = 0; e < num_edges; ++e)
      sets_begin[e + 1] = sets_begin[e] + deg[e];
    sets_flat.resize(sets_begin[num_edges]);
    std::vector<std::uint32_t> cursor(sets_begin.begin(), sets_begin.end() - 1);
    for (std::uint32_t x = 0; x < num_sets; ++x)
      for (std::uint32_t j = 0; j < subs_per_set; ++j) {
        std::uint32_t e = subs[static_cast<std::size_t>(x) * subs_per_set + j];
        sets_flat[cursor[e]++] = x;
      }
  }
};

struct Searcher {
  const Incidence& inc;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  std::vector<std::uint16_t> covered_cnt;  // chosen edges covering each set
  std::uint32_t uncovered = 0;
  std::vector<std::int32_t> fresh;         // per edge: uncovered sets through it
  std::vector<char> forbidden;
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> best;
  std::uint32_t best_size = 0;
  std::uint32_t root_lower = 0;
  // timestamped scratch for the packing bound
  std::vector<std::uint32_t> used_mark;
  std::uint32_t epoch = 0;

  explicit Searcher(const Incidence& i, std::uint64_t b) : inc(i), budget(b) {
    covered_cnt.assign(inc.num_sets, 0);
    uncovered = inc.num_sets;
    fresh.assign(inc.num_edges, 0);
    for (std::uint32_t e = 0; e < inc.num_edges; ++e)
      fresh[e] = static_cast<std::int32_t>(inc.sets_begin[e + 1] - inc.sets_begin[e]);
    forbidden.assign(inc.num_edges, 0);
    used_mark.assign(inc.num_edges, 0);
  }

  void apply(std::uint32_t e) {
    chosen.push_back(e);
    for (std::uint32_t i = inc.sets_begin[e]; i < inc.sets_begin[e + 1]; ++i) {
      std::uint32_t x = inc.sets_flat[i];
      if (covered_cnt[x]++ == 0) {
        --uncovered;
        const std::uint32_t* sub = &inc.subs[static_cast<std::size_t>(x) * inc.subs_per_set];
        for (std::uint32_t j = 0; j < inc.subs_per_set; ++j) --fresh[sub[j]];
      }
    }
  }

  void undo(std::uint32_t e) {
    chosen.pop_back();
    for (std::uint32_t i = inc.sets_begin[e]; i < inc.sets_begin[e + 1]; ++i) {
      std::uint32_t x = inc.sets_flat[i];
      if (--covered_cnt[x] == 0) {
        ++uncovered;
        const std::uint32_t* sub = &inc.subs[static_cast<std::size_t>(x) * inc.subs_per_set];
        for (std::uint32_t j = 0; j < inc.subs_per_set; ++j) ++fresh[sub[j]];
      }
    }
  }

  // Greedy packing of uncovered sets sharing no r-subset: each needs its
  // own edge, so the packing size lower-bounds the remaining cost.
  std::uint32_t packing_bound(std::uint32_t scan_from) {
    ++epoch;
    std::uint32_t packed = 0;
    for (std::uint32_t x = scan_from; x < inc.num_sets; ++x) {
      if (covered_cnt[x]) continue;
      const std::uint32_t* sub = &inc.subs[static_cast<std::size_t>(x) * inc.subs_per_set];
      bool clash = false;
      for (std::uint32_t j = 0; j < inc.subs_per_set && !clash; ++j)
        clash = used_mark[sub[j]] == epoch;
      if (clash) continue;
      for (std::uint32_t j = 0; j < inc.subs_per_set; ++j) used_mark[sub[j]] = epoch;
      ++packed;
    }
    return packed;
  }

  // scan_from: all set ranks below it are covered on this path (the branch
  // rank strictly increases down any path).
  void dfs(std::uint32_t depth, std::uint32_t scan_from) {
    if (++nodes > budget) {
      std::ostringstream os;
      os << "solve_exact: node budget " << budget << " exhausted";
      throw BudgetExhausted(os.str(), best_size, root_lower);
    }
    if (uncovered == 0) {
      if (depth < best_size) {
        best_size = depth;
        best = chosen;
      }
      return;
    }
    // cheap coverage bound first, packing bound only if it fails to prune
    std::int32_t maxc = 0;
    for (std::uint32_t e = 0; e < inc.num_edges; ++e)
      if (!forbidden[e] && fresh[e] > maxc) maxc = fresh[e];
    if (maxc == 0) return;  // some uncovered set has every subset forbidden
    std::uint32_t need =
        (uncovered + static_cast<std::uint32_t>(maxc) - 1) / static_cast<std::uint32_t>(maxc);
    if (depth + need >= best_size) return;
    if (depth + packing_bound(scan_from) >= best_size) return;

    std::uint32_t x = scan_from;
    while (covered_cnt[x]) ++x;  // uncovered > 0 guarantees termination

    const std::uint32_t* sub = &inc.subs[static_cast<std::size_t>(x) * inc.subs_per_set];
    std::vector<std::uint32_t> kids;
    kids.reserve(inc.subs_per_set);
    for (std::uint32_t j = 0; j < inc.subs_per_set; ++j)
      if (!forbidden[sub[j]]) kids.push_back(sub[j]);
    std::sort(kids.begin(), kids.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (fresh[a] != fresh[b]) return fresh[a] > fresh[b];
      return a < b;
    });
    std::uint32_t forbade = 0;
    for (std::uint32_t e : kids) {
      apply(e);
      dfs(depth + 1, x + 1);
      undo(e);
      if (depth + 1 >= best_size) break;  // no room for any deeper branch
      forbidden[e] = 1;  // later siblings cover x some other way
      ++forbade;
    }
    for (std::uint32_t j = 0; j < forbade; ++j) forbidden[kids[j]] = 0;
  }
};

RGraph witness_from_ranks(int n, int r, const std::vector<std::uint32_t>& ranks) {
  RGraph g(n, r);
  for (std::uint32_t e : ranks) g.insert_rank(e);
  return g;
}

}  // namespace

RGraph greedy_upper(int n, int s, int r) {
  if (!(0 <= r && r < s && s <= n))
    throw std::invalid_argument("greedy_upper: need 0 <= r < s <= n");
  if (r == 0) {
    RGraph g(n, 0);
    g.insert_rank(0);
    return g;
  }
  Incidence inc(n, s, r);
  std::vector<std::uint16_t> covered(inc.num_sets, 0);
  std::vector<std::int32_t> fresh(inc.num_edges);
  for (std::uint32_t e = 0; e < inc.num_edges; ++e)
    fresh[e] = static_cast<std::int32_t>(inc.sets_begin[e + 1] - inc.sets_begin[e]);
  std::uint32_t uncovered = inc.num_sets;
  RGraph g(n, r);
  while (uncovered > 0) {
    std::uint32_t pick = 0;
    std::int32_t bestf = -1;
    for (std::uint32_t e = 0; e < inc.num_edges; ++e)
      if (fresh[e] > bestf) {
        bestf = fresh[e];
        pick = e;
      }
    g.insert_rank(pick);
    for (std::uint32_t i = inc.sets_begin[pick]; i < inc.sets_begin[pick + 1]; ++i) {
      std::uint32_t x = inc.sets_flat[i];
      if (covered[x]++ == 0) {
        --uncovered;
        const std::uint32_t* sub = &inc.subs[static_cast<std::size_t>(x) * inc.subs_per_set];
        for (std::uint32_t j = 0; j < inc.subs_per_set; ++j) --fresh[sub[j]];
      }
    }
  }
  return g;
}

ExactResult solve_exact(int n, int s, int r, std::uint64_t node_budget) {
  if (n < 0 || r < 0 || r >= s)
    throw std::invalid_argument("solve_exact: need n >= 0 and 0 <= r < s");
  ExactResult res;
  res.n = n;
  res.s = s;
  res.r = r;
  if (n < s) {  // nothing to cover
    res.optimum = 0;
    res.witness = RGraph(n, r);
    res.proof_of_optimality = true;
    return res;
  }
  if (r == 0) {  // the empty set is inside every s-subset
    res.optimum = 1;
    res.witness = RGraph(n, 0);
    res.witness.insert_rank(0);
    res.proof_of_optimality = true;
    return res;
  }

  RGraph greedy = greedy_upper(n, s, r);
  Rat lp = lower_bound_lp(n, s, r);
  std::uint64_t lp_ceil = static_cast<std::uint64_t>(rat_floor(lp));
  if (Rat(Int(lp_ceil)) != lp) ++lp_ceil;

  if (greedy.size() <= lp_ceil) {  // counting bound already certifies greedy
    res.optimum = greedy.size();
    res.witness = std::move(greedy);
    res.proof_of_optimality = true;
    return res;
  }

  Incidence inc(n, s, r);
  Searcher sr(inc, node_budget);
  sr.best_size = static_cast<std::uint32_t>(greedy.size());
  greedy.for_each_edge([&](std::span<const int> e) {
    sr.best.push_back(static_cast<std::uint32_t>(rank_colex(e)));
  });
  sr.root_lower =
      std::max(static_cast<std::uint32_t>(lp_ceil), sr.packing_bound(0));

  // root symmetry: every cover maps onto one containing {1..r} (rank 0)
  sr.apply(0);
  sr.dfs(1, 1);
  sr.undo(0);

  res.optimum = sr.best_size;
  res.witness = witness_from_ranks(n, r, sr.best);
  res.nodes_explored = sr.nodes;
  res.proof_of_optimality = true;
  return res;
}

}  // namespace turan
