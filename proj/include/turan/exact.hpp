#pragma once

#include <cstdint>

#include "turan/bigint.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

struct ExactResult {
  int n = 0, s = 0, r = 0;
  std::uint64_t optimum = 0;  // smallest covering system size
  RGraph witness;             // attains the optimum; verifies as covering
  std::uint64_t nodes_explored = 0;
  bool proof_of_optimality = false;  // search exhausted below the optimum
};

// The counting bound C(n, r) / C(s, s-r): a uniformly random s-set contains
// C(s, s-r)/C(n, r) fraction of each edge's s-supersets on average, so any
// covering family needs at least this many edges. Exact rational.
Rat lower_bound_lp(int n, int s, int r);

// Covering system by the standard greedy rule: repeatedly add the r-set
// covering the most still-uncovered s-sets (ties to the lowest colex rank).
RGraph greedy_upper(int n, int s, int r);

// Minimum covering system by branch-and-bound. Branches on the colex-least
// uncovered s-set; children add one of its r-subsets, ordered by fresh
// coverage, with already-branched siblings forbidden along the path. The
// root branches only on {1..r}: relabeling maps any cover onto one through
// it. Prunes on depth + max(ceil(uncovered / best-available-coverage),
// greedy-disjoint-packing). Conventions: n < s gives 0; r = 0 gives 1.
// Throws BudgetExhausted (with the bounds proven so far) past node_budget.
ExactResult solve_exact(int n, int s, int r, std::uint64_t node_budget = 100000000ull);

}  // namespace turan
