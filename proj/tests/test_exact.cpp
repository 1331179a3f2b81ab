// Tests for the exact minimum-covering solver.
//
// Oracles: exhaustive search over *all* r-graphs via bitmask enumeration
// for the tiniest instances, the closed form for uniformity one, and the
// sandwich between the counting lower bound and the greedy upper bound.

#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "turan/combinat.hpp"
#include "turan/errors.hpp"
#include "turan/exact.hpp"
#include "turan/hypergraph.hpp"
#include "turan/verifier.hpp"

using namespace turan;

namespace {

// Exhaustive oracle: smallest covering family over all 2^C(n,r) r-graphs.
// Usable only when C(n,r) <= ~20; checks every s-set against a bitmask.
std::uint64_t brute_minimum(int n, int s, int r) {
  const std::uint64_t m = binom64(n, r);
  REQUIRE(m <= 20);
  // For every s-set, the mask of its r-subsets.
  std::vector<std::uint64_t> need;
  for_each_subset(n, s, [&](std::span<const int> xs) {
    std::uint64_t mask = 0;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    Subset pick(static_cast<std::size_t>(r));
    while (true) {
      for (int i = 0; i < r; ++i)
        pick[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      mask |= 1ull << rank_colex(pick);
      int i = r - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == s - r + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    need.push_back(mask);
  });
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t g = 0; g < (1ull << m); ++g) {
    bool covering = true;
    for (std::uint64_t mask : need)
      if ((g & mask) == 0) {
        covering = false;
        break;
      }
    if (covering) best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(__builtin_popcountll(g)));
  }
  return best;
}

void check_witness(const ExactResult& res) {
  CHECK(res.witness.size() == res.optimum);
  CHECK(verify_full(res.witness, res.s).status == VerifyStatus::kCovered);
}

}  // namespace

TEST_CASE("counting lower bound: frozen fractions") {
  CHECK(lower_bound_lp(5, 4, 3) == Rat(10, 4));
  CHECK(lower_bound_lp(10, 4, 1) == Rat(10, 4));
  CHECK(lower_bound_lp(9, 3, 2) == Rat(36, 3));
  CHECK(lower_bound_lp(7, 7, 4) == Rat(1));
}

TEST_CASE("greedy always covers and respects the lower bound") {
  for (auto [n, s, r] : std::vector<std::array<int, 3>>{
           {7, 4, 2}, {8, 5, 3}, {9, 4, 3}, {6, 3, 2}, {10, 6, 2}}) {
    RGraph g = greedy_upper(n, s, r);
    CHECK(verify_full(g, s).status == VerifyStatus::kCovered);
    CHECK(Rat(g.size()) >= lower_bound_lp(n, s, r));
  }
}

TEST_CASE("uniformity one has the closed form n - s + 1") {
  for (int n = 2; n <= 12; ++n)
    for (int s = 2; s <= n; ++s) {
      ExactResult res = solve_exact(n, s, 1);
      CHECK(res.optimum == static_cast<std::uint64_t>(n - s + 1));
      CHECK(res.proof_of_optimality);
      check_witness(res);
    }
}

TEST_CASE("tiny instances match the exhaustive all-graphs oracle") {
  SUBCASE("one four-set on five vertices") {
    ExactResult res = solve_exact(5, 4, 3);
    CHECK(res.optimum == 3);
    CHECK(res.optimum == brute_minimum(5, 4, 3));
    CHECK(res.proof_of_optimality);
    check_witness(res);
  }
  SUBCASE("triples hitting every triangle of six points") {
    ExactResult res = solve_exact(6, 3, 2);
    CHECK(res.optimum == 6);
    CHECK(res.optimum == brute_minimum(6, 3, 2));
    check_witness(res);
  }
  SUBCASE("degenerate full clique") {
    ExactResult res = solve_exact(4, 4, 3);
    CHECK(res.optimum == 1);
    CHECK(res.optimum == brute_minimum(4, 4, 3));
    check_witness(res);
  }
  SUBCASE("pairs on five vertices, s = 3") {
    ExactResult res = solve_exact(5, 3, 2);
    CHECK(res.optimum == 4);
    CHECK(res.optimum == brute_minimum(5, 3, 2));
    check_witness(res);
  }
}

TEST_CASE("frozen milestone values") {
  // Larger instances with known optima; each sits between the counting
  // bound and greedy, and carries a verified witness.
  for (auto [n, s, r, expect] : std::vector<std::array<int, 4>>{
           {7, 3, 2, 9}, {8, 3, 2, 12}, {9, 3, 2, 16}, {7, 4, 3, 12}, {6, 4, 3, 6}}) {
    ExactResult res = solve_exact(n, s, r);
    CHECK(res.optimum == static_cast<std::uint64_t>(expect));
    CHECK(res.proof_of_optimality);
    CHECK(Rat(res.optimum) >= lower_bound_lp(n, s, r));
    CHECK(res.optimum <= greedy_upper(n, s, r).size());
    check_witness(res);
  }
}

TEST_CASE("conventions at the boundary") {
  ExactResult vacuous = solve_exact(4, 6, 3);  // n < s
  CHECK(vacuous.optimum == 0);
  CHECK(vacuous.proof_of_optimality);
  CHECK(vacuous.witness.size() == 0);

  ExactResult zero = solve_exact(5, 3, 0);  // the empty edge covers all
  CHECK(zero.optimum == 1);
  CHECK(zero.proof_of_optimality);
  CHECK(zero.witness.size() == 1);

  // The uniformity must stay below the subset size.
  CHECK_THROWS_AS((void)solve_exact(5, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)solve_exact(5, 3, -1), std::invalid_argument);
}

TEST_CASE("node budget exhaustion carries the bounds proven so far") {
  try {
    (void)solve_exact(9, 3, 2, /*node_budget=*/10);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    CHECK(e.best_upper >= 16);   // incumbent never beats the optimum
    CHECK(e.proven_lower <= 16); // proven floor never exceeds it
    CHECK(e.proven_lower >= 12); // at least the counting bound
  }
}

TEST_CASE("oversized instances are rejected upfront") {
  CHECK_THROWS_AS((void)solve_exact(40, 20, 10), InstanceTooLarge);
}

TEST_CASE("optimum is monotone under adding vertices") {
  // More vertices cannot need fewer edges (restriction yields a cover).
  std::uint64_t prev = 0;
  for (int n = 4; n <= 8; ++n) {
    ExactResult res = solve_exact(n, 4, 2);
    CHECK(res.optimum >= prev);
    prev = res.optimum;
  }
}
