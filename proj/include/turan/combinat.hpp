#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "turan/bigint.hpp"

namespace turan {

// Vertices are 1-based. A Subset is strictly increasing.
using Subset = std::vector<int>;

// Pascal-triangle table of exact binomial coefficients, plus a uint64
// mirror for hot paths. Built once, read-only afterwards.
class BinomialTable {
 public:
  explicit BinomialTable(int max_n);

  int max_n() const { return max_n_; }

  // C(a, b); zero when b < 0 or b > a. Requires 0 <= a <= max_n.
  const Int& at(int a, int b) const;

  // Same value as uint64; throws std::overflow_error if it does not fit.
  std::uint64_t at64(int a, int b) const;

  // Saturating variant: UINT64_MAX when the value does not fit.
  std::uint64_t at64_sat(int a, int b) const;

  bool fits64(int a, int b) const;

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * (a + 1) / 2 + b;
  }
  int max_n_;
  std::vector<Int> tri_;
  std::vector<std::uint64_t> tri64_;  // UINT64_MAX marks overflow
};

// Process-wide table; sized generously for every flow in this project.
const BinomialTable& binomial_table();

// C(a, b) exact; zero when b < 0 or b > a. Requires 0 <= a <= table max.
const Int& binom(int a, int b);

// C(a, b) as uint64; throws std::overflow_error when the value does not fit.
std::uint64_t binom64(int a, int b);

// Colex rank of a strictly increasing subset: sum over positions i (1-based)
// of C(s_i - 1, i). Independent of any ambient n. Throws
// std::invalid_argument on unsorted/duplicate/out-of-range input,
// std::overflow_error if the rank does not fit in uint64.
std::uint64_t rank_colex(std::span<const int> s);

// Inverse of rank_colex for subsets of size k.
Subset unrank_colex(std::uint64_t rank, int k);

// Advances s to the next k-subset of [n] in colex order; returns false when
// s was the last one ({n-k+1, ..., n}). s must be a valid subset of [n].
bool next_colex(std::span<int> s, int n);

// The colex-first k-subset, {1, ..., k}.
Subset first_subset(int k);

// Calls fn(subset) for every k-subset of [n] in colex order (= rank order).
void for_each_subset(int n, int k, const std::function<void(std::span<const int>)>& fn);

}  // namespace turan
