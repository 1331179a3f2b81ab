#include "turan/combinat.hpp"

#include <limits>
#include <stdexcept>

#include "turan/errors.hpp"

namespace turan {

namespace {
constexpr int kGlobalMaxN = 160;
}

BinomialTable::BinomialTable(int max_n) : max_n_(max_n) {
  if (max_n < 0) throw std::invalid_argument("BinomialTable: max_n < 0");
  std::size_t total = static_cast<std::size_t>(max_n + 1) * (max_n + 2) / 2;
  tri_.resize(total);
  tri64_.resize(total);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (int a = 0; a <= max_n; ++a) {
    for (int b = 0; b <= a; ++b) {
      Int v;
      if (b == 0 || b == a) {
        v = 1;
      } else {
        v = tri_[idx(a - 1, b - 1)] + tri_[idx(a - 1, b)];
      }
      tri_[idx(a, b)] = v;
      tri64_[idx(a, b)] = (v <= kMax) ? static_cast<std::uint64_t>(v) : kMax;
    }
  }
}

const Int& BinomialTable::at(int a, int b) const {
  static const Int kZero = 0;
  if (a < 0 || a > max_n_) throw std::invalid_argument("binom: a out of table range");
  if (b < 0 || b > a) return kZero;
  return tri_[idx(a, b)];
}

std::uint64_t BinomialTable::at64(int a, int b) const {
  if (a < 0 || a > max_n_) throw std::invalid_argument("binom: a out of table range");
  if (b < 0 || b > a) return 0;
  std::uint64_t v = tri64_[idx(a, b)];
  if (v == std::numeric_limits<std::uint64_t>::max() &&
      tri_[idx(a, b)] != Int(std::numeric_limits<std::uint64_t>::max())) {
    throw std::overflow_error("binom64: value exceeds uint64");
  }
  return v;
}

std::uint64_t BinomialTable::at64_sat(int a, int b) const {
  if (a < 0 || a > max_n_) throw std::invalid_argument("binom: a out of table range");
  if (b < 0 || b > a) return 0;
  return tri64_[idx(a, b)];
}

bool BinomialTable::fits64(int a, int b) const {
  if (a < 0 || a > max_n_) return false;
  if (b < 0 || b > a) return true;
  return tri_[idx(a, b)] <= Int(std::numeric_limits<std::uint64_t>::max());
}

const BinomialTable& binomial_table() {
  static const BinomialTable table(kGlobalMaxN);
  return table;
}

const Int& binom(int a, int b) { return binomial_table().at(a, b); }

std::uint64_t binom64(int a, int b) { return binomial_table().at64(a, b); }

std::uint64_t rank_colex(std::span<const int> s) {
  const BinomialTable& bt = binomial_table();
  std::uint64_t rank = 0;
  int prev = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int v = s[i];
    if (v <= prev) throw std::invalid_argument("rank_colex: elements must be strictly increasing and >= 1");
    std::uint64_t term = bt.at64(v - 1, static_cast<int>(i) + 1);
    if (rank > std::numeric_limits<std::uint64_t>::max() - term)
      throw std::overflow_error("rank_colex: rank exceeds uint64");
    rank += term;
    prev = v;
  }
  return rank;
}

Subset unrank_colex(std::uint64_t rank, int k) {
  if (k < 0) throw std::invalid_argument("unrank_colex: k < 0");
  const BinomialTable& bt = binomial_table();
  Subset s(static_cast<std::size_t>(k));
  std::uint64_t rem = rank;
  int hi = bt.max_n();
  for (int i = k; i >= 1; --i) {
    // largest v with C(v - 1, i) <= rem; v >= i always works since C(i-1,i)=0
    int lo = i, up = hi;
    while (lo < up) {
      int mid = lo + (up - lo + 1) / 2;
      if (bt.at64_sat(mid - 1, i) <= rem) {
        lo = mid;
      } else {
        up = mid - 1;
      }
    }
    int v = lo;
    if (v == hi && bt.at64_sat(v, i) <= rem)
      throw std::invalid_argument("unrank_colex: rank too large for table");
    rem -= bt.at64(v - 1, i);
    s[static_cast<std::size_t>(i) - 1] = v;
    hi = v;  // next element is strictly smaller
  }
  if (rem != 0) throw std::invalid_argument("unrank_colex: inconsistent rank");
  return s;
}

bool next_colex(std::span<int> s, int n) {
  const int k = static_cast<int>(s.size());
  for (int i = 0; i < k; ++i) {
    int cap = (i + 1 < k) ? s[static_cast<std::size_t>(i) + 1] : n + 1;
    if (s[static_cast<std::size_t>(i)] + 1 < cap) {
      ++s[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) s[static_cast<std::size_t>(j)] = j + 1;
      return true;
    }
  }
  return false;
}

Subset first_subset(int k) {
  Subset s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  return s;
}

void for_each_subset(int n, int k, const std::function<void(std::span<const int>)>& fn) {
  if (k < 0 || k > n) return;
  Subset s = first_subset(k);
  do {
    fn(std::span<const int>(s));
  } while (next_colex(s, n));
}

}  // namespace turan
