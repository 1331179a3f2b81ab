#include "turan/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "turan/errors.hpp"

namespace turan {

RGraph::RGraph(int n, int r) : n_(n), r_(r), count_(0) {
  if (n < 0 || r < 0) throw std::invalid_argument("RGraph: negative n or r");
  if (!binomial_table().fits64(n, r))
    throw InstanceTooLarge("RGraph: C(n, r) exceeds uint64");
  ambient_ = binom64(n, r);
  bits_.assign((ambient_ + 63) / 64, 0);
  if (bits_.empty()) bits_.push_back(0);  // keep contains_rank branch-free
}

bool RGraph::contains(std::span<const int> edge) const {
  if (static_cast<int>(edge.size()) != r_) return false;
  if (!edge.empty() && edge.back() > n_) return false;
  return contains_rank(rank_colex(edge));
}

void RGraph::insert_rank(std::uint64_t rank) {
  if (rank >= ambient_) throw std::invalid_argument("RGraph::insert_rank: rank out of range");
  std::uint64_t& w = bits_[rank >> 6];
  std::uint64_t mask = 1ull << (rank & 63u);
  if (!(w & mask)) {
    w |= mask;
    ++count_;
  }
}

void RGraph::insert(std::span<const int> edge) {
  if (static_cast<int>(edge.size()) != r_)
    throw std::invalid_argument("RGraph::insert: wrong edge size");
  if (!edge.empty() && (edge.front() < 1 || edge.back() > n_))
    throw std::invalid_argument("RGraph::insert: vertex out of range");
  insert_rank(rank_colex(edge));
}

void RGraph::for_each_edge(const std::function<void(std::span<const int>)>& fn) const {
  if (count_ == 0) return;
  Subset s = first_subset(r_);
  std::uint64_t rank = 0;
  do {
    if (contains_rank(rank)) fn(std::span<const int>(s));
    ++rank;
  } while (next_colex(s, n_));
}

std::vector<Subset> RGraph::edges() const {
  std::vector<Subset> out;
  out.reserve(count_);
  for_each_edge([&](std::span<const int> e) { out.emplace_back(e.begin(), e.end()); });
  return out;
}

bool RGraph::operator==(const RGraph& other) const {
  return n_ == other.n_ && r_ == other.r_ && count_ == other.count_ && bits_ == other.bits_;
}

RGraph complete_graph(int n, int r) {
  RGraph g(n, r);
  std::uint64_t total = g.ambient();
  for (std::uint64_t i = 0; i < total; ++i) g.insert_rank(i);
  return g;
}

RGraph extend(const RGraph& h, int m) {
  if (m < 0) throw std::invalid_argument("extend: m < 0");
  const int n = h.n();
  const int l = h.r();
  RGraph out(n, l + m);
  if (m == 0) return h;
  h.for_each_edge([&](std::span<const int> y) {
    const std::uint64_t base = y.empty() ? 0 : rank_colex(y);
    const int lo = y.empty() ? 0 : y.back();  // extensions use vertices > lo
    if (n - lo < m) return;
    Subset z(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(i)] = lo + 1 + i;
    // colex enumeration of m-subsets of [lo+1, n], tracking the rank terms
    // for positions l+1 .. l+m of the combined edge
    for (;;) {
      std::uint64_t rank = base;
      for (int i = 0; i < m; ++i)
        rank += binom64(z[static_cast<std::size_t>(i)] - 1, l + 1 + i);
      out.insert_rank(rank);
      // advance z within [lo+1, n]
      int i = 0;
      for (; i < m; ++i) {
        int cap = (i + 1 < m) ? z[static_cast<std::size_t>(i) + 1] : n + 1;
        if (z[static_cast<std::size_t>(i)] + 1 < cap) {
          ++z[static_cast<std::size_t>(i)];
          for (int j = 0; j < i; ++j) z[static_cast<std::size_t>(j)] = lo + 1 + j;
          break;
        }
      }
      if (i == m) break;
    }
  });
  return out;
}

RGraph covered_sets(const RGraph& s, int R, int k) {
  if (R < 0) throw std::invalid_argument("covered_sets: R < 0");
  if (s.r() != k - R)
    throw std::invalid_argument("covered_sets: uniformity of s must be k - R");
  const int n = s.n();
  RGraph out(n, k);
  if (k > n) return out;
  std::vector<int> comp;
  comp.reserve(static_cast<std::size_t>(n));
  Subset merged(static_cast<std::size_t>(k));
  s.for_each_edge([&](std::span<const int> a) {
    comp.clear();
    {
      std::size_t ai = 0;
      for (int v = 1; v <= n; ++v) {
        if (ai < a.size() && a[ai] == v) {
          ++ai;
        } else {
          comp.push_back(v);
        }
      }
    }
    // choose R extra vertices from comp, all ways
    std::vector<int> pick(static_cast<std::size_t>(R));
    for (int i = 0; i < R; ++i) pick[static_cast<std::size_t>(i)] = i;
    const int csz = static_cast<int>(comp.size());
    for (;;) {
      // merge a with comp[pick]
      {
        std::size_t ai = 0, pi = 0, mi = 0;
        while (ai < a.size() || pi < pick.size()) {
          int av = ai < a.size() ? a[ai] : std::numeric_limits<int>::max();
          int pv = pi < pick.size() ? comp[static_cast<std::size_t>(pick[pi])]
                                    : std::numeric_limits<int>::max();
          merged[mi++] = av < pv ? a[ai++] : comp[static_cast<std::size_t>(pick[pi++])];
        }
      }
      out.insert_rank(rank_colex(merged));
      // next R-combination of comp indices
      int i = R - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == csz - R + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < R; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
    }
  });
  return out;
}

RGraph complement_within(const RGraph& h) {
  RGraph out(h.n(), h.r());
  std::uint64_t total = h.ambient();
  for (std::uint64_t rank = 0; rank < total; ++rank)
    if (!h.contains_rank(rank)) out.insert_rank(rank);
  return out;
}

RGraph shift_labels(const RGraph& h, int offset, int new_n) {
  if (offset < 0) throw std::invalid_argument("shift_labels: offset < 0");
  if (h.n() + offset > new_n)
    throw std::invalid_argument("shift_labels: labels would overflow new_n");
  RGraph out(new_n, h.r());
  Subset shifted(static_cast<std::size_t>(h.r()));
  h.for_each_edge([&](std::span<const int> e) {
    for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = e[i] + offset;
    out.insert_rank(rank_colex(shifted));
  });
  return out;
}

RGraph graph_union(const RGraph& a, const RGraph& b) {
  if (a.n() != b.n() || a.r() != b.r())
    throw std::invalid_argument("graph_union: mismatched (n, r)");
  RGraph out(a.n(), a.r());
  std::uint64_t total = a.ambient();
  for (std::uint64_t rank = 0; rank < total; ++rank)
    if (a.contains_rank(rank) || b.contains_rank(rank)) out.insert_rank(rank);
  return out;
}

}  // namespace turan
