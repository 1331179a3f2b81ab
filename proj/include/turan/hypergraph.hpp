#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "turan/combinat.hpp"

namespace turan {

// Uniform hypergraph on [n] with edges of size r, stored as a bitvector
// indexed by colex rank. Uniformity 0 is supported: the single possible
// edge is the empty set, with rank 0.
//
// Values are treated as immutable once fully built; builders are
// single-writer. Concurrent reads are unrestricted.
class RGraph {
 public:
  RGraph() : n_(0), r_(0), count_(0) {}
  RGraph(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  std::uint64_t ambient() const { return ambient_; }  // C(n, r)
  std::uint64_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains_rank(std::uint64_t rank) const {
    return (bits_[rank >> 6] >> (rank & 63u)) & 1u;
  }
  bool contains(std::span<const int> edge) const;

  // Inserts by rank / by subset; counts only new edges.
  void insert_rank(std::uint64_t rank);
  void insert(std::span<const int> edge);

  // Calls fn(edge) for every edge in colex rank order.
  void for_each_edge(const std::function<void(std::span<const int>)>& fn) const;

  // Edge list in colex order.
  std::vector<Subset> edges() const;

  const std::vector<std::uint64_t>& words() const { return bits_; }

  bool operator==(const RGraph& other) const;

 private:
  int n_, r_;
  std::uint64_t ambient_ = 0;
  std::uint64_t count_;
  std::vector<std::uint64_t> bits_;
};

// The complete r-graph on [n]: all C(n, r) edges.
RGraph complete_graph(int n, int r);

// Lifts h (uniformity l) to uniformity l + m on the same vertex set:
// X is an edge of the result iff the l smallest elements of X form an edge
// of h. Requires m >= 0.
RGraph extend(const RGraph& h, int m);

// All k-sets of [n] that contain at least one edge of s as a subset,
// where s has uniformity k - R. This is the blocked family B_R(s).
RGraph covered_sets(const RGraph& s, int R, int k);

// The complement within C([n], r): edges become non-edges and vice versa.
RGraph complement_within(const RGraph& h);

// Relabels every vertex v to v + offset on a new ambient [new_n].
// Requires offset >= 0 and h.n() + offset <= new_n.
RGraph shift_labels(const RGraph& h, int offset, int new_n);

// Union of two graphs with identical (n, r).
RGraph graph_union(const RGraph& a, const RGraph& b);

}  // namespace turan
