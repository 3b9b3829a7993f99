#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ununfold/mesh.hpp"

namespace ununfold {

using BigInt = boost::multiprecision::cpp_int;

/// Kirchhoff count by fraction-free elimination; parallel edges count with
/// multiplicity and self-loops are ignored. Throws DisconnectedGraph.
BigInt count_spanning_trees(const Graph& graph);

/// Decisions on edges [0, depth): included edges in `include`, the rest of
/// that range excluded. A prefix that already holds V-1 edges is a complete
/// tree and may have depth below the requested one.
struct TreePrefix {
  std::uint64_t include = 0;
  std::uint64_t exclude = 0;
  int depth = 0;
};

/// Include-first binary recursion over edges in ascending id. An edge is
/// included only if it joins two forest components and excluded only if the
/// remaining edges still connect the graph, so every branch ends in a tree
/// and trees come out in lexicographic order of their sorted edge ids.
/// Limited to 64 vertices and 64 edges (bit masks).
class SpanningTreeEnumerator {
 public:
  explicit SpanningTreeEnumerator(const Graph& graph);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(ends_.size()); }

  /// All feasible prefixes of the given depth, in enumeration order.
  std::vector<TreePrefix> prefixes(int depth) const;

  /// Number of trees extending a prefix (Matrix-Tree on the contracted graph).
  BigInt count(const TreePrefix& prefix) const;

  /// Calls emit(mask) for each tree extending the prefix, in order, until it
  /// returns false. Returns the number of trees emitted.
  template <class Emit>
  std::uint64_t enumerate(const TreePrefix& prefix, Emit&& emit) const;

 private:
  struct State {
    std::array<std::int8_t, 64> parent;
    std::array<std::int8_t, 64> rank;
    std::array<std::uint64_t, 64> adj;
    std::array<std::array<std::uint8_t, 64>, 64> mult;
  };

  State initial_state() const;
  int find(const State& s, int v) const {
    while (s.parent[v] != v) v = s.parent[v];
    return v;
  }
  bool still_connected(const State& s, int u, int v) const;
  void remove_edge(State& s, int u, int v) const {
    if (--s.mult[u][v] == 0) {
      s.adj[u] &= ~(std::uint64_t{1} << v);
      s.adj[v] &= ~(std::uint64_t{1} << u);
    }
    --s.mult[v][u];
  }
  void restore_edge(State& s, int u, int v) const {
    if (s.mult[u][v]++ == 0) {
      s.adj[u] |= std::uint64_t{1} << v;
      s.adj[v] |= std::uint64_t{1} << u;
    }
    ++s.mult[v][u];
  }

  template <class Visit>
  bool recurse(State& s, int k, std::uint64_t inc, int count, const TreePrefix& prefix, int stop_depth,
               Visit& visit) const;

  int n_ = 0;
  std::vector<std::pair<int, int>> ends_;
};

/// Every spanning tree as a sorted edge-id list, in lexicographic order.
std::vector<std::vector<int>> enumerate_spanning_trees(const Graph& graph);

template <class Visit>
bool SpanningTreeEnumerator::recurse(State& s, int k, std::uint64_t inc, int count, const TreePrefix& prefix,
                                     int stop_depth, Visit& visit) const {
  if (count == n_ - 1 || k == stop_depth) return visit(inc, k);
  const auto [u, v] = ends_[k];
  const std::uint64_t bit = std::uint64_t{1} << k;
  const bool forced = k < prefix.depth;
  if (u == v) return recurse(s, k + 1, inc, count, prefix, stop_depth, visit);
  int ru = find(s, u), rv = find(s, v);
  if (ru != rv && (!forced || (prefix.include & bit))) {
    if (s.rank[ru] < s.rank[rv]) std::swap(ru, rv);
    const bool bump = s.rank[ru] == s.rank[rv];
    s.parent[rv] = static_cast<std::int8_t>(ru);
    if (bump) ++s.rank[ru];
    const bool go_on = recurse(s, k + 1, inc | bit, count + 1, prefix, stop_depth, visit);
    s.parent[rv] = static_cast<std::int8_t>(rv);
    if (bump) --s.rank[ru];
    if (!go_on) return false;
  }
  if (forced && (prefix.include & bit)) return true;
  remove_edge(s, u, v);
  bool go_on = true;
  if (ru == rv || still_connected(s, u, v)) go_on = recurse(s, k + 1, inc, count, prefix, stop_depth, visit);
  restore_edge(s, u, v);
  return go_on;
}

template <class Emit>
std::uint64_t SpanningTreeEnumerator::enumerate(const TreePrefix& prefix, Emit&& emit) const {
  State s = initial_state();
  std::uint64_t emitted = 0;
  auto visit = [&](std::uint64_t mask, int) {
    ++emitted;
    return static_cast<bool>(emit(mask));
  };
  recurse(s, 0, 0, 0, prefix, edge_count() + 1, visit);
  return emitted;
}

}  // namespace ununfold
