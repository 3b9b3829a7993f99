#include "ununfold/spanning_trees.hpp"

#include <numeric>

#include "ununfold/errors.hpp"

namespace ununfold {

namespace {

// Determinant of the Laplacian with row/column 0 removed, by Bareiss
// elimination. `weights` is a dense multiplicity matrix.
BigInt reduced_laplacian_determinant(const std::vector<std::vector<long>>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n <= 1) return 1;
  const int m = n - 1;
  std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m));
  for (int i = 1; i < n; ++i) {
    long degree = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) degree += weights[i][j];
    for (int j = 1; j < n; ++j) a[i - 1][j - 1] = (i == j) ? BigInt(degree) : BigInt(-weights[i][j]);
  }
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < m; ++k) {
    if (a[k][k] == 0) {
      int pivot = k + 1;
      while (pivot < m && a[pivot][k] == 0) ++pivot;
      if (pivot == m) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

}  // namespace

BigInt count_spanning_trees(const Graph& graph) {
  if (graph.vertex_count <= 0) throw Error(ErrorKind::InvalidInput, "graph has no vertices");
  if (!is_connected(graph)) throw Error(ErrorKind::DisconnectedGraph, "graph is not connected");
  std::vector<std::vector<long>> w(graph.vertex_count, std::vector<long>(graph.vertex_count, 0));
  for (auto [u, v] : graph.edges) {
    if (u == v) continue;
    ++w[u][v];
    ++w[v][u];
  }
  return reduced_laplacian_determinant(w);
}

SpanningTreeEnumerator::SpanningTreeEnumerator(const Graph& graph) : n_(graph.vertex_count), ends_(graph.edges) {
  if (n_ <= 0) throw Error(ErrorKind::InvalidInput, "graph has no vertices");
  if (n_ > 64 || ends_.size() > 64)
    throw Error(ErrorKind::ModeUnsupported, "spanning-tree enumeration supports at most 64 vertices and 64 edges");
  for (auto [u, v] : ends_)
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
  if (!is_connected(graph)) throw Error(ErrorKind::DisconnectedGraph, "graph is not connected");
}

SpanningTreeEnumerator::State SpanningTreeEnumerator::initial_state() const {
  State s{};
  for (int v = 0; v < 64; ++v) {
    s.parent[v] = static_cast<std::int8_t>(v);
    s.rank[v] = 0;
    s.adj[v] = 0;
  }
  for (auto [u, v] : ends_) {
    if (u == v) continue;
    ++s.mult[u][v];
    ++s.mult[v][u];
    s.adj[u] |= std::uint64_t{1} << v;
    s.adj[v] |= std::uint64_t{1} << u;
  }
  return s;
}

bool SpanningTreeEnumerator::still_connected(const State& s, int u, int v) const {
  const std::uint64_t target = std::uint64_t{1} << v;
  std::uint64_t reached = std::uint64_t{1} << u;
  std::uint64_t frontier = reached;
  while (frontier) {
    std::uint64_t next = 0;
    do {
      const int w = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= s.adj[w];
    } while (frontier);
    if (next & target) return true;
    frontier = next & ~reached;
    reached |= next;
  }
  return false;
}

std::vector<TreePrefix> SpanningTreeEnumerator::prefixes(int depth) const {
  depth = std::clamp(depth, 0, edge_count());
  std::vector<TreePrefix> out;
  State s = initial_state();
  const TreePrefix none{};
  auto visit = [&](std::uint64_t inc, int k) {
    const std::uint64_t decided = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    out.push_back({inc, decided & ~inc, k});
    return true;
  };
  recurse(s, 0, 0, 0, none, depth, visit);
  return out;
}

BigInt SpanningTreeEnumerator::count(const TreePrefix& prefix) const {
  // Contract included edges, drop every decided edge, count on what is left.
  std::vector<int> root(n_);
  std::iota(root.begin(), root.end(), 0);
  auto find_root = [&](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (int k = 0; k < prefix.depth; ++k)
    if (prefix.include >> k & 1) root[find_root(ends_[k].first)] = find_root(ends_[k].second);
  std::vector<int> label(n_, -1);
  int m = 0;
  for (int v = 0; v < n_; ++v) {
    const int r = find_root(v);
    if (label[r] < 0) label[r] = m++;
  }
  std::vector<std::vector<long>> w(m, std::vector<long>(m, 0));
  for (int k = prefix.depth; k < edge_count(); ++k) {
    const int a = label[find_root(ends_[k].first)], b = label[find_root(ends_[k].second)];
    if (a == b) continue;
    ++w[a][b];
    ++w[b][a];
  }
  return reduced_laplacian_determinant(w);
}

std::vector<std::vector<int>> enumerate_spanning_trees(const Graph& graph) {
  SpanningTreeEnumerator en(graph);
  std::vector<std::vector<int>> trees;
  en.enumerate(TreePrefix{}, [&](std::uint64_t mask) {
    std::vector<int> ids;
    for (std::uint64_t m = mask; m; m &= m - 1) ids.push_back(std::countr_zero(m));
    trees.push_back(std::move(ids));
    return true;
  });
  return trees;
}

}  // namespace ununfold
