#pragma once

// Slow, independent reference computations the library results are checked
// against. Nothing here calls into the code under test beyond plain data
// accessors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ununfold/mesh.hpp"

namespace oracle {

inline int find(std::vector<int>& p, int v) {
  while (p[v] != v) v = p[v] = p[p[v]];
  return v;
}

/// Spanning trees by trying every (V-1)-subset of edges.
inline std::vector<std::vector<int>> spanning_trees(const ununfold::Graph& g) {
  const int n = g.vertex_count, m = static_cast<int>(g.edges.size());
  std::vector<std::vector<int>> out;
  std::vector<int> pick(n - 1);
  std::iota(pick.begin(), pick.end(), 0);
  if (n - 1 > m) return out;
  while (true) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    bool acyclic = true;
    for (int e : pick) {
      const int a = find(p, g.edges[e].first), b = find(p, g.edges[e].second);
      if (a == b) {
        acyclic = false;
        break;
      }
      p[a] = b;
    }
    if (acyclic) out.push_back(pick);
    int i = n - 2;
    while (i >= 0 && pick[i] == m - (n - 1) + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// Matrix-Tree determinant by plain long double elimination with pivoting.
inline double tree_count_float(const ununfold::Graph& g) {
  const int n = g.vertex_count - 1;
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n, 0));
  for (auto [u, v] : g.edges) {
    if (u < n) a[u][u] += 1;
    if (v < n) a[v][v] += 1;
    if (u < n && v < n) {
      a[u][v] -= 1;
      a[v][u] -= 1;
    }
  }
  long double det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (a[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return static_cast<double>(det);
}

/// Vertex permutations preserving every pairwise distance (all n! tried).
inline std::vector<std::vector<int>> isometric_permutations(const ununfold::PolyhedronMesh& mesh, double tol = 1e-9) {
  const int n = mesh.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = std::abs(ununfold::norm(mesh.position(i) - mesh.position(j)) -
                      ununfold::norm(mesh.position(perm[i]) - mesh.position(perm[j]))) < tol;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Polygon area by the shoelace formula.
inline double area(const std::vector<ununfold::Vec2>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return s / 2;
}

}  // namespace oracle
