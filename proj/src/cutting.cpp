#include "ununfold/cutting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ununfold/errors.hpp"

namespace ununfold {

Cutting::Cutting(std::vector<int> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Cutting Cutting::from_mask(std::uint64_t mask) {
  Cutting c;
  while (mask) {
    c.edges_.push_back(__builtin_ctzll(mask));
    mask &= mask - 1;
  }
  return c;
}

bool Cutting::contains(int edge) const { return std::binary_search(edges_.begin(), edges_.end(), edge); }

std::uint64_t Cutting::mask() const {
  std::uint64_t m = 0;
  for (int e : edges_) m |= std::uint64_t{1} << e;
  return m;
}

std::string Cutting::encode() const {
  std::string out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(edges_[i]);
  }
  return out;
}

Cutting Cutting::decode(const std::string& text) {
  std::vector<int> edges;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad edge id '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorKind::ParseError, "bad edge id '" + item + "'");
    edges.push_back(value);
  }
  return Cutting(std::move(edges));
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

std::vector<int> curved_vertices(const PolyhedronMesh& mesh) {
  std::vector<int> out;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    if (std::abs(2 * kPi - mesh.vertex_angle_sum(v)) > mesh.tolerances().angle) out.push_back(v);
  }
  return out;
}

CutValidity validate_cutting(const PolyhedronMesh& mesh, const Cutting& cutting) {
  for (int e : cutting.edges()) {
    if (e < 0 || e >= mesh.edge_count()) throw Error(ErrorKind::InvalidInput, "edge id out of range");
    if (mesh.edge(e).is_boundary())
      throw Error(ErrorKind::BoundaryEdgeInCutting, "edge " + std::to_string(e) + " is on the boundary");
  }
  CutValidity v;

  DisjointSets vertices(mesh.vertex_count());
  std::vector<char> touched(mesh.vertex_count(), 0);
  v.is_forest = true;
  for (int e : cutting.edges()) {
    const Edge& edge = mesh.edge(e);
    touched[edge.v0] = touched[edge.v1] = 1;
    if (!vertices.unite(edge.v0, edge.v1)) v.is_forest = false;
  }
  std::vector<int> roots;
  for (int x = 0; x < mesh.vertex_count(); ++x)
    if (touched[x]) roots.push_back(vertices.find(x));
  std::sort(roots.begin(), roots.end());
  v.component_count = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());

  v.spans_required = true;
  for (int x : curved_vertices(mesh))
    if (!touched[x]) v.spans_required = false;

  DisjointSets faces(mesh.face_count());
  int components = mesh.face_count();
  for (const Edge& edge : mesh.edges()) {
    if (edge.is_boundary() || cutting.contains(edge.id)) continue;
    if (faces.unite(edge.faces[0], edge.faces[1])) --components;
  }
  v.surface_components = components;
  v.surface_connected = components == 1;
  return v;
}

}  // namespace ununfold
