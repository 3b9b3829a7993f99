#include "ununfold/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "ununfold/errors.hpp"

namespace ununfold {

namespace {

std::string face_label(int f) { return "face " + std::to_string(f); }

Vec3 newell_normal(std::span<const Vec3> pos, std::span<const int> loop) {
  Vec3 n;
  const std::size_t k = loop.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3& a = pos[loop[i]];
    const Vec3& b = pos[loop[(i + 1) % k]];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return n;
}

using EdgeKey = std::pair<int, int>;
EdgeKey key_of(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Position of v in a loop, or -1.
int loop_index(std::span<const int> loop, int v) {
  for (std::size_t i = 0; i < loop.size(); ++i)
    if (loop[i] == v) return static_cast<int>(i);
  return -1;
}

// True if the loop traverses a -> b (consecutively).
bool traverses(std::span<const int> loop, int a, int b) {
  const int i = loop_index(loop, a);
  return loop[(i + 1) % loop.size()] == b;
}

}  // namespace

PolyhedronMesh PolyhedronMesh::build(std::vector<Vec3> positions,
                                     std::vector<std::vector<int>> loops,
                                     const MeshTolerances& tol) {
  const int nv = static_cast<int>(positions.size());
  const int nf = static_cast<int>(loops.size());
  if (nv == 0 || nf == 0)
    throw Error(ErrorKind::InvalidInput, "mesh needs at least one face");
  for (const Vec3& p : positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw Error(ErrorKind::InvalidInput, "non-finite vertex coordinate");
  }

  std::vector<char> used(nv, 0);
  for (int f = 0; f < nf; ++f) {
    const auto& loop = loops[f];
    if (loop.size() < 3)
      throw Error(ErrorKind::InvalidInput, face_label(f) + " has fewer than 3 vertices");
    for (int v : loop) {
      if (v < 0 || v >= nv)
        throw Error(ErrorKind::InvalidInput, face_label(f) + " references vertex out of range");
      used[v] = 1;
    }
    std::vector<int> sorted = loop;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::InvalidInput, face_label(f) + " repeats a vertex");
  }
  for (int v = 0; v < nv; ++v) {
    if (!used[v])
      throw Error(ErrorKind::InvalidInput, "vertex " + std::to_string(v) + " is not on any face");
  }

  // Edge table, ids sorted by endpoint pair.
  std::map<EdgeKey, std::vector<int>> incidence;
  for (int f = 0; f < nf; ++f) {
    const auto& loop = loops[f];
    for (std::size_t i = 0; i < loop.size(); ++i)
      incidence[key_of(loop[i], loop[(i + 1) % loop.size()])].push_back(f);
  }
  for (const auto& [k, fs] : incidence) {
    if (fs.size() > 2)
      throw Error(ErrorKind::NonManifoldEdge,
                  "edge (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                      ") is shared by " + std::to_string(fs.size()) + " faces");
  }

  // Faces sharing two or more edges.
  for (int f = 0; f < nf; ++f) {
    std::vector<int> nbrs;
    const auto& loop = loops[f];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto& fs = incidence[key_of(loop[i], loop[(i + 1) % loop.size()])];
      for (int g : fs)
        if (g != f) nbrs.push_back(g);
    }
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw Error(ErrorKind::FacesShareMultipleEdges, face_label(f) + " shares several edges with one neighbor");
  }

  // Vertex links must be a single cycle or a single path.
  std::vector<std::vector<int>> faces_at(nv);
  for (int f = 0; f < nf; ++f)
    for (int v : loops[f]) faces_at[v].push_back(f);
  for (int v = 0; v < nv; ++v) {
    const auto& fs = faces_at[v];
    std::map<int, int> local;
    for (std::size_t i = 0; i < fs.size(); ++i) local[fs[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> link(fs.size());
    int boundary_count = 0;
    for (const auto& [k, inc] : incidence) {
      if (k.first != v && k.second != v) continue;
      if (inc.size() == 1) {
        ++boundary_count;
      } else {
        link[local[inc[0]]].push_back(local[inc[1]]);
        link[local[inc[1]]].push_back(local[inc[0]]);
      }
    }
    std::vector<char> seen(fs.size(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : link[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
          queue.push_back(y);
        }
    }
    if (reached != fs.size() || (boundary_count != 0 && boundary_count != 2))
      throw Error(ErrorKind::NonManifoldVertex,
                  "faces around vertex " + std::to_string(v) + " do not form a single fan");
  }

  // Orientation propagation from face 0.
  std::vector<char> fixed(nf, 0);
  fixed[0] = 1;
  std::deque<int> queue{0};
  int fixed_count = 1;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    const auto loop = loops[f];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % loop.size()];
      for (int g : incidence[key_of(a, b)]) {
        if (g == f) continue;
        const bool same_direction = traverses(loops[g], a, b);
        if (!fixed[g]) {
          if (same_direction) std::reverse(loops[g].begin(), loops[g].end());
          fixed[g] = 1;
          ++fixed_count;
          queue.push_back(g);
        } else if (same_direction) {
          throw Error(ErrorKind::InconsistentOrientation, "surface is not orientable");
        }
      }
    }
  }
  if (fixed_count != nf)
    throw Error(ErrorKind::DisconnectedSurface, "face adjacency graph is disconnected");

  PolyhedronMesh mesh;
  mesh.tol_ = tol;
  mesh.positions_ = std::move(positions);
  const auto& pos = mesh.positions_;

  Vec3 lo = pos[0], hi = pos[0];
  for (const Vec3& p : pos) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  mesh.diameter_ = norm(hi - lo);

  bool closed = true;
  for (const auto& [k, fs] : incidence)
    if (fs.size() == 1) closed = false;
  if (closed) {
    double six_volume = 0;
    for (const auto& loop : loops)
      for (std::size_t i = 1; i + 1 < loop.size(); ++i)
        six_volume += dot(pos[loop[0]], cross(pos[loop[i]], pos[loop[i + 1]]));
    if (six_volume < 0)
      for (auto& loop : loops) std::reverse(loop.begin(), loop.end());
  }

  // Edges.
  std::map<EdgeKey, int> edge_id;
  for (const auto& [k, fs] : incidence) {
    Edge e;
    e.id = static_cast<int>(mesh.edges_.size());
    e.v0 = k.first;
    e.v1 = k.second;
    e.face_count = static_cast<int>(fs.size());
    e.faces = {fs[0], fs.size() > 1 ? fs[1] : -1};
    if (e.faces[1] >= 0 && e.faces[1] < e.faces[0]) std::swap(e.faces[0], e.faces[1]);
    e.length = norm(pos[e.v1] - pos[e.v0]);
    if (!(e.length > 0))
      throw Error(ErrorKind::InvalidInput, "zero-length edge");
    edge_id[k] = e.id;
    mesh.edges_.push_back(e);
  }

  // Faces: plane, convexity, angles.
  const double plane_tol = tol.plane_rel * mesh.diameter_;
  for (int f = 0; f < nf; ++f) {
    Face face;
    face.id = f;
    face.loop = loops[f];
    const std::size_t k = face.loop.size();
    const Vec3 raw = newell_normal(pos, face.loop);
    const double len = norm(raw);
    if (!(len > 0)) throw Error(ErrorKind::NonConvexFace, face_label(f) + " is degenerate");
    face.normal = raw * (1.0 / len);
    Vec3 centroid;
    for (int v : face.loop) centroid = centroid + pos[v];
    centroid = centroid * (1.0 / static_cast<double>(k));
    face.offset = dot(face.normal, centroid);
    for (int v : face.loop) {
      if (std::abs(dot(face.normal, pos[v]) - face.offset) > plane_tol)
        throw Error(ErrorKind::NonPlanarFace, face_label(f) + " is not planar");
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Vec3& prev = pos[face.loop[(i + k - 1) % k]];
      const Vec3& cur = pos[face.loop[i]];
      const Vec3& next = pos[face.loop[(i + 1) % k]];
      const Vec3 e1 = prev - cur;
      const Vec3 e2 = next - cur;
      const double turn = dot(cross(cur - prev, next - cur), face.normal);
      const double angle = std::atan2(norm(cross(e1, e2)), dot(e1, e2));
      if (!(turn > 0) || angle >= kPi - tol.angle || angle <= tol.angle)
        throw Error(ErrorKind::NonConvexFace, face_label(f) + " is not strictly convex");
      face.angles.push_back(angle);
      face.edges.push_back(edge_id[key_of(face.loop[i], face.loop[(i + 1) % k])]);
    }
    mesh.faces_.push_back(std::move(face));
  }

  mesh.vertex_edges_.assign(nv, {});
  for (const Edge& e : mesh.edges_) {
    mesh.vertex_edges_[e.v0].push_back(e.id);
    mesh.vertex_edges_[e.v1].push_back(e.id);
  }
  mesh.boundary_vertex_.assign(nv, 0);
  for (const Edge& e : mesh.edges_) {
    if (e.is_boundary()) {
      mesh.boundary_edges_.push_back(e.id);
      mesh.boundary_vertex_[e.v0] = 1;
      mesh.boundary_vertex_[e.v1] = 1;
    }
  }

  mesh.face_neighbors_.assign(nf, {});
  for (const Face& face : mesh.faces_)
    for (int e : face.edges) {
      const Edge& edge = mesh.edges_[e];
      if (!edge.is_boundary()) mesh.face_neighbors_[face.id].push_back(edge.other_face(face.id));
    }

  // Fan order: leave each face through its out-edge at v.
  mesh.vertex_faces_.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    const auto& fs = faces_at[v];
    auto out_edge = [&](int f) {
      const Face& face = mesh.faces_[f];
      return face.edges[loop_index(face.loop, v)];
    };
    auto in_edge = [&](int f) {
      const Face& face = mesh.faces_[f];
      const int k = static_cast<int>(face.loop.size());
      return face.edges[(loop_index(face.loop, v) + k - 1) % k];
    };
    int start = *std::min_element(fs.begin(), fs.end());
    if (mesh.boundary_vertex_[v]) {
      for (int f : fs)
        if (mesh.edges_[in_edge(f)].is_boundary()) start = f;
    }
    std::vector<int> order{start};
    int cur = start;
    while (order.size() < fs.size()) {
      const Edge& e = mesh.edges_[out_edge(cur)];
      if (e.is_boundary()) break;
      cur = e.other_face(cur);
      if (cur == start) break;
      order.push_back(cur);
    }
    if (order.size() != fs.size())
      throw Error(ErrorKind::NonManifoldVertex,
                  "faces around vertex " + std::to_string(v) + " do not form a single fan");
    mesh.vertex_faces_[v] = std::move(order);
  }

  mesh.angle_sums_.assign(nv, 0.0);
  for (const Face& face : mesh.faces_)
    for (std::size_t i = 0; i < face.loop.size(); ++i) mesh.angle_sums_[face.loop[i]] += face.angles[i];

  for (const Face& face : mesh.faces_) {
    Vec3 acc;
    const std::size_t k = face.loop.size();
    for (std::size_t i = 0; i < k; ++i) acc = acc + cross(pos[face.loop[i]], pos[face.loop[(i + 1) % k]]);
    mesh.face_areas_.push_back(0.5 * std::abs(dot(acc, face.normal)));
  }
  return mesh;
}

std::optional<int> PolyhedronMesh::edge_between(int u, int v) const {
  for (int e : vertex_edges_[u])
    if (edges_[e].other(u) == v) return e;
  return std::nullopt;
}

double PolyhedronMesh::face_angle(int f, int v) const {
  const Face& face = faces_[f];
  const int i = loop_index(face.loop, v);
  if (i < 0) throw Error(ErrorKind::InvalidInput, "vertex not on face");
  return face.angles[i];
}

double PolyhedronMesh::surface_area() const {
  return std::accumulate(face_areas_.begin(), face_areas_.end(), 0.0);
}

Graph skeleton_graph(const PolyhedronMesh& mesh) {
  Graph g;
  g.vertex_count = mesh.vertex_count();
  for (const Edge& e : mesh.edges()) g.edges.emplace_back(e.v0, e.v1);
  return g;
}

DualGraph dual_graph(const PolyhedronMesh& mesh) {
  DualGraph d;
  d.node_count = mesh.face_count();
  for (const Edge& e : mesh.edges())
    if (!e.is_boundary()) d.edges.push_back({e.faces[0], e.faces[1], e.id});
  return d;
}

bool is_connected(const Graph& graph) {
  if (graph.vertex_count == 0) return true;
  std::vector<std::vector<int>> adj(graph.vertex_count);
  for (auto [a, b] : graph.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(graph.vertex_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  return count == graph.vertex_count;
}

double angle_sum(const PolyhedronMesh& mesh, int vertex) {
  if (vertex < 0 || vertex >= mesh.vertex_count())
    throw Error(ErrorKind::InvalidInput, "vertex out of range");
  return mesh.vertex_angle_sum(vertex);
}

double curvature(const PolyhedronMesh& mesh, int vertex) {
  if (vertex < 0 || vertex >= mesh.vertex_count())
    throw Error(ErrorKind::InvalidInput, "vertex out of range");
  if (mesh.is_boundary_vertex(vertex))
    throw Error(ErrorKind::BoundaryVertex, "curvature is undefined on the boundary");
  return 2 * kPi - mesh.vertex_angle_sum(vertex);
}

double total_curvature(const PolyhedronMesh& mesh) {
  if (!mesh.is_closed()) throw Error(ErrorKind::OpenMesh, "total curvature needs a closed mesh");
  double sum = 0;
  for (int v = 0; v < mesh.vertex_count(); ++v) sum += curvature(mesh, v);
  return sum;
}

int euler_characteristic(const PolyhedronMesh& mesh) {
  return mesh.vertex_count() - mesh.edge_count() + mesh.face_count();
}

int genus(const PolyhedronMesh& mesh) {
  if (!mesh.is_closed()) throw Error(ErrorKind::OpenMesh, "genus needs a closed mesh");
  return (2 - euler_characteristic(mesh)) / 2;
}

bool is_three_connected(const Graph& graph) {
  const int n = graph.vertex_count;
  if (n < 4) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : graph.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> removed(n, 0);
  auto connected_without = [&]() {
    int start = 0;
    while (removed[start]) ++start;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!removed[y] && !seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    int alive = 0;
    for (int v = 0; v < n; ++v) alive += removed[v] ? 0 : 1;
    return count == alive;
  };
  if (!connected_without()) return false;
  for (int a = 0; a < n; ++a) {
    removed[a] = 1;
    if (!connected_without()) return false;
    for (int b = a + 1; b < n; ++b) {
      removed[b] = 1;
      const bool ok = connected_without();
      removed[b] = 0;
      if (!ok) return false;
    }
    removed[a] = 0;
  }
  return true;
}

ConvexityCertificate is_topologically_convex(const PolyhedronMesh& mesh) {
  if (!mesh.is_closed()) throw Error(ErrorKind::OpenMesh, "topological convexity needs a closed mesh");
  ConvexityCertificate cert;
  cert.genus_zero = euler_characteristic(mesh) == 2;
  cert.three_connected = is_three_connected(skeleton_graph(mesh));
  return cert;
}

std::vector<int> edge_permutation(const PolyhedronMesh& mesh, const VertexPermutation& perm) {
  std::vector<int> out(mesh.edge_count());
  for (const Edge& e : mesh.edges()) {
    const auto image = mesh.edge_between(perm[e.v0], perm[e.v1]);
    if (!image) throw Error(ErrorKind::InvalidInput, "permutation is not a skeleton automorphism");
    out[e.id] = *image;
  }
  return out;
}

}  // namespace ununfold
