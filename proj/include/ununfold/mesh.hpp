#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ununfold/geometry.hpp"

namespace ununfold {

struct MeshTolerances {
  /// Coplanarity tolerance as a fraction of the bounding-box diameter.
  double plane_rel = 1e-9;
  /// Strict convexity margin: every interior angle must be below pi - angle.
  double angle = 1e-9;
};

struct Face {
  int id = 0;
  std::vector<int> loop;      // counterclockwise seen from outside
  std::vector<int> edges;     // edges[i] joins loop[i] and loop[i+1]
  std::vector<double> angles; // interior angle at loop[i], radians
  Vec3 normal;                // unit, outward
  double offset = 0;          // plane: dot(normal, p) == offset
};

struct Edge {
  int id = 0;
  int v0 = 0, v1 = 0;  // v0 < v1
  std::array<int, 2> faces{-1, -1};
  int face_count = 0;
  double length = 0;

  bool is_boundary() const { return face_count == 1; }
  int other(int v) const { return v == v0 ? v1 : v0; }
  int other_face(int f) const { return faces[0] == f ? faces[1] : faces[0]; }
};

/// Immutable polyhedral surface. Construction validates the input and
/// derives the edge table (ids sorted by endpoint pair), adjacency, boundary
/// classification and per-vertex angle sums.
class PolyhedronMesh {
 public:
  static PolyhedronMesh build(std::vector<Vec3> positions,
                              std::vector<std::vector<int>> faces,
                              const MeshTolerances& tol = {});

  int vertex_count() const { return static_cast<int>(positions_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const Vec3& position(int v) const { return positions_[v]; }
  std::span<const Vec3> positions() const { return positions_; }
  const Face& face(int f) const { return faces_[f]; }
  std::span<const Face> faces() const { return faces_; }
  const Edge& edge(int e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::optional<int> edge_between(int u, int v) const;
  std::span<const int> vertex_edges(int v) const { return vertex_edges_[v]; }
  /// Incident faces in fan order around the vertex (open fans start at a
  /// boundary edge).
  std::span<const int> vertex_faces(int v) const { return vertex_faces_[v]; }
  std::span<const int> face_neighbors(int f) const { return face_neighbors_[f]; }

  bool is_closed() const { return boundary_edges_.empty(); }
  std::span<const int> boundary_edges() const { return boundary_edges_; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  /// Interior angle of face f at vertex v (v must lie on f).
  double face_angle(int f, int v) const;
  double vertex_angle_sum(int v) const { return angle_sums_[v]; }

  double face_area(int f) const { return face_areas_[f]; }
  double surface_area() const;
  double diameter() const { return diameter_; }
  const MeshTolerances& tolerances() const { return tol_; }

 private:
  PolyhedronMesh() = default;

  std::vector<Vec3> positions_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<std::vector<int>> face_neighbors_;
  std::vector<int> boundary_edges_;
  std::vector<char> boundary_vertex_;
  std::vector<double> angle_sums_;
  std::vector<double> face_areas_;
  double diameter_ = 0;
  MeshTolerances tol_;
};

/// Simple undirected graph; edge i of a skeleton graph is mesh edge i.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

struct DualEdge {
  int face_a = 0, face_b = 0;
  int primal_edge = 0;
};

struct DualGraph {
  int node_count = 0;
  std::vector<DualEdge> edges;  // ascending primal edge id
};

Graph skeleton_graph(const PolyhedronMesh& mesh);
DualGraph dual_graph(const PolyhedronMesh& mesh);
bool is_connected(const Graph& graph);

struct FaceIntersection {
  int face_a = 0, face_b = 0;
};

/// Face pairs whose intersection is more than their shared vertices/edges.
struct EmbeddingReport {
  std::vector<FaceIntersection> violations;
  bool embedded() const { return violations.empty(); }
};

EmbeddingReport check_embedded(const PolyhedronMesh& mesh);

double angle_sum(const PolyhedronMesh& mesh, int vertex);
/// 2*pi minus the angle sum; throws BoundaryVertex on boundary vertices.
double curvature(const PolyhedronMesh& mesh, int vertex);
/// Throws OpenMesh unless the mesh is closed.
double total_curvature(const PolyhedronMesh& mesh);

int euler_characteristic(const PolyhedronMesh& mesh);
int genus(const PolyhedronMesh& mesh);

struct ConvexityCertificate {
  bool genus_zero = false;
  bool three_connected = false;
  bool topologically_convex() const { return genus_zero && three_connected; }
};

ConvexityCertificate is_topologically_convex(const PolyhedronMesh& mesh);

/// Brute-force vertex-pair removal test; intended for small graphs.
bool is_three_connected(const Graph& graph);

using VertexPermutation = std::vector<int>;

/// Skeleton automorphisms that preserve edge lengths and map faces onto faces
/// with matching angle sequences (reflections included). Identity first, the
/// rest in lexicographic order.
std::vector<VertexPermutation> symmetry_group(const PolyhedronMesh& mesh);

/// Image of every edge id under a vertex permutation.
std::vector<int> edge_permutation(const PolyhedronMesh& mesh, const VertexPermutation& perm);

}  // namespace ununfold
