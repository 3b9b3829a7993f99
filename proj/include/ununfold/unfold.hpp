#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ununfold/cutting.hpp"
#include "ununfold/geometry.hpp"
#include "ununfold/mesh.hpp"

namespace ununfold {

struct PlacedFace {
  int face = -1;
  int parent = -1;    // -1 for the root
  int via_edge = -1;  // primal edge shared with the parent
  Rigid2 transform;   // chart -> plane
  Polygon2 polygon;   // counterclockwise, vertex i is face.loop[i]
};

/// A non-tree uncut edge and how far apart its two placements ended up.
struct EdgeClosure {
  int edge = 0;
  double distance = 0;
};

struct PlanarLayout {
  Cutting cutting;
  int root = 0;
  std::vector<PlacedFace> faces;  // indexed by face id
  std::vector<int> order;         // breadth-first placement order
  std::vector<int> tree_edges;    // primal ids of the dual spanning tree
  std::vector<EdgeClosure> closures;
  double max_discrepancy = 0;
  double tolerance = 0;
  bool consistency_ok = true;
  double total_area = 0;
};

/// Per-mesh unfolding context: one planar chart per face plus the hinge
/// isometries across interior edges, so that a layout is a breadth-first
/// composition of precomputed rigid motions.
class Unfolder {
 public:
  explicit Unfolder(const PolyhedronMesh& mesh);

  const PolyhedronMesh& mesh() const { return *mesh_; }

  /// Throws BoundaryEdgeInCutting, or InadmissibleCutting when the cut
  /// surface is disconnected. Forests with several components and cuttings
  /// that miss curved vertices are laid out; their closures decide
  /// consistency.
  PlanarLayout layout(const Cutting& cutting) const;

  std::span<const Vec2> chart(int face) const { return charts_[face]; }

  /// Rigid motion taking the chart of `from` into the chart of `to` across
  /// their shared edge.
  Rigid2 hinge(int edge, int from, int to) const;

 private:
  const PolyhedronMesh* mesh_;
  std::vector<Polygon2> charts_;
  std::vector<std::vector<double>> chart_x_, chart_y_;
  std::vector<Rigid2> hinge_;  // faces[1] -> faces[0], per edge
  std::vector<std::vector<std::pair<int, int>>> neighbors_;  // (face, edge), ascending face
};

PlanarLayout layout(const PolyhedronMesh& mesh, const Cutting& cutting);

/// Checks a layout against the mesh it came from.
struct LayoutAudit {
  double max_isometry_error = 0;  // relative, over every placed edge
  double area_error = 0;          // relative, placed area vs surface area
  bool cut_edges_duplicated = true;  // each cut edge placed twice, same length
  bool uncut_edges_shared = true;    // each uncut interior edge placed once (needs consistency)

  bool ok(double tol = 1e-9) const {
    return max_isometry_error <= tol && area_error <= tol && cut_edges_duplicated && uncut_edges_shared;
  }
};
LayoutAudit audit_layout(const PolyhedronMesh& mesh, const PlanarLayout& layout);

struct OverlapPair {
  int a = 0, b = 0;  // a < b
  double area = 0;
};

struct OverlapReport {
  std::vector<OverlapPair> overlapping_pairs;  // sorted by (a, b)
  double max_area = 0;   // largest intersection seen, including sub-threshold ones
  double threshold = 0;  // area_rel * total area
  bool is_overlapping = false;
};

struct OverlapOptions {
  double area_rel = 1e-9;
  bool stop_at_first = false;
};

/// Pairwise convex-polygon intersection test. Pieces are counterclockwise
/// convex polygons; `priority` pairs are examined first, which matters only
/// with stop_at_first.
OverlapReport check_overlap(std::span<const Polygon2> pieces, double total_area,
                            const OverlapOptions& options = {},
                            std::span<const std::pair<int, int>> priority = {});

/// Throws InconsistentLayout unless consistency_ok.
OverlapReport check_overlap(const PlanarLayout& layout, const OverlapOptions& options = {});

struct EdgeUnfolding {
  PlanarLayout layout;
  OverlapReport overlap;
};

/// Layout followed by the overlap test; throws InconsistentLayout when the
/// cutting does not flatten.
EdgeUnfolding unfold_edges(const PolyhedronMesh& mesh, const Cutting& cutting);

/// Face pairs sharing at least one vertex, the usual first witnesses of
/// overlap around a negatively curved vertex.
std::vector<std::pair<int, int>> vertex_sharing_pairs(const PolyhedronMesh& mesh);

}  // namespace ununfold
