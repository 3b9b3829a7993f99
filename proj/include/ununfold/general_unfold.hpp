#pragma once

#include <span>
#include <string>
#include <vector>

#include "ununfold/geometry.hpp"
#include "ununfold/mesh.hpp"
#include "ununfold/unfold.hpp"

namespace ununfold {

/// A face or a fragment of one, placed in the plane.
struct NetPiece {
  int face = -1;
  std::string label;
  Polygon2 polygon;  // counterclockwise
};

/// Two pieces glued along a placed segment (a piece of a mesh edge, or a
/// cut segment in the case of partial gluings).
struct NetGlue {
  int piece_a = 0, piece_b = 0;
  Vec2 p, q;
};

struct GeneralNet {
  std::vector<NetPiece> pieces;
  std::vector<NetGlue> glues;
  double band_width = 0;
  double band_skew_deg = 0;
  std::vector<int> cut_path;       // guide-solid corners (mesh vertex ids) in path order
  std::vector<int> band_edges;     // per hat: mesh edge carrying the band
  std::vector<int> cut_tip_edges;  // per hat: spike edge left cut
  std::size_t configurations_tried = 0;
  std::size_t configurations_colliding = 0;
  OverlapReport overlap;
  double area = 0;
  double mesh_area = 0;
  bool pieces_connected = false;
};

/// Parallelogram unfolding of the guide tetrahedron with every spike moved
/// out on a band: for each hat a parallelogram strip crosses one brim
/// trapezoid from the spike base to a cut tetrahedron edge, and the spike
/// hangs from that strip on the far copy of the edge. band_width is the
/// strip's extent along the edge as a fraction of the tetrahedron edge;
/// band_skew is the angle between strip and edge. Cut path, band edges and
/// the cut spike edges are searched in a fixed order and the first
/// overlap-free net is returned.
///
/// Throws NotASpikedSolid for anything but a basic-hat spiked tetrahedron,
/// OutOfRange for parameters outside (0, 1) and (0, 180), BandCollision when
/// every choice puts a band on top of another band or outside its trapezoid,
/// NetOverlap when no collision-free choice is overlap-free.
GeneralNet general_unfold_spiked_tetrahedron(const PolyhedronMesh& mesh, double band_width = 0.05,
                                             double band_skew_deg = 75);

struct FanCutUnfolding {
  std::vector<NetPiece> pieces;  // in order around the centre, starting at the cut
  OverlapReport overlap;
  double total_angle_deg = 0;    // angle swept around the centre
  double wedge_angle_deg = 0;    // doubly covered angle at the centre
};

/// Cuts a fan (one interior vertex shared by every face) along the straight
/// ray leaving the centre at the given intrinsic angle, measured from the
/// first spoke in fan order, and lays the pieces out around the centre.
FanCutUnfolding unfold_fan_single_general_cut(const PolyhedronMesh& fan, double cut_direction_deg);

/// Sum over overlapping pairs of the angle their intersection makes at
/// `apex`, in degrees (zero for intersections away from it).
double overlap_wedge_angle(std::span<const Polygon2> pieces, Vec2 apex, double total_area);

/// The centre of a fan mesh, or -1.
int fan_center(const PolyhedronMesh& mesh);

}  // namespace ununfold
