#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ununfold/cutting.hpp"
#include "ununfold/mesh.hpp"

namespace ununfold {

/// One hat of a spiked solid (or a lone hat), recovered from the mesh
/// combinatorics alone: the tip is a degree-3 vertex, the middles are its
/// neighbours, the hat faces are those touching a middle or the tip and the
/// corners are the remaining vertices of those faces.
struct HatPatch {
  int tip = -1;
  std::array<int, 3> middles{};
  std::array<int, 3> corners{};
  std::vector<int> faces;           // ascending
  std::vector<int> internal_edges;  // ascending; every hat edge except corner-corner ones
};

/// Hats ordered by tip id. Throws NotASpikedSolid unless the faces split
/// into disjoint hats with three corners each.
std::vector<HatPatch> infer_hat_patches(const PolyhedronMesh& mesh);

/// Per hat: does the cutting, restricted to that hat's internal edges,
/// connect two or more of its corners?
std::vector<bool> check_corner_to_corner(const PolyhedronMesh& mesh, const Cutting& cutting);

/// Sub-mesh made of one hat's faces; `global_vertex[i]` and `global_edge[j]`
/// give the original ids of local vertex i and local edge j.
struct HatSubmesh {
  PolyhedronMesh mesh;
  std::vector<int> global_vertex;
  std::vector<int> global_edge;
};
HatSubmesh extract_hat(const PolyhedronMesh& mesh, const HatPatch& hat);

/// Precomputed verdicts for every subset of each hat's internal edges. For
/// a subset without a corner-to-corner path that touches the tip and every
/// middle, the hat laid out on its own is the same planar figure (up to a
/// rigid motion) as the hat's faces inside any consistent global layout, so
/// an overlap found here is an overlap of the whole net.
class HatMemo {
 public:
  enum Flag : std::uint8_t {
    kCornerToCorner = 1,
    kLayoutOk = 2,     // the hat alone lays out connected and consistent
    kOverlapping = 4,  // ... and that layout overlaps
  };

  /// Requires every internal edge id below 64.
  explicit HatMemo(const PolyhedronMesh& mesh);

  int hat_count() const { return static_cast<int>(hats_.size()); }
  const HatPatch& hat(int h) const { return hats_[h]; }
  int internal_count(int h) const { return static_cast<int>(hats_[h].internal_edges.size()); }

  /// Bits of a global edge mask that fall on hat h, packed in ascending edge order.
  std::uint32_t local_mask(int h, std::uint64_t global) const {
    const auto& t = byte_tables_[h];
    std::uint32_t out = 0;
    for (int b = 0; b < 8; ++b) out |= t[b][(global >> (8 * b)) & 0xff];
    return out;
  }
  std::uint8_t flags(int h, std::uint32_t local) const { return flags_[h][local]; }
  double overlap_area(int h, std::uint32_t local) const { return areas_[h][local]; }

 private:
  std::vector<HatPatch> hats_;
  std::vector<std::array<std::array<std::uint32_t, 256>, 8>> byte_tables_;
  std::vector<std::vector<std::uint8_t>> flags_;
  std::vector<std::vector<double>> areas_;
};

}  // namespace ununfold
