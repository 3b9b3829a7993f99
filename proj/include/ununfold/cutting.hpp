#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ununfold/mesh.hpp"

namespace ununfold {

/// Set of mesh edge ids, kept sorted and unique.
class Cutting {
 public:
  Cutting() = default;
  explicit Cutting(std::vector<int> edges);
  static Cutting from_mask(std::uint64_t mask);

  std::span<const int> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(int edge) const;
  std::uint64_t mask() const;  // requires ids < 64

  /// "3,7,12"; the empty cutting encodes as "".
  std::string encode() const;
  static Cutting decode(const std::string& text);

  friend auto operator<=>(const Cutting&, const Cutting&) = default;
  friend bool operator==(const Cutting&, const Cutting&) = default;

 private:
  std::vector<int> edges_;
};

struct CutValidity {
  bool is_forest = false;
  bool spans_required = false;     // touches every interior vertex of nonzero curvature
  bool surface_connected = false;  // dual graph minus cut edges is connected
  int component_count = 0;         // components of the cut graph
  int surface_components = 0;

  bool admissible() const { return is_forest && spans_required && surface_connected; }
};

/// Throws BoundaryEdgeInCutting / InvalidInput for bad edge ids.
CutValidity validate_cutting(const PolyhedronMesh& mesh, const Cutting& cutting);

/// Interior vertices whose curvature magnitude exceeds the angle tolerance.
std::vector<int> curved_vertices(const PolyhedronMesh& mesh);

}  // namespace ununfold
