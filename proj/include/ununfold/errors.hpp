#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ununfold {

enum class ErrorKind {
  InvalidInput,
  NonManifoldEdge,
  NonManifoldVertex,
  NonPlanarFace,
  NonConvexFace,
  DisconnectedSurface,
  InconsistentOrientation,
  FacesShareMultipleEdges,
  BoundaryVertex,
  OpenMesh,
  OutOfRange,
  DegenerateRealization,
  InsufficientAngle,
  BoundaryEdgeInCutting,
  InadmissibleCutting,
  InconsistentLayout,
  BandCollision,
  NetOverlap,
  DisconnectedGraph,
  ModeUnsupported,
  NotASpikedSolid,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` is stable
/// and is what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ununfold
