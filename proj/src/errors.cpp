#include "ununfold/errors.hpp"

namespace ununfold {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorKind::NonManifoldVertex: return "NonManifoldVertex";
    case ErrorKind::NonPlanarFace: return "NonPlanarFace";
    case ErrorKind::NonConvexFace: return "NonConvexFace";
    case ErrorKind::DisconnectedSurface: return "DisconnectedSurface";
    case ErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorKind::FacesShareMultipleEdges: return "FacesShareMultipleEdges";
    case ErrorKind::BoundaryVertex: return "BoundaryVertex";
    case ErrorKind::OpenMesh: return "OpenMesh";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateRealization: return "DegenerateRealization";
    case ErrorKind::InsufficientAngle: return "InsufficientAngle";
    case ErrorKind::BoundaryEdgeInCutting: return "BoundaryEdgeInCutting";
    case ErrorKind::InadmissibleCutting: return "InadmissibleCutting";
    case ErrorKind::InconsistentLayout: return "InconsistentLayout";
    case ErrorKind::BandCollision: return "BandCollision";
    case ErrorKind::NetOverlap: return "NetOverlap";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::ModeUnsupported: return "ModeUnsupported";
    case ErrorKind::NotASpikedSolid: return "NotASpikedSolid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ununfold
