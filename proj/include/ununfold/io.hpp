#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ununfold/general_unfold.hpp"
#include "ununfold/mesh.hpp"
#include "ununfold/search.hpp"
#include "ununfold/unfold.hpp"

namespace ununfold::io {

/// %.12g, with negative zero printed as 0.
std::string format_number(double value);

/// v/f records only (1-based or negative indices, "i/j/k" forms accepted);
/// blank lines and # comments are skipped. ParseError carries the line.
PolyhedronMesh parse_obj(std::istream& in, const MeshTolerances& tol = {});
PolyhedronMesh read_obj(const std::filesystem::path& path, const MeshTolerances& tol = {});
std::string format_obj(const PolyhedronMesh& mesh);
void write_obj(const PolyhedronMesh& mesh, const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// SVG of an edge unfolding: one polygon per face, cut edges stroked in
/// red, faces in overlapping pairs shaded.
std::string edge_net_svg(const PolyhedronMesh& mesh, const PlanarLayout& layout, const OverlapReport& overlap);
/// SVG of a piece net (general unfolding or fan cut), fold lines dashed.
std::string piece_net_svg(const std::vector<NetPiece>& pieces, const std::vector<NetGlue>& glues,
                          const OverlapReport& overlap);

/// {faces: [{face_id, vertices}], cut_edges, overlaps}
nlohmann::json edge_net_json(const PlanarLayout& layout, const OverlapReport& overlap);
nlohmann::json general_net_json(const GeneralNet& net);

/// Stable schema; wall-clock fields only when asked for, so that reports
/// of the same run compare byte for byte.
nlohmann::json report_json(const SearchReport& report, bool include_timing = false);

/// Two-space indented JSON with a trailing newline.
std::string dump(const nlohmann::json& value);

}  // namespace ununfold::io
