#pragma once

#include <variant>

#include "ununfold/mesh.hpp"

namespace ununfold {

/// Basic hat: three isosceles spike triangles (base 1, base angles alpha) on
/// a brim of three isosceles trapezoids (top 1, bottom ell, base angles beta).
struct BasicHatParams {
  double alpha_deg = 81;
  double beta_deg = 35;
  double ell = 2;
};

/// Triangulated hat: spike as in the basic hat; brim of three boundary-base
/// triangles (base angles beta) and three triangles with apex angle gamma at
/// the corners.
struct TriHatParams {
  double alpha_deg = 81;
  double beta_deg = 30;
  double gamma_deg = 20;

  /// Side of the boundary triangle, forced by the shared leg lengths.
  double boundary_side() const;
};

using HatParams = std::variant<BasicHatParams, TriHatParams>;

struct FanParams {
  int n = 8;
  double apex_deg = 50;
  double leg = 1;
};

struct ConstraintReport {
  bool middles_negative = false;                // middle vertices negatively curved
  bool middles_negative_without_spike = false;  // ... even with one spike triangle removed
  bool realizable = false;                      // strictly positive brim and spike heights
};

/// Throws OutOfRange when the angles/lengths leave the admissible box.
ConstraintReport validate_hat(const BasicHatParams& params);
ConstraintReport validate_hat(const TriHatParams& params);
ConstraintReport validate_hat(const HatParams& params);

struct HatBuildOptions {
  /// Accept beta == 30 for the basic hat, where the brim lies flat.
  bool allow_flat_brim = false;
};

double basic_hat_brim_height(const BasicHatParams& params);
double hat_spike_height(double alpha_deg);
double triangulated_hat_brim_height(const TriHatParams& params);

/// Vertex ids: corners 0..2, middles 3..5, tip 6.
PolyhedronMesh build_basic_hat(const BasicHatParams& params, const HatBuildOptions& options = {});
PolyhedronMesh build_triangulated_hat(const TriHatParams& params);
PolyhedronMesh build_hat(const HatParams& params, const HatBuildOptions& options = {});

/// Hats glued on every face of a regular tetrahedron / octahedron whose edge
/// equals the hat boundary side. Solid corners come first, then per face the
/// three middles followed by the tip.
PolyhedronMesh build_spiked_tetrahedron(const HatParams& params, const HatBuildOptions& options = {});
PolyhedronMesh build_spiked_octahedron(const HatParams& params, const HatBuildOptions& options = {});

/// n isosceles triangles around a shared vertex 0, realized as a pleated cone
/// (rim heights alternate); requires even n and n * apex > 360 degrees.
PolyhedronMesh build_open_fan(const FanParams& params);

enum class ReferenceSolid { Tetrahedron, Cube };

/// Unit edge length.
PolyhedronMesh build_reference(ReferenceSolid solid);

}  // namespace ununfold
