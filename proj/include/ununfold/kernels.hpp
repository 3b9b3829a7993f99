#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ununfold/geometry.hpp"

// Data-parallel inner loops of layout and overlap screening. Every kernel has
// a scalar reference; SIMD variants must agree with it bit for bit (no FMA
// contraction, identical operation order).
namespace ununfold::kernels {

struct Box {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

struct KernelTable {
  std::string_view name;

  /// out = t(p) for n points in structure-of-arrays form.
  void (*transform_points)(const Rigid2& t, const double* xs, const double* ys, std::size_t n,
                           double* out_x, double* out_y);

  /// Range of dot((ax, ay), p) over n points.
  void (*project_extent)(double ax, double ay, const double* xs, const double* ys, std::size_t n,
                         double* lo, double* hi);

  /// out[i] = 1 if box i and query are at most slack apart on both axes.
  void (*box_overlaps)(const Box& query, const double* min_x, const double* min_y, const double* max_x,
                       const double* max_y, std::size_t n, double slack, std::uint8_t* out);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Chosen once from UNUNFOLD_KERNELS ("scalar", "avx2", "auto"; default auto).
const KernelTable& active_kernels();

/// Overrides the active table; returns false if the name is unavailable.
bool select_kernels(std::string_view name);

}  // namespace ununfold::kernels
