// Compiled with -mavx2 only; callers reach it through avx2_table() after a
// runtime CPU check.
#include <immintrin.h>

#include "ununfold/kernels.hpp"

namespace ununfold::kernels::detail {

namespace {

void transform_points(const Rigid2& t, const double* xs, const double* ys, std::size_t n, double* out_x,
                      double* out_y) {
  const __m256d c = _mm256_set1_pd(t.c);
  const __m256d s = _mm256_set1_pd(t.s);
  const __m256d tx = _mm256_set1_pd(t.tx);
  const __m256d ty = _mm256_set1_pd(t.ty);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    const __m256d rx = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(c, x), _mm256_mul_pd(s, y)), tx);
    const __m256d ry = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(s, x), _mm256_mul_pd(c, y)), ty);
    _mm256_storeu_pd(out_x + i, rx);
    _mm256_storeu_pd(out_y + i, ry);
  }
  for (; i < n; ++i) {
    const double x = xs[i], y = ys[i];
    out_x[i] = t.c * x - t.s * y + t.tx;
    out_y[i] = t.s * x + t.c * y + t.ty;
  }
}

void project_extent(double ax, double ay, const double* xs, const double* ys, std::size_t n, double* lo,
                    double* hi) {
  double mn = ax * xs[0] + ay * ys[0];
  double mx = mn;
  std::size_t i = 0;
  if (n >= 4) {
    const __m256d vx = _mm256_set1_pd(ax);
    const __m256d vy = _mm256_set1_pd(ay);
    __m256d vmin = _mm256_set1_pd(mn);
    __m256d vmax = vmin;
    for (; i + 4 <= n; i += 4) {
      const __m256d d =
          _mm256_add_pd(_mm256_mul_pd(vx, _mm256_loadu_pd(xs + i)), _mm256_mul_pd(vy, _mm256_loadu_pd(ys + i)));
      vmin = _mm256_min_pd(vmin, d);
      vmax = _mm256_max_pd(vmax, d);
    }
    alignas(32) double lane_min[4], lane_max[4];
    _mm256_store_pd(lane_min, vmin);
    _mm256_store_pd(lane_max, vmax);
    for (int k = 0; k < 4; ++k) {
      mn = lane_min[k] < mn ? lane_min[k] : mn;
      mx = lane_max[k] > mx ? lane_max[k] : mx;
    }
  }
  for (; i < n; ++i) {
    const double d = ax * xs[i] + ay * ys[i];
    mn = d < mn ? d : mn;
    mx = d > mx ? d : mx;
  }
  *lo = mn;
  *hi = mx;
}

void box_overlaps(const Box& q, const double* min_x, const double* min_y, const double* max_x,
                  const double* max_y, std::size_t n, double slack, std::uint8_t* out) {
  const __m256d qminx = _mm256_set1_pd(q.min_x), qminy = _mm256_set1_pd(q.min_y);
  const __m256d qmaxx = _mm256_set1_pd(q.max_x + slack), qmaxy = _mm256_set1_pd(q.max_y + slack);
  const __m256d sl = _mm256_set1_pd(slack);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d bmaxx = _mm256_add_pd(_mm256_loadu_pd(max_x + i), sl);
    const __m256d bmaxy = _mm256_add_pd(_mm256_loadu_pd(max_y + i), sl);
    __m256d apart = _mm256_cmp_pd(qminx, bmaxx, _CMP_GT_OQ);
    apart = _mm256_or_pd(apart, _mm256_cmp_pd(_mm256_loadu_pd(min_x + i), qmaxx, _CMP_GT_OQ));
    apart = _mm256_or_pd(apart, _mm256_cmp_pd(qminy, bmaxy, _CMP_GT_OQ));
    apart = _mm256_or_pd(apart, _mm256_cmp_pd(_mm256_loadu_pd(min_y + i), qmaxy, _CMP_GT_OQ));
    const int mask = _mm256_movemask_pd(apart);
    for (int k = 0; k < 4; ++k) out[i + k] = (mask >> k) & 1 ? 0 : 1;
  }
  for (; i < n; ++i) {
    const bool apart = q.min_x > max_x[i] + slack || min_x[i] > q.max_x + slack ||
                       q.min_y > max_y[i] + slack || min_y[i] > q.max_y + slack;
    out[i] = apart ? 0 : 1;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", transform_points, project_extent, box_overlaps};
  return table;
}

}  // namespace ununfold::kernels::detail
