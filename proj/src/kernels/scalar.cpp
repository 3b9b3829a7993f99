#include "ununfold/kernels.hpp"

namespace ununfold::kernels {

namespace {

void transform_points(const Rigid2& t, const double* xs, const double* ys, std::size_t n, double* out_x,
                      double* out_y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i], y = ys[i];
    out_x[i] = t.c * x - t.s * y + t.tx;
    out_y[i] = t.s * x + t.c * y + t.ty;
  }
}

void project_extent(double ax, double ay, const double* xs, const double* ys, std::size_t n, double* lo,
                    double* hi) {
  double mn = ax * xs[0] + ay * ys[0];
  double mx = mn;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = ax * xs[i] + ay * ys[i];
    mn = d < mn ? d : mn;
    mx = d > mx ? d : mx;
  }
  *lo = mn;
  *hi = mx;
}

void box_overlaps(const Box& q, const double* min_x, const double* min_y, const double* max_x,
                  const double* max_y, std::size_t n, double slack, std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const bool apart = q.min_x > max_x[i] + slack || min_x[i] > q.max_x + slack ||
                       q.min_y > max_y[i] + slack || min_y[i] > q.max_y + slack;
    out[i] = apart ? 0 : 1;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", transform_points, project_extent, box_overlaps};
  return table;
}

}  // namespace ununfold::kernels
