#include "vll/ball.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "vll/fft.hpp"

namespace vll {
namespace {

std::mutex disk_mutex;

struct DiskKernel {
  SpectralField transform;  // DFT of indicator, scaled by cell area
  long cells = 0;
  DiskKernel() : transform(TorusGrid(4)) {}
};

std::map<std::pair<int, double>, DiskKernel>& disk_cache() {
  static std::map<std::pair<int, double>, DiskKernel> cache;
  return cache;
}

const DiskKernel& disk_kernel(const TorusGrid& g, double r) {
  std::scoped_lock lock(disk_mutex);
  auto key = std::make_pair(g.n(), r);
  auto& cache = disk_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  ScalarField ind(g);
  const int n = g.n();
  const double h = g.spacing();
  long cells = 0;
  for (int row = 0; row < n; ++row) {
    double y2 = g.min_image(row * h);
    for (int col = 0; col < n; ++col) {
      double y1 = g.min_image(col * h);
      if (y1 * y1 + y2 * y2 <= r * r) {
        ind.values[static_cast<long>(row) * n + col] = 1.0;
        ++cells;
      }
    }
  }
  DiskKernel k;
  k.transform = forward(ind);
  for (auto& z : k.transform.coeffs) z *= g.cell_area();
  k.cells = cells;
  return cache.emplace(key, std::move(k)).first->second;
}

void check_radius(const TorusGrid& g, double r) {
  if (r < g.spacing())
    throw std::invalid_argument("ball_convolve: radius below grid spacing");
  if (r > std::numbers::pi)
    throw std::invalid_argument("ball_convolve: radius exceeds pi (disk wraps the torus)");
}

}  // namespace

ScalarField ball_convolve(const ScalarField& f, double r) {
  check_radius(f.grid, r);
  const DiskKernel& k = disk_kernel(f.grid, r);
  SpectralField fh = forward(f);
  for (size_t i = 0; i < fh.coeffs.size(); ++i) fh.coeffs[i] *= k.transform.coeffs[i];
  return inverse(fh);
}

double ball_area(const TorusGrid& g, double r) {
  check_radius(g, r);
  return static_cast<double>(disk_kernel(g, r).cells) * g.cell_area();
}

long ball_cell_count(const TorusGrid& g, double r) {
  check_radius(g, r);
  return disk_kernel(g, r).cells;
}

double ball_sup(const ScalarField& f, double r) {
  ScalarField conv = ball_convolve(f, r);
  double m = conv.values[0];
  for (double v : conv.values) m = std::max(m, v);
  return m;
}

double ball_integral_at(const ScalarField& f, double x1, double x2, double r) {
  check_radius(f.grid, r);
  const TorusGrid& g = f.grid;
  const int n = g.n();
  const double h = g.spacing();
  double s = 0.0;
  // Direct sum over the bounding box of the disk, clamped so no cell is
  // visited twice when the box wraps the torus.
  int span = static_cast<int>(std::ceil(r / h)) + 1;
  int lo = -span, hi = span + 1;
  if (hi - lo + 1 >= n) { lo = 0; hi = n - 1; }
  int c0 = static_cast<int>(std::floor(x1 / h));
  int r0 = static_cast<int>(std::floor(x2 / h));
  for (int dr = lo; dr <= hi; ++dr) {
    int row = ((r0 + dr) % n + n) % n;
    double y2 = g.min_image(row * h - x2);
    for (int dc = lo; dc <= hi; ++dc) {
      int col = ((c0 + dc) % n + n) % n;
      double y1 = g.min_image(col * h - x1);
      if (y1 * y1 + y2 * y2 <= r * r)
        s += f.values[static_cast<long>(row) * n + col];
    }
  }
  return s * g.cell_area();
}

}  // namespace vll
