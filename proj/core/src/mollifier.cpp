#include "vll/mollifier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "vll/fft.hpp"

namespace vll {

Mollifier::Mollifier(double a) : alpha(a) {
  if (a <= 0.0) throw std::invalid_argument("Mollifier: alpha must be positive");
}

double Mollifier::profile(double r) {
  if (r >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r * r));
}

namespace {

std::mutex kernel_mutex;

std::map<std::pair<int, double>, SpectralField>& kernel_cache() {
  static std::map<std::pair<int, double>, SpectralField> cache;
  return cache;
}

SpectralField build_kernel_transform(const TorusGrid& g, double alpha) {
  ScalarField ker(g);
  const int n = g.n();
  const double h = g.spacing();
  double sum = 0.0;
  for (int r = 0; r < n; ++r) {
    double y2 = g.min_image(r * h);
    for (int c = 0; c < n; ++c) {
      double y1 = g.min_image(c * h);
      double rr = std::sqrt(y1 * y1 + y2 * y2) / alpha;
      double v = Mollifier::profile(rr);
      ker.values[static_cast<long>(r) * n + c] = v;
      sum += v;
    }
  }
  // Renormalize so the discrete integral is exactly 1.
  double scale = 1.0 / (sum * g.cell_area());
  for (double& v : ker.values) v *= scale;
  SpectralField kh = forward(ker);
  // Fold in the cell area: multiplying spectra then inverting realizes
  // sum_y f(y) ker(x-y) h^2.
  for (auto& z : kh.coeffs) z *= g.cell_area();
  return kh;
}

}  // namespace

const SpectralField& mollifier_transform(const TorusGrid& g, double alpha) {
  std::scoped_lock lock(kernel_mutex);
  auto key = std::make_pair(g.n(), alpha);
  auto& cache = kernel_cache();
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_kernel_transform(g, alpha)).first;
  return it->second;
}

ScalarField mollify(const ScalarField& f, double alpha) {
  if (alpha <= 2.0 * f.grid.spacing())
    throw std::invalid_argument("mollify: under-resolved kernel (alpha <= 2*spacing)");
  const SpectralField& kh = mollifier_transform(f.grid, alpha);
  SpectralField fh = forward(f);
  for (size_t i = 0; i < fh.coeffs.size(); ++i) fh.coeffs[i] *= kh.coeffs[i];
  return inverse(fh);
}

VectorField mollify(const VectorField& u, double alpha) {
  VectorField out(u.grid);
  out.u1 = mollify(ScalarField(u.grid, u.u1), alpha).values;
  out.u2 = mollify(ScalarField(u.grid, u.u2), alpha).values;
  return out;
}

}  // namespace vll
