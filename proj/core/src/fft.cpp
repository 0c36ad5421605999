#include "vll/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace vll {
namespace {

// One r2c/c2r plan pair per grid size. Plans are created with FFTW_ESTIMATE:
// deterministic across runs, which the reproducibility contract needs.
// fftw_execute_dft_* on fresh arrays is thread-safe; planning is not.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

const PlanPair& plans_for(int n) {
  std::scoped_lock lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  PlanPair p;
  double* rbuf = fftw_alloc_real(static_cast<size_t>(n) * n);
  fftw_complex* cbuf = fftw_alloc_complex(static_cast<size_t>(n) * (n / 2 + 1));
  p.fwd = fftw_plan_dft_r2c_2d(n, n, rbuf, cbuf, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_c2r_2d(n, n, cbuf, rbuf, FFTW_ESTIMATE);
  fftw_free(rbuf);
  fftw_free(cbuf);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw planning failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(const ScalarField& f, SpectralField& out) {
  if (out.grid != f.grid) out = SpectralField(f.grid);
  const int n = f.grid.n();
  const PlanPair& p = plans_for(n);
  // r2c destroys its input, so transform a scratch copy.
  std::vector<double> scratch(f.values);
  fftw_execute_dft_r2c(p.fwd, scratch.data(),
                       reinterpret_cast<fftw_complex*>(out.coeffs.data()));
}

SpectralField forward(const ScalarField& f) {
  SpectralField out(f.grid);
  forward(f, out);
  return out;
}

void inverse(const SpectralField& fh, ScalarField& out) {
  if (out.grid != fh.grid) out = ScalarField(fh.grid);
  const int n = fh.grid.n();
  const PlanPair& p = plans_for(n);
  std::vector<std::complex<double>> scratch(fh.coeffs);
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.values.data());
  const double inv = 1.0 / static_cast<double>(fh.grid.size());
  for (double& v : out.values) v *= inv;
}

ScalarField inverse(const SpectralField& fh) {
  ScalarField out(fh.grid);
  inverse(fh, out);
  return out;
}

}  // namespace vll
