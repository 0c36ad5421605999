#pragma once

#include <cmath>
#include <random>

#include "vll/fft.hpp"
#include "vll/spectral.hpp"

namespace vll::test {

/// Random band-limited mean-zero vorticity with per-mode amplitude
/// |k|^(slope+1) and seeded phases; normalized to unit velocity L2 norm.
inline ScalarField random_smooth_vorticity(const TorusGrid& g, unsigned seed,
                                           double slope = -3.0, int kmax_cap = 42) {
  SpectralField wh(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  const int n = g.n();
  const int cols = g.spectral_cols();
  const int kmax = std::min(dealias_cutoff(g), kmax_cap);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      double kk = std::sqrt(k1 * k1 + k2 * k2);
      if (kk < 1.0 || std::max(std::fabs(k2), k1) > kmax) continue;
      double amp = std::pow(kk, slope + 1.0);
      double th = phase(rng);
      wh.at(r, c) = std::polar(amp, th);
    }
  }
  // Hermitian symmetry on the self-conjugate columns so the field is real.
  for (int c : {0, n / 2}) {
    wh.at(0, c) = std::complex<double>(wh.at(0, c).real(), 0.0);
    wh.at(n / 2, c) = std::complex<double>(wh.at(n / 2, c).real(), 0.0);
    for (int r = 1; r < n / 2; ++r) wh.at(n - r, c) = std::conj(wh.at(r, c));
  }
  wh.coeffs[0] = 0.0;
  ScalarField w = inverse(wh);
  double e = velocity_energy(forward(w));
  if (e > 0.0) w *= 1.0 / std::sqrt(2.0 * e);
  return w;
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

inline double rel_l2_diff(const ScalarField& a, const ScalarField& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    double d = a.values[i] - b.values[i];
    num += d * d;
    den += b.values[i] * b.values[i];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace vll::test
