#include "vll/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace vll {
namespace {

// Parseval weight for the half-complex layout: columns 0 and n/2 appear once
// in the full spectrum, every other column twice.
inline double col_weight(int col, int n) {
  return (col == 0 || col == n / 2) ? 1.0 : 2.0;
}

// integral(|f|^2 dx) = (4 pi^2 / n^4) * sum_k w_c |f_hat|^2
inline double parseval_scale(const TorusGrid& g) {
  double n2 = static_cast<double>(g.size());
  return two_pi * two_pi / (n2 * n2);
}

}  // namespace

TorusGrid make_grid(int n) { return TorusGrid(n); }

void biot_savart_spectral(const SpectralField& omega_hat,
                          SpectralField& u1_hat, SpectralField& u2_hat) {
  const TorusGrid& g = omega_hat.grid;
  if (u1_hat.grid != g) u1_hat = SpectralField(g);
  if (u2_hat.grid != g) u2_hat = SpectralField(g);
  const int n = g.n();
  const int cols = g.spectral_cols();
  const std::complex<double> I(0.0, 1.0);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    double k2d = g.k2_deriv(r);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      double kk = k1 * k1 + k2 * k2;
      long idx = static_cast<long>(r) * cols + c;
      if (kk == 0.0) {
        u1_hat.coeffs[idx] = 0.0;
        u2_hat.coeffs[idx] = 0.0;
      } else {
        std::complex<double> w = omega_hat.coeffs[idx] / kk;
        u1_hat.coeffs[idx] = I * k2d * w;
        u2_hat.coeffs[idx] = -I * g.k1_deriv(c) * w;
      }
    }
  }
}

VectorField biot_savart(const ScalarField& omega) {
  if (!omega.is_mean_zero(1e-12))
    throw std::invalid_argument(
        "biot_savart: vorticity must be mean-zero (inverse Laplacian undefined on constants)");
  SpectralField oh = forward(omega);
  oh.coeffs[0] = 0.0;  // drop quadrature-level residual mean
  SpectralField u1h(omega.grid), u2h(omega.grid);
  biot_savart_spectral(oh, u1h, u2h);
  VectorField u(omega.grid);
  ScalarField tmp(omega.grid);
  inverse(u1h, tmp);
  u.u1 = tmp.values;
  inverse(u2h, tmp);
  u.u2 = std::move(tmp.values);
  return u;
}

void derivative(const SpectralField& fh, int axis, SpectralField& out) {
  const TorusGrid& g = fh.grid;
  if (out.grid != g) out = SpectralField(g);
  const int n = g.n();
  const int cols = g.spectral_cols();
  const std::complex<double> I(0.0, 1.0);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2_deriv(r);
    for (int c = 0; c < cols; ++c) {
      double k = (axis == 0) ? g.k1_deriv(c) : k2;
      long idx = static_cast<long>(r) * cols + c;
      out.coeffs[idx] = I * k * fh.coeffs[idx];
    }
  }
}

ScalarField curl(const VectorField& u) {
  SpectralField u1h = forward(ScalarField(u.grid, u.u1));
  SpectralField u2h = forward(ScalarField(u.grid, u.u2));
  const TorusGrid& g = u.grid;
  const int n = g.n();
  const int cols = g.spectral_cols();
  SpectralField wh(g);
  const std::complex<double> I(0.0, 1.0);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2_deriv(r);
    for (int c = 0; c < cols; ++c) {
      long idx = static_cast<long>(r) * cols + c;
      wh.coeffs[idx] = I * (g.k1_deriv(c) * u2h.coeffs[idx] - k2 * u1h.coeffs[idx]);
    }
  }
  return inverse(wh);
}

int dealias_cutoff(const TorusGrid& g) { return g.n() / 3; }

void dealias(SpectralField& fh) {
  const TorusGrid& g = fh.grid;
  const int kc = dealias_cutoff(g);
  const int n = g.n();
  const int cols = g.spectral_cols();
  for (int r = 0; r < n; ++r) {
    double k2 = std::fabs(g.k2(r));
    for (int c = 0; c < cols; ++c) {
      if (std::max(static_cast<double>(c), k2) > kc)
        fh.coeffs[static_cast<long>(r) * cols + c] = 0.0;
    }
  }
}

void leray_project(SpectralField& u1_hat, SpectralField& u2_hat) {
  const TorusGrid& g = u1_hat.grid;
  const int n = g.n();
  const int cols = g.spectral_cols();
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      long idx = static_cast<long>(r) * cols + c;
      std::complex<double> div = k1 * u1_hat.coeffs[idx] + k2 * u2_hat.coeffs[idx];
      u1_hat.coeffs[idx] -= k1 * div / kk;
      u2_hat.coeffs[idx] -= k2 * div / kk;
    }
  }
}

double l2_norm(const SpectralField& fh) {
  const TorusGrid& g = fh.grid;
  const int n = g.n();
  const int cols = g.spectral_cols();
  double s = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < cols; ++c)
      s += col_weight(c, n) * std::norm(fh.coeffs[static_cast<long>(r) * cols + c]);
  return std::sqrt(parseval_scale(g) * s);
}

double h1_seminorm(const SpectralField& fh) {
  const TorusGrid& g = fh.grid;
  const int n = g.n();
  const int cols = g.spectral_cols();
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      s += col_weight(c, n) * (k1 * k1 + k2 * k2) *
           std::norm(fh.coeffs[static_cast<long>(r) * cols + c]);
    }
  }
  return std::sqrt(parseval_scale(g) * s);
}

double velocity_energy(const SpectralField& omega_hat) {
  const TorusGrid& g = omega_hat.grid;
  const int n = g.n();
  const int cols = g.spectral_cols();
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      s += col_weight(c, n) * std::norm(omega_hat.coeffs[static_cast<long>(r) * cols + c]) / kk;
    }
  }
  return 0.5 * parseval_scale(g) * s;
}

Norms norms(const ScalarField& f) {
  Norms out;
  const double w = f.grid.cell_area();
  double s1 = 0.0, s2 = 0.0;
  for (double v : f.values) {
    s1 += std::fabs(v);
    s2 += v * v;
  }
  out.l1 = w * s1;
  out.l2 = std::sqrt(w * s2);
  out.energy = 0.5 * w * s2;
  out.h1_seminorm = h1_seminorm(forward(f));
  return out;
}

Norms norms(const VectorField& u) {
  Norms out;
  const double w = u.grid.cell_area();
  double s1 = 0.0, s2 = 0.0;
  for (size_t i = 0; i < u.u1.size(); ++i) {
    double m2 = u.u1[i] * u.u1[i] + u.u2[i] * u.u2[i];
    s1 += std::sqrt(m2);
    s2 += m2;
  }
  out.l1 = w * s1;
  out.l2 = std::sqrt(w * s2);
  out.energy = 0.5 * w * s2;
  double a = h1_seminorm(forward(ScalarField(u.grid, u.u1)));
  double b = h1_seminorm(forward(ScalarField(u.grid, u.u2)));
  out.h1_seminorm = std::sqrt(a * a + b * b);
  return out;
}

double divergence_max(const VectorField& u) {
  SpectralField u1h = forward(ScalarField(u.grid, u.u1));
  SpectralField u2h = forward(ScalarField(u.grid, u.u2));
  const TorusGrid& g = u.grid;
  const int n = g.n();
  const int cols = g.spectral_cols();
  double m = 0.0;
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2_deriv(r);
    for (int c = 0; c < cols; ++c) {
      long idx = static_cast<long>(r) * cols + c;
      m = std::max(m, std::abs(g.k1_deriv(c) * u1h.coeffs[idx] + k2 * u2h.coeffs[idx]));
    }
  }
  return m;
}

}  // namespace vll
