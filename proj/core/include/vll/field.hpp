#pragma once

#include <complex>
#include <vector>

#include "vll/grid.hpp"

namespace vll {

/// Real scalar samples on a TorusGrid (row-major, n^2 values).
struct ScalarField {
  TorusGrid grid;
  std::vector<double> values;

  explicit ScalarField(const TorusGrid& g) : grid(g), values(g.size(), 0.0) {}
  ScalarField(const TorusGrid& g, std::vector<double> v);

  double& at(int row, int col) { return values[static_cast<long>(row) * grid.n() + col]; }
  double at(int row, int col) const { return values[static_cast<long>(row) * grid.n() + col]; }

  double mean() const;
  double max_abs() const;
  /// |mean| <= tol * max|values| (vacuously true for the zero field).
  bool is_mean_zero(double tol = 1e-12) const;
  void subtract_mean();

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double a);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);

/// Real 2-vector samples on a TorusGrid.
struct VectorField {
  TorusGrid grid;
  std::vector<double> u1, u2;

  explicit VectorField(const TorusGrid& g)
      : grid(g), u1(g.size(), 0.0), u2(g.size(), 0.0) {}

  double max_abs() const;
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double a);

  /// Pointwise |u|^2 as a scalar field.
  ScalarField speed_squared() const;
};

/// Half-complex (r2c) spectral coefficients, unnormalized forward transform.
struct SpectralField {
  TorusGrid grid;
  std::vector<std::complex<double>> coeffs;

  explicit SpectralField(const TorusGrid& g)
      : grid(g), coeffs(g.spectral_size(), std::complex<double>(0.0, 0.0)) {}

  std::complex<double>& at(int row, int col) {
    return coeffs[static_cast<long>(row) * grid.spectral_cols() + col];
  }
  std::complex<double> at(int row, int col) const {
    return coeffs[static_cast<long>(row) * grid.spectral_cols() + col];
  }
};

/// Quadrature norms of a field: trapezoidal in real space, exact for
/// trigonometric polynomials below Nyquist in L2.
struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double h1_seminorm = 0.0;
  double energy = 0.0;  // (1/2) * l2^2
};

}  // namespace vll
