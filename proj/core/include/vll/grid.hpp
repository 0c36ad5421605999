#pragma once

#include <cmath>
#include <numbers>

namespace vll {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Uniform n x n discretization of the periodic square [0,2pi)^2.
///
/// Real samples are stored row-major: index(row j, col i) = j*n + i, with
/// x1 = i*spacing and x2 = j*spacing. Spectral data uses the half-complex
/// r2c layout, n rows by (n/2+1) columns; k1 is the (non-negative) column
/// wavenumber and k2 the row wavenumber with standard wrap-around.
class TorusGrid {
public:
  explicit TorusGrid(int n);

  int n() const { return n_; }
  double spacing() const { return two_pi / n_; }
  long size() const { return static_cast<long>(n_) * n_; }
  double cell_area() const { double h = spacing(); return h * h; }

  int spectral_cols() const { return n_ / 2 + 1; }
  long spectral_size() const { return static_cast<long>(n_) * spectral_cols(); }

  /// Column wavenumber, col in [0, n/2].
  double k1(int col) const { return static_cast<double>(col); }
  /// Row wavenumber with wrap: row < n/2 -> row, else row - n.
  double k2(int row) const { return row < n_ / 2 ? row : row - n_; }

  /// Wavenumbers for odd derivatives: the Nyquist mode is zeroed so the
  /// derivative of a real field stays exactly representable in the
  /// half-complex layout.
  double k1_deriv(int col) const { return col == n_ / 2 ? 0.0 : k1(col); }
  double k2_deriv(int row) const { return row == n_ / 2 ? 0.0 : k2(row); }

  double x1(int col) const { return col * spacing(); }
  double x2(int row) const { return row * spacing(); }

  /// Signed minimal-image displacement of coordinate index along one axis.
  double min_image(double d) const {
    return d - two_pi * std::round(d / two_pi);
  }

  bool operator==(const TorusGrid& other) const { return n_ == other.n_; }
  bool operator!=(const TorusGrid& other) const { return n_ != other.n_; }

private:
  int n_;
};

}  // namespace vll
