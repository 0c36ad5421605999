#pragma once

#include "vll/field.hpp"

namespace vll {

/// Radial bump kernel rho_alpha(x) = alpha^{-2} rho(x/alpha), rho supported
/// in the unit disk, normalized to unit integral. The discretized kernel is
/// renormalized so its cell sum is exactly 1.
struct Mollifier {
  double alpha;

  explicit Mollifier(double a);

  /// The smooth profile rho (before discrete renormalization), |x| < 1.
  static double profile(double r);
};

/// Convolution with rho_alpha via spectral multiplication of the discretized
/// kernel transform. Requires alpha > 2*spacing ("under-resolved kernel").
ScalarField mollify(const ScalarField& f, double alpha);
VectorField mollify(const VectorField& u, double alpha);

/// DFT of the discretized unit-mass kernel (cached); the spectral multiplier
/// applied by mollify. Its modulus is <= 1, so mollify never increases L2.
const SpectralField& mollifier_transform(const TorusGrid& g, double alpha);

}  // namespace vll
