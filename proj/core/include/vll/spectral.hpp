#pragma once

#include "vll/fft.hpp"

namespace vll {

/// Throws on odd n or n < 4.
TorusGrid make_grid(int n);

/// Velocity with curl u = omega, div u = 0, zero mean, via the spectral
/// stream function. Rejects input whose mean is not zero (the inverse
/// Laplacian is undefined on constants).
VectorField biot_savart(const ScalarField& omega);

/// Spectral-space Biot-Savart: writes u1_hat, u2_hat from omega_hat.
void biot_savart_spectral(const SpectralField& omega_hat,
                          SpectralField& u1_hat, SpectralField& u2_hat);

/// curl u = d1 u2 - d2 u1, computed spectrally.
ScalarField curl(const VectorField& u);

/// Partial derivative along axis (0 -> x1, 1 -> x2), spectral.
void derivative(const SpectralField& fh, int axis, SpectralField& out);

/// 2/3-rule truncation: zero modes with max(|k1|,|k2|) > n/3.
void dealias(SpectralField& fh);
int dealias_cutoff(const TorusGrid& g);

/// Leray projection of a spectral vector field (removes the gradient part).
void leray_project(SpectralField& u1_hat, SpectralField& u2_hat);

Norms norms(const ScalarField& f);
Norms norms(const VectorField& u);

/// L2 norm from spectral coefficients (Parseval).
double l2_norm(const SpectralField& fh);
/// ||grad f||_{L2} from spectral coefficients.
double h1_seminorm(const SpectralField& fh);
/// (1/2)||u||^2_{L2} of the Biot-Savart velocity of a mean-zero vorticity.
double velocity_energy(const SpectralField& omega_hat);

/// Max modulus of the spectral divergence, for the divergence-free check.
double divergence_max(const VectorField& u);

}  // namespace vll
