#pragma once

#include "vll/field.hpp"

namespace vll {

/// Unnormalized forward transform (r2c).
SpectralField forward(const ScalarField& f);

/// Inverse transform with 1/n^2 normalization; round trip is the identity.
ScalarField inverse(const SpectralField& fh);

/// In-place variants reusing the caller's output storage.
void forward(const ScalarField& f, SpectralField& out);
void inverse(const SpectralField& fh, ScalarField& out);

}  // namespace vll
