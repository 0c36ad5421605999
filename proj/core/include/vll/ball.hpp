#pragma once

#include "vll/field.hpp"

namespace vll {

/// x -> integral of f over the disk B_r(x), via FFT convolution with the
/// cell-center sampled disk indicator (cell-area weighted). Requires
/// spacing <= r <= pi. The sampling error budget is O(spacing/r).
ScalarField ball_convolve(const ScalarField& f, double r);

/// Area of the discretized disk (cell count times cell area); using it in
/// place of pi r^2 makes ball means exact at grid level.
double ball_area(const TorusGrid& g, double r);

/// Number of grid cells inside the sampled disk.
long ball_cell_count(const TorusGrid& g, double r);

/// max over grid points of ball_convolve(f, r); the sup_x surrogate.
double ball_sup(const ScalarField& f, double r);

/// ball_convolve evaluated at a single point (by direct summation).
double ball_integral_at(const ScalarField& f, double x1, double x2, double r);

}  // namespace vll
