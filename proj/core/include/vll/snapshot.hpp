#pragma once

#include <string>

#include "vll/field.hpp"

namespace vll {

/// One vorticity snapshot as stored on disk.
///
/// File layout, little-endian: magic bytes "VLL1", u32 n, f64 nu, f64 t,
/// then n^2 f64 row-major vorticity samples.
struct Snapshot {
  double nu = 0.0;
  double t = 0.0;
  ScalarField omega;

  Snapshot(double nu_, double t_, ScalarField w)
      : nu(nu_), t(t_), omega(std::move(w)) {}
};

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace vll
