#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vll/field.hpp"

namespace vll {

struct AnalyticFact {
  std::string quantity;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool relative = true;
  bool pass = false;
};

AnalyticFact check_fact(const std::string& quantity, double measured,
                        double expected, double tolerance, bool relative = true);

/// A closed-form construction together with the analytic facts it asserts.
/// Derived quantities that have no closed form (family trends) are recorded
/// in params for cross-item tests.
struct GalleryItem {
  std::string name;
  std::map<std::string, double> params;
  double nu = 0.0;  // viscosity when the item carries one, else 0
  ScalarField omega;
  std::optional<VectorField> velocity;
  std::optional<VectorField> force;
  std::vector<AnalyticFact> facts;

  explicit GalleryItem(const TorusGrid& g) : omega(g) {}
  bool all_facts_pass() const;
  std::string facts_json() const;
};

/// Shrinking vortex with unit vorticity mass and vanishing velocity norm:
/// an oscillatory stream at frequency n inside a ball of radius 1/n,
/// normalized so ||omega||_L1 = 1.
GalleryItem concentrating_vortex(const TorusGrid& g, int n);

/// Mollified cutoff log-potential of a unit point mass, velocity normalized
/// in L2; the L1 norms of velocity and vorticity decay while the kinetic
/// energy concentrates at the center.
GalleryItem w11_failure_family(const TorusGrid& g, int n);

/// tiles x tiles copies of a concentrated seed, one per tile, scaled so the
/// global kinetic energy density is exactly 1/4.
GalleryItem checkerboard(const TorusGrid& g, int tiles);

/// u = (sin(m x2), 0) with f = u and nu = 1/m^2: a steady forced state with
/// order-one dissipation spread over the whole torus.
GalleryItem steady_shear(const TorusGrid& g, int m);

/// Eigenfunction stream psi = sin(m x1) cos(m x2)/m with f = -nu lap u and
/// nu^kappa = m; the force vanishes in L2 while the energy density does not.
GalleryItem oscillating_stream(const TorusGrid& g, double kappa, int m);

/// Compactly supported radial vortex patch (stream bump of radius `scale`):
/// a steady Euler flow whose rescalings concentrate at the origin.
GalleryItem radial_patch(const TorusGrid& g, double scale);

/// Self-similar heat evolution omega^nu(x,t) = nu^-2 omega(x/nu, t/nu); the
/// dissipation integral nu int_0^nu ||omega^nu||^2 dt is nu-independent.
GalleryItem heat_self_similar(const TorusGrid& g, double nu);

/// Closed-form dissipation integral of the heat_self_similar item.
double heat_self_similar_dissipation(const GalleryItem& item);

/// Names accepted by make_gallery_item / the CLI.
std::vector<std::string> gallery_names();

/// Dispatch by name with a generic parameter (n, tiles, m, scale, or nu).
GalleryItem make_gallery_item(const std::string& name, const TorusGrid& g,
                              double param, double kappa = -0.25);

}  // namespace vll
