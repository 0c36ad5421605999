#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vll/field.hpp"

namespace vll {

/// A convex, nondecreasing, superlinear weight s -> beta(s). Only the
/// evaluator is required; derivatives are taken by central differences.
struct BetaFunction {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> analytic_G;  // optional closed form, may be null

  static BetaFunction power(double p);  // s^p, with G(s) = s^{(p-1)/p}
  static BetaFunction s_log();          // s * log(e + s)

  /// Numerical membership probes: superlinearity (beta(s)/s grows by >= 10x
  /// between s0 and 1e6*s0) and midpoint convexity on 100 random pairs.
  /// Throws "beta not in K" on failure.
  void validate() const;
};

/// The inverse pair derived from beta: g inverts s -> s/beta(s) on [0,c1]
/// (decreasing onto [c2,inf)), and G inverts s -> s/g(s) on [0,c3]
/// (increasing onto [0,c1], G(0)=0). Values are computed on demand by
/// bracketed bisection to 1e-12 relative.
class InverseTables {
 public:
  static InverseTables build(const BetaFunction& beta);

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c3() const { return c3_; }

  double g(double eps) const;
  double G(double s) const;

  const BetaFunction& beta() const { return beta_; }

 private:
  BetaFunction beta_;
  double c1_ = 0.0, c2_ = 0.0, c3_ = 0.0;
};

/// Alias matching the operation vocabulary.
inline InverseTables build_inverses(const BetaFunction& beta) {
  return InverseTables::build(beta);
}

struct BallDecayEntry {
  double r = 0.0;
  double empirical = 0.0;   // sup over fields and x of the ball mass of |f|
  double envelope = 0.0;    // fitted_C * G(r^2)
  double ratio = 0.0;       // empirical / G(r^2)
};

/// Uniform-in-family decay of ball masses against G(r^2).
struct BallDecayCertificate {
  std::string beta_name;
  double fitted_C = 0.0;            // max ratio over the sweep
  bool bounded = true;              // ratio at smallest r <= 2x ratio at largest r
  std::vector<BallDecayEntry> entries;
  std::string to_json() const;
};

/// sup_{fields,x} int_{B_r(x)} |f| / G(r^2) over the given radii (which must
/// all be >= 4*spacing). Flags families whose ratio blows up as r shrinks.
BallDecayCertificate ball_decay_certificate(const std::vector<ScalarField>& fields,
                                            const InverseTables& tables,
                                            const std::vector<double>& radii);

/// Pieces of the small-ball vorticity bound built from the logarithmic
/// cutoff between radii r and sqrt(r).
struct LogCutoffBound {
  double r = 0.0;
  double empirical_sup = 0.0;       // sup_x int_{B_r(x)} |omega|
  double envelope_unit = 0.0;       // G(r) + 1/sqrt(log 1/r); caller fits C
  double chi_pairing = 0.0;         // int |omega| chi_r, chi centered at the sup point
  double grad_chi_sq = 0.0;         // ||grad chi_r||_{L2}^2, radial quadrature
  double grad_chi_sq_closed = 0.0;  // 2*pi / |log sqrt(r)|
  double f_term = 0.0;              // 2 * sup_x int_{B_sqrt(r)(x)} |f_part|
  double u_term = 0.0;              // ||u||_{L2} * ||grad chi_r||_{L2}
};

/// Requires r < min(c3, 1/2) (the validity range of G and of the cutoff).
LogCutoffBound log_cutoff_bound(const VectorField& u, const ScalarField& omega,
                                const ScalarField& f_part,
                                const InverseTables& tables, double r);

}  // namespace vll
