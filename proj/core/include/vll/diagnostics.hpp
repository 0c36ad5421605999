#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vll/beta.hpp"
#include "vll/solver.hpp"

namespace vll {

/// One evaluated inequality lhs <= tol_factor * rhs.
struct CertificateResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol_factor = 1.0;
  bool pass = false;
  bool constant_free = false;
  /// lhs/rhs; <= tol_factor means pass.
  double margin() const;
};

CertificateResult make_certificate(const std::string& name, double lhs, double rhs,
                                   double tol_factor, bool constant_free);

/// Per-(nu, ell, delta) record of the sweep functionals.
struct DiagnosticRow {
  double nu = 0.0, ell = 0.0, delta = 0.0;
  double diss_total = 0.0;
  double s2 = 0.0;
  double lambda_con = 0.0;
  double omega_con = 0.0;
  double q_con = 0.0;
  std::vector<CertificateResult> certificates;
};

struct DiagnosticTable {
  std::vector<DiagnosticRow> rows;
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  bool all_constant_free_pass() const;
};

/// The weak-limit surrogate velocity entering Lambda_con: either zero (the
/// equivalent |u^nu|^2 formulation) or a donor trajectory interpolated
/// linearly in time. The donor must outlive this handle.
class ReferenceVelocity {
 public:
  static ReferenceVelocity zero() { return ReferenceVelocity(); }
  static ReferenceVelocity from_trajectory(const Trajectory& traj);

  bool is_zero() const { return src_ == nullptr; }
  /// Velocity sample at time t (clamped to the donor's time range).
  VectorField at(const TorusGrid& g, double t) const;

 private:
  const Trajectory* src_ = nullptr;
};

/// nu * int_delta^T ||grad u||^2 dt by snapshot trapezoid (= nu ||omega||^2).
double dissipation_total(const Trajectory& traj, double delta, double T);

/// Time integral of the disk-averaged squared velocity increment at
/// separations up to ell, via the FFT autocorrelation.
double structure_function_s2(const Trajectory& traj, double ell);

/// int_0^T ( sup_x int_{B_ell(x)} |u - u_ref|^2 )^{1/2} dt.
double lambda_con(const Trajectory& traj, const ReferenceVelocity& u_ref, double ell);

/// int_0^T sup_x int_{B_ell(x)} |omega| dt.
double omega_con(const Trajectory& traj, double ell);

/// Like lambda_con with the ball mean of u removed (ball variance).
double q_con(const Trajectory& traj, double ell);

/// |omega(x)| * int_{B_sqrt(nu)(x)} |omega|; requires sqrt(nu) >= 4*spacing.
ScalarField omega_hat_field(const ScalarField& omega, double nu);

struct PhiEntry {
  double eps = 0.0;
  double phi = 0.0;  // sup over the family of ||u_eps - u||_{L2}
};

/// Modulus of compactness of a velocity family under mollification.
std::vector<PhiEntry> modulus_of_compactness(const std::vector<VectorField>& family,
                                             const std::vector<double>& eps_list);

/// Short-time bounds: ||u(delta)-u0||^2 <= C (Phi(eps) + delta/eps^2) and
/// nu int_0^delta ||grad u||^2 <= C sqrt(Phi(eps) + delta/eps^2), with C
/// fitted on the largest-nu member and a 2x drift budget for the rest.
struct ShortTimeCertificate {
  double eps = 0.0, delta = 0.0, phi = 0.0;
  double C_displacement = 0.0;
  double C_dissipation = 0.0;
  double worst_margin = 0.0;  // max ratio/(fitted C) over the family
  bool pass = false;
  struct Entry {
    double nu;
    double displacement_sq, dissipation;
    double envelope_unit;  // Phi(eps) + delta/eps^2
  };
  std::vector<Entry> entries;
};

ShortTimeCertificate short_time_certificate(const std::vector<Trajectory>& family,
                                            double eps, double delta);

/// nu^2 int_delta^T ||grad omega||^2 <= ||u0||^2 / delta (constant-free).
CertificateResult higher_order_certificate(const Trajectory& traj, double delta,
                                           double tol_factor = 1.0 + 1e-3);

/// Raw per-trajectory ingredients for the dissipative-scale certificates,
/// evaluated at ell = scale_mult * sqrt(nu).
struct KolmogorovNumbers {
  double nu = 0.0, ell = 0.0, delta = 0.0;
  bool ell_resolved = false;  // ell >= 4*spacing; functionals skipped otherwise
  double s2 = 0.0;
  double lambda = 0.0;
  double omega = 0.0;
  double q = 0.0;
  double diss_full = 0.0;  // [0,T]
  double diss_tail = 0.0;  // [delta,T]
};

KolmogorovNumbers kolmogorov_numbers(const Trajectory& traj,
                                     const ReferenceVelocity& u_ref,
                                     double scale_mult, double delta);

/// Family-level certificate set: the constant-free bound per trajectory plus
/// C-bearing bounds fitted on the largest-nu member with a 2x drift budget.
/// eps in the concentration bounds is scanned over {1e-2, 1e-1, 1}.
struct KolmogorovReport {
  std::vector<CertificateResult> constant_free;  // s2(sqrt nu) <= diss, per traj
  struct FittedBound {
    std::string name;
    double C_fit = 0.0;
    double max_drift = 0.0;  // max ratio / C_fit over the family
    bool pass = false;       // max_drift <= 2
    std::vector<double> ratios;
  };
  std::vector<FittedBound> fitted;
  bool all_pass() const;
};

KolmogorovReport kolmogorov_equivalence_report(const std::vector<KolmogorovNumbers>& family,
                                               double delta);

/// Dissipation-rate envelope sqrt((T/delta)(G(sqrt nu) + 1/sqrt(log 1/nu)))
/// fitted at the largest nu; smaller nu must stay under 2x the fit.
struct RateCertificate {
  double delta = 0.0;
  double C_fit = 0.0;
  bool pass = false;
  struct Entry {
    double nu = 0.0;
    double diss_tail = 0.0;
    double envelope = 0.0;  // unit-C envelope value
    double ratio = 0.0;
    bool side_condition_ok = false;  // T(G + 1/sqrt log) <= 1/2
  };
  std::vector<Entry> entries;
};

RateCertificate rate_certificate(const std::vector<Trajectory>& family,
                                 const InverseTables& tables, double delta);

/// <density, phi> sequence over a family parameter with a limit estimate
/// (Aitken extrapolation when three or more values are available).
struct PairingRecord {
  std::string test_function_id;
  std::vector<double> params;
  std::vector<double> values;
  double limit_estimate = 0.0;
  std::optional<double> separable_product;
};

double pairing(const ScalarField& density, const ScalarField& phi);

PairingRecord weak_star_pairing(const std::vector<ScalarField>& densities,
                                const std::vector<double>& params,
                                const ScalarField& phi,
                                const std::string& id);

/// Exact bilinear factorization <|w| x |w|, phi x psi> = <|w|,phi><|w|,psi>.
double separable_gamma_pairing(const ScalarField& abs_density,
                               const ScalarField& phi, const ScalarField& psi);

struct AtomMassProfile {
  std::vector<double> radii;
  std::vector<double> masses;
  double atom_score = 0.0;  // mass at the smallest resolvable radius
};

/// Ball masses of a density around x0 over a decreasing list of radii.
AtomMassProfile atom_mass(const ScalarField& density, double x1, double x2,
                          const std::vector<double>& radii);

/// Velocity of one snapshot (Biot-Savart of the stored vorticity).
VectorField snapshot_velocity(const Trajectory& traj, size_t k);

/// Trapezoid of per-snapshot values over [a,b] with endpoint interpolation.
double time_trapezoid(const std::vector<double>& times,
                      const std::vector<double>& values, double a, double b);

}  // namespace vll
