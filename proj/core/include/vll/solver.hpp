#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vll/field.hpp"

namespace vll {

/// External force for the momentum equation. Analytic kinds are steady;
/// the solver consumes curl f, computed spectrally from the realized field.
struct ForceSpec {
  enum class Kind { none, steady_analytic, custom };
  Kind kind = Kind::none;
  std::string name;           // steady_analytic: "shear"
  double param = 0.0;         // shear frequency m
  std::optional<VectorField> custom_field;

  static ForceSpec none() { return ForceSpec{}; }
  static ForceSpec shear(int m);
  static ForceSpec custom(VectorField f);

  bool is_none() const { return kind == Kind::none; }
  VectorField realize(const TorusGrid& g) const;
};

/// Per-step conservation bookkeeping. cumulative_dissipation integrates
/// nu*||omega||_{L2}^2 with the same Runge-Kutta stage quadrature as the
/// state, so the balance residual sits at scheme order.
struct BalanceLedger {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> cumulative_dissipation;
  std::vector<double> enstrophy;      // (1/2)||omega||^2
  std::vector<double> l1_vorticity;

  double residual_at(size_t i) const {
    return energy[i] + cumulative_dissipation[i] - energy[0];
  }
  /// max_t |E(t) + nu int ||grad u||^2 - E(0)| / E(0); 0 for the zero field.
  double max_relative_residual() const;
  void write_csv(std::ostream& out) const;
};

/// Time-stamped vorticity snapshots for one viscosity, plus the running
/// balance ledger and enough metadata to re-run the integration.
struct Trajectory {
  double nu = 0.0;
  std::vector<double> times;
  std::vector<ScalarField> snapshots;
  ForceSpec force;
  BalanceLedger ledger;
  double dt_initial = 0.0;
  int snap_every = 1;
  double dt_final = 0.0;      // after any CFL halving
  int cfl_halvings = 0;

  const TorusGrid& grid() const { return snapshots.front().grid; }
  double end_time() const { return times.back(); }
  double initial_velocity_l2() const;
};

/// Integrate d_t omega + u . grad omega = nu Lap omega + curl f from t=0 to T.
///
/// Integrating-factor SSP-RK3: diffusion via the exact spectral factor
/// exp(-nu |k|^2 dt), advection via the dealiased pseudo-spectral product.
/// The advective CFL dt*max|u|/spacing <= 0.5 is enforced adaptively: on
/// violation dt is halved with a warning, with a hard error below
/// dt_initial * 2^-12. NaN detection aborts with a diagnostic.
/// Snapshots are recorded at t=0, at multiples of snap_every*dt, and at T.
Trajectory evolve(const ScalarField& omega0, double nu, const ForceSpec& force,
                  double T, double dt, int snap_every);

/// max_t |E(t) + nu int_0^t ||grad u||^2 ds - E(0)| / E(0). Unforced only.
double energy_balance_residual(const Trajectory& traj);

struct MonotonicityReport {
  bool l1_ok = true;
  bool enstrophy_bound_ok = true;
  double first_l1_violation = -1.0;
  double first_enstrophy_violation = -1.0;
};

/// Checks ||omega(t)||_L1 <= ||omega_0||_L1 (1+1e-6) for all t, and
/// ||omega(t)||^2_L2 <= ||u_0||^2/(2 t nu) (1+1e-3) for t >= 10*dt.
MonotonicityReport monotonicity_checks(const Trajectory& traj);

/// Passive advection-diffusion split of the vorticity: f and mu = omega - f
/// carried by the parent's velocity at the parent's viscosity.
struct DecompositionPair {
  std::vector<double> times;
  std::vector<ScalarField> f_part;
  std::vector<ScalarField> mu_part;
  double max_mu_undershoot = 0.0;  // most negative mu, relative to max mu
  bool undershoot_flagged = false; // beyond 1e-3 * max
};

/// Re-integrates the parent trajectory while co-advecting f; the scheme is
/// linear, so f + mu reproduces the parent vorticity snapshot-for-snapshot.
/// Requires f0 + mu0 = omega_0 (1e-10) and mu0 >= 0 up to sampling noise.
DecompositionPair evolve_decomposition(const Trajectory& parent,
                                       const ScalarField& f0,
                                       const ScalarField& mu0);

/// || P[div(u x u) - nu Lap u - f] ||_{L2}, pressure eliminated spectrally.
double steady_residual(const VectorField& u, const VectorField& f, double nu);

}  // namespace vll
