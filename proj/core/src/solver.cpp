#include "vll/solver.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "vll/fft.hpp"
#include "vll/spectral.hpp"

namespace vll {

ForceSpec ForceSpec::shear(int m) {
  ForceSpec f;
  f.kind = Kind::steady_analytic;
  f.name = "shear";
  f.param = static_cast<double>(m);
  return f;
}

ForceSpec ForceSpec::custom(VectorField field) {
  if (!ScalarField(field.grid, field.u1).is_mean_zero(1e-10) ||
      !ScalarField(field.grid, field.u2).is_mean_zero(1e-10))
    throw std::invalid_argument("ForceSpec::custom: force must be mean-zero");
  ForceSpec f;
  f.kind = Kind::custom;
  f.custom_field = std::move(field);
  return f;
}

VectorField ForceSpec::realize(const TorusGrid& g) const {
  switch (kind) {
    case Kind::none:
      return VectorField(g);
    case Kind::custom:
      if (custom_field->grid != g)
        throw std::invalid_argument("ForceSpec: custom force grid mismatch");
      return *custom_field;
    case Kind::steady_analytic: {
      if (name == "shear") {
        VectorField f(g);
        int m = static_cast<int>(param);
        for (int row = 0; row < g.n(); ++row) {
          double s = std::sin(m * g.x2(row));
          for (int col = 0; col < g.n(); ++col)
            f.u1[static_cast<long>(row) * g.n() + col] = s;
        }
        return f;
      }
      throw std::invalid_argument("ForceSpec: unknown analytic force '" + name + "'");
    }
  }
  return VectorField(g);
}

double BalanceLedger::max_relative_residual() const {
  if (energy.empty() || energy[0] == 0.0) return 0.0;
  double m = 0.0;
  for (size_t i = 0; i < energy.size(); ++i)
    m = std::max(m, std::fabs(residual_at(i)));
  return m / energy[0];
}

void BalanceLedger::write_csv(std::ostream& out) const {
  out << "t,energy,cumulative_dissipation,enstrophy,l1_vorticity,balance_residual\n";
  char buf[256];
  for (size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  t[i], energy[i], cumulative_dissipation[i], enstrophy[i],
                  l1_vorticity[i], residual_at(i));
    out << buf;
  }
}

double Trajectory::initial_velocity_l2() const {
  return std::sqrt(2.0 * ledger.energy.front());
}

namespace {

constexpr double kCflLimit = 0.5;
constexpr int kMaxHalvings = 12;

double spectral_l2sq(const SpectralField& fh) {
  double v = l2_norm(fh);
  return v * v;
}

// Integrating-factor SSP-RK3 stepper for the vorticity equation, optionally
// co-advecting one passive scalar with the same velocity and viscosity.
class Integrator {
 public:
  Integrator(const TorusGrid& g, double nu, const ForceSpec& force)
      : grid_(g), nu_(nu),
        w_(g), w1_(g), w2_(g), n0_(g), n1_(g), n2_(g),
        u1h_(g), u2h_(g), tmp_(g),
        u1r_(g), u2r_(g), gx_(g), gy_(g), nl_(g),
        curl_f_(g), has_force_(!force.is_none()) {
    if (has_force_) {
      VectorField f = force.realize(g);
      SpectralField f1h = forward(ScalarField(g, f.u1));
      SpectralField f2h = forward(ScalarField(g, f.u2));
      const int n = g.n();
      const int cols = g.spectral_cols();
      const std::complex<double> I(0.0, 1.0);
      for (int r = 0; r < n; ++r) {
        double k2 = g.k2_deriv(r);
        for (int c = 0; c < cols; ++c) {
          long idx = static_cast<long>(r) * cols + c;
          curl_f_.coeffs[idx] =
              I * (g.k1_deriv(c) * f2h.coeffs[idx] - k2 * f1h.coeffs[idx]);
        }
      }
      dealias(curl_f_);
      curl_f_.coeffs[0] = 0.0;
    }
  }

  void set_state(const ScalarField& omega0) {
    forward(omega0, w_);
    w_.coeffs[0] = 0.0;
    dealias(w_);
  }

  void set_passive(const ScalarField& f0) {
    passive_ = SpectralField(grid_);
    forward(f0, *passive_);
    dealias(*passive_);
    p1_ = SpectralField(grid_);
    p2_ = SpectralField(grid_);
    m0_ = SpectralField(grid_);
    m1_ = SpectralField(grid_);
    m2_ = SpectralField(grid_);
  }

  const SpectralField& state() const { return w_; }
  const SpectralField& passive() const { return *passive_; }

  void build_tables(double dt) {
    if (dt == table_dt_) return;
    table_dt_ = dt;
    const int n = grid_.n();
    const int cols = grid_.spectral_cols();
    const int kc = dealias_cutoff(grid_);
    e_full_.assign(grid_.spectral_size(), 0.0);
    e_half_.assign(grid_.spectral_size(), 0.0);
    e_mhalf_.assign(grid_.spectral_size(), 0.0);
    for (int r = 0; r < n; ++r) {
      double k2 = grid_.k2(r);
      bool keep_row = std::fabs(k2) <= kc;
      for (int c = 0; c < cols; ++c) {
        if (!keep_row || c > kc) continue;  // dealiased modes stay zero
        double kk = c * static_cast<double>(c) + k2 * k2;
        long idx = static_cast<long>(r) * cols + c;
        e_full_[idx] = std::exp(-nu_ * kk * dt);
        e_half_[idx] = std::exp(-nu_ * kk * dt * 0.5);
        e_mhalf_[idx] = std::exp(nu_ * kk * dt * 0.5);
      }
    }
  }

  /// max|u| of the current state (stage-1 velocity), for the CFL check.
  double probe_max_u() {
    nonlinear(w_, n0_, passive_ ? &*passive_ : nullptr, passive_ ? &*m0_ : nullptr);
    have_stage1_ = true;
    return last_max_u_;
  }

  struct StepStats {
    double q0, q1, q2;  // nu*||omega||^2 at stages t, t+dt, t+dt/2
  };

  StepStats step(double dt) {
    build_tables(dt);
    if (!have_stage1_)
      nonlinear(w_, n0_, passive_ ? &*passive_ : nullptr, passive_ ? &*m0_ : nullptr);
    have_stage1_ = false;

    StepStats s{};
    s.q0 = nu_ * spectral_l2sq(w_);

    const long m = grid_.spectral_size();
    for (long i = 0; i < m; ++i)
      w1_.coeffs[i] = e_full_[i] * (w_.coeffs[i] + dt * n0_.coeffs[i]);
    if (passive_)
      for (long i = 0; i < m; ++i)
        p1_->coeffs[i] = e_full_[i] * (passive_->coeffs[i] + dt * m0_->coeffs[i]);
    s.q1 = nu_ * spectral_l2sq(w1_);

    nonlinear(w1_, n1_, passive_ ? &*p1_ : nullptr, passive_ ? &*m1_ : nullptr);
    for (long i = 0; i < m; ++i)
      w2_.coeffs[i] = 0.75 * e_half_[i] * w_.coeffs[i] +
                      0.25 * e_mhalf_[i] * (w1_.coeffs[i] + dt * n1_.coeffs[i]);
    if (passive_)
      for (long i = 0; i < m; ++i)
        p2_->coeffs[i] = 0.75 * e_half_[i] * passive_->coeffs[i] +
                         0.25 * e_mhalf_[i] * (p1_->coeffs[i] + dt * m1_->coeffs[i]);
    s.q2 = nu_ * spectral_l2sq(w2_);

    nonlinear(w2_, n2_, passive_ ? &*p2_ : nullptr, passive_ ? &*m2_ : nullptr);
    for (long i = 0; i < m; ++i)
      w_.coeffs[i] = (1.0 / 3.0) * e_full_[i] * w_.coeffs[i] +
                     (2.0 / 3.0) * e_half_[i] * (w2_.coeffs[i] + dt * n2_.coeffs[i]);
    if (passive_)
      for (long i = 0; i < m; ++i)
        passive_->coeffs[i] = (1.0 / 3.0) * e_full_[i] * passive_->coeffs[i] +
                              (2.0 / 3.0) * e_half_[i] * (p2_->coeffs[i] + dt * m2_->coeffs[i]);
    return s;
  }

 private:
  // rhs = -u . grad w (dealiased, mean-zero) + curl f; mean of the passive
  // rhs is also zeroed so its integral is conserved exactly.
  void nonlinear(const SpectralField& wh, SpectralField& out,
                 const SpectralField* ph, SpectralField* pout) {
    biot_savart_spectral(wh, u1h_, u2h_);
    inverse(u1h_, u1r_);
    inverse(u2h_, u2r_);
    derivative(wh, 0, tmp_);
    inverse(tmp_, gx_);
    derivative(wh, 1, tmp_);
    inverse(tmp_, gy_);

    double mu = 0.0;
    const long npts = grid_.size();
    for (long i = 0; i < npts; ++i) {
      double a = u1r_.values[i], b = u2r_.values[i];
      mu = std::max(mu, a * a + b * b);
      nl_.values[i] = -(a * gx_.values[i] + b * gy_.values[i]);
    }
    last_max_u_ = std::sqrt(mu);

    forward(nl_, out);
    dealias(out);
    out.coeffs[0] = 0.0;
    if (has_force_)
      for (long i = 0; i < grid_.spectral_size(); ++i)
        out.coeffs[i] += curl_f_.coeffs[i];

    if (ph && pout) {
      derivative(*ph, 0, tmp_);
      inverse(tmp_, gx_);
      derivative(*ph, 1, tmp_);
      inverse(tmp_, gy_);
      for (long i = 0; i < npts; ++i)
        nl_.values[i] = -(u1r_.values[i] * gx_.values[i] + u2r_.values[i] * gy_.values[i]);
      forward(nl_, *pout);
      dealias(*pout);
      pout->coeffs[0] = 0.0;
    }
  }

  TorusGrid grid_;
  double nu_;
  SpectralField w_, w1_, w2_, n0_, n1_, n2_, u1h_, u2h_, tmp_;
  ScalarField u1r_, u2r_, gx_, gy_, nl_;
  SpectralField curl_f_;
  bool has_force_;
  std::optional<SpectralField> passive_, p1_, p2_, m0_, m1_, m2_;
  std::vector<double> e_full_, e_half_, e_mhalf_;
  double table_dt_ = -1.0;
  double last_max_u_ = 0.0;
  bool have_stage1_ = false;
};

void record_ledger(BalanceLedger& ledger, double t, const SpectralField& w,
                   double cum, ScalarField& scratch) {
  ledger.t.push_back(t);
  ledger.energy.push_back(velocity_energy(w));
  ledger.cumulative_dissipation.push_back(cum);
  ledger.enstrophy.push_back(0.5 * spectral_l2sq(w));
  inverse(w, scratch);
  double s = 0.0;
  for (double v : scratch.values) s += std::fabs(v);
  ledger.l1_vorticity.push_back(s * scratch.grid.cell_area());
}

// Shared driver for evolve and evolve_decomposition.
Trajectory run_integration(const ScalarField& omega0, double nu,
                           const ForceSpec& force, double T, double dt0,
                           int snap_every, const ScalarField* passive0,
                           std::vector<ScalarField>* passive_out) {
  if (!omega0.is_mean_zero(1e-11))
    throw std::invalid_argument("evolve: initial vorticity must be mean-zero");
  if (nu <= 0.0) throw std::invalid_argument("evolve: nu must be positive");
  if (T <= 0.0) throw std::invalid_argument("evolve: T must be positive");
  if (dt0 <= 0.0 || snap_every < 1)
    throw std::invalid_argument("evolve: dt must be positive and snap_every >= 1");

  const TorusGrid& g = omega0.grid;
  Integrator integ(g, nu, force);
  integ.set_state(omega0);
  if (passive0) integ.set_passive(*passive0);

  Trajectory traj;
  traj.nu = nu;
  traj.force = force;
  traj.dt_initial = dt0;
  traj.snap_every = snap_every;

  ScalarField scratch(g);
  double cum = 0.0;
  double t = 0.0;
  double dt = dt0;
  const double dt_min = dt0 * std::pow(0.5, kMaxHalvings);
  const double tau = snap_every * dt0;
  const double eps = 1e-12 * std::max(T, 1.0);
  int snap_index = 1;

  auto take_snapshot = [&](double time) {
    traj.times.push_back(time);
    inverse(integ.state(), scratch);
    traj.snapshots.push_back(scratch);
    if (passive_out) {
      inverse(integ.passive(), scratch);
      passive_out->push_back(scratch);
    }
  };

  record_ledger(traj.ledger, 0.0, integ.state(), cum, scratch);
  take_snapshot(0.0);

  const double h = g.spacing();
  while (t < T - eps) {
    // CFL check on the current state's velocity; on violation halve dt.
    double max_u = integ.probe_max_u();
    while (dt * max_u / h > kCflLimit) {
      dt *= 0.5;
      ++traj.cfl_halvings;
      std::cerr << "evolve: CFL violation at t=" << t << ", halving dt to " << dt << "\n";
      if (dt < dt_min)
        throw std::runtime_error("evolve: dt fell below dt_min after repeated CFL halvings");
    }

    double next_snap = snap_index * tau;
    double t_event = std::min(next_snap, T);
    double dt_step = std::min(dt, t_event - t);

    auto stats = integ.step(dt_step);
    cum += dt_step * (stats.q0 + stats.q1 + 4.0 * stats.q2) / 6.0;

    bool hit_event = (t + dt_step >= t_event - eps);
    t = hit_event ? t_event : t + dt_step;

    record_ledger(traj.ledger, t, integ.state(), cum, scratch);
    if (!std::isfinite(traj.ledger.energy.back()))
      throw std::runtime_error("evolve: NaN detected at t=" + std::to_string(t) +
                               " (nu=" + std::to_string(nu) + ", dt=" + std::to_string(dt) + ")");

    if (hit_event) {
      take_snapshot(t);
      if (t >= next_snap - eps) ++snap_index;
    }
  }

  traj.dt_final = dt;
  return traj;
}

}  // namespace

Trajectory evolve(const ScalarField& omega0, double nu, const ForceSpec& force,
                  double T, double dt, int snap_every) {
  return run_integration(omega0, nu, force, T, dt, snap_every, nullptr, nullptr);
}

double energy_balance_residual(const Trajectory& traj) {
  if (!traj.force.is_none())
    throw std::invalid_argument("energy_balance_residual: trajectory must be unforced");
  return traj.ledger.max_relative_residual();
}

MonotonicityReport monotonicity_checks(const Trajectory& traj) {
  if (!traj.force.is_none())
    throw std::invalid_argument("monotonicity_checks: trajectory must be unforced");
  MonotonicityReport rep;
  const BalanceLedger& led = traj.ledger;
  const double l1_0 = led.l1_vorticity.front();
  const double u0_sq = 2.0 * led.energy.front();
  for (size_t i = 0; i < led.t.size(); ++i) {
    if (rep.l1_ok && led.l1_vorticity[i] > l1_0 * (1.0 + 1e-6)) {
      rep.l1_ok = false;
      rep.first_l1_violation = led.t[i];
    }
    double t = led.t[i];
    if (t >= 10.0 * traj.dt_initial) {
      double omega_sq = 2.0 * led.enstrophy[i];
      if (rep.enstrophy_bound_ok &&
          omega_sq > u0_sq / (2.0 * t * traj.nu) * (1.0 + 1e-3)) {
        rep.enstrophy_bound_ok = false;
        rep.first_enstrophy_violation = t;
      }
    }
  }
  return rep;
}

DecompositionPair evolve_decomposition(const Trajectory& parent,
                                       const ScalarField& f0,
                                       const ScalarField& mu0) {
  const ScalarField& w0 = parent.snapshots.front();
  double scale = std::max(w0.max_abs(), 1e-300);
  for (long i = 0; i < w0.grid.size(); ++i) {
    if (std::fabs(f0.values[i] + mu0.values[i] - w0.values[i]) > 1e-10 * scale)
      throw std::invalid_argument("evolve_decomposition: f0 + mu0 != omega0");
  }
  double mu_max = mu0.max_abs();
  for (double v : mu0.values)
    if (v < -1e-8 * std::max(mu_max, 1e-300))
      throw std::invalid_argument("evolve_decomposition: mu0 must be nonnegative");

  std::vector<ScalarField> f_series;
  Trajectory replay = run_integration(w0, parent.nu, parent.force,
                                      parent.end_time(), parent.dt_initial,
                                      parent.snap_every, &f0, &f_series);

  DecompositionPair pair;
  pair.times = replay.times;
  pair.f_part = std::move(f_series);
  double global_mu_max = 0.0, worst = 0.0;
  for (size_t k = 0; k < replay.snapshots.size(); ++k) {
    ScalarField mu = replay.snapshots[k];
    mu -= pair.f_part[k];
    for (double v : mu.values) {
      global_mu_max = std::max(global_mu_max, v);
      worst = std::min(worst, v);
    }
    pair.mu_part.push_back(std::move(mu));
  }
  if (global_mu_max > 0.0) {
    pair.max_mu_undershoot = -worst / global_mu_max;
    pair.undershoot_flagged = pair.max_mu_undershoot > 1e-3;
  }
  return pair;
}

double steady_residual(const VectorField& u, const VectorField& f, double nu) {
  const TorusGrid& g = u.grid;
  SpectralField u1h = forward(ScalarField(g, u.u1));
  SpectralField u2h = forward(ScalarField(g, u.u2));
  SpectralField f1h = forward(ScalarField(g, f.u1));
  SpectralField f2h = forward(ScalarField(g, f.u2));

  // div(u x u) from dealiased pointwise products.
  ScalarField p11(g), p12(g), p22(g);
  for (long i = 0; i < g.size(); ++i) {
    p11.values[i] = u.u1[i] * u.u1[i];
    p12.values[i] = u.u1[i] * u.u2[i];
    p22.values[i] = u.u2[i] * u.u2[i];
  }
  SpectralField t11 = forward(p11), t12 = forward(p12), t22 = forward(p22);
  dealias(t11);
  dealias(t12);
  dealias(t22);

  const int n = g.n();
  const int cols = g.spectral_cols();
  SpectralField r1(g), r2(g);
  const std::complex<double> I(0.0, 1.0);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    double k2d = g.k2_deriv(r);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      double k1d = g.k1_deriv(c);
      double kk = k1 * k1 + k2 * k2;
      long idx = static_cast<long>(r) * cols + c;
      r1.coeffs[idx] = I * (k1d * t11.coeffs[idx] + k2d * t12.coeffs[idx]) +
                       nu * kk * u1h.coeffs[idx] - f1h.coeffs[idx];
      r2.coeffs[idx] = I * (k1d * t12.coeffs[idx] + k2d * t22.coeffs[idx]) +
                       nu * kk * u2h.coeffs[idx] - f2h.coeffs[idx];
    }
  }
  r1.coeffs[0] = 0.0;  // mean force balances the mean pressure gradient
  r2.coeffs[0] = 0.0;
  leray_project(r1, r2);
  double a = l2_norm(r1), b = l2_norm(r2);
  return std::sqrt(a * a + b * b);
}

}  // namespace vll
