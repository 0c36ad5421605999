#include "vll/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "vll/ball.hpp"
#include "vll/fft.hpp"
#include "vll/mollifier.hpp"
#include "vll/spectral.hpp"

namespace vll {

double CertificateResult::margin() const {
  if (rhs > 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

CertificateResult make_certificate(const std::string& name, double lhs, double rhs,
                                   double tol_factor, bool constant_free) {
  CertificateResult c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.tol_factor = tol_factor;
  c.constant_free = constant_free;
  c.pass = lhs <= tol_factor * rhs || (lhs == 0.0 && rhs == 0.0);
  return c;
}

void DiagnosticTable::write_csv(std::ostream& out) const {
  out << "nu,ell,delta,diss_total,s2,lambda_con,omega_con,q_con";
  if (!rows.empty())
    for (const auto& c : rows.front().certificates) out << ",cert_" << c.name;
  out << "\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                  r.nu, r.ell, r.delta, r.diss_total, r.s2, r.lambda_con,
                  r.omega_con, r.q_con);
    out << buf;
    for (const auto& c : r.certificates) {
      std::snprintf(buf, sizeof buf, ",%s:%s:%.17g", c.name.c_str(),
                    c.pass ? "pass" : "fail", c.margin());
      out << buf;
    }
    out << "\n";
  }
}

void DiagnosticTable::write_json(std::ostream& out) const {
  char buf[512];
  out << "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::snprintf(buf, sizeof buf,
                  "{\"nu\":%.17g,\"ell\":%.17g,\"delta\":%.17g,\"diss_total\":%.17g,"
                  "\"s2\":%.17g,\"lambda_con\":%.17g,\"omega_con\":%.17g,\"q_con\":%.17g,"
                  "\"certificates\":[",
                  r.nu, r.ell, r.delta, r.diss_total, r.s2, r.lambda_con, r.omega_con,
                  r.q_con);
    out << buf;
    for (size_t j = 0; j < r.certificates.size(); ++j) {
      const auto& c = r.certificates[j];
      std::snprintf(buf, sizeof buf,
                    "{\"name\":\"%s\",\"lhs\":%.17g,\"rhs\":%.17g,\"pass\":%s,"
                    "\"margin\":%.17g,\"constant_free\":%s}",
                    c.name.c_str(), c.lhs, c.rhs, c.pass ? "true" : "false",
                    c.margin(), c.constant_free ? "true" : "false");
      out << buf << (j + 1 < r.certificates.size() ? "," : "");
    }
    out << "]}" << (i + 1 < rows.size() ? "," : "");
  }
  out << "]";
}

bool DiagnosticTable::all_constant_free_pass() const {
  for (const auto& r : rows)
    for (const auto& c : r.certificates)
      if (c.constant_free && !c.pass) return false;
  return true;
}

ReferenceVelocity ReferenceVelocity::from_trajectory(const Trajectory& traj) {
  ReferenceVelocity r;
  r.src_ = &traj;
  return r;
}

namespace {

ScalarField interpolate_omega(const Trajectory& traj, double t) {
  const auto& times = traj.times;
  if (t <= times.front()) return traj.snapshots.front();
  if (t >= times.back()) return traj.snapshots.back();
  size_t hi = 1;
  while (times[hi] < t) ++hi;
  size_t lo = hi - 1;
  double w = (t - times[lo]) / (times[hi] - times[lo]);
  ScalarField out = traj.snapshots[lo];
  out *= (1.0 - w);
  ScalarField b = traj.snapshots[hi];
  b *= w;
  out += b;
  return out;
}

double l2sq_real(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return s * f.grid.cell_area();
}

ScalarField abs_field(const ScalarField& f) {
  ScalarField out(f.grid);
  for (long i = 0; i < f.grid.size(); ++i) out.values[i] = std::fabs(f.values[i]);
  return out;
}

}  // namespace

VectorField ReferenceVelocity::at(const TorusGrid& g, double t) const {
  if (!src_) return VectorField(g);
  if (src_->grid() != g)
    throw std::invalid_argument("ReferenceVelocity: grid mismatch");
  ScalarField w = interpolate_omega(*src_, t);
  w.subtract_mean();
  return biot_savart(w);
}

VectorField snapshot_velocity(const Trajectory& traj, size_t k) {
  return biot_savart(traj.snapshots.at(k));
}

double time_trapezoid(const std::vector<double>& times,
                      const std::vector<double>& values, double a, double b) {
  if (times.size() != values.size() || times.empty())
    throw std::invalid_argument("time_trapezoid: bad series");
  if (b <= a) return 0.0;
  auto value_at = [&](double t) {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    size_t hi = 1;
    while (times[hi] < t) ++hi;
    double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
    return (1.0 - w) * values[hi - 1] + w * values[hi];
  };
  double t0 = std::max(a, times.front());
  double t1 = std::min(b, times.back());
  if (t1 <= t0) return 0.0;
  double integral = 0.0;
  double prev_t = t0, prev_v = value_at(t0);
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= t0 || times[i] >= t1) continue;
    integral += 0.5 * (prev_v + values[i]) * (times[i] - prev_t);
    prev_t = times[i];
    prev_v = values[i];
  }
  integral += 0.5 * (prev_v + value_at(t1)) * (t1 - prev_t);
  return integral;
}

double dissipation_total(const Trajectory& traj, double delta, double T) {
  if (delta < 0.0 || delta >= T || T > traj.end_time() * (1 + 1e-12))
    throw std::invalid_argument("dissipation_total: empty or invalid window");
  std::vector<double> vals(traj.snapshots.size());
  for (size_t k = 0; k < traj.snapshots.size(); ++k)
    vals[k] = traj.nu * l2sq_real(traj.snapshots[k]);
  return time_trapezoid(traj.times, vals, delta, T);
}

double structure_function_s2(const Trajectory& traj, double ell) {
  const TorusGrid& g = traj.grid();
  if (ell < 4.0 * g.spacing())
    throw std::invalid_argument("structure_function_s2: under-resolved ell");
  const double area = ball_area(g, ell);
  std::vector<double> vals(traj.snapshots.size());
  SpectralField wh(g), u1h(g), u2h(g), corr(g);
  ScalarField R(g);
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    forward(traj.snapshots[k], wh);
    wh.coeffs[0] = 0.0;
    biot_savart_spectral(wh, u1h, u2h);
    // R(y) = int u(x+y).u(x) dx from the spectral autocorrelation.
    for (long i = 0; i < g.spectral_size(); ++i)
      corr.coeffs[i] = std::norm(u1h.coeffs[i]) + std::norm(u2h.coeffs[i]);
    inverse(corr, R);
    R *= g.cell_area();
    double ball_int = ball_integral_at(R, 0.0, 0.0, ell);
    double unorm = R.values[0];  // R(0) = ||u||^2
    vals[k] = 2.0 * unorm - 2.0 * ball_int / area;
  }
  return time_trapezoid(traj.times, vals, 0.0, traj.end_time());
}

double lambda_con(const Trajectory& traj, const ReferenceVelocity& u_ref, double ell) {
  const TorusGrid& g = traj.grid();
  std::vector<double> vals(traj.snapshots.size());
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    VectorField u = snapshot_velocity(traj, k);
    if (!u_ref.is_zero()) u -= u_ref.at(g, traj.times[k]);
    vals[k] = std::sqrt(std::max(0.0, ball_sup(u.speed_squared(), ell)));
  }
  return time_trapezoid(traj.times, vals, 0.0, traj.end_time());
}

double omega_con(const Trajectory& traj, double ell) {
  std::vector<double> vals(traj.snapshots.size());
  for (size_t k = 0; k < traj.snapshots.size(); ++k)
    vals[k] = ball_sup(abs_field(traj.snapshots[k]), ell);
  return time_trapezoid(traj.times, vals, 0.0, traj.end_time());
}

double q_con(const Trajectory& traj, double ell) {
  const TorusGrid& g = traj.grid();
  if (ell < 4.0 * g.spacing())
    throw std::invalid_argument("q_con: under-resolved ell");
  const double area = ball_area(g, ell);
  std::vector<double> vals(traj.snapshots.size());
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    VectorField u = snapshot_velocity(traj, k);
    ScalarField c1 = ball_convolve(u.speed_squared(), ell);
    ScalarField m1 = ball_convolve(ScalarField(g, u.u1), ell);
    ScalarField m2 = ball_convolve(ScalarField(g, u.u2), ell);
    double mx = 0.0;
    for (long i = 0; i < g.size(); ++i) {
      double q = c1.values[i] -
                 (m1.values[i] * m1.values[i] + m2.values[i] * m2.values[i]) / area;
      mx = std::max(mx, q);  // negative round-off clipped by the max with 0
    }
    vals[k] = std::sqrt(std::max(0.0, mx));
  }
  return time_trapezoid(traj.times, vals, 0.0, traj.end_time());
}

ScalarField omega_hat_field(const ScalarField& omega, double nu) {
  double r = std::sqrt(nu);
  if (r < 4.0 * omega.grid.spacing())
    throw std::invalid_argument("omega_hat_field: sqrt(nu) under-resolved");
  ScalarField a = abs_field(omega);
  ScalarField conv = ball_convolve(a, r);
  ScalarField out(omega.grid);
  for (long i = 0; i < omega.grid.size(); ++i)
    out.values[i] = a.values[i] * conv.values[i];
  return out;
}

std::vector<PhiEntry> modulus_of_compactness(const std::vector<VectorField>& family,
                                             const std::vector<double>& eps_list) {
  std::vector<PhiEntry> out;
  for (double eps : eps_list) {
    PhiEntry e;
    e.eps = eps;
    for (const auto& u : family) {
      VectorField diff = mollify(u, eps);
      diff -= u;
      e.phi = std::max(e.phi, norms(diff).l2);
    }
    out.push_back(e);
  }
  return out;
}

ShortTimeCertificate short_time_certificate(const std::vector<Trajectory>& family,
                                            double eps, double delta) {
  if (family.empty())
    throw std::invalid_argument("short_time_certificate: empty family");
  ShortTimeCertificate cert;
  cert.eps = eps;
  cert.delta = delta;

  std::vector<VectorField> initial;
  for (const auto& traj : family)
    initial.push_back(biot_savart(traj.snapshots.front()));
  cert.phi = modulus_of_compactness(initial, {eps}).front().phi;
  double unit = cert.phi + delta / (eps * eps);

  size_t calib = 0;  // largest-nu member calibrates the constants
  for (size_t i = 1; i < family.size(); ++i)
    if (family[i].nu > family[calib].nu) calib = i;

  for (size_t i = 0; i < family.size(); ++i) {
    const Trajectory& traj = family[i];
    ShortTimeCertificate::Entry e;
    e.nu = traj.nu;
    e.envelope_unit = unit;
    ScalarField wd = interpolate_omega(traj, delta);
    wd.subtract_mean();
    VectorField ud = biot_savart(wd);
    ud -= initial[i];
    double d = norms(ud).l2;
    e.displacement_sq = d * d;
    e.dissipation = dissipation_total(traj, 0.0, std::min(delta, traj.end_time()));
    cert.entries.push_back(e);
  }

  cert.C_displacement = cert.entries[calib].displacement_sq / unit;
  cert.C_dissipation = cert.entries[calib].dissipation / std::sqrt(unit);
  double worst = 0.0;
  for (const auto& e : cert.entries) {
    if (cert.C_displacement > 0)
      worst = std::max(worst, e.displacement_sq / unit / cert.C_displacement);
    if (cert.C_dissipation > 0)
      worst = std::max(worst, e.dissipation / std::sqrt(unit) / cert.C_dissipation);
  }
  cert.worst_margin = worst;
  cert.pass = worst <= 2.0;
  return cert;
}

CertificateResult higher_order_certificate(const Trajectory& traj, double delta,
                                           double tol_factor) {
  std::vector<double> vals(traj.snapshots.size());
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    double s = h1_seminorm(forward(traj.snapshots[k]));
    vals[k] = traj.nu * traj.nu * s * s;
  }
  double lhs = time_trapezoid(traj.times, vals, delta, traj.end_time());
  double u0 = traj.initial_velocity_l2();
  double rhs = u0 * u0 / delta;
  return make_certificate("higher_order", lhs, rhs, tol_factor, true);
}

KolmogorovNumbers kolmogorov_numbers(const Trajectory& traj,
                                     const ReferenceVelocity& u_ref,
                                     double scale_mult, double delta) {
  KolmogorovNumbers out;
  out.nu = traj.nu;
  out.ell = scale_mult * std::sqrt(traj.nu);
  out.delta = delta;
  out.diss_full = dissipation_total(traj, 0.0, traj.end_time());
  out.diss_tail = dissipation_total(traj, delta, traj.end_time());
  out.ell_resolved = out.ell >= 4.0 * traj.grid().spacing();
  if (out.ell_resolved) {
    out.s2 = structure_function_s2(traj, out.ell);
    out.lambda = lambda_con(traj, u_ref, out.ell);
    out.omega = omega_con(traj, out.ell);
    out.q = q_con(traj, out.ell);
  }
  return out;
}

namespace {

KolmogorovReport::FittedBound fit_bound(const std::string& name,
                                        const std::vector<double>& numerators,
                                        const std::vector<double>& denominators,
                                        size_t calib) {
  KolmogorovReport::FittedBound b;
  b.name = name;
  for (size_t i = 0; i < numerators.size(); ++i) {
    double r;
    if (denominators[i] > 0)
      r = numerators[i] / denominators[i];
    else
      r = numerators[i] == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    b.ratios.push_back(r);
  }
  b.C_fit = b.ratios[calib];
  double drift = 0.0;
  for (double r : b.ratios)
    drift = std::max(drift, b.C_fit > 0 ? r / b.C_fit
                                        : (r == 0 ? 0.0 : std::numeric_limits<double>::infinity()));
  b.max_drift = drift;
  b.pass = drift <= 2.0;
  return b;
}

}  // namespace

bool KolmogorovReport::all_pass() const {
  for (const auto& c : constant_free)
    if (!c.pass) return false;
  for (const auto& f : fitted)
    if (!f.pass) return false;
  return true;
}

KolmogorovReport kolmogorov_equivalence_report(const std::vector<KolmogorovNumbers>& family,
                                               double delta) {
  if (family.empty())
    throw std::invalid_argument("kolmogorov_equivalence_report: empty family");
  KolmogorovReport rep;
  size_t calib = 0;
  for (size_t i = 1; i < family.size(); ++i)
    if (family[i].nu > family[calib].nu) calib = i;

  std::vector<double> diss_tail, s2_route, omega_route, q_route, q_vals, omega_vals,
      sqrt_diss;
  const std::vector<double> eps_scan = {1e-2, 1e-1, 1.0};
  for (const auto& k : family) {
    rep.constant_free.push_back(
        make_certificate("s2_le_diss", k.s2, k.diss_full, 1.0 + 1e-2, true));
    diss_tail.push_back(k.diss_tail);
    s2_route.push_back(std::sqrt(std::max(k.s2, 0.0)) / std::sqrt(delta));
    double best_omega = std::numeric_limits<double>::infinity();
    double best_q = std::numeric_limits<double>::infinity();
    for (double eps : eps_scan) {
      best_omega = std::min(best_omega, k.omega / eps + std::sqrt(eps / delta));
      best_q = std::min(best_q, k.q / eps + std::sqrt(eps / delta));
    }
    omega_route.push_back(best_omega);
    q_route.push_back(best_q);
    q_vals.push_back(k.q);
    omega_vals.push_back(k.omega);
    sqrt_diss.push_back(std::sqrt(std::max(k.diss_full, 0.0)));
  }

  rep.fitted.push_back(fit_bound("diss_le_sqrt_s2", diss_tail, s2_route, calib));
  rep.fitted.push_back(fit_bound("diss_le_omega_con", diss_tail, omega_route, calib));
  rep.fitted.push_back(fit_bound("diss_le_q_con", diss_tail, q_route, calib));
  rep.fitted.push_back(fit_bound("q_con_le_sqrt_diss", q_vals, sqrt_diss, calib));
  rep.fitted.push_back(fit_bound("omega_con_le_sqrt_diss", omega_vals, sqrt_diss, calib));
  return rep;
}

RateCertificate rate_certificate(const std::vector<Trajectory>& family,
                                 const InverseTables& tables, double delta) {
  if (family.empty()) throw std::invalid_argument("rate_certificate: empty family");
  RateCertificate cert;
  cert.delta = delta;
  size_t calib = 0;
  for (size_t i = 1; i < family.size(); ++i)
    if (family[i].nu > family[calib].nu) calib = i;

  for (const auto& traj : family) {
    RateCertificate::Entry e;
    e.nu = traj.nu;
    double T = traj.end_time();
    double root = std::sqrt(traj.nu);
    if (root > tables.c3())
      throw std::invalid_argument("rate_certificate: sqrt(nu) outside G domain");
    double unit = tables.G(root) + 1.0 / std::sqrt(std::log(1.0 / traj.nu));
    e.side_condition_ok = T * unit <= 0.5;
    e.envelope = std::sqrt(T / delta * unit);
    e.diss_tail = delta >= T ? 0.0 : dissipation_total(traj, delta, T);
    e.ratio = e.envelope > 0 ? e.diss_tail / e.envelope : 0.0;
    cert.entries.push_back(e);
  }
  cert.C_fit = cert.entries[calib].ratio;
  bool ok = true;
  for (const auto& e : cert.entries)
    if (e.ratio > 2.0 * cert.C_fit) ok = false;
  cert.pass = ok;
  return cert;
}

double pairing(const ScalarField& density, const ScalarField& phi) {
  if (density.grid != phi.grid) throw std::invalid_argument("pairing: grid mismatch");
  double s = 0.0;
  for (long i = 0; i < density.grid.size(); ++i)
    s += density.values[i] * phi.values[i];
  return s * density.grid.cell_area();
}

PairingRecord weak_star_pairing(const std::vector<ScalarField>& densities,
                                const std::vector<double>& params,
                                const ScalarField& phi,
                                const std::string& id) {
  if (densities.size() != params.size())
    throw std::invalid_argument("weak_star_pairing: params/densities size mismatch");
  PairingRecord rec;
  rec.test_function_id = id;
  rec.params = params;
  for (const auto& d : densities) rec.values.push_back(pairing(d, phi));
  size_t m = rec.values.size();
  if (m == 0) return rec;
  rec.limit_estimate = rec.values.back();
  if (m >= 3) {
    // Aitken delta-squared on the last three terms.
    double a = rec.values[m - 3], b = rec.values[m - 2], c = rec.values[m - 1];
    double den = c - 2 * b + a;
    if (std::fabs(den) > 1e-14 * (std::fabs(a) + std::fabs(b) + std::fabs(c)))
      rec.limit_estimate = c - (c - b) * (c - b) / den;
  }
  return rec;
}

double separable_gamma_pairing(const ScalarField& abs_density,
                               const ScalarField& phi, const ScalarField& psi) {
  return pairing(abs_density, phi) * pairing(abs_density, psi);
}

AtomMassProfile atom_mass(const ScalarField& density, double x1, double x2,
                          const std::vector<double>& radii) {
  AtomMassProfile prof;
  double smallest = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    if (r < density.grid.spacing())
      throw std::invalid_argument("atom_mass: radius below grid spacing");
    prof.radii.push_back(r);
    prof.masses.push_back(ball_integral_at(density, x1, x2, r));
    if (r < smallest) {
      smallest = r;
      prof.atom_score = prof.masses.back();
    }
  }
  return prof;
}

}  // namespace vll
