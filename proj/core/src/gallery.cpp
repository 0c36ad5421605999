#include "vll/gallery.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "vll/ball.hpp"
#include "vll/diagnostics.hpp"
#include "vll/fft.hpp"
#include "vll/mollifier.hpp"
#include "vll/solver.hpp"
#include "vll/spectral.hpp"

namespace vll {

AnalyticFact check_fact(const std::string& quantity, double measured,
                        double expected, double tolerance, bool relative) {
  AnalyticFact f;
  f.quantity = quantity;
  f.measured = measured;
  f.expected = expected;
  f.tolerance = tolerance;
  f.relative = relative;
  double err = std::fabs(measured - expected);
  if (relative) err /= std::max(std::fabs(expected), 1e-300);
  f.pass = err <= tolerance;
  return f;
}

bool GalleryItem::all_facts_pass() const {
  for (const auto& f : facts)
    if (!f.pass) return false;
  return true;
}

std::string GalleryItem::facts_json() const {
  std::ostringstream out;
  out << "{\"name\":\"" << name << "\",\"nu\":" << nu << ",\"params\":{";
  size_t i = 0;
  char buf[256];
  for (const auto& [k, v] : params) {
    std::snprintf(buf, sizeof buf, "\"%s\":%.17g", k.c_str(), v);
    out << buf << (++i < params.size() ? "," : "");
  }
  out << "},\"facts\":[";
  for (size_t j = 0; j < facts.size(); ++j) {
    const auto& f = facts[j];
    std::snprintf(buf, sizeof buf,
                  "{\"quantity\":\"%s\",\"expected\":%.17g,\"measured\":%.17g,"
                  "\"tolerance\":%.17g,\"relative\":%s,\"pass\":%s}",
                  f.quantity.c_str(), f.expected, f.measured, f.tolerance,
                  f.relative ? "true" : "false", f.pass ? "true" : "false");
    out << buf << (j + 1 < facts.size() ? "," : "");
  }
  out << "]}";
  return out.str();
}

namespace {

constexpr double kCenter = std::numbers::pi;

// C-infinity transition: 1 for t <= 0, 0 for t >= 1.
double smooth_step_down(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  auto e = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  return e(1.0 - t) / (e(1.0 - t) + e(t));
}

struct StreamFields {
  ScalarField omega;
  VectorField u;
};

// omega = lap(psi) and u = perp-grad(psi), both spectral, so the velocity is
// exactly divergence-free and the vorticity exactly mean-zero.
StreamFields from_stream(const ScalarField& psi) {
  const TorusGrid& g = psi.grid;
  SpectralField ph = forward(psi);
  ph.coeffs[0] = 0.0;
  SpectralField wh(g), u1h(g), u2h(g);
  const int n = g.n();
  const int cols = g.spectral_cols();
  const std::complex<double> I(0.0, 1.0);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    bool nyq_row = (r == n / 2);
    for (int c = 0; c < cols; ++c) {
      double k1 = g.k1(c);
      long idx = static_cast<long>(r) * cols + c;
      if (nyq_row || c == n / 2) ph.coeffs[idx] = 0.0;  // sampling-noise band
      wh.coeffs[idx] = -(k1 * k1 + k2 * k2) * ph.coeffs[idx];
      u1h.coeffs[idx] = -I * k2 * ph.coeffs[idx];
      u2h.coeffs[idx] = I * k1 * ph.coeffs[idx];
    }
  }
  StreamFields out{inverse(wh), VectorField(g)};
  ScalarField tmp(g);
  inverse(u1h, tmp);
  out.u.u1 = tmp.values;
  inverse(u2h, tmp);
  out.u.u2 = std::move(tmp.values);
  return out;
}

void append_flag_facts(GalleryItem& item) {
  double wmax = std::max(item.omega.max_abs(), 1e-300);
  item.facts.push_back(check_fact("vorticity_mean_zero",
                                  std::fabs(item.omega.mean()) / wmax, 0.0, 1e-12, false));
  if (item.velocity) {
    SpectralField u1h = forward(ScalarField(item.velocity->grid, item.velocity->u1));
    double umax = 0.0;
    for (auto& z : u1h.coeffs) umax = std::max(umax, std::abs(z));
    double div = divergence_max(*item.velocity) / std::max(umax, 1e-300);
    item.facts.push_back(check_fact("velocity_divergence_free", div, 0.0, 1e-10, false));
  }
}

double advection_residual(const VectorField& u, const ScalarField& omega) {
  const TorusGrid& g = u.grid;
  SpectralField wh = forward(omega);
  SpectralField d1(g), d2(g);
  derivative(wh, 0, d1);
  derivative(wh, 1, d2);
  ScalarField wx = inverse(d1), wy = inverse(d2);
  ScalarField adv(g);
  for (long i = 0; i < g.size(); ++i)
    adv.values[i] = u.u1[i] * wx.values[i] + u.u2[i] * wy.values[i];
  SpectralField ah = forward(adv);
  dealias(ah);
  double scale = std::max(u.max_abs() * h1_seminorm(wh), 1e-300);
  return l2_norm(ah) / scale;
}

}  // namespace

GalleryItem concentrating_vortex(const TorusGrid& g, int n) {
  if (n < 1) throw std::invalid_argument("concentrating_vortex: n >= 1 required");
  double eps = 1.0 / n;
  // Oscillation wavelength and envelope width must both span a few cells.
  if (two_pi * eps / n < 6.0 * g.spacing() || 0.35 * eps < 3.0 * g.spacing())
    throw std::invalid_argument("concentrating_vortex: support under grid resolution");

  ScalarField psi(g);
  const double env = 0.35;  // Gaussian envelope width in support units
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter) / eps;
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter) / eps;
      double rho2 = (y1 * y1 + y2 * y2) / (env * env);
      psi.at(row, col) = (1.0 / n) * std::exp(-0.5 * rho2) * std::sin(n * y1);
    }
  }
  StreamFields raw = from_stream(psi);
  double z = norms(raw.omega).l1;
  psi *= 1.0 / z;
  StreamFields fields = from_stream(psi);

  GalleryItem item(g);
  item.name = "concentrating_vortex";
  item.params["n"] = n;
  item.params["eps"] = eps;
  item.omega = std::move(fields.omega);
  item.velocity = std::move(fields.u);

  Norms wn = norms(item.omega);
  item.facts.push_back(check_fact("vorticity_l1", wn.l1, 1.0, 1e-3));
  item.params["velocity_l2"] = norms(*item.velocity).l2;

  ScalarField absw(g);
  for (long i = 0; i < g.size(); ++i) absw.values[i] = std::fabs(item.omega.values[i]);
  double captured = ball_integral_at(absw, kCenter, kCenter, 2.0 * eps) / wn.l1;
  item.facts.push_back(check_fact("mass_within_2eps", captured, 1.0, 0.01));
  append_flag_facts(item);
  return item;
}

GalleryItem w11_failure_family(const TorusGrid& g, int n) {
  double alpha = 1.0 / n;
  if (alpha < 2.0 * g.spacing())
    throw std::invalid_argument("w11_failure_family: mollification scale 1/n under-resolved");

  // Mollified unit point mass, mean-removed so the Poisson solve is valid.
  ScalarField delta_a(g);
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter);
      double v = Mollifier::profile(std::sqrt(y1 * y1 + y2 * y2) / alpha);
      delta_a.at(row, col) = v;
      sum += v;
    }
  }
  delta_a *= 1.0 / (sum * g.cell_area());
  delta_a.subtract_mean();

  // psi_tilde = lap^-1 (delta_a), then a cutoff supported in B_0.9(center).
  SpectralField rh = forward(delta_a);
  rh.coeffs[0] = 0.0;
  const int cols = g.spectral_cols();
  for (int r = 0; r < g.n(); ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double kk = g.k1(c) * g.k1(c) + k2 * k2;
      long idx = static_cast<long>(r) * cols + c;
      rh.coeffs[idx] = kk == 0.0 ? 0.0 : -rh.coeffs[idx] / kk;
    }
  }
  ScalarField psi = inverse(rh);
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter);
      double rho = std::sqrt(y1 * y1 + y2 * y2);
      psi.at(row, col) *= smooth_step_down((rho - 0.5) / 0.4);
    }
  }

  StreamFields raw = from_stream(psi);
  double grad_l2 = norms(raw.u).l2;
  psi *= 1.0 / grad_l2;
  StreamFields fields = from_stream(psi);

  GalleryItem item(g);
  item.name = "w11_failure_family";
  item.params["n"] = n;
  item.params["alpha"] = alpha;
  item.params["grad_psi_l2"] = grad_l2;
  item.omega = std::move(fields.omega);
  item.velocity = std::move(fields.u);

  item.facts.push_back(check_fact("velocity_l2", norms(*item.velocity).l2, 1.0, 1e-3));
  item.params["velocity_l1"] = norms(*item.velocity).l1;
  item.params["vorticity_l1"] = norms(item.omega).l1;

  ScalarField speed2 = item.velocity->speed_squared();
  double score = ball_integral_at(speed2, kCenter, kCenter, 0.25);
  item.params["energy_atom_score"] = score;
  // Bounded below uniformly in n; the concentration growth is a family test.
  item.facts.push_back(check_fact("energy_mass_in_quarter_ball", score, 1.0, 0.85));
  append_flag_facts(item);
  return item;
}

GalleryItem checkerboard(const TorusGrid& g, int tiles) {
  if (tiles < 2) throw std::invalid_argument("checkerboard: tiles >= 2 required");
  if (g.n() % tiles != 0)
    throw std::invalid_argument("checkerboard: non-integer tiling (tiles must divide n)");
  double s = two_pi / tiles;  // tile side
  // One copy per tile from the window sin^p(tiles*x/2): an exact
  // trigonometric polynomial vanishing to order p on every tile line, so the
  // construction is band-limited and the supports are exactly disjoint.
  // Larger tilings get a higher exponent, which concentrates each copy and
  // drives the L1 norms down like 1/sqrt(p).
  int p = 4 * static_cast<int>(std::ceil(std::log2(static_cast<double>(tiles))));
  if (p * tiles / 2 > g.n() / 2)
    throw std::invalid_argument("checkerboard: window bandwidth exceeds the grid");

  ScalarField psi(g);
  for (int row = 0; row < g.n(); ++row) {
    double w2 = std::pow(std::sin(0.5 * tiles * g.x2(row)), p);
    for (int col = 0; col < g.n(); ++col) {
      double w1 = std::pow(std::sin(0.5 * tiles * g.x1(col)), p);
      psi.at(row, col) = s * w1 * w2;
    }
  }
  StreamFields raw = from_stream(psi);
  // Exact kinetic normalization: ||u||^2 = pi^2 makes the energy density 1/4.
  double l2 = norms(raw.u).l2;
  psi *= std::numbers::pi / l2;
  StreamFields fields = from_stream(psi);

  GalleryItem item(g);
  item.name = "checkerboard";
  item.params["tiles"] = tiles;
  item.params["window_exponent"] = p;
  item.params["seed_width"] = s / std::sqrt(static_cast<double>(p));
  item.omega = std::move(fields.omega);
  item.velocity = std::move(fields.u);

  ScalarField speed2 = item.velocity->speed_squared();
  ScalarField one(g);
  for (auto& v : one.values) v = 1.0;
  double quarter = pairing(speed2, one) / (two_pi * two_pi);
  item.facts.push_back(check_fact("energy_density_quarter", quarter, 0.25, 1e-9));

  ScalarField cos1(g);
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.n(); ++col) cos1.at(row, col) = std::cos(g.x1(col));
  item.params["cos_pairing_err"] =
      std::fabs(pairing(speed2, cos1) / (two_pi * two_pi));

  // Against a full-spectrum analytic test the lattice Riemann-sum error is
  // visible and shrinks with the tiling (pure frequency-1 tests vanish by
  // lattice symmetry at every tiling).
  ScalarField poisson_kernel(g);
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.n(); ++col)
      poisson_kernel.at(row, col) = 1.0 / (1.25 - std::cos(g.x1(col)));
  double quarter_int = 0.25 * two_pi * two_pi / std::sqrt(1.25 * 1.25 - 1.0);
  item.params["analytic_pairing_err"] =
      std::fabs(pairing(speed2, poisson_kernel) / quarter_int - 1.0);

  // Copies live strictly inside tiles: the sampled stream vanishes on every
  // tile boundary line.
  double strip_max = 0.0;
  for (int tb = 0; tb < tiles; ++tb) {
    int line = tb * (g.n() / tiles);
    for (int j = 0; j < g.n(); ++j) {
      strip_max = std::max(strip_max, std::fabs(psi.at(line, j)));
      strip_max = std::max(strip_max, std::fabs(psi.at(j, line)));
    }
  }
  item.facts.push_back(check_fact("tile_support_disjoint", strip_max, 0.0, 1e-14, false));

  item.params["velocity_l1"] = norms(*item.velocity).l1;
  item.params["vorticity_l1"] = norms(item.omega).l1;
  append_flag_facts(item);
  return item;
}

GalleryItem steady_shear(const TorusGrid& g, int m) {
  if (m < 1 || 2 * m >= g.n() / 2)
    throw std::invalid_argument("steady_shear: frequency out of range");
  GalleryItem item(g);
  item.name = "steady_shear";
  item.params["m"] = m;
  item.nu = 1.0 / (static_cast<double>(m) * m);

  VectorField u(g);
  for (int row = 0; row < g.n(); ++row) {
    double v = std::sin(m * g.x2(row));
    for (int col = 0; col < g.n(); ++col) u.u1[static_cast<long>(row) * g.n() + col] = v;
  }
  item.velocity = u;
  item.force = u;  // f = u solves the steady system with p = 0
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.n(); ++col)
      item.omega.at(row, col) = -m * std::cos(m * g.x2(row));

  item.facts.push_back(check_fact("steady_residual",
                                  steady_residual(u, *item.force, item.nu), 0.0,
                                  1e-10, false));
  double diss = item.nu * std::pow(norms(u).h1_seminorm, 2);
  item.facts.push_back(check_fact("dissipation_rate", diss,
                                  2.0 * std::numbers::pi * std::numbers::pi, 1e-8));

  // D-density pairings: Lebesgue-like against 1, vanishing against cos x1.
  ScalarField ddens(g);
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.n(); ++col) {
      double c = std::cos(m * g.x2(row));
      ddens.at(row, col) = c * c;  // nu |grad u|^2 = cos^2(m x2)
    }
  ScalarField one(g), cos1(g);
  for (auto& v : one.values) v = 1.0;
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.n(); ++col) cos1.at(row, col) = std::cos(g.x1(col));
  item.facts.push_back(check_fact("dissipation_pairing_one", pairing(ddens, one),
                                  0.5 * two_pi * two_pi, 1e-10));
  item.facts.push_back(check_fact("dissipation_pairing_cos", pairing(ddens, cos1),
                                  0.0, 1e-10, false));
  append_flag_facts(item);
  return item;
}

GalleryItem oscillating_stream(const TorusGrid& g, double kappa, int m) {
  if (!(kappa > -0.5 && kappa < 0.0))
    throw std::invalid_argument("oscillating_stream: kappa must lie in (-1/2, 0)");
  if (m < 1 || 2 * m > dealias_cutoff(g))
    throw std::invalid_argument("oscillating_stream: frequency out of range");
  GalleryItem item(g);
  item.name = "oscillating_stream";
  item.params["m"] = m;
  item.params["kappa"] = kappa;
  item.nu = std::pow(static_cast<double>(m), 1.0 / kappa);

  VectorField u(g);
  ScalarField psi(g);
  for (int row = 0; row < g.n(); ++row) {
    double x2 = g.x2(row);
    for (int col = 0; col < g.n(); ++col) {
      double x1 = g.x1(col);
      long i = static_cast<long>(row) * g.n() + col;
      psi.values[i] = std::sin(m * x1) * std::cos(m * x2) / m;
      u.u1[i] = std::sin(m * x1) * std::sin(m * x2);
      u.u2[i] = std::cos(m * x1) * std::cos(m * x2);
      item.omega.values[i] = -2.0 * m * psi.values[i] * m;
    }
  }
  item.velocity = u;
  VectorField f = u;
  f *= 2.0 * item.nu * m * m;  // f = -nu lap u
  item.force = f;

  // Eigenrelation lap psi = -2 m^2 psi, checked spectrally. The sampled
  // field is a four-mode trig polynomial, so coefficients below the
  // round-off floor are sampling noise and are dropped before the check.
  SpectralField ph = forward(psi);
  double ph_max = 0.0;
  for (auto& z : ph.coeffs) ph_max = std::max(ph_max, std::abs(z));
  SpectralField lap(g);
  const int cols = g.spectral_cols();
  for (int r = 0; r < g.n(); ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      long idx = static_cast<long>(r) * cols + c;
      std::complex<double> z =
          std::abs(ph.coeffs[idx]) < 1e-13 * ph_max ? 0.0 : ph.coeffs[idx];
      lap.coeffs[idx] = -(g.k1(c) * g.k1(c) + k2 * k2) * z + 2.0 * m * m * z;
    }
  }
  item.facts.push_back(check_fact("eigenrelation_residual",
                                  l2_norm(lap) / (2.0 * m * m * norms(psi).l2), 0.0,
                                  1e-12, false));
  item.facts.push_back(check_fact("steady_residual",
                                  steady_residual(u, *item.force, item.nu), 0.0,
                                  1e-8, false));
  double fl2 = norms(*item.force).l2;
  item.facts.push_back(check_fact("force_l2", fl2,
                                  2.0 * item.nu * m * m * norms(u).l2, 1e-10));
  item.params["force_ratio"] = fl2 / std::pow(item.nu, 1.0 + 2.0 * kappa);
  ScalarField one(g);
  for (auto& v : one.values) v = 1.0;
  item.facts.push_back(check_fact("energy_pairing_one",
                                  pairing(item.velocity->speed_squared(), one),
                                  0.5 * two_pi * two_pi, 1e-10));
  append_flag_facts(item);
  return item;
}

GalleryItem radial_patch(const TorusGrid& g, double scale) {
  if (scale <= 0.0 || scale > 1.0)
    throw std::invalid_argument("radial_patch: scale must lie in (0, 1]");
  if (scale < 24.0 * g.spacing())
    throw std::invalid_argument("radial_patch: support under grid resolution");

  // Gaussian stream of width scale/8: numerically compact within |x| < scale
  // and spectrally clean, so the closed-form facts hold at machine level.
  // psi(x) = psi_base(x/scale) realizes u = scale^-1 v(x/scale), the
  // L2-invariant rescaling.
  double sigma = scale / 8.0;
  ScalarField psi(g);
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter);
      double rho = (y1 * y1 + y2 * y2) / (sigma * sigma);
      psi.at(row, col) = std::exp(-0.5 * rho);
    }
  }
  StreamFields fields = from_stream(psi);

  GalleryItem item(g);
  item.name = "radial_patch";
  item.params["scale"] = scale;
  item.nu = scale * scale;
  item.omega = std::move(fields.omega);
  item.velocity = std::move(fields.u);

  // Velocity vanishes beyond the support (zero total circulation).
  double tail = 0.0;
  double umax = item.velocity->max_abs();
  for (int k = 1; k <= 10; ++k) {
    double r = scale * (1.05 + 0.1 * k);
    if (r > 3.0) break;
    int col = static_cast<int>(std::round((kCenter + r) / g.spacing()));
    if (col >= g.n()) break;
    int row = static_cast<int>(std::round(kCenter / g.spacing()));
    long i = static_cast<long>(row) * g.n() + col;
    tail = std::max(tail, std::hypot(item.velocity->u1[i], item.velocity->u2[i]));
  }
  item.facts.push_back(check_fact("velocity_tail", tail / umax, 0.0, 1e-8, false));
  item.facts.push_back(check_fact("advection_residual",
                                  advection_residual(*item.velocity, item.omega),
                                  0.0, 1e-8, false));
  VectorField f(g);  // f = -nu lap u, computed spectrally
  {
    SpectralField u1h = forward(ScalarField(g, item.velocity->u1));
    SpectralField u2h = forward(ScalarField(g, item.velocity->u2));
    const int cols = g.spectral_cols();
    for (int r = 0; r < g.n(); ++r) {
      double k2 = g.k2(r);
      for (int c = 0; c < cols; ++c) {
        double kk = g.k1(c) * g.k1(c) + k2 * k2;
        long idx = static_cast<long>(r) * cols + c;
        u1h.coeffs[idx] *= item.nu * kk;
        u2h.coeffs[idx] *= item.nu * kk;
      }
    }
    ScalarField tmp = inverse(u1h);
    f.u1 = tmp.values;
    tmp = inverse(u2h);
    f.u2 = std::move(tmp.values);
  }
  item.facts.push_back(check_fact("steady_residual",
                                  steady_residual(*item.velocity, f, item.nu), 0.0,
                                  1e-8, false));
  item.force = std::move(f);
  item.params["dissipation_mass"] =
      item.nu * std::pow(norms(*item.velocity).h1_seminorm, 2);
  append_flag_facts(item);
  return item;
}

GalleryItem heat_self_similar(const TorusGrid& g, double nu) {
  if (nu <= 0.0 || nu > 1.0)
    throw std::invalid_argument("heat_self_similar: nu must lie in (0, 1]");
  if (nu < 24.0 * g.spacing())
    throw std::invalid_argument("heat_self_similar: support scale nu unresolvable");

  // psi(x) = psi_base((x-c)/nu) realizes omega_0^nu = nu^-2 omega_base(x/nu);
  // the Gaussian base keeps the sampled spectra clean to machine precision.
  double sigma = nu / 8.0;
  ScalarField psi(g);
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter);
      double rho = (y1 * y1 + y2 * y2) / (sigma * sigma);
      psi.at(row, col) = std::exp(-0.5 * rho);
    }
  }
  StreamFields fields = from_stream(psi);

  GalleryItem item(g);
  item.name = "heat_self_similar";
  item.nu = nu;
  item.params["nu"] = nu;
  item.omega = std::move(fields.omega);
  item.velocity = std::move(fields.u);

  // Heat-contracted L1 at t = nu/2 stays below the initial L1.
  SpectralField wh = forward(item.omega);
  SpectralField half(g);
  const int cols = g.spectral_cols();
  double t_half = 0.5 * nu;
  for (int r = 0; r < g.n(); ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double kk = g.k1(c) * g.k1(c) + k2 * k2;
      long idx = static_cast<long>(r) * cols + c;
      half.coeffs[idx] = wh.coeffs[idx] * std::exp(-nu * kk * t_half);
    }
  }
  double l1_half = norms(inverse(half)).l1;
  double l1_0 = norms(item.omega).l1;
  item.facts.push_back(check_fact("l1_contraction", l1_half <= l1_0 * (1 + 1e-9) ? 1.0 : 0.0,
                                  1.0, 0.0, false));
  item.params["diss_integral"] = heat_self_similar_dissipation(item);
  append_flag_facts(item);
  return item;
}

double heat_self_similar_dissipation(const GalleryItem& item) {
  // nu int_0^nu ||omega(t)||^2 dt in spectral closed form.
  const TorusGrid& g = item.omega.grid;
  double nu = item.nu;
  SpectralField wh = forward(item.omega);
  const int cols = g.spectral_cols();
  double n2 = static_cast<double>(g.size());
  double scale = two_pi * two_pi / (n2 * n2);
  double total = 0.0;
  for (int r = 0; r < g.n(); ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < cols; ++c) {
      double kk = g.k1(c) * g.k1(c) + k2 * k2;
      if (kk == 0.0) continue;
      double w = (c == 0 || c == g.n() / 2) ? 1.0 : 2.0;
      double decay = (1.0 - std::exp(-2.0 * nu * kk * nu)) / (2.0 * nu * kk);
      total += w * std::norm(wh.coeffs[static_cast<long>(r) * cols + c]) * decay;
    }
  }
  return nu * scale * total;
}

std::vector<std::string> gallery_names() {
  return {"concentrating_vortex", "w11_failure_family", "checkerboard",
          "steady_shear", "oscillating_stream", "radial_patch", "heat_self_similar"};
}

GalleryItem make_gallery_item(const std::string& name, const TorusGrid& g,
                              double param, double kappa) {
  if (name == "concentrating_vortex") return concentrating_vortex(g, static_cast<int>(param));
  if (name == "w11_failure_family") return w11_failure_family(g, static_cast<int>(param));
  if (name == "checkerboard") return checkerboard(g, static_cast<int>(param));
  if (name == "steady_shear") return steady_shear(g, static_cast<int>(param));
  if (name == "oscillating_stream") return oscillating_stream(g, kappa, static_cast<int>(param));
  if (name == "radial_patch") return radial_patch(g, param);
  if (name == "heat_self_similar") return heat_self_similar(g, param);
  throw std::invalid_argument("unknown gallery item: " + name);
}

}  // namespace vll
