#include "vll/beta.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vll/ball.hpp"
#include "vll/spectral.hpp"

namespace vll {

BetaFunction BetaFunction::power(double p) {
  if (p <= 1.0) throw std::invalid_argument("BetaFunction::power: need p > 1");
  BetaFunction b;
  std::ostringstream name;
  name << "s^" << p;
  b.name = name.str();
  b.eval = [p](double s) { return std::pow(s, p); };
  b.analytic_G = [p](double s) { return std::pow(s, (p - 1.0) / p); };
  return b;
}

BetaFunction BetaFunction::s_log() {
  BetaFunction b;
  b.name = "s*log(e+s)";
  b.eval = [](double s) { return s * std::log(std::exp(1.0) + s); };
  return b;
}

void BetaFunction::validate() const {
  const double s0 = 1.0;
  double r0 = eval(s0) / s0;
  double r1 = eval(1e6 * s0) / (1e6 * s0);
  if (!(r1 >= 10.0 * r0))
    throw std::invalid_argument("beta not in K: superlinearity probe failed for " + name);

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> expo(-3.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    double a = std::pow(10.0, expo(rng));
    double b = std::pow(10.0, expo(rng));
    double mid = eval(0.5 * (a + b));
    double avg = 0.5 * (eval(a) + eval(b));
    if (mid > avg * (1.0 + 1e-12))
      throw std::invalid_argument("beta not in K: convexity probe failed for " + name);
  }
}

namespace {

double central_derivative(const std::function<double(double)>& f, double s) {
  double h = 1e-6 * s;
  return (f(s + h) - f(s - h)) / (2.0 * h);
}

}  // namespace

InverseTables InverseTables::build(const BetaFunction& beta) {
  beta.validate();
  InverseTables t;
  t.beta_ = beta;

  // Locate s0 with s beta'(s) - beta(s) > 0 by doubling; convexity makes the
  // sign persist above s0.
  double s = 1.0;
  bool found = false;
  for (int i = 0; i < 200; ++i) {
    double f = s * central_derivative(beta.eval, s) - beta.eval(s);
    if (f > 1e-10 * (1.0 + beta.eval(s))) {
      found = true;
      break;
    }
    s *= 2.0;
  }
  if (!found) throw std::invalid_argument("beta not in K: no superlinear threshold found");

  t.c2_ = s;
  t.c1_ = s / beta.eval(s);
  t.c3_ = t.c1_ / t.g(t.c1_);
  return t;
}

double InverseTables::g(double eps) const {
  if (eps <= 0.0 || eps > c1_ * (1.0 + 1e-12))
    throw std::invalid_argument("InverseTables::g: argument outside (0, c1]");
  // s -> s/beta(s) decreases from c1 on [c2, inf); bracket then bisect.
  auto phi = [this](double s) { return s / beta_.eval(s); };
  double lo = c2_, hi = c2_;
  while (phi(hi) > eps) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("InverseTables::g: bracket overflow");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (phi(mid) > eps)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double InverseTables::G(double s) const {
  if (s < 0.0 || s > c3_ * (1.0 + 1e-12))
    throw std::invalid_argument("InverseTables::G: argument outside [0, c3]");
  if (s == 0.0) return 0.0;
  // t -> t/g(t) increases on [0, c1]; bisect.
  auto psi = [this](double t) { return t / g(t); };
  double lo = 0.0, hi = c1_;
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * std::max(hi, 1e-300); ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == 0.0) break;
    if (psi(mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string BallDecayCertificate::to_json() const {
  std::ostringstream out;
  out << "[";
  char buf[256];
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::snprintf(buf, sizeof buf,
                  "{\"beta_name\":\"%s\",\"r\":%.17g,\"empirical\":%.17g,"
                  "\"envelope\":%.17g,\"fitted_C\":%.17g,\"pass\":%s}",
                  beta_name.c_str(), e.r, e.empirical, e.envelope, fitted_C,
                  bounded ? "true" : "false");
    out << buf << (i + 1 < entries.size() ? "," : "");
  }
  out << "]";
  return out.str();
}

BallDecayCertificate ball_decay_certificate(const std::vector<ScalarField>& fields,
                                            const InverseTables& tables,
                                            const std::vector<double>& radii) {
  if (fields.empty()) throw std::invalid_argument("ball_decay_certificate: empty family");
  const TorusGrid& g = fields.front().grid;
  for (const auto& f : fields)
    if (f.grid != g) throw std::invalid_argument("ball_decay_certificate: grid mismatch");
  for (double r : radii)
    if (r < 4.0 * g.spacing())
      throw std::invalid_argument("ball_decay_certificate: radius under-resolved");

  BallDecayCertificate cert;
  cert.beta_name = tables.beta().name;
  for (double r : radii) {
    double sup = 0.0;
    for (const auto& f : fields) {
      ScalarField absf(g);
      for (long i = 0; i < g.size(); ++i) absf.values[i] = std::fabs(f.values[i]);
      sup = std::max(sup, ball_sup(absf, r));
    }
    BallDecayEntry e;
    e.r = r;
    e.empirical = sup;
    e.ratio = sup / tables.G(r * r);
    cert.entries.push_back(e);
  }
  for (const auto& e : cert.entries) cert.fitted_C = std::max(cert.fitted_C, e.ratio);
  for (auto& e : cert.entries) e.envelope = cert.fitted_C * tables.G(e.r * e.r);

  // Radii may come in any order; compare the smallest against the largest.
  const BallDecayEntry* smallest = &cert.entries.front();
  const BallDecayEntry* largest = &cert.entries.front();
  for (const auto& e : cert.entries) {
    if (e.r < smallest->r) smallest = &e;
    if (e.r > largest->r) largest = &e;
  }
  cert.bounded = smallest->ratio <= 2.0 * largest->ratio;
  return cert;
}

namespace {

// chi_r: 1 on B_r, log(|y|/sqrt(r))/log(sqrt(r)) on the annulus, 0 outside.
double chi_profile(double rho, double r) {
  double sq = std::sqrt(r);
  if (rho <= r) return 1.0;
  if (rho >= sq) return 0.0;
  return std::log(rho / sq) / std::log(sq);
}

}  // namespace

LogCutoffBound log_cutoff_bound(const VectorField& u, const ScalarField& omega,
                                const ScalarField& f_part,
                                const InverseTables& tables, double r) {
  const TorusGrid& g = omega.grid;
  double r_max = std::min(tables.c3(), 0.5);
  if (r <= 0.0 || r >= r_max)
    throw std::invalid_argument("log_cutoff_bound: r outside validity range");
  if (r < g.spacing())
    throw std::invalid_argument("log_cutoff_bound: r under-resolved");

  LogCutoffBound out;
  out.r = r;

  ScalarField abs_w(g), abs_f(g);
  for (long i = 0; i < g.size(); ++i) {
    abs_w.values[i] = std::fabs(omega.values[i]);
    abs_f.values[i] = std::fabs(f_part.values[i]);
  }

  // sup-ball mass and its argmax, which centers the cutoff.
  ScalarField conv = ball_convolve(abs_w, r);
  long best = 0;
  for (long i = 0; i < g.size(); ++i)
    if (conv.values[i] > conv.values[best]) best = i;
  out.empirical_sup = conv.values[best];
  double cx1 = g.x1(static_cast<int>(best % g.n()));
  double cx2 = g.x2(static_cast<int>(best / g.n()));

  out.envelope_unit = tables.G(r) + 1.0 / std::sqrt(std::log(1.0 / r));

  // Grid pairing of |omega| against the cutoff.
  double chi_sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - cx2);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - cx1);
      double rho = std::sqrt(y1 * y1 + y2 * y2);
      chi_sum += abs_w.values[static_cast<long>(row) * g.n() + col] * chi_profile(rho, r);
    }
  }
  out.chi_pairing = chi_sum * g.cell_area();

  // ||grad chi||^2 by radial quadrature of the exact profile: the integrand
  // is 1/(|log sqrt r| rho)^2 on the annulus, so integrate 2*pi/(L^2 rho)
  // over rho in [r, sqrt r].
  double L = std::fabs(std::log(std::sqrt(r)));
  const int nq = 4096;
  double lo = r, hi = std::sqrt(r);
  double s = 0.0;
  for (int i = 0; i < nq; ++i) {
    double rho = lo + (hi - lo) * (i + 0.5) / nq;
    s += 1.0 / rho;
  }
  out.grad_chi_sq = (two_pi / (L * L)) * s * (hi - lo) / nq;
  out.grad_chi_sq_closed = two_pi / L;

  double sq = std::sqrt(r);
  out.f_term = (sq <= std::numbers::pi && sq >= g.spacing())
                   ? 2.0 * ball_sup(abs_f, sq)
                   : 2.0 * norms(abs_f).l1;
  out.u_term = norms(u).l2 * std::sqrt(out.grad_chi_sq_closed);
  return out;
}

}  // namespace vll
