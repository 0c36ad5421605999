// Acceptance gate: the exit criteria of the laboratory, one line per
// criterion. Exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "test_util.hpp"
#include "vll/beta.hpp"
#include "vll/diagnostics.hpp"
#include "vll/gallery.hpp"
#include "vll/lab.hpp"
#include "vll/solver.hpp"

using namespace vll;
using vll::test::rel_err;
using vll::test::rel_l2_diff;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number = 0;
  bool pass = false;
  std::string detail;
};

std::vector<Criterion> results;

void record(int number, bool pass, const std::string& detail) {
  results.push_back({number, pass, detail});
  std::fprintf(stderr, "  [criterion %2d] %s  %s\n", number, pass ? "PASS" : "FAIL",
               detail.c_str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScalarField taylor_green(const TorusGrid& g) {
  ScalarField w(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c)
      w.at(r, c) = -2.0 * std::sin(g.x1(c)) * std::sin(g.x2(r));
  return w;
}

// 1. Taylor-Green reproduced to 1e-6 at t=1, nu=1e-2, n=128, dt=1e-3, <=30s.
void criterion_solver_exactness() {
  auto t0 = std::chrono::steady_clock::now();
  TorusGrid g(128);
  double nu = 1e-2;
  ScalarField w0 = taylor_green(g);
  Trajectory traj = evolve(w0, nu, ForceSpec::none(), 1.0, 1e-3, 100);
  ScalarField expected = w0;
  expected *= std::exp(-2.0 * nu);
  double err = rel_l2_diff(traj.snapshots.back(), expected);
  double secs = seconds_since(t0);
  record(1, err <= 1e-6 && secs <= 30.0,
         fmt("Taylor-Green rel L2 error %.3e (<=1e-6), runtime %.1fs (<=30s)", err, secs));
}

// 2. Balance residual <= 1e-5 on random smooth data, nu=1e-3, T=1, n=256.
void criterion_energy_equality() {
  TorusGrid g(256);
  ScalarField w0 = random_smooth_vorticity(g, 42, -3.0);
  Trajectory traj = evolve(w0, 1e-3, ForceSpec::none(), 1.0, 5e-4, 40);
  double res = energy_balance_residual(traj);
  record(2, res <= 1e-5, fmt("energy balance residual %.3e (<=1e-5)", res));
}

// 3. ||grad u|| = ||omega|| to 1e-12 on ten random divergence-free fields.
void criterion_spectral_identity() {
  TorusGrid g(96);
  double worst = 0.0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    ScalarField w = random_smooth_vorticity(g, 1000 + seed, -2.5);
    VectorField u = biot_savart(w);
    worst = std::max(worst, rel_err(norms(u).h1_seminorm, norms(w).l2));
  }
  record(3, worst <= 1e-12, fmt("max |grad u vs omega| relative gap %.3e (<=1e-12)", worst));
}

// 5. G for beta = s^p matches s^((p-1)/p) to 1e-8 over [1e-6, c3], <= 1s.
void criterion_g_closed_forms() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double p : {2.0, 3.0}) {
    InverseTables t = build_inverses(BetaFunction::power(p));
    for (int i = 0; i <= 200; ++i) {
      double s = std::pow(10.0, -6.0 + 6.0 * i / 200.0) * t.c3();
      worst = std::max(worst, rel_err(t.G(s), std::pow(s, (p - 1.0) / p)));
    }
  }
  double secs = seconds_since(t0);
  record(5, worst <= 1e-8 && secs <= 1.0,
         fmt("max G relative error %.3e (<=1e-8), runtime %.2fs (<=1s)", worst, secs));
}

const char* kCompactSweepConfig = R"(
[grid]
n = 1024
[physics]
nu_list = 1e-2 10^-2.5 1e-3
[time]
T = 1.0
dt = 2e-3
snap_every = 9
[initial]
kind = random_smooth
seed = 42
spectrum_slope = -3
[diagnostics]
scales = 1
deltas = 0.1
[output]
dir = /tmp/vll_acceptance/compact_sweep
)";

const char* kVortexSweepConfig = R"(
[grid]
n = 1024
[physics]
nu_list = 1e-2 10^-2.5 1e-3
[time]
T = 1.0
dt = 1.5e-3
snap_every = 12
[initial]
kind = mollified_vortex
sign = 1
scale = 2
amplitude = 0.5
[beta]
name = power
p = 2
[diagnostics]
scales = 1
deltas = 0.1
[output]
dir = /tmp/vll_acceptance/vortex_sweep
)";

// 6. Compact-family co-trend at the dissipative scale within 15 minutes.
// 7. Rate-certificate envelope fitted at nu=1e-2 bounds the smaller nu.
// 4. Constant-free suite passes with factor 1.01 on every sweep run.
void criteria_sweeps() {
  auto t0 = std::chrono::steady_clock::now();
  bool cf_ok = true;
  std::string cf_detail;

  {
    RunConfig cfg = RunConfig::parse_text(kCompactSweepConfig);
    Report rep = sweep(cfg);
    double secs = seconds_since(t0);
    bool decreasing = rep.trends.evaluated;
    for (const char* key : {"s2", "omega_con", "q_con", "diss_total"})
      decreasing = decreasing && rep.trends.strictly_decreasing.count(key) &&
                   rep.trends.strictly_decreasing.at(key);
    bool drift_ok = rep.trends.kolmogorov.has_value();
    double worst_drift = 0.0;
    if (drift_ok)
      for (const auto& f : rep.trends.kolmogorov->fitted) {
        drift_ok = drift_ok && f.pass;
        worst_drift = std::max(worst_drift, f.max_drift);
      }
    record(6, decreasing && drift_ok && secs <= 900.0,
           fmt("co-trend strictly decreasing %s, fitted-constant drift %.2fx (<=2x), "
               "runtime %.0fs (<=900s)",
               decreasing ? "yes" : "NO", worst_drift, secs));
    cf_ok = cf_ok && rep.constant_free_ok;
    if (!rep.constant_free_ok) cf_detail += " compact-sweep";
  }

  {
    RunConfig cfg = RunConfig::parse_text(kVortexSweepConfig);
    Report rep = sweep(cfg);
    bool ok = rep.trends.rate.has_value() && rep.trends.rate->pass;
    double worst_ratio = 0.0, cfit = 0.0;
    if (rep.trends.rate) {
      cfit = rep.trends.rate->C_fit;
      for (const auto& e : rep.trends.rate->entries)
        worst_ratio = std::max(worst_ratio, e.ratio);
    }
    record(7, ok,
           fmt("rate envelope C fitted at nu=1e-2: %.3f, worst ratio %.3f (<= 2x fit)",
               cfit, worst_ratio));
    cf_ok = cf_ok && rep.constant_free_ok;
    if (!rep.constant_free_ok) cf_detail += " vortex-sweep";
  }

  record(4, cf_ok,
         cf_ok ? "constant-free inequality suite passed on all sweep runs (factor 1.01)"
               : "constant-free failures on:" + cf_detail);
}

// 8. Gallery facts: checkerboard quarter density, concentrating vortex,
// steady shear closed forms.
void criterion_gallery_facts() {
  bool ok = true;
  std::string detail;

  {
    TorusGrid g(1024);
    double prev = 1e300;
    bool decreasing = true, small_at_32 = true;
    double err32 = 0.0;
    for (int tiles : {8, 16, 32}) {
      GalleryItem item = checkerboard(g, tiles);
      ScalarField one(g);
      for (auto& v : one.values) v = 1.0;
      double err = std::fabs(pairing(item.velocity->speed_squared(), one) /
                                 (two_pi * two_pi) -
                             0.25);
      // roundoff floor: the quarter density is exact by construction, so
      // successive errors may tie at machine precision
      if (err > prev + 1e-12) decreasing = false;
      prev = err;
      if (tiles == 32) {
        err32 = err;
        small_at_32 = err <= 0.05;
      }
    }
    ok = ok && decreasing && small_at_32;
    detail += fmt("checkerboard quarter-density err@32 %.2e (<=0.05)%s", err32,
                  decreasing ? "" : " NOT decreasing");
  }

  {
    TorusGrid g(512);
    double prev = 1e300;
    bool l1_ok = true, dec = true;
    for (int n : {2, 4, 8}) {
      GalleryItem item = concentrating_vortex(g, n);
      double l1 = norms(item.omega).l1;
      l1_ok = l1_ok && std::fabs(l1 - 1.0) <= 1e-3;
      double l2 = item.params.at("velocity_l2");
      dec = dec && l2 < prev;
      prev = l2;
    }
    ok = ok && l1_ok && dec;
    detail += fmt("; vortex L1=1 %s, velocity decreasing %s", l1_ok ? "yes" : "NO",
                  dec ? "yes" : "NO");
  }

  {
    TorusGrid g(128);
    GalleryItem item = steady_shear(g, 4);
    double residual = 0.0, diss_err = 0.0;
    for (const auto& f : item.facts) {
      if (f.quantity == "steady_residual") residual = f.measured;
      if (f.quantity == "dissipation_rate")
        diss_err = rel_err(f.measured, 2.0 * std::numbers::pi * std::numbers::pi);
    }
    bool shear_ok = residual <= 1e-10 && diss_err <= 1e-8;
    ok = ok && shear_ok;
    detail += fmt("; shear residual %.1e (<=1e-10), dissipation err %.1e (<=1e-8)",
                  residual, diss_err);
  }

  record(8, ok, detail);
}

// 9. Self-similar dissipation integral agrees across two viscosities.
void criterion_self_similar() {
  TorusGrid g(512);
  GalleryItem a = heat_self_similar(g, 0.45);
  GalleryItem b = heat_self_similar(g, 0.32);
  double da = heat_self_similar_dissipation(a);
  double db = heat_self_similar_dissipation(b);
  double gap = rel_err(da, db);
  record(9, gap <= 1e-3,
         fmt("nu int ||omega||^2: %.6f vs %.6f, relative gap %.2e (<=1e-3)", da, db, gap));
}

const char* kGoldenConfig = R"(
[grid]
n = 256
[physics]
nu_list = 2e-2
[time]
T = 0.3
dt = 1e-3
snap_every = 5
[initial]
kind = random_smooth
seed = 2718
spectrum_slope = -3
[diagnostics]
scales = 1
deltas = 0.05
[output]
dir = OUTDIR
)";

// 10. Two executions of the golden config produce byte-identical CSV.
void criterion_determinism() {
  std::string base = "/tmp/vll_acceptance/golden";
  for (const char* d : {"a", "b"}) {
    std::string text = kGoldenConfig;
    text.replace(text.find("OUTDIR"), 6, base + d);
    fs::remove_all(base + d);
    run(RunConfig::parse_text(text));
  }
  bool same_diag = slurp(base + "a/diagnostics.csv") == slurp(base + "b/diagnostics.csv");
  bool same_ledger = slurp(base + "a/ledger_nu0.csv") == slurp(base + "b/ledger_nu0.csv");
  bool nonempty = !slurp(base + "a/diagnostics.csv").empty();
  record(10, same_diag && same_ledger && nonempty,
         fmt("diagnostics.csv identical: %s, ledger identical: %s",
             same_diag ? "yes" : "NO", same_ledger ? "yes" : "NO"));
}

}  // namespace

int main() {
  fs::create_directories("/tmp/vll_acceptance");
  criterion_solver_exactness();
  criterion_energy_equality();
  criterion_spectral_identity();
  criterion_g_closed_forms();
  criteria_sweeps();
  criterion_gallery_facts();
  criterion_self_similar();
  criterion_determinism();

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.number < b.number; });
  int failures = 0;
  std::printf("acceptance criteria:\n");
  for (const auto& r : results) {
    std::printf("criterion %2d: %s  (%s)\n", r.number, r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures;
}
