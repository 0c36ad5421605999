#pragma once

#include <map>
#include <optional>

#include "vll/config.hpp"
#include "vll/diagnostics.hpp"
#include "vll/gallery.hpp"

namespace vll {

/// Initial data realized for one viscosity, with the Delort split when the
/// family has one (mollified measure-like data).
struct InitialData {
  ScalarField omega0;
  std::optional<ScalarField> f0;
  std::optional<ScalarField> mu0;
  explicit InitialData(const TorusGrid& g) : omega0(g) {}
};

InitialData build_initial(const InitialSpec& spec, const TorusGrid& g, double nu);

/// Deterministic band-limited random vorticity with power-law amplitudes.
ScalarField random_smooth_vorticity(const TorusGrid& g, unsigned long seed,
                                    double slope);

/// Family-level trend analysis of a sweep.
struct TrendReport {
  bool evaluated = false;  // false when fewer than two viscosities
  std::map<std::string, bool> strictly_decreasing;
  double kendall_tau_s2_diss = 0.0;
  std::optional<KolmogorovReport> kolmogorov;
  std::optional<RateCertificate> rate;
  std::vector<std::string> notes;
};

struct Report {
  std::string config_hash;
  DiagnosticTable table;
  TrendReport trends;
  std::vector<std::string> notes;
  bool constant_free_ok = true;
  int exit_code() const { return constant_free_ok ? 0 : 1; }
};

/// Evolve every viscosity, run the diagnostic suite at each configured
/// (scale, delta) cell, and write CSV/JSON/snapshots under cfg.output_dir.
/// Workers run one viscosity each, capped by the VLL_THREADS variable.
Report run(const RunConfig& cfg);

/// run() plus cross-viscosity trend tests (monotone decrease, Kendall rank
/// correlation, fitted-constant drift, rate certificate for Delort data).
Report sweep(const RunConfig& cfg);

/// Render the pass/fail matrix of a previous run directory.
/// Exit codes: 0 all constant-free certificates pass, 1 otherwise, 2 on
/// unreadable input.
int report_command(const std::string& dir, std::ostream& out);

/// Diagnostics over loose snapshot files grouped by viscosity.
int diagnose_command(const std::vector<std::string>& snapshot_paths, double ell,
                     double delta, std::ostream& out);

/// Worker cap from VLL_THREADS (defaults to hardware concurrency).
int worker_count(int jobs);

}  // namespace vll
