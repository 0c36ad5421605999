#include "vll/lab.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "vll/ball.hpp"
#include "vll/fft.hpp"
#include "vll/snapshot.hpp"
#include "vll/spectral.hpp"

namespace vll {

namespace fs = std::filesystem;
using nlohmann::json;

int worker_count(int jobs) {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("VLL_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) cap = v;
  }
  return std::max(1, std::min(cap, jobs));
}

ScalarField random_smooth_vorticity(const TorusGrid& g, unsigned long seed,
                                    double slope) {
  SpectralField wh(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  const int n = g.n();
  const int kmax = std::min(dealias_cutoff(g), 42);
  for (int r = 0; r < n; ++r) {
    double k2 = g.k2(r);
    for (int c = 0; c < g.spectral_cols(); ++c) {
      double k1 = g.k1(c);
      double kk = std::sqrt(k1 * k1 + k2 * k2);
      if (kk < 1.0 || std::max(std::fabs(k2), k1) > kmax) continue;
      wh.at(r, c) = std::polar(std::pow(kk, slope + 1.0), phase(rng));
    }
  }
  for (int c : {0, n / 2}) {
    wh.at(0, c) = std::complex<double>(wh.at(0, c).real(), 0.0);
    wh.at(n / 2, c) = std::complex<double>(wh.at(n / 2, c).real(), 0.0);
    for (int r = 1; r < n / 2; ++r) wh.at(n - r, c) = std::conj(wh.at(r, c));
  }
  wh.coeffs[0] = 0.0;
  ScalarField w = inverse(wh);
  double e = velocity_energy(forward(w));
  if (e > 0.0) w *= 1.0 / std::sqrt(2.0 * e);
  return w;
}

namespace {

constexpr double kCenter = std::numbers::pi;

// Gaussian approximants keep the sampled spectra clean; the half-width
// sigma = width/2 puts nearly all mass inside the nominal radius.
ScalarField unit_mass_bump(const TorusGrid& g, double width) {
  ScalarField b(g);
  double sigma = 0.5 * width;
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter);
      double v = std::exp(-0.5 * (y1 * y1 + y2 * y2) / (sigma * sigma));
      b.at(row, col) = v;
      sum += v;
    }
  }
  b *= 1.0 / (sum * g.cell_area());
  return b;
}

ScalarField unit_mass_ring(const TorusGrid& g, double radius, double width) {
  ScalarField b(g);
  double sigma = 0.5 * width;
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - kCenter);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - kCenter);
      double d = std::sqrt(y1 * y1 + y2 * y2) - radius;
      double v = std::exp(-0.5 * d * d / (sigma * sigma));
      b.at(row, col) = v;
      sum += v;
    }
  }
  b *= 1.0 / (sum * g.cell_area());
  return b;
}

}  // namespace

InitialData build_initial(const InitialSpec& spec, const TorusGrid& g, double nu) {
  InitialData out(g);
  if (spec.kind == "taylor_green") {
    for (int r = 0; r < g.n(); ++r)
      for (int c = 0; c < g.n(); ++c)
        out.omega0.at(r, c) = -2.0 * std::sin(g.x1(c)) * std::sin(g.x2(r));
  } else if (spec.kind == "shear") {
    int k = spec.shear_k;
    for (int r = 0; r < g.n(); ++r)
      for (int c = 0; c < g.n(); ++c) out.omega0.at(r, c) = -k * std::cos(k * g.x2(r));
  } else if (spec.kind == "random_smooth") {
    out.omega0 = random_smooth_vorticity(g, spec.seed, spec.spectrum_slope);
  } else if (spec.kind == "mollified_vortex") {
    // Measure-like data at the joint (nu, grid) scale.
    double width = spec.vortex_scale * std::max(4.0 * g.spacing(), std::sqrt(nu) / 4.0);
    ScalarField b = unit_mass_bump(g, width);
    out.omega0 = b;
    out.omega0 *= spec.vortex_sign;
    out.omega0.subtract_mean();
    if (spec.vortex_sign > 0) {
      out.mu0 = b;
      out.f0 = out.omega0 - b;  // constant background; exactly omega0 - mu0
    } else {
      out.mu0 = ScalarField(g);
      out.f0 = out.omega0;
    }
  } else if (spec.kind == "vortex_sheet_approx") {
    double width = spec.sheet_scale * std::max(4.0 * g.spacing(), std::sqrt(nu) / 4.0);
    ScalarField b = unit_mass_ring(g, 1.0, width);
    out.omega0 = b;
    out.omega0.subtract_mean();
    out.mu0 = b;
    out.f0 = out.omega0 - b;
  } else if (spec.kind == "gallery") {
    GalleryItem item = make_gallery_item(spec.gallery_name, g, spec.gallery_param);
    out.omega0 = item.omega;
    out.omega0.subtract_mean();
  } else {
    throw std::invalid_argument("unknown initial kind '" + spec.kind + "'");
  }
  if (spec.amplitude != 1.0) {
    out.omega0 *= spec.amplitude;
    if (out.f0) *out.f0 *= spec.amplitude;
    if (out.mu0) *out.mu0 *= spec.amplitude;
  }
  return out;
}

namespace {

struct PerNu {
  double nu = 0.0;
  std::optional<Trajectory> traj;
  std::optional<InitialData> init;
  double balance_residual = 0.0;
};

void parallel_for(int jobs, int workers, const std::function<void(int)>& body) {
  if (workers <= 1) {
    for (int i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_outputs(const RunConfig& cfg, const Report& rep,
                   const std::vector<PerNu>& per_nu) {
  fs::create_directories(cfg.output_dir);
  {
    std::ofstream csv(cfg.output_dir + "/diagnostics.csv", std::ios::binary);
    rep.table.write_csv(csv);
  }
  for (size_t i = 0; i < per_nu.size(); ++i) {
    std::ofstream led(cfg.output_dir + "/ledger_nu" + std::to_string(i) + ".csv",
                      std::ios::binary);
    per_nu[i].traj->ledger.write_csv(led);
  }
  if (cfg.snapshots != "none") {
    for (size_t i = 0; i < per_nu.size(); ++i) {
      const Trajectory& traj = *per_nu[i].traj;
      std::vector<size_t> indices;
      if (cfg.snapshots == "all") {
        indices.resize(traj.snapshots.size());
        for (size_t k = 0; k < indices.size(); ++k) indices[k] = k;
      } else {
        indices = {0, traj.snapshots.size() - 1};
      }
      for (size_t k : indices) {
        std::ostringstream name;
        name << cfg.output_dir << "/snap_nu" << i << "_" << k << ".vll";
        write_snapshot(name.str(), Snapshot(traj.nu, traj.times[k], traj.snapshots[k]));
      }
    }
  }

  json jrep;
  jrep["config_hash"] = rep.config_hash;
  jrep["constant_free_ok"] = rep.constant_free_ok;
  jrep["notes"] = rep.notes;
  json jnu = json::array();
  for (const auto& p : per_nu) {
    jnu.push_back({{"nu", p.nu},
                   {"balance_residual", p.balance_residual},
                   {"cfl_halvings", p.traj->cfl_halvings},
                   {"dt_final", p.traj->dt_final}});
  }
  jrep["per_nu"] = jnu;

  json jcerts = json::array();
  for (const auto& row : rep.table.rows)
    for (const auto& c : row.certificates)
      jcerts.push_back({{"nu", row.nu},
                        {"ell", row.ell},
                        {"delta", row.delta},
                        {"name", c.name},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"pass", c.pass},
                        {"margin", c.margin()},
                        {"constant_free", c.constant_free}});
  jrep["certificates"] = jcerts;

  if (rep.trends.evaluated) {
    json jt;
    jt["kendall_tau_s2_diss"] = rep.trends.kendall_tau_s2_diss;
    for (const auto& [k, v] : rep.trends.strictly_decreasing)
      jt["strictly_decreasing"][k] = v;
    if (rep.trends.kolmogorov) {
      json jf = json::array();
      for (const auto& f : rep.trends.kolmogorov->fitted)
        jf.push_back({{"name", f.name},
                      {"C_fit", f.C_fit},
                      {"max_drift", f.max_drift},
                      {"pass", f.pass}});
      jt["kolmogorov_fitted"] = jf;
    }
    if (rep.trends.rate) {
      json je = json::array();
      for (const auto& e : rep.trends.rate->entries)
        je.push_back({{"nu", e.nu},
                      {"diss_tail", e.diss_tail},
                      {"envelope", e.envelope},
                      {"ratio", e.ratio},
                      {"side_condition_ok", e.side_condition_ok}});
      jt["rate"] = {{"C_fit", rep.trends.rate->C_fit},
                    {"pass", rep.trends.rate->pass},
                    {"entries", je}};
    }
    jt["notes"] = rep.trends.notes;
    jrep["trends"] = jt;
  }
  std::ofstream jout(cfg.output_dir + "/report.json", std::ios::binary);
  jout << jrep.dump(2) << "\n";

  std::ofstream cout_(cfg.output_dir + "/certificates.json", std::ios::binary);
  cout_ << jcerts.dump(2) << "\n";
}

Report run_impl(const RunConfig& cfg, bool with_trends) {
  auto violations = cfg.validate();
  if (!violations.empty()) throw ConfigError(violations);

  TorusGrid g(cfg.n);
  Report rep;
  rep.config_hash = [&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.raw_text)));
    return std::string(buf);
  }();

  ForceSpec force = cfg.force_kind == "shear" ? ForceSpec::shear(cfg.force_m)
                                              : ForceSpec::none();

  std::vector<PerNu> per_nu(cfg.nu_list.size());
  for (size_t i = 0; i < cfg.nu_list.size(); ++i) per_nu[i].nu = cfg.nu_list[i];

  int workers = worker_count(static_cast<int>(per_nu.size()));
  parallel_for(static_cast<int>(per_nu.size()), workers, [&](int i) {
    PerNu& p = per_nu[i];
    p.init = build_initial(cfg.initial, g, p.nu);
    p.traj = evolve(p.init->omega0, p.nu, force, cfg.T, cfg.dt, cfg.snap_every);
    p.balance_residual = force.is_none() ? energy_balance_residual(*p.traj) : 0.0;
  });

  // The weak-limit surrogate: the smallest-viscosity run, unless disabled.
  size_t anchor = 0;
  for (size_t i = 1; i < per_nu.size(); ++i)
    if (per_nu[i].nu < per_nu[anchor].nu) anchor = i;
  ReferenceVelocity uref = cfg.uref == "zero"
                               ? ReferenceVelocity::zero()
                               : ReferenceVelocity::from_trajectory(*per_nu[anchor].traj);

  struct Cell {
    DiagnosticRow row;
    bool excluded = false;
    std::string note;
  };
  const size_t n_cells = per_nu.size() * cfg.scales.size() * cfg.deltas.size();
  std::vector<Cell> cells(n_cells);

  auto cell_index = [&](size_t i, size_t s, size_t d) {
    return (i * cfg.scales.size() + s) * cfg.deltas.size() + d;
  };

  parallel_for(static_cast<int>(per_nu.size()), workers, [&](int i) {
    PerNu& p = per_nu[i];
    const Trajectory& traj = *p.traj;
    const BalanceLedger& led = traj.ledger;

    // Per-trajectory constant-free certificates (shared by all cells).
    double l1_max = 0.0;
    for (double v : led.l1_vorticity) l1_max = std::max(l1_max, v);
    CertificateResult l1_cert = make_certificate(
        "l1_monotone", l1_max, led.l1_vorticity.front(), 1.0 + 1e-2, true);
    double enst_lhs = 0.0;
    for (size_t k = 0; k < led.t.size(); ++k) {
      double t = led.t[k];
      if (t < 10.0 * traj.dt_initial) continue;
      enst_lhs = std::max(enst_lhs, 2.0 * led.enstrophy[k] * 2.0 * t * traj.nu);
    }
    double u0sq = 2.0 * led.energy.front();
    CertificateResult enst_cert =
        make_certificate("enstrophy_decay", enst_lhs, u0sq, 1.0 + 1e-2, true);

    for (size_t s = 0; s < cfg.scales.size(); ++s) {
      double ell = cfg.scales[s] * std::sqrt(traj.nu);
      for (size_t d = 0; d < cfg.deltas.size(); ++d) {
        Cell& cell = cells[cell_index(i, s, d)];
        double delta = cfg.deltas[d];
        DiagnosticRow& row = cell.row;
        row.nu = traj.nu;
        row.ell = ell;
        row.delta = delta;
        if (ell < 4.0 * g.spacing()) {
          cell.excluded = true;
          std::ostringstream msg;
          msg << "excluded cell nu=" << traj.nu << " scale=" << cfg.scales[s]
              << ": ell=" << ell << " under-resolved (needs >= " << 4.0 * g.spacing()
              << ")";
          cell.note = msg.str();
          continue;
        }
        row.diss_total = dissipation_total(traj, delta, traj.end_time());
        row.s2 = structure_function_s2(traj, ell);
        row.lambda_con = lambda_con(traj, uref, ell);
        row.omega_con = omega_con(traj, ell);
        row.q_con = q_con(traj, ell);

        double diss_full = dissipation_total(traj, 0.0, traj.end_time());
        row.certificates.push_back(make_certificate(
            "s2_le_diss", row.s2, ell * ell / traj.nu * diss_full, 1.0 + 1e-2, true));
        row.certificates.push_back(l1_cert);
        row.certificates.push_back(enst_cert);
        CertificateResult ho = higher_order_certificate(traj, std::max(delta, 1e-6),
                                                        1.0 + 1e-2);
        row.certificates.push_back(ho);
      }
    }
  });

  for (auto& cell : cells) {
    if (cell.excluded) {
      rep.notes.push_back(cell.note);
      continue;
    }
    rep.table.rows.push_back(std::move(cell.row));
  }
  for (size_t i = 0; i < per_nu.size(); ++i) {
    std::ostringstream note;
    note << "nu=" << per_nu[i].nu
         << " balance_residual=" << format_double(per_nu[i].balance_residual);
    if (per_nu[i].traj->cfl_halvings > 0)
      note << " cfl_halvings=" << per_nu[i].traj->cfl_halvings;
    rep.notes.push_back(note.str());
  }
  rep.constant_free_ok = rep.table.all_constant_free_pass();

  if (with_trends) {
    TrendReport& tr = rep.trends;
    if (per_nu.size() < 2) {
      tr.evaluated = false;
      tr.notes.push_back("single-viscosity sweep: trend tests skipped");
    } else {
      tr.evaluated = true;
      // Order by descending viscosity; the trend direction is toward nu -> 0.
      std::vector<size_t> order(per_nu.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](size_t a, size_t b) { return per_nu[a].nu > per_nu[b].nu; });

      std::vector<KolmogorovNumbers> numbers;
      bool all_resolved = true;
      for (size_t idx : order) {
        KolmogorovNumbers kn =
            kolmogorov_numbers(*per_nu[idx].traj, uref, cfg.scales.front(),
                               cfg.deltas.front());
        all_resolved = all_resolved && kn.ell_resolved;
        numbers.push_back(kn);
      }
      if (all_resolved) {
        auto decreasing = [&](auto getter, const std::string& name) {
          bool ok = true;
          for (size_t j = 1; j < numbers.size(); ++j)
            if (!(getter(numbers[j]) < getter(numbers[j - 1]))) ok = false;
          tr.strictly_decreasing[name] = ok;
        };
        decreasing([](const KolmogorovNumbers& k) { return k.s2; }, "s2");
        decreasing([](const KolmogorovNumbers& k) { return k.omega; }, "omega_con");
        decreasing([](const KolmogorovNumbers& k) { return k.q; }, "q_con");
        decreasing([](const KolmogorovNumbers& k) { return k.diss_full; }, "diss_total");

        // Kendall rank correlation between S2(sqrt nu) and the dissipation.
        int concordant = 0, discordant = 0;
        for (size_t a = 0; a < numbers.size(); ++a)
          for (size_t b = a + 1; b < numbers.size(); ++b) {
            double ds = numbers[a].s2 - numbers[b].s2;
            double dd = numbers[a].diss_full - numbers[b].diss_full;
            if (ds * dd > 0) ++concordant;
            else if (ds * dd < 0) ++discordant;
          }
        int pairs = static_cast<int>(numbers.size() * (numbers.size() - 1) / 2);
        tr.kendall_tau_s2_diss =
            pairs > 0 ? static_cast<double>(concordant - discordant) / pairs : 0.0;

        tr.kolmogorov = kolmogorov_equivalence_report(numbers, cfg.deltas.front());
      } else {
        tr.notes.push_back("trend tests skipped: some cells under-resolved");
      }

      if (cfg.initial.kind == "mollified_vortex" ||
          cfg.initial.kind == "vortex_sheet_approx") {
        BetaFunction beta = cfg.beta_name == "power" ? BetaFunction::power(cfg.beta_p)
                                                     : BetaFunction::s_log();
        InverseTables tables = build_inverses(beta);
        std::vector<Trajectory> family;
        for (size_t idx : order) family.push_back(*per_nu[idx].traj);
        tr.rate = rate_certificate(family, tables, cfg.deltas.front());
        for (const auto& e : tr.rate->entries)
          if (!e.side_condition_ok)
            tr.notes.push_back("rate side condition T(G+1/sqrt log) <= 1/2 fails at nu=" +
                               format_double(e.nu) + " (envelope still reported)");
      }
    }
  }

  write_outputs(cfg, rep, per_nu);
  return rep;
}

}  // namespace

Report run(const RunConfig& cfg) { return run_impl(cfg, false); }

Report sweep(const RunConfig& cfg) { return run_impl(cfg, true); }

int report_command(const std::string& dir, std::ostream& out) {
  std::ifstream in(dir + "/report.json");
  if (!in) {
    out << "report: cannot open " << dir << "/report.json\n";
    return 2;
  }
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    out << "report: parse error: " << e.what() << "\n";
    return 2;
  }
  out << "config hash: " << j.value("config_hash", std::string("?")) << "\n";
  bool any_fail = false;
  out << "certificates:\n";
  for (const auto& c : j.value("certificates", json::array())) {
    bool pass = c.value("pass", false);
    bool cf = c.value("constant_free", false);
    if (cf && !pass) any_fail = true;
    char buf[256];
    std::snprintf(buf, sizeof buf, "  %-22s nu=%-12.6g ell=%-12.6g delta=%-8.4g %s%s\n",
                  c.value("name", std::string("?")).c_str(), c.value("nu", 0.0),
                  c.value("ell", 0.0), c.value("delta", 0.0),
                  pass ? "PASS" : "FAIL", cf ? " [constant-free]" : "");
    out << buf;
  }
  if (j.contains("trends")) {
    out << "trends:\n";
    const auto& t = j["trends"];
    if (t.contains("strictly_decreasing"))
      for (auto it = t["strictly_decreasing"].begin();
           it != t["strictly_decreasing"].end(); ++it)
        out << "  decreasing[" << it.key() << "]: " << (it.value().get<bool>() ? "yes" : "NO")
            << "\n";
    if (t.contains("kendall_tau_s2_diss"))
      out << "  kendall tau (s2 vs dissipation): " << t["kendall_tau_s2_diss"] << "\n";
    if (t.contains("rate"))
      out << "  rate certificate: " << (t["rate"].value("pass", false) ? "PASS" : "FAIL")
          << " (C_fit=" << t["rate"].value("C_fit", 0.0) << ")\n";
  }
  for (const auto& n : j.value("notes", json::array()))
    out << "note: " << n.get<std::string>() << "\n";
  out << (any_fail ? "RESULT: FAIL\n" : "RESULT: PASS\n");
  return any_fail ? 1 : 0;
}

int diagnose_command(const std::vector<std::string>& snapshot_paths, double ell,
                     double delta, std::ostream& out) {
  if (snapshot_paths.empty()) {
    out << "diagnose: no snapshots given\n";
    return 2;
  }
  std::map<double, std::vector<Snapshot>> groups;
  try {
    for (const auto& p : snapshot_paths) {
      Snapshot s = read_snapshot(p);
      groups[s.nu].push_back(std::move(s));
    }
  } catch (const std::exception& e) {
    out << "diagnose: " << e.what() << "\n";
    return 2;
  }
  for (auto& [nu, snaps] : groups) {
    std::sort(snaps.begin(), snaps.end(),
              [](const Snapshot& a, const Snapshot& b) { return a.t < b.t; });
    Trajectory traj;
    traj.nu = nu;
    double prev_t = -1.0;
    for (auto& s : snaps) {
      traj.times.push_back(s.t);
      traj.snapshots.push_back(s.omega);
      SpectralField wh = forward(s.omega);
      traj.ledger.t.push_back(s.t);
      traj.ledger.energy.push_back(velocity_energy(wh));
      double l2 = l2_norm(wh);
      traj.ledger.enstrophy.push_back(0.5 * l2 * l2);
      traj.ledger.l1_vorticity.push_back(norms(s.omega).l1);
      traj.ledger.cumulative_dissipation.push_back(0.0);
      if (prev_t >= 0 && s.t > prev_t && (traj.dt_initial == 0.0 || s.t - prev_t < traj.dt_initial))
        traj.dt_initial = s.t - prev_t;
      prev_t = s.t;
    }
    if (traj.dt_initial == 0.0) traj.dt_initial = 1.0;
    out << "nu=" << nu << " snapshots=" << snaps.size() << "\n";
    if (snaps.size() < 2) {
      out << "  single snapshot: time integrals are degenerate\n";
      continue;
    }
    try {
      out << "  diss_total[" << delta << ",T] = "
          << dissipation_total(traj, delta, traj.end_time()) << "\n";
      out << "  s2(" << ell << ") = " << structure_function_s2(traj, ell) << "\n";
      out << "  lambda_con(" << ell << ") = "
          << lambda_con(traj, ReferenceVelocity::zero(), ell) << "\n";
      out << "  omega_con(" << ell << ") = " << omega_con(traj, ell) << "\n";
      out << "  q_con(" << ell << ") = " << q_con(traj, ell) << "\n";
      CertificateResult ho = higher_order_certificate(traj, std::max(delta, 1e-6));
      out << "  higher_order: lhs=" << ho.lhs << " rhs=" << ho.rhs
          << (ho.pass ? " PASS" : " FAIL") << "\n";
    } catch (const std::exception& e) {
      out << "diagnose: " << e.what() << "\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace vll
