#include "vll/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vll/gallery.hpp"

namespace vll {

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error("configuration error:\n  " + [&v] {
        std::string all;
        for (size_t i = 0; i < v.size(); ++i)
          all += v[i] + (i + 1 < v.size() ? "\n  " : "");
        return all;
      }()),
      violations(std::move(v)) {}

uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double parse_number(const std::string& token) {
  auto caret = token.find('^');
  if (caret != std::string::npos) {
    double base = std::stod(token.substr(0, caret));
    double expo = std::stod(token.substr(caret + 1));
    return std::pow(base, expo);
  }
  size_t used = 0;
  double v = std::stod(token, &used);
  if (used != token.size())
    throw std::invalid_argument("malformed number '" + token + "'");
  return v;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  cfg.raw_text = text;
  std::istringstream in(text);
  std::string line, section;
  std::vector<std::string> errors;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = section + "." + trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "grid.n") cfg.n = static_cast<int>(parse_number(value));
      else if (key == "physics.nu_list") {
        cfg.nu_list.clear();
        for (const auto& tok : split_list(value)) cfg.nu_list.push_back(parse_number(tok));
      } else if (key == "time.T") cfg.T = parse_number(value);
      else if (key == "time.dt") cfg.dt = parse_number(value);
      else if (key == "time.snap_every") cfg.snap_every = static_cast<int>(parse_number(value));
      else if (key == "initial.kind") cfg.initial.kind = value;
      else if (key == "initial.k") cfg.initial.shear_k = static_cast<int>(parse_number(value));
      else if (key == "initial.amplitude") cfg.initial.amplitude = parse_number(value);
      else if (key == "initial.seed") cfg.initial.seed = static_cast<unsigned long>(parse_number(value));
      else if (key == "initial.spectrum_slope") cfg.initial.spectrum_slope = parse_number(value);
      else if (key == "initial.sign") cfg.initial.vortex_sign = parse_number(value);
      else if (key == "initial.scale") {
        cfg.initial.vortex_scale = parse_number(value);
        cfg.initial.sheet_scale = cfg.initial.vortex_scale;
      } else if (key == "initial.gallery_name") cfg.initial.gallery_name = value;
      else if (key == "initial.gallery_param") cfg.initial.gallery_param = parse_number(value);
      else if (key == "force.kind") cfg.force_kind = value;
      else if (key == "force.m") cfg.force_m = static_cast<int>(parse_number(value));
      else if (key == "diagnostics.scales") {
        cfg.scales.clear();
        for (const auto& tok : split_list(value)) cfg.scales.push_back(parse_number(tok));
      } else if (key == "diagnostics.deltas") {
        cfg.deltas.clear();
        for (const auto& tok : split_list(value)) cfg.deltas.push_back(parse_number(tok));
      } else if (key == "diagnostics.u_ref") cfg.uref = value;
      else if (key == "beta.name") cfg.beta_name = value;
      else if (key == "beta.p") cfg.beta_p = parse_number(value);
      else if (key == "output.dir") cfg.output_dir = value;
      else if (key == "output.snapshots") cfg.snapshots = value;
      else errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::exception& e) {
      errors.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

int RunConfig::minimal_n(double nu) {
  int n = static_cast<int>(std::ceil(8.0 / std::sqrt(nu)));
  return n % 2 == 0 ? n : n + 1;
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> v;
  if (n < 4 || n % 2 != 0) v.push_back("grid.n must be even and >= 4");
  if (nu_list.empty()) v.push_back("physics.nu_list must not be empty");
  for (double nu : nu_list) {
    if (nu <= 0) {
      v.push_back("viscosity must be positive");
      continue;
    }
    int nmin = minimal_n(nu);
    if (n < nmin) {
      std::ostringstream msg;
      msg << "resolution policy violated for nu=" << nu
          << ": the Kolmogorov scale sqrt(nu) needs n >= " << nmin
          << " (got n=" << n << ")";
      v.push_back(msg.str());
    }
  }
  if (T <= 0) v.push_back("time.T must be positive");
  if (dt <= 0 || dt >= T) v.push_back("time.dt must lie in (0, T)");
  if (snap_every < 1) v.push_back("time.snap_every must be >= 1");
  double dmax = deltas.empty() ? 0.0 : *std::max_element(deltas.begin(), deltas.end());
  if (dt > 0 && snap_every >= 1 && T > dmax) {
    double window = T - dmax;
    double count = window / (snap_every * dt);
    if (count < 49.5)
      v.push_back("snapshot cadence too sparse: certificates need >= 50 snapshots per window "
                  "(reduce snap_every or dt)");
  }
  if (initial.amplitude <= 0) v.push_back("initial.amplitude must be positive");
  const std::vector<std::string> kinds = {"taylor_green", "shear", "random_smooth",
                                          "mollified_vortex", "vortex_sheet_approx",
                                          "gallery"};
  if (std::find(kinds.begin(), kinds.end(), initial.kind) == kinds.end())
    v.push_back("unknown initial.kind '" + initial.kind + "'");
  if (initial.kind == "gallery") {
    auto names = gallery_names();
    if (std::find(names.begin(), names.end(), initial.gallery_name) == names.end())
      v.push_back("unknown gallery item '" + initial.gallery_name + "'");
  }
  if (force_kind != "none" && force_kind != "shear")
    v.push_back("unknown force.kind '" + force_kind + "'");
  if (scales.empty()) v.push_back("diagnostics.scales must not be empty");
  for (double s : scales)
    if (s <= 0) v.push_back("diagnostics scale multipliers must be positive");
  if (deltas.empty()) v.push_back("diagnostics.deltas must not be empty");
  for (double d : deltas)
    if (d < 0 || d >= T) v.push_back("diagnostics deltas must lie in [0, T)");
  if (beta_name != "power" && beta_name != "s_log")
    v.push_back("beta.name must be 'power' or 's_log'");
  if (beta_name == "power" && beta_p <= 1.0) v.push_back("beta.p must exceed 1");
  if (uref != "smallest_nu" && uref != "zero")
    v.push_back("diagnostics.u_ref must be 'smallest_nu' or 'zero'");
  if (snapshots != "none" && snapshots != "ends" && snapshots != "all")
    v.push_back("output.snapshots must be none|ends|all");
  if (output_dir.empty()) v.push_back("output.dir must not be empty");
  return v;
}

}  // namespace vll
