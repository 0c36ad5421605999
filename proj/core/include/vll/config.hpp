#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vll {

struct InitialSpec {
  std::string kind = "taylor_green";
  int shear_k = 1;
  double amplitude = 1.0;
  unsigned long seed = 1;
  double spectrum_slope = -3.0;
  double vortex_sign = 1.0;
  double vortex_scale = 1.0;
  double sheet_scale = 1.0;
  std::string gallery_name;
  double gallery_param = 0.0;
};

/// Experiment description, parsed from flat "key = value" sections.
/// Numbers accept plain literals plus the power form "10^-2.5".
struct RunConfig {
  int n = 256;
  std::vector<double> nu_list;
  double T = 1.0;
  double dt = 1e-3;
  int snap_every = 10;
  InitialSpec initial;
  std::string force_kind = "none";  // none | shear
  int force_m = 1;
  std::vector<double> scales{1.0};  // multipliers of sqrt(nu)
  std::vector<double> deltas{0.1};
  std::string uref = "smallest_nu";  // smallest_nu | zero
  std::string beta_name = "power";   // power | s_log
  double beta_p = 2.0;
  std::string output_dir = "out";
  std::string snapshots = "ends";  // none | ends | all
  std::string raw_text;            // original config text, hashed for the report

  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_text(const std::string& text);

  /// Every violated constraint, empty when the config is acceptable.
  std::vector<std::string> validate() const;

  /// Smallest even n admitted by the resolution policy for this viscosity.
  static int minimal_n(double nu);
};

struct ConfigError : std::runtime_error {
  std::vector<std::string> violations;
  explicit ConfigError(std::vector<std::string> v);
};

uint64_t fnv1a64(const std::string& text);
double parse_number(const std::string& token);  // supports "10^-2.5"

}  // namespace vll
