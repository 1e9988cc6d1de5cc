#ifndef VIBCOOL_CONFIG_HPP
#define VIBCOOL_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "vibcool/functionals.hpp"
#include "vibcool/krotov.hpp"
#include "vibcool/potential.hpp"

namespace vibcool {

struct PotentialSpec {
  enum class Kind { Morse, TabulatedFile };
  Kind kind = Kind::Morse;
  double d_e = 0, a = 0, r_e = 0, offset = 0;
  std::string path;

  Potential build() const;
};

// Fully resolved run configuration, everything in atomic units. Produced by
// parse_config_*; round-trips through serialize_config.
struct RunConfig {
  // [system]
  std::string preset;  // echoed when the config started from a preset
  double mass = 0;
  double r_min = 0, r_max = 0;
  int n_points = 0;
  PotentialSpec ground, excited;
  double electronic_gap = 0;
  double dipole = 1.0;
  int n_ground = 0, n_excited = 0;

  // [pulse]
  double t_final = 0;
  int n_steps = 0;
  double center = 0, fwhm = 0, peak = 0, detuning = 0;
  double carrier = 0;
  double t_ramp = 0;  // 0 -> t_final/20
  std::optional<double> beam_area_um2;

  // [functional]
  FunctionalConfig functional;

  // [krotov]
  KrotovOptions krotov;

  // [cooling]
  int cool_lo = 1, cool_hi = 1;
  std::vector<double> custom_initial;  // overrides equipartition when set
  int n_cycles = 100;

  // [output]
  std::string out_dir = "out";
  bool dump_trajectories = false;

  void validate() const;
};

// Parses the sectioned key = value format ('#' comments, unit suffixes).
// A `preset = <name>` line in [system] seeds every field from the named
// bundled preset; explicit keys override. Later duplicates of a key win.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text,
                            const std::string& name = "<config>");

// Canonical text form; parse(serialize(parse(x))) == parse(x).
std::string serialize_config(const RunConfig& cfg);

// FNV-1a hash of the canonical form, 16 hex digits; stamped into CSV output.
std::string config_hash(const RunConfig& cfg);

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);

}  // namespace vibcool

#endif
