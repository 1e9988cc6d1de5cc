#include "vibcool/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "vibcool/errors.hpp"
#include "vibcool/units.hpp"

namespace vibcool {

Potential PotentialSpec::build() const {
  if (kind == Kind::Morse) return Potential::morse(d_e, a, r_e, offset);
  return Potential::load_tabulated(path);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

struct Entry {
  std::string section, key, value;
  int line = 0;
  std::string where;  // "<file>:<line>"
};

[[noreturn]] void fail(const Entry& e, const std::string& msg) {
  throw ConfigError(e.where + ": key '" + e.key + "': " + msg);
}

double number(const Entry& e, const std::string& tok) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) fail(e, "'" + tok + "' is not a number");
    return v;
  } catch (const std::exception&) {
    fail(e, "'" + tok + "' is not a number");
  }
}

// value := <number> [unit]; converts to atomic units according to the
// dimension expected for the key.
enum class Dim { Plain, Energy, Time, Length, Dipole, Area };

double quantity(const Entry& e, Dim dim) {
  const auto tok = tokens(e.value);
  if (tok.empty() || tok.size() > 2) fail(e, "expected '<number> [unit]'");
  const double v = number(e, tok[0]);
  const std::string unit = tok.size() == 2 ? tok[1] : "";
  if (unit.empty()) return v;  // bare numbers are atomic units
  switch (dim) {
    case Dim::Plain:
      if (unit == "me") return v;
      fail(e, "unexpected unit '" + unit + "' for a dimensionless value");
    case Dim::Energy:
      if (unit == "hartree") return v;
      if (unit == "cm-1") return v * units::cm1_to_hartree;
      fail(e, "unknown energy unit '" + unit + "' (use hartree or cm-1)");
    case Dim::Time:
      if (unit == "au") return v;
      if (unit == "fs") return v * units::fs_to_au_time;
      if (unit == "ps") return v * 1000.0 * units::fs_to_au_time;
      fail(e, "unknown time unit '" + unit + "' (use au, fs or ps)");
    case Dim::Length:
      if (unit == "a0" || unit == "bohr") return v;
      if (unit == "angstrom") return v * units::angstrom_to_bohr;
      fail(e, "unknown length unit '" + unit + "' (use a0, bohr or angstrom)");
    case Dim::Dipole:
      if (unit == "au") return v;
      if (unit == "debye") return v * units::debye_to_au;
      fail(e, "unknown dipole unit '" + unit + "' (use au or debye)");
    case Dim::Area:
      if (unit == "um2") return v;
      fail(e, "unknown area unit '" + unit + "' (use um2)");
  }
  fail(e, "unhandled unit");
}

int integer(const Entry& e) {
  const double v = quantity(e, Dim::Plain);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) fail(e, "expected an integer");
  return i;
}

PotentialSpec potential_spec(const Entry& e) {
  const auto tok = tokens(e.value);
  PotentialSpec p;
  if (!tok.empty() && tok[0] == "morse") {
    if (tok.size() != 5 && tok.size() != 4) {
      fail(e, "morse takes 'morse D_e a r_e [offset]' in atomic units");
    }
    p.kind = PotentialSpec::Kind::Morse;
    p.d_e = number(e, tok[1]);
    p.a = number(e, tok[2]);
    p.r_e = number(e, tok[3]);
    p.offset = tok.size() == 5 ? number(e, tok[4]) : 0.0;
    return p;
  }
  if (tok.size() == 2 && tok[0] == "tabulated") {
    p.kind = PotentialSpec::Kind::TabulatedFile;
    p.path = tok[1];
    return p;
  }
  fail(e, "expected 'morse D_e a r_e [offset]' or 'tabulated <path>'");
}

struct ParseState {
  RunConfig cfg;
  std::set<std::string> seen;
  bool from_preset = false;

  bool saw(const std::string& k) const { return seen.count(k) > 0; }
};

void apply_entry(ParseState& st, const Entry& e) {
  RunConfig& c = st.cfg;
  const std::string id = e.section + "." + e.key;
  st.seen.insert(id);

  if (e.section == "system") {
    if (e.key == "preset") return;  // handled in the seeding pass
    if (e.key == "mass") c.mass = quantity(e, Dim::Plain);
    else if (e.key == "r_min") c.r_min = quantity(e, Dim::Length);
    else if (e.key == "r_max") c.r_max = quantity(e, Dim::Length);
    else if (e.key == "n_points") c.n_points = integer(e);
    else if (e.key == "ground") c.ground = potential_spec(e);
    else if (e.key == "excited") c.excited = potential_spec(e);
    else if (e.key == "electronic_gap") c.electronic_gap = quantity(e, Dim::Energy);
    else if (e.key == "dipole") c.dipole = quantity(e, Dim::Dipole);
    else if (e.key == "n_ground") c.n_ground = integer(e);
    else if (e.key == "n_excited") c.n_excited = integer(e);
    else fail(e, "unknown key in [system]");
  } else if (e.section == "pulse") {
    if (e.key == "t_final") c.t_final = quantity(e, Dim::Time);
    else if (e.key == "n_steps") c.n_steps = integer(e);
    else if (e.key == "center") c.center = quantity(e, Dim::Time);
    else if (e.key == "fwhm") c.fwhm = quantity(e, Dim::Time);
    else if (e.key == "peak") c.peak = quantity(e, Dim::Plain);
    else if (e.key == "detuning") c.detuning = quantity(e, Dim::Energy);
    else if (e.key == "carrier") c.carrier = quantity(e, Dim::Energy);
    else if (e.key == "t_ramp") c.t_ramp = quantity(e, Dim::Time);
    else if (e.key == "beam_area") c.beam_area_um2 = quantity(e, Dim::Area);
    else fail(e, "unknown key in [pulse]");
  } else if (e.section == "functional") {
    if (e.key == "variant") {
      const std::string v = trim(e.value);
      if (v == "assembly" || v == "ass") c.functional.variant = Variant::Assembly;
      else if (v == "symmetrized" || v == "sym") c.functional.variant = Variant::Symmetrized;
      else fail(e, "variant must be 'assembly' or 'symmetrized'");
    } else if (e.key == "n_max") c.functional.n_max = integer(e);
    else if (e.key == "n_star") c.functional.n_star = integer(e);
    else if (e.key == "target") c.functional.target = integer(e);
    else if (e.key == "lambda_ss") c.functional.lambda_ss = quantity(e, Dim::Plain);
    else if (e.key == "lambda_leak") c.functional.lambda_leak = quantity(e, Dim::Plain);
    else if (e.key == "lambda_yield") c.functional.lambda_yield = quantity(e, Dim::Plain);
    else if (e.key == "lambda_balance" || e.key == "lambda_sym" || e.key == "lambda_ass") {
      st.seen.insert("functional.lambda_balance");
      c.functional.lambda_balance = quantity(e, Dim::Plain);
    } else if (e.key == "assembly_overlap") {
      const std::string v = trim(e.value);
      if (v == "real") c.functional.assembly_form = OverlapForm::RealPart;
      else if (v == "modulus") c.functional.assembly_form = OverlapForm::SquareModulus;
      else fail(e, "assembly_overlap must be 'real' or 'modulus'");
    } else fail(e, "unknown key in [functional]");
  } else if (e.section == "krotov") {
    if (e.key == "lambda") c.krotov.lambda = quantity(e, Dim::Plain);
    else if (e.key == "max_iterations") c.krotov.max_iterations = integer(e);
    else if (e.key == "tol_delta_j") c.krotov.tol_delta_j = quantity(e, Dim::Plain);
    else if (e.key == "tol_mono") c.krotov.tol_mono = quantity(e, Dim::Plain);
    else fail(e, "unknown key in [krotov]");
  } else if (e.section == "cooling") {
    if (e.key == "initial") {
      const auto tok = tokens(e.value);
      if (tok.size() == 3 && tok[0] == "equipartition") {
        c.cool_lo = static_cast<int>(number(e, tok[1]));
        c.cool_hi = static_cast<int>(number(e, tok[2]));
        c.custom_initial.clear();
      } else if (tok.size() >= 2 && tok[0] == "custom") {
        c.custom_initial.clear();
        for (std::size_t i = 1; i < tok.size(); ++i) {
          c.custom_initial.push_back(number(e, tok[i]));
        }
      } else {
        fail(e, "expected 'equipartition <lo> <hi>' or 'custom p0 p1 ...'");
      }
    } else if (e.key == "n_cycles") c.n_cycles = integer(e);
    else fail(e, "unknown key in [cooling]");
  } else if (e.section == "output") {
    if (e.key == "directory") c.out_dir = trim(e.value);
    else if (e.key == "dump_trajectories") c.dump_trajectories = integer(e) != 0;
    else fail(e, "unknown key in [output]");
  } else {
    fail(e, "unknown section [" + e.section + "]");
  }
}

RunConfig skeleton_config() {
  RunConfig c;
  c.krotov.max_iterations = 1000;
  c.krotov.tol_delta_j = 1e-10;
  c.krotov.tol_mono = 1e-10;
  c.beam_area_um2 = 100.0;  // arbitrary documented default focusing area
  return c;
}

}  // namespace

std::vector<std::string> preset_names() { return {"compact-parabola", "diffuse"}; }

RunConfig preset_config(const std::string& name) {
  RunConfig c = skeleton_config();
  c.preset = name;
  if (name == "compact-parabola") {
    // Two nearly nested Morse curves: small displacement, near-diagonal
    // Franck-Condon map, emission funnels downward.
    c.mass = 10000;
    c.r_min = 3.5;
    c.r_max = 14.0;
    c.n_points = 256;
    c.ground = {PotentialSpec::Kind::Morse, 0.022, 0.70, 6.00, 0.0, ""};
    c.excited = {PotentialSpec::Kind::Morse, 0.018, 0.65, 6.15, 0.0, ""};
    c.electronic_gap = 0.06;
    c.dipole = 1.0;
    c.n_ground = 26;
    c.n_excited = 18;
    c.t_final = 60000;
    c.n_steps = 6000;
    c.center = 30000;
    c.fwhm = 9000;
    c.peak = 1.2e-4;
    c.detuning = 0;
    c.carrier = 0.0582;  // on the dv = -1 ladder, below the 0 -> 0 line
    c.t_ramp = 3000;
    c.krotov.lambda = 1500;
    c.krotov.max_iterations = 300;
  } else if (name == "diffuse") {
    // Shallow, strongly displaced excited state: broad Franck-Condon map
    // biased toward higher ground levels, the heating-prone regime.
    c.mass = 10000;
    c.r_min = 3.0;
    c.r_max = 16.0;
    c.n_points = 256;
    c.ground = {PotentialSpec::Kind::Morse, 0.020, 0.60, 5.50, 0.0, ""};
    c.excited = {PotentialSpec::Kind::Morse, 0.0125, 0.53, 6.16, 0.0, ""};
    c.electronic_gap = 0.06;
    c.dipole = 1.0;
    c.n_ground = 28;
    c.n_excited = 16;
    c.t_final = 80000;
    c.n_steps = 8000;
    c.center = 40000;
    c.fwhm = 1100;  // broad enough to pump every low level, target included
    c.peak = 6e-4;
    c.detuning = 0;
    c.carrier = 0.0598;
    c.t_ramp = 4000;
    c.krotov.lambda = 1500;
    c.krotov.max_iterations = 300;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  c.functional.variant = Variant::Assembly;
  c.functional.n_max = 5;
  c.functional.n_star = 1;
  c.functional.lambda_ss = 1;
  c.functional.lambda_leak = 1;
  c.functional.lambda_yield = 1;
  c.functional.lambda_balance = 1;
  c.cool_lo = 1;
  c.cool_hi = 10;
  c.n_cycles = 200;
  return c;
}

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line, section;
  std::vector<Entry> entries;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(name + ":" + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": expected 'key = value' (got '" + line + "')");
    }
    if (section.empty()) {
      throw ConfigError(name + ":" + std::to_string(lineno) + ": key outside any [section]");
    }
    Entry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    e.where = name + ":" + std::to_string(lineno);
    if (e.key.empty()) throw ConfigError(e.where + ": empty key");
    if (e.value.empty()) throw ConfigError(e.where + ": empty value for key '" + e.key + "'");
    entries.push_back(std::move(e));
  }

  // Seed from the preset when one is named, then let explicit keys override.
  ParseState st;
  st.cfg = skeleton_config();
  for (const auto& e : entries) {
    if (e.section == "system" && e.key == "preset") {
      try {
        st.cfg = preset_config(trim(e.value));
      } catch (const ConfigError&) {
        throw ConfigError(e.where + ": unknown preset '" + trim(e.value) + "'");
      }
      st.from_preset = true;
    }
  }
  for (const auto& e : entries) apply_entry(st, e);

  // Weight defaults follow the variant unless set explicitly.
  if (!st.from_preset || st.saw("functional.variant")) {
    const bool sym = st.cfg.functional.variant == Variant::Symmetrized;
    if (!st.saw("functional.lambda_ss")) st.cfg.functional.lambda_ss = sym ? 2.0 : 1.0;
    if (!st.saw("functional.lambda_leak")) st.cfg.functional.lambda_leak = 1.0;
    if (!st.saw("functional.lambda_yield")) st.cfg.functional.lambda_yield = sym ? 0.4 : 1.0;
    if (!st.saw("functional.lambda_balance")) st.cfg.functional.lambda_balance = 1.0;
  }

  if (!st.from_preset) {
    const char* required[] = {"system.mass", "system.r_min", "system.r_max",
                              "system.n_points", "system.ground", "system.excited",
                              "system.electronic_gap", "pulse.t_final", "pulse.n_steps",
                              "pulse.center", "pulse.fwhm", "pulse.peak", "pulse.carrier",
                              "system.n_ground", "system.n_excited"};
    for (const char* r : required) {
      if (!st.saw(r)) {
        throw ConfigError(name + ": missing required key '" + std::string(r) +
                          "' (no preset selected)");
      }
    }
  }

  st.cfg.validate();
  return st.cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void RunConfig::validate() const {
  SpatialGrid grid(r_min, r_max, n_points);  // checks bounds and power of two
  const Potential pg = ground.build();
  const Potential pe = excited.build();
  pg.sample(grid);
  pe.sample(grid);
  if (!(mass > 0)) throw ConfigError("config: mass must be positive");
  if (n_ground < 1 || n_excited < 1) {
    throw ConfigError("config: n_ground and n_excited must be >= 1");
  }
  if (!(electronic_gap > 0)) throw ConfigError("config: electronic_gap must be positive");
  TimeGrid tg(t_final, n_steps);
  if (!(center > 0 && center < t_final)) {
    throw ConfigError("config: pulse center must lie inside (0, t_final)");
  }
  if (!(fwhm > 0)) throw ConfigError("config: pulse fwhm must be positive");
  const double ramp = t_ramp > 0 ? t_ramp : t_final / 20.0;
  ShapeFunction(t_final, ramp);
  functional.validate(n_ground);
  krotov.validate();
  if (beam_area_um2 && !(*beam_area_um2 > 0)) {
    throw ConfigError("config: beam_area must be positive");
  }
  if (!custom_initial.empty()) {
    if (static_cast<int>(custom_initial.size()) != n_ground) {
      throw ConfigError("config: custom initial distribution must list n_ground values");
    }
    double sum = 0;
    for (double p : custom_initial) {
      if (p < 0) throw ConfigError("config: initial populations must be >= 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("config: initial populations must sum to 1");
    }
  } else if (cool_lo < 0 || cool_hi >= n_ground || cool_lo > cool_hi) {
    throw ConfigError("config: cooling equipartition range must satisfy 0 <= lo <= hi < n_ground");
  }
  if (n_cycles < 0) throw ConfigError("config: n_cycles must be >= 0");
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  o << "[system]\n";
  if (!c.preset.empty()) o << "preset = " << c.preset << "\n";
  o << "mass = " << g17(c.mass) << "\n";
  o << "r_min = " << g17(c.r_min) << "\n";
  o << "r_max = " << g17(c.r_max) << "\n";
  o << "n_points = " << c.n_points << "\n";
  const auto pot = [&](const PotentialSpec& p) -> std::string {
    if (p.kind == PotentialSpec::Kind::Morse) {
      return "morse " + g17(p.d_e) + " " + g17(p.a) + " " + g17(p.r_e) + " " + g17(p.offset);
    }
    return "tabulated " + p.path;
  };
  o << "ground = " << pot(c.ground) << "\n";
  o << "excited = " << pot(c.excited) << "\n";
  o << "electronic_gap = " << g17(c.electronic_gap) << "\n";
  o << "dipole = " << g17(c.dipole) << "\n";
  o << "n_ground = " << c.n_ground << "\n";
  o << "n_excited = " << c.n_excited << "\n";
  o << "\n[pulse]\n";
  o << "t_final = " << g17(c.t_final) << "\n";
  o << "n_steps = " << c.n_steps << "\n";
  o << "center = " << g17(c.center) << "\n";
  o << "fwhm = " << g17(c.fwhm) << "\n";
  o << "peak = " << g17(c.peak) << "\n";
  o << "detuning = " << g17(c.detuning) << "\n";
  o << "carrier = " << g17(c.carrier) << "\n";
  if (c.t_ramp > 0) o << "t_ramp = " << g17(c.t_ramp) << "\n";
  if (c.beam_area_um2) o << "beam_area = " << g17(*c.beam_area_um2) << " um2\n";
  o << "\n[functional]\n";
  o << "variant = "
    << (c.functional.variant == Variant::Assembly ? "assembly" : "symmetrized") << "\n";
  o << "n_max = " << c.functional.n_max << "\n";
  o << "n_star = " << c.functional.n_star << "\n";
  o << "target = " << c.functional.target << "\n";
  o << "lambda_ss = " << g17(c.functional.lambda_ss) << "\n";
  o << "lambda_leak = " << g17(c.functional.lambda_leak) << "\n";
  o << "lambda_yield = " << g17(c.functional.lambda_yield) << "\n";
  o << "lambda_balance = " << g17(c.functional.lambda_balance) << "\n";
  o << "assembly_overlap = "
    << (c.functional.assembly_form == OverlapForm::RealPart ? "real" : "modulus") << "\n";
  o << "\n[krotov]\n";
  o << "lambda = " << g17(c.krotov.lambda) << "\n";
  o << "max_iterations = " << c.krotov.max_iterations << "\n";
  o << "tol_delta_j = " << g17(c.krotov.tol_delta_j) << "\n";
  o << "tol_mono = " << g17(c.krotov.tol_mono) << "\n";
  o << "\n[cooling]\n";
  if (!c.custom_initial.empty()) {
    o << "initial = custom";
    for (double p : c.custom_initial) o << " " << g17(p);
    o << "\n";
  } else {
    o << "initial = equipartition " << c.cool_lo << " " << c.cool_hi << "\n";
  }
  o << "n_cycles = " << c.n_cycles << "\n";
  o << "\n[output]\n";
  o << "directory = " << c.out_dir << "\n";
  o << "dump_trajectories = " << (c.dump_trajectories ? 1 : 0) << "\n";
  return o.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

}  // namespace vibcool
