#include "vibcool/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vibcool/csv.hpp"
#include "vibcool/errors.hpp"
#include "vibcool/units.hpp"

namespace vibcool {

namespace fs = std::filesystem;

void write_pulse_csv(const std::string& path, const Pulse& pulse,
                     const std::string& cfg_hash) {
  CsvWriter w(path);
  w.comment("vibcool pulse");
  w.comment("config=" + cfg_hash);
  w.comment("omega_L_hartree=" + format_full(pulse.omega_L));
  w.comment("t_final_au=" + format_full(pulse.grid.t_final));
  w.comment("n_steps=" + std::to_string(pulse.grid.n_steps));
  w.comment("units: t fs, field atomic units");
  w.header({"t_fs", "re_eps", "im_eps", "abs_eps", "phase"});
  for (int k = 0; k < pulse.grid.n_nodes(); ++k) {
    const auto e = pulse.envelope[k];
    w.row({pulse.grid.node(k) * units::au_time_to_fs, e.real(), e.imag(), std::abs(e),
           std::arg(e)});
  }
  w.close();
}

Pulse load_pulse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pulse file: " + path);
  double omega_l = 0, t_final = 0;
  int n_steps = 0;
  std::vector<std::complex<double>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tok;
      ls >> tok;
      const auto grab = [&](const char* key, auto& dst) {
        const std::string prefix(key);
        if (tok.rfind(prefix, 0) == 0) {
          dst = static_cast<std::remove_reference_t<decltype(dst)>>(
              std::stod(tok.substr(prefix.size())));
        }
      };
      grab("omega_L_hartree=", omega_l);
      grab("t_final_au=", t_final);
      grab("n_steps=", n_steps);
      continue;
    }
    if (line.find("t_fs") != std::string::npos) continue;  // header row
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 3) throw ConfigError(path + ": malformed pulse row");
    samples.emplace_back(vals[1], vals[2]);
  }
  if (n_steps <= 0 || t_final <= 0) {
    throw ConfigError(path + ": pulse file lacks the grid header comments");
  }
  if (static_cast<int>(samples.size()) != n_steps + 1) {
    throw ConfigError(path + ": expected " + std::to_string(n_steps + 1) + " samples, got " +
                      std::to_string(samples.size()));
  }
  Pulse p{TimeGrid(t_final, n_steps), Eigen::VectorXcd(n_steps + 1), omega_l};
  for (int k = 0; k <= n_steps; ++k) p.envelope[k] = samples[k];
  return p;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::string& cfg_hash, int row_stride) {
  CsvWriter w(path);
  w.comment("vibcool trajectory populations");
  w.comment("config=" + cfg_hash);
  w.comment("units: t fs, dimensionless populations");
  const TwoSurfaceState first = traj.state_at(0);
  std::vector<std::string> head{"t_fs"};
  for (int m = 0; m < first.g.size(); ++m) head.push_back("g" + std::to_string(m));
  for (int n = 0; n < first.e.size(); ++n) head.push_back("e" + std::to_string(n));
  w.header(head);
  const int last = traj.n_nodes() - 1;
  for (int k = 0; k <= last; k += std::max(1, row_stride)) {
    const TwoSurfaceState s = traj.state_at(k);
    std::vector<double> row{traj.pulse().grid.node(k) * units::au_time_to_fs};
    for (int m = 0; m < s.g.size(); ++m) row.push_back(std::norm(s.g[m]));
    for (int n = 0; n < s.e.size(); ++n) row.push_back(std::norm(s.e[n]));
    w.row(row);
  }
  w.close();
}

Runner::Runner(RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  hash_ = config_hash(cfg_);
}

void Runner::note(const std::string& line) {
  if (progress_) progress_(line);
}

std::string Runner::out_path(const std::string& file) const {
  return (fs::path(cfg_.out_dir) / file).string();
}

void Runner::ensure_bases() {
  if (ground_) return;
  const SpatialGrid grid(cfg_.r_min, cfg_.r_max, cfg_.n_points);
  ground_ = solve_vibrational(cfg_.ground.build(), grid, cfg_.mass, cfg_.n_ground);
  excited_ = solve_vibrational(cfg_.excited.build(), grid, cfg_.mass, cfg_.n_excited);
}

void Runner::ensure_system() {
  if (sys_) return;
  ensure_bases();
  if (!fc_) fc_ = franck_condon_map(*ground_, *excited_, cfg_.dipole);
  sys_ = CoupledSystem::from_bases(*ground_, *excited_, *fc_, cfg_.electronic_gap,
                                   cfg_.carrier);
  emission_ = build_emission_model(*fc_, *ground_, *excited_, cfg_.electronic_gap);
}

void Runner::ensure_guess() {
  if (guess_) return;
  const TimeGrid grid(cfg_.t_final, cfg_.n_steps);
  const double ramp = cfg_.t_ramp > 0 ? cfg_.t_ramp : cfg_.t_final / 20.0;
  guess_ = apply_shape(
      gaussian_guess(grid, cfg_.center, cfg_.fwhm, cfg_.peak, cfg_.detuning, cfg_.carrier),
      ShapeFunction(cfg_.t_final, ramp));
}

void Runner::stage_solve() {
  ensure_bases();
  CsvWriter w(out_path("levels.csv"));
  w.comment("vibcool vibrational levels");
  w.comment("config=" + hash_);
  w.comment("units: energy hartree / cm-1, measured from each potential zero");
  w.header({"surface", "v", "energy_hartree", "energy_cm1"});
  for (int v = 0; v < ground_->n_levels; ++v) {
    w.raw_row({"ground", std::to_string(v), format_full(ground_->energies[v]),
               format_full(ground_->energies[v] * units::hartree_to_cm1)});
  }
  for (int v = 0; v < excited_->n_levels; ++v) {
    w.raw_row({"excited", std::to_string(v), format_full(excited_->energies[v]),
               format_full(excited_->energies[v] * units::hartree_to_cm1)});
  }
  w.close();
}

void Runner::stage_fcmap() {
  ensure_system();
  CsvWriter w(out_path("fcmap.csv"));
  w.comment("vibcool Franck-Condon map: eta(v', v'') in atomic units");
  w.comment("config=" + hash_);
  std::vector<std::string> head{"vprime\\vpp"};
  for (int m = 0; m < fc_->n_ground(); ++m) head.push_back(std::to_string(m));
  w.header(head);
  for (int n = 0; n < fc_->n_excited(); ++n) {
    std::vector<std::string> row{std::to_string(n)};
    for (int m = 0; m < fc_->n_ground(); ++m) row.push_back(format_full(fc_->eta(n, m)));
    w.raw_row(row);
  }
  w.close();
}

void Runner::stage_optimize() {
  ensure_system();
  ensure_guess();
  const bool assembly = cfg_.functional.variant == Variant::Assembly;
  const std::string balance_name = assembly ? "J_ass" : "J_sym";

  KrotovOptions opts = cfg_.krotov;
  if (opts.t_ramp <= 0) opts.t_ramp = cfg_.t_ramp > 0 ? cfg_.t_ramp : cfg_.t_final / 20.0;

  const auto on_iter = [&](const IterationRecord& r) {
    if (!progress_) return;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "iter %4d  J_T=%.8e  J_ss=%.3e  J_leak=%.3e  J_yield=%.3e  %s=%.3e",
                  r.iteration, r.terms.j_total, r.terms.j_ss, r.terms.j_leak,
                  r.terms.j_yield, balance_name.c_str(), r.terms.j_balance);
    progress_(buf);
  };

  opt_ = optimize(*sys_, *guess_, cfg_.functional, opts, on_iter);

  CsvWriter w(out_path("convergence.csv"));
  w.comment("vibcool optimization trace (" +
            std::string(assembly ? "assembly" : "symmetrized") + " variant)");
  w.comment("config=" + hash_);
  w.comment("units: dimensionless functional values");
  w.header({"iteration", "J_T", "J_ss", "J_leak", "J_yield", balance_name});
  for (const auto& r : opt_->records) {
    w.row({static_cast<double>(r.iteration), r.terms.j_total, r.terms.j_ss, r.terms.j_leak,
           r.terms.j_yield, r.terms.j_balance});
  }
  w.close();

  write_pulse_csv(out_path("pulse.csv"), opt_->pulse, hash_);

  const Spectrum spec = spectrum(opt_->pulse);
  const double peak = spec.intensity.maxCoeff();
  CsvWriter sw(out_path("spectrum.csv"));
  sw.comment("vibcool pulse spectrum, intensity normalized to peak 1");
  sw.comment("config=" + hash_);
  sw.comment("units: wavenumber cm-1");
  sw.header({"wavenumber_cm1", "intensity"});
  for (int j = 0; j < spec.wavenumber_cm1.size(); ++j) {
    sw.row({spec.wavenumber_cm1[j], peak > 0 ? spec.intensity[j] / peak : 0.0});
  }
  sw.close();

  if (cfg_.dump_trajectories) {
    const int stride = std::max(1, cfg_.n_steps / 250);
    for (int n = 0; n <= cfg_.functional.n_max; ++n) {
      const auto traj = propagate_forward(
          *sys_, TwoSurfaceState::ground_level(*sys_, n), opt_->pulse, stride);
      write_trajectory_csv(out_path("trajectory_member_" + std::to_string(n) + ".csv"),
                           traj, hash_, stride);
    }
  }

  const auto& fin = opt_->records.back().terms;
  metrics_["krotov.iterations"] = opt_->iterations;
  metrics_["krotov.final_j_total"] = fin.j_total;
  metrics_["krotov.final_j_ss"] = fin.j_ss;
  metrics_["krotov.final_j_leak"] = fin.j_leak;
  metrics_["krotov.final_j_yield"] = fin.j_yield;
  metrics_["krotov.final_j_balance"] = fin.j_balance;
  const PulseEnergy en = pulse_energy(opt_->pulse, cfg_.beam_area_um2);
  metrics_["pulse.fluence_au"] = en.fluence_au;
  if (en.has_area) metrics_["pulse.energy_uj"] = en.microjoule;
  note("optimize: " + opt_->stop_reason + " after " + std::to_string(opt_->iterations) +
       " iterations, J_T=" + format_full(fin.j_total));
}

const Pulse& Runner::cooling_pulse() {
  if (opt_) return opt_->pulse;
  const std::string path = out_path("pulse.csv");
  if (fs::exists(path)) {
    note("cool: using optimized pulse from " + path);
    loaded_pulse_ = load_pulse_csv(path);
    return *loaded_pulse_;
  }
  note("cool: no optimized pulse available, using the guess pulse");
  ensure_guess();
  return *guess_;
}

void Runner::stage_cool() {
  ensure_system();
  const Pulse& pulse = cooling_pulse();
  const CycleMap map = build_cycle_map(*sys_, pulse, *emission_);

  CoolingState init;
  if (!cfg_.custom_initial.empty()) {
    init.populations =
        Eigen::Map<const Eigen::VectorXd>(cfg_.custom_initial.data(), cfg_.n_ground);
  } else {
    init = equipartition_state(cfg_.n_ground, cfg_.cool_lo, cfg_.cool_hi);
  }
  const CoolingHistory hist =
      simulate_cooling(init, map, cfg_.n_cycles, cfg_.functional.target);

  CsvWriter w(out_path("cooling_history.csv"));
  w.comment("vibcool cooling cycles: ground-level populations per cycle");
  w.comment("config=" + hash_);
  w.comment("units: dimensionless populations");
  std::vector<std::string> head{"cycle"};
  for (int m = 0; m < cfg_.n_ground; ++m) head.push_back("p_" + std::to_string(m));
  head.push_back("lost");
  head.push_back("purity");
  w.header(head);
  for (const auto& s : hist.states) {
    std::vector<double> row{static_cast<double>(s.cycle_index)};
    for (int m = 0; m < cfg_.n_ground; ++m) row.push_back(s.populations[m]);
    row.push_back(s.lost);
    row.push_back(s.purity());
    w.row(row);
  }
  w.close();

  const auto& sum = hist.summary;
  std::ofstream js(out_path("cooling_summary.json"));
  if (!js) throw ConfigError("cannot open output file: " + out_path("cooling_summary.json"));
  js << "{\n";
  js << "  \"config\": \"" << hash_ << "\",\n";
  js << "  \"cycles_to_90pct\": "
     << (sum.cycles_to_90pct ? std::to_string(*sum.cycles_to_90pct) : "null") << ",\n";
  js << "  \"max_target_population\": " << format_full(sum.max_target_population) << ",\n";
  js << "  \"cycles_at_max\": " << sum.cycles_at_max << ",\n";
  js << "  \"final_purity\": " << format_full(sum.final_purity) << ",\n";
  js << "  \"final_lost\": " << format_full(hist.states.back().lost) << "\n";
  js << "}\n";
  js.close();

  metrics_["cooling.cycles_to_90pct"] =
      sum.cycles_to_90pct ? static_cast<double>(*sum.cycles_to_90pct) : -1.0;
  metrics_["cooling.max_target_population"] = sum.max_target_population;
  metrics_["cooling.cycles_at_max"] = sum.cycles_at_max;
  metrics_["cooling.final_purity"] = sum.final_purity;
  metrics_["cooling.final_lost"] = hist.states.back().lost;
  metrics_["cooling.final_target_population"] =
      hist.states.back().populations[cfg_.functional.target];
}

void Runner::run(const std::string& stage) {
  std::error_code ec;
  fs::create_directories(cfg_.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + cfg_.out_dir);

  // Echo the fully resolved configuration next to the artifacts.
  {
    std::ofstream eff(out_path("effective_config.cfg"));
    if (!eff) throw ConfigError("cannot write " + out_path("effective_config.cfg"));
    eff << "# effective configuration (hash " << hash_ << ")\n" << serialize_config(cfg_);
  }

  const std::string marker = out_path("INCOMPLETE");
  {
    std::ofstream m(marker);
    m << "stage " << stage << " in progress\n";
  }
  try {
    if (stage == "solve") {
      stage_solve();
    } else if (stage == "fcmap") {
      stage_fcmap();
    } else if (stage == "optimize") {
      stage_optimize();
    } else if (stage == "cool") {
      stage_cool();
    } else if (stage == "pipeline") {
      stage_solve();
      stage_fcmap();
      stage_optimize();
      stage_cool();
    } else {
      throw ConfigError("unknown stage '" + stage +
                        "' (use solve, fcmap, optimize, cool or pipeline)");
    }
  } catch (const ConfigError& err) {
    // Leave the INCOMPLETE marker in place and name the failing stage.
    throw ConfigError("stage '" + stage + "': " + err.what());
  } catch (const Error& err) {
    throw NumericError("stage '" + stage + "': " + err.what());
  }
  fs::remove(marker, ec);
}

double Runner::metric(const std::string& name) const {
  const auto it = metrics_.find(name);
  if (it == metrics_.end()) {
    throw ConfigError("unknown metric '" + name + "' (has the stage run?)");
  }
  return it->second;
}

}  // namespace vibcool
