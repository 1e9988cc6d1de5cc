#ifndef VIBCOOL_RUNNER_HPP
#define VIBCOOL_RUNNER_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "vibcool/config.hpp"
#include "vibcool/cooling.hpp"
#include "vibcool/emission.hpp"
#include "vibcool/krotov.hpp"
#include "vibcool/pulse.hpp"
#include "vibcool/system.hpp"

namespace vibcool {

// Writes/reads the pulse CSV (t_fs, Re, Im, |eps|, phase). The header
// comments carry the grid and carrier at full precision, so a written pulse
// loads back bit-identically.
void write_pulse_csv(const std::string& path, const Pulse& pulse,
                     const std::string& cfg_hash);
Pulse load_pulse_csv(const std::string& path);

// Debug dump of per-level populations along a trajectory, one row per
// sampled node.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::string& cfg_hash, int row_stride = 1);

// Drives the configured stages and emits the CSV artifacts. Intermediate
// products (bases, maps, optimized pulse) are cached across stages so
// `pipeline` shares work.
class Runner {
 public:
  explicit Runner(RunConfig cfg);

  // One line per optimizer iteration and occasional stage notes.
  void set_progress(std::function<void(const std::string&)> fn) { progress_ = std::move(fn); }
  void set_out_dir(const std::string& dir) { cfg_.out_dir = dir; }

  // stage: solve | fcmap | optimize | cool | pipeline.
  void run(const std::string& stage);

  // Numeric results of completed stages ("cooling.cycles_to_90pct", ...).
  double metric(const std::string& name) const;
  const std::map<std::string, double>& metrics() const { return metrics_; }

  const RunConfig& config() const { return cfg_; }

 private:
  void stage_solve();
  void stage_fcmap();
  void stage_optimize();
  void stage_cool();

  void ensure_bases();
  void ensure_system();
  void ensure_guess();
  const Pulse& cooling_pulse();
  void note(const std::string& line);
  std::string out_path(const std::string& file) const;

  RunConfig cfg_;
  std::string hash_;
  std::function<void(const std::string&)> progress_;
  std::map<std::string, double> metrics_;

  std::optional<VibrationalBasis> ground_, excited_;
  std::optional<FranckCondonMap> fc_;
  std::optional<EmissionModel> emission_;
  std::optional<CoupledSystem> sys_;
  std::optional<Pulse> guess_;
  std::optional<OptimizationResult> opt_;
  std::optional<Pulse> loaded_pulse_;
};

}  // namespace vibcool

#endif
