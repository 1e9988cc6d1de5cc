#ifndef VIBCOOL_KROTOV_HPP
#define VIBCOOL_KROTOV_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "vibcool/functionals.hpp"
#include "vibcool/pulse.hpp"
#include "vibcool/system.hpp"

namespace vibcool {

// Controls of the iterative update. lambda is the step-size weight of the
// fluence-change cost; larger values mean smaller, safer field updates.
struct KrotovOptions {
  double lambda = 100.0;
  int max_iterations = 1000;
  double tol_delta_j = 1e-10;
  double tol_mono = 1e-10;
  double t_ramp = 0;  // shape-function ramp; 0 means T/20
  bool use_nonlinear_sigma = false;  // reserved; must stay false

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  Terms terms;
  double fluence_change = 0;  // integral lambda/S |eps - eps_prev|^2 dt
};

struct OptimizationResult {
  Pulse pulse;
  std::vector<IterationRecord> records;  // guess included, length iterations+1
  int iterations = 0;
  std::string stop_reason;
  double wall_seconds = 0;
};

using ProgressFn = std::function<void(const IterationRecord&)>;

// One field sample of the sequential update: the previous sample plus the
// shape-gated imaginary part of the costate/state coupling overlaps. chi and
// psi hold the ensemble members at one common time.
std::complex<double> update_step(const std::vector<TwoSurfaceState>& chi,
                                 const std::vector<TwoSurfaceState>& psi,
                                 const Eigen::MatrixXd& eta, double s_t, double lambda,
                                 std::complex<double> prev_eps);

// Iterates backward costate propagation and sequential-in-time forward
// propagation with immediate field update until the change of the total
// cost drops below tol_delta_j or max_iterations is reached. Throws
// NumericError if an iteration increases the cost by more than tol_mono.
OptimizationResult optimize(const CoupledSystem& sys, const Pulse& guess,
                            const FunctionalConfig& cfg, const KrotovOptions& opts,
                            ProgressFn progress = {});

}  // namespace vibcool

#endif
