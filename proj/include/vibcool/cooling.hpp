#ifndef VIBCOOL_COOLING_HPP
#define VIBCOOL_COOLING_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "vibcool/emission.hpp"
#include "vibcool/pulse.hpp"
#include "vibcool/system.hpp"

namespace vibcool {

// Incoherent population distribution over ground vibrational levels, plus
// the probability that has left the retained levels for good.
struct CoolingState {
  Eigen::VectorXd populations;
  double lost = 0;
  int cycle_index = 0;

  double purity() const { return populations.squaredNorm(); }
  double total() const { return populations.sum() + lost; }
};

// Linear map taking pre-pulse ground populations to post-emission ground
// populations for one excitation/spontaneous-emission cycle. Column m sums
// to 1 - lost_per_level[m].
struct CycleMap {
  Eigen::MatrixXd map;             // n_ground x n_ground
  Eigen::VectorXd lost_per_level;  // population stuck in non-decaying levels

  // Composes the per-level pulse response (ground_response(m', m) and
  // excited_response(l, m), populations after the pulse started from level
  // m) with the emission branching rows A(l, .) / gamma(l).
  static CycleMap compose(const Eigen::MatrixXd& ground_response,
                          const Eigen::MatrixXd& excited_response,
                          const EmissionModel& emission);
};

// Propagates every retained ground level through the pulse and routes the
// excited populations through spontaneous emission. Ground-state coherences
// are dropped: only populations carry over to the next cycle.
CycleMap build_cycle_map(const CoupledSystem& sys, const Pulse& pulse,
                         const EmissionModel& emission);

struct CoolingSummary {
  std::optional<int> cycles_to_90pct;
  double max_target_population = 0;
  int cycles_at_max = 0;
  double final_purity = 0;
};

struct CoolingHistory {
  std::vector<CoolingState> states;  // initial state included
  CoolingSummary summary;
};

CoolingHistory simulate_cooling(const CoolingState& initial, const CycleMap& map,
                                int n_cycles, int target = 0);

// Equal population over ground levels lo..hi, everything else zero.
CoolingState equipartition_state(int n_ground, int lo, int hi);

}  // namespace vibcool

#endif
