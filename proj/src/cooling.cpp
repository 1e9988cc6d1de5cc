#include "vibcool/cooling.hpp"

#include <cmath>
#include <string>

#include "vibcool/errors.hpp"
#include "vibcool/propagator.hpp"

namespace vibcool {

CycleMap CycleMap::compose(const Eigen::MatrixXd& ground_response,
                           const Eigen::MatrixXd& excited_response,
                           const EmissionModel& emission) {
  const int ng = static_cast<int>(ground_response.rows());
  const int ne = static_cast<int>(excited_response.rows());
  if (ground_response.cols() != ng || excited_response.cols() != ng) {
    throw ConfigError("cycle map: response matrices must share the ground dimension");
  }
  if (emission.einstein.rows() != ne || emission.einstein.cols() != ng) {
    throw ConfigError("cycle map: emission model does not match the responses");
  }

  CycleMap cm;
  cm.map = ground_response;
  cm.lost_per_level.setZero(ng);
  for (int m = 0; m < ng; ++m) {
    for (int l = 0; l < ne; ++l) {
      const double p = excited_response(l, m);
      if (p == 0.0) continue;
      if (emission.gamma[l] > 0) {
        cm.map.col(m) += (p / emission.gamma[l]) * emission.einstein.row(l).transpose();
      } else {
        // A level that cannot emit traps its population outside the cycle.
        cm.lost_per_level[m] += p;
      }
    }
    // Whatever the propagation did not keep on the retained levels is gone.
    // A tiny numerical overshoot of the norm is rescaled away instead, so
    // that repeated application of the map conserves probability.
    const double total = cm.map.col(m).sum() + cm.lost_per_level[m];
    if (total <= 1.0) {
      cm.lost_per_level[m] += 1.0 - total;
    } else {
      cm.map.col(m) /= total;
      cm.lost_per_level[m] /= total;
    }
  }
  return cm;
}

CycleMap build_cycle_map(const CoupledSystem& sys, const Pulse& pulse,
                         const EmissionModel& emission) {
  const int ng = sys.n_ground();
  const int ne = sys.n_excited();
  Eigen::MatrixXd ground_response(ng, ng), excited_response(ne, ng);
  for (int m = 0; m < ng; ++m) {
    const Trajectory traj =
        propagate_forward(sys, TwoSurfaceState::ground_level(sys, m), pulse,
                          pulse.grid.n_steps);  // only the final state is needed
    const TwoSurfaceState& fin = traj.final_state();
    ground_response.col(m) = fin.g.cwiseAbs2();
    excited_response.col(m) = fin.e.cwiseAbs2();
  }
  return CycleMap::compose(ground_response, excited_response, emission);
}

CoolingHistory simulate_cooling(const CoolingState& initial, const CycleMap& map,
                                int n_cycles, int target) {
  const int ng = static_cast<int>(map.map.rows());
  if (initial.populations.size() != ng) {
    throw ConfigError("simulate_cooling: state dimension does not match the map");
  }
  if (target < 0 || target >= ng) throw ConfigError("simulate_cooling: bad target index");
  if (std::abs(initial.total() - 1.0) > 1e-9) {
    throw ConfigError("simulate_cooling: initial state is not normalized");
  }

  CoolingHistory hist;
  hist.states.reserve(n_cycles + 1);
  hist.states.push_back(initial);
  hist.states.front().cycle_index = 0;

  CoolingState cur = hist.states.front();
  CoolingSummary sum;
  sum.max_target_population = cur.populations[target];
  sum.cycles_at_max = 0;
  if (cur.populations[target] >= 0.9) sum.cycles_to_90pct = 0;

  for (int c = 1; c <= n_cycles; ++c) {
    CoolingState next;
    next.populations = map.map * cur.populations;
    next.lost = cur.lost + map.lost_per_level.dot(cur.populations);
    next.cycle_index = c;
    cur = next;
    hist.states.push_back(cur);

    const double p0 = cur.populations[target];
    if (!sum.cycles_to_90pct && p0 >= 0.9) sum.cycles_to_90pct = c;
    if (p0 > sum.max_target_population) {
      sum.max_target_population = p0;
      sum.cycles_at_max = c;
    }
  }
  sum.final_purity = cur.purity();
  hist.summary = sum;
  return hist;
}

CoolingState equipartition_state(int n_ground, int lo, int hi) {
  if (lo < 0 || hi >= n_ground || lo > hi) {
    throw ConfigError("equipartition: need 0 <= lo <= hi < n_ground");
  }
  CoolingState s;
  s.populations.setZero(n_ground);
  const double w = 1.0 / (hi - lo + 1);
  for (int m = lo; m <= hi; ++m) s.populations[m] = w;
  return s;
}

}  // namespace vibcool
