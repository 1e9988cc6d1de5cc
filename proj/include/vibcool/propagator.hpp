#ifndef VIBCOOL_PROPAGATOR_HPP
#define VIBCOOL_PROPAGATOR_HPP

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "vibcool/pulse.hpp"
#include "vibcool/system.hpp"

namespace vibcool {

// Wavepacket amplitudes over the two truncated eigenbases.
struct TwoSurfaceState {
  Eigen::VectorXcd g;
  Eigen::VectorXcd e;

  double squared_norm() const { return g.squaredNorm() + e.squaredNorm(); }

  static TwoSurfaceState zero(const CoupledSystem& sys);
  static TwoSurfaceState ground_level(const CoupledSystem& sys, int m);
};

std::complex<double> inner(const TwoSurfaceState& a, const TwoSurfaceState& b);

// Advances states by exp(-i H(eps) dt) for a field held constant over the
// step, via a Chebyshev expansion truncated at coefficient magnitude `tol`
// (default keeps the local error near machine precision). Negative dt
// propagates backward under the same Hamiltonian.
class Propagator {
 public:
  explicit Propagator(const CoupledSystem& sys, double tol = 1e-15);

  void step_inplace(TwoSurfaceState& state, std::complex<double> eps, double dt) const;
  TwoSurfaceState step(const TwoSurfaceState& state, std::complex<double> eps,
                       double dt) const;

  const CoupledSystem& system() const { return *sys_; }

 private:
  void apply_h(std::complex<double> eps, const TwoSurfaceState& in,
               TwoSurfaceState& out) const;

  const CoupledSystem* sys_;
  Eigen::MatrixXd eta_t_;      // transposed coupling, cached for the g-block product
  Eigen::VectorXd diag_g_, diag_e_;
  double radius_g_, radius_e_;  // Gershgorin coupling radii per unit |eps|
  double tol_;

  mutable TwoSurfaceState w0_, w1_, w2_, acc_;  // Chebyshev workspace
};

// States at the nodes of a time grid, either all of them (stride 1) or
// strided checkpoints from which intermediate nodes are re-propagated.
class Trajectory {
 public:
  Trajectory(const CoupledSystem& sys, Pulse pulse, bool forward, int stride);

  const TwoSurfaceState& final_state() const { return states_.back(); }
  const TwoSurfaceState& initial_state() const { return states_.front(); }

  // State at node k (time k*dt). O(1) for stride 1.
  TwoSurfaceState state_at(int k) const;

  const Pulse& pulse() const { return pulse_; }
  int n_nodes() const { return pulse_.grid.n_nodes(); }
  int stride() const { return stride_; }

 private:
  friend Trajectory propagate_forward(const CoupledSystem&, const TwoSurfaceState&,
                                      const Pulse&, int);
  friend Trajectory propagate_backward(const CoupledSystem&, const TwoSurfaceState&,
                                       const Pulse&, int);

  Propagator prop_;
  Pulse pulse_;
  bool forward_;
  int stride_;
  std::vector<TwoSurfaceState> states_;  // checkpoints, node order 0..N
};

// Propagates |initial> from t=0 to t=T under the pulse. Throws NumericError
// naming the first bad step if the state stops being finite.
Trajectory propagate_forward(const CoupledSystem& sys, const TwoSurfaceState& initial,
                             const Pulse& pulse, int stride = 1);

// Propagates a costate from t=T back to t=0 under the same Hamiltonian.
Trajectory propagate_backward(const CoupledSystem& sys,
                              const TwoSurfaceState& final_costate, const Pulse& pulse,
                              int stride = 1);

}  // namespace vibcool

#endif
