#include "vibcool/propagator.hpp"

#include <cmath>
#include <string>

#include "vibcool/errors.hpp"

namespace vibcool {

using std::complex;

TwoSurfaceState TwoSurfaceState::zero(const CoupledSystem& sys) {
  return {Eigen::VectorXcd::Zero(sys.n_ground()), Eigen::VectorXcd::Zero(sys.n_excited())};
}

TwoSurfaceState TwoSurfaceState::ground_level(const CoupledSystem& sys, int m) {
  if (m < 0 || m >= sys.n_ground()) {
    throw ConfigError("ground_level: index " + std::to_string(m) + " out of range");
  }
  TwoSurfaceState s = zero(sys);
  s.g[m] = 1.0;
  return s;
}

complex<double> inner(const TwoSurfaceState& a, const TwoSurfaceState& b) {
  return a.g.dot(b.g) + a.e.dot(b.e);
}

namespace {

// Bessel functions J_0..J_kmax by Miller's downward recurrence, normalized
// with J_0 + 2*sum J_2k = 1. Good to ~1e-15 relative for the orders kept.
void bessel_j_array(double x, int kmax, std::vector<double>& out) {
  out.assign(kmax + 1, 0.0);
  if (x < 1e-14) {
    out[0] = 1.0;
    if (kmax >= 1) out[1] = 0.5 * x;
    return;
  }
  const int start = kmax + 18 + static_cast<int>(x);
  long double fp = 0.0L, fc = 1e-280L, norm = 0.0L;
  for (int k = start; k >= 0; --k) {
    const long double fm = (2.0L * (k + 1) / x) * fc - fp;
    fp = fc;
    fc = fm;
    if (k <= kmax) out[k] = static_cast<double>(fm);
    if (k % 2 == 0) norm += (k == 0 ? fm : 2.0L * fm);
    if (std::abs(static_cast<double>(fc)) > 1e280) {
      fp /= 1e280;
      fc /= 1e280;
      norm /= 1e280;
      for (auto& v : out) v /= 1e280;
    }
  }
  for (auto& v : out) v /= static_cast<double>(norm);
}

}  // namespace

Propagator::Propagator(const CoupledSystem& sys, double tol) : sys_(&sys), tol_(tol) {
  eta_t_ = sys.eta.transpose();
  diag_g_ = sys.e_ground;
  diag_e_ = sys.excited_detuning();
  radius_g_ = 0.0;
  for (int m = 0; m < sys.n_ground(); ++m) {
    radius_g_ = std::max(radius_g_, 0.5 * sys.eta.col(m).cwiseAbs().sum());
  }
  radius_e_ = 0.0;
  for (int n = 0; n < sys.n_excited(); ++n) {
    radius_e_ = std::max(radius_e_, 0.5 * sys.eta.row(n).cwiseAbs().sum());
  }
  w0_ = TwoSurfaceState::zero(sys);
  w1_ = w0_;
  w2_ = w0_;
  acc_ = w0_;
}

void Propagator::apply_h(complex<double> eps, const TwoSurfaceState& in,
                         TwoSurfaceState& out) const {
  const complex<double> half_eps = 0.5 * eps;
  const complex<double> half_eps_c = std::conj(half_eps);
  const int ng = sys_->n_ground();
  const int ne = sys_->n_excited();

  // Split the complex coupling products into two real mat-vecs per block.
  static thread_local Eigen::VectorXd er, ei, gr, gi, cg_re, cg_im, ce_re, ce_im;
  er = in.e.real();
  ei = in.e.imag();
  gr = in.g.real();
  gi = in.g.imag();
  cg_re.noalias() = eta_t_ * er;
  cg_im.noalias() = eta_t_ * ei;
  ce_re.noalias() = sys_->eta * gr;
  ce_im.noalias() = sys_->eta * gi;

  for (int m = 0; m < ng; ++m) {
    out.g[m] = diag_g_[m] * in.g[m] + half_eps_c * complex<double>(cg_re[m], cg_im[m]);
  }
  for (int n = 0; n < ne; ++n) {
    out.e[n] = diag_e_[n] * in.e[n] + half_eps * complex<double>(ce_re[n], ce_im[n]);
  }
}

void Propagator::step_inplace(TwoSurfaceState& state, complex<double> eps,
                              double dt) const {
  if (dt == 0.0) return;
  const double amp = std::abs(eps);
  if (!std::isfinite(amp)) {
    throw NumericError("propagator step: non-finite field sample");
  }
  const double lo = std::min(diag_g_.minCoeff() - amp * radius_g_,
                             diag_e_.minCoeff() - amp * radius_e_);
  const double hi = std::max(diag_g_.maxCoeff() + amp * radius_g_,
                             diag_e_.maxCoeff() + amp * radius_e_);
  const double center = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo) * 1.005 + 1e-14;
  const double alpha = half * std::abs(dt);
  if (alpha > 250.0) {
    throw StepSizeError("propagator step: spectral radius * dt = " + std::to_string(alpha) +
                            " too large for the Chebyshev expansion; try dt <= " +
                            std::to_string(std::abs(dt) * 200.0 / alpha),
                        std::abs(dt) * 200.0 / alpha);
  }

  static thread_local std::vector<double> jk;
  const int kcap = static_cast<int>(alpha + 12.0 * std::cbrt(alpha + 4.0)) + 20;
  bessel_j_array(alpha, kcap, jk);
  int order = kcap - 1;
  for (int k = std::max(2, static_cast<int>(alpha)); k + 1 <= kcap; ++k) {
    if (std::abs(jk[k]) < tol_ && std::abs(jk[k + 1]) < tol_) {
      order = k;
      break;
    }
  }

  // exp(-i dt (center + half*X)) = e^{-i center dt} sum_k c_k T_k(X),
  // c_k = (2 - delta_k0) (-i sgn(dt))^k J_k(alpha).
  const complex<double> unit = dt > 0 ? complex<double>(0.0, -1.0) : complex<double>(0.0, 1.0);
  const double inv_half = 1.0 / half;

  w0_.g = state.g;
  w0_.e = state.e;
  acc_.g = jk[0] * w0_.g;
  acc_.e = jk[0] * w0_.e;

  // w1 = X w0 with X = (H - center)/half.
  apply_h(eps, w0_, w1_);
  w1_.g = (w1_.g - center * w0_.g) * inv_half;
  w1_.e = (w1_.e - center * w0_.e) * inv_half;
  complex<double> ck = 2.0 * unit * jk[1];
  acc_.g += ck * w1_.g;
  acc_.e += ck * w1_.e;

  complex<double> phase_k = unit;
  for (int k = 2; k <= order; ++k) {
    apply_h(eps, w1_, w2_);
    w2_.g = 2.0 * inv_half * (w2_.g - center * w1_.g) - w0_.g;
    w2_.e = 2.0 * inv_half * (w2_.e - center * w1_.e) - w0_.e;
    phase_k *= unit;
    ck = 2.0 * phase_k * jk[k];
    acc_.g += ck * w2_.g;
    acc_.e += ck * w2_.e;
    std::swap(w0_, w1_);
    std::swap(w1_, w2_);
  }

  const complex<double> global =
      std::exp(complex<double>(0.0, -center * dt));
  state.g = global * acc_.g;
  state.e = global * acc_.e;
}

TwoSurfaceState Propagator::step(const TwoSurfaceState& state, complex<double> eps,
                                 double dt) const {
  TwoSurfaceState out = state;
  step_inplace(out, eps, dt);
  return out;
}

Trajectory::Trajectory(const CoupledSystem& sys, Pulse pulse, bool forward, int stride)
    : prop_(sys), pulse_(std::move(pulse)), forward_(forward),
      stride_(std::max(1, stride)) {}

TwoSurfaceState Trajectory::state_at(int k) const {
  const int n_nodes = pulse_.grid.n_nodes();
  if (k < 0 || k >= n_nodes) throw ConfigError("trajectory: node index out of range");
  const int last = n_nodes - 1;
  const double dt = pulse_.grid.dt();
  if (forward_) {
    const int ic = k / stride_;
    const int c = std::min(ic * stride_, last);
    TwoSurfaceState s = states_[ic];
    for (int j = c; j < k; ++j) prop_.step_inplace(s, pulse_.envelope[j], dt);
    return s;
  }
  // Backward trajectories re-propagate from the checkpoint above.
  const int ic = (k + stride_ - 1) / stride_;
  const int c = std::min(ic * stride_, last);
  const int idx = std::min(ic, static_cast<int>(states_.size()) - 1);
  TwoSurfaceState s = states_[idx];
  for (int j = c; j > k; --j) prop_.step_inplace(s, pulse_.envelope[j - 1], -dt);
  return s;
}

namespace {

void check_finite(const TwoSurfaceState& s, int step, double t, const char* dir) {
  if (!s.g.allFinite() || !s.e.allFinite()) {
    throw NumericError(std::string(dir) + " propagation produced non-finite amplitudes at step " +
                       std::to_string(step) + " (t = " + std::to_string(t) + " au)");
  }
}

}  // namespace

Trajectory propagate_forward(const CoupledSystem& sys, const TwoSurfaceState& initial,
                             const Pulse& pulse, int stride) {
  if (initial.g.size() != sys.n_ground() || initial.e.size() != sys.n_excited()) {
    throw ConfigError("propagate_forward: state dimensions do not match the system");
  }
  Trajectory traj(sys, pulse, true, stride);
  const int n_steps = pulse.grid.n_steps;
  const double dt = pulse.grid.dt();
  traj.states_.reserve(n_steps / traj.stride() + 2);
  TwoSurfaceState cur = initial;
  traj.states_.push_back(cur);
  for (int k = 0; k < n_steps; ++k) {
    traj.prop_.step_inplace(cur, pulse.envelope[k], dt);
    check_finite(cur, k, pulse.grid.node(k + 1), "forward");
    if ((k + 1) % traj.stride() == 0 || k + 1 == n_steps) traj.states_.push_back(cur);
  }
  return traj;
}

Trajectory propagate_backward(const CoupledSystem& sys,
                              const TwoSurfaceState& final_costate, const Pulse& pulse,
                              int stride) {
  if (final_costate.g.size() != sys.n_ground() ||
      final_costate.e.size() != sys.n_excited()) {
    throw ConfigError("propagate_backward: state dimensions do not match the system");
  }
  Trajectory traj(sys, pulse, false, stride);
  const int n_steps = pulse.grid.n_steps;
  const double dt = pulse.grid.dt();
  std::vector<TwoSurfaceState> rev;
  rev.reserve(n_steps / traj.stride() + 2);
  TwoSurfaceState cur = final_costate;
  rev.push_back(cur);
  for (int k = n_steps; k > 0; --k) {
    traj.prop_.step_inplace(cur, pulse.envelope[k - 1], -dt);
    check_finite(cur, k - 1, pulse.grid.node(k - 1), "backward");
    if ((k - 1) % traj.stride() == 0) rev.push_back(cur);
  }
  traj.states_.assign(rev.rbegin(), rev.rend());
  return traj;
}

}  // namespace vibcool
