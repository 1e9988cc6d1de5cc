#include "vibcool/krotov.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "vibcool/errors.hpp"
#include "vibcool/propagator.hpp"

namespace vibcool {

using std::complex;

void KrotovOptions::validate() const {
  if (!(lambda > 0)) throw ConfigError("krotov: lambda must be positive");
  if (max_iterations < 1) throw ConfigError("krotov: max_iterations must be >= 1");
  if (tol_mono < 0) throw ConfigError("krotov: tol_mono must be >= 0");
  if (use_nonlinear_sigma) {
    throw ConfigError("krotov: the nonlinear update variant is not available");
  }
}

complex<double> update_step(const std::vector<TwoSurfaceState>& chi,
                            const std::vector<TwoSurfaceState>& psi,
                            const Eigen::MatrixXd& eta, double s_t, double lambda,
                            complex<double> prev_eps) {
  if (chi.size() != psi.size()) {
    throw ConfigError("update_step: costate and state sets differ in size");
  }
  if (s_t == 0.0) return prev_eps;
  // a = <chi_g| (eta^T/2) |psi_e>, b = <chi_e| (eta/2) |psi_g>, summed over
  // the ensemble. The descent update of the complex envelope is
  // (S/lambda) * i * (a - conj(b)); its real and imaginary parts are the
  // imaginary-part updates of the two quadratures.
  const Eigen::MatrixXcd eta_c = eta.cast<complex<double>>();
  complex<double> a(0), b(0);
  for (std::size_t n = 0; n < chi.size(); ++n) {
    a += chi[n].g.dot(eta_c.transpose() * psi[n].e) * 0.5;
    b += chi[n].e.dot(eta_c * psi[n].g) * 0.5;
  }
  return prev_eps + (s_t / lambda) * complex<double>(0, 1) * (a - std::conj(b));
}

namespace {

struct EnsembleBuffers {
  // Costate trajectories, one (dim x n_nodes) block per member.
  std::vector<Eigen::MatrixXcd> chi_g, chi_e;
};

double fluence_change(const Pulse& next, const Pulse& prev, const ShapeFunction& shape,
                      double lambda) {
  // Integrand lambda/S |d_eps|^2; the update makes d_eps proportional to S,
  // so evaluate it as lambda |d_eps|^2 / S with zero contribution where the
  // shape gates the update to zero.
  double sum = 0;
  const auto& grid = next.grid;
  for (int k = 0; k < grid.n_nodes(); ++k) {
    const double s = shape(grid.node(k));
    if (s <= 0) continue;
    sum += std::norm(next.envelope[k] - prev.envelope[k]) / s;
  }
  return lambda * sum * grid.dt();
}

}  // namespace

OptimizationResult optimize(const CoupledSystem& sys, const Pulse& guess,
                            const FunctionalConfig& cfg, const KrotovOptions& opts,
                            ProgressFn progress) {
  const auto t_start = std::chrono::steady_clock::now();
  cfg.validate(sys.n_ground());
  opts.validate();
  if (guess.envelope.size() != guess.grid.n_nodes()) {
    throw ConfigError("krotov: guess envelope does not match its time grid");
  }

  const int n_members = cfg.n_max + 1;
  const int n_nodes = guess.grid.n_nodes();
  const int n_steps = guess.grid.n_steps;
  const double dt = guess.grid.dt();
  const double t_ramp = opts.t_ramp > 0 ? opts.t_ramp : guess.grid.t_final / 20.0;
  const ShapeFunction shape(guess.grid.t_final, t_ramp);
  const Propagator prop(sys);
  const TargetOperators ops = build_target_operators(sys.eta, cfg.n_max, cfg.target);

  OptimizationResult result;
  result.pulse = guess;

  // Iteration 0: propagate the ensemble under the guess.
  std::vector<TwoSurfaceState> finals(n_members);
  for (int n = 0; n < n_members; ++n) {
    TwoSurfaceState s = TwoSurfaceState::ground_level(sys, n);
    for (int k = 0; k < n_steps; ++k) {
      prop.step_inplace(s, result.pulse.envelope[k], dt);
    }
    if (!s.g.allFinite() || !s.e.allFinite()) {
      throw NumericError("krotov: guess propagation diverged for member " +
                         std::to_string(n));
    }
    finals[n] = std::move(s);
  }
  IterationRecord rec{0, eval_terms(finals, cfg, ops), 0.0};
  result.records.push_back(rec);
  if (progress) progress(rec);

  EnsembleBuffers buf;
  buf.chi_g.resize(n_members);
  buf.chi_e.resize(n_members);
  for (int n = 0; n < n_members; ++n) {
    buf.chi_g[n].resize(sys.n_ground(), n_nodes);
    buf.chi_e[n].resize(sys.n_excited(), n_nodes);
  }
  const Eigen::MatrixXcd eta_c = sys.eta.cast<complex<double>>();
  const Eigen::MatrixXcd eta_c_t = eta_c.transpose();
  Eigen::VectorXcd coup_g(sys.n_ground()), coup_e(sys.n_excited());

  std::vector<TwoSurfaceState> psi(n_members);
  result.stop_reason = "max_iterations";

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    // Backward pass under the current field: costates seeded by the
    // gradient of the final-time cost, stored at every node.
    std::vector<TwoSurfaceState> chi = costate_boundary(finals, cfg, ops);
    for (int n = 0; n < n_members; ++n) {
      buf.chi_g[n].col(n_steps) = chi[n].g;
      buf.chi_e[n].col(n_steps) = chi[n].e;
      for (int k = n_steps; k > 0; --k) {
        prop.step_inplace(chi[n], result.pulse.envelope[k - 1], -dt);
        buf.chi_g[n].col(k - 1) = chi[n].g;
        buf.chi_e[n].col(k - 1) = chi[n].e;
      }
      if (!chi[n].g.allFinite() || !chi[n].e.allFinite()) {
        throw NumericError("krotov: backward propagation diverged in iteration " +
                           std::to_string(iter));
      }
    }

    // Sequential forward sweep: update the field sample at each node from
    // the stored costates and the freshly propagated states, then advance.
    Pulse next = result.pulse;
    for (int n = 0; n < n_members; ++n) psi[n] = TwoSurfaceState::ground_level(sys, n);
    for (int k = 0; k <= n_steps; ++k) {
      const double s_t = shape(guess.grid.node(k));
      complex<double> a(0), b(0);
      for (int n = 0; n < n_members; ++n) {
        // Same contraction as update_step, on the buffered costate columns.
        coup_g.noalias() = eta_c_t * psi[n].e;
        coup_e.noalias() = eta_c * psi[n].g;
        a += 0.5 * buf.chi_g[n].col(k).dot(coup_g);
        b += 0.5 * buf.chi_e[n].col(k).dot(coup_e);
      }
      const complex<double> eps_new =
          result.pulse.envelope[k] +
          (s_t / opts.lambda) * complex<double>(0, 1) * (a - std::conj(b));
      if (!std::isfinite(eps_new.real()) || !std::isfinite(eps_new.imag())) {
        throw NumericError("krotov: field update became non-finite at node " +
                           std::to_string(k) + " in iteration " + std::to_string(iter));
      }
      next.envelope[k] = eps_new;
      if (k < n_steps) {
        for (int n = 0; n < n_members; ++n) prop.step_inplace(psi[n], eps_new, dt);
      }
    }
    for (int n = 0; n < n_members; ++n) finals[n] = psi[n];

    IterationRecord r;
    r.iteration = iter;
    r.terms = eval_terms(finals, cfg, ops);
    r.fluence_change = fluence_change(next, result.pulse, shape, opts.lambda);
    result.pulse = std::move(next);

    const double j_prev = result.records.back().terms.j_total;
    if (r.terms.j_total > j_prev + opts.tol_mono) {
      throw NumericError(
          "krotov: cost increased from " + std::to_string(j_prev) + " to " +
          std::to_string(r.terms.j_total) + " in iteration " + std::to_string(iter) +
          "; the step size is too aggressive, increase lambda");
    }
    result.records.push_back(r);
    result.iterations = iter;
    if (progress) progress(r);

    if (std::abs(j_prev - r.terms.j_total) < opts.tol_delta_j) {
      result.stop_reason = "converged";
      break;
    }
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace vibcool
