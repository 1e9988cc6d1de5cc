#include "vibcool/functionals.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "vibcool/errors.hpp"

namespace vibcool {

using std::complex;

void FunctionalConfig::validate(int n_ground) const {
  if (n_max < 0 || n_max >= n_ground) {
    throw ConfigError("functional: n_max must lie in [0, n_ground-1]");
  }
  if (n_max >= 1 && (n_star < 1 || n_star > n_max)) {
    throw ConfigError("functional: need 1 <= n_star <= n_max");
  }
  if (n_max == 0 && n_star != 0) {
    throw ConfigError("functional: n_star must be 0 when n_max is 0");
  }
  if (target < 0 || target > n_max) {
    throw ConfigError("functional: target must lie in [0, n_max]");
  }
  if (lambda_ss < 0 || lambda_leak < 0 || lambda_yield < 0 || lambda_balance < 0) {
    throw ConfigError("functional: weights must be non-negative");
  }
  if (lambda_ss + lambda_leak + lambda_yield + lambda_balance <= 0) {
    throw ConfigError("functional: at least one weight must be positive");
  }
}

TargetOperators build_target_operators(const Eigen::MatrixXd& eta, int n_max,
                                       int target) {
  const int ne = static_cast<int>(eta.rows());
  const int ng = static_cast<int>(eta.cols());
  if (target < 0 || target >= ng) throw ConfigError("target operators: bad target index");
  if (n_max < 0 || n_max >= ng) throw ConfigError("target operators: bad n_max");
  TargetOperators ops;
  ops.out_begin = n_max + 1;
  ops.d_weights = eta.col(target).array().square();
  ops.l_weights.setZero(ne);
  for (int m = ops.out_begin; m < ng; ++m) {
    ops.l_weights.array() += eta.col(m).array().square();
  }
  return ops;
}

double sigma_approx(const TwoSurfaceState& final_state, const TargetOperators& ops) {
  double s = 0;
  for (int n = 0; n < final_state.e.size(); ++n) {
    s += ops.d_weights[n] * std::norm(final_state.e[n]);
  }
  return s;
}

double sigma_exact(const TwoSurfaceState& final_state, const Eigen::MatrixXd& eta,
                   int target, const Eigen::VectorXd& e_excited, double lifetime,
                   int* n_degenerate_pairs) {
  if (!(lifetime > 0)) throw ConfigError("sigma_exact: lifetime must be positive");
  const int ne = static_cast<int>(e_excited.size());
  int degenerate = 0;
  double sigma = 0;
  for (int n = 0; n < ne; ++n) {
    sigma += eta(n, target) * eta(n, target) * std::norm(final_state.e[n]);
  }
  // Off-diagonal interference, pairwise so the conjugate partners combine to
  // a real contribution.
  for (int n = 0; n < ne; ++n) {
    for (int m = n + 1; m < ne; ++m) {
      const double de = e_excited[n] - e_excited[m];
      complex<double> factor;
      if (std::abs(de) * lifetime < 1e-12) {
        factor = 1.0;
        ++degenerate;
      } else {
        const complex<double> i_de_t(0.0, de * lifetime);
        factor = (std::exp(i_de_t) - 1.0) / i_de_t;
      }
      const complex<double> cross =
          std::conj(final_state.e[n]) * final_state.e[m] * eta(n, target) * eta(m, target);
      sigma += 2.0 * (factor * cross).real();
    }
  }
  if (n_degenerate_pairs) *n_degenerate_pairs = degenerate;
  return sigma;
}

namespace {

void check_ensemble(const std::vector<TwoSurfaceState>& finals,
                    const FunctionalConfig& cfg) {
  if (static_cast<int>(finals.size()) != cfg.n_max + 1) {
    throw ConfigError("functional: need " + std::to_string(cfg.n_max + 1) +
                      " propagated ensemble members, got " + std::to_string(finals.size()));
  }
}

double leak_of(const TwoSurfaceState& s, const TargetOperators& ops) {
  double v = 0;
  for (int m = ops.out_begin; m < s.g.size(); ++m) v += std::norm(s.g[m]);
  for (int n = 0; n < s.e.size(); ++n) v += ops.l_weights[n] * std::norm(s.e[n]);
  return v;
}

}  // namespace

Terms eval_terms(const std::vector<TwoSurfaceState>& finals, const FunctionalConfig& cfg,
                 const TargetOperators& ops) {
  check_ensemble(finals, cfg);
  Terms t;

  t.j_ss = 1.0 - std::norm(finals[cfg.target].g[cfg.target]);

  for (const auto& s : finals) t.j_leak += leak_of(s, ops);

  std::vector<double> sigma(cfg.n_max + 1);
  for (int n = 0; n <= cfg.n_max; ++n) sigma[n] = sigma_approx(finals[n], ops);

  if (cfg.variant == Variant::Symmetrized) {
    double sum = 0;
    for (int n = 1; n <= cfg.n_max; ++n) sum += sigma[n];
    t.j_yield = 1.0 - sum;
    t.j_balance = 0;
    for (int n = 1; n <= cfg.n_max; ++n) {
      if (n == cfg.n_star) continue;
      const double d = sigma[n] - sigma[cfg.n_star];
      t.j_balance += d * d;
    }
  } else {
    t.j_yield = 1.0 - sigma[cfg.n_star];
    if (cfg.n_max >= 2) {
      double sum = 0;
      for (int n = 2; n <= cfg.n_max; ++n) {
        const complex<double> ov = finals[n].g[n - 1];
        sum += cfg.assembly_form == OverlapForm::RealPart ? ov.real() : std::norm(ov);
      }
      t.j_balance = 1.0 - sum / (cfg.n_max - 1);
    } else {
      t.j_balance = 0;  // empty assembly line
    }
  }

  t.j_total = cfg.lambda_ss * t.j_ss + cfg.lambda_leak * t.j_leak +
              cfg.lambda_yield * t.j_yield + cfg.lambda_balance * t.j_balance;
  return t;
}

std::vector<TwoSurfaceState> costate_boundary(const std::vector<TwoSurfaceState>& finals,
                                              const FunctionalConfig& cfg,
                                              const TargetOperators& ops) {
  check_ensemble(finals, cfg);
  const int ng = static_cast<int>(finals[0].g.size());
  const int ne = static_cast<int>(finals[0].e.size());

  std::vector<TwoSurfaceState> chi(finals.size());
  for (auto& c : chi) {
    c.g = Eigen::VectorXcd::Zero(ng);
    c.e = Eigen::VectorXcd::Zero(ne);
  }

  // J_ss = 1 - |<phi_target|psi_target(T)>|^2
  chi[cfg.target].g[cfg.target] -= cfg.lambda_ss * finals[cfg.target].g[cfg.target];

  // J_leak: quadratic in each member through P_out and the L weights.
  if (cfg.lambda_leak > 0) {
    for (std::size_t n = 0; n < finals.size(); ++n) {
      for (int m = ops.out_begin; m < ng; ++m) {
        chi[n].g[m] += cfg.lambda_leak * finals[n].g[m];
      }
      for (int k = 0; k < ne; ++k) {
        chi[n].e[k] += cfg.lambda_leak * ops.l_weights[k] * finals[n].e[k];
      }
    }
  }

  std::vector<double> sigma(cfg.n_max + 1);
  for (int n = 0; n <= cfg.n_max; ++n) sigma[n] = sigma_approx(finals[n], ops);

  if (cfg.variant == Variant::Symmetrized) {
    // J_yield contributes -D|psi_n> for every ensemble member n >= 1.
    for (int n = 1; n <= cfg.n_max; ++n) {
      chi[n].e.array() -=
          cfg.lambda_yield * ops.d_weights.array() * finals[n].e.array();
    }
    // J_sym: (sigma_n - sigma_n*)^2 couples member n and member n*.
    if (cfg.lambda_balance > 0 && cfg.n_max >= 1) {
      double dsum = 0;
      for (int n = 1; n <= cfg.n_max; ++n) {
        if (n == cfg.n_star) continue;
        const double d = sigma[n] - sigma[cfg.n_star];
        dsum += d;
        chi[n].e.array() +=
            2.0 * cfg.lambda_balance * d * ops.d_weights.array() * finals[n].e.array();
      }
      chi[cfg.n_star].e.array() -= 2.0 * cfg.lambda_balance * dsum *
                                   ops.d_weights.array() *
                                   finals[cfg.n_star].e.array();
    }
  } else {
    chi[cfg.n_star].e.array() -=
        cfg.lambda_yield * ops.d_weights.array() * finals[cfg.n_star].e.array();
    if (cfg.lambda_balance > 0 && cfg.n_max >= 2) {
      const double w = cfg.lambda_balance / (cfg.n_max - 1);
      for (int n = 2; n <= cfg.n_max; ++n) {
        if (cfg.assembly_form == OverlapForm::RealPart) {
          chi[n].g[n - 1] -= 0.5 * w;
        } else {
          chi[n].g[n - 1] -= w * finals[n].g[n - 1];
        }
      }
    }
  }
  return chi;
}

}  // namespace vibcool
