#include "vibcool/vibrational.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "vibcool/errors.hpp"

namespace vibcool {

namespace {

// Sinc-DVR (Colbert-Miller) kinetic energy on a uniform grid:
//   T_ii = pi^2 / (6 m dx^2),  T_ij = (-1)^(i-j) / (m dx^2 (i-j)^2).
Eigen::MatrixXd kinetic_matrix(const SpatialGrid& grid, double mass) {
  const int n = grid.n_points();
  const double pref = 1.0 / (mass * grid.spacing() * grid.spacing());
  Eigen::MatrixXd t(n, n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = pref * std::numbers::pi * std::numbers::pi / 6.0;
    for (int j = 0; j < i; ++j) {
      const int d = i - j;
      const double v = pref * ((d % 2 == 0) ? 1.0 : -1.0) / (double(d) * d);
      t(i, j) = v;
      t(j, i) = v;
    }
  }
  return t;
}

// Flip the sign of a column so that its first antinode (the first local
// maximum of |psi| above a tenth of the global maximum) is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> psi) {
  const double thresh = 0.1 * psi.cwiseAbs().maxCoeff();
  const int n = static_cast<int>(psi.size());
  for (int i = 1; i + 1 < n; ++i) {
    const double a = std::abs(psi[i]);
    if (a >= thresh && a >= std::abs(psi[i - 1]) && a >= std::abs(psi[i + 1])) {
      if (psi[i] < 0) psi = -psi;
      return;
    }
  }
  if (psi[n / 2] < 0) psi = -psi;
}

}  // namespace

VibrationalBasis solve_vibrational(const Potential& pot, const SpatialGrid& grid,
                                   double mass, int n_levels) {
  if (mass <= 0) throw ConfigError("solve_vibrational: mass must be positive");
  if (n_levels < 1) throw ConfigError("solve_vibrational: n_levels must be >= 1");

  const Eigen::VectorXd v = pot.sample(grid);
  Eigen::MatrixXd h = kinetic_matrix(grid, mass);
  h.diagonal() += v;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("solve_vibrational: eigensolver failed to converge");
  }

  const double dissociation = pot.asymptote(grid);
  int n_bound = 0;
  while (n_bound < grid.n_points() && solver.eigenvalues()[n_bound] < dissociation) {
    ++n_bound;
  }
  if (n_levels > n_bound) {
    throw ResolutionError("solve_vibrational: requested " + std::to_string(n_levels) +
                          " levels but only " + std::to_string(n_bound) +
                          " lie below the dissociation edge V(r_max)");
  }

  // Heuristic convergence guard: the DVR momentum cutoff pi/dx must exceed
  // the classical momentum of the highest retained level by a wide margin.
  const double t_cut = std::numbers::pi * std::numbers::pi /
                       (2.0 * mass * grid.spacing() * grid.spacing());
  const double e_top = solver.eigenvalues()[n_levels - 1] - v.minCoeff();
  if (e_top > 0.25 * t_cut) {
    throw ResolutionError(
        "solve_vibrational: grid too coarse for level " + std::to_string(n_levels - 1) +
        " (kinetic headroom " + std::to_string(t_cut) + " hartree, need > 4x level energy)");
  }

  VibrationalBasis basis{grid, mass, n_levels, Eigen::VectorXd(n_levels),
                         Eigen::MatrixXd(grid.n_points(), n_levels)};
  const double inv_sqrt_dx = 1.0 / std::sqrt(grid.spacing());
  for (int k = 0; k < n_levels; ++k) {
    basis.energies[k] = solver.eigenvalues()[k];
    basis.wavefunctions.col(k) = solver.eigenvectors().col(k) * inv_sqrt_dx;
    fix_sign(basis.wavefunctions.col(k));
  }
  return basis;
}

}  // namespace vibcool
