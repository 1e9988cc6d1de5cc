#ifndef VIBCOOL_VIBRATIONAL_HPP
#define VIBCOOL_VIBRATIONAL_HPP

#include <Eigen/Core>

#include "vibcool/grid.hpp"
#include "vibcool/potential.hpp"

namespace vibcool {

// Bound vibrational eigenstates of one electronic surface.
//
// energies are ascending, in hartree, measured from the same zero as the
// potential. wavefunctions holds one column per level, sampled on the grid
// and L2-normalized with quadrature weight spacing(); the sign is fixed so
// that the first antinode of each wavefunction is positive.
struct VibrationalBasis {
  SpatialGrid grid;
  double mass = 0;
  int n_levels = 0;
  Eigen::VectorXd energies;
  Eigen::MatrixXd wavefunctions;  // n_points x n_levels
};

// Diagonalizes T + V in the sinc-DVR representation on a uniform grid and
// returns the lowest n_levels bound states. Levels at or above the
// dissociation edge V(r_max) are not returned; asking for more of them
// raises ResolutionError, as does a grid whose kinetic-energy headroom is
// too small to converge the requested levels.
VibrationalBasis solve_vibrational(const Potential& pot, const SpatialGrid& grid,
                                   double mass, int n_levels);

}  // namespace vibcool

#endif
