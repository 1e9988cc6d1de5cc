#ifndef VIBCOOL_FRANCK_CONDON_HPP
#define VIBCOOL_FRANCK_CONDON_HPP

#include <Eigen/Core>

#include "vibcool/vibrational.hpp"

namespace vibcool {

// Transition dipole matrix elements eta(n, m) = mu * <phi_e_n | phi_g_m>
// between excited (rows) and ground (columns) vibrational levels, for an
// R-independent dipole mu. Entries are real because the wavefunctions are.
struct FranckCondonMap {
  Eigen::MatrixXd eta;  // n_excited x n_ground
  double dipole = 0;

  int n_excited() const { return static_cast<int>(eta.rows()); }
  int n_ground() const { return static_cast<int>(eta.cols()); }
};

FranckCondonMap franck_condon_map(const VibrationalBasis& ground,
                                  const VibrationalBasis& excited, double mu);

}  // namespace vibcool

#endif
