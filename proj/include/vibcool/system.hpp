#ifndef VIBCOOL_SYSTEM_HPP
#define VIBCOOL_SYSTEM_HPP

#include <Eigen/Core>

#include "vibcool/franck_condon.hpp"
#include "vibcool/vibrational.hpp"

namespace vibcool {

// Two-surface molecule in the truncated vibrational eigenbasis, rotating
// frame of the carrier. The field-free Hamiltonian is diagonal:
//   ground block   E_g(m)
//   excited block  electronic_gap + E_e(n) - omega_L
// and the field couples the blocks through eta with strength eps(t)/2
// (eps* on the upper block, eps on the lower one).
struct CoupledSystem {
  Eigen::VectorXd e_ground;   // hartree, from the ground-potential zero
  Eigen::VectorXd e_excited;  // hartree, from the excited-potential zero
  Eigen::MatrixXd eta;        // n_excited x n_ground coupling matrix
  double electronic_gap = 0;
  double omega_L = 0;

  int n_ground() const { return static_cast<int>(e_ground.size()); }
  int n_excited() const { return static_cast<int>(e_excited.size()); }

  // Diagonal of the excited block in the rotating frame.
  Eigen::VectorXd excited_detuning() const {
    return (e_excited.array() + electronic_gap - omega_L).matrix();
  }

  static CoupledSystem from_bases(const VibrationalBasis& ground,
                                  const VibrationalBasis& excited,
                                  const FranckCondonMap& fc, double electronic_gap,
                                  double omega_L);

  // Direct construction from level energies and a coupling matrix; used for
  // reduced models.
  static CoupledSystem from_levels(Eigen::VectorXd e_ground, Eigen::VectorXd e_excited,
                                   Eigen::MatrixXd eta, double electronic_gap,
                                   double omega_L);
};

}  // namespace vibcool

#endif
