#include "vibcool/system.hpp"

#include "vibcool/errors.hpp"

namespace vibcool {

CoupledSystem CoupledSystem::from_bases(const VibrationalBasis& ground,
                                        const VibrationalBasis& excited,
                                        const FranckCondonMap& fc,
                                        double electronic_gap, double omega_L) {
  if (fc.n_ground() != ground.n_levels || fc.n_excited() != excited.n_levels) {
    throw ConfigError("coupled system: Franck-Condon map does not match the bases");
  }
  return from_levels(ground.energies, excited.energies, fc.eta, electronic_gap, omega_L);
}

CoupledSystem CoupledSystem::from_levels(Eigen::VectorXd e_ground,
                                         Eigen::VectorXd e_excited, Eigen::MatrixXd eta,
                                         double electronic_gap, double omega_L) {
  if (eta.rows() != e_excited.size() || eta.cols() != e_ground.size()) {
    throw ConfigError("coupled system: eta must be n_excited x n_ground");
  }
  if (e_ground.size() == 0 || e_excited.size() == 0) {
    throw ConfigError("coupled system: need at least one level per surface");
  }
  CoupledSystem sys;
  sys.e_ground = std::move(e_ground);
  sys.e_excited = std::move(e_excited);
  sys.eta = std::move(eta);
  sys.electronic_gap = electronic_gap;
  sys.omega_L = omega_L;
  return sys;
}

}  // namespace vibcool
