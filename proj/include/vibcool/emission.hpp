#ifndef VIBCOOL_EMISSION_HPP
#define VIBCOOL_EMISSION_HPP

#include <Eigen/Core>

#include "vibcool/franck_condon.hpp"
#include "vibcool/vibrational.hpp"

namespace vibcool {

enum class Branch {
  PType,  // J' = J'' - 1
  RType,  // J' = J'' + 1
};

// Rotational line-strength factor H_J'. Kept as a standalone formula; the
// emission model below runs in rotationless mode (H = 1).
double honl_london(int j_prime, Branch branch);

// Spontaneous-emission rates between excited (v') and ground (v'') levels.
//
// einstein(v', v'') = (4 alpha^3 / 3) * dE^3 * eta(v', v'')^2 with
// dE = electronic_gap + E_e(v') - E_g(v''), in atomic units. Pairs with
// dE <= 0 cannot emit and get rate zero (counted in n_upward_pairs).
// gamma is the row sum of einstein, summed left to right; lifetime is
// 1 / max(gamma) unless overridden.
struct EmissionModel {
  Eigen::MatrixXd einstein;  // n_excited x n_ground
  Eigen::VectorXd gamma;     // n_excited
  double lifetime = 0;
  int n_upward_pairs = 0;
};

EmissionModel build_emission_model(const FranckCondonMap& fc,
                                   const VibrationalBasis& ground,
                                   const VibrationalBasis& excited,
                                   double electronic_gap);

}  // namespace vibcool

#endif
