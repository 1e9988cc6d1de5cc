#include "vibcool/franck_condon.hpp"

#include "vibcool/errors.hpp"

namespace vibcool {

FranckCondonMap franck_condon_map(const VibrationalBasis& ground,
                                  const VibrationalBasis& excited, double mu) {
  if (!(ground.grid == excited.grid)) {
    throw ConfigError("franck_condon_map: ground and excited bases use different grids");
  }
  FranckCondonMap fc;
  fc.dipole = mu;
  // Quadrature weight dx completes the L2 inner product of the sampled
  // wavefunctions.
  fc.eta = mu * ground.grid.spacing() *
           (excited.wavefunctions.transpose() * ground.wavefunctions);
  return fc;
}

}  // namespace vibcool
