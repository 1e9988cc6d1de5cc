#include "vibcool/emission.hpp"

#include <string>

#include "vibcool/errors.hpp"
#include "vibcool/units.hpp"

namespace vibcool {

double honl_london(int j_prime, Branch branch) {
  if (j_prime < 0) {
    throw DomainError("honl_london: J' must be non-negative (got " +
                      std::to_string(j_prime) + ")");
  }
  const double jp = j_prime;
  switch (branch) {
    case Branch::PType:
      return (jp + 1.0) / (2.0 * jp + 1.0);
    case Branch::RType:
      return jp / (2.0 * jp + 1.0);
  }
  throw DomainError("honl_london: unknown branch");
}

EmissionModel build_emission_model(const FranckCondonMap& fc,
                                   const VibrationalBasis& ground,
                                   const VibrationalBasis& excited,
                                   double electronic_gap) {
  if (fc.n_ground() != ground.n_levels || fc.n_excited() != excited.n_levels) {
    throw ConfigError("emission model: Franck-Condon map does not match the bases");
  }
  const int ne = fc.n_excited();
  const int ng = fc.n_ground();
  const double alpha = units::fine_structure;
  const double pref = 4.0 / 3.0 * alpha * alpha * alpha;

  EmissionModel model;
  model.einstein.setZero(ne, ng);
  model.gamma.setZero(ne);
  for (int n = 0; n < ne; ++n) {
    for (int m = 0; m < ng; ++m) {
      const double de = electronic_gap + excited.energies[n] - ground.energies[m];
      if (de <= 0) {
        ++model.n_upward_pairs;
        continue;
      }
      const double eta = fc.eta(n, m);
      model.einstein(n, m) = pref * de * de * de * eta * eta;
    }
    // gamma is the plain left-to-right row sum; keep it that way so the two
    // agree bitwise.
    double sum = 0;
    for (int m = 0; m < ng; ++m) sum += model.einstein(n, m);
    model.gamma[n] = sum;
  }
  const double gmax = model.gamma.maxCoeff();
  model.lifetime = gmax > 0 ? 1.0 / gmax : 0.0;
  return model;
}

}  // namespace vibcool
