#ifndef VIBCOOL_TESTS_SUPPORT_HPP
#define VIBCOOL_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "vibcool/propagator.hpp"
#include "vibcool/system.hpp"

// Independent reference formulas and small synthetic systems used as test
// oracles. Nothing here calls back into the code paths under test.
namespace testmark {

// Morse bound-state energy measured from the potential minimum:
//   E_v = w (v + 1/2) - w x (v + 1/2)^2, w = a sqrt(2 D / m), x = w / (4 D).
inline double morse_energy(double d_e, double a, double mass, int v) {
  const double w = a * std::sqrt(2.0 * d_e / mass);
  const double x = w / (4.0 * d_e);
  const double n = v + 0.5;
  return w * n - w * x * n * n;
}

// Poisson strength of the 0 -> m line of two equal-frequency oscillators
// displaced by d: |<0|m>|^2 = e^-S S^m / m!, S = m w d^2 / 2.
inline double huang_rhys_factor(double mass, double omega, double d, int m) {
  const double s = 0.5 * mass * omega * d * d;
  double v = std::exp(-s);
  for (int k = 1; k <= m; ++k) v *= s / k;
  return v;
}

// One ground and one excited level with unit coupling; the pi-pulse toy.
inline vibcool::CoupledSystem two_level_system(double detuning = 0.0) {
  Eigen::VectorXd eg(1), ee(1);
  eg << 0.0;
  ee << 0.0;
  Eigen::MatrixXd eta(1, 1);
  eta << 1.0;
  const double gap = 0.1;
  return vibcool::CoupledSystem::from_levels(eg, ee, eta, gap, gap - detuning);
}

// Small dense synthetic system with deterministic pseudo-random couplings.
inline vibcool::CoupledSystem random_system(int ng, int ne, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd eg(ng), ee(ne);
  for (int m = 0; m < ng; ++m) eg[m] = 0.002 * m + 0.0002 * u(rng);
  for (int n = 0; n < ne; ++n) ee[n] = 0.0018 * n + 0.0002 * u(rng);
  Eigen::MatrixXd eta(ne, ng);
  for (int n = 0; n < ne; ++n)
    for (int m = 0; m < ng; ++m) eta(n, m) = 0.8 * u(rng);
  return vibcool::CoupledSystem::from_levels(eg, ee, eta, 0.06, 0.0605);
}

inline vibcool::TwoSurfaceState random_state(const vibcool::CoupledSystem& sys,
                                             std::mt19937& rng, bool normalize = true) {
  std::normal_distribution<double> n01;
  vibcool::TwoSurfaceState s;
  s.g.resize(sys.n_ground());
  s.e.resize(sys.n_excited());
  for (int m = 0; m < sys.n_ground(); ++m) s.g[m] = {n01(rng), n01(rng)};
  for (int n = 0; n < sys.n_excited(); ++n) s.e[n] = {n01(rng), n01(rng)};
  if (normalize) {
    const double nrm = std::sqrt(s.squared_norm());
    s.g /= nrm;
    s.e /= nrm;
  }
  return s;
}

}  // namespace testmark

#endif
