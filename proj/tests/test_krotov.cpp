#include <doctest.h>

#include <cmath>
#include <complex>

#include "support.hpp"
#include "vibcool/errors.hpp"
#include "vibcool/krotov.hpp"
#include "vibcool/propagator.hpp"

using namespace vibcool;
using std::complex;

namespace {

Pulse shaped_gaussian(const TimeGrid& grid, double peak, double omega_l,
                      double t_ramp_div = 20.0) {
  const ShapeFunction shape(grid.t_final, grid.t_final / t_ramp_div);
  return apply_shape(gaussian_guess(grid, 0.5 * grid.t_final, grid.t_final / 5.0, peak,
                                    0.0, omega_l),
                     shape);
}

FunctionalConfig pi_pulse_config() {
  FunctionalConfig cfg;
  cfg.variant = Variant::Assembly;
  cfg.n_max = 0;
  cfg.n_star = 0;
  cfg.lambda_ss = 0;
  cfg.lambda_leak = 0;
  cfg.lambda_yield = 1.0;
  cfg.lambda_balance = 0;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("krotov");

TEST_CASE("update_step: zero costates leave the field alone") {
  auto sys = testmark::random_system(4, 3, 5);
  std::mt19937 rng(1);
  std::vector<TwoSurfaceState> chi{TwoSurfaceState::zero(sys)};
  std::vector<TwoSurfaceState> psi{testmark::random_state(sys, rng)};
  const complex<double> prev(3e-4, -1e-4);
  CHECK(update_step(chi, psi, sys.eta, 0.7, 10.0, prev) == prev);
}

TEST_CASE("update_step: a vanishing shape gates the update to zero") {
  auto sys = testmark::random_system(4, 3, 7);
  std::mt19937 rng(2);
  std::vector<TwoSurfaceState> chi{testmark::random_state(sys, rng)};
  std::vector<TwoSurfaceState> psi{testmark::random_state(sys, rng)};
  const complex<double> prev(1e-4, 2e-4);
  CHECK(update_step(chi, psi, sys.eta, 0.0, 10.0, prev) == prev);
}

TEST_CASE("update_step: costate i*mu|psi> gives a positive real push") {
  auto sys = testmark::random_system(4, 3, 9);
  std::mt19937 rng(3);
  const auto psi = testmark::random_state(sys, rng);
  // chi = i * (coupling operator) |psi>, with the same 1/2 the Hamiltonian carries.
  TwoSurfaceState chi;
  chi.g = complex<double>(0, 0.5) * (sys.eta.transpose().cast<complex<double>>() * psi.e);
  chi.e = complex<double>(0, 0.5) * (sys.eta.cast<complex<double>>() * psi.g);
  const double s_t = 0.8, lambda = 5.0;
  const complex<double> out =
      update_step({chi}, {psi}, sys.eta, s_t, lambda, complex<double>(0, 0));
  const double expect = (s_t / lambda) * (chi.g.squaredNorm() + chi.e.squaredNorm());
  CHECK(out.real() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::abs(out.imag()) < 1e-15 * expect);
}

TEST_CASE("an enormous lambda freezes the optimization") {
  auto sys = testmark::random_system(5, 4, 11);
  const TimeGrid grid(2000.0, 400);
  const Pulse guess = shaped_gaussian(grid, 3e-4, sys.omega_L);
  FunctionalConfig cfg;
  cfg.variant = Variant::Assembly;
  cfg.n_max = 2;
  cfg.n_star = 1;
  KrotovOptions opts;
  opts.lambda = 1e14;
  opts.max_iterations = 3;
  opts.tol_delta_j = 0;
  const auto res = optimize(sys, guess, cfg, opts);
  const double j0 = res.records.front().terms.j_total;
  for (const auto& r : res.records) {
    CHECK(std::abs(r.terms.j_total - j0) < 1e-10);
  }
  CHECK((res.pulse.envelope - guess.envelope).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("zero field is a fixed point of the steady-state-only problem") {
  auto sys = testmark::random_system(4, 3, 13);
  const TimeGrid grid(1000.0, 200);
  Pulse guess{grid, Eigen::VectorXcd::Zero(grid.n_nodes()), sys.omega_L};
  FunctionalConfig cfg;
  cfg.variant = Variant::Assembly;
  cfg.n_max = 0;
  cfg.n_star = 0;
  cfg.lambda_ss = 1.0;
  cfg.lambda_leak = 0;
  cfg.lambda_yield = 0;
  cfg.lambda_balance = 0;
  KrotovOptions opts;
  opts.lambda = 10.0;
  opts.max_iterations = 5;
  const auto res = optimize(sys, guess, cfg, opts);
  CHECK(res.records.front().terms.j_ss == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.pulse.envelope.cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.stop_reason == "converged");
  CHECK(static_cast<int>(res.records.size()) == res.iterations + 1);
}

TEST_CASE("two-level excitation converges to a pi pulse") {
  const auto sys = testmark::two_level_system(0.0);
  const TimeGrid grid(100.0, 200);
  const Pulse guess = shaped_gaussian(grid, 6e-3, sys.omega_L);
  KrotovOptions opts;
  opts.lambda = 50.0;
  opts.max_iterations = 200;
  opts.tol_delta_j = 1e-14;
  const auto res = optimize(sys, guess, pi_pulse_config(), opts);
  const double excitation = 1.0 - res.records.back().terms.j_yield;
  CHECK(excitation >= 0.99);

  // The reported value must agree with a direct propagation of the result.
  const auto traj = propagate_forward(sys, TwoSurfaceState::ground_level(sys, 0), res.pulse);
  CHECK(std::norm(traj.final_state().e[0]) == doctest::Approx(excitation).epsilon(1e-10));

  // The fluence-change cost fades away as the iteration converges.
  CHECK(res.records.back().fluence_change < 0.01 * res.records[1].fluence_change);
}

TEST_CASE("descent is monotonic on a synthetic system for both variants") {
  auto sys = testmark::random_system(6, 4, 17);
  const TimeGrid grid(3000.0, 500);
  const Pulse guess = shaped_gaussian(grid, 4e-4, sys.omega_L);
  for (auto variant : {Variant::Assembly, Variant::Symmetrized}) {
    FunctionalConfig cfg;
    cfg.variant = variant;
    cfg.n_max = 3;
    cfg.n_star = 1;
    KrotovOptions opts;
    opts.lambda = 250.0;
    opts.max_iterations = 60;
    opts.tol_delta_j = 0;
    const auto res = optimize(sys, guess, cfg, opts);
    REQUIRE(res.records.size() == 61);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
      CHECK(res.records[i].terms.j_total <=
            res.records[i - 1].terms.j_total + opts.tol_mono);
      CHECK(res.records[i].fluence_change >= 0.0);
    }
    CHECK(res.records.back().terms.j_total < res.records.front().terms.j_total);
  }
}

TEST_CASE("the sweep is deterministic down to the bit") {
  auto sys = testmark::random_system(5, 4, 19);
  const TimeGrid grid(2000.0, 300);
  const Pulse guess = shaped_gaussian(grid, 3e-4, sys.omega_L);
  FunctionalConfig cfg;
  cfg.variant = Variant::Symmetrized;
  cfg.n_max = 2;
  cfg.n_star = 1;
  KrotovOptions opts;
  opts.lambda = 250.0;
  opts.max_iterations = 12;
  opts.tol_delta_j = 0;
  const auto a = optimize(sys, guess, cfg, opts);
  const auto b = optimize(sys, guess, cfg, opts);
  REQUIRE(a.pulse.envelope.size() == b.pulse.envelope.size());
  for (int k = 0; k < a.pulse.envelope.size(); ++k) {
    CHECK(a.pulse.envelope[k].real() == b.pulse.envelope[k].real());
    CHECK(a.pulse.envelope[k].imag() == b.pulse.envelope[k].imag());
  }
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].terms.j_total == b.records[i].terms.j_total);
  }
}

TEST_CASE("a mismatched guess is rejected") {
  auto sys = testmark::random_system(4, 3, 23);
  Pulse guess{TimeGrid(1000.0, 100), Eigen::VectorXcd::Zero(5), sys.omega_L};
  FunctionalConfig cfg;
  cfg.n_max = 1;
  cfg.n_star = 1;
  CHECK_THROWS_AS(optimize(sys, guess, cfg, KrotovOptions{}), ConfigError);
}

TEST_SUITE_END();
