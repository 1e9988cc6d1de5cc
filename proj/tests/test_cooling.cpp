#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vibcool/cooling.hpp"
#include "vibcool/errors.hpp"
#include "vibcool/propagator.hpp"

using namespace vibcool;

namespace {

EmissionModel fake_emission(Eigen::MatrixXd einstein) {
  EmissionModel m;
  m.einstein = std::move(einstein);
  m.gamma.resize(m.einstein.rows());
  for (int l = 0; l < m.einstein.rows(); ++l) {
    double sum = 0;
    for (int c = 0; c < m.einstein.cols(); ++c) sum += m.einstein(l, c);
    m.gamma[l] = sum;
  }
  const double gmax = m.gamma.size() ? m.gamma.maxCoeff() : 0.0;
  m.lifetime = gmax > 0 ? 1.0 / gmax : 0.0;
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("cooling");

TEST_CASE("pure branching column") {
  // One excited level fully populated from ground level 1, branching 0.6/0.4.
  Eigen::MatrixXd ground_response = Eigen::MatrixXd::Zero(2, 2);
  ground_response(0, 0) = 1.0;  // level 0 untouched by the pulse
  Eigen::MatrixXd excited_response(1, 2);
  excited_response << 0.0, 1.0;
  Eigen::MatrixXd einstein(1, 2);
  einstein << 0.6e-8, 0.4e-8;
  const auto map = CycleMap::compose(ground_response, excited_response,
                                     fake_emission(einstein));
  CHECK(map.map(0, 1) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(map.map(1, 1) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(map.lost_per_level[1] == doctest::Approx(0.0));
  CHECK(map.map(0, 0) == 1.0);
}

TEST_CASE("zero pulse gives the identity map with zero loss") {
  auto sys = testmark::random_system(5, 3, 11);
  Pulse zero{TimeGrid(500.0, 100), Eigen::VectorXcd::Zero(101), sys.omega_L};
  Eigen::MatrixXd einstein = Eigen::MatrixXd::Constant(3, 5, 1e-9);
  const auto map = build_cycle_map(sys, zero, fake_emission(einstein));
  CHECK((map.map - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(map.lost_per_level.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("columns sum to one minus the lost fraction") {
  auto sys = testmark::random_system(6, 4, 13);
  Pulse p{TimeGrid(2000.0, 400), Eigen::VectorXcd::Zero(401), sys.omega_L};
  for (int k = 0; k <= 400; ++k) {
    const double t = p.grid.node(k);
    p.envelope[k] = 4e-4 * std::sin(M_PI * t / 2000.0);
  }
  Eigen::MatrixXd einstein(4, 6);
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 6; ++m) einstein(l, m) = 1e-9 * (1 + l + m);
  const auto map = build_cycle_map(sys, p, fake_emission(einstein));
  for (int m = 0; m < 6; ++m) {
    CHECK(std::abs(map.map.col(m).sum() + map.lost_per_level[m] - 1.0) < 1e-9);
  }
}

TEST_CASE("a non-decaying excited level funnels into lost") {
  Eigen::MatrixXd ground_response = Eigen::MatrixXd::Zero(2, 2);
  ground_response(0, 0) = 1.0;
  Eigen::MatrixXd excited_response(1, 2);
  excited_response << 0.0, 0.7;  // 30% stayed on the ground surface somewhere
  ground_response(1, 1) = 0.3;
  const auto map =
      CycleMap::compose(ground_response, excited_response,
                        fake_emission(Eigen::MatrixXd::Zero(1, 2)));
  CHECK(map.lost_per_level[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(map.map.col(1).sum() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("identity map never reaches the 90% milestone") {
  CycleMap map{Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3)};
  const auto hist = simulate_cooling(equipartition_state(3, 1, 2), map, 25);
  CHECK_FALSE(hist.summary.cycles_to_90pct.has_value());
  CHECK(hist.summary.max_target_population == doctest::Approx(0.0));
  for (const auto& s : hist.states) {
    CHECK(s.populations[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("geometric two-level accumulation reaches 90% in four cycles") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.5, 0.0, 0.5;
  CycleMap map{m, Eigen::VectorXd::Zero(2)};
  CoolingState init;
  init.populations.resize(2);
  init.populations << 0.0, 1.0;
  const auto hist = simulate_cooling(init, map, 12);
  for (int k = 0; k <= 12; ++k) {
    CHECK(hist.states[k].populations[0] ==
          doctest::Approx(1.0 - std::pow(0.5, k)).epsilon(1e-12));
  }
  REQUIRE(hist.summary.cycles_to_90pct.has_value());
  CHECK(*hist.summary.cycles_to_90pct == 4);
  CHECK(hist.summary.max_target_population == doctest::Approx(1.0 - std::pow(0.5, 12)));
  CHECK(hist.summary.cycles_at_max == 12);
}

TEST_CASE("probability is conserved and loss is monotone over many cycles") {
  Eigen::MatrixXd m(3, 3);
  // Column-stochastic up to a 2% per-cycle loss on levels 1 and 2.
  m << 1.0, 0.30, 0.10,
       0.0, 0.58, 0.30,
       0.0, 0.10, 0.58;
  Eigen::VectorXd lost(3);
  lost << 0.0, 0.02, 0.02;
  CycleMap map{m, lost};
  const auto hist = simulate_cooling(equipartition_state(3, 1, 2), map, 10000);
  double prev_lost = 0.0;
  for (const auto& s : hist.states) {
    CHECK(std::abs(s.total() - 1.0) < 1e-9);
    CHECK(s.lost >= prev_lost - 1e-15);
    CHECK(s.populations.minCoeff() >= 0.0);
    prev_lost = s.lost;
  }
}

TEST_CASE("an absorbing target accumulates monotonically") {
  Eigen::MatrixXd m(3, 3);
  m << 1.0, 0.4, 0.2,
       0.0, 0.5, 0.3,
       0.0, 0.1, 0.5;
  CycleMap map{m, Eigen::VectorXd::Zero(3)};
  const auto hist = simulate_cooling(equipartition_state(3, 1, 2), map, 60);
  for (std::size_t k = 1; k < hist.states.size(); ++k) {
    CHECK(hist.states[k].populations[0] >= hist.states[k - 1].populations[0] - 1e-15);
  }
  CHECK(hist.states.back().populations[0] > 0.99);
  CHECK(hist.summary.final_purity > 0.98);
}

TEST_CASE("purity spans (0, 1] and hits 1 only for a single level") {
  CoolingState pure;
  pure.populations.resize(4);
  pure.populations << 0, 0, 1.0, 0;
  CHECK(pure.purity() == 1.0);
  const auto mixed = equipartition_state(4, 0, 3);
  CHECK(mixed.purity() == doctest::Approx(0.25));
  CHECK(mixed.purity() > 0.0);
  CHECK(mixed.purity() < 1.0);
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(equipartition_state(4, 2, 1), ConfigError);
  CHECK_THROWS_AS(equipartition_state(4, 0, 4), ConfigError);
  CycleMap map{Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3)};
  CoolingState bad;
  bad.populations.resize(3);
  bad.populations << 0.5, 0.2, 0.2;  // sums to 0.9
  CHECK_THROWS_AS(simulate_cooling(bad, map, 5), ConfigError);
}

TEST_SUITE_END();
