#include "vibcool/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vibcool/errors.hpp"

namespace vibcool {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

SpatialGrid::SpatialGrid(double r_min, double r_max, int n_points)
    : r_min_(r_min), r_max_(r_max), n_points_(n_points) {
  if (!(r_min < r_max)) {
    throw ConfigError("grid: r_min must be smaller than r_max (got " +
                      std::to_string(r_min) + " >= " + std::to_string(r_max) + ")");
  }
  if (n_points < 16 || !power_of_two(n_points)) {
    throw ConfigError("grid: n_points must be a power of two >= 16 (got " +
                      std::to_string(n_points) + ")");
  }
  spacing_ = (r_max - r_min) / (n_points - 1);
}

Eigen::VectorXd SpatialGrid::points() const {
  return Eigen::VectorXd::LinSpaced(n_points_, r_min_, r_max_);
}

Eigen::VectorXd SpatialGrid::momentum_points() const {
  const int n = n_points_;
  const double dk = 2.0 * std::numbers::pi / (n * spacing_);
  Eigen::VectorXd k(n);
  for (int i = 0; i < n; ++i) {
    k[i] = (i <= n / 2 ? i : i - n) * dk;
  }
  return k;
}

SpatialGrid build_grid(double r_min, double r_max, int n_points) {
  return SpatialGrid(r_min, r_max, n_points);
}

}  // namespace vibcool
