#ifndef VIBCOOL_GRID_HPP
#define VIBCOOL_GRID_HPP

#include <Eigen/Core>

namespace vibcool {

// Uniform spatial grid over [r_min, r_max] in bohr. n_points is required to
// be a power of two (>= 16) so the conjugate momentum grid is FFT-friendly.
class SpatialGrid {
 public:
  SpatialGrid(double r_min, double r_max, int n_points);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  int n_points() const { return n_points_; }
  double spacing() const { return spacing_; }
  double point(int i) const { return r_min_ + spacing_ * i; }

  Eigen::VectorXd points() const;

  // Momentum grid conjugate to the spatial one, in FFT ordering
  // (non-negative frequencies first). Used for kinetic-energy estimates.
  Eigen::VectorXd momentum_points() const;

  bool operator==(const SpatialGrid& o) const {
    return r_min_ == o.r_min_ && r_max_ == o.r_max_ && n_points_ == o.n_points_;
  }

 private:
  double r_min_, r_max_, spacing_;
  int n_points_;
};

SpatialGrid build_grid(double r_min, double r_max, int n_points);

}  // namespace vibcool

#endif
