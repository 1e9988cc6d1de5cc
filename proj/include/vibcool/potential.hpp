#ifndef VIBCOOL_POTENTIAL_HPP
#define VIBCOOL_POTENTIAL_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "vibcool/grid.hpp"

namespace vibcool {

// One-dimensional potential energy curve, either an analytic Morse form
//   V(r) = offset + d_e * (1 - exp(-a (r - r_e)))^2
// or a tabulated curve interpolated with a natural cubic spline.
// Energies in hartree, distances in bohr.
class Potential {
 public:
  enum class Kind { Morse, Tabulated };

  static Potential morse(double d_e, double a, double r_e, double offset = 0.0);
  static Potential tabulated(std::vector<double> r, std::vector<double> v);

  // Two-column text file, '#' comments. A comment of the form
  //   # units: <angstrom|a0> <cm-1|hartree>
  // selects input units; default is a0 / hartree.
  static Potential load_tabulated(const std::string& path);

  Kind kind() const { return kind_; }
  double value(double r) const;
  Eigen::VectorXd sample(const SpatialGrid& grid) const;

  // Energy of the dissociation continuum edge at the right end of the grid;
  // levels above this are not representable.
  double asymptote(const SpatialGrid& grid) const { return value(grid.r_max()); }

  double morse_d_e() const { return d_e_; }
  double morse_a() const { return a_; }
  double morse_r_e() const { return r_e_; }
  double morse_offset() const { return offset_; }

 private:
  Potential() = default;

  Kind kind_ = Kind::Morse;
  double d_e_ = 0, a_ = 0, r_e_ = 0, offset_ = 0;

  // Tabulated representation with precomputed spline second derivatives.
  std::vector<double> tab_r_, tab_v_, tab_m_;
};

}  // namespace vibcool

#endif
