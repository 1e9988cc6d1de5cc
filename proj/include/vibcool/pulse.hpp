#ifndef VIBCOOL_PULSE_HPP
#define VIBCOOL_PULSE_HPP

#include <complex>
#include <optional>

#include <Eigen/Core>

namespace vibcool {

// Uniform time grid over [0, T], atomic units. States live on the n_steps+1
// nodes t_k = k*dt; the field driving step k is the envelope sample at the
// left node of [t_k, t_{k+1}).
struct TimeGrid {
  double t_final = 0;
  int n_steps = 0;

  TimeGrid() = default;
  TimeGrid(double t_final, int n_steps);

  double dt() const { return t_final / n_steps; }
  int n_nodes() const { return n_steps + 1; }
  double node(int k) const { return t_final * k / n_steps; }

  bool operator==(const TimeGrid& o) const {
    return t_final == o.t_final && n_steps == o.n_steps;
  }
};

// Complex field envelope eps(t) relative to the carrier omega_L, sampled on
// the nodes of a TimeGrid.
struct Pulse {
  TimeGrid grid;
  Eigen::VectorXcd envelope;  // n_nodes samples
  double omega_L = 0;

  std::complex<double> sample(int k) const { return envelope[k]; }
};

// sin^2 switch-on/off over t_ramp at both ends, flat 1 in between.
class ShapeFunction {
 public:
  ShapeFunction(double t_final, double t_ramp);
  double operator()(double t) const;
  double t_ramp() const { return t_ramp_; }

 private:
  double t_final_, t_ramp_;
};

// Transform-limited Gaussian guess:
//   eps(t) = peak * exp(-4 ln2 (t-center)^2 / fwhm^2) * exp(i*detuning*t).
Pulse gaussian_guess(const TimeGrid& grid, double center, double fwhm, double peak,
                     double detuning, double omega_L);

// Multiplies the envelope by S(t) so the endpoints vanish exactly.
Pulse apply_shape(const Pulse& p, const ShapeFunction& shape);

// |FT(envelope)|^2 against absolute wavenumber (axis offset by omega_L),
// ascending in wavenumber.
struct Spectrum {
  Eigen::VectorXd wavenumber_cm1;
  Eigen::VectorXd intensity;
};

Spectrum spectrum(const Pulse& p);

// Trapezoidal integral of |eps|^2 dt in atomic units.
double fluence(const Pulse& p);

// Integrated pulse energy for a given beam area. A microjoule readout needs
// a focusing geometry the model does not fix, so the area is a
// caller-supplied assumption; without one the result falls back to the bare
// fluence, flagged by has_area = false.
struct PulseEnergy {
  bool has_area = false;
  double microjoule = 0;
  double fluence_au = 0;
};

PulseEnergy pulse_energy(const Pulse& p, std::optional<double> beam_area_um2);

}  // namespace vibcool

#endif
