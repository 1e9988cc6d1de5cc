#include "vibcool/pulse.hpp"

#include <cmath>
#include <numbers>

#include "vibcool/errors.hpp"
#include "vibcool/units.hpp"

namespace vibcool {

using std::complex;

TimeGrid::TimeGrid(double t_final, int n_steps) : t_final(t_final), n_steps(n_steps) {
  if (!(t_final > 0)) throw ConfigError("time grid: t_final must be positive");
  if (n_steps < 2) throw ConfigError("time grid: n_steps must be >= 2");
}

ShapeFunction::ShapeFunction(double t_final, double t_ramp)
    : t_final_(t_final), t_ramp_(t_ramp) {
  if (!(t_ramp > 0) || t_ramp > 0.5 * t_final) {
    throw ConfigError("shape function: need 0 < t_ramp <= T/2");
  }
}

double ShapeFunction::operator()(double t) const {
  if (t <= 0 || t >= t_final_) return 0.0;
  if (t < t_ramp_) {
    const double s = std::sin(0.5 * std::numbers::pi * t / t_ramp_);
    return s * s;
  }
  if (t > t_final_ - t_ramp_) {
    const double s = std::sin(0.5 * std::numbers::pi * (t_final_ - t) / t_ramp_);
    return s * s;
  }
  return 1.0;
}

Pulse gaussian_guess(const TimeGrid& grid, double center, double fwhm, double peak,
                     double detuning, double omega_L) {
  if (!(center > 0 && center < grid.t_final)) {
    throw ConfigError("gaussian guess: center must lie inside (0, T)");
  }
  if (!(fwhm > 0)) throw ConfigError("gaussian guess: fwhm must be positive");
  Pulse p{grid, Eigen::VectorXcd(grid.n_nodes()), omega_L};
  const double a = 4.0 * std::numbers::ln2 / (fwhm * fwhm);
  for (int k = 0; k < grid.n_nodes(); ++k) {
    const double t = grid.node(k);
    const double dtc = t - center;
    p.envelope[k] = peak * std::exp(-a * dtc * dtc) *
                    std::exp(complex<double>(0.0, detuning * t));
  }
  return p;
}

Pulse apply_shape(const Pulse& p, const ShapeFunction& shape) {
  Pulse out = p;
  for (int k = 0; k < p.grid.n_nodes(); ++k) out.envelope[k] *= shape(p.grid.node(k));
  return out;
}

namespace {

// In-place iterative radix-2 FFT.
void fft(Eigen::VectorXcd& a) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / len;
    const complex<double> wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      complex<double> w(1.0);
      for (int k = 0; k < len / 2; ++k) {
        const complex<double> u = a[i + k];
        const complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Spectrum spectrum(const Pulse& p) {
  const int n = p.grid.n_nodes();
  const double dt = p.grid.dt();
  const int npad = next_pow2(n);
  Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(npad);
  buf.head(n) = p.envelope;
  fft(buf);

  const double domega = 2.0 * std::numbers::pi / (npad * dt);
  Spectrum s;
  s.wavenumber_cm1.resize(npad);
  s.intensity.resize(npad);
  // Unwrap FFT ordering into an ascending frequency axis around omega_L.
  for (int j = 0; j < npad; ++j) {
    const int signed_idx = j - npad / 2;
    const int fft_idx = (signed_idx + npad) % npad;
    const double omega = p.omega_L + signed_idx * domega;
    s.wavenumber_cm1[j] = omega * units::hartree_to_cm1;
    s.intensity[j] = std::norm(buf[fft_idx] * dt);
  }
  return s;
}

double fluence(const Pulse& p) {
  const int n = p.grid.n_nodes();
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    sum += w * std::norm(p.envelope[k]);
  }
  return sum * p.grid.dt();
}

PulseEnergy pulse_energy(const Pulse& p, std::optional<double> beam_area_um2) {
  PulseEnergy e;
  e.fluence_au = fluence(p);
  if (!beam_area_um2) return e;
  if (!(*beam_area_um2 > 0)) throw ConfigError("pulse energy: beam area must be positive");
  const double area_m2 = *beam_area_um2 * 1e-12;
  const double joule =
      units::au_field_sq_to_w_m2 * e.fluence_au * units::au_time_to_s * area_m2;
  e.has_area = true;
  e.microjoule = joule * 1e6;
  return e;
}

}  // namespace vibcool
