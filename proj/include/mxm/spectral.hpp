#pragma once

// Spectral differential operators on the periodic box.
//
// Derivatives multiply by i*xi, where xi is the wavevector with the Nyquist
// component set to zero; with that convention grad and -div are adjoint,
// curl is symmetric, and curl(grad) = div(curl) = 0 hold to round-off.

#include <complex>
#include <memory>
#include <vector>

#include "mxm/grid.hpp"

namespace mxm {

using Spectrum = std::vector<std::complex<double>>;

/// FFT plans and per-mode wavevectors for one grid. Plans are created once;
/// all transforms are const and may run concurrently.
class FourierWorkspace {
 public:
  explicit FourierWorkspace(const Grid3& grid);
  ~FourierWorkspace();
  FourierWorkspace(const FourierWorkspace&) = delete;
  FourierWorkspace& operator=(const FourierWorkspace&) = delete;

  const Grid3& grid() const { return grid_; }
  /// n * n * (n/2 + 1) half-spectrum modes, x-frequency fastest.
  std::size_t mode_count() const { return modes_; }
  /// Derivative wavevector component (Nyquist zeroed).
  const std::vector<double>& xi(int axis) const { return xi_[axis]; }
  /// |xi|^2 with the derivative wavevector.
  const std::vector<double>& xi_norm2() const { return xi2_; }
  /// Radial wavenumber including the Nyquist components (for filters).
  const std::vector<double>& radial() const { return radial_; }
  /// Fundamental wavenumber 2 pi / box_len.
  double base_wavenumber() const;

  void forward(const ScalarField& f, Spectrum& out) const;
  /// Normalised inverse. `in` is used as scratch and destroyed.
  void inverse(Spectrum& in, ScalarField& out) const;

 private:
  Grid3 grid_;
  std::size_t modes_;
  std::array<std::vector<double>, 3> xi_;
  std::vector<double> xi2_;
  std::vector<double> radial_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

VectorField3 curl(const FourierWorkspace& ws, const VectorField3& f);
VectorField3 grad(const FourierWorkspace& ws, const ScalarField& phi);
ScalarField div(const FourierWorkspace& ws, const VectorField3& f);
ScalarField laplacian(const FourierWorkspace& ws, const ScalarField& phi);

/// B(u1, u2) = (kappa1^-1 curl u2, -kappa2^-1 curl u1).
EMState apply_B(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa);
/// scale * B u, fused to save one pass.
EMState apply_B_scaled(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa,
                       double scale);

/// Exact propagator exp(-t B) for spatially constant coefficients. Each
/// Fourier mode rotates its transverse part at frequency |xi| / sqrt(k1 k2);
/// longitudinal parts and the zero mode are left unchanged.
/// Throws std::invalid_argument if kappa is not constant.
EMState exp_B(const FourierWorkspace& ws, double t, const EMState& u,
              const Coefficients& kappa);

/// Smooth radial low-pass filter w_n: equal to 1 for |xi| <= r_n, 0 for
/// |xi| >= 2 r_n, monotone C-infinity transition between, with
/// r_n = index * base_wavenumber / 2.
struct MollifierSpec {
  int index = 1;

  double cutoff(double base_wavenumber) const { return 0.5 * index * base_wavenumber; }
  double symbol(double radial_wavenumber, double base_wavenumber) const;
};

ScalarField mollify(const FourierWorkspace& ws, const MollifierSpec& spec, const ScalarField& f);
VectorField3 mollify(const FourierWorkspace& ws, const MollifierSpec& spec,
                     const VectorField3& f);
EMState mollify(const FourierWorkspace& ws, const MollifierSpec& spec, const EMState& u);

/// The part of f carried by modes with xi = 0: the mean and the pure-Nyquist
/// checkerboards. Every derivative, hence B and Id - P, annihilates it.
ScalarField null_modes(const FourierWorkspace& ws, const ScalarField& f);
EMState null_modes(const FourierWorkspace& ws, const EMState& u);

/// Real band-limited random field: Fourier coefficients with |k_a| <= band
/// (integer wavenumbers, Nyquist excluded) drawn from a seeded generator,
/// scaled to unit RMS.
ScalarField random_band_limited(const FourierWorkspace& ws, std::uint64_t seed, int band);
VectorField3 random_band_limited_vector(const FourierWorkspace& ws, std::uint64_t seed,
                                        int band);

}  // namespace mxm
