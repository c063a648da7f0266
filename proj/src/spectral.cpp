#include "mxm/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mxm/kernels.hpp"
#include "mxm/parallel.hpp"

namespace mxm {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::size_t kModeGrain = 2048;

int signed_wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierWorkspace::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

FourierWorkspace::FourierWorkspace(const Grid3& grid)
    : grid_(grid),
      modes_(static_cast<std::size_t>(grid.n()) * grid.n() * (grid.n() / 2 + 1)),
      plans_(std::make_unique<Plans>()) {
  const int n = grid_.n();
  const int nh = n / 2 + 1;
  const double base = base_wavenumber();
  for (auto& x : xi_) x.assign(modes_, 0.0);
  xi2_.assign(modes_, 0.0);
  radial_.assign(modes_, 0.0);
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      for (int kx = 0; kx < nh; ++kx) {
        const std::size_t m = static_cast<std::size_t>(kx) +
                              static_cast<std::size_t>(nh) * (ky + static_cast<std::size_t>(n) * kz);
        const int s[3] = {kx, signed_wavenumber(ky, n), signed_wavenumber(kz, n)};
        double r2 = 0.0;
        for (int a = 0; a < 3; ++a) {
          const bool nyquist = std::abs(s[a]) == n / 2;
          xi_[a][m] = nyquist ? 0.0 : base * s[a];
          r2 += (base * s[a]) * (base * s[a]);
        }
        xi2_[m] = xi_[0][m] * xi_[0][m] + xi_[1][m] * xi_[1][m] + xi_[2][m] * xi_[2][m];
        radial_[m] = std::sqrt(r2);
      }
    }
  }

  std::lock_guard lock(planner_mutex());
  double* real = fftw_alloc_real(grid_.size());
  fftw_complex* cplx = fftw_alloc_complex(modes_);
  plans_->r2c = fftw_plan_dft_r2c_3d(n, n, n, real, cplx,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
  plans_->c2r = fftw_plan_dft_c2r_3d(n, n, n, cplx, real, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(real);
  fftw_free(cplx);
  if (plans_->r2c == nullptr || plans_->c2r == nullptr) {
    throw std::runtime_error("fftw: plan creation failed");
  }
}

FourierWorkspace::~FourierWorkspace() {
  std::lock_guard lock(planner_mutex());
  if (plans_->r2c) fftw_destroy_plan(plans_->r2c);
  if (plans_->c2r) fftw_destroy_plan(plans_->c2r);
}

double FourierWorkspace::base_wavenumber() const {
  return 2.0 * std::numbers::pi / grid_.box_len();
}

void FourierWorkspace::forward(const ScalarField& f, Spectrum& out) const {
  require_same_grid(grid_, f.grid(), "fft forward");
  out.resize(modes_);
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(f.data()), as_fftw(out.data()));
}

void FourierWorkspace::inverse(Spectrum& in, ScalarField& out) const {
  require_same_grid(grid_, out.grid(), "fft inverse");
  fftw_execute_dft_c2r(plans_->c2r, as_fftw(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (double& x : out.values()) x *= scale;
}

namespace {

// Spectral curl of three components already in Fourier space.
void curl_in_place(const FourierWorkspace& ws, std::array<Spectrum, 3>& f) {
  std::array<Spectrum, 3> g;
  for (auto& s : g) s.resize(ws.mode_count());
  const auto& k = kernels::active();
  const auto* fx = reinterpret_cast<const double*>(f[0].data());
  const auto* fy = reinterpret_cast<const double*>(f[1].data());
  const auto* fz = reinterpret_cast<const double*>(f[2].data());
  auto* gx = reinterpret_cast<double*>(g[0].data());
  auto* gy = reinterpret_cast<double*>(g[1].data());
  auto* gz = reinterpret_cast<double*>(g[2].data());
  const double* kx = ws.xi(0).data();
  const double* ky = ws.xi(1).data();
  const double* kz = ws.xi(2).data();
  parallel_range(ws.mode_count(), kModeGrain, [&](std::size_t lo, std::size_t hi) {
    k.curl_modes(kx + lo, ky + lo, kz + lo, fx + 2 * lo, fy + 2 * lo, fz + 2 * lo, gx + 2 * lo,
                 gy + 2 * lo, gz + 2 * lo, hi - lo);
  });
  f = std::move(g);
}

}  // namespace

VectorField3 curl(const FourierWorkspace& ws, const VectorField3& f) {
  std::array<Spectrum, 3> s;
  parallel_tasks(3, [&](std::size_t a) { ws.forward(f[static_cast<int>(a)], s[a]); });
  curl_in_place(ws, s);
  VectorField3 out(f.grid());
  parallel_tasks(3, [&](std::size_t a) { ws.inverse(s[a], out[static_cast<int>(a)]); });
  return out;
}

VectorField3 grad(const FourierWorkspace& ws, const ScalarField& phi) {
  Spectrum s;
  ws.forward(phi, s);
  VectorField3 out(phi.grid());
  parallel_tasks(3, [&](std::size_t a) {
    const auto& xi = ws.xi(static_cast<int>(a));
    Spectrum d(ws.mode_count());
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = std::complex<double>(0.0, xi[m]) * s[m];
    ws.inverse(d, out[static_cast<int>(a)]);
  });
  return out;
}

ScalarField div(const FourierWorkspace& ws, const VectorField3& f) {
  std::array<Spectrum, 3> s;
  parallel_tasks(3, [&](std::size_t a) { ws.forward(f[static_cast<int>(a)], s[a]); });
  Spectrum d(ws.mode_count());
  const auto& kx = ws.xi(0);
  const auto& ky = ws.xi(1);
  const auto& kz = ws.xi(2);
  parallel_range(d.size(), kModeGrain, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      d[m] = std::complex<double>(0.0, 1.0) * (kx[m] * s[0][m] + ky[m] * s[1][m] + kz[m] * s[2][m]);
    }
  });
  ScalarField out(f.grid());
  ws.inverse(d, out);
  return out;
}

ScalarField laplacian(const FourierWorkspace& ws, const ScalarField& phi) {
  Spectrum s;
  ws.forward(phi, s);
  const auto& k2 = ws.xi_norm2();
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= -k2[m];
  ScalarField out(phi.grid());
  ws.inverse(s, out);
  return out;
}

EMState apply_B_scaled(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa,
                       double scale) {
  require_same_grid(ws.grid(), u.grid(), "apply_B");
  require_same_grid(u.grid(), kappa.grid(), "apply_B coefficients");
  std::array<Spectrum, 3> s1, s2;
  parallel_tasks(6, [&](std::size_t c) {
    auto& dst = c < 3 ? s1[c] : s2[c - 3];
    ws.forward(u.component(static_cast<int>(c)), dst);
  });
  curl_in_place(ws, s1);
  curl_in_place(ws, s2);
  EMState out(u.grid());
  // u1 slot <- curl u2 / kappa1, u2 slot <- -curl u1 / kappa2
  parallel_tasks(6, [&](std::size_t c) {
    const bool first = c < 3;
    const int a = static_cast<int>(c % 3);
    auto& src = first ? s2[a] : s1[a];
    ScalarField& dst = out.component(static_cast<int>(c));
    ws.inverse(src, dst);
    const ScalarField& k = first ? kappa.kappa1 : kappa.kappa2;
    const double sign = first ? scale : -scale;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = sign * dst[i] / k[i];
  });
  return out;
}

EMState apply_B(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa) {
  return apply_B_scaled(ws, u, kappa, 1.0);
}

EMState exp_B(const FourierWorkspace& ws, double t, const EMState& u, const Coefficients& kappa) {
  if (!kappa.is_constant()) {
    throw std::invalid_argument("exp_B: coefficients must be spatially constant");
  }
  require_same_grid(ws.grid(), u.grid(), "exp_B");
  const double k1 = kappa.kappa1[0];
  const double k2 = kappa.kappa2[0];
  const double inv_speed = 1.0 / std::sqrt(k1 * k2);
  const double r21 = std::sqrt(k2 / k1);
  const double r12 = std::sqrt(k1 / k2);

  std::array<Spectrum, 6> s;
  parallel_tasks(6, [&](std::size_t c) { ws.forward(u.component(static_cast<int>(c)), s[c]); });

  const auto& kx = ws.xi(0);
  const auto& ky = ws.xi(1);
  const auto& kz = ws.xi(2);
  const auto& k2n = ws.xi_norm2();
  using C = std::complex<double>;
  const C I(0.0, 1.0);
  parallel_range(ws.mode_count(), kModeGrain, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      if (k2n[m] == 0.0) continue;
      const double kn = std::sqrt(k2n[m]);
      const double n[3] = {kx[m] / kn, ky[m] / kn, kz[m] / kn};
      const double phase = t * kn * inv_speed;
      const double c = std::cos(phase);
      const double sn = std::sin(phase);
      const C a[3] = {s[0][m], s[1][m], s[2][m]};
      const C b[3] = {s[3][m], s[4][m], s[5][m]};
      const C na = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
      const C nb = n[0] * b[0] + n[1] * b[1] + n[2] * b[2];
      const C ja[3] = {n[1] * a[2] - n[2] * a[1], n[2] * a[0] - n[0] * a[2],
                       n[0] * a[1] - n[1] * a[0]};
      const C jb[3] = {n[1] * b[2] - n[2] * b[1], n[2] * b[0] - n[0] * b[2],
                       n[0] * b[1] - n[1] * b[0]};
      for (int d = 0; d < 3; ++d) {
        const C aL = n[d] * na;
        const C bL = n[d] * nb;
        s[d][m] = aL + c * (a[d] - aL) - I * (sn * r21) * jb[d];
        s[3 + d][m] = bL + c * (b[d] - bL) + I * (sn * r12) * ja[d];
      }
    }
  });

  EMState out(u.grid());
  parallel_tasks(6, [&](std::size_t c) { ws.inverse(s[c], out.component(static_cast<int>(c))); });
  return out;
}

double MollifierSpec::symbol(double radial_wavenumber, double base_wavenumber) const {
  const double r = cutoff(base_wavenumber);
  if (radial_wavenumber <= r) return 1.0;
  if (radial_wavenumber >= 2.0 * r) return 0.0;
  const auto psi = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double x = (radial_wavenumber - r) / r;
  const double step = psi(x) / (psi(x) + psi(1.0 - x));
  return 1.0 - step;
}

ScalarField mollify(const FourierWorkspace& ws, const MollifierSpec& spec, const ScalarField& f) {
  if (spec.index < 1) throw std::invalid_argument("mollifier index must be positive");
  Spectrum s;
  ws.forward(f, s);
  const auto& rad = ws.radial();
  const double base = ws.base_wavenumber();
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= spec.symbol(rad[m], base);
  ScalarField out(f.grid());
  ws.inverse(s, out);
  return out;
}

VectorField3 mollify(const FourierWorkspace& ws, const MollifierSpec& spec,
                     const VectorField3& f) {
  VectorField3 out(f.grid());
  parallel_tasks(3, [&](std::size_t a) {
    out[static_cast<int>(a)] = mollify(ws, spec, f[static_cast<int>(a)]);
  });
  return out;
}

EMState mollify(const FourierWorkspace& ws, const MollifierSpec& spec, const EMState& u) {
  EMState out(u.grid());
  parallel_tasks(6, [&](std::size_t c) {
    out.component(static_cast<int>(c)) = mollify(ws, spec, u.component(static_cast<int>(c)));
  });
  return out;
}

ScalarField null_modes(const FourierWorkspace& ws, const ScalarField& f) {
  Spectrum s;
  ws.forward(f, s);
  const auto& k2 = ws.xi_norm2();
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (k2[m] != 0.0) s[m] = 0.0;
  }
  ScalarField out(f.grid());
  ws.inverse(s, out);
  return out;
}

EMState null_modes(const FourierWorkspace& ws, const EMState& u) {
  EMState out(u.grid());
  parallel_tasks(6, [&](std::size_t c) {
    out.component(static_cast<int>(c)) = null_modes(ws, u.component(static_cast<int>(c)));
  });
  return out;
}

ScalarField random_band_limited(const FourierWorkspace& ws, std::uint64_t seed, int band) {
  const int n = ws.grid().n();
  const int nh = n / 2 + 1;
  band = std::min(band, n / 2 - 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Spectrum s(ws.mode_count(), 0.0);
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      for (int kx = 0; kx < nh; ++kx) {
        const double re = normal(rng);
        const double im = normal(rng);
        if (kx > band || std::abs(signed_wavenumber(ky, n)) > band ||
            std::abs(signed_wavenumber(kz, n)) > band) {
          continue;
        }
        s[static_cast<std::size_t>(kx) + static_cast<std::size_t>(nh) * (ky + static_cast<std::size_t>(n) * kz)] = {re, im};
      }
    }
  }
  ScalarField out(ws.grid());
  ws.inverse(s, out);
  double ms = 0.0;
  for (double x : out.values()) ms += x * x;
  ms /= static_cast<double>(out.size());
  if (ms > 0.0) {
    const double scale = 1.0 / std::sqrt(ms);
    for (double& x : out.values()) x *= scale;
  }
  return out;
}

VectorField3 random_band_limited_vector(const FourierWorkspace& ws, std::uint64_t seed, int band) {
  VectorField3 out(ws.grid());
  for (int a = 0; a < 3; ++a) {
    out[a] = random_band_limited(ws, seed * 3 + static_cast<std::uint64_t>(a) + 1, band);
  }
  return out;
}

}  // namespace mxm
