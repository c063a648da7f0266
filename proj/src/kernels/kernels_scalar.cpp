#include "kernels_impl.hpp"

namespace mxm::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_scalar(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) s[l] += x[i + l] * y[i + l];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double weighted_dot_scalar(const double* w, const double* x, const double* y,
                           std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) s[l] += (w[i + l] * x[i + l]) * y[i + l];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += (w[i] * x[i]) * y[i];
  return total;
}

void curl_modes_scalar(const double* xi_x, const double* xi_y, const double* xi_z,
                       const double* fx, const double* fy, const double* fz, double* gx,
                       double* gy, double* gz, std::size_t modes) {
  // i * (a + ib) = -b + ia
  for (std::size_t m = 0; m < modes; ++m) {
    const double kx = xi_x[m], ky = xi_y[m], kz = xi_z[m];
    const double xr = fx[2 * m], xim = fx[2 * m + 1];
    const double yr = fy[2 * m], yim = fy[2 * m + 1];
    const double zr = fz[2 * m], zim = fz[2 * m + 1];
    const double cxr = ky * zr - kz * yr, cxi = ky * zim - kz * yim;
    const double cyr = kz * xr - kx * zr, cyi = kz * xim - kx * zim;
    const double czr = kx * yr - ky * xr, czi = kx * yim - ky * xim;
    gx[2 * m] = -cxi;
    gx[2 * m + 1] = cxr;
    gy[2 * m] = -cyi;
    gy[2 * m + 1] = cyr;
    gz[2 * m] = -czi;
    gz[2 * m + 1] = czr;
  }
}

void ll_rhs_scalar(const LLParams& p, const double* mx, const double* my, const double* mz,
                   const double* hx, const double* hy, const double* hz, double* fx,
                   double* fy, double* fz, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double me = (mx[i] * p.axis[0] + my[i] * p.axis[1]) + mz[i] * p.axis[2];
    const double kme = p.ka * me;
    const double tx = (hx[i] + kme * p.axis[0]) + p.h_ext[0];
    const double ty = (hy[i] + kme * p.axis[1]) + p.h_ext[1];
    const double tz = (hz[i] + kme * p.axis[2]) + p.h_ext[2];
    const double c1x = my[i] * tz - mz[i] * ty;
    const double c1y = mz[i] * tx - mx[i] * tz;
    const double c1z = mx[i] * ty - my[i] * tx;
    const double c2x = my[i] * c1z - mz[i] * c1y;
    const double c2y = mz[i] * c1x - mx[i] * c1z;
    const double c2z = mx[i] * c1y - my[i] * c1x;
    fx[i] = p.gamma * c1x - p.alpha * c2x;
    fy[i] = p.gamma * c1y - p.alpha * c2y;
    fz[i] = p.gamma * c1z - p.alpha * c2z;
  }
}

}  // namespace mxm::kernels::detail
