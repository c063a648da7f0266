// AVX2 variants. Compiled with -mavx2 (no FMA) so every lane performs the
// same rounding sequence as the scalar reference.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace mxm::kernels::detail {

namespace {

inline double hsum_ordered(__m256d acc) {
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  return (s[0] + s[1]) + (s[2] + s[3]);
}

}  // namespace

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpby_avx2(double a, const double* x, double b, const double* y, double* out,
                std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double total = hsum_ordered(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double weighted_dot_avx2(const double* w, const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wx = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wx, _mm256_loadu_pd(y + i)));
  }
  double total = hsum_ordered(acc);
  for (; i < n; ++i) total += (w[i] * x[i]) * y[i];
  return total;
}

void curl_modes_avx2(const double* xi_x, const double* xi_y, const double* xi_z,
                     const double* fx, const double* fy, const double* fz, double* gx,
                     double* gy, double* gz, std::size_t modes) {
  // Two complex modes per register: (re0, im0, re1, im1).
  const __m256d flip = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  std::size_t m = 0;
  for (; m + 2 <= modes; m += 2) {
    const __m256d kx = _mm256_set_pd(xi_x[m + 1], xi_x[m + 1], xi_x[m], xi_x[m]);
    const __m256d ky = _mm256_set_pd(xi_y[m + 1], xi_y[m + 1], xi_y[m], xi_y[m]);
    const __m256d kz = _mm256_set_pd(xi_z[m + 1], xi_z[m + 1], xi_z[m], xi_z[m]);
    const __m256d x = _mm256_loadu_pd(fx + 2 * m);
    const __m256d y = _mm256_loadu_pd(fy + 2 * m);
    const __m256d z = _mm256_loadu_pd(fz + 2 * m);
    const __m256d cx = _mm256_sub_pd(_mm256_mul_pd(ky, z), _mm256_mul_pd(kz, y));
    const __m256d cy = _mm256_sub_pd(_mm256_mul_pd(kz, x), _mm256_mul_pd(kx, z));
    const __m256d cz = _mm256_sub_pd(_mm256_mul_pd(kx, y), _mm256_mul_pd(ky, x));
    // multiply by i: (re, im) -> (-im, re)
    _mm256_storeu_pd(gx + 2 * m, _mm256_mul_pd(_mm256_permute_pd(cx, 0b0101), flip));
    _mm256_storeu_pd(gy + 2 * m, _mm256_mul_pd(_mm256_permute_pd(cy, 0b0101), flip));
    _mm256_storeu_pd(gz + 2 * m, _mm256_mul_pd(_mm256_permute_pd(cz, 0b0101), flip));
  }
  if (m < modes) {
    curl_modes_scalar(xi_x + m, xi_y + m, xi_z + m, fx + 2 * m, fy + 2 * m, fz + 2 * m,
                      gx + 2 * m, gy + 2 * m, gz + 2 * m, modes - m);
  }
}

void ll_rhs_avx2(const LLParams& p, const double* mx, const double* my, const double* mz,
                 const double* hx, const double* hy, const double* hz, double* fx,
                 double* fy, double* fz, std::size_t n) {
  const __m256d ex = _mm256_set1_pd(p.axis[0]);
  const __m256d ey = _mm256_set1_pd(p.axis[1]);
  const __m256d ez = _mm256_set1_pd(p.axis[2]);
  const __m256d hex = _mm256_set1_pd(p.h_ext[0]);
  const __m256d hey = _mm256_set1_pd(p.h_ext[1]);
  const __m256d hez = _mm256_set1_pd(p.h_ext[2]);
  const __m256d ka = _mm256_set1_pd(p.ka);
  const __m256d gamma = _mm256_set1_pd(p.gamma);
  const __m256d alpha = _mm256_set1_pd(p.alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(mx + i);
    const __m256d vy = _mm256_loadu_pd(my + i);
    const __m256d vz = _mm256_loadu_pd(mz + i);
    const __m256d me = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(vx, ex), _mm256_mul_pd(vy, ey)), _mm256_mul_pd(vz, ez));
    const __m256d kme = _mm256_mul_pd(ka, me);
    const __m256d tx =
        _mm256_add_pd(_mm256_add_pd(_mm256_loadu_pd(hx + i), _mm256_mul_pd(kme, ex)), hex);
    const __m256d ty =
        _mm256_add_pd(_mm256_add_pd(_mm256_loadu_pd(hy + i), _mm256_mul_pd(kme, ey)), hey);
    const __m256d tz =
        _mm256_add_pd(_mm256_add_pd(_mm256_loadu_pd(hz + i), _mm256_mul_pd(kme, ez)), hez);
    const __m256d c1x = _mm256_sub_pd(_mm256_mul_pd(vy, tz), _mm256_mul_pd(vz, ty));
    const __m256d c1y = _mm256_sub_pd(_mm256_mul_pd(vz, tx), _mm256_mul_pd(vx, tz));
    const __m256d c1z = _mm256_sub_pd(_mm256_mul_pd(vx, ty), _mm256_mul_pd(vy, tx));
    const __m256d c2x = _mm256_sub_pd(_mm256_mul_pd(vy, c1z), _mm256_mul_pd(vz, c1y));
    const __m256d c2y = _mm256_sub_pd(_mm256_mul_pd(vz, c1x), _mm256_mul_pd(vx, c1z));
    const __m256d c2z = _mm256_sub_pd(_mm256_mul_pd(vx, c1y), _mm256_mul_pd(vy, c1x));
    _mm256_storeu_pd(fx + i,
                     _mm256_sub_pd(_mm256_mul_pd(gamma, c1x), _mm256_mul_pd(alpha, c2x)));
    _mm256_storeu_pd(fy + i,
                     _mm256_sub_pd(_mm256_mul_pd(gamma, c1y), _mm256_mul_pd(alpha, c2y)));
    _mm256_storeu_pd(fz + i,
                     _mm256_sub_pd(_mm256_mul_pd(gamma, c1z), _mm256_mul_pd(alpha, c2z)));
  }
  if (i < n) {
    ll_rhs_scalar(p, mx + i, my + i, mz + i, hx + i, hy + i, hz + i, fx + i, fy + i, fz + i,
                  n - i);
  }
}

}  // namespace mxm::kernels::detail
