#pragma once

#include "mxm/kernels.hpp"

namespace mxm::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void axpby_scalar(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
double weighted_dot_scalar(const double* w, const double* x, const double* y, std::size_t n);
void curl_modes_scalar(const double* xi_x, const double* xi_y, const double* xi_z,
                       const double* fx, const double* fy, const double* fz, double* gx,
                       double* gy, double* gz, std::size_t modes);
void ll_rhs_scalar(const LLParams& p, const double* mx, const double* my, const double* mz,
                   const double* hx, const double* hy, const double* hz, double* fx,
                   double* fy, double* fz, std::size_t n);

#if MXM_HAVE_AVX2
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void axpby_avx2(double a, const double* x, double b, const double* y, double* out,
                std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);
double weighted_dot_avx2(const double* w, const double* x, const double* y, std::size_t n);
void curl_modes_avx2(const double* xi_x, const double* xi_y, const double* xi_z,
                     const double* fx, const double* fy, const double* fz, double* gx,
                     double* gy, double* gz, std::size_t modes);
void ll_rhs_avx2(const LLParams& p, const double* mx, const double* my, const double* mz,
                 const double* hx, const double* hy, const double* hz, double* fx,
                 double* fy, double* fz, std::size_t n);
#endif

}  // namespace mxm::kernels::detail
