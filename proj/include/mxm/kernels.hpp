#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant selected at runtime.
//
// The variants perform the same floating-point operations in the same order
// (the build disables mul/add contraction), so they agree bit-for-bit.
// Reductions use four interleaved partial sums combined as
// (s0 + s1) + (s2 + s3), followed by the tail in index order.

#include <cstddef>
#include <string_view>

namespace mxm::kernels {

/// Landau-Lifschitz pointwise parameters:
/// F = gamma m x H_T - alpha m x (m x H_T), H_T = h + ka (m.e) e + h_ext.
struct LLParams {
  double gamma;
  double alpha;
  double ka;
  double axis[3];
  double h_ext[3];
};

struct KernelTable {
  const char* name;
  /// y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// out = a x + b y
  void (*axpby)(double a, const double* x, double b, const double* y, double* out,
                std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// sum w x y
  double (*weighted_dot)(const double* w, const double* x, const double* y, std::size_t n);
  /// g = i xi ^ f per mode; f, g interleaved complex (re, im), xi real.
  void (*curl_modes)(const double* xi_x, const double* xi_y, const double* xi_z,
                     const double* fx, const double* fy, const double* fz, double* gx,
                     double* gy, double* gz, std::size_t modes);
  /// Structure-of-arrays LL right-hand side over n points.
  void (*ll_rhs)(const LLParams& p, const double* mx, const double* my, const double* mz,
                 const double* hx, const double* hy, const double* hz, double* fx,
                 double* fy, double* fz, std::size_t n);
};

const KernelTable& scalar();
/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2();

/// The table used by the library. Chosen on first use: AVX2 when available,
/// unless the environment variable MXM_KERNELS=scalar overrides it.
const KernelTable& active();
/// Forces a variant by name ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);

}  // namespace mxm::kernels
