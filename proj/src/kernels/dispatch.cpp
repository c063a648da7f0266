#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace mxm::kernels {

namespace {

const KernelTable kScalar{"scalar",
                          detail::axpy_scalar,
                          detail::axpby_scalar,
                          detail::dot_scalar,
                          detail::weighted_dot_scalar,
                          detail::curl_modes_scalar,
                          detail::ll_rhs_scalar};

#if MXM_HAVE_AVX2
const KernelTable kAvx2{"avx2",
                        detail::axpy_avx2,
                        detail::axpby_avx2,
                        detail::dot_avx2,
                        detail::weighted_dot_avx2,
                        detail::curl_modes_avx2,
                        detail::ll_rhs_avx2};
#endif

const KernelTable* detect() {
  const char* env = std::getenv("MXM_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &kScalar;
  if (const KernelTable* t = avx2()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
#if MXM_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current().store(&kScalar, std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* t = avx2()) {
      current().store(t, std::memory_order_release);
      return true;
    }
  }
  return false;
}

}  // namespace mxm::kernels
