#include <random>
#include <vector>

#include "doctest.h"
#include "mxm/kernels.hpp"

using namespace mxm;

TEST_SUITE("kernels") {

TEST_CASE("scalar and AVX2 variants agree bitwise") {
  const auto* avx = kernels::avx2();
  if (!avx) {
    MESSAGE("AVX2 not available; nothing to compare");
    return;
  }
  const auto& sc = kernels::scalar();
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  // lengths cover empty, sub-vector and every tail size
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1001u}) {
    std::vector<double> x(n), y(n), w(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(rng);
      y[i] = normal(rng);
      z[i] = normal(rng);
      w[i] = std::abs(normal(rng));
    }
    CHECK(sc.dot(x.data(), y.data(), n) == avx->dot(x.data(), y.data(), n));
    CHECK(sc.weighted_dot(w.data(), x.data(), y.data(), n) ==
          avx->weighted_dot(w.data(), x.data(), y.data(), n));

    std::vector<double> a = y, b = y;
    sc.axpy(0.7, x.data(), a.data(), n);
    avx->axpy(0.7, x.data(), b.data(), n);
    CHECK(a == b);
    sc.axpby(-1.3, x.data(), 0.4, z.data(), a.data(), n);
    avx->axpby(-1.3, x.data(), 0.4, z.data(), b.data(), n);
    CHECK(a == b);

    const kernels::LLParams p{1.7, 0.3, 0.5, {0.6, 0.0, 0.8}, {0.0, 0.2, 1.0}};
    std::vector<double> f1(3 * n), f2(3 * n);
    sc.ll_rhs(p, x.data(), y.data(), z.data(), w.data(), z.data(), y.data(), f1.data(),
              f1.data() + n, f1.data() + 2 * n, n);
    avx->ll_rhs(p, x.data(), y.data(), z.data(), w.data(), z.data(), y.data(), f2.data(),
                f2.data() + n, f2.data() + 2 * n, n);
    CHECK(f1 == f2);

    // curl on interleaved complex modes
    std::vector<double> fx(2 * n), fy(2 * n), fz(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      fx[i] = normal(rng);
      fy[i] = normal(rng);
      fz[i] = normal(rng);
    }
    std::vector<double> g1(6 * n), g2(6 * n);
    sc.curl_modes(x.data(), y.data(), z.data(), fx.data(), fy.data(), fz.data(), g1.data(),
                  g1.data() + 2 * n, g1.data() + 4 * n, n);
    avx->curl_modes(x.data(), y.data(), z.data(), fx.data(), fy.data(), fz.data(), g2.data(),
                    g2.data() + 2 * n, g2.data() + 4 * n, n);
    CHECK(g1 == g2);
  }
}

TEST_CASE("variant selection") {
  CHECK(kernels::select("scalar"));
  CHECK(std::string(kernels::active().name) == "scalar");
  CHECK_FALSE(kernels::select("neon"));
  if (kernels::avx2()) {
    CHECK(kernels::select("avx2"));
    CHECK(std::string(kernels::active().name) == "avx2");
  }
}

TEST_CASE("scalar LL kernel matches the cross-product formula") {
  const kernels::LLParams p{1.3, 0.4, 0.0, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  const double m[3] = {0.2, -0.5, 0.7}, h[3] = {1.1, 0.3, -0.4};
  double f[3];
  kernels::scalar().ll_rhs(p, &m[0], &m[1], &m[2], &h[0], &h[1], &h[2], &f[0], &f[1], &f[2], 1);
  const double mh[3] = {m[1] * h[2] - m[2] * h[1], m[2] * h[0] - m[0] * h[2],
                        m[0] * h[1] - m[1] * h[0]};
  const double mmh[3] = {m[1] * mh[2] - m[2] * mh[1], m[2] * mh[0] - m[0] * mh[2],
                         m[0] * mh[1] - m[1] * mh[0]};
  for (int a = 0; a < 3; ++a) CHECK(f[a] == doctest::Approx(1.3 * mh[a] - 0.4 * mmh[a]).epsilon(1e-14));
}

}
