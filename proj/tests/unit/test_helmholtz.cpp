#include <numbers>

#include "doctest.h"
#include "mxm/errors.hpp"
#include "mxm/helmholtz.hpp"
#include "mxm/matter.hpp"
#include "oracles/dense_dft.hpp"
#include "unit/support.hpp"

using namespace mxm;
using testing::max_abs;

namespace {

ScalarField smooth_kappa(const Grid3& g, double base, double amp) {
  ScalarField k(g);
  const double w = 2.0 * std::numbers::pi / g.box_len();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.position(i);
    k[i] = base + amp * std::sin(w * x[0]) * std::cos(w * x[1]) + 0.5 * amp * std::sin(w * x[2]);
  }
  return k;
}

VectorField3 minus(const VectorField3& a, const VectorField3& b) {
  VectorField3 d = a;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < d[c].size(); ++i) d[c][i] -= b[c][i];
  }
  return d;
}

const ProjectorConfig kTight{ProjectorMode::iterative_variable, 1e-14, 0};

}  // namespace

TEST_SUITE("helmholtz") {

TEST_CASE("gradients are their own complement, solenoidal fields have none") {
  const Grid3 g(16, 2.0);
  const FourierWorkspace ws(g);
  const ScalarField k(g, 1.7);
  const auto gp = grad(ws, random_band_limited(ws, 3, 4));
  CHECK(max_abs(minus(project_complement(ws, gp, k), gp)) <= 1e-12 * max_abs(gp));
  const auto sol = curl(ws, random_band_limited_vector(ws, 4, 4));
  CHECK(max_abs(project_complement(ws, sol, k)) <= 1e-12 * max_abs(sol));
}

TEST_CASE("variable kappa agrees with a dense direct solve") {
  const int n = 8;
  const Grid3 g(n, 2.0);
  const FourierWorkspace ws(g);
  const ScalarField k = smooth_kappa(g, 1.5, 0.6);
  const auto u = random_band_limited_vector(ws, 12, 3);

  SolveStats stats;
  const auto q = project_complement(ws, u, k, kTight, &stats);
  CHECK(stats.relative_residual <= 1e-13);

  const oracle::DenseOps ops(n, g.box_len());
  Eigen::VectorXd kv(g.size());
  std::array<Eigen::VectorXd, 3> uv;
  for (std::size_t i = 0; i < g.size(); ++i) kv[i] = k[i];
  for (int c = 0; c < 3; ++c) {
    uv[c].resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) uv[c][i] = u[c][i];
  }
  const auto ref = ops.complement(kv, uv);
  double err = 0.0, scale = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(q[c][i] - ref[c][i]));
      scale = std::max(scale, std::abs(ref[c][i]));
    }
  }
  CHECK(err <= 1e-8 * scale);

  // constant kappa through the dense path matches the FFT path too
  const ScalarField kc(g, 0.9);
  const auto qc = project_complement(ws, u, kc, {ProjectorMode::fft_constant});
  const auto refc = ops.complement(Eigen::VectorXd::Constant(g.size(), 0.9), uv);
  double errc = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i) errc = std::max(errc, std::abs(qc[c][i] - refc[c][i]));
  }
  CHECK(errc <= 1e-11);
}

TEST_CASE("projector algebra") {
  const Grid3 g(16, 2.0);
  const FourierWorkspace ws(g);
  const Coefficients kv(smooth_kappa(g, 1.2, 0.5), smooth_kappa(g, 2.0, 0.7));
  const auto kc = Coefficients::constant(g, 1.2, 2.0);
  for (const auto* k : {&kc, &kv}) {
    const ProjectorConfig cfg = k == &kv ? kTight : ProjectorConfig{};
    EMState gp(g);
    gp.u1 = grad(ws, random_band_limited(ws, 1, 3));
    gp.u2 = grad(ws, random_band_limited(ws, 2, 3));
    CHECK(weighted_norm(project_P(ws, gp, *k, cfg), *k) <= 1e-10 * weighted_norm(gp, *k));

    const auto u = testing::random_em(ws, 5), w = testing::random_em(ws, 6);
    const auto pu = project_P(ws, u, *k, cfg);
    const auto ppu = project_P(ws, pu, *k, cfg);
    CHECK(weighted_norm(testing::diff(ppu, pu), *k) <= 1e-10 * weighted_norm(u, *k));
    const auto qw = project_complement(ws, w, *k, cfg);
    CHECK(std::abs(weighted_inner(pu, qw, *k)) <=
          1e-10 * weighted_norm(u, *k) * weighted_norm(w, *k));
    // ran P is kappa-divergence free
    const auto pw = project_P(ws, w, *k, cfg);
    VectorField3 flux = pw.u1;
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < g.size(); ++i) flux[c][i] *= k->kappa1[i];
    }
    CHECK(max_abs(div(ws, flux)) <= 1e-9 * max_abs(w));
  }
}

TEST_CASE("mode selection and failures") {
  const Grid3 g(8, 1.0);
  const FourierWorkspace ws(g);
  const ScalarField kv = smooth_kappa(g, 1.0, 0.5);
  const auto u = random_band_limited_vector(ws, 3, 3);
  CHECK_THROWS_AS(project_complement(ws, u, kv, {ProjectorMode::fft_constant}),
                  std::invalid_argument);
  CHECK_THROWS_AS(project_complement(ws, u, kv, {ProjectorMode::iterative_variable, 1e-14, 1}),
                  ConvergenceError);

  // the iterative path on constant kappa reproduces the FFT path
  const ScalarField kc(g, 2.0);
  const auto a = project_complement(ws, u, kc, {ProjectorMode::fft_constant});
  const auto b = project_complement(ws, u, kc, kTight);
  CHECK(max_abs(minus(a, b)) <= 1e-12 * max_abs(a));

  const auto phi = helmholtz_potential(ws, u, kv, kTight);
  CHECK(max_abs(minus(grad(ws, phi), project_complement(ws, u, kv, kTight))) <= 1e-12 * max_abs(u));
  double mean = 0.0;
  for (double x : phi.values()) mean += x;
  CHECK(std::abs(mean) / g.size() <= 1e-12);
}

TEST_CASE("constraint residual") {
  const Grid3 g(16, 2.0);
  const FourierWorkspace ws(g);
  const auto mask = testing::central_box(g);
  const auto k = Coefficients::constant(g, 1.0, 1.0);
  const LandauLifschitzModel model({});

  const MatterState zero_v(3, mask.voxel_count());
  CHECK(constraint_residual(ws, EMState(g), zero_v, model, mask, k) == 0.0);

  // coupling field of LL is -M on Omega
  const auto v = testing::texture(g, mask);
  const auto cf = coupling_field(v, model, mask, k);
  for (std::size_t q = 0; q < mask.voxel_count(); ++q) {
    CHECK(cf.u1[0][mask.voxels()[q]] == -v.value(0, q));
  }
  CHECK(max_abs(cf.u2) == 0.0);

  // prepared data: u = P w + (Id - P)(-M)
  const auto w = testing::random_em(ws, 3);
  EMState u = project_P(ws, w, k);
  const auto qc = project_complement(ws, cf, k);
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i) u.component(c)[i] += qc.component(c)[i];
  }
  CHECK(constraint_residual(ws, u, v, model, mask, k) <= 1e-10);

  // adding a gradient raises the residual by exactly its norm
  EMState pert = project_P(ws, w, k);
  EMState gp(g);
  gp.u1 = grad(ws, random_band_limited(ws, 9, 3));
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i) pert.component(c)[i] += gp.component(c)[i];
  }
  const double expected = weighted_norm(gp, k) / weighted_norm(pert, k);
  CHECK(std::abs(constraint_residual(ws, pert, zero_v, model, mask, k) - expected) <= 1e-10);
}

}
