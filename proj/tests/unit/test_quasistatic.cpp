#include "doctest.h"
#include "mxm/helmholtz.hpp"
#include "mxm/quasistatic.hpp"
#include "oracles/dense_dft.hpp"
#include "unit/support.hpp"

using namespace mxm;
using testing::max_abs;

namespace {

LandauLifschitzParams damped() {
  LandauLifschitzParams p;
  p.alpha = 0.5;
  p.h_ext = {0.0, 0.0, 1.0};
  return p;
}

struct Setup {
  Setup(const MatterModel& model, int n, double len, DomainMask m)
      : grid(n, len),
        ws(grid),
        kappa(Coefficients::constant(grid, 1.0, 1.0)),
        mask(std::move(m)),
        system(model, kappa, mask, ws) {}

  Grid3 grid;
  FourierWorkspace ws;
  Coefficients kappa;
  DomainMask mask;
  CoupledSystem system;
};

}  // namespace

TEST_SUITE("quasistatic") {

TEST_CASE("scaled right-hand side") {
  const LandauLifschitzModel ll(damped());
  const Grid3 g(16, 4.0);
  Setup s(ll, 16, 4.0, testing::central_box(g));
  SimState st{0.0, testing::random_em(s.ws, 4), testing::texture(s.grid, s.mask)};

  const auto a = rhs_eta(st, 1.0, s.system);
  const auto b = rhs_full(st, s.system);
  CHECK(max_abs(testing::diff(a.du, b.du)) == 0.0);
  CHECK(testing::max_diff(a.dv, b.dv) == 0.0);

  // defining identity: eta du + B u - eta (kappa^-1 . l) F = 0
  const double eta = 0.5;
  const auto d = rhs_eta(st, eta, s.system);
  const auto bu = apply_B(s.ws, st.u, s.kappa);
  const auto src = s.system.source(s.system.matter_rhs(st.u, st.v));
  double res = 0.0;
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      res = std::max(res, std::abs(eta * d.du.component(c)[i] + bu.component(c)[i] -
                                   eta * src.component(c)[i]));
    }
  }
  CHECK(res <= 1e-12 * max_abs(bu));

  // curl-free fields carry no 1/eta term
  SimState cf = st;
  cf.u.u1 = grad(s.ws, random_band_limited(s.ws, 1, 3));
  cf.u.u2 = grad(s.ws, random_band_limited(s.ws, 2, 3));
  const auto e1 = rhs_eta(cf, 1.0, s.system);
  const auto e2 = rhs_eta(cf, 1e-3, s.system);
  CHECK(max_abs(testing::diff(e1.du, e2.du)) <= 1e-9 * max_abs(e1.du));
  CHECK_THROWS_AS(rhs_eta(st, 0.0, s.system), std::invalid_argument);
}

TEST_CASE("reduced right-hand side") {
  const LandauLifschitzModel ll(damped());
  const Grid3 g(16, 4.0);
  Setup s(ll, 16, 4.0, testing::central_box(g));
  const MatterState zero(3, s.mask.voxel_count());
  const auto f0 = reduced_rhs(zero, s.system);
  for (double x : f0.flat()) CHECK(x == 0.0);

  MatterState ez(3, s.mask.voxel_count());
  for (auto& x : ez.component(2)) x = 1.0;
  const auto f = reduced_rhs(ez, s.system);
  for (std::size_t q = 0; q < ez.voxel_count(); ++q) {
    double dot = 0.0;
    for (int a = 0; a < 3; ++a) dot += f.value(a, q) * ez.value(a, q);
    CHECK(std::abs(dot) <= 1e-15);
  }
}

TEST_CASE("single voxel against a dense projector") {
  const int n = 8;
  const Grid3 g(n, 2.0);
  const std::size_t centre = g.index(4, 4, 4);
  std::vector<std::uint8_t> inside(g.size(), 0);
  inside[centre] = 1;
  LandauLifschitzParams p = damped();
  p.anisotropy = 0.3;
  p.easy_axis = {0.0, 0.6, 0.8};
  const LandauLifschitzModel ll(p);
  Setup s(ll, n, 2.0, DomainMask(g, inside));
  MatterState v(3, 1);
  const Vec3 m{0.48, -0.6, 0.64};
  for (int a = 0; a < 3; ++a) v.value(a, 0) = m[a];

  ReducedOptions opt;
  opt.projector = {ProjectorMode::iterative_variable, 1e-14, 0};
  const auto f = reduced_rhs(v, s.system, opt);

  // H = (Id - P)(-M delta) from the dense oracle, then the LL formula
  const oracle::DenseOps ops(n, g.box_len());
  std::array<Eigen::VectorXd, 3> src;
  for (int a = 0; a < 3; ++a) {
    src[a] = Eigen::VectorXd::Zero(g.size());
    src[a][centre] = -m[a];
  }
  const auto h = ops.complement(Eigen::VectorXd::Ones(g.size()), src);
  const Vec3 hv{h[0][centre], h[1][centre], h[2][centre]};
  const Vec3 ht = ll.total_field(m, hv);
  const Vec3 mh = cross(m, ht);
  const Vec3 mmh = cross(m, mh);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(f.value(a, 0) - (p.gamma * mh[a] - p.alpha * mmh[a])) <= 1e-8);
  }
  // the slaved field is the single-voxel demagnetising field, -M/3 up to grid effects
  CHECK(hv[0] < 0.0);
}

TEST_CASE("slaved field and null modes") {
  const LandauLifschitzModel ll(damped());
  const Grid3 g(16, 4.0);
  Setup s(ll, 16, 4.0, testing::central_box(g));
  const auto v = testing::texture(s.grid, s.mask);
  const auto plain = slaved_field(v, s.system);
  ReducedOptions opt;
  opt.include_null_modes = true;
  const auto with = slaved_field(v, s.system, opt);
  const auto nm = null_modes(s.ws, s.system.source(v));
  CHECK(max_abs(testing::diff(testing::diff(with, plain), nm)) <= 1e-15);
  CHECK(max_abs(null_modes(s.ws, plain)) <= 1e-13);
  CHECK(max_abs(nm) > 0.0);
}

TEST_CASE("reduced run observer") {
  const LandauLifschitzModel ll(damped());
  const Grid3 g(8, 2.0);
  Setup s(ll, 8, 2.0, testing::central_box(g));
  std::vector<std::size_t> seen;
  std::vector<double> times;
  const auto v = testing::texture(s.grid, s.mask);
  const auto end = run_reduced(v, s.system, 0.01, 0.1, 3, [&](double t, const MatterState&, const EMState&, std::size_t k) {
    seen.push_back(k);
    times.push_back(t);
  });
  CHECK(seen == std::vector<std::size_t>{0, 3, 6, 9, 10});
  CHECK(times.back() == doctest::Approx(0.1));
  for (std::size_t q = 0; q < v.voxel_count(); ++q) CHECK(end.modulus(q) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eta study plumbing") {
  double slope = 0.0, intercept = 0.0;
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0}, y{1.0, 1.5, 2.0, 2.5};
  fit_line(x, y, slope, intercept);
  CHECK(slope == doctest::Approx(0.5));
  CHECK(intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line(std::vector<double>{1.0}, std::vector<double>{1.0}, slope, intercept),
                  std::invalid_argument);

  const LandauLifschitzModel ll(damped());
  const Grid3 g(8, 2.0);
  Setup s(ll, 8, 2.0, testing::central_box(g));
  const auto v = testing::texture(s.grid, s.mask);
  EtaStudyConfig cfg;
  cfg.etas = {1.0};
  cfg.center = {4.0, 4.0, 4.0};
  cfg.radius = 3.0;
  cfg.t_obs = 0.2;
  cfg.dt = 0.01;
  const auto r = eta_convergence_study(v, s.system, cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].ok);
  CHECK(r.fitted == 1);

  // eta = 1 row equals an explicit plain run against the reduced run
  const auto src = s.system.source(v);
  const SimState s0 = make_initial(null_modes(s.ws, src), v, s.system);
  Integrator integ(s.system, {Scheme::lawson_exp, cfg.dt, cfg.t_obs});
  std::vector<MatterState> plain;
  run(s0, integ, cfg.t_obs, 1, [&](const SimState& st, std::size_t) { plain.push_back(st.v); });
  ReducedOptions opt;
  opt.include_null_modes = true;
  double dev = 0.0;
  run_reduced(v, s.system, cfg.dt, cfg.t_obs, 1, [&](double, const MatterState& w, const EMState&, std::size_t k) {
    MatterState d = w;
    for (std::size_t i = 0; i < d.flat().size(); ++i) d.flat()[i] -= plain[k].flat()[i];
    dev = std::max(dev, l2_norm(d, s.grid));
  }, opt);
  CHECK(r.rows[0].v_deviation == doctest::Approx(dev).epsilon(1e-12));

  cfg.etas = {1.5};
  CHECK_THROWS_AS(eta_convergence_study(v, s.system, cfg), std::invalid_argument);
}

TEST_CASE("source-free data stay free at every eta") {
  const LandauLifschitzModel ll(damped());
  const Grid3 g(8, 2.0);
  Setup s(ll, 8, 2.0, testing::central_box(g));
  SimState s0 = s.system.zero_state();
  s0.u = project_P(s.ws, testing::random_em(s.ws, 2, 2), s.kappa);
  for (double eta : {0.5, 0.1}) {
    const auto scaled = s.system.with_eta(eta);
    Integrator integ(scaled, {Scheme::lawson_exp, 0.01, 0.1});
    const auto end = run(s0, integ, 0.1, 100, {});
    for (double x : end.v.flat()) CHECK(x == 0.0);
    const auto ex = exp_B(s.ws, end.t / eta, s0.u, s.kappa);
    CHECK(max_abs(testing::diff(end.u, ex)) <= 1e-12 * max_abs(ex));
  }
}

}
