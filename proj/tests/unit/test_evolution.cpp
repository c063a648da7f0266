#include <numbers>

#include "doctest.h"
#include "mxm/errors.hpp"
#include "mxm/evolution.hpp"
#include "mxm/helmholtz.hpp"
#include "oracles/bloch_expm.hpp"
#include "oracles/precession.hpp"
#include "unit/support.hpp"

using namespace mxm;
using testing::max_abs;

namespace {

struct Setup {
  explicit Setup(const MatterModel& model, int n = 16, double len = 4.0, double k1 = 1.0,
                 double k2 = 1.0)
      : grid(n, len),
        ws(grid),
        kappa(Coefficients::constant(grid, k1, k2)),
        mask(testing::central_box(grid)),
        system(model, kappa, mask, ws) {}

  Grid3 grid;
  FourierWorkspace ws;
  Coefficients kappa;
  DomainMask mask;
  CoupledSystem system;
};

LandauLifschitzParams damped() {
  LandauLifschitzParams p;
  p.alpha = 0.5;
  p.h_ext = {0.0, 0.0, 1.0};
  return p;
}

double distance(const SimState& a, const SimState& b, const CoupledSystem& sys) {
  const double eu = weighted_norm(testing::diff(a.u, b.u), sys.kappa());
  MatterState dv = a.v;
  for (std::size_t i = 0; i < dv.flat().size(); ++i) dv.flat()[i] -= b.v.flat()[i];
  const double ev = l2_norm(dv, sys.grid());
  return std::sqrt(eu * eu + ev * ev);
}

}  // namespace

TEST_SUITE("evolution") {

TEST_CASE("right-hand side") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll);
  SimState st = s.system.zero_state();
  st.u = project_P(s.ws, testing::random_em(s.ws, 2), s.kappa);
  const auto d = s.system.rhs(st);
  const auto bu = apply_B(s.ws, st.u, s.kappa);
  double err = 0.0;
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) err = std::max(err, std::abs(d.du.component(c)[i] + bu.component(c)[i]));
  }
  CHECK(err == 0.0);
  for (double x : d.dv.flat()) CHECK(x == 0.0);

  // u = 0: dv is the pointwise model with zero field
  SimState m = s.system.zero_state();
  m.v = testing::texture(s.grid, s.mask);
  const auto dm = s.system.rhs(m);
  std::vector<double> f(3), v(3);
  for (std::size_t q = 0; q < s.mask.voxel_count(); q += 7) {
    m.v.get(q, v);
    ll.eval({}, v, Vec6{}, f);
    for (int a = 0; a < 3; ++a) CHECK(dm.dv.value(a, q) == doctest::Approx(f[a]).epsilon(1e-14));
  }

  // random state: du = -B u + (kappa^-1 . l) F_bar, recomposed independently
  SimState r = m;
  r.u = testing::random_em(s.ws, 7);
  const auto dr = rhs_full(r, s.system);
  const auto f_all = s.system.matter_rhs(r.u, r.v);
  const auto src = coupling_field(f_all, ll, s.mask, s.kappa);
  const auto br = apply_B(s.ws, r.u, s.kappa);
  double rec = 0.0;
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      rec = std::max(rec, std::abs(dr.du.component(c)[i] - (src.component(c)[i] - br.component(c)[i])));
    }
  }
  CHECK(rec <= 1e-13 * max_abs(br));
  CHECK(testing::max_diff(dr.dv, f_all) == 0.0);
  CHECK_THROWS_AS(rhs_full(r, s.system.with_eta(0.5)), std::invalid_argument);
}

TEST_CASE("consistent initial data") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll);
  const MatterState zero_v(3, s.mask.voxel_count());
  const auto w = testing::random_em(s.ws, 3);
  const auto a = make_initial(w, zero_v, s.system);
  CHECK(max_abs(testing::diff(a.u, project_P(s.ws, w, s.kappa))) <= 1e-14);
  CHECK(constraint_residual(s.ws, a.u, a.v, ll, s.mask, s.kappa) <= 1e-12);

  MatterState ez(3, s.mask.voxel_count());
  for (auto& x : ez.component(2)) x = 1.0;
  const auto b = make_initial(EMState(s.grid), ez, s.system);
  const auto expect = project_complement(s.ws, coupling_field(ez, ll, s.mask, s.kappa), s.kappa);
  CHECK(max_abs(testing::diff(b.u, expect)) <= 1e-14);
  CHECK(max_abs(b.u.u2) == 0.0);
  CHECK(constraint_residual(s.ws, b.u, b.v, ll, s.mask, s.kappa) <= 1e-10);

  const auto z = make_initial(EMState(s.grid), zero_v, s.system);
  CHECK(max_abs(z.u) == 0.0);
}

TEST_CASE("integrator guards") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll);
  CHECK_THROWS_AS(Integrator(s.system, {Scheme::rk4, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Integrator(s.system, {Scheme::rk4, -1e-3, 1.0}), std::invalid_argument);
  CHECK(cfl_limit(s.system, 0.5) == doctest::Approx(0.5 * 0.25));

  ScalarField k1(s.grid, 1.0);
  k1[0] = 2.0;
  const Coefficients kv(k1, ScalarField(s.grid, 1.0));
  const CoupledSystem sv(ll, kv, s.mask, s.ws);
  CHECK_THROWS_AS(Integrator(sv, {Scheme::lawson_exp, 1e-3, 1.0}), std::invalid_argument);

  const LinearGrowthModel g(0.1, 1.0);
  const CoupledSystem sg(g, s.kappa, s.mask, s.ws);
  IntegratorConfig rc{Scheme::rk4, 1e-3, 1.0, true};
  CHECK_THROWS_AS(Integrator(sg, rc), std::invalid_argument);

  SimState bad = s.system.zero_state();
  bad.v.value(0, 3) = std::numeric_limits<double>::quiet_NaN();
  Integrator integ(s.system, {Scheme::rk4, 1e-3, 1.0});
  CHECK_THROWS_AS(integ.step(bad), NumericalError);
}

TEST_CASE("Lawson without matter is the exact propagator") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll, 16, 4.0, 1.3, 0.7);
  SimState st = s.system.zero_state();
  st.u = testing::random_em(s.ws, 5, 4);
  const auto next = Integrator(s.system, {Scheme::lawson_exp, 0.05, 1.0}).step(st);
  const auto ex = exp_B(s.ws, 0.05, st.u, s.kappa);
  CHECK(max_abs(testing::diff(next.u, ex)) == 0.0);
  CHECK(next.t == 0.05);
}

TEST_CASE("run observer") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll, 8, 2.0);
  Integrator integ(s.system, {Scheme::rk4, 0.01, 1.0});
  std::vector<std::size_t> seen;
  run(s.system.zero_state(), integ, 0.1, 4, [&](const SimState&, std::size_t k) { seen.push_back(k); });
  CHECK(seen == std::vector<std::size_t>{0, 4, 8, 10});
  CHECK(step_count(0.104, 0.01) == 10);
  CHECK(step_count(0.106, 0.01) == 11);
  CHECK(step_count(2.0, 2e-3) == 1000);
}

TEST_CASE("RK4 and Lawson converge at fourth order") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll, 8, 2.0);
  const auto s0 = make_initial(testing::random_em(s.ws, 1, 2), testing::texture(s.grid, s.mask), s.system);
  for (Scheme scheme : {Scheme::rk4, Scheme::lawson_exp}) {
    std::vector<SimState> ends;
    for (double dt : {0.02, 0.01, 0.005}) {
      Integrator integ(s.system, {scheme, dt, 0.4});
      ends.push_back(run(s0, integ, 0.4, 1000, {}));
    }
    const double e1 = distance(ends[0], ends[1], s.system);
    const double e2 = distance(ends[1], ends[2], s.system);
    CHECK(std::log2(e1 / e2) >= 3.7);
  }
}

TEST_CASE("undamped precession") {
  LandauLifschitzParams p;
  p.gamma = 1.6;
  p.alpha = 0.0;
  p.coupling = 0.0;
  p.h_ext = {0.0, 0.0, 1.0};
  const LandauLifschitzModel ll(p);
  Setup s(ll, 8, 2.0);
  MatterState v(3, s.mask.voxel_count());
  for (std::size_t q = 0; q < v.voxel_count(); ++q) {
    const double th = 0.3 + 0.05 * q;
    v.value(0, q) = std::sin(th);
    v.value(2, q) = std::cos(th);
  }
  const auto s0 = make_initial(EMState(s.grid), v, s.system);
  const double period = 2.0 * std::numbers::pi / p.gamma;
  const double dt = period / 6284.0;  // about 1e-3 / gamma
  Integrator integ(s.system, {Scheme::rk4, dt, period});
  double err_mid = 0.0;
  const auto end = run(s0, integ, period, 1000, [&](const SimState& st, std::size_t) {
    for (std::size_t q = 0; q < v.voxel_count(); ++q) {
      const Vec3 ref = oracle::precess({v.value(0, q), v.value(1, q), v.value(2, q)}, p.gamma, 1.0, st.t);
      for (int a = 0; a < 3; ++a) err_mid = std::max(err_mid, std::abs(st.v.value(a, q) - ref[a]));
    }
  });
  CHECK(end.t == doctest::Approx(period).epsilon(1e-9));
  MatterState d = end.v;
  for (std::size_t i = 0; i < d.flat().size(); ++i) d.flat()[i] -= v.flat()[i];
  CHECK(l2_norm(d, s.grid) <= 1e-8);
  CHECK(err_mid <= 1e-9);
  CHECK(max_abs(end.u) == 0.0);
}

TEST_CASE("two-level Rabi oscillation against the matrix exponential") {
  BlochParams bp;
  bp.levels = 2;
  bp.hamiltonian = Eigen::MatrixXcd::Zero(2, 2);
  bp.hamiltonian(1, 1) = 1.0;
  for (auto& g : bp.dipole) g = Eigen::MatrixXcd::Zero(2, 2);
  bp.dipole[0](0, 1) = bp.dipole[0](1, 0) = 1.0;
  bp.density = 0.0;
  const BlochModel bloch(bp);
  Setup s(bloch, 8, 2.0);
  const double e0 = 0.6;
  EMState uf(s.grid);
  uf.u2[0].fill(e0);
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(2, 2);
  rho0(0, 0) = 1.0;
  MatterState v(4, s.mask.voxel_count());
  const auto packed = pack_rho(rho0);
  for (std::size_t q = 0; q < v.voxel_count(); ++q) v.put(q, packed);
  const auto s0 = make_initial(uf, v, s.system);

  const Eigen::MatrixXcd h = bp.hamiltonian - e0 * bp.dipole[0];
  const double omega = std::sqrt(1.0 + 4.0 * e0 * e0);
  const double t_end = 2.0 * 2.0 * std::numbers::pi / omega;
  Integrator integ(s.system, {Scheme::lawson_exp, 2e-3, t_end});
  const auto end = run(s0, integ, t_end, 100000, {});
  std::vector<double> vp(4);
  end.v.get(0, vp);
  const Eigen::MatrixXcd ref = oracle::unitary_evolution(h, rho0, end.t);
  CHECK((unpack_rho(vp, 2) - ref).norm() <= 1e-8);
  CHECK(max_abs(testing::diff(end.u, s0.u)) == 0.0);
}

TEST_CASE("mollified fixed point") {
  const LandauLifschitzModel ll(damped());
  Setup s(ll, 8, 2.0);
  SimState z = s.system.zero_state();
  z.u = testing::random_em(s.ws, 3, 2);
  FixedPointConfig fc;
  fc.window = 0.1;
  fc.dt = 0.01;
  fc.mollifier_index = 4;
  const auto free = mollified_fixed_point(z, fc, s.system);
  CHECK(free.iterations == 1);
  CHECK(max_abs(testing::diff(free.state.u, exp_B(s.ws, 0.1, z.u, s.kappa))) <= 1e-13);

  // with matter: converges, agrees with a fine Lawson run to O(dt^2)
  const auto s0 = make_initial(testing::random_em(s.ws, 1, 2), testing::texture(s.grid, s.mask), s.system);
  Integrator ref_int(s.system, {Scheme::lawson_exp, 0.0025, 0.1});
  const auto ref = run(s0, ref_int, 0.1, 1000, {});
  fc.mollifier_index = 0;
  std::vector<double> errs;
  for (double dt : {0.01, 0.005}) {
    fc.dt = dt;
    const auto r = mollified_fixed_point(s0, fc, s.system);
    CHECK(r.contraction_ratio < 1.0);
    CHECK(r.iterations > 1);
    errs.push_back(distance(r.state, ref, s.system));
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.15));

  fc.max_iterations = 2;
  CHECK_THROWS_AS(mollified_fixed_point(s0, fc, s.system), NumericalError);

  ScalarField k1(s.grid, 1.0);
  k1[0] = 2.0;
  const Coefficients kv(k1, ScalarField(s.grid, 1.0));
  const CoupledSystem sv(ll, kv, s.mask, s.ws);
  CHECK_THROWS_AS(mollified_fixed_point(s0, fc, sv), std::invalid_argument);
}

}
