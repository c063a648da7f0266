#include <random>

#include "doctest.h"
#include "mxm/matter.hpp"

using namespace mxm;

namespace {

std::vector<double> F(const MatterModel& m, std::vector<double> v, const Vec6& u,
                      const PointContext& ctx = {}) {
  std::vector<double> out(m.dim());
  m.eval(ctx, v, u, out);
  return out;
}

BlochParams two_level(double omega, double d) {
  BlochParams p;
  p.levels = 2;
  p.hamiltonian = Eigen::MatrixXcd::Zero(2, 2);
  p.hamiltonian(1, 1) = omega;
  for (auto& g : p.dipole) g = Eigen::MatrixXcd::Zero(2, 2);
  p.dipole[0](0, 1) = p.dipole[0](1, 0) = d;
  return p;
}

Eigen::MatrixXcd random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::MatrixXcd r = a * a.adjoint();
  return r / r.trace().real();
}

}  // namespace

TEST_SUITE("matter") {

TEST_CASE("Landau-Lifschitz point values") {
  LandauLifschitzParams p;
  p.gamma = 1.0;
  p.alpha = 0.3;
  const LandauLifschitzModel ll(p);
  auto f = F(ll, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);

  p.alpha = 0.0;
  p.gamma = 2.5;
  const LandauLifschitzModel und(p);
  f = F(und, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(-2.5));
  CHECK(f[2] == 0.0);

  // E (slot 2) does not enter
  const auto g = F(ll, {0.3, 0.4, 0.5}, {0.1, 0.2, 0.3, 9.0, 9.0, 9.0});
  const auto h = F(ll, {0.3, 0.4, 0.5}, {0.1, 0.2, 0.3, 0.0, 0.0, 0.0});
  CHECK(g == h);
  CHECK(ll.field_slot() == 1);
  CHECK(ll.dim() == 3);
}

TEST_CASE("Landau-Lifschitz dissipation identities at a point") {
  LandauLifschitzParams p;
  p.gamma = 1.4;
  p.alpha = 0.35;
  p.anisotropy = 0.8;
  p.easy_axis = {0.6, 0.0, 0.8};
  p.h_ext = {0.1, -0.2, 0.9};
  const LandauLifschitzModel ll(p);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int s = 0; s < 200; ++s) {
    Vec3 m{normal(rng), normal(rng), normal(rng)};
    m = (1.0 / norm(m)) * m;
    const Vec6 u{normal(rng), normal(rng), normal(rng), 0.0, 0.0, 0.0};
    const auto f = F(ll, {m[0], m[1], m[2]}, u);
    const Vec3 fv{f[0], f[1], f[2]};
    const Vec3 ht = ll.total_field(m, {u[0], u[1], u[2]});
    const Vec3 mh = cross(m, ht);
    const double scale = 1.0 + dot(ht, ht);
    CHECK(std::abs(dot(fv, ht) - p.alpha * dot(mh, mh)) <= 1e-12 * scale);
    CHECK(std::abs(dot(fv, fv) - (p.alpha * p.alpha + p.gamma * p.gamma) * dot(mh, mh)) <=
          1e-12 * scale * scale);
    CHECK(std::abs(dot(fv, m)) <= 1e-14 * scale);
  }
}

TEST_CASE("structural checks") {
  LandauLifschitzParams lp;
  lp.alpha = 0.2;
  lp.anisotropy = 0.4;
  lp.h_ext = {0.0, 0.3, 1.0};
  const auto rl = check_structure(LandauLifschitzModel(lp), 3000, 2.0, 7);
  CHECK(rl.ok());
  CHECK(rl.k_empirical <= 1e-12);

  BlochParams bp = two_level(1.0, 0.6);
  bp.transverse_rate = 0.3;
  const auto rb = check_structure(BlochModel(bp), 3000, 2.0, 8);
  CHECK(rb.ok());
  CHECK(rb.k_empirical <= 1e-12);

  const LinearGrowthModel growth(0.25, 1.0);
  const auto rg = check_structure(growth, 1000, 1.5, 9);
  CHECK(rg.ok());
  CHECK(rg.k_empirical == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(growth.growth_constant() == 0.25);

  for (const MatterModel* m : {static_cast<const MatterModel*>(&growth)}) {
    const auto f = F(*m, std::vector<double>(m->dim(), 0.0), {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    for (double x : f) CHECK(x == 0.0);
  }
  const BlochModel bloch(bp);
  const auto f0 = F(bloch, std::vector<double>(4, 0.0), {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  for (double x : f0) CHECK(x == 0.0);
}

TEST_CASE("affine dependence on the field") {
  LandauLifschitzParams lp;
  lp.alpha = 0.4;
  lp.h_ext = {0.0, 0.0, 1.0};
  const LandauLifschitzModel ll(lp);
  const std::vector<double> v{0.3, -0.2, 0.9};
  const PointContext ctx{};
  const auto f0 = eval_F0(ll, ctx, v);
  const Eigen::MatrixXd f1 = eval_F1(ll, ctx, v);
  const Vec6 u{0.2, -0.7, 0.4, 0.0, 0.0, 0.0};
  const auto f = F(ll, v, u);
  for (int a = 0; a < 3; ++a) {
    double lin = f0[a];
    for (int c = 0; c < 6; ++c) lin += f1(a, c) * u[c];
    CHECK(f[a] == doctest::Approx(lin).epsilon(1e-12));
  }
  for (int c = 3; c < 6; ++c) CHECK(f1.col(c).norm() == 0.0);
}

TEST_CASE("density matrix packing") {
  std::mt19937_64 rng(2);
  for (int n : {2, 3, 4}) {
    const Eigen::MatrixXcd rho = random_density(n, rng);
    const auto v = pack_rho(rho);
    CHECK(v.size() == static_cast<std::size_t>(n * n));
    double s = 0.0;
    for (double x : v) s += x * x;
    CHECK(std::sqrt(s) == doctest::Approx(rho.norm()).epsilon(1e-14));
    CHECK((unpack_rho(v, n) - rho).norm() <= 1e-15);
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(pack_rho(bad), std::invalid_argument);
}

TEST_CASE("Bloch point values") {
  BlochParams p = two_level(1.7, 0.5);
  p.hamiltonian(0, 0) = -0.4;
  const BlochModel bloch(p);
  // diagonal Lambda and rho commute
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  for (double x : F(bloch, pack_rho(rho), {})) CHECK(x == 0.0);

  // rho = |0><0|, E.Gamma_01 = Omega_R: drho/dt = [[0, -i W], [i W, 0]]
  BlochParams q = two_level(2.0, 1.0);
  const BlochModel b2(q);
  rho.setZero();
  rho(0, 0) = 1.0;
  const double w = 0.8;
  const auto f = F(b2, pack_rho(rho), {0.0, 0.0, 0.0, w, 0.0, 0.0});
  const Eigen::MatrixXcd m = unpack_rho(f, 2);
  CHECK(std::abs(m(0, 0)) <= 1e-15);
  CHECK(std::abs(m(1, 1)) <= 1e-15);
  CHECK(std::abs(m(0, 1) - std::complex<double>(0.0, -w)) <= 1e-15);
  CHECK(std::abs(m(1, 0) - std::complex<double>(0.0, w)) <= 1e-15);

  // H (slot 1) does not enter; l2 v = -density Tr(Gamma rho)
  CHECK(F(b2, pack_rho(rho), {5.0, 5.0, 5.0, w, 0.0, 0.0}) == f);
  CHECK(b2.field_slot() == 2);
  Eigen::MatrixXcd r2 = Eigen::MatrixXcd::Zero(2, 2);
  r2(0, 0) = 0.6;
  r2(1, 1) = 0.4;
  r2(0, 1) = {0.2, 0.1};
  r2(1, 0) = {0.2, -0.1};
  q.density = 3.0;
  const BlochModel b3(q);
  Vec3 l1, l2;
  b3.couple({}, pack_rho(r2), l1, l2);
  CHECK(l1[0] == 0.0);
  CHECK(l2[0] == doctest::Approx(-3.0 * 0.4));
  CHECK(l2[1] == 0.0);
}

TEST_CASE("Bloch relaxation keeps trace and Hermiticity") {
  BlochParams p;
  p.levels = 3;
  p.hamiltonian = Eigen::MatrixXcd::Zero(3, 3);
  p.hamiltonian.diagonal() << 0.0, 1.0, 2.2;
  for (auto& g : p.dipole) g = Eigen::MatrixXcd::Zero(3, 3);
  p.dipole[1](0, 2) = p.dipole[1](2, 0) = 0.4;
  p.transverse_rate = 0.5;
  p.pauli_rates = Eigen::MatrixXd::Zero(3, 3);
  p.pauli_rates(0, 1) = 0.3;
  p.pauli_rates(1, 2) = 0.2;
  const BlochModel bloch(p);
  CHECK(bloch.growth_constant() > 0.0);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 20; ++s) {
    const Eigen::MatrixXcd rho = random_density(3, rng);
    const Eigen::MatrixXcd f = bloch.rhs_matrix(rho, {0.3, -0.2, 0.5});
    CHECK(std::abs(f.trace()) <= 1e-14);
    CHECK((f - f.adjoint()).norm() <= 1e-14);
  }
  BlochParams bad = p;
  bad.transverse_rate = -1.0;
  CHECK_THROWS_AS(BlochModel{bad}, std::invalid_argument);
  bad = p;
  bad.hamiltonian(0, 1) = 1.0;
  CHECK_THROWS_AS(BlochModel{bad}, std::invalid_argument);
}

}
