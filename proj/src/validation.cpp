#include "mxm/validation.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mxm/diagnostics.hpp"
#include "mxm/kernels.hpp"
#include "mxm/parallel.hpp"
#include "mxm/quasistatic.hpp"
#include "mxm/scenario.hpp"
#include "mxm/snapshot.hpp"

namespace mxm {

namespace {

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

CheckResult within(std::string name, double value, double tol) {
  return {std::move(name), value <= tol, "value " + sci(value) + " (tol " + sci(tol) + ")"};
}

EMState random_em(const FourierWorkspace& ws, std::uint64_t seed, int band = 3) {
  EMState u(ws.grid());
  u.u1 = random_band_limited_vector(ws, 2 * seed, band);
  u.u2 = random_band_limited_vector(ws, 2 * seed + 1, band);
  return u;
}

EMState minus(const EMState& a, const EMState& b) {
  EMState d = a;
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < d.component(c).size(); ++i) d.component(c)[i] -= b.component(c)[i];
  }
  return d;
}

double max_abs(const VectorField3& f) {
  double m = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (double x : f[a].values()) m = std::max(m, std::abs(x));
  }
  return m;
}

Coefficients bump_kappa(const Grid3& g) {
  CoefficientSpec spec;
  spec.kind = "bump";
  spec.center = {0.5 * g.box_len(), 0.5 * g.box_len(), 0.5 * g.box_len()};
  spec.radius = 0.15 * g.box_len();
  spec.width = 0.2 * g.box_len();
  spec.amplitude1 = 0.5;
  spec.amplitude2 = 0.8;
  return make_coefficients(g, spec);
}

std::vector<CheckResult> operator_checks() {
  std::vector<CheckResult> out;
  const Grid3 g(8, 2.0);
  const FourierWorkspace ws(g);
  const auto kc = Coefficients::constant(g, 1.3, 0.7);
  const auto kv = bump_kappa(g);

  double skew_c = 0.0, skew_v = 0.0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const EMState a = random_em(ws, s), b = random_em(ws, s + 100);
    const auto skew = [&](const Coefficients& k) {
      const double lhs = weighted_inner(apply_B(ws, a, k), b, k);
      const double rhs = weighted_inner(a, apply_B(ws, b, k), k);
      return std::abs(lhs + rhs) / (weighted_norm(a, k) * weighted_norm(b, k));
    };
    skew_c = std::max(skew_c, skew(kc));
    skew_v = std::max(skew_v, skew(kv));
  }
  out.push_back(within("B skew-adjoint (constant kappa)", skew_c, 1e-12));
  out.push_back(within("B skew-adjoint (variable kappa)", skew_v, 1e-12));

  const ScalarField phi = random_band_limited(ws, 7, 3);
  const VectorField3 gp = grad(ws, phi);
  out.push_back(within("curl grad = 0", max_abs(curl(ws, gp)) / max_abs(gp), 1e-12));

  const EMState u = random_em(ws, 3);
  const EMState e1 = exp_B(ws, 0.37, u, kc);
  out.push_back(within("exp(-tB) preserves the kappa norm",
                       std::abs(weighted_norm(e1, kc) - weighted_norm(u, kc)) / weighted_norm(u, kc),
                       1e-12));
  const EMState e2 = exp_B(ws, 0.2, exp_B(ws, 0.17, u, kc), kc);
  out.push_back(within("exp(-tB) group law",
                       weighted_norm(minus(e1, e2), kc) / weighted_norm(u, kc), 1e-12));

  for (const auto* k : {&kc, &kv}) {
    const bool variable = k == &kv;
    const double tol = variable ? 1e-9 : 1e-12;
    const std::string tag = variable ? " (variable kappa)" : " (constant kappa)";
    const EMState pu = project_P(ws, u, *k);
    const EMState ppu = project_P(ws, pu, *k);
    out.push_back(within("P idempotent" + tag,
                         weighted_norm(minus(ppu, pu), *k) / weighted_norm(u, *k), tol));
    const EMState w = random_em(ws, 9);
    const EMState qw = project_complement(ws, w, *k);
    out.push_back(within("P kappa-orthogonal" + tag,
                         std::abs(weighted_inner(pu, qw, *k)) /
                             (weighted_norm(u, *k) * weighted_norm(w, *k)),
                         tol));
    const EMState bu = apply_B(ws, u, *k);
    out.push_back(within("(Id - P) B = 0" + tag,
                         weighted_norm(project_complement(ws, bu, *k), *k) / weighted_norm(bu, *k),
                         tol));
  }

  const MollifierSpec spec{2};
  const ScalarField f = random_band_limited(ws, 11, 4), h = random_band_limited(ws, 12, 4);
  const double sym = std::abs(inner(mollify(ws, spec, f), h) - inner(f, mollify(ws, spec, h)));
  out.push_back(within("mollifier self-adjoint", sym / std::sqrt(inner(f, f) * inner(h, h)), 1e-12));
  const ScalarField rf = mollify(ws, spec, f);
  out.push_back({"mollifier norm non-increasing", inner(rf, rf) <= inner(f, f),
                 "ratio " + sci(std::sqrt(inner(rf, rf) / inner(f, f)))});
  return out;
}

std::vector<CheckResult> model_checks() {
  std::vector<CheckResult> out;
  LandauLifschitzParams lp;
  lp.alpha = 0.3;
  lp.anisotropy = 0.5;
  lp.h_ext = {0.2, 0.0, 1.0};
  const LandauLifschitzModel ll(lp);
  const auto rl = check_structure(ll, 2000, 2.0, 5);
  out.push_back({"Landau-Lifschitz structure", rl.ok() && rl.k_empirical <= 1e-12,
                 "K_emp " + sci(rl.k_empirical) + ", failures " + std::to_string(rl.failures.size())});

  BlochParams bp;
  bp.levels = 3;
  bp.hamiltonian = Eigen::MatrixXcd::Zero(3, 3);
  bp.hamiltonian.diagonal() << 0.0, 1.0, 2.5;
  for (auto& d : bp.dipole) d = Eigen::MatrixXcd::Zero(3, 3);
  bp.dipole[0](0, 1) = bp.dipole[0](1, 0) = 0.7;
  bp.dipole[2](1, 2) = std::complex<double>(0.0, 0.4);
  bp.dipole[2](2, 1) = std::complex<double>(0.0, -0.4);
  bp.transverse_rate = 0.2;
  const BlochModel bloch(bp);
  const auto rb = check_structure(bloch, 2000, 2.0, 6);
  out.push_back({"Bloch structure (transverse relaxation)", rb.ok() && rb.k_empirical <= 1e-12,
                 "K_emp " + sci(rb.k_empirical) + ", failures " + std::to_string(rb.failures.size())});

  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  double orth = 0.0, ident = 0.0;
  for (int s = 0; s < 200; ++s) {
    // unit M: |F|^2 = (gamma^2 + alpha^2 |M|^2) |M x H_T|^2
    Vec3 dir{normal(rng), normal(rng), normal(rng)};
    dir = (1.0 / norm(dir)) * dir;
    std::vector<double> m{dir[0], dir[1], dir[2]};
    const Vec6 u{normal(rng), normal(rng), normal(rng), 0.0, 0.0, 0.0};
    std::vector<double> f(3);
    ll.eval({}, m, u, f);
    const Vec3 mv{m[0], m[1], m[2]}, fv{f[0], f[1], f[2]};
    const Vec3 ht = ll.total_field(mv, {u[0], u[1], u[2]});
    const double mh2 = dot(cross(mv, ht), cross(mv, ht));
    const double scale = 1.0 + dot(fv, fv);
    orth = std::max(orth, std::abs(dot(fv, mv)) / scale);
    ident = std::max(ident, std::abs(dot(fv, ht) - lp.alpha * mh2) / scale);
    ident = std::max(ident, std::abs(dot(fv, fv) - (lp.alpha * lp.alpha + 1.0) * mh2) / scale);
  }
  out.push_back(within("Landau-Lifschitz F.M = 0", orth, 1e-14));
  out.push_back(within("Landau-Lifschitz dissipation identities", ident, 1e-12));

  double tr = 0.0, herm = 0.0;
  for (int s = 0; s < 50; ++s) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = {normal(rng), normal(rng)};
    }
    const Eigen::MatrixXcd rho = a * a.adjoint();
    const Eigen::MatrixXcd f = bloch.rhs_matrix(rho, {normal(rng), normal(rng), normal(rng)});
    tr = std::max(tr, std::abs(f.trace()) / rho.norm());
    herm = std::max(herm, (f - f.adjoint()).norm() / rho.norm());
  }
  out.push_back(within("Bloch right-hand side traceless", tr, 1e-12));
  out.push_back(within("Bloch right-hand side Hermitian", herm, 1e-12));
  return out;
}

CheckResult kernel_check() {
  const auto* avx = kernels::avx2();
  if (!avx) return {"scalar and AVX2 kernels agree bitwise", true, "AVX2 unavailable, skipped"};
  const auto& sc = kernels::scalar();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  const std::size_t n = 1027;
  std::vector<double> x(n), y(n), w(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = normal(rng);
    y[i] = normal(rng);
    w[i] = std::abs(normal(rng));
    z[i] = normal(rng);
  }
  bool same = sc.dot(x.data(), y.data(), n) == avx->dot(x.data(), y.data(), n);
  same &= sc.weighted_dot(w.data(), x.data(), y.data(), n) ==
          avx->weighted_dot(w.data(), x.data(), y.data(), n);
  std::vector<double> a(n), b(n);
  sc.axpby(0.3, x.data(), -1.7, y.data(), a.data(), n);
  avx->axpby(0.3, x.data(), -1.7, y.data(), b.data(), n);
  same &= a == b;
  const kernels::LLParams p{1.0, 0.2, 0.4, {0.0, 0.6, 0.8}, {0.1, 0.0, 1.0}};
  std::vector<double> f1(3 * n), f2(3 * n);
  sc.ll_rhs(p, x.data(), y.data(), z.data(), w.data(), y.data(), x.data(), f1.data(),
            f1.data() + n, f1.data() + 2 * n, n);
  avx->ll_rhs(p, x.data(), y.data(), z.data(), w.data(), y.data(), x.data(), f2.data(),
              f2.data() + n, f2.data() + 2 * n, n);
  same &= f1 == f2;
  return {"scalar and AVX2 kernels agree bitwise", same, same ? "identical" : "mismatch"};
}

Scenario micro_ll(int n) {
  Scenario s;
  s.n = n;
  s.box_len = 2.0;
  s.coefficients.kind = "bump";
  s.coefficients.center = {1.0, 1.0, 1.0};
  s.coefficients.radius = 0.3;
  s.coefficients.width = 0.4;
  s.coefficients.amplitude1 = 0.5;
  s.coefficients.amplitude2 = 0.3;
  const int q = n / 4;
  s.domain.lo = {q + q / 2, q + q / 2, q + q / 2};
  s.domain.hi = {n - q - q / 2, n - q - q / 2, n - q - q / 2};
  s.model.ll.alpha = 0.5;
  s.model.ll.h_ext = {0.0, 0.0, 1.0};
  s.initial.matter = "texture";
  s.initial.field = "random";
  s.initial.amplitude = 0.2;
  s.integrator.dt = 5e-3;
  s.integrator.t_end = 0.25;
  s.monitor.stride = 10;
  return s;
}

std::vector<CheckResult> evolution_checks() {
  std::vector<CheckResult> out;
  const ScenarioInstance inst(micro_ll(16));
  const auto& sys = inst.system();
  const SimState s0 = inst.initial_state();
  out.push_back(within("initial data satisfy the constraint",
                       constraint_residual(inst.workspace(), s0.u, s0.v, inst.model(), inst.mask(),
                                           inst.kappa()),
                       1e-10));

  Integrator integ(sys, inst.scenario().integrator);
  const Monitor mon(sys, s0);
  const RunOutput run_out = simulate(s0, integ, mon, inst.scenario().integrator.t_end, 10);
  const auto& first = run_out.records.front();
  const auto& last = run_out.records.back();
  double drift = 0.0;
  for (const auto& r : run_out.records) drift = std::max(drift, r.constraint_residual - first.constraint_residual);
  out.push_back(within("constraint propagates (variable kappa)", drift, 1e-8));
  const auto bound = bound_monitor(run_out.records, mon.sup_init(), 0.0);
  out.push_back({"pointwise bound |v(t)| <= |v_init|", bound.ok, "ratio " + sci(bound.worst_ratio)});
  out.push_back(within("energy law",
                       std::abs(last.energy + last.dissipation_integral - first.energy) /
                           std::abs(first.energy),
                       1e-6));
  out.push_back(within("|M| conservation", last.modulus_deviation, 1e-8));

  // Plain and eta = 1 systems take bit-identical steps.
  const SimState a = Integrator(sys, {Scheme::rk4, 5e-3, 1.0}).step(s0);
  const SimState b = Integrator(sys.with_eta(1.0), {Scheme::rk4, 5e-3, 1.0}).step(s0);
  bool same = a.v.flat().size() == b.v.flat().size();
  for (int c = 0; c < 6 && same; ++c) {
    same = std::equal(a.u.component(c).values().begin(), a.u.component(c).values().end(),
                      b.u.component(c).values().begin());
  }
  same = same && std::equal(a.v.flat().begin(), a.v.flat().end(), b.v.flat().begin());
  out.push_back({"eta = 1 reproduces the plain system", same, same ? "identical" : "differs"});

  // Lawson with v = 0 is the exact propagator.
  Scenario zs = micro_ll(16);
  zs.coefficients.kind = "constant";
  zs.initial.matter = "zero";
  const ScenarioInstance zi(zs);
  const SimState z0 = zi.initial_state();
  const SimState z1 = Integrator(zi.system(), {Scheme::lawson_exp, 0.01, 1.0}).step(z0);
  const EMState ez = exp_B(zi.workspace(), 0.01, z0.u, zi.kappa());
  out.push_back(within("Lawson step with F = 0 equals exp(-dt B)",
                       weighted_norm(minus(z1.u, ez), zi.kappa()), 0.0));
  FixedPointConfig fc;
  fc.window = 0.05;
  fc.dt = 0.01;
  const auto fp = mollified_fixed_point(z0, fc, zi.system());
  out.push_back({"fixed point with F = 0 converges in one iteration", fp.iterations == 1,
                 std::to_string(fp.iterations) + " iteration(s)"});

  // Slaved field of the reduced model satisfies the constraint.
  const EMState slaved = slaved_field(s0.v, sys);
  out.push_back(within("reduced model slaved-field identity",
                       constraint_residual(inst.workspace(), slaved, s0.v, inst.model(), inst.mask(),
                                           inst.kappa()),
                       1e-9));
  return out;
}

std::vector<CheckResult> io_checks() {
  std::vector<CheckResult> out;
  const Grid3 g(8, 1.5);
  const FourierWorkspace ws(g);
  const EMState u = random_em(ws, 4);
  std::stringstream buf;
  std::vector<const ScalarField*> comps;
  for (int c = 0; c < 6; ++c) comps.push_back(&u.component(c));
  write_snapshot(buf, g, comps);
  const Snapshot snap = read_snapshot(buf);
  bool same = snap.grid == g && snap.components.size() == 6;
  for (int c = 0; c < 6 && same; ++c) same = std::equal(snap.components[c].values().begin(), snap.components[c].values().end(), u.component(c).values().begin());
  out.push_back({"snapshot round trip", same, same ? "identical" : "differs"});

  // Same scenario at two thread counts gives identical CSV bytes.
  std::string csv[2];
  const int before = thread_count();
  const int counts[2] = {1, 4};
  for (int r = 0; r < 2; ++r) {
    set_thread_count(counts[r]);
    const ScenarioInstance inst(micro_ll(8));
    const SimState s0 = inst.initial_state();
    Integrator integ(inst.system(), inst.scenario().integrator);
    const Monitor mon(inst.system(), s0);
    const RunOutput res = simulate(s0, integ, mon, 0.1, 5);
    std::ostringstream os;
    write_trajectory_csv(os, res.records);
    csv[r] = os.str();
  }
  set_thread_count(before);
  out.push_back({"CSV identical across thread counts {1, 4}", csv[0] == csv[1],
                 std::to_string(csv[0].size()) + " bytes"});
  return out;
}

}  // namespace

std::vector<CheckResult> run_validation_suite(
    const std::function<void(const CheckResult&)>& progress) {
  std::vector<CheckResult> all;
  const auto add = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) {
      if (progress) progress(r);
      all.push_back(std::move(r));
    }
  };
  const auto guarded = [&](const char* group, auto&& fn) {
    try {
      add(fn());
    } catch (const std::exception& e) {
      add({{group, false, std::string("exception: ") + e.what()}});
    }
  };
  guarded("operator checks", operator_checks);
  guarded("model checks", model_checks);
  guarded("kernel check", [] { return std::vector<CheckResult>{kernel_check()}; });
  guarded("evolution checks", evolution_checks);
  guarded("io checks", io_checks);
  return all;
}

}  // namespace mxm
