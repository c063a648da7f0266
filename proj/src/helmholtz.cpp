#include "mxm/helmholtz.hpp"

#include <cmath>
#include <string>

#include "mxm/errors.hpp"
#include "mxm/matter.hpp"
#include "mxm/parallel.hpp"

namespace mxm {

namespace {

// Solves -div(kappa grad phi) = -div(kappa u) for the mean-free potential.
// Preconditioned with the inverse of -mean(kappa) * Laplacian.
ScalarField solve_potential_cg(const FourierWorkspace& ws, const VectorField3& u,
                               const ScalarField& kappa, const ProjectorConfig& cfg,
                               SolveStats* stats) {
  const Grid3& grid = u.grid();
  const auto weighted = [&](const VectorField3& f) {
    VectorField3 g(grid);
    for (int a = 0; a < 3; ++a) {
      for (std::size_t i = 0; i < grid.size(); ++i) g[a][i] = kappa[i] * f[a][i];
    }
    return g;
  };
  const auto apply = [&](const ScalarField& phi) {
    ScalarField out = div(ws, weighted(grad(ws, phi)));
    for (double& x : out.values()) x = -x;
    return out;
  };
  double kappa_mean = 0.0;
  for (double k : kappa.values()) kappa_mean += k;
  kappa_mean /= static_cast<double>(grid.size());
  const auto& k2 = ws.xi_norm2();
  const auto precondition = [&](const ScalarField& r) {
    Spectrum s;
    ws.forward(r, s);
    for (std::size_t m = 0; m < s.size(); ++m) {
      s[m] = k2[m] > 0.0 ? s[m] / (kappa_mean * k2[m]) : 0.0;
    }
    ScalarField z(grid);
    ws.inverse(s, z);
    return z;
  };
  const auto axpy = [](double a, const ScalarField& x, ScalarField& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  };

  ScalarField b = div(ws, weighted(u));
  for (double& x : b.values()) x = -x;
  ScalarField phi(grid);
  const double b_norm = std::sqrt(inner(b, b));
  if (stats) *stats = {};
  if (b_norm == 0.0) return phi;

  const int max_iters = cfg.cg_max_iters > 0 ? cfg.cg_max_iters : 10 * grid.n();
  ScalarField r = b;
  ScalarField z = precondition(r);
  ScalarField p = z;
  double rz = inner(r, z);
  double rel = 1.0;
  for (int it = 1; it <= max_iters; ++it) {
    const ScalarField ap = apply(p);
    const double pap = inner(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rz / pap;
    axpy(alpha, p, phi);
    axpy(-alpha, ap, r);
    rel = std::sqrt(inner(r, r)) / b_norm;
    if (stats) *stats = {it, rel};
    if (rel <= cfg.cg_tolerance) return phi;
    z = precondition(r);
    const double rz_next = inner(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  throw ConvergenceError("helmholtz: conjugate gradient did not converge (relative residual " +
                             std::to_string(rel) + ")",
                         max_iters, rel);
}

ScalarField solve_potential_fft(const FourierWorkspace& ws, const VectorField3& u) {
  std::array<Spectrum, 3> s;
  parallel_tasks(3, [&](std::size_t a) { ws.forward(u[static_cast<int>(a)], s[a]); });
  const auto& k2 = ws.xi_norm2();
  Spectrum phi(ws.mode_count());
  // i xi phi_hat = xi (xi . u_hat) / |xi|^2  =>  phi_hat = -i (xi . u_hat) / |xi|^2
  for (std::size_t m = 0; m < phi.size(); ++m) {
    if (k2[m] == 0.0) {
      phi[m] = 0.0;
      continue;
    }
    const std::complex<double> xu =
        ws.xi(0)[m] * s[0][m] + ws.xi(1)[m] * s[1][m] + ws.xi(2)[m] * s[2][m];
    phi[m] = std::complex<double>(0.0, -1.0) * xu / k2[m];
  }
  ScalarField out(u.grid());
  ws.inverse(phi, out);
  return out;
}

VectorField3 complement_fft(const FourierWorkspace& ws, const VectorField3& u) {
  std::array<Spectrum, 3> s;
  parallel_tasks(3, [&](std::size_t a) { ws.forward(u[static_cast<int>(a)], s[a]); });
  const auto& k2 = ws.xi_norm2();
  for (std::size_t m = 0; m < ws.mode_count(); ++m) {
    if (k2[m] == 0.0) {
      for (auto& c : s) c[m] = 0.0;
      continue;
    }
    const double k[3] = {ws.xi(0)[m], ws.xi(1)[m], ws.xi(2)[m]};
    const std::complex<double> xu = (k[0] * s[0][m] + k[1] * s[1][m] + k[2] * s[2][m]) / k2[m];
    for (int a = 0; a < 3; ++a) s[a][m] = k[a] * xu;
  }
  VectorField3 out(u.grid());
  parallel_tasks(3, [&](std::size_t a) { ws.inverse(s[a], out[static_cast<int>(a)]); });
  return out;
}

bool use_fft(const ScalarField& kappa, const ProjectorConfig& cfg) {
  switch (cfg.mode) {
    case ProjectorMode::fft_constant:
      if (!kappa.is_constant()) {
        throw std::invalid_argument("helmholtz: fft_constant mode needs constant kappa");
      }
      return true;
    case ProjectorMode::iterative_variable:
      return false;
    case ProjectorMode::automatic:
      break;
  }
  return kappa.is_constant();
}

}  // namespace

ScalarField helmholtz_potential(const FourierWorkspace& ws, const VectorField3& u,
                                const ScalarField& kappa, const ProjectorConfig& cfg,
                                SolveStats* stats) {
  require_same_grid(ws.grid(), u.grid(), "helmholtz");
  require_same_grid(u.grid(), kappa.grid(), "helmholtz kappa");
  if (use_fft(kappa, cfg)) {
    if (stats) *stats = {};
    return solve_potential_fft(ws, u);
  }
  return solve_potential_cg(ws, u, kappa, cfg, stats);
}

VectorField3 project_complement(const FourierWorkspace& ws, const VectorField3& u,
                                const ScalarField& kappa, const ProjectorConfig& cfg,
                                SolveStats* stats) {
  require_same_grid(ws.grid(), u.grid(), "helmholtz");
  require_same_grid(u.grid(), kappa.grid(), "helmholtz kappa");
  if (use_fft(kappa, cfg)) {
    if (stats) *stats = {};
    return complement_fft(ws, u);
  }
  return grad(ws, solve_potential_cg(ws, u, kappa, cfg, stats));
}

EMState project_complement(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa,
                           const ProjectorConfig& cfg) {
  EMState out(u.grid());
  out.u1 = project_complement(ws, u.u1, kappa.kappa1, cfg);
  out.u2 = project_complement(ws, u.u2, kappa.kappa2, cfg);
  return out;
}

EMState project_P(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa,
                  const ProjectorConfig& cfg) {
  EMState out = project_complement(ws, u, kappa, cfg);
  for (int c = 0; c < 6; ++c) {
    auto& o = out.component(c);
    const auto& src = u.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = src[i] - o[i];
  }
  return out;
}

EMState coupling_field(const MatterState& v, const MatterModel& model, const DomainMask& mask,
                       const Coefficients& kappa) {
  require_same_grid(mask.grid(), kappa.grid(), "coupling field");
  if (v.voxel_count() != mask.voxel_count() || v.dim() != model.dim()) {
    throw GridMismatch("matter state does not match mask/model");
  }
  EMState out(mask.grid());
  std::vector<double> vp(v.dim());
  const auto voxels = mask.voxels();
  for (std::size_t p = 0; p < voxels.size(); ++p) {
    const std::size_t idx = voxels[p];
    const PointContext ctx{mask.grid().position(idx), kappa.kappa1[idx], kappa.kappa2[idx]};
    v.get(p, vp);
    Vec3 l1v, l2v;
    model.couple(ctx, vp, l1v, l2v);
    for (int a = 0; a < 3; ++a) {
      out.u1[a][idx] = l1v[a] / ctx.kappa1;
      out.u2[a][idx] = l2v[a] / ctx.kappa2;
    }
  }
  return out;
}

double constraint_residual(const FourierWorkspace& ws, const EMState& u, const MatterState& v,
                           const MatterModel& model, const DomainMask& mask,
                           const Coefficients& kappa, const ProjectorConfig& cfg) {
  const EMState source = coupling_field(v, model, mask, kappa);
  const double normalizer = weighted_norm(u, kappa) + weighted_norm(source, kappa);
  if (normalizer == 0.0) return 0.0;
  EMState diff(u.grid());
  for (int c = 0; c < 6; ++c) {
    auto& d = diff.component(c);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = u.component(c)[i] - source.component(c)[i];
  }
  return weighted_norm(project_complement(ws, diff, kappa, cfg), kappa) / normalizer;
}

}  // namespace mxm
