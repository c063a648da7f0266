#include "mxm/quasistatic.hpp"

#include <cmath>
#include <stdexcept>

#include "mxm/errors.hpp"
#include "mxm/parallel.hpp"

namespace mxm {

namespace {

void add_into(const EMState& src, EMState& dst) {
  for (int c = 0; c < 6; ++c) {
    auto& d = dst.component(c);
    const auto& x = src.component(c);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += x[i];
  }
}

MatterState combine(const MatterState& v, double a, const MatterState& k) {
  MatterState out = v;
  auto dst = out.flat();
  const auto src = k.flat();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += a * src[i];
  return out;
}

MatterState difference(const MatterState& a, const MatterState& b) {
  return combine(a, -1.0, b);
}

std::vector<std::uint8_t> ball_indicator(const Grid3& grid, const Vec3& center, double radius) {
  std::vector<std::uint8_t> in(grid.size(), 0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto c = grid.coords(idx);
    const Vec3 d{c[0] + 0.5 - center[0], c[1] + 0.5 - center[1], c[2] + 0.5 - center[2]};
    in[idx] = norm(d) <= radius ? 1 : 0;
  }
  return in;
}

// int_{B_R} |P u - N u|^2 dx with N the null-mode part
double local_pu_square(const EMState& u, const CoupledSystem& system,
                       const std::vector<std::uint8_t>& ball, const ProjectorConfig& cfg) {
  const EMState pu = project_P(system.workspace(), u, system.kappa(), cfg);
  const EMState nu = null_modes(system.workspace(), u);
  double s = 0.0;
  for (int c = 0; c < 6; ++c) {
    const ScalarField& f = pu.component(c);
    const ScalarField& m = nu.component(c);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (ball[i]) s += (f[i] - m[i]) * (f[i] - m[i]);
    }
  }
  return s * system.grid().cell_volume();
}

}  // namespace

Derivative rhs_eta(const SimState& s, double eta, const CoupledSystem& system) {
  if (!(eta > 0.0)) throw std::invalid_argument("rhs_eta: eta must be positive");
  return system.with_eta(eta).rhs(s);
}

EMState slaved_field(const MatterState& v, const CoupledSystem& system,
                     const ReducedOptions& opt) {
  const EMState source = coupling_field(v, system.model(), system.mask(), system.kappa());
  EMState u = project_complement(system.workspace(), source, system.kappa(), opt.projector);
  if (opt.include_null_modes) add_into(null_modes(system.workspace(), source), u);
  return u;
}

MatterState reduced_rhs(const MatterState& v, const CoupledSystem& system,
                        const ReducedOptions& opt) {
  return system.matter_rhs(slaved_field(v, system, opt), v);
}

MatterState run_reduced(const MatterState& v_init, const CoupledSystem& system, double dt,
                        double t_end, std::size_t stride, const ReducedObserver& observer,
                        const ReducedOptions& opt) {
  if (!(dt > 0.0)) throw std::invalid_argument("run_reduced: dt must be positive");
  const std::size_t steps = step_count(t_end, dt);
  stride = std::max<std::size_t>(stride, 1);
  MatterState v = v_init;
  if (observer) observer(0.0, v, slaved_field(v, system, opt), 0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const MatterState k1 = reduced_rhs(v, system, opt);
    const MatterState k2 = reduced_rhs(combine(v, 0.5 * dt, k1), system, opt);
    const MatterState k3 = reduced_rhs(combine(v, 0.5 * dt, k2), system, opt);
    const MatterState k4 = reduced_rhs(combine(v, dt, k3), system, opt);
    MatterState acc = combine(k1, 2.0, k2);
    acc = combine(acc, 2.0, k3);
    acc = combine(acc, 1.0, k4);
    v = combine(v, dt / 6.0, acc);
    for (double x : v.flat()) {
      if (!std::isfinite(x)) {
        throw NumericalError("reduced flow: non-finite state at t = " +
                             std::to_string(static_cast<double>(k) * dt));
      }
    }
    if (observer && (k % stride == 0 || k == steps)) {
      observer(static_cast<double>(k) * dt, v, slaved_field(v, system, opt), k);
    }
  }
  return v;
}

void fit_line(std::span<const double> x, std::span<const double> y, double& slope,
              double& intercept) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  slope = sxy / sxx;
  intercept = my - slope * mx;
}

EtaStudyResult eta_convergence_study(const MatterState& v_init, const CoupledSystem& system,
                                     const EtaStudyConfig& cfg) {
  for (double eta : cfg.etas) {
    if (!(eta > 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("eta study: eta must be in (0, 1]");
    }
  }
  const ReducedOptions opt{cfg.projector, true};
  const EMState source = coupling_field(v_init, system.model(), system.mask(), system.kappa());
  const SimState s0 =
      make_initial(null_modes(system.workspace(), source), v_init, system, cfg.projector);
  const std::size_t steps = step_count(cfg.t_obs, cfg.dt);

  std::vector<MatterState> reference;
  reference.reserve(steps + 1);
  run_reduced(v_init, system, cfg.dt, cfg.t_obs, 1,
              [&](double, const MatterState& v, const EMState&, std::size_t) {
                reference.push_back(v);
              },
              opt);

  const auto ball = ball_indicator(system.grid(), cfg.center, cfg.radius);
  EtaStudyResult result;
  result.rows.resize(cfg.etas.size());
  parallel_tasks(cfg.etas.size(), [&](std::size_t r) {
    EtaRow& row = result.rows[r];
    row.eta = cfg.etas[r];
    try {
      const CoupledSystem scaled = system.with_eta(row.eta);
      Integrator integrator(scaled, {cfg.scheme, cfg.dt, cfg.t_obs, false, 0.5});
      SimState s = s0;
      double prev = local_pu_square(s.u, scaled, ball, cfg.projector);
      double integral = 0.0;
      double dev = 0.0;
      for (std::size_t k = 1; k <= steps; ++k) {
        s = integrator.step(s);
        const double q = local_pu_square(s.u, scaled, ball, cfg.projector);
        integral += 0.5 * cfg.dt * (prev + q);
        prev = q;
        dev = std::max(dev, l2_norm(difference(s.v, reference[k]), system.grid()));
      }
      row.pu_norm = std::sqrt(integral);
      row.v_deviation = dev;
      row.ok = std::isfinite(row.pu_norm) && std::isfinite(row.v_deviation);
      if (!row.ok) row.error = "non-finite diagnostics";
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  std::vector<double> lx, ly;
  for (const auto& row : result.rows) {
    if (row.ok && row.pu_norm > 0.0) {
      lx.push_back(std::log(row.eta));
      ly.push_back(std::log(row.pu_norm));
    }
  }
  result.fitted = static_cast<int>(lx.size());
  if (lx.size() >= 2) fit_line(lx, ly, result.slope, result.intercept);
  return result;
}

}  // namespace mxm
