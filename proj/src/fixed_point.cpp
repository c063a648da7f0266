#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mxm/errors.hpp"
#include "mxm/evolution.hpp"

namespace mxm {

namespace {

struct Trajectory {
  std::vector<EMState> u;
  std::vector<MatterState> v;
};

double state_distance(const EMState& a, const EMState& b, const MatterState& va,
                      const MatterState& vb, const CoupledSystem& system) {
  EMState d = a;
  for (int c = 0; c < 6; ++c) {
    auto& x = d.component(c);
    const auto& y = b.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  }
  MatterState dv = va;
  auto dst = dv.flat();
  const auto src = vb.flat();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  const double eu = weighted_norm(d, system.kappa());
  const double ev = l2_norm(dv, system.grid());
  return std::sqrt(eu * eu + ev * ev);
}

double state_norm(const EMState& u, const MatterState& v, const CoupledSystem& system) {
  const double eu = weighted_norm(u, system.kappa());
  const double ev = l2_norm(v, system.grid());
  return std::sqrt(eu * eu + ev * ev);
}

}  // namespace

FixedPointResult mollified_fixed_point(const SimState& s0, const FixedPointConfig& cfg,
                                       const CoupledSystem& system) {
  if (!system.kappa().is_constant()) {
    throw std::invalid_argument("mollified fixed point: kappa must be constant");
  }
  if (!(cfg.dt > 0.0) || !(cfg.window > 0.0)) {
    throw std::invalid_argument("mollified fixed point: dt and window must be positive");
  }
  if (cfg.mollifier_index < 0) {
    throw std::invalid_argument("mollified fixed point: mollifier index must be >= 0");
  }
  const auto& ws = system.workspace();
  const auto& kappa = system.kappa();
  const double dt = cfg.dt;
  const std::size_t steps = std::max<std::size_t>(step_count(cfg.window, dt), 1);
  const MollifierSpec spec{cfg.mollifier_index};
  const double rate = 1.0 / system.eta();

  const auto smooth = [&](const EMState& u) {
    return cfg.mollifier_index > 0 ? mollify(ws, spec, u) : u;
  };

  // u_k = E(dt)(u_{k-1} + dt/2 g_{k-1}) + dt/2 g_k,  v_k = v_{k-1} + dt/2 (F_{k-1} + F_k),
  // with (g, F) evaluated on the previous iterate. No sources gives the free flow.
  const auto apply_map = [&](const Trajectory* prev) {
    Trajectory next;
    next.u.reserve(steps + 1);
    next.v.reserve(steps + 1);
    next.u.push_back(s0.u);
    next.v.push_back(s0.v);
    std::vector<MatterState> f;
    std::vector<EMState> g;
    if (prev) {
      f.reserve(steps + 1);
      g.reserve(steps + 1);
      for (std::size_t k = 0; k <= steps; ++k) {
        f.push_back(system.matter_rhs(smooth(prev->u[k]), prev->v[k]));
        g.push_back(system.source(f.back()));
      }
    }
    for (std::size_t k = 1; k <= steps; ++k) {
      EMState w = next.u[k - 1];
      MatterState v = next.v[k - 1];
      if (prev) {
        SimState tmp{0.0, std::move(w), std::move(v)};
        tmp = add_scaled(tmp, 0.5 * dt, Derivative{g[k - 1], f[k - 1]});
        tmp.u = exp_B(ws, dt * rate, tmp.u, kappa);
        tmp = add_scaled(tmp, 0.5 * dt, Derivative{g[k], f[k]});
        w = std::move(tmp.u);
        v = std::move(tmp.v);
      } else {
        w = exp_B(ws, dt * rate, w, kappa);
      }
      next.u.push_back(std::move(w));
      next.v.push_back(std::move(v));
    }
    return next;
  };

  std::vector<double> distances;
  double worst_ratio = 0.0;
  Trajectory current = apply_map(nullptr);
  double scale = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    scale = std::max(scale, state_norm(current.u[k], current.v[k], system));
  }
  const double threshold = cfg.tolerance * std::max(scale, 1e-300);

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    Trajectory next = apply_map(&current);
    double dist = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
      dist = std::max(dist, state_distance(next.u[k], current.u[k], next.v[k], current.v[k],
                                           system));
    }
    for (std::size_t k = 0; k <= steps; ++k) {
      if (!std::isfinite(state_norm(next.u[k], next.v[k], system))) {
        throw NumericalError("mollified fixed point: non-finite iterate");
      }
    }
    distances.push_back(dist);
    current = std::move(next);
    const std::size_t m = distances.size();
    if (m >= 2 && distances[m - 2] > 0.0) {
      const double ratio = dist / distances[m - 2];
      worst_ratio = std::max(worst_ratio, ratio);
      if (dist > threshold && ratio >= 1.0) {
        std::ostringstream msg;
        msg << "mollified fixed point: iterate distance ratio " << ratio
            << " >= 1 at iteration " << it << "; reduce the window length";
        throw NumericalError(msg.str());
      }
    }
    if (dist <= threshold) {
      return {SimState{static_cast<double>(steps) * dt, current.u.back(), current.v.back()}, it,
              std::move(distances), worst_ratio};
    }
  }
  std::ostringstream msg;
  msg << "mollified fixed point: no convergence in " << cfg.max_iterations
      << " iterations (last distance " << distances.back() << ")";
  throw NumericalError(msg.str());
}

}  // namespace mxm
