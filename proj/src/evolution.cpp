#include "mxm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mxm/errors.hpp"
#include "mxm/kernels.hpp"
#include "mxm/parallel.hpp"

namespace mxm {

// ---------------------------------------------------------------------------
// State arithmetic

namespace {

void axpy_field(double a, const ScalarField& x, ScalarField& y) {
  const auto& k = kernels::active();
  const double* px = x.data();
  double* py = y.data();
  parallel_range(y.size(), kDefaultGrain, [&](std::size_t lo, std::size_t hi) {
    k.axpy(a, px + lo, py + lo, hi - lo);
  });
}

void axpy_em(double a, const EMState& x, EMState& y) {
  for (int c = 0; c < 6; ++c) axpy_field(a, x.component(c), y.component(c));
}

void axpy_matter(double a, const MatterState& x, MatterState& y) {
  auto dst = y.flat();
  const auto src = x.flat();
  kernels::active().axpy(a, src.data(), dst.data(), dst.size());
}

bool finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

SimState add_scaled(const SimState& s, double a, const Derivative& d) {
  SimState out = s;
  axpy_em(a, d.du, out.u);
  axpy_matter(a, d.dv, out.v);
  return out;
}

void accumulate(Derivative& acc, double a, const Derivative& d) {
  axpy_em(a, d.du, acc.du);
  axpy_matter(a, d.dv, acc.dv);
}

bool all_finite(const SimState& s) {
  if (!std::isfinite(s.t) || !finite(s.v.flat())) return false;
  for (int c = 0; c < 6; ++c) {
    if (!finite(s.u.component(c).values())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CoupledSystem

CoupledSystem::CoupledSystem(const MatterModel& model, const Coefficients& kappa,
                             const DomainMask& mask, const FourierWorkspace& ws, double eta)
    : model_(&model), kappa_(&kappa), mask_(&mask), ws_(&ws), eta_(eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("coupled system: eta must be positive");
  require_same_grid(kappa.grid(), mask.grid(), "coupled system coefficients");
  require_same_grid(ws.grid(), mask.grid(), "coupled system workspace");
  const int j = model.field_slot();
  if (j != 1 && j != 2) throw std::invalid_argument("coupled system: field slot must be 1 or 2");
  contexts_.reserve(mask.voxel_count());
  for (std::size_t idx : mask.voxels()) {
    contexts_.push_back({mask.grid().position(idx), kappa.kappa1[idx], kappa.kappa2[idx]});
  }
}

CoupledSystem CoupledSystem::with_eta(double eta) const {
  CoupledSystem copy = *this;
  if (!(eta > 0.0)) throw std::invalid_argument("coupled system: eta must be positive");
  copy.eta_ = eta;
  return copy;
}

SimState CoupledSystem::zero_state() const {
  return {0.0, EMState(grid()), MatterState(model_->dim(), mask_->voxel_count())};
}

MatterState CoupledSystem::sample_fields(const EMState& u) const {
  MatterState out(6, mask_->voxel_count());
  const auto voxels = mask_->voxels();
  for (int c = 0; c < 6; ++c) {
    auto dst = out.component(static_cast<std::size_t>(c));
    const ScalarField& f = u.component(c);
    for (std::size_t p = 0; p < voxels.size(); ++p) dst[p] = f[voxels[p]];
  }
  return out;
}

MatterState CoupledSystem::matter_rhs(const EMState& u, const MatterState& v) const {
  MatterState f(model_->dim(), mask_->voxel_count());
  model_->eval_domain(contexts_, v, sample_fields(u), f);
  return f;
}

EMState CoupledSystem::source(const MatterState& f) const {
  return coupling_field(f, *model_, *mask_, *kappa_);
}

Derivative CoupledSystem::nonlinear(const SimState& s) const {
  MatterState f = matter_rhs(s.u, s.v);
  EMState du = source(f);
  return {std::move(du), std::move(f)};
}

Derivative CoupledSystem::rhs(const SimState& s) const {
  Derivative d = nonlinear(s);
  const EMState bu = apply_B_scaled(*ws_, s.u, *kappa_, 1.0 / eta_);
  axpy_em(-1.0, bu, d.du);
  return d;
}

Derivative rhs_full(const SimState& s, const CoupledSystem& system) {
  if (system.eta() != 1.0) throw std::invalid_argument("rhs_full: system is eta-scaled");
  return system.rhs(s);
}

SimState make_initial(const EMState& u_free, const MatterState& v_init,
                      const CoupledSystem& system, const ProjectorConfig& cfg) {
  const auto& ws = system.workspace();
  const auto& kappa = system.kappa();
  SimState s{0.0, project_P(ws, u_free, kappa, cfg), v_init};
  const EMState slaved = project_complement(
      ws, coupling_field(v_init, system.model(), system.mask(), kappa), kappa, cfg);
  axpy_em(1.0, slaved, s.u);
  return s;
}

// ---------------------------------------------------------------------------
// Integrator

double cfl_limit(const CoupledSystem& system, double cfl_factor) {
  const auto& k = system.kappa();
  double m = std::sqrt(k.kappa1[0] * k.kappa2[0]);
  for (std::size_t i = 0; i < k.kappa1.size(); ++i) {
    m = std::min(m, std::sqrt(k.kappa1[i] * k.kappa2[i]));
  }
  return cfl_factor * system.eta() * system.grid().spacing() * m;
}

Integrator::Integrator(const CoupledSystem& system, IntegratorConfig cfg)
    : system_(system), cfg_(cfg) {
  if (!(cfg_.dt > 0.0)) throw std::invalid_argument("integrator: dt must be positive");
  if (cfg_.scheme == Scheme::rk4 && cfg_.dt > cfl_limit(system_, cfg_.cfl_factor)) {
    std::ostringstream msg;
    msg << "integrator: dt = " << cfg_.dt << " exceeds the rk4 CFL limit "
        << cfl_limit(system_, cfg_.cfl_factor);
    throw std::invalid_argument(msg.str());
  }
  if (cfg_.scheme == Scheme::lawson_exp && !system_.kappa().is_constant()) {
    throw std::invalid_argument("integrator: lawson_exp needs constant coefficients");
  }
  if (cfg_.renormalize_m && system_.model().name() != "landau_lifschitz") {
    throw std::invalid_argument("integrator: renormalize_m applies to Landau-Lifschitz only");
  }
}

double Integrator::stage_integrand(const SimState& s, const MatterState& f) const {
  return integrand_ ? integrand_(s, f) : 0.0;
}

SimState Integrator::step(const SimState& s) {
  if (cfg_.renormalize_m && reference_modulus_.empty()) {
    reference_modulus_.resize(s.v.voxel_count());
    for (std::size_t p = 0; p < s.v.voxel_count(); ++p) reference_modulus_[p] = s.v.modulus(p);
  }
  SimState next = cfg_.scheme == Scheme::rk4 ? step_rk4(s) : step_lawson(s);
  if (cfg_.renormalize_m) {
    for (std::size_t p = 0; p < next.v.voxel_count(); ++p) {
      const double m = next.v.modulus(p);
      if (m == 0.0) continue;
      const double scale = reference_modulus_[p] / m;
      for (std::size_t c = 0; c < next.v.dim(); ++c) next.v.value(c, p) *= scale;
    }
  }
  if (!all_finite(next)) {
    std::ostringstream msg;
    msg << "non-finite state after step to t = " << next.t;
    throw NumericalError(msg.str());
  }
  return next;
}

SimState Integrator::step_rk4(const SimState& s) {
  const double h = cfg_.dt;
  const Derivative k1 = system_.rhs(s);
  const double q1 = stage_integrand(s, k1.dv);
  Derivative acc = k1;

  SimState stage = add_scaled(s, 0.5 * h, k1);
  stage.t = s.t + 0.5 * h;
  const Derivative k2 = system_.rhs(stage);
  const double q2 = stage_integrand(stage, k2.dv);
  accumulate(acc, 2.0, k2);

  stage = add_scaled(s, 0.5 * h, k2);
  stage.t = s.t + 0.5 * h;
  const Derivative k3 = system_.rhs(stage);
  const double q3 = stage_integrand(stage, k3.dv);
  accumulate(acc, 2.0, k3);

  stage = add_scaled(s, h, k3);
  stage.t = s.t + h;
  const Derivative k4 = system_.rhs(stage);
  const double q4 = stage_integrand(stage, k4.dv);
  accumulate(acc, 1.0, k4);

  SimState next = add_scaled(s, h / 6.0, acc);
  next.t = s.t + h;
  integral_ += h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
  return next;
}

// Lawson RK4 on w = exp(t L) U with L = diag(-(1/eta) B, 0):
//   U2 = E(h/2)(U + h/2 N1), U3 = E(h/2) U + h/2 N2, U4 = E(h) U + h E(h/2) N3,
//   U+ = E(h) U + h/6 E(h) N1 + h/3 E(h/2)(N2 + N3) + h/6 N4.
SimState Integrator::step_lawson(const SimState& s) {
  const double h = cfg_.dt;
  const auto& ws = system_.workspace();
  const auto& kappa = system_.kappa();
  const double rate = 1.0 / system_.eta();
  const auto prop = [&](double tau, const EMState& u) { return exp_B(ws, tau * rate, u, kappa); };

  const Derivative n1 = system_.nonlinear(s);
  const double q1 = stage_integrand(s, n1.dv);

  SimState stage = add_scaled(s, 0.5 * h, n1);
  stage.u = prop(0.5 * h, stage.u);
  stage.t = s.t + 0.5 * h;
  const Derivative n2 = system_.nonlinear(stage);
  const double q2 = stage_integrand(stage, n2.dv);

  const EMState half_u = prop(0.5 * h, s.u);
  stage = SimState{s.t + 0.5 * h, half_u, s.v};
  stage = add_scaled(stage, 0.5 * h, n2);
  const Derivative n3 = system_.nonlinear(stage);
  const double q3 = stage_integrand(stage, n3.dv);

  const EMState full_u = prop(h, s.u);
  Derivative n3_prop{prop(0.5 * h, n3.du), n3.dv};
  stage = SimState{s.t + h, full_u, s.v};
  stage = add_scaled(stage, h, n3_prop);
  const Derivative n4 = system_.nonlinear(stage);
  const double q4 = stage_integrand(stage, n4.dv);

  Derivative mid = n2;
  accumulate(mid, 1.0, n3);
  mid.du = prop(0.5 * h, mid.du);
  Derivative first{prop(h, n1.du), n1.dv};

  SimState next{s.t + h, full_u, s.v};
  next = add_scaled(next, h / 6.0, first);
  next = add_scaled(next, h / 3.0, mid);
  next = add_scaled(next, h / 6.0, n4);
  next.t = s.t + h;
  integral_ += h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
  return next;
}

std::size_t step_count(double span, double dt) {
  if (!(span >= 0.0)) return 0;
  return static_cast<std::size_t>(std::llround(span / dt));
}

SimState run(const SimState& s0, Integrator& integrator, double t_end, std::size_t stride,
             const StepObserver& observer) {
  const std::size_t steps = step_count(t_end - s0.t, integrator.config().dt);
  stride = std::max<std::size_t>(stride, 1);
  SimState s = s0;
  if (observer) observer(s, 0);
  for (std::size_t k = 1; k <= steps; ++k) {
    s = integrator.step(s);
    if (observer && (k % stride == 0 || k == steps)) observer(s, k);
  }
  return s;
}

}  // namespace mxm
