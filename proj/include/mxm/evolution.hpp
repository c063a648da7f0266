#pragma once

// Time integration of the coupled field/matter system
//
//   (eta d/dt + B) u = eta (kappa^-1 . l) F(x, v_bar, u)   on the grid,
//   d/dt v           = F(x, v, u)                          on Omega,
//
// with eta = 1 for the plain system. The divergence constraint is monitored
// by the caller, never projected during stepping.

#include <functional>
#include <vector>

#include "mxm/grid.hpp"
#include "mxm/helmholtz.hpp"
#include "mxm/matter.hpp"
#include "mxm/spectral.hpp"

namespace mxm {

struct SimState {
  double t = 0.0;
  EMState u;
  MatterState v;
};

struct Derivative {
  EMState du;
  MatterState dv;
};

/// Binds a model to coefficients, domain and FFT workspace. Holds references;
/// all referenced objects must outlive it.
class CoupledSystem {
 public:
  CoupledSystem(const MatterModel& model, const Coefficients& kappa, const DomainMask& mask,
                const FourierWorkspace& ws, double eta = 1.0);

  const MatterModel& model() const { return *model_; }
  const Coefficients& kappa() const { return *kappa_; }
  const DomainMask& mask() const { return *mask_; }
  const FourierWorkspace& workspace() const { return *ws_; }
  const Grid3& grid() const { return mask_->grid(); }
  double eta() const { return eta_; }
  CoupledSystem with_eta(double eta) const;
  std::span<const PointContext> contexts() const { return contexts_; }

  SimState zero_state() const;
  /// The six field components sampled on the voxels.
  MatterState sample_fields(const EMState& u) const;
  /// F(x, v, u) on every voxel.
  MatterState matter_rhs(const EMState& u, const MatterState& v) const;
  /// (kappa^-1 . l) f_bar on the grid.
  EMState source(const MatterState& f) const;

  /// du = -(1/eta) B u + (kappa^-1 . l) F_bar, dv = F.
  Derivative rhs(const SimState& s) const;
  /// The part without the linear operator: ((kappa^-1 . l) F_bar, F).
  Derivative nonlinear(const SimState& s) const;

 private:
  const MatterModel* model_;
  const Coefficients* kappa_;
  const DomainMask* mask_;
  const FourierWorkspace* ws_;
  double eta_;
  std::vector<PointContext> contexts_;
};

/// Right-hand side of the unscaled system (eta must be 1).
Derivative rhs_full(const SimState& s, const CoupledSystem& system);

/// Constraint-consistent data: u = P u_free + (Id - P)(kappa^-1 . l) v_bar.
SimState make_initial(const EMState& u_free, const MatterState& v_init,
                      const CoupledSystem& system, const ProjectorConfig& cfg = {ProjectorMode::automatic, 1e-13});

enum class Scheme { rk4, lawson_exp };

struct IntegratorConfig {
  Scheme scheme = Scheme::rk4;
  double dt = 1e-3;
  double t_end = 1.0;
  bool renormalize_m = false;  // Landau-Lifschitz only
  double cfl_factor = 0.5;
};

/// Largest rk4 step allowed by cfl * eta * spacing * min sqrt(kappa1 kappa2).
double cfl_limit(const CoupledSystem& system, double cfl_factor);

/// Fixed-step integrator. rk4 is classical fourth order; lawson_exp applies
/// exp(-(t/eta) B) exactly and RK4 to the transformed remainder (constant
/// kappa only).
class Integrator {
 public:
  /// Optional scalar integrand q(stage state, F at stage). Its time integral
  /// is accumulated with the scheme's own quadrature weights.
  using Integrand = std::function<double(const SimState&, const MatterState&)>;

  Integrator(const CoupledSystem& system, IntegratorConfig cfg);

  const IntegratorConfig& config() const { return cfg_; }
  const CoupledSystem& system() const { return system_; }
  void set_integrand(Integrand q) { integrand_ = std::move(q); }
  double integral() const { return integral_; }

  /// Advances by dt. Throws NumericalError on NaN/Inf.
  SimState step(const SimState& s);

 private:
  SimState step_rk4(const SimState& s);
  SimState step_lawson(const SimState& s);
  double stage_integrand(const SimState& s, const MatterState& f) const;

  CoupledSystem system_;
  IntegratorConfig cfg_;
  Integrand integrand_;
  double integral_ = 0.0;
  std::vector<double> reference_modulus_;
};

using StepObserver = std::function<void(const SimState&, std::size_t step)>;

/// Steps from s0 to t_end; observer sees step 0, every `stride`-th step and
/// the final step.
SimState run(const SimState& s0, Integrator& integrator, double t_end, std::size_t stride,
             const StepObserver& observer);

/// Number of fixed steps of size dt that cover `span` (rounded).
std::size_t step_count(double span, double dt);

// ---------------------------------------------------------------------------
// Mollified Duhamel construction

struct FixedPointConfig {
  int mollifier_index = 8;  // 0 disables mollification (R = Id)
  double window = 0.1;      // T_w
  double dt = 1e-3;
  double tolerance = 1e-12; // relative to the trajectory norm
  int max_iterations = 60;
};

struct FixedPointResult {
  SimState state;                // at t = window
  int iterations = 0;
  std::vector<double> distances; // sup_t distance between successive iterates
  double contraction_ratio = 0.0;
};

/// Picard iteration of
///   u(t) = exp(-tB) u0 + int_0^t exp(-(t-s)B) (kappa^-1 . l) F(v_bar, R u) ds,
///   v(t) = v0 + int_0^t F(v, R u) ds
/// on [0, window], trapezoidal rule on the dt grid. Constant kappa only.
/// Throws NumericalError when successive distances stop shrinking.
FixedPointResult mollified_fixed_point(const SimState& s0, const FixedPointConfig& cfg,
                                       const CoupledSystem& system);

// ---------------------------------------------------------------------------
// State arithmetic

/// out = s + a * d (time unchanged).
SimState add_scaled(const SimState& s, double a, const Derivative& d);
void accumulate(Derivative& acc, double a, const Derivative& d);
bool all_finite(const SimState& s);

}  // namespace mxm
