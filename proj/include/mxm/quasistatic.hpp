#pragma once

// Quasi-stationary scaling (eta d/dt + B) u = eta (kappa^-1 . l) F and its
// reduced limit
//
//   u = (Id - P)(kappa^-1 . l) v_bar,   d/dt v = F(x, v, u).
//
// On the periodic box the null modes of u (xi = 0: the mean and the Nyquist
// checkerboards) lie in ker B and in ran P, and follow the null modes of the
// source at every eta. `include_null_modes` adds them to the slaved field so
// the reduced model is the eta -> 0 limit of the box problem.

#include <functional>
#include <string>
#include <vector>

#include "mxm/evolution.hpp"

namespace mxm {

/// du = -(1/eta) B u + (kappa^-1 . l) F, dv = F.
Derivative rhs_eta(const SimState& s, double eta, const CoupledSystem& system);

struct ReducedOptions {
  ProjectorConfig projector{};
  bool include_null_modes = false;
};

/// (Id - P)(kappa^-1 . l) v_bar, plus its null modes when include_null_modes.
EMState slaved_field(const MatterState& v, const CoupledSystem& system,
                     const ReducedOptions& opt = {});

/// F(x, v, slaved_field(v)).
MatterState reduced_rhs(const MatterState& v, const CoupledSystem& system,
                        const ReducedOptions& opt = {});

using ReducedObserver =
    std::function<void(double t, const MatterState& v, const EMState& u, std::size_t step)>;

/// Classical RK4 on the reduced equation from t = 0 to t_end. The observer
/// sees step 0, every `stride`-th step and the last one.
MatterState run_reduced(const MatterState& v_init, const CoupledSystem& system, double dt,
                        double t_end, std::size_t stride, const ReducedObserver& observer,
                        const ReducedOptions& opt = {});

struct EtaStudyConfig {
  std::vector<double> etas{0.2, 0.1, 0.05, 0.025};
  Vec3 center{0.0, 0.0, 0.0};  // grid units
  double radius = 8.0;         // grid units
  double t_obs = 1.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::lawson_exp;
  ProjectorConfig projector{};
};

struct EtaRow {
  double eta = 0.0;
  double pu_norm = 0.0;      // || P u ||_{L2((0, T), L2(B_R))}, null modes removed
  double v_deviation = 0.0;  // sup_t || v^eta - v^0 ||_{L2(Omega)}
  bool ok = false;
  std::string error;
};

struct EtaStudyResult {
  std::vector<EtaRow> rows;
  double slope = 0.0;      // least-squares slope of log pu_norm against log eta
  double intercept = 0.0;
  int fitted = 0;          // rows used in the fit
};

/// Runs every eta from the shared data make_initial(N (kappa^-1 . l) v_bar, v_init),
/// N the null-mode part, and compares against the reduced flow (with null
/// modes) advanced in lockstep with the same dt.
/// Numerical failures are recorded per row; the study continues.
EtaStudyResult eta_convergence_study(const MatterState& v_init, const CoupledSystem& system,
                                     const EtaStudyConfig& cfg);

/// Least-squares line through (x_i, y_i).
void fit_line(std::span<const double> x, std::span<const double> y, double& slope,
              double& intercept);

}  // namespace mxm
