#pragma once

// Weighted Helmholtz decomposition. For each slot i,
//   (Id - P_i) u = grad phi,  div(kappa_i grad phi) = div(kappa_i u),
// so that ran P_i = {div(kappa_i u) = 0} and ran(Id - P_i) = {curl u = 0}.
// The decomposition is orthogonal in the kappa-weighted inner product.
// Constants (the zero Fourier mode) belong to ran P.

#include "mxm/grid.hpp"
#include "mxm/spectral.hpp"

namespace mxm {

class MatterModel;

enum class ProjectorMode {
  automatic,           // fft_constant when kappa_i is constant, else iterative
  fft_constant,        // exact per-mode Leray complement
  iterative_variable,  // preconditioned conjugate gradient
};

struct ProjectorConfig {
  ProjectorMode mode = ProjectorMode::automatic;
  double cg_tolerance = 1e-10;  // relative residual
  int cg_max_iters = 0;         // 0 means 10 * n
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// (Id - P_i) u_i. Throws ConvergenceError if CG stalls.
VectorField3 project_complement(const FourierWorkspace& ws, const VectorField3& u,
                                const ScalarField& kappa, const ProjectorConfig& cfg = {},
                                SolveStats* stats = nullptr);

/// The potential phi (mean zero) with grad phi = (Id - P_i) u.
ScalarField helmholtz_potential(const FourierWorkspace& ws, const VectorField3& u,
                                const ScalarField& kappa, const ProjectorConfig& cfg = {},
                                SolveStats* stats = nullptr);

EMState project_complement(const FourierWorkspace& ws, const EMState& u,
                           const Coefficients& kappa, const ProjectorConfig& cfg = {});
EMState project_P(const FourierWorkspace& ws, const EMState& u, const Coefficients& kappa,
                  const ProjectorConfig& cfg = {});

/// (kappa^-1 . l) v extended by zero to the whole grid.
EMState coupling_field(const MatterState& v, const MatterModel& model, const DomainMask& mask,
                       const Coefficients& kappa);

/// ||(Id - P)(u - (kappa^-1 . l) v_bar)||_kappa normalised by
/// ||u||_kappa + ||(kappa^-1 . l) v_bar||_kappa (0 when both vanish).
double constraint_residual(const FourierWorkspace& ws, const EMState& u, const MatterState& v,
                           const MatterModel& model, const DomainMask& mask,
                           const Coefficients& kappa, const ProjectorConfig& cfg = {});

}  // namespace mxm
