#pragma once

// Run monitors and output formats.
//
// Trajectory CSV (version 1): a comment line "# mxm-csv trajectory v1", a
// header row, then one row per record. Columns:
//   t, em_norm, matter_l2, matter_sup, bound_ratio, energy, dissipation_rate,
//   dissipation_integral, constraint_residual, modulus_deviation,
//   hermiticity_deviation, trace_deviation, population_0 .. population_{N-1}
// Columns that do not apply to the model are written as 0. Numbers use the
// shortest round-trip decimal form, so identical doubles give identical bytes.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mxm/evolution.hpp"
#include "mxm/quasistatic.hpp"

namespace mxm {

struct MonitorRecord {
  double t = 0.0;
  double em_norm = 0.0;               // ||u||_kappa
  double matter_l2 = 0.0;             // ||v||_{L2(Omega)}
  double matter_sup = 0.0;            // max_x |v(x)|
  double bound_ratio = 0.0;           // matter_sup / (sup |v_init| e^{K t})
  double energy = 0.0;                // Landau-Lifschitz only
  double dissipation_rate = 0.0;      // Landau-Lifschitz only
  double dissipation_integral = 0.0;  // Landau-Lifschitz only
  double constraint_residual = 0.0;
  double modulus_deviation = 0.0;     // Landau-Lifschitz: max | |M| - |M_init| |
  double hermiticity_deviation = 0.0; // Bloch: max ||rho - rho^*||_F
  double trace_deviation = 0.0;       // Bloch: max |tr rho - tr rho_init|
  std::vector<double> populations;    // Bloch: Omega-averaged diagonal of rho
};

struct EnergyReport {
  double energy = 0.0;
  double dissipation_rate = 0.0;
};

/// E = 1/2 sum (kappa2 |u2|^2 + kappa1 |u1|^2) dV
///   + sum_Omega kappa1 (-Phi(M) + 1/2 |H_ext - M|^2) dV,
/// rate = alpha / (alpha^2 + gamma^2) sum_Omega kappa1 |dM/dt|^2 dV.
/// The anisotropy enters with a minus sign because H_a = +grad Phi.
/// Throws std::invalid_argument for other models.
EnergyReport energy_LL(const SimState& s, const CoupledSystem& system);

/// Integrand for Integrator::set_integrand giving the dissipation integral.
Integrator::Integrand ll_dissipation_integrand(const CoupledSystem& system);

struct BoundReport {
  double worst_ratio = 0.0;
  bool ok = true;
};

/// max over records of sup|v(t)| / (sup|v_init| e^{K t}); 0 when v_init = 0.
BoundReport bound_monitor(std::span<const MonitorRecord> records, double sup_init,
                          double growth, double tolerance = 1e-6);

struct MonitorOptions {
  bool constraint = true;
  ProjectorConfig projector{};
};

class Monitor {
 public:
  Monitor(const CoupledSystem& system, const SimState& initial, MonitorOptions opt = {});

  /// `dissipation_integral` is copied into the record.
  MonitorRecord record(const SimState& s, double dissipation_integral = 0.0) const;
  double sup_init() const { return sup_init_; }

 private:
  const CoupledSystem& system_;
  MonitorOptions opt_;
  double sup_init_;
  std::vector<double> modulus_init_;
  std::vector<double> trace_init_;
};

struct RunOutput {
  SimState final_state;
  std::vector<MonitorRecord> records;
};

/// Runs the integrator with a monitor record at step 0, every `stride` steps
/// and at the end. Landau-Lifschitz runs accumulate the dissipation integral.
/// `on_step` (optional) sees the state after every step, and step 0. Throws
/// NumericalError if a record is not finite.
RunOutput simulate(const SimState& s0, Integrator& integrator, const Monitor& monitor,
                   double t_end, std::size_t stride,
                   const std::function<void(const SimState&, std::size_t)>& on_step = {});

bool all_finite(const MonitorRecord& r);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

void write_trajectory_csv(std::ostream& out, std::span<const MonitorRecord> records,
                          std::size_t populations = 0);
void write_eta_study_csv(std::ostream& out, const EtaStudyResult& study);
std::string eta_study_json(const EtaStudyResult& study);

}  // namespace mxm
