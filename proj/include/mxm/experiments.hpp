#pragma once

// Experiment drivers shared by the CLI and the acceptance tests.
//
// Reduced CSV (version 1): "# mxm-csv reduced v1", header, then
//   t, matter_l2, matter_sup, em_norm
// Mollified CSV (version 1): "# mxm-csv mollified v1", header, then
//   n, iterations, contraction_ratio, distance, ok
// The row with n = 0 is the unmollified iteration; its distance is the pure
// time-integration error of the trapezoid scheme against the reference.

#include <iosfwd>
#include <string>
#include <vector>

#include "mxm/evolution.hpp"
#include "mxm/scenario.hpp"

namespace mxm {

/// sqrt(||du||_kappa^2 + ||dv||_L2^2).
double state_distance(const SimState& a, const SimState& b, const CoupledSystem& system);

struct MollifiedRow {
  int n = 0;
  int iterations = 0;
  double contraction_ratio = 0.0;
  double distance = 0.0;  // to the reference at t = window
  bool ok = false;
  std::string error;
};

struct MollifiedComparison {
  double reference_dt = 0.0;
  std::vector<MollifiedRow> rows;  // n = 0 first, then spec.n_list in order
};

/// Reference: Lawson steps of dt/4 over the window. Constant kappa only.
MollifiedComparison compare_mollified(const SimState& s0, const CoupledSystem& system,
                                      const MollifiedSpec& spec);

void write_mollified_csv(std::ostream& out, const MollifiedComparison& cmp);

struct ReducedRecord {
  double t = 0.0;
  double matter_l2 = 0.0;
  double matter_sup = 0.0;
  double em_norm = 0.0;  // slaved field, kappa-norm
};

std::vector<ReducedRecord> run_reduced_records(const MatterState& v_init,
                                               const CoupledSystem& system,
                                               const ReducedSpec& spec,
                                               const ProjectorConfig& projector);

void write_reduced_csv(std::ostream& out, const std::vector<ReducedRecord>& records);

}  // namespace mxm
