#include "mxm/experiments.hpp"

#include <cmath>
#include <ostream>

#include "mxm/diagnostics.hpp"
#include "mxm/errors.hpp"
#include "mxm/quasistatic.hpp"

namespace mxm {

double state_distance(const SimState& a, const SimState& b, const CoupledSystem& system) {
  EMState du = a.u;
  for (int c = 0; c < 6; ++c) {
    auto& x = du.component(c);
    const auto& y = b.u.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  }
  MatterState dv = a.v;
  auto dst = dv.flat();
  const auto src = b.v.flat();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  const double eu = weighted_norm(du, system.kappa());
  const double ev = l2_norm(dv, system.grid());
  return std::sqrt(eu * eu + ev * ev);
}

MollifiedComparison compare_mollified(const SimState& s0, const CoupledSystem& system,
                                      const MollifiedSpec& spec) {
  if (!system.kappa().is_constant()) {
    throw std::invalid_argument("compare-mollified: the reference needs constant coefficients");
  }
  MollifiedComparison out;
  out.reference_dt = spec.dt / 4.0;
  IntegratorConfig ic;
  ic.scheme = Scheme::lawson_exp;
  ic.dt = out.reference_dt;
  ic.t_end = spec.window;
  Integrator integ(system, ic);
  SimState ref = s0;
  const std::size_t steps = step_count(spec.window, ic.dt);
  for (std::size_t k = 0; k < steps; ++k) ref = integ.step(ref);

  std::vector<int> ns{0};
  ns.insert(ns.end(), spec.n_list.begin(), spec.n_list.end());
  for (int n : ns) {
    MollifiedRow row;
    row.n = n;
    FixedPointConfig fc;
    fc.mollifier_index = n;
    fc.window = spec.window;
    fc.dt = spec.dt;
    fc.tolerance = spec.tolerance;
    fc.max_iterations = spec.max_iterations;
    try {
      const auto fp = mollified_fixed_point(s0, fc, system);
      row.iterations = fp.iterations;
      row.contraction_ratio = fp.contraction_ratio;
      row.distance = state_distance(fp.state, ref, system);
      row.ok = row.contraction_ratio < 1.0 && std::isfinite(row.distance);
    } catch (const NumericalError& e) {
      row.error = e.what();
    } catch (const ConvergenceError& e) {
      row.error = e.what();
    }
    out.rows.push_back(row);
  }
  return out;
}

void write_mollified_csv(std::ostream& out, const MollifiedComparison& cmp) {
  out << "# mxm-csv mollified v1\n";
  out << "n,iterations,contraction_ratio,distance,ok\n";
  for (const auto& r : cmp.rows) {
    out << r.n << ',' << r.iterations << ',' << format_double(r.contraction_ratio) << ','
        << format_double(r.distance) << ',' << (r.ok ? 1 : 0) << '\n';
  }
}

std::vector<ReducedRecord> run_reduced_records(const MatterState& v_init,
                                               const CoupledSystem& system,
                                               const ReducedSpec& spec,
                                               const ProjectorConfig& projector) {
  ReducedOptions opt;
  opt.projector = projector;
  opt.include_null_modes = spec.include_null_modes;
  std::vector<ReducedRecord> records;
  run_reduced(
      v_init, system, spec.dt, spec.t_end, spec.stride,
      [&](double t, const MatterState& v, const EMState& u, std::size_t) {
        ReducedRecord r{t, l2_norm(v, system.grid()), sup_norm(v),
                        weighted_norm(u, system.kappa())};
        if (!std::isfinite(r.matter_l2) || !std::isfinite(r.matter_sup) ||
            !std::isfinite(r.em_norm)) {
          throw NumericalError("non-finite reduced record at t = " + format_double(t));
        }
        records.push_back(r);
      },
      opt);
  return records;
}

void write_reduced_csv(std::ostream& out, const std::vector<ReducedRecord>& records) {
  out << "# mxm-csv reduced v1\n";
  out << "t,matter_l2,matter_sup,em_norm\n";
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.matter_l2) << ','
        << format_double(r.matter_sup) << ',' << format_double(r.em_norm) << '\n';
  }
}

}  // namespace mxm
