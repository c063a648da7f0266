#include "mxm/diagnostics.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "mxm/errors.hpp"

namespace mxm {

namespace {

const LandauLifschitzModel* as_ll(const MatterModel& model) {
  return dynamic_cast<const LandauLifschitzModel*>(&model);
}

const BlochModel* as_bloch(const MatterModel& model) {
  return dynamic_cast<const BlochModel*>(&model);
}

double dissipation_sum(const CoupledSystem& system, const LandauLifschitzModel& ll,
                       const MatterState& f) {
  const auto& p = ll.params();
  const auto ctx = system.contexts();
  double s = 0.0;
  for (std::size_t q = 0; q < f.voxel_count(); ++q) {
    double f2 = 0.0;
    for (std::size_t c = 0; c < 3; ++c) f2 += f.value(c, q) * f.value(c, q);
    s += ctx[q].kappa1 * f2;
  }
  return p.coupling * p.alpha / (p.alpha * p.alpha + p.gamma * p.gamma) * s *
         system.grid().cell_volume();
}

}  // namespace

// With coupling c the exchange term carries c, so both the matter energy and
// the dissipation rate are scaled by c; c = 1 is the physical system.
EnergyReport energy_LL(const SimState& s, const CoupledSystem& system) {
  const auto* ll = as_ll(system.model());
  if (!ll) throw std::invalid_argument("energy_LL: model is not Landau-Lifschitz");
  const auto& p = ll->params();
  const double field = 0.5 * weighted_inner(s.u, s.u, system.kappa());
  const auto ctx = system.contexts();
  double matter = 0.0;
  for (std::size_t q = 0; q < s.v.voxel_count(); ++q) {
    const Vec3 m{s.v.value(0, q), s.v.value(1, q), s.v.value(2, q)};
    const Vec3 d = p.h_ext - m;
    matter += ctx[q].kappa1 * (-ll->anisotropy_potential(m) + 0.5 * dot(d, d));
  }
  matter *= p.coupling * system.grid().cell_volume();
  const MatterState f = system.matter_rhs(s.u, s.v);
  return {field + matter, dissipation_sum(system, *ll, f)};
}

Integrator::Integrand ll_dissipation_integrand(const CoupledSystem& system) {
  const auto* ll = as_ll(system.model());
  if (!ll) throw std::invalid_argument("dissipation integrand: model is not Landau-Lifschitz");
  return [&system, ll](const SimState&, const MatterState& f) {
    return dissipation_sum(system, *ll, f);
  };
}

BoundReport bound_monitor(std::span<const MonitorRecord> records, double sup_init,
                          double growth, double tolerance) {
  BoundReport report;
  if (sup_init == 0.0) return report;
  for (const auto& r : records) {
    const double ratio = r.matter_sup / (sup_init * std::exp(growth * r.t));
    report.worst_ratio = std::max(report.worst_ratio, ratio);
  }
  report.ok = report.worst_ratio <= 1.0 + tolerance;
  return report;
}

// ---------------------------------------------------------------------------

Monitor::Monitor(const CoupledSystem& system, const SimState& initial, MonitorOptions opt)
    : system_(system), opt_(opt), sup_init_(sup_norm(initial.v)) {
  const std::size_t count = initial.v.voxel_count();
  if (as_ll(system.model())) {
    modulus_init_.resize(count);
    for (std::size_t p = 0; p < count; ++p) modulus_init_[p] = initial.v.modulus(p);
  }
  if (const auto* bloch = as_bloch(system.model())) {
    trace_init_.resize(count);
    for (std::size_t p = 0; p < count; ++p) {
      double tr = 0.0;
      for (int a = 0; a < bloch->levels(); ++a) tr += initial.v.value(static_cast<std::size_t>(a), p);
      trace_init_[p] = tr;
    }
  }
}

MonitorRecord Monitor::record(const SimState& s, double dissipation_integral) const {
  MonitorRecord r;
  const auto& model = system_.model();
  r.t = s.t;
  r.em_norm = weighted_norm(s.u, system_.kappa());
  r.matter_l2 = l2_norm(s.v, system_.grid());
  r.matter_sup = sup_norm(s.v);
  r.bound_ratio =
      sup_init_ > 0.0 ? r.matter_sup / (sup_init_ * std::exp(model.growth_constant() * s.t)) : 0.0;
  if (opt_.constraint) {
    r.constraint_residual = constraint_residual(system_.workspace(), s.u, s.v, model,
                                                system_.mask(), system_.kappa(), opt_.projector);
  }
  if (as_ll(model)) {
    const EnergyReport e = energy_LL(s, system_);
    r.energy = e.energy;
    r.dissipation_rate = e.dissipation_rate;
    r.dissipation_integral = dissipation_integral;
    for (std::size_t p = 0; p < s.v.voxel_count(); ++p) {
      r.modulus_deviation = std::max(r.modulus_deviation, std::abs(s.v.modulus(p) - modulus_init_[p]));
    }
  }
  if (const auto* bloch = as_bloch(model)) {
    const int n = bloch->levels();
    const std::size_t count = s.v.voxel_count();
    r.populations.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> vp(s.v.dim());
    for (std::size_t p = 0; p < count; ++p) {
      s.v.get(p, vp);
      const Eigen::MatrixXcd rho = unpack_rho(vp, n);
      r.hermiticity_deviation = std::max(r.hermiticity_deviation, (rho - rho.adjoint()).norm());
      double tr = 0.0;
      for (int a = 0; a < n; ++a) {
        tr += vp[static_cast<std::size_t>(a)];
        r.populations[static_cast<std::size_t>(a)] += vp[static_cast<std::size_t>(a)];
      }
      r.trace_deviation = std::max(r.trace_deviation, std::abs(tr - trace_init_[p]));
    }
    for (double& x : r.populations) x /= static_cast<double>(count);
  }
  return r;
}

bool all_finite(const MonitorRecord& r) {
  const double xs[] = {r.t,
                       r.em_norm,
                       r.matter_l2,
                       r.matter_sup,
                       r.bound_ratio,
                       r.energy,
                       r.dissipation_rate,
                       r.dissipation_integral,
                       r.constraint_residual,
                       r.modulus_deviation,
                       r.hermiticity_deviation,
                       r.trace_deviation};
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  for (double x : r.populations) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

RunOutput simulate(const SimState& s0, Integrator& integrator, const Monitor& monitor,
                   double t_end, std::size_t stride,
                   const std::function<void(const SimState&, std::size_t)>& on_step) {
  const bool ll = as_ll(integrator.system().model()) != nullptr;
  if (ll) integrator.set_integrand(ll_dissipation_integrand(integrator.system()));
  const std::size_t steps = step_count(t_end - s0.t, integrator.config().dt);
  stride = std::max<std::size_t>(stride, 1);
  std::vector<MonitorRecord> records;
  const auto record = [&](const SimState& s) {
    MonitorRecord r = monitor.record(s, ll ? integrator.integral() : 0.0);
    if (!all_finite(r)) {
      throw NumericalError("non-finite monitor record at t = " + format_double(s.t));
    }
    records.push_back(std::move(r));
  };
  SimState s = s0;
  record(s);
  if (on_step) on_step(s, 0);
  for (std::size_t k = 1; k <= steps; ++k) {
    s = integrator.step(s);
    if (k % stride == 0 || k == steps) record(s);
    if (on_step) on_step(s, k);
  }
  return {std::move(s), std::move(records)};
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, std::span<const MonitorRecord> records,
                          std::size_t populations) {
  out << "# mxm-csv trajectory v1\n";
  out << "t,em_norm,matter_l2,matter_sup,bound_ratio,energy,dissipation_rate,"
         "dissipation_integral,constraint_residual,modulus_deviation,hermiticity_deviation,"
         "trace_deviation";
  for (std::size_t a = 0; a < populations; ++a) out << ",population_" << a;
  out << '\n';
  for (const auto& r : records) {
    const double xs[] = {r.t,
                         r.em_norm,
                         r.matter_l2,
                         r.matter_sup,
                         r.bound_ratio,
                         r.energy,
                         r.dissipation_rate,
                         r.dissipation_integral,
                         r.constraint_residual,
                         r.modulus_deviation,
                         r.hermiticity_deviation,
                         r.trace_deviation};
    bool first = true;
    for (double x : xs) {
      if (!first) out << ',';
      out << format_double(x);
      first = false;
    }
    for (std::size_t a = 0; a < populations; ++a) {
      out << ',' << format_double(a < r.populations.size() ? r.populations[a] : 0.0);
    }
    out << '\n';
  }
}

void write_eta_study_csv(std::ostream& out, const EtaStudyResult& study) {
  out << "# mxm-csv eta-study v1\n";
  out << "eta,pu_norm,v_deviation,ok\n";
  for (const auto& row : study.rows) {
    out << format_double(row.eta) << ',' << format_double(row.pu_norm) << ','
        << format_double(row.v_deviation) << ',' << (row.ok ? 1 : 0) << '\n';
  }
}

std::string eta_study_json(const EtaStudyResult& study) {
  nlohmann::json j;
  j["format"] = "mxm-eta-study";
  j["version"] = 1;
  j["slope"] = study.slope;
  j["intercept"] = study.intercept;
  j["fitted_points"] = study.fitted;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : study.rows) {
    nlohmann::json r{{"eta", row.eta},
                     {"pu_norm", row.pu_norm},
                     {"v_deviation", row.v_deviation},
                     {"ok", row.ok}};
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  return j.dump(2);
}

}  // namespace mxm
