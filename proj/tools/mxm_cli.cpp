// mxm: command-line driver. Exit codes: 0 ok, 2 bad configuration or
// arguments, 3 numerical abort, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mxm/diagnostics.hpp"
#include "mxm/errors.hpp"
#include "mxm/experiments.hpp"
#include "mxm/parallel.hpp"
#include "mxm/scenario.hpp"
#include "mxm/snapshot.hpp"
#include "mxm/validation.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string scenario;
  std::string out_dir;
  std::size_t snapshots = 0;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::vector<int> n_list;
};

mxm::Scenario load(const Options& o) {
  mxm::Scenario s = mxm::load_scenario(o.scenario);
  if (o.seed) s.initial.seed = *o.seed;
  if (!o.out_dir.empty()) s.output_dir = o.out_dir;
  return s;
}

fs::path out_path(const mxm::Scenario& s, const std::string& name) {
  fs::create_directories(s.output_dir);
  return fs::path(s.output_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

std::size_t population_count(const mxm::Scenario& s) {
  return s.model.kind == "bloch" ? static_cast<std::size_t>(s.model.levels) : 0;
}

int cmd_run(const Options& o) {
  const auto sc = load(o);
  mxm::ScenarioInstance inst(sc);
  const auto s0 = inst.initial_state();
  mxm::Integrator integ(inst.system(), sc.integrator);
  mxm::Monitor monitor(inst.system(), s0, {sc.monitor.constraint, sc.projector});
  std::function<void(const mxm::SimState&, std::size_t)> on_step;
  if (o.snapshots > 0) {
    on_step = [&](const mxm::SimState& s, std::size_t k) {
      if (k % o.snapshots != 0) return;
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%06zu.mxmt", k);
      mxm::write_state_snapshot(out_path(sc, name).string(), s.u, s.v, inst.mask());
    };
  }
  const auto out =
      mxm::simulate(s0, integ, monitor, sc.integrator.t_end, sc.monitor.stride, on_step);
  const auto path = out_path(sc, "trajectory.csv");
  auto f = open_out(path);
  mxm::write_trajectory_csv(f, out.records, population_count(sc));
  const auto& last = out.records.back();
  std::cout << "t = " << mxm::format_double(last.t)
            << "  constraint = " << mxm::format_double(last.constraint_residual)
            << "  bound_ratio = " << mxm::format_double(last.bound_ratio) << '\n'
            << "wrote " << path.string() << '\n';
  return 0;
}

int cmd_reduced(const Options& o) {
  const auto sc = load(o);
  mxm::ScenarioInstance inst(sc);
  const auto rec =
      mxm::run_reduced_records(inst.v_init(), inst.system(), sc.reduced, sc.projector);
  const auto path = out_path(sc, "reduced.csv");
  auto f = open_out(path);
  mxm::write_reduced_csv(f, rec);
  std::cout << "wrote " << path.string() << '\n';
  return 0;
}

int cmd_quasistatic(const Options& o) {
  const auto sc = load(o);
  mxm::ScenarioInstance inst(sc);
  const auto study = mxm::eta_convergence_study(inst.v_init(), inst.system(), sc.quasistatic);
  {
    auto f = open_out(out_path(sc, "eta_study.csv"));
    mxm::write_eta_study_csv(f, study);
    auto j = open_out(out_path(sc, "eta_study.json"));
    j << mxm::eta_study_json(study) << '\n';
  }
  for (const auto& r : study.rows) {
    std::cout << "eta " << mxm::format_double(r.eta) << "  |Pu| "
              << mxm::format_double(r.pu_norm) << "  |v - v0| "
              << mxm::format_double(r.v_deviation) << (r.ok ? "" : "  FAILED: " + r.error)
              << '\n';
  }
  std::cout << "slope " << mxm::format_double(study.slope) << " over " << study.fitted
            << " points\n";
  for (const auto& r : study.rows) {
    if (!r.ok) return 3;
  }
  return 0;
}

int cmd_mollified(const Options& o) {
  auto sc = load(o);
  if (!o.n_list.empty()) sc.mollified.n_list = o.n_list;
  for (int n : sc.mollified.n_list) {
    if (n < 1) throw mxm::ConfigError("--n-list", "indices must be >= 1");
  }
  if (sc.coefficients.kind != "constant") {
    throw mxm::ConfigError("coefficients.kind", "compare-mollified needs constant coefficients");
  }
  mxm::ScenarioInstance inst(sc);
  const auto cmp = mxm::compare_mollified(inst.initial_state(), inst.system(), sc.mollified);
  const auto path = out_path(sc, "mollified.csv");
  auto f = open_out(path);
  mxm::write_mollified_csv(f, cmp);
  bool ok = true;
  for (const auto& r : cmp.rows) {
    std::cout << "n " << r.n << "  iterations " << r.iterations << "  ratio "
              << mxm::format_double(r.contraction_ratio) << "  distance "
              << mxm::format_double(r.distance) << (r.ok ? "" : "  FAILED: " + r.error) << '\n';
    ok = ok && r.ok;
  }
  std::cout << "wrote " << path.string() << '\n';
  return ok ? 0 : 3;
}

int cmd_validate() {
  int failed = 0;
  mxm::run_validation_suite([&](const mxm::CheckResult& r) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled Maxwell-matter simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out-dir", o.out_dir, "Output directory (overrides output.dir)");
  app.add_option("--snapshots", o.snapshots, "Write a binary snapshot every k steps (run)");
  app.add_option("--seed", o.seed, "Seed for random initial fields");
  app.add_option("--threads", o.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);

  auto* run = app.add_subcommand("run", "Full coupled system");
  run->add_option("scenario", o.scenario)->required()->check(CLI::ExistingFile);
  auto* reduced = app.add_subcommand("reduced", "Quasi-stationary limit model");
  reduced->add_option("scenario", o.scenario)->required()->check(CLI::ExistingFile);
  auto* qs = app.add_subcommand("quasistatic-study", "Sweep eta and fit the decay of Pu");
  qs->add_option("scenario", o.scenario)->required()->check(CLI::ExistingFile);
  auto* moll = app.add_subcommand("compare-mollified", "Mollified fixed points against a reference");
  moll->add_option("scenario", o.scenario)->required()->check(CLI::ExistingFile);
  moll->add_option("--n-list", o.n_list, "Mollifier indices")->delimiter(',');
  auto* validate = app.add_subcommand("validate", "Invariant suite on built-in micro-scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.threads > 0) mxm::set_thread_count(o.threads);
    if (*run) return cmd_run(o);
    if (*reduced) return cmd_reduced(o);
    if (*qs) return cmd_quasistatic(o);
    if (*moll) return cmd_mollified(o);
    if (*validate) return cmd_validate();
  } catch (const mxm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const mxm::NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return 3;
  } catch (const mxm::ConvergenceError& e) {
    std::cerr << "numerical abort: " << e.what() << " (iterations " << e.iterations()
              << ", residual " << e.residual() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
