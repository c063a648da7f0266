#pragma once

// Scenario files (YAML). One file fully determines a run; see README for the
// schema. Parse errors throw ConfigError naming the offending key path, e.g.
// "model.landau_lifschitz.alpha".

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mxm/evolution.hpp"
#include "mxm/quasistatic.hpp"

namespace mxm {

struct CoefficientSpec {
  std::string kind = "constant";  // constant | bump
  double kappa1 = 1.0;            // background values
  double kappa2 = 1.0;
  Vec3 center{0.0, 0.0, 0.0};     // bump, physical units
  double radius = 0.5;
  double width = 0.25;            // smooth transition length
  double amplitude1 = 0.0;        // kappa_i = background + amplitude_i inside
  double amplitude2 = 0.0;
};

struct DomainSpec {
  std::string kind = "box";  // box | ball
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
  Vec3 center{0.0, 0.0, 0.0};  // ball, grid units
  double radius = 0.0;
};

struct BlochCoupling {
  int a = 0;
  int b = 1;
  Vec3 dipole{0.0, 0.0, 0.0};  // Gamma_ab = Gamma_ba (real)
};

struct ModelSpec {
  std::string kind = "landau_lifschitz";  // landau_lifschitz | bloch | linear_growth
  LandauLifschitzParams ll{};
  int levels = 2;
  std::vector<double> energies{0.0, 1.0};  // diagonal of Lambda
  std::vector<BlochCoupling> dipoles;
  double transverse_rate = 0.0;
  std::vector<std::vector<double>> pauli_rates;
  double density = 1.0;
  double growth_rate = 0.1;
  double growth_gamma = 1.0;
  double growth_coupling = 1.0;
};

struct InitialSpec {
  std::string matter = "uniform";  // zero | uniform | texture | populations
  Vec3 direction{0.0, 0.0, 1.0};   // uniform
  double modulus = 1.0;            // uniform, texture
  double tilt = 0.8;               // texture: polar angle offset
  std::vector<double> populations{1.0, 0.0};
  double coherence = 0.0;          // rho_01 = coherence * sqrt(p0 p1)
  std::string field = "zero";      // zero | random
  std::uint64_t seed = 1;
  int band = 4;
  double amplitude = 0.1;
};

struct MonitorSpec {
  std::size_t stride = 10;
  bool constraint = true;
};

struct ReducedSpec {
  double dt = 2e-3;
  double t_end = 1.0;
  std::size_t stride = 10;
  bool include_null_modes = false;
};

struct MollifiedSpec {
  std::vector<int> n_list{4, 8, 16, 32};
  double window = 0.2;
  double dt = 2e-3;
  double tolerance = 1e-12;
  int max_iterations = 60;
};

struct Scenario {
  int n = 32;
  double box_len = 4.0;
  CoefficientSpec coefficients;
  DomainSpec domain;
  ModelSpec model;
  InitialSpec initial;
  IntegratorConfig integrator;
  ProjectorConfig projector;
  MonitorSpec monitor;
  ReducedSpec reduced;
  EtaStudyConfig quasistatic;
  MollifiedSpec mollified;
  std::string output_dir = ".";
};

Scenario parse_scenario(const std::string& yaml_text);
Scenario load_scenario(const std::filesystem::path& path);

/// The objects a scenario describes. Not copyable: the system refers to the
/// other members.
class ScenarioInstance {
 public:
  explicit ScenarioInstance(const Scenario& scenario);
  ScenarioInstance(const ScenarioInstance&) = delete;
  ScenarioInstance& operator=(const ScenarioInstance&) = delete;

  const Scenario& scenario() const { return scenario_; }
  const Grid3& grid() const { return grid_; }
  const FourierWorkspace& workspace() const { return *ws_; }
  const Coefficients& kappa() const { return kappa_; }
  const DomainMask& mask() const { return mask_; }
  const MatterModel& model() const { return *model_; }
  const CoupledSystem& system() const { return *system_; }
  const MatterState& v_init() const { return v_init_; }
  const EMState& u_free() const { return u_free_; }
  /// make_initial(u_free, v_init).
  SimState initial_state() const;

 private:
  Scenario scenario_;
  Grid3 grid_;
  std::unique_ptr<FourierWorkspace> ws_;
  Coefficients kappa_;
  DomainMask mask_;
  std::unique_ptr<MatterModel> model_;
  std::unique_ptr<CoupledSystem> system_;
  MatterState v_init_;
  EMState u_free_;
};

/// kappa profile: background + amplitude * (1 - S((r - radius) / width)),
/// S the C-infinity step, r the periodic distance to the centre.
Coefficients make_coefficients(const Grid3& grid, const CoefficientSpec& spec);

}  // namespace mxm
