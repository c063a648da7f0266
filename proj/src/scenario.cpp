#include "mxm/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "mxm/errors.hpp"

namespace mxm {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const YAML::Node& node, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!node || node.IsNull()) return;  // absent or empty section
  if (!node.IsMap()) throw ConfigError(path.empty() ? "<document>" : path, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(join(path, key), "unknown key");
    }
  }
}

template <typename T>
T get(const YAML::Node& node, const std::string& path, const char* key, T fallback) {
  if (!node || !node[key]) return fallback;
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(join(path, key), "cannot parse value");
  }
}

template <typename T>
std::vector<T> get_list(const YAML::Node& node, const std::string& path, const char* key,
                        std::vector<T> fallback) {
  if (!node || !node[key]) return fallback;
  const YAML::Node seq = node[key];
  if (!seq.IsSequence()) throw ConfigError(join(path, key), "expected a list");
  std::vector<T> out;
  try {
    for (const auto& e : seq) out.push_back(e.as<T>());
  } catch (const YAML::Exception&) {
    throw ConfigError(join(path, key), "cannot parse list entry");
  }
  return out;
}

Vec3 get_vec3(const YAML::Node& node, const std::string& path, const char* key, Vec3 fallback) {
  if (!node || !node[key]) return fallback;
  const auto xs = get_list<double>(node, path, key, {});
  if (xs.size() != 3) throw ConfigError(join(path, key), "expected three numbers");
  return {xs[0], xs[1], xs[2]};
}

std::array<int, 3> get_int3(const YAML::Node& node, const std::string& path, const char* key) {
  const auto xs = get_list<int>(node, path, key, {});
  if (xs.size() != 3) throw ConfigError(join(path, key), "expected three integers");
  return {xs[0], xs[1], xs[2]};
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

void parse_model(const YAML::Node& node, ModelSpec& m) {
  const std::string path = "model";
  check_keys(node, path, {"kind", "landau_lifschitz", "bloch", "linear_growth"});
  m.kind = get<std::string>(node, path, "kind", m.kind);
  require(m.kind == "landau_lifschitz" || m.kind == "bloch" || m.kind == "linear_growth",
          "model.kind", "expected landau_lifschitz, bloch or linear_growth");

  const std::string lp = "model.landau_lifschitz";
  const YAML::Node ll = node ? node["landau_lifschitz"] : YAML::Node();
  check_keys(ll, lp, {"gamma", "alpha", "anisotropy", "easy_axis", "h_ext", "coupling"});
  m.ll.gamma = get(ll, lp, "gamma", m.ll.gamma);
  m.ll.alpha = get(ll, lp, "alpha", m.ll.alpha);
  m.ll.anisotropy = get(ll, lp, "anisotropy", m.ll.anisotropy);
  m.ll.easy_axis = get_vec3(ll, lp, "easy_axis", m.ll.easy_axis);
  m.ll.h_ext = get_vec3(ll, lp, "h_ext", m.ll.h_ext);
  m.ll.coupling = get(ll, lp, "coupling", m.ll.coupling);
  require(m.ll.gamma != 0.0, lp + ".gamma", "must be nonzero");
  require(m.ll.alpha >= 0.0, lp + ".alpha", "must be >= 0");
  require(m.ll.anisotropy >= 0.0, lp + ".anisotropy", "must be >= 0");
  require(std::abs(norm(m.ll.easy_axis) - 1.0) <= 1e-12, lp + ".easy_axis", "must be a unit vector");

  const std::string bp = "model.bloch";
  const YAML::Node b = node ? node["bloch"] : YAML::Node();
  check_keys(b, bp, {"levels", "energies", "dipoles", "transverse_rate", "pauli_rates", "density"});
  m.levels = get(b, bp, "levels", m.levels);
  require(m.levels >= 2, bp + ".levels", "must be >= 2");
  m.energies = get_list<double>(b, bp, "energies", m.energies);
  require(static_cast<int>(m.energies.size()) == m.levels, bp + ".energies",
          "expected one energy per level");
  m.transverse_rate = get(b, bp, "transverse_rate", m.transverse_rate);
  require(m.transverse_rate >= 0.0, bp + ".transverse_rate", "must be >= 0");
  m.density = get(b, bp, "density", m.density);
  if (b && b["dipoles"]) {
    const YAML::Node d = b["dipoles"];
    require(d.IsSequence(), bp + ".dipoles", "expected a list");
    m.dipoles.clear();
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string ip = bp + ".dipoles[" + std::to_string(i) + "]";
      check_keys(d[i], ip, {"levels", "vector"});
      const auto ab = get_list<int>(d[i], ip, "levels", {});
      require(ab.size() == 2 && ab[0] != ab[1] && ab[0] >= 0 && ab[1] >= 0 && ab[0] < m.levels &&
                  ab[1] < m.levels,
              ip + ".levels", "expected two distinct level indices");
      m.dipoles.push_back({ab[0], ab[1], get_vec3(d[i], ip, "vector", {})});
    }
  }
  if (b && b["pauli_rates"]) {
    const YAML::Node w = b["pauli_rates"];
    const std::string wp = bp + ".pauli_rates";
    require(w.IsSequence() && static_cast<int>(w.size()) == m.levels, wp, "expected N rows");
    m.pauli_rates.clear();
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<double> row;
      try {
        for (const auto& e : w[i]) row.push_back(e.as<double>());
      } catch (const YAML::Exception&) {
        throw ConfigError(wp, "cannot parse entry");
      }
      require(static_cast<int>(row.size()) == m.levels, wp, "expected N columns");
      for (double x : row) require(x >= 0.0, wp, "rates must be >= 0");
      m.pauli_rates.push_back(row);
    }
  }

  const std::string gp = "model.linear_growth";
  const YAML::Node g = node ? node["linear_growth"] : YAML::Node();
  check_keys(g, gp, {"rate", "gamma", "coupling"});
  m.growth_rate = get(g, gp, "rate", m.growth_rate);
  m.growth_gamma = get(g, gp, "gamma", m.growth_gamma);
  m.growth_coupling = get(g, gp, "coupling", m.growth_coupling);
  require(m.growth_rate >= 0.0, gp + ".rate", "must be >= 0");
}

ProjectorMode parse_projector_mode(const std::string& s) {
  if (s == "automatic") return ProjectorMode::automatic;
  if (s == "fft_constant") return ProjectorMode::fft_constant;
  if (s == "iterative_variable") return ProjectorMode::iterative_variable;
  throw ConfigError("projector.mode", "expected automatic, fft_constant or iterative_variable");
}

Scheme parse_scheme(const std::string& s, const std::string& key) {
  if (s == "rk4") return Scheme::rk4;
  if (s == "lawson_exp") return Scheme::lawson_exp;
  throw ConfigError(key, "expected rk4 or lawson_exp");
}

}  // namespace

Scenario parse_scenario(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<document>", std::string("YAML syntax error: ") + e.what());
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  check_keys(root, "",
             {"grid", "coefficients", "domain", "model", "initial", "integrator", "projector",
              "monitor", "reduced", "quasistatic", "mollified", "output"});
  Scenario s;

  const YAML::Node grid = root["grid"];
  check_keys(grid, "grid", {"n", "box_len"});
  s.n = get(grid, "grid", "n", s.n);
  s.box_len = get(grid, "grid", "box_len", s.box_len);
  require(s.n >= 8 && (s.n & (s.n - 1)) == 0, "grid.n", "must be a power of two >= 8");
  require(s.box_len > 0.0, "grid.box_len", "must be positive");

  const YAML::Node co = root["coefficients"];
  auto& c = s.coefficients;
  check_keys(co, "coefficients",
             {"kind", "kappa1", "kappa2", "center", "radius", "width", "amplitude1", "amplitude2"});
  c.kind = get<std::string>(co, "coefficients", "kind", c.kind);
  require(c.kind == "constant" || c.kind == "bump", "coefficients.kind",
          "expected constant or bump");
  c.kappa1 = get(co, "coefficients", "kappa1", c.kappa1);
  c.kappa2 = get(co, "coefficients", "kappa2", c.kappa2);
  c.center = get_vec3(co, "coefficients", "center", {0.5 * s.box_len, 0.5 * s.box_len, 0.5 * s.box_len});
  c.radius = get(co, "coefficients", "radius", c.radius);
  c.width = get(co, "coefficients", "width", c.width);
  c.amplitude1 = get(co, "coefficients", "amplitude1", c.amplitude1);
  c.amplitude2 = get(co, "coefficients", "amplitude2", c.amplitude2);
  require(c.kappa1 > 0.0, "coefficients.kappa1", "must be positive");
  require(c.kappa2 > 0.0, "coefficients.kappa2", "must be positive");
  require(c.kappa1 + std::min(c.amplitude1, 0.0) > 0.0, "coefficients.amplitude1",
          "kappa1 would not stay positive");
  require(c.kappa2 + std::min(c.amplitude2, 0.0) > 0.0, "coefficients.amplitude2",
          "kappa2 would not stay positive");
  require(c.radius >= 0.0, "coefficients.radius", "must be >= 0");
  require(c.width > 0.0, "coefficients.width", "must be positive");

  const YAML::Node dom = root["domain"];
  auto& d = s.domain;
  check_keys(dom, "domain", {"kind", "lo", "hi", "center", "radius"});
  d.kind = get<std::string>(dom, "domain", "kind", d.kind);
  require(d.kind == "box" || d.kind == "ball", "domain.kind", "expected box or ball");
  if (d.kind == "box") {
    const int q = s.n / 4;
    d.lo = dom && dom["lo"] ? get_int3(dom, "domain", "lo") : std::array<int, 3>{q + q / 2, q + q / 2, q + q / 2};
    d.hi = dom && dom["hi"] ? get_int3(dom, "domain", "hi") : std::array<int, 3>{s.n - q - q / 2, s.n - q - q / 2, s.n - q - q / 2};
  } else {
    d.center = get_vec3(dom, "domain", "center", {0.5 * s.n, 0.5 * s.n, 0.5 * s.n});
    d.radius = get(dom, "domain", "radius", s.n / 8.0);
  }

  parse_model(root["model"], s.model);

  const YAML::Node in = root["initial"];
  auto& i = s.initial;
  check_keys(in, "initial",
             {"matter", "direction", "modulus", "tilt", "populations", "coherence", "field",
              "seed", "band", "amplitude"});
  i.matter = get<std::string>(in, "initial", "matter", i.matter);
  require(i.matter == "zero" || i.matter == "uniform" || i.matter == "texture" ||
              i.matter == "populations",
          "initial.matter", "expected zero, uniform, texture or populations");
  i.direction = get_vec3(in, "initial", "direction", i.direction);
  i.modulus = get(in, "initial", "modulus", i.modulus);
  i.tilt = get(in, "initial", "tilt", i.tilt);
  i.populations = get_list<double>(in, "initial", "populations", i.populations);
  i.coherence = get(in, "initial", "coherence", i.coherence);
  i.field = get<std::string>(in, "initial", "field", i.field);
  require(i.field == "zero" || i.field == "random", "initial.field", "expected zero or random");
  i.seed = get<std::uint64_t>(in, "initial", "seed", i.seed);
  i.band = get(in, "initial", "band", i.band);
  i.amplitude = get(in, "initial", "amplitude", i.amplitude);
  require(norm(i.direction) > 0.0, "initial.direction", "must be nonzero");
  require(i.band >= 1, "initial.band", "must be >= 1");
  require(std::abs(i.coherence) <= 1.0, "initial.coherence", "must lie in [-1, 1]");
  if (s.model.kind == "bloch" && i.matter == "populations") {
    require(static_cast<int>(i.populations.size()) == s.model.levels, "initial.populations",
            "expected one population per level");
    for (double p : i.populations) require(p >= 0.0, "initial.populations", "must be >= 0");
  }
  if (s.model.kind != "bloch") {
    require(i.matter != "populations", "initial.matter", "populations apply to bloch only");
  } else {
    require(i.matter == "zero" || i.matter == "populations", "initial.matter",
            "bloch accepts zero or populations");
  }

  const YAML::Node it = root["integrator"];
  auto& ic = s.integrator;
  check_keys(it, "integrator", {"scheme", "dt", "t_end", "renormalize_m", "cfl_factor"});
  ic.scheme = parse_scheme(get<std::string>(it, "integrator", "scheme", "rk4"), "integrator.scheme");
  ic.dt = get(it, "integrator", "dt", 2e-3);
  ic.t_end = get(it, "integrator", "t_end", 2.0);
  ic.renormalize_m = get(it, "integrator", "renormalize_m", false);
  ic.cfl_factor = get(it, "integrator", "cfl_factor", ic.cfl_factor);
  require(ic.dt > 0.0, "integrator.dt", "must be positive");
  require(ic.t_end >= 0.0, "integrator.t_end", "must be >= 0");
  require(ic.cfl_factor > 0.0, "integrator.cfl_factor", "must be positive");
  require(!ic.renormalize_m || s.model.kind == "landau_lifschitz", "integrator.renormalize_m",
          "applies to landau_lifschitz only");
  require(ic.scheme != Scheme::lawson_exp || c.kind == "constant" ||
              (c.amplitude1 == 0.0 && c.amplitude2 == 0.0),
          "integrator.scheme", "lawson_exp needs constant coefficients");

  const YAML::Node pr = root["projector"];
  check_keys(pr, "projector", {"mode", "cg_tolerance", "cg_max_iters"});
  s.projector.mode = parse_projector_mode(get<std::string>(pr, "projector", "mode", "automatic"));
  s.projector.cg_tolerance = get(pr, "projector", "cg_tolerance", s.projector.cg_tolerance);
  s.projector.cg_max_iters = get(pr, "projector", "cg_max_iters", s.projector.cg_max_iters);
  require(s.projector.cg_tolerance > 0.0, "projector.cg_tolerance", "must be positive");
  require(s.projector.cg_max_iters >= 0, "projector.cg_max_iters", "must be >= 0");

  const YAML::Node mo = root["monitor"];
  check_keys(mo, "monitor", {"stride", "constraint"});
  s.monitor.stride = get<std::size_t>(mo, "monitor", "stride", s.monitor.stride);
  s.monitor.constraint = get(mo, "monitor", "constraint", s.monitor.constraint);
  require(s.monitor.stride >= 1, "monitor.stride", "must be >= 1");

  const YAML::Node re = root["reduced"];
  check_keys(re, "reduced", {"dt", "t_end", "stride", "include_null_modes"});
  s.reduced.dt = get(re, "reduced", "dt", ic.dt);
  s.reduced.t_end = get(re, "reduced", "t_end", ic.t_end);
  s.reduced.stride = get<std::size_t>(re, "reduced", "stride", s.monitor.stride);
  s.reduced.include_null_modes = get(re, "reduced", "include_null_modes", false);
  require(s.reduced.dt > 0.0, "reduced.dt", "must be positive");
  require(s.reduced.stride >= 1, "reduced.stride", "must be >= 1");

  const YAML::Node qs = root["quasistatic"];
  auto& q = s.quasistatic;
  check_keys(qs, "quasistatic", {"etas", "center", "radius", "t_obs", "dt", "scheme"});
  q.etas = get_list<double>(qs, "quasistatic", "etas", q.etas);
  for (std::size_t k = 0; k < q.etas.size(); ++k) {
    require(q.etas[k] > 0.0 && q.etas[k] <= 1.0, "quasistatic.etas", "each eta must lie in (0, 1]");
    require(k == 0 || q.etas[k] < q.etas[k - 1], "quasistatic.etas", "must be decreasing");
  }
  require(!q.etas.empty(), "quasistatic.etas", "must not be empty");
  q.center = get_vec3(qs, "quasistatic", "center", {0.5 * s.n, 0.5 * s.n, 0.5 * s.n});
  q.radius = get(qs, "quasistatic", "radius", s.n / 4.0);
  q.t_obs = get(qs, "quasistatic", "t_obs", ic.t_end);
  q.dt = get(qs, "quasistatic", "dt", ic.dt);
  q.scheme = parse_scheme(get<std::string>(qs, "quasistatic", "scheme", "lawson_exp"),
                          "quasistatic.scheme");
  q.projector = s.projector;
  require(q.radius > 0.0, "quasistatic.radius", "must be positive");
  require(q.t_obs > 0.0, "quasistatic.t_obs", "must be positive");
  require(q.dt > 0.0, "quasistatic.dt", "must be positive");

  const YAML::Node ml = root["mollified"];
  auto& m = s.mollified;
  check_keys(ml, "mollified", {"n_list", "window", "dt", "tolerance", "max_iterations"});
  m.n_list = get_list<int>(ml, "mollified", "n_list", m.n_list);
  for (int k : m.n_list) require(k >= 1, "mollified.n_list", "indices must be >= 1");
  m.window = get(ml, "mollified", "window", m.window);
  m.dt = get(ml, "mollified", "dt", m.dt);
  m.tolerance = get(ml, "mollified", "tolerance", m.tolerance);
  m.max_iterations = get(ml, "mollified", "max_iterations", m.max_iterations);
  require(m.window > 0.0, "mollified.window", "must be positive");
  require(m.dt > 0.0, "mollified.dt", "must be positive");
  require(m.tolerance > 0.0, "mollified.tolerance", "must be positive");
  require(m.max_iterations >= 1, "mollified.max_iterations", "must be >= 1");

  const YAML::Node out = root["output"];
  check_keys(out, "output", {"dir"});
  s.output_dir = get<std::string>(out, "output", "dir", s.output_dir);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

// ---------------------------------------------------------------------------

Coefficients make_coefficients(const Grid3& grid, const CoefficientSpec& spec) {
  if (spec.kind == "constant") return Coefficients::constant(grid, spec.kappa1, spec.kappa2);
  ScalarField k1(grid, spec.kappa1), k2(grid, spec.kappa2);
  const double len = grid.box_len();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Vec3 x = grid.position(idx);
    double r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      double d = std::fmod(std::abs(x[a] - spec.center[a]), len);
      d = std::min(d, len - d);
      r2 += d * d;
    }
    const double w = 1.0 - smooth_step((std::sqrt(r2) - spec.radius) / spec.width);
    k1[idx] += spec.amplitude1 * w;
    k2[idx] += spec.amplitude2 * w;
  }
  return Coefficients(std::move(k1), std::move(k2));
}

namespace {

DomainMask make_mask(const Grid3& grid, const DomainSpec& spec) {
  try {
    if (spec.kind == "box") return DomainMask::box(grid, spec.lo, spec.hi);
    return DomainMask::ball(grid, spec.center, spec.radius);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("domain", e.what());
  }
}

std::unique_ptr<MatterModel> make_model(const ModelSpec& spec) {
  try {
    if (spec.kind == "landau_lifschitz") return std::make_unique<LandauLifschitzModel>(spec.ll);
    if (spec.kind == "linear_growth") {
      return std::make_unique<LinearGrowthModel>(spec.growth_rate, spec.growth_gamma,
                                                 spec.growth_coupling);
    }
    const auto n = static_cast<Eigen::Index>(spec.levels);
    BlochParams p;
    p.levels = spec.levels;
    p.hamiltonian = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) p.hamiltonian(a, a) = spec.energies[static_cast<std::size_t>(a)];
    for (auto& g : p.dipole) g = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& d : spec.dipoles) {
      for (int c = 0; c < 3; ++c) {
        p.dipole[c](d.a, d.b) += d.dipole[c];
        p.dipole[c](d.b, d.a) += d.dipole[c];
      }
    }
    p.transverse_rate = spec.transverse_rate;
    if (!spec.pauli_rates.empty()) {
      p.pauli_rates.resize(n, n);
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          p.pauli_rates(a, b) = spec.pauli_rates[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }
      }
    }
    p.density = spec.density;
    return std::make_unique<BlochModel>(std::move(p));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model", e.what());
  }
}

MatterState make_matter(const Scenario& s, const Grid3& grid, const DomainMask& mask,
                        const MatterModel& model) {
  const auto& in = s.initial;
  MatterState v(model.dim(), mask.voxel_count());
  if (in.matter == "zero") return v;
  const auto voxels = mask.voxels();
  if (in.matter == "populations") {
    const int n = s.model.levels;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) rho(a, a) = in.populations[static_cast<std::size_t>(a)];
    const double c = in.coherence * std::sqrt(in.populations[0] * in.populations[1]);
    rho(0, 1) = c;
    rho(1, 0) = c;
    const auto packed = pack_rho(rho);
    for (std::size_t p = 0; p < voxels.size(); ++p) v.put(p, packed);
    return v;
  }
  const Vec3 dir = in.direction;
  const double len = norm(dir);
  for (std::size_t p = 0; p < voxels.size(); ++p) {
    Vec3 m;
    if (in.matter == "uniform") {
      for (int a = 0; a < 3; ++a) m[a] = in.modulus * dir[a] / len;
    } else {
      const Vec3 x = grid.position(voxels[p]);
      const double k = 2.0 * std::numbers::pi / grid.box_len();
      const double theta = in.tilt + 0.3 * std::sin(2.0 * k * x[0]);
      const double phi = 4.0 * k * x[1];
      m = {in.modulus * std::sin(theta) * std::cos(phi), in.modulus * std::sin(theta) * std::sin(phi),
           in.modulus * std::cos(theta)};
    }
    v.put(p, m);
  }
  return v;
}

EMState make_field(const Scenario& s, const FourierWorkspace& ws) {
  EMState u(ws.grid());
  if (s.initial.field == "zero") return u;
  u.u1 = random_band_limited_vector(ws, 2 * s.initial.seed, s.initial.band);
  u.u2 = random_band_limited_vector(ws, 2 * s.initial.seed + 1, s.initial.band);
  for (int c = 0; c < 6; ++c) {
    for (double& x : u.component(c).values()) x *= s.initial.amplitude;
  }
  return u;
}

}  // namespace

ScenarioInstance::ScenarioInstance(const Scenario& scenario)
    : scenario_(scenario),
      grid_(scenario.n, scenario.box_len),
      ws_(std::make_unique<FourierWorkspace>(grid_)),
      kappa_(make_coefficients(grid_, scenario.coefficients)),
      mask_(make_mask(grid_, scenario.domain)),
      model_(make_model(scenario.model)),
      system_(std::make_unique<CoupledSystem>(*model_, kappa_, mask_, *ws_)),
      v_init_(make_matter(scenario, grid_, mask_, *model_)),
      u_free_(make_field(scenario, *ws_)) {}

SimState ScenarioInstance::initial_state() const {
  return make_initial(u_free_, v_init_, *system_, ProjectorConfig{scenario_.projector.mode, 1e-13, scenario_.projector.cg_max_iters});
}

}  // namespace mxm
