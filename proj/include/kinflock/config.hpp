// config.hpp -- run configuration: flat dotted-key text files, environment
// and command-line overrides, validation, and builders for the simulation
// objects.
//
// Precedence (later wins): built-in defaults < config file < environment
// (KINFLOCK_<KEY> with dots replaced by underscores, uppercase) < --set
// overrides < dedicated flags.  Every error names the offending key.

#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "init.hpp"
#include "kernels.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"

namespace kinflock {

enum class RunMode { kinetic, particles, check, compare };

struct RunConfig {
  std::string mode = "kinetic";

  std::string kernel_kind = "algebraic";
  double kernel_k0 = 1.0, kernel_gamma = 1.0, kernel_r = 1.0, kernel_R = 2.0;

  std::string potential_kind = "quadratic";
  double potential_omega2 = 1.0;

  std::string model_kind = "combined";
  double model_beta = 1.0, model_sigma = 0.1, model_a = 0.0, model_b = 0.0;
  double model_epsilon = 0.5;

  int particles_N = 1000, particles_dim = 1;

  int grid_Nx = 128, grid_Nv = 128;
  double grid_x_min = -4.0, grid_x_max = 4.0, grid_v_min = -4.0, grid_v_max = 4.0;

  double reg_delta = 0.0;
  double reg_lambda = std::numeric_limits<double>::infinity();
  double reg_eps_vac = 1e-12;

  std::string init_kind = "maxwellian-bump";
  double init_mass = 1.0;
  double init_x0 = 0.5, init_sx = 0.7, init_v0 = 0.3, init_sv = 0.5;
  double init_theta = 0.1;
  double init_frac1 = 0.5, init_gap = 2.0, init_v1 = 0.5, init_v2 = -0.5;
  double init_spread_x = 0.2, init_spread_v = 0.05;

  double run_t_end = 1.0, run_output_every = 0.05, run_cfl = 0.8;
  double run_dt = 0.0;  // 0 = "auto" (CFL-limited);  > 0 = fixed step
  std::uint64_t run_seed = 12345;
  int run_snapshots = 0;  // 1 = write initial and final state snapshots

  int compare_N = 100000;
  double compare_h = 0.1;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace((unsigned char)s[a])) ++a;
  while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
  return s.substr(a, b - a);
}

[[noreturn]] inline void bad_key(const std::string& key, const std::string& what) {
  throw std::runtime_error("config key '" + key + "': " + what);
}

inline double parse_num(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0') bad_key(key, "expected a number, got '" + v + "'");
  return x;
}

inline long parse_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  const long x = std::strtol(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0') bad_key(key, "expected an integer, got '" + v + "'");
  return x;
}

struct KeyDesc {
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

inline std::string num_str(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline const std::vector<KeyDesc>& key_table() {
  static const std::vector<KeyDesc> table = [] {
    std::vector<KeyDesc> t;
    auto str = [&t](const char* name, std::string RunConfig::* f) {
      t.push_back({name, [f](RunConfig& c, const std::string& v) { c.*f = trim(v); },
                   [f](const RunConfig& c) { return c.*f; }});
    };
    auto num = [&t](const char* name, double RunConfig::* f) {
      t.push_back({name,
                   [f, name](RunConfig& c, const std::string& v) { c.*f = parse_num(name, v); },
                   [f](const RunConfig& c) { return num_str(c.*f); }});
    };
    auto integer = [&t](const char* name, int RunConfig::* f) {
      t.push_back({name,
                   [f, name](RunConfig& c, const std::string& v) {
                     c.*f = (int)parse_int(name, v);
                   },
                   [f](const RunConfig& c) { return std::to_string(c.*f); }});
    };
    str("mode", &RunConfig::mode);
    str("kernel.kind", &RunConfig::kernel_kind);
    num("kernel.k0", &RunConfig::kernel_k0);
    num("kernel.gamma", &RunConfig::kernel_gamma);
    num("kernel.r", &RunConfig::kernel_r);
    num("kernel.R", &RunConfig::kernel_R);
    str("potential.kind", &RunConfig::potential_kind);
    num("potential.omega2", &RunConfig::potential_omega2);
    str("model.kind", &RunConfig::model_kind);
    num("model.beta", &RunConfig::model_beta);
    num("model.sigma", &RunConfig::model_sigma);
    num("model.a", &RunConfig::model_a);
    num("model.b", &RunConfig::model_b);
    num("model.epsilon", &RunConfig::model_epsilon);
    integer("particles.N", &RunConfig::particles_N);
    integer("particles.dim", &RunConfig::particles_dim);
    integer("grid.Nx", &RunConfig::grid_Nx);
    integer("grid.Nv", &RunConfig::grid_Nv);
    num("grid.x_min", &RunConfig::grid_x_min);
    num("grid.x_max", &RunConfig::grid_x_max);
    num("grid.v_min", &RunConfig::grid_v_min);
    num("grid.v_max", &RunConfig::grid_v_max);
    num("reg.delta", &RunConfig::reg_delta);
    num("reg.lambda", &RunConfig::reg_lambda);
    num("reg.eps_vac", &RunConfig::reg_eps_vac);
    str("init.kind", &RunConfig::init_kind);
    num("init.mass", &RunConfig::init_mass);
    num("init.x0", &RunConfig::init_x0);
    num("init.sx", &RunConfig::init_sx);
    num("init.v0", &RunConfig::init_v0);
    num("init.sv", &RunConfig::init_sv);
    num("init.theta", &RunConfig::init_theta);
    num("init.frac1", &RunConfig::init_frac1);
    num("init.gap", &RunConfig::init_gap);
    num("init.v1", &RunConfig::init_v1);
    num("init.v2", &RunConfig::init_v2);
    num("init.spread_x", &RunConfig::init_spread_x);
    num("init.spread_v", &RunConfig::init_spread_v);
    num("run.t_end", &RunConfig::run_t_end);
    num("run.output_every", &RunConfig::run_output_every);
    num("run.cfl", &RunConfig::run_cfl);
    t.push_back({"run.dt",
                 [](RunConfig& c, const std::string& v) {
                   const std::string s = trim(v);
                   if (s == "auto") {
                     c.run_dt = 0.0;
                     return;
                   }
                   const double x = parse_num("run.dt", s);
                   if (!(x > 0.0)) bad_key("run.dt", "must be 'auto' or > 0");
                   c.run_dt = x;
                 },
                 [](const RunConfig& c) {
                   return c.run_dt > 0.0 ? num_str(c.run_dt) : std::string("auto");
                 }});
    t.push_back({"run.seed",
                 [](RunConfig& c, const std::string& v) {
                   const long s = parse_int("run.seed", v);
                   if (s < 0) bad_key("run.seed", "must be >= 0");
                   c.run_seed = (std::uint64_t)s;
                 },
                 [](const RunConfig& c) { return std::to_string(c.run_seed); }});
    integer("run.snapshots", &RunConfig::run_snapshots);
    integer("compare.N", &RunConfig::compare_N);
    num("compare.h", &RunConfig::compare_h);
    return t;
  }();
  return table;
}

inline const KeyDesc* find_key(const std::string& name) {
  for (const KeyDesc& k : key_table())
    if (name == k.name) return &k;
  return nullptr;
}

}  // namespace detail

inline void config_set(RunConfig& cfg, const std::string& key, const std::string& value) {
  const detail::KeyDesc* k = detail::find_key(detail::trim(key));
  if (!k) throw std::runtime_error("unknown config key '" + detail::trim(key) + "'");
  k->set(cfg, value);
}

// `section.key = value` lines; '#' starts a comment; blank lines ignored
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string s = detail::trim(line);
    if (s.empty()) continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + s + "'");
    config_set(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
}

// environment overrides: KINFLOCK_GRID_NX <- grid.Nx etc.
inline void apply_env_overrides(RunConfig& cfg) {
  for (const detail::KeyDesc& k : detail::key_table()) {
    std::string env = "KINFLOCK_";
    for (const char* p = k.name; *p; ++p)
      env += *p == '.' ? '_' : (char)std::toupper((unsigned char)*p);
    if (const char* v = std::getenv(env.c_str())) k.set(cfg, v);
  }
}

// the full validated configuration in reparseable form
inline std::string effective_config_text(const RunConfig& cfg) {
  std::ostringstream out;
  for (const detail::KeyDesc& k : detail::key_table()) out << k.name << " = " << k.get(cfg) << "\n";
  return out.str();
}

// ---- range validation and object builders ---------------------------------

inline void validate_config(const RunConfig& cfg) {
  using detail::bad_key;
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) bad_key(key, what);
  };
  require(cfg.mode == "kinetic" || cfg.mode == "particles" || cfg.mode == "check" ||
              cfg.mode == "compare",
          "mode", "must be kinetic, particles, check or compare");
  require(cfg.kernel_kind == "constant" || cfg.kernel_kind == "algebraic" ||
              cfg.kernel_kind == "compact",
          "kernel.kind", "must be constant, algebraic or compact");
  require(cfg.kernel_k0 >= 0.0, "kernel.k0", "must be >= 0");
  require(cfg.kernel_gamma > 0.0, "kernel.gamma", "must be > 0");
  require(cfg.kernel_R > 0.0, "kernel.R", "must be > 0");
  require(cfg.potential_kind == "none" || cfg.potential_kind == "quadratic", "potential.kind",
          "must be none or quadratic");
  if (cfg.potential_kind == "quadratic")
    require(cfg.potential_omega2 > 0.0, "potential.omega2", "must be > 0");
  require(cfg.model_kind == "cucker-smale" || cfg.model_kind == "motsch-tadmor" ||
              cfg.model_kind == "local-alignment" || cfg.model_kind == "combined",
          "model.kind", "must be cucker-smale, motsch-tadmor, local-alignment or combined");
  require(cfg.model_beta >= 0.0, "model.beta", "must be >= 0");
  require(cfg.model_sigma >= 0.0, "model.sigma", "must be >= 0");
  require(cfg.model_a >= 0.0, "model.a", "must be >= 0");
  require(cfg.model_b >= 0.0, "model.b", "must be >= 0");
  require(cfg.model_epsilon > 0.0, "model.epsilon", "must be > 0");
  require(cfg.particles_N >= 2, "particles.N", "must be >= 2");
  require(cfg.particles_dim >= 1 && cfg.particles_dim <= 3, "particles.dim", "must be 1, 2 or 3");
  require(cfg.grid_Nx >= 8, "grid.Nx", "must be >= 8");
  require(cfg.grid_Nv >= 8, "grid.Nv", "must be >= 8");
  require(cfg.grid_x_min < cfg.grid_x_max, "grid.x_min", "must be < grid.x_max");
  require(cfg.grid_v_min < cfg.grid_v_max, "grid.v_min", "must be < grid.v_max");
  require(cfg.reg_delta >= 0.0, "reg.delta", "must be >= 0");
  require(cfg.reg_lambda > 0.0, "reg.lambda", "must be > 0");
  require(cfg.reg_eps_vac >= 0.0, "reg.eps_vac", "must be >= 0");
  require(cfg.init_kind == "maxwellian-bump" || cfg.init_kind == "steady-maxwellian" ||
              cfg.init_kind == "counter-streams" || cfg.init_kind == "gaussian" ||
              cfg.init_kind == "two-group",
          "init.kind",
          "must be maxwellian-bump, steady-maxwellian, counter-streams, gaussian or two-group");
  require(cfg.init_mass > 0.0, "init.mass", "must be > 0");
  require(cfg.init_sx > 0.0, "init.sx", "must be > 0");
  require(cfg.init_sv > 0.0, "init.sv", "must be > 0");
  require(cfg.init_theta > 0.0, "init.theta", "must be > 0");
  require(cfg.init_frac1 > 0.0 && cfg.init_frac1 < 1.0, "init.frac1", "must be in (0,1)");
  require(cfg.init_spread_x > 0.0, "init.spread_x", "must be > 0");
  require(cfg.init_spread_v > 0.0, "init.spread_v", "must be > 0");
  require(cfg.run_t_end >= 0.0, "run.t_end", "must be >= 0");
  require(cfg.run_output_every > 0.0, "run.output_every", "must be > 0");
  require(cfg.run_cfl > 0.0 && cfg.run_cfl <= 1.0, "run.cfl", "must be in (0,1]");
  require(cfg.run_snapshots == 0 || cfg.run_snapshots == 1, "run.snapshots", "must be 0 or 1");
  require(cfg.compare_N >= 2, "compare.N", "must be >= 2");
  require(cfg.compare_h > 0.0, "compare.h", "must be > 0");
  if (cfg.init_kind == "steady-maxwellian")
    require(cfg.potential_kind == "quadratic", "init.kind",
            "steady-maxwellian needs potential.kind = quadratic");
}

inline RunMode config_mode(const RunConfig& cfg) {
  if (cfg.mode == "kinetic") return RunMode::kinetic;
  if (cfg.mode == "particles") return RunMode::particles;
  if (cfg.mode == "check") return RunMode::check;
  return RunMode::compare;
}

inline InteractionKernel make_kernel(const RunConfig& cfg) {
  InteractionKernel k;
  k.kind = cfg.kernel_kind == "constant"    ? KernelKind::constant
           : cfg.kernel_kind == "algebraic" ? KernelKind::algebraic
                                            : KernelKind::compact;
  k.k0 = cfg.kernel_k0;
  k.gamma = cfg.kernel_gamma;
  k.r = cfg.kernel_r;
  k.R = cfg.kernel_R;
  k.validate();
  return k;
}

inline ConfinementPotential make_potential(const RunConfig& cfg) {
  ConfinementPotential p;
  p.kind = cfg.potential_kind == "none" ? PotentialKind::none : PotentialKind::quadratic;
  p.omega2 = cfg.potential_omega2;
  p.validate();
  return p;
}

inline ModelConfig make_model(const RunConfig& cfg) {
  ModelConfig m;
  m.kind = cfg.model_kind == "cucker-smale"      ? ModelKind::cucker_smale
           : cfg.model_kind == "motsch-tadmor"   ? ModelKind::motsch_tadmor
           : cfg.model_kind == "local-alignment" ? ModelKind::local_alignment
                                                 : ModelKind::combined;
  m.beta = cfg.model_beta;
  m.sigma = cfg.model_sigma;
  m.a = cfg.model_a;
  m.b = cfg.model_b;
  m.epsilon = cfg.model_epsilon;
  m.delta = cfg.reg_delta;
  m.lambda = cfg.reg_lambda;
  m.validate();
  return m;
}

inline RegularizationParams make_reg(const RunConfig& cfg) {
  RegularizationParams r;
  r.delta = cfg.reg_delta;
  r.lambda = cfg.reg_lambda;
  r.eps_vac = cfg.reg_eps_vac;
  r.validate();
  return r;
}

inline PhaseGrid build_initial_grid(const RunConfig& cfg) {
  const int nx = cfg.grid_Nx, nv = cfg.grid_Nv;
  const double x0 = cfg.grid_x_min, x1 = cfg.grid_x_max;
  const double v0 = cfg.grid_v_min, v1 = cfg.grid_v_max;
  if (cfg.init_kind == "maxwellian-bump")
    return maxwellian_bump_grid(nx, nv, x0, x1, v0, v1, cfg.init_mass, cfg.init_x0, cfg.init_sx,
                                cfg.init_v0, cfg.init_sv);
  if (cfg.init_kind == "steady-maxwellian")
    return steady_maxwellian_grid(nx, nv, x0, x1, v0, v1, cfg.init_mass, cfg.init_theta,
                                  make_potential(cfg));
  if (cfg.init_kind == "counter-streams")
    return counter_stream_grid(nx, nv, x0, x1, v0, v1, cfg.init_mass, cfg.init_x0, cfg.init_sx,
                               cfg.init_v0, cfg.init_sv);
  throw std::runtime_error("config key 'init.kind': '" + cfg.init_kind +
                           "' is not a grid initial state");
}

inline ParticleEnsemble build_initial_ensemble(const RunConfig& cfg) {
  const int N = cfg.particles_N, dim = cfg.particles_dim;
  if (cfg.init_kind == "gaussian") {
    double x0[3] = {cfg.init_x0, cfg.init_x0, cfg.init_x0};
    double v0[3] = {cfg.init_v0, cfg.init_v0, cfg.init_v0};
    return gaussian_ensemble(N, dim, x0, cfg.init_sx, v0, cfg.init_sv, cfg.run_seed);
  }
  if (cfg.init_kind == "two-group")
    return two_group_ensemble(N, dim, cfg.init_frac1, cfg.init_gap, cfg.init_v1, cfg.init_v2,
                              cfg.init_spread_x, cfg.init_spread_v, cfg.run_seed);
  if (cfg.init_kind == "maxwellian-bump" && dim == 1) {
    PhaseGrid g = build_initial_grid(cfg);
    return sample_from_grid(g, N, cfg.run_seed);
  }
  throw std::runtime_error("config key 'init.kind': '" + cfg.init_kind +
                           "' is not a particle initial state for dim=" + std::to_string(dim));
}

}  // namespace kinflock
