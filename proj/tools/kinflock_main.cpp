// kinflock -- command-line front end.
//
//   kinflock run-kinetic   [--config F] [--set k=v ...] [--out DIR] [--seed N]
//   kinflock run-particles [--config F] [--set k=v ...] [--out DIR] [--seed N]
//   kinflock compare       [--config F] [--set k=v ...] [--out DIR] [--seed N]
//   kinflock check
//
// Option precedence: built-in defaults < config file < KINFLOCK_* environment
// < --set pairs < dedicated flags.  Outputs are bit-identical across reruns
// with the same effective config.  Exit codes: 0 ok, 1 run or property
// failure, 2 usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kinflock/compare.hpp"
#include "kinflock/config.hpp"
#include "kinflock/driver.hpp"
#include "kinflock/io.hpp"
#include "kinflock/properties.hpp"

namespace fs = std::filesystem;
using namespace kinflock;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir = ".";
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "configuration file (key = value lines)");
  cmd->add_option("--set", o.sets, "override one key, e.g. --set model.sigma=0.2")
      ->type_name("KEY=VALUE");
  cmd->add_option("--out", o.out_dir, "output directory (created if missing)");
  cmd->add_option("--seed", o.seed, "override run.seed");
}

RunConfig assemble(const CommonOpts& o) {
  RunConfig rc;
  if (!o.config_path.empty()) load_config_file(rc, o.config_path);
  apply_env_overrides(rc);
  for (const std::string& kv : o.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set needs KEY=VALUE, got '" + kv + "'");
    config_set(rc, detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)));
  }
  if (o.seed >= 0) rc.run_seed = (std::uint64_t)o.seed;
  validate_config(rc);
  return rc;
}

void write_effective(const fs::path& dir, const RunConfig& rc) {
  const std::string text = effective_config_text(rc);
  const fs::path p = dir / "config_effective.cfg";
  std::FILE* fp = std::fopen(p.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot write " + p.string());
  std::fwrite(text.data(), 1, text.size(), fp);
  std::fclose(fp);
}

int cmd_run_kinetic(const CommonOpts& o) {
  const RunConfig rc = assemble(o);
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  write_effective(dir, rc);

  PhaseGrid g = build_initial_grid(rc);
  if (rc.run_snapshots) write_grid_snapshot((dir / "grid_initial.dat").string(), g, 0.0);
  KineticRunParams rp;
  rp.t_end = rc.run_t_end;
  rp.output_every = rc.run_output_every;
  rp.cfl = rc.run_cfl;
  rp.dt = rc.run_dt;
  std::vector<DiagnosticsRecord> recs;
  try {
    recs = run_kinetic(g, make_model(rc), make_kernel(rc), make_potential(rc), make_reg(rc), rp);
  } catch (const SolverAbort& ex) {
    std::fprintf(stderr, "kinflock: %s\n", ex.what());
    return 1;
  }
  write_records_csv((dir / "diagnostics.csv").string(), recs);
  if (rc.run_snapshots) write_grid_snapshot((dir / "grid_final.dat").string(), g, rc.run_t_end);

  const DiagnosticsRecord& last = recs.back();
  std::printf("kinetic run: t=%g  mass=%.12g  energy=%.12g  entropy=%.12g\n", last.t, last.mass,
              last.energy, last.entropy);
  std::printf("flags: %s\n", last.flags.c_str());
  std::printf("wrote %s\n", (dir / "diagnostics.csv").c_str());
  return 0;
}

int cmd_run_particles(const CommonOpts& o) {
  const RunConfig rc = assemble(o);
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  write_effective(dir, rc);

  ParticleEnsemble ens = build_initial_ensemble(rc);
  if (rc.run_snapshots) write_particles((dir / "particles_initial.dat").string(), ens, 0.0);
  ParticleRunParams rp;
  rp.t_end = rc.run_t_end;
  rp.output_every = rc.run_output_every;
  if (rc.run_dt > 0.0) rp.dt = rc.run_dt;
  rp.seed = rc.run_seed;
  std::vector<DiagnosticsRecord> recs =
      run_particles(ens, make_model(rc), make_kernel(rc), make_potential(rc), rp);
  write_records_csv((dir / "diagnostics.csv").string(), recs);
  if (rc.run_snapshots)
    write_particles((dir / "particles_final.dat").string(), ens, rc.run_t_end);

  const DiagnosticsRecord& last = recs.back();
  std::printf("particle run: t=%g  N=%d  energy=%.12g\n", last.t, rc.particles_N, last.energy);
  std::printf("wrote %s\n", (dir / "diagnostics.csv").c_str());
  return 0;
}

int cmd_compare(const CommonOpts& o) {
  const RunConfig rc = assemble(o);
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  write_effective(dir, rc);

  CompareResult res;
  try {
    res = run_compare(rc);
  } catch (const SolverAbort& ex) {
    std::fprintf(stderr, "kinflock: %s\n", ex.what());
    return 1;
  }
  write_records_csv((dir / "diagnostics_kinetic.csv").string(), res.kinetic_records);
  write_records_csv((dir / "diagnostics_particles.csv").string(), res.particle_records);

  std::printf("compare (N=%d vs %dx%d grid, t=%g):\n", rc.compare_N, rc.grid_Nx, rc.grid_Nv,
              rc.run_t_end);
  std::printf("  t=0:    |drho|/|rho| = %.6g   |dj|/|rho| = %.6g\n", res.initial.dist_rho,
              res.initial.dist_j);
  std::printf("  t=end:  |drho|/|rho| = %.6g   |dj|/|rho| = %.6g\n", res.final.dist_rho,
              res.final.dist_j);
  return 0;
}

int cmd_check() {
  const std::vector<PropertyResult> results = run_property_suite();
  const int failures = report_properties(results);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinetic flocking models: phase-space solver, particle system, diagnostics"};
  app.require_subcommand(1);

  CommonOpts ok, op, oc;
  CLI::App* run_k = app.add_subcommand("run-kinetic", "deterministic phase-space run");
  add_common(run_k, ok);
  CLI::App* run_p = app.add_subcommand("run-particles", "particle-system run");
  add_common(run_p, op);
  CLI::App* cmp = app.add_subcommand("compare", "particle vs phase-space moment distances");
  add_common(cmp, oc);
  app.add_subcommand("check", "run the named property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_k->parsed()) return cmd_run_kinetic(ok);
    if (run_p->parsed()) return cmd_run_particles(op);
    if (cmp->parsed()) return cmd_compare(oc);
    return cmd_check();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kinflock: %s\n", e.what());
    return 2;
  }
}
