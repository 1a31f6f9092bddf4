// Particle/grid consistency tooling: mollified deposition, sampling-rate
// behavior, the stationary-in-v translation case, and the orchestrated run.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kinflock/compare.hpp"

using namespace kinflock;

TEST_CASE("particle deposition matches the mollifier shape and conserves mass") {
  ParticleEnsemble ens(2, 1);
  ens.x = {0.3, 0.3};
  ens.v = {0.7, 0.7};
  const int nx = 128;
  const double x_min = -4.0, dx = 8.0 / nx, h = 0.1;
  SmoothedMoments s = smooth_particle_moments(ens, nx, x_min, dx, h, 1.0);
  double mass = 0.0, cur = 0.0;
  for (int i = 0; i < nx; ++i) {
    mass += s.rho[i];
    cur += s.j[i];
    if (std::abs((x_min + (i + 0.5) * dx) - 0.3) >= h) CHECK(s.rho[i] == 0.0);
    CHECK(s.j[i] == Catch::Approx(0.7 * s.rho[i]).margin(1e-15));  // monokinetic stamp
  }
  CHECK(mass * dx == Catch::Approx(1.0).epsilon(1e-13));  // lattice-normalized deposition
  CHECK(cur * dx == Catch::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("grid smoothing conserves interior mass and current") {
  PhaseGrid g = maxwellian_bump_grid(128, 32, -4, 4, -2, 2, 0.9, 0.4, 0.5, 0.3, 0.3);
  MomentFields m = compute_moments(g);
  SmoothedMoments s = smooth_grid_moments(m, g.Nx, g.x_min, g.dx, 0.1);
  double m0 = 0.0, m1 = 0.0, j0 = 0.0, j1 = 0.0;
  for (int i = 0; i < g.Nx; ++i) {
    m0 += m.rho[i];
    m1 += s.rho[i];
    j0 += m.j[i];
    j1 += s.j[i];
  }
  CHECK(m1 == Catch::Approx(m0).epsilon(1e-12));
  CHECK(j1 == Catch::Approx(j0).epsilon(1e-12));
}

TEST_CASE("matched representations differ by pure sampling error ~ N^{-1/2}") {
  PhaseGrid g = maxwellian_bump_grid(128, 128, -4, 4, -4, 4, 1.0, 0.5, 0.7, 0.3, 0.5);
  double prev = 1e9;
  std::vector<double> dists;
  for (int N : {1000, 10000, 100000}) {
    ParticleEnsemble ens = sample_from_grid(g, N, 2024);
    CompareReport rep = compare_moments(ens, g, 0.1);
    CHECK(rep.dist_rho < prev);
    prev = rep.dist_rho;
    dists.push_back(rep.dist_rho);
  }
  // two decades of N: expect about a 10x drop; accept a wide band
  CHECK(dists[0] / dists[2] > 4.0);
  CHECK(dists[0] / dists[2] < 40.0);
  CHECK(dists[2] < 0.02);
}

TEST_CASE("monokinetic flocked state: both sides translate, distances stay put") {
  const int nx = 128, nv = 64;
  PhaseGrid g(nx, nv, -4, 4, -4, 4);
  const int jstar = 36;  // v center = 0.5625
  const double vstar = g.vc(jstar);
  for (int i = 0; i < nx; ++i) {
    const double x = g.xc(i);
    g.at(i, jstar) = std::exp(-0.5 * x * x / 0.36) / g.dv;
  }
  normalize_mass(g, 1.0);
  ParticleEnsemble ens = sample_from_grid(g, 20000, 5);
  for (double& v : ens.v) v = vstar;  // collapse the in-cell jitter

  ModelConfig cfg;
  cfg.kind = ModelKind::cucker_smale;
  cfg.sigma = 0.0;
  InteractionKernel kern{KernelKind::constant, 1.0};
  ConfinementPotential pot{PotentialKind::none, 0.0};
  RegularizationParams reg;
  const CompareReport rep0 = compare_moments(ens, g, 0.1);

  KineticRunParams krp;
  krp.t_end = 0.5;
  krp.output_every = 0.25;
  run_kinetic(g, cfg, kern, pot, reg, krp);
  ParticleRunParams prp;
  prp.t_end = 0.5;
  prp.output_every = 0.25;
  prp.dt = 1e-3;
  run_particles(ens, cfg, kern, pot, prp);

  const CompareReport rep1 = compare_moments(ens, g, 0.1);
  CHECK(rep0.dist_rho < 0.04);  // sampling noise at N = 2e4
  CHECK(rep1.dist_rho < rep0.dist_rho + 0.02);  // scheme dispersion only
  CHECK(rep1.dist_j < rep1.dist_rho * std::abs(vstar) + 0.02);
}

TEST_CASE("run_compare: deterministic, small distances, dimension guard") {
  RunConfig rc;
  rc.model_kind = "cucker-smale";
  rc.kernel_kind = "constant";
  rc.model_sigma = 0.05;
  rc.grid_Nx = 64;
  rc.grid_Nv = 64;
  rc.compare_N = 20000;
  rc.run_t_end = 0.2;
  rc.run_output_every = 0.1;
  rc.run_dt = 0.0;  // auto for the grid; particles use their default step
  validate_config(rc);
  CompareResult a = run_compare(rc);
  CHECK(a.initial.dist_rho < 0.05);
  CHECK(a.final.dist_rho < 0.10);
  CHECK(a.final.dist_j < 0.10);
  CHECK(a.kinetic_records.size() == a.particle_records.size());
  CompareResult b = run_compare(rc);
  CHECK(a.final.dist_rho == b.final.dist_rho);  // bit-identical reruns
  CHECK(a.final.dist_j == b.final.dist_j);
  rc.particles_dim = 2;
  CHECK_THROWS_AS(run_compare(rc), std::invalid_argument);
}
