// compare.hpp -- mean-field consistency between the particle system and the
// phase-space solver.  Both representations are smoothed with the same
// compactly supported mollifier in x before taking L1 distances, so the
// comparison measures dynamics, not representation granularity.
//
// Distances are reported relative to ||smoothed grid rho||_1 (for j as well:
// j inherits the density normalization so a vanishing mean current cannot
// inflate the relative error).

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "driver.hpp"
#include "init.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"

namespace kinflock {

struct SmoothedMoments {
  std::vector<double> rho, j;
};

// Mollified empirical moments on the grid's x-axis; total particle weight =
// mass.  Each stamp is divided by its own lattice sum, so the deposited mass
// is exact for interior particles and no quadrature bias enters when h spans
// only a few cells.
inline SmoothedMoments smooth_particle_moments(const ParticleEnsemble& ens, int nx, double x_min,
                                               double dx, double h, double mass) {
  if (ens.dim != 1) throw std::invalid_argument("compare: particle dim must be 1");
  SmoothedMoments s;
  s.rho.assign(nx, 0.0);
  s.j.assign(nx, 0.0);
  const double w = mass / ens.N;
  std::vector<double> psi_row;
  for (int k = 0; k < ens.N; ++k) {
    const double xk = ens.x[k], vk = ens.v[k];
    // mollifier support is |x - xk| < h
    int i0 = (int)std::floor((xk - h - x_min) / dx - 0.5);
    int i1 = (int)std::ceil((xk + h - x_min) / dx + 0.5);
    if (i0 < 0) i0 = 0;
    if (i1 > nx - 1) i1 = nx - 1;
    psi_row.assign((std::size_t)(i1 - i0 + 1), 0.0);
    double norm = 0.0;
    for (int i = i0; i <= i1; ++i) {
      const double sep = (x_min + (i + 0.5) * dx) - xk;
      const double psi = mollifier(&sep, 1, h);
      psi_row[(std::size_t)(i - i0)] = psi;
      norm += psi;
    }
    if (norm <= 0.0) continue;
    const double scale = w / (norm * dx);
    for (int i = i0; i <= i1; ++i) {
      const double psi = psi_row[(std::size_t)(i - i0)] * scale;
      s.rho[i] += psi;
      s.j[i] += psi * vk;
    }
  }
  return s;
}

// the same mollifier applied to grid moments (lattice-normalized convolution)
inline SmoothedMoments smooth_grid_moments(const MomentFields& m, int nx, double x_min, double dx,
                                           double h) {
  SmoothedMoments s;
  s.rho.assign(nx, 0.0);
  s.j.assign(nx, 0.0);
  const int reach = (int)std::ceil(h / dx) + 1;
  std::vector<double> psi_row((std::size_t)(2 * reach + 1));
  double norm = 0.0;
  for (int d = -reach; d <= reach; ++d) {
    const double sep = d * dx;
    psi_row[(std::size_t)(d + reach)] = mollifier(&sep, 1, h);
    norm += psi_row[(std::size_t)(d + reach)];
  }
  for (int k = 0; k < nx; ++k) {  // scatter form mirrors the particle stamps
    const double r = m.rho[k] / norm, j = m.j[k] / norm;
    for (int d = std::max(-reach, -k); d <= std::min(reach, nx - 1 - k); ++d) {
      const double psi = psi_row[(std::size_t)(d + reach)];
      s.rho[k + d] += psi * r;
      s.j[k + d] += psi * j;
    }
  }
  return s;
}

struct CompareReport {
  double dist_rho = 0.0;  // ||rho_p - rho_g||_1 / ||rho_g||_1, smoothed both sides
  double dist_j = 0.0;    // ||j_p - j_g||_1 / ||rho_g||_1
  double norm_rho = 0.0;  // ||rho_g||_1 reference
};

inline CompareReport compare_moments(const ParticleEnsemble& ens, const PhaseGrid& g, double h) {
  const MomentFields m = compute_moments(g);
  const SmoothedMoments sg = smooth_grid_moments(m, g.Nx, g.x_min, g.dx, h);
  const SmoothedMoments sp = smooth_particle_moments(ens, g.Nx, g.x_min, g.dx, h, g.mass());
  CompareReport rep;
  double dr = 0.0, dj = 0.0, nr = 0.0;
  for (int i = 0; i < g.Nx; ++i) {
    dr += std::abs(sp.rho[i] - sg.rho[i]);
    dj += std::abs(sp.j[i] - sg.j[i]);
    nr += std::abs(sg.rho[i]);
  }
  rep.norm_rho = nr * g.dx;
  if (rep.norm_rho > 0.0) {
    rep.dist_rho = dr * g.dx / rep.norm_rho;
    rep.dist_j = dj * g.dx / rep.norm_rho;
  }
  return rep;
}

struct CompareResult {
  CompareReport initial;  // pure sampling error at t = 0
  CompareReport final;    // after evolving both representations to t_end
  std::vector<DiagnosticsRecord> kinetic_records;
  std::vector<DiagnosticsRecord> particle_records;
};

// Sample particles from the configured initial grid state, evolve both
// systems with the same model parameters, compare smoothed moments.
inline CompareResult run_compare(const RunConfig& rc) {
  if (rc.particles_dim != 1)
    throw std::invalid_argument("compare: particles.dim must be 1, got " +
                                std::to_string(rc.particles_dim));
  const ModelConfig cfg = make_model(rc);
  const InteractionKernel kern = make_kernel(rc);
  const ConfinementPotential pot = make_potential(rc);
  const RegularizationParams reg = make_reg(rc);

  PhaseGrid g = build_initial_grid(rc);
  ParticleEnsemble ens = sample_from_grid(g, rc.compare_N, rc.run_seed);

  CompareResult res;
  res.initial = compare_moments(ens, g, rc.compare_h);

  KineticRunParams krp;
  krp.t_end = rc.run_t_end;
  krp.output_every = rc.run_output_every;
  krp.cfl = rc.run_cfl;
  krp.dt = rc.run_dt;
  res.kinetic_records = run_kinetic(g, cfg, kern, pot, reg, krp);

  ParticleRunParams prp;
  prp.t_end = rc.run_t_end;
  prp.output_every = rc.run_output_every;
  if (rc.run_dt > 0.0) prp.dt = rc.run_dt;
  prp.seed = rc.run_seed;
  res.particle_records = run_particles(ens, cfg, kern, pot, prp);

  res.final = compare_moments(ens, g, rc.compare_h);
  return res;
}

}  // namespace kinflock
