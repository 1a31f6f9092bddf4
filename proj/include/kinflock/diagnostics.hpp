// diagnostics.hpp -- conserved quantities, entropy/dissipation functionals and
// the identity checks built from them.
//
// Functional conventions (grid, one space and one velocity dimension, d = 1):
//   E  = int f (v^2/2 + Phi)                       energy
//   F  = int (sigma/beta) f log f + f v^2/2 + f Phi  entropy (beta > 0)
//   D1 = (beta/2) int (1/f) | (sigma/beta) f_v - f (u - v) |^2
//   D2 = (1/2) iint K0 f f' |v - w|^2  = iint K0 [rho(x) e2(y) - j(x) j(y)]
//   Du = (1/2) iint K0 rho rho' |u(x) - u(y)|^2
//   local 2-velocity term: beta int f |u - v|^2
//   entropy RHS: (sigma d / beta) iint K0 rho rho'
// Balance laws checked on record pairs (trapezoid average = centered difference
// at the pair midpoint):
//   dE/dt + beta int f|u-v|^2 + D2 = sigma d M
//   dF/dt + D1 + D2 <= entropy RHS       (one D1 dropped; holds with margin -D1)
//   dF/dt + 2 D1 + D2 = entropy RHS      (the exact-flow identity; expanding D1
//     against the equation, the noise+local-alignment terms contribute -2 D1
//     under the 1/2-prefactor normalization of D1 -- the u=0, K0=0 case is the
//     classical Fokker-Planck free-energy identity)
//   F(t) + int_0^t (D1+D2) <= exp((sigma d/beta)||K0|| M^2 t) F(0)   if F(0) > 0

#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "kernels.hpp"
#include "kinetic.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"

namespace kinflock {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = kNaN;
  double momentum = kNaN;      // scalar written to CSV (d=1 value or |P| for d>1)
  double mom_vec[3] = {kNaN, kNaN, kNaN};
  int dim = 1;
  double energy = kNaN;
  double entropy = kNaN;
  double d1 = kNaN;
  double d2 = kNaN;
  double du = kNaN;
  double local_align = kNaN;   // beta int f |u-v|^2
  double entropy_rhs = kNaN;
  double residual_energy = kNaN;  // filled on record pairs (later row)
  double flux_boundary = kNaN;
  double sup_f = kNaN;
  double lp_rho_2 = kNaN;
  double lp_j_14 = kNaN;
  double cauchy_gap = kNaN;  // max_i (|j_i| - sqrt(rho_i e2_i)), normalized; <= 0 up to round-off
  std::string flags;
};

// ---- grid functionals -----------------------------------------------------

inline double kinetic_energy_functional(const PhaseGrid& g, const ConfinementPotential& pot) {
  double s = 0.0;
  for (int i = 0; i < g.Nx; ++i) {
    const double phi = pot.value1(g.xc(i));
    for (int j = 0; j < g.Nv; ++j) {
      const double v = g.vc(j);
      s += g.at(i, j) * (0.5 * v * v + phi);
    }
  }
  return s * g.cell_measure();
}

inline double kinetic_entropy_functional(const PhaseGrid& g, const ConfinementPotential& pot,
                                         double sigma, double beta) {
  if (!(beta > 0.0)) return kNaN;
  const double th = sigma / beta;
  double s = 0.0;
  for (int i = 0; i < g.Nx; ++i) {
    const double phi = pot.value1(g.xc(i));
    for (int j = 0; j < g.Nv; ++j) {
      const double f = g.at(i, j), v = g.vc(j);
      if (f > 0.0) s += th * f * std::log(f);
      s += f * (0.5 * v * v + phi);
    }
  }
  return s * g.cell_measure();
}

// entropy dissipation D1; velocity derivative by centered differences, cells
// with f <= eps_f skipped (the 1/f weight).  With sigma = 0 this is exactly
// (beta/2) int f |u-v|^2.
inline double entropy_dissipation_d1(const PhaseGrid& g, const std::vector<double>& u,
                                     double sigma, double beta, double eps_f) {
  if (!(beta > 0.0)) return kNaN;
  const double th = sigma / beta;
  double s = 0.0;
  for (int i = 0; i < g.Nx; ++i) {
    for (int j = 0; j < g.Nv; ++j) {
      const double f = g.at(i, j);
      if (f <= eps_f) continue;
      double dfv;
      if (j == 0)
        dfv = (g.at(i, 1) - f) / g.dv;
      else if (j == g.Nv - 1)
        dfv = (f - g.at(i, j - 1)) / g.dv;
      else
        dfv = (g.at(i, j + 1) - g.at(i, j - 1)) / (2.0 * g.dv);
      const double w = th * dfv - f * (u[i] - g.vc(j));
      s += w * w / f;
    }
  }
  return 0.5 * beta * s * g.cell_measure();
}

// local alignment term of the energy balance: beta int f |u - v|^2
inline double local_alignment_term(const PhaseGrid& g, const std::vector<double>& u, double beta) {
  double s = 0.0;
  for (int i = 0; i < g.Nx; ++i)
    for (int j = 0; j < g.Nv; ++j) {
      const double w = u[i] - g.vc(j);
      s += g.at(i, j) * w * w;
    }
  return beta * s * g.cell_measure();
}

// pairwise alignment dissipation via the moment factorization
inline double alignment_dissipation_d2(const MomentFields& m, const std::vector<double>& ktab,
                                       double dx) {
  const int n = (int)m.rho.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* row = &ktab[(std::size_t)i * n];
    for (int k = 0; k < n; ++k) s += row[k] * (m.rho[i] * m.e2[k] - m.j[i] * m.j[k]);
  }
  return s * dx * dx;
}

// same quantity summed over all four phase-space indices (oracle; small grids)
inline double alignment_dissipation_d2_brute(const PhaseGrid& g, const std::vector<double>& ktab) {
  double s = 0.0;
  for (int i = 0; i < g.Nx; ++i)
    for (int k = 0; k < g.Nx; ++k) {
      const double K = ktab[(std::size_t)i * g.Nx + k];
      if (K == 0.0) continue;
      for (int j = 0; j < g.Nv; ++j)
        for (int l = 0; l < g.Nv; ++l) {
          const double w = g.vc(j) - g.vc(l);
          s += K * g.at(i, j) * g.at(k, l) * w * w;
        }
    }
  return 0.5 * s * g.cell_measure() * g.cell_measure();
}

// mean-velocity gap dissipation (1/2) iint K0 rho rho' |u - u'|^2
inline double velocity_gap_dissipation(const MomentFields& m, const std::vector<double>& u,
                                       const std::vector<double>& ktab, double dx) {
  const int n = (int)m.rho.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* row = &ktab[(std::size_t)i * n];
    for (int k = 0; k < n; ++k) {
      const double w = u[i] - u[k];
      s += row[k] * m.rho[i] * m.rho[k] * w * w;
    }
  }
  return 0.5 * s * dx * dx;
}

// right-hand side of the entropy balance, (sigma d / beta) iint K0 rho rho'
inline double entropy_rhs_functional(const MomentFields& m, const std::vector<double>& ktab,
                                     double dx, double sigma, double beta, int dim) {
  if (!(beta > 0.0)) return kNaN;
  const int n = (int)m.rho.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* row = &ktab[(std::size_t)i * n];
    for (int k = 0; k < n; ++k) s += row[k] * m.rho[i] * m.rho[k];
  }
  return (sigma * dim / beta) * s * dx * dx;
}

// sup-norm growth rate of the transported equation: ||f(t)|| <= e^{Ct}||f0||,
// C = d (1 + ||K0|| M)
inline double linf_growth_rate(const InteractionKernel& kern, double mass, int dim) {
  return dim * (1.0 + kern.bound() * mass);
}

// confinement control of the negative log density:
//   int rho log_- rho <= 1/2 int rho Phi + (1/e) int exp(-Phi/2)
struct ConfinementBound {
  double lhs = 0.0, rhs = 0.0;
  bool ok = false;
};
inline ConfinementBound confinement_bound(const MomentFields& m, double dx, double x_min,
                                          const ConfinementPotential& pot, int dim) {
  ConfinementBound b;
  if (pot.kind != PotentialKind::quadratic) return b;  // needs the growth condition
  double lhs = 0.0, pot_term = 0.0;
  for (std::size_t i = 0; i < m.rho.size(); ++i) {
    const double rho = m.rho[i];
    const double x = x_min + (i + 0.5) * dx;
    if (rho > 0.0 && rho < 1.0) lhs += -rho * std::log(rho);
    pot_term += rho * pot.value1(x);
  }
  b.lhs = lhs * dx;
  b.rhs = 0.5 * pot_term * dx + std::exp(-1.0) * pot.integral_exp_minus_half_phi(dim);
  b.ok = b.lhs <= b.rhs * (1.0 + 1e-12) + 1e-12;
  return b;
}

// ---- record assembly ------------------------------------------------------

inline DiagnosticsRecord kinetic_record(double t, const PhaseGrid& g, const ModelConfig& cfg,
                                        const InteractionKernel& kern,
                                        const ConfinementPotential& pot,
                                        const RegularizationParams& reg, KineticWorkspace& ws) {
  build_drift(g, cfg, kern, pot, reg, ws);  // refresh moments/coefficients for this state
  DiagnosticsRecord r;
  r.t = t;
  r.dim = 1;
  r.mass = g.mass();
  r.momentum = g.momentum();
  r.mom_vec[0] = r.momentum;
  r.energy = kinetic_energy_functional(g, pot);
  r.entropy = kinetic_entropy_functional(g, pot, cfg.sigma, cfg.beta);
  const double eps_abs = reg.eps_vac_abs(ws.m);
  const std::vector<double> u = compute_u(ws.m, eps_abs);
  r.d1 = entropy_dissipation_d1(g, u, cfg.sigma, cfg.beta, reg.eps_vac * g.sup());
  r.d2 = alignment_dissipation_d2(ws.m, ws.ktab, g.dx);
  r.du = velocity_gap_dissipation(ws.m, u, ws.ktab, g.dx);
  r.local_align = local_alignment_term(g, u, cfg.beta);
  r.entropy_rhs = entropy_rhs_functional(ws.m, ws.ktab, g.dx, cfg.sigma, cfg.beta, 1);
  r.flux_boundary = boundary_flux_rate(g, ws);
  r.sup_f = g.sup();
  r.lp_rho_2 = lp_norm_x(ws.m.rho, g.dx, 2.0);
  r.lp_j_14 = lp_norm_x(ws.m.j, g.dx, 1.4);
  double gap = -std::numeric_limits<double>::infinity(), scale = 0.0;
  for (int i = 0; i < g.Nx; ++i) {
    const double cs = std::sqrt(ws.m.rho[i] * ws.m.e2[i]);
    gap = std::max(gap, std::abs(ws.m.j[i]) - cs);
    scale = std::max(scale, cs);
  }
  r.cauchy_gap = scale > 0.0 ? gap / scale : 0.0;
  return r;
}

inline DiagnosticsRecord particle_record(double t, const ParticleEnsemble& ens,
                                         const ModelConfig& cfg, const InteractionKernel& kern,
                                         const ConfinementPotential& pot) {
  DiagnosticsRecord r;
  r.t = t;
  r.dim = ens.dim;
  r.mass = 1.0;  // empirical measure is normalized
  mean_velocity(ens, r.mom_vec);
  if (ens.dim == 1) {
    r.momentum = r.mom_vec[0];
  } else {
    double s = 0.0;
    for (int c = 0; c < ens.dim; ++c) s += r.mom_vec[c] * r.mom_vec[c];
    r.momentum = std::sqrt(s);
  }
  r.energy = particle_energy(ens, pot);
  r.d2 = particle_dissipation(ens, kern);
  return r;
}

// ---- balance-law checks on record pairs -----------------------------------

// energy balance residual over one record pair (centered at the midpoint):
//   | dE/dt + avg(beta int f|u-v|^2) + avg(D2) - sigma d avg(M) |
inline double energy_balance_residual(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                                      double sigma, int dim) {
  const double dt = b.t - a.t;
  const double dEdt = (b.energy - a.energy) / dt;
  const double loc = 0.5 * (a.local_align + b.local_align);
  const double d2 = 0.5 * (a.d2 + b.d2);
  const double src = sigma * dim * 0.5 * (a.mass + b.mass);
  return std::abs(dEdt + loc + d2 - src);
}

// signed entropy balance defect dF/dt + avg(D1) + avg(D2) - avg(RHS); the
// inequality requires defect <= tol (the exact flow gives defect = -D1 <= 0)
inline double entropy_balance_defect(const DiagnosticsRecord& a, const DiagnosticsRecord& b) {
  const double dt = b.t - a.t;
  return (b.entropy - a.entropy) / dt + 0.5 * (a.d1 + b.d1) + 0.5 * (a.d2 + b.d2) -
         0.5 * (a.entropy_rhs + b.entropy_rhs);
}

// |dF/dt + avg(2 D1) + avg(D2) - avg(RHS)|: the exact-flow identity margin,
// shrinks under grid refinement (the single-D1 defect above converges to -D1)
inline double entropy_identity_margin(const DiagnosticsRecord& a, const DiagnosticsRecord& b) {
  const double dt = b.t - a.t;
  return std::abs((b.entropy - a.entropy) / dt + (a.d1 + b.d1) + 0.5 * (a.d2 + b.d2) -
                  0.5 * (a.entropy_rhs + b.entropy_rhs));
}

// E(t) <= E(0) + sigma d M t + tol at every output
inline bool check_energy_inequality(const std::vector<DiagnosticsRecord>& recs, double sigma,
                                    int dim, double tol) {
  if (recs.empty()) return false;
  const double e0 = recs.front().energy, m0 = recs.front().mass;
  for (const auto& r : recs)
    if (r.energy > e0 + sigma * dim * m0 * r.t + tol) return false;
  return true;
}

// self-propulsion variant: E(t) <= (E(0) + sigma d M/(2a)) e^{2at} + tol
inline bool check_energy_selfprop(const std::vector<DiagnosticsRecord>& recs, double sigma,
                                  int dim, double a, double tol) {
  if (recs.empty() || !(a > 0.0)) return false;
  const double e0 = recs.front().energy, m0 = recs.front().mass;
  const double c = e0 + sigma * dim * m0 / (2.0 * a);
  for (const auto& r : recs)
    if (r.energy > c * std::exp(2.0 * a * r.t) + tol) return false;
  return true;
}

// normalized-alignment growth envelope E(t) <= E(0) e^{C t} with C from
// mt_normalization_bound; equality at t = 0, so tol covers round-off only
inline bool check_mt_energy(const std::vector<DiagnosticsRecord>& recs, double C, double tol_rel) {
  if (recs.empty() || !(C >= 0.0)) return false;
  const double e0 = recs.front().energy;
  for (const auto& r : recs)
    if (r.energy > e0 * std::exp(C * r.t) * (1.0 + tol_rel)) return false;
  return true;
}

// cumulative trapezoid of D1+D2 up to each record (for the growth envelope)
inline std::vector<double> cumulative_dissipation(const std::vector<DiagnosticsRecord>& recs) {
  std::vector<double> acc(recs.size(), 0.0);
  for (std::size_t k = 1; k < recs.size(); ++k) {
    const double dt = recs[k].t - recs[k - 1].t;
    acc[k] = acc[k - 1] + 0.5 * dt * (recs[k].d1 + recs[k].d2 + recs[k - 1].d1 + recs[k - 1].d2);
  }
  return acc;
}

// Gronwall envelope F(t) + int (D1+D2) <= e^{(sigma d/beta)||K0|| M^2 t} F(0) + tol.
// Only meaningful when F(0) > 0; returns true vacuously otherwise.
inline bool check_entropy_envelope(const std::vector<DiagnosticsRecord>& recs,
                                   const InteractionKernel& kern, double sigma, double beta,
                                   int dim, double tol) {
  if (recs.empty() || !(beta > 0.0)) return false;
  const double f0 = recs.front().entropy, m0 = recs.front().mass;
  if (!(f0 > 0.0)) return true;
  const double rate = (sigma * dim / beta) * kern.bound() * m0 * m0;
  const std::vector<double> acc = cumulative_dissipation(recs);
  for (std::size_t k = 0; k < recs.size(); ++k)
    if (recs[k].entropy + acc[k] > std::exp(rate * recs[k].t) * f0 + tol) return false;
  return true;
}

// fill residual_energy (later row of each pair) and the per-row flag string
struct FlagTolerances {
  double energy_ineq_rel = 1e-6;   // x E(0)
  double entropy_defect = 0.0;     // absolute; 0 -> set from c_ent*(dt+dx+dv)*scale by caller
  double envelope_abs = 0.0;
  double linf_rel = 1e-9;          // slack on the e^{Ct} bound
  double cauchy_rel = 1e-12;
};

inline void finalize_records(std::vector<DiagnosticsRecord>& recs, const ModelConfig& cfg,
                             const InteractionKernel& kern, int dim, double f0_sup,
                             const FlagTolerances& tol) {
  if (recs.empty()) return;
  const double e0 = recs.front().energy, m0 = recs.front().mass, f0 = recs.front().entropy;
  const double growth = linf_growth_rate(kern, m0, dim);
  const std::vector<double> acc = cumulative_dissipation(recs);
  const double env_rate = cfg.beta > 0.0 ? (cfg.sigma * dim / cfg.beta) * kern.bound() * m0 * m0 : 0.0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    DiagnosticsRecord& r = recs[k];
    if (k > 0) r.residual_energy = energy_balance_residual(recs[k - 1], r, cfg.sigma, dim);
    std::string fl;
    auto add = [&fl](const char* name, const char* verdict) {
      if (!fl.empty()) fl += ';';
      fl += name;
      fl += '=';
      fl += verdict;
    };
    const bool e_ok = r.energy <= e0 + cfg.sigma * dim * m0 * r.t + tol.energy_ineq_rel * std::abs(e0);
    add("energy_ineq", e_ok ? "pass" : "fail");
    if (std::isnan(r.entropy)) {
      add("entropy_ineq", "na");
      add("entropy_env", "na");
    } else {
      if (k == 0)
        add("entropy_ineq", "na");
      else
        add("entropy_ineq",
            entropy_balance_defect(recs[k - 1], r) <= tol.entropy_defect ? "pass" : "fail");
      if (!(f0 > 0.0))
        add("entropy_env", "na");
      else
        add("entropy_env",
            r.entropy + acc[k] <= std::exp(env_rate * r.t) * f0 + tol.envelope_abs ? "pass" : "fail");
    }
    if (std::isnan(r.sup_f))
      add("linf", "na");
    else
      add("linf", r.sup_f <= std::exp(growth * r.t) * f0_sup * (1.0 + tol.linf_rel) ? "pass" : "fail");
    if (std::isnan(r.cauchy_gap))
      add("cauchy", "na");
    else
      add("cauchy", r.cauchy_gap <= tol.cauchy_rel ? "pass" : "fail");
    r.flags = fl;
  }
}

// moment norms ||rho||_p, ||j||_p for a list of exponents
inline std::vector<double> moment_norms(const MomentFields& m, double dx, bool use_j,
                                        const std::vector<double>& plist) {
  std::vector<double> out;
  out.reserve(plist.size());
  for (double p : plist) out.push_back(lp_norm_x(use_j ? m.j : m.rho, dx, p));
  return out;
}

}  // namespace kinflock
