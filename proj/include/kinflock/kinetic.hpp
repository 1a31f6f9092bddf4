// kinetic.hpp -- deterministic finite-volume solver for the kinetic equation
//
//   f_t + v f_x - d/dv[ (grad Phi) f ] + d/dv[ alpha_align f ] + ... = sigma f_vv
//
// written with the whole velocity drift collected into one face field
//   alpha(x,v) = -Phi'(x) + [cs] (A(x) - B(x) v) + [mt] (utilde(x) - v)
//              + [local] beta (chi_lambda(u_reg(x)) - v) + (a - b v^2) v.
//
// Strang splitting: half x-advection, full v-step, half x-advection.
//  * x: Fromm (2nd order) fluxes limited by positivity-only FCT over upwind.
//  * v: drift and diffusion merged into one exponential-fitted two-point flux
//       F = c1 f_below - c2 f_above with c1 = s P/(1-e^{-P}), c2 = s P/(e^P - 1),
//       s = sigma/dv, P = alpha dv / sigma.  The zero-flux state obeys
//       f_{j+1}/f_j = e^P, so a discrete Maxwellian is steady exactly; at
//       sigma = 0 the flux degenerates to pure upwind.
// Both directions use closed (zero-flux) walls: mass is conserved to round-off.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernels.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"

namespace kinflock {

// donor/receiver coefficients of the fitted v-flux; both are >= 0
inline void fitted_flux_coeffs(double alpha, double sigma, double dv, double& c1, double& c2) {
  if (sigma == 0.0) {
    c1 = alpha > 0.0 ? alpha : 0.0;
    c2 = alpha < 0.0 ? -alpha : 0.0;
    return;
  }
  const double s = sigma / dv;
  const double P = alpha * dv / sigma;
  if (std::abs(P) < 1e-6) {  // series of P/(1-e^{-P}) about 0
    c1 = s * (1.0 + 0.5 * P + P * P / 12.0);
    c2 = s * (1.0 - 0.5 * P + P * P / 12.0);
  } else {
    c1 = s * P / (-std::expm1(-P));
    c2 = s * P / std::expm1(P);
  }
}

struct KineticWorkspace {
  std::vector<double> ktab;  // kernel table for the current grid
  int ktab_n = 0;
  MomentFields m;
  std::vector<double> u_reg;      // truncated regularized mean velocity
  std::vector<double> utilde;     // normalized mean velocity (mt kinds)
  NonlocalField nl;               // A, B (cucker-smale kinds)
  std::vector<double> c1, c2;     // fitted flux coefficients per v-face, [i*(Nv+1)+j]
  // affine part of the drift per x-column: alpha(x_i, v) = base[i] + slope[i] v
  // + (a - b v^2) v; kept so diagnostics can evaluate alpha at cell centers
  std::vector<double> drift_base, drift_slope;
  // scratch rows for the x sweep
  std::vector<double> row, fl, fh, rlim, ftd;
};

// drift at an arbitrary v for column i (valid after build_drift)
inline double drift_at(const KineticWorkspace& ws, const ModelConfig& cfg, int i, double v) {
  return ws.drift_base[i] + ws.drift_slope[i] * v + (cfg.a - cfg.b * v * v) * v;
}

// Assemble the v-face drift and flux coefficients from the current state.
inline void build_drift(const PhaseGrid& g, const ModelConfig& cfg, const InteractionKernel& kern,
                        const ConfinementPotential& pot, const RegularizationParams& reg,
                        KineticWorkspace& ws) {
  const int Nx = g.Nx, Nv = g.Nv;
  if (ws.ktab_n != Nx) {
    ws.ktab = kernel_table(g, kern);
    ws.ktab_n = Nx;
  }
  ws.m = compute_moments(g);
  const bool cs = cfg.kind == ModelKind::cucker_smale || cfg.kind == ModelKind::combined;
  const bool mt = cfg.kind == ModelKind::motsch_tadmor;
  const bool loc = cfg.kind == ModelKind::local_alignment || cfg.kind == ModelKind::combined;
  const double eps_abs = reg.eps_vac_abs(ws.m);
  if (loc) {
    ws.u_reg = reg.delta > 0.0 ? compute_u_delta(ws.m, reg.delta) : compute_u(ws.m, eps_abs);
    truncate_field(ws.u_reg, reg.lambda);
  }
  if (cs) ws.nl = nonlocal_field(g, ws.m, ws.ktab);
  if (mt) ws.utilde = mt_field(g, ws.m, kern, eps_abs);

  ws.c1.resize((std::size_t)Nx * (Nv + 1));
  ws.c2.resize((std::size_t)Nx * (Nv + 1));
  ws.drift_base.resize(Nx);
  ws.drift_slope.resize(Nx);
  for (int i = 0; i < Nx; ++i) {
    // alpha(v) = base + slope*v + (a - b v^2) v per column
    double base = -pot.grad1(g.xc(i));
    double slope = 0.0;
    if (cs) {
      base += ws.nl.A[i];
      slope -= ws.nl.B[i];
    }
    if (mt) {
      base += ws.utilde[i];
      slope -= 1.0;
    }
    if (loc) {
      base += cfg.beta * ws.u_reg[i];
      slope -= cfg.beta;
    }
    ws.drift_base[i] = base;
    ws.drift_slope[i] = slope;
    double* c1r = &ws.c1[(std::size_t)i * (Nv + 1)];
    double* c2r = &ws.c2[(std::size_t)i * (Nv + 1)];
    for (int j = 0; j <= Nv; ++j) {
      const double v = g.vface(j);
      const double alpha = base + slope * v + (cfg.a - cfg.b * v * v) * v;
      fitted_flux_coeffs(alpha, cfg.sigma, g.dv, c1r[j], c2r[j]);
    }
  }
}

// largest stable step for the current coefficients (explicit update stays >= 0)
inline double stable_dt(const PhaseGrid& g, const KineticWorkspace& ws, double cfl) {
  const int Nx = g.Nx, Nv = g.Nv;
  double vmax = std::max(std::abs(g.v_min), std::abs(g.v_max));
  double rate = vmax / g.dx;  // x sweep (applied as two half steps)
  for (int i = 0; i < Nx; ++i) {
    const double* c1r = &ws.c1[(std::size_t)i * (Nv + 1)];
    const double* c2r = &ws.c2[(std::size_t)i * (Nv + 1)];
    for (int j = 0; j < Nv; ++j) {
      // donor drain of cell j through both faces
      const double r = (c1r[j + 1] + c2r[j]) / g.dv;
      if (r > rate) rate = r;
    }
  }
  return cfl / rate;
}

namespace detail {

// One conservative x-advection sweep over every v-row: Fromm fluxes with
// positivity-only FCT limiting over first-order upwind.  Closed walls.
inline void advect_x(PhaseGrid& g, double dt, KineticWorkspace& ws) {
  const int Nx = g.Nx, Nv = g.Nv;
  ws.row.resize(Nx);
  ws.fl.resize(Nx + 1);
  ws.fh.resize(Nx + 1);
  ws.rlim.resize(Nx);
  ws.ftd.resize(Nx);
  for (int j = 0; j < Nv; ++j) {
    const double c = g.vc(j);
    if (c == 0.0) continue;
    const double lam = dt / g.dx;
    const double nu = std::abs(c) * lam;  // courant number of this row
    double* row = ws.row.data();
    for (int i = 0; i < Nx; ++i) row[i] = g.at(i, j);
    double* fl = ws.fl.data();
    double* fh = ws.fh.data();
    fl[0] = fl[Nx] = 0.0;
    fh[0] = fh[Nx] = 0.0;
    if (c > 0.0) {
      for (int k = 1; k < Nx; ++k) {
        fl[k] = c * row[k - 1];
        fh[k] = (k >= 2 && k <= Nx - 1)
                    ? c * (row[k - 1] + 0.25 * (1.0 - nu) * (row[k] - row[k - 2]))
                    : fl[k];
      }
    } else {
      for (int k = 1; k < Nx; ++k) {
        fl[k] = c * row[k];
        fh[k] = (k >= 1 && k <= Nx - 2)
                    ? c * (row[k] - 0.25 * (1.0 - nu) * (row[k + 1] - row[k - 1]))
                    : fl[k];
      }
    }
    // transported low-order solution (nonnegative under the CFL bound)
    double* ftd = ws.ftd.data();
    for (int i = 0; i < Nx; ++i) ftd[i] = row[i] - lam * (fl[i + 1] - fl[i]);
    // limit the antidiffusive corrections A_k = fh - fl so cells cannot go negative
    double* rl = ws.rlim.data();
    for (int i = 0; i < Nx; ++i) {
      const double a_out = std::max(fh[i + 1] - fl[i + 1], 0.0) + std::max(-(fh[i] - fl[i]), 0.0);
      rl[i] = a_out > 0.0 ? std::min(1.0, ftd[i] / (lam * a_out)) : 1.0;
    }
    for (int i = 0; i < Nx; ++i) {
      const double ar = fh[i + 1] - fl[i + 1];
      const double al = fh[i] - fl[i];
      const double cr = ar >= 0.0 ? rl[i] : (i + 1 < Nx ? rl[i + 1] : 1.0);
      const double cl = al >= 0.0 ? (i > 0 ? rl[i - 1] : 1.0) : rl[i];
      double fnew = ftd[i] - lam * (cr * ar - cl * al);
      if (fnew < 0.0) fnew = 0.0;  // round-off dust only
      g.at(i, j) = fnew;
    }
  }
}

// conservative v-direction update with the fitted fluxes; closed walls
inline void v_flux_update(PhaseGrid& g, double dt, KineticWorkspace& ws) {
  const int Nx = g.Nx, Nv = g.Nv;
  const double lam = dt / g.dv;
  std::vector<double>& fbuf = ws.row;  // reuse scratch
  fbuf.resize(Nv + 1);
  for (int i = 0; i < Nx; ++i) {
    double* col = &g.f[(std::size_t)i * Nv];
    const double* c1r = &ws.c1[(std::size_t)i * (Nv + 1)];
    const double* c2r = &ws.c2[(std::size_t)i * (Nv + 1)];
    double* F = fbuf.data();
    F[0] = F[Nv] = 0.0;
    for (int k = 1; k < Nv; ++k) F[k] = c1r[k] * col[k - 1] - c2r[k] * col[k];
    for (int j = 0; j < Nv; ++j) {
      double fnew = col[j] - lam * (F[j + 1] - F[j]);
      if (fnew < 0.0) fnew = 0.0;  // round-off dust (update is positivity-preserving)
      col[j] = fnew;
    }
  }
}

}  // namespace detail

// mass leak rate the closed walls are suppressing (diagnostic, mass/time)
inline double boundary_flux_rate(const PhaseGrid& g, const KineticWorkspace& ws) {
  double s = 0.0;
  for (int j = 0; j < g.Nv; ++j) {
    const double v = g.vc(j);
    if (v < 0.0) s += -v * g.at(0, j) * g.dv;
    if (v > 0.0) s += v * g.at(g.Nx - 1, j) * g.dv;
  }
  for (int i = 0; i < g.Nx; ++i) {
    const double* c1r = &ws.c1[(std::size_t)i * (g.Nv + 1)];
    const double* c2r = &ws.c2[(std::size_t)i * (g.Nv + 1)];
    s += (c2r[0] * g.at(i, 0) + c1r[g.Nv] * g.at(i, g.Nv - 1)) * g.dx;
  }
  return s;
}

// One Strang step.  Pass reuse_drift = true when ws already holds the
// coefficients of the *current* state (e.g. after a stable_dt query).
inline void step_kinetic(PhaseGrid& g, const ModelConfig& cfg, const InteractionKernel& kern,
                         const ConfinementPotential& pot, const RegularizationParams& reg,
                         double dt, KineticWorkspace& ws, bool reuse_drift = false) {
  if (!(dt > 0.0)) throw std::invalid_argument("kinetic step: dt must be > 0");
  if (!reuse_drift) build_drift(g, cfg, kern, pot, reg, ws);
  const double dts = stable_dt(g, ws, 1.0);
  if (dt > dts * (1.0 + 1e-12))
    throw std::invalid_argument("kinetic step: dt=" + std::to_string(dt) +
                                " violates the stability bound; stable dt=" + std::to_string(dts));
  detail::advect_x(g, 0.5 * dt, ws);
  detail::v_flux_update(g, dt, ws);
  detail::advect_x(g, 0.5 * dt, ws);
  for (double q : g.f)
    if (!std::isfinite(q)) throw std::runtime_error("kinetic step: non-finite value in f");
}

}  // namespace kinflock
