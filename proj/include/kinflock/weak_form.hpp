// weak_form.hpp -- distributional residual of the kinetic equation against
// smooth compactly supported test functions.
//
// For psi in C_c^2((0,T) x interior), an exact solution satisfies
//   Res(psi) = int_0^T iint f (-psi_t - v psi_x - alpha psi_v - sigma psi_vv) = 0
// with alpha(x,v) the full velocity drift of the scheme.  The residual of a
// numerical run therefore measures the consistency of the discrete evolution
// in the weak (adjoint) sense, and must shrink under refinement.
//
// Test functions are tensor bumps T(t) X(x) V(v) built from
//   b(s) = (1 - s^2)^3 on |s| < 1   (C^2 across the support edge),
// so psi vanishes with two derivatives at the support boundary and never
// touches the domain walls or t = 0, T.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kinetic.hpp"
#include "phase_grid.hpp"

namespace kinflock {

inline double bump1(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? q * q * q : 0.0;
}
inline double bump1_d(double s) {  // d/ds (1-s^2)^3
  const double q = 1.0 - s * s;
  return q > 0.0 ? -6.0 * s * q * q : 0.0;
}
inline double bump1_dd(double s) {  // d2/ds2 (1-s^2)^3
  const double q = 1.0 - s * s;
  return q > 0.0 ? q * (30.0 * s * s - 6.0) : 0.0;
}

// psi(t,x,v) = b((t-tc)/tw) b((x-xc)/xw) b((v-vc)/vw)
struct BumpTestFunction {
  double tc = 0.5, tw = 0.4;
  double xc = 0.0, xw = 1.0;
  double vc = 0.0, vw = 1.0;

  double value(double t, double x, double v) const {
    return bump1((t - tc) / tw) * bump1((x - xc) / xw) * bump1((v - vc) / vw);
  }
  double dt(double t, double x, double v) const {
    return bump1_d((t - tc) / tw) / tw * bump1((x - xc) / xw) * bump1((v - vc) / vw);
  }
  double dx(double t, double x, double v) const {
    return bump1((t - tc) / tw) * bump1_d((x - xc) / xw) / xw * bump1((v - vc) / vw);
  }
  double dv(double t, double x, double v) const {
    return bump1((t - tc) / tw) * bump1((x - xc) / xw) * bump1_d((v - vc) / vw) / vw;
  }
  double dvv(double t, double x, double v) const {
    return bump1((t - tc) / tw) * bump1((x - xc) / xw) * bump1_dd((v - vc) / vw) / (vw * vw);
  }
  bool inside_time(double t) const { return std::abs(t - tc) < tw; }
};

// five-bump family covering center, offset, early/late time and a wing,
// shrunk to sit strictly inside the domain and (0, t_end)
inline std::vector<BumpTestFunction> default_test_family(const PhaseGrid& g, double t_end) {
  const double xm = 0.5 * (g.x_min + g.x_max), xr = 0.5 * (g.x_max - g.x_min);
  const double vm = 0.5 * (g.v_min + g.v_max), vr = 0.5 * (g.v_max - g.v_min);
  std::vector<BumpTestFunction> fam(5);
  fam[0] = {0.50 * t_end, 0.45 * t_end, xm, 0.9 * xr, vm, 0.9 * vr};
  fam[1] = {0.50 * t_end, 0.45 * t_end, xm + 0.4 * xr, 0.5 * xr, vm + 0.15 * vr, 0.5 * vr};
  fam[2] = {0.30 * t_end, 0.25 * t_end, xm - 0.25 * xr, 0.5 * xr, vm - 0.1 * vr, 0.6 * vr};
  fam[3] = {0.70 * t_end, 0.25 * t_end, xm + 0.1 * xr, 0.6 * xr, vm, 0.35 * vr};
  fam[4] = {0.50 * t_end, 0.40 * t_end, xm - 0.5 * xr, 0.35 * xr, vm + 0.25 * vr, 0.5 * vr};
  return fam;
}

// Accumulates the spatial integrand of Res(psi) at every record time and
// integrates over t afterwards (composite Simpson on the uniform record
// times; a trailing odd interval gets the 3/8 rule).  Usable directly as a
// run_kinetic callback through a lambda; holds its own drift workspace.
struct WeakResidualAccumulator {
  std::vector<BumpTestFunction> family;
  ModelConfig cfg;
  InteractionKernel kern;
  ConfinementPotential pot;
  RegularizationParams reg;

  std::vector<double> times;
  std::vector<std::vector<double>> samples;  // [function][record]
  KineticWorkspace ws;

  WeakResidualAccumulator(std::vector<BumpTestFunction> fam, const ModelConfig& c,
                          const InteractionKernel& k, const ConfinementPotential& p,
                          const RegularizationParams& r)
      : family(std::move(fam)), cfg(c), kern(k), pot(p), reg(r), samples(family.size()) {}

  void sample(double t, const PhaseGrid& g) {
    build_drift(g, cfg, kern, pot, reg, ws);
    times.push_back(t);
    const double meas = g.cell_measure();
    for (std::size_t p = 0; p < family.size(); ++p) {
      const BumpTestFunction& psi = family[p];
      double s = 0.0;
      if (psi.inside_time(t)) {
        for (int i = 0; i < g.Nx; ++i) {
          const double x = g.xc(i);
          if (std::abs(x - psi.xc) >= psi.xw) continue;
          for (int j = 0; j < g.Nv; ++j) {
            const double f = g.at(i, j);
            if (f == 0.0) continue;
            const double v = g.vc(j);
            if (std::abs(v - psi.vc) >= psi.vw) continue;
            const double alpha = drift_at(ws, cfg, i, v);
            s += f * (-psi.dt(t, x, v) - v * psi.dx(t, x, v) - alpha * psi.dv(t, x, v) -
                      cfg.sigma * psi.dvv(t, x, v));
          }
        }
      }
      samples[p].push_back(s * meas);
    }
  }

  // |Res(psi_p)| for each family member
  std::vector<double> residuals() const {
    const std::size_t n = times.size();
    if (n < 4) throw std::invalid_argument("weak residual: need at least 4 records");
    std::vector<double> out(family.size());
    for (std::size_t p = 0; p < family.size(); ++p) {
      const std::vector<double>& y = samples[p];
      const double h = (times.back() - times.front()) / (double)(n - 1);
      std::size_t m = n - 1;             // interval count
      double acc = 0.0;
      std::size_t stop = m;
      if (m % 2 != 0) {                  // peel three intervals for the 3/8 rule
        stop = m - 3;
        acc += 3.0 * h / 8.0 * (y[stop] + 3.0 * y[stop + 1] + 3.0 * y[stop + 2] + y[stop + 3]);
      }
      for (std::size_t k = 0; k + 2 <= stop; k += 2)
        acc += h / 3.0 * (y[k] + 4.0 * y[k + 1] + y[k + 2]);
      out[p] = std::abs(acc);
    }
    return out;
  }
};

}  // namespace kinflock
