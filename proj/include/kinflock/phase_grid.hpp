// phase_grid.hpp -- (x,v) phase-space grid, velocity moments, regularized
// mean-velocity fields and the nonlocal alignment coefficients.
//
// One space and one velocity dimension, uniform cells, cell-average values.
// All integrals are midpoint sums: int g = sum g_ij dx dv.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kernels.hpp"

namespace kinflock {

struct PhaseGrid {
  int Nx = 0, Nv = 0;
  double x_min = -4.0, x_max = 4.0;
  double v_min = -4.0, v_max = 4.0;
  double dx = 0.0, dv = 0.0;
  std::vector<double> f;  // f[i*Nv + j], i = x cell, j = v cell

  PhaseGrid() = default;
  PhaseGrid(int Nx_, int Nv_, double x0, double x1, double v0, double v1)
      : Nx(Nx_), Nv(Nv_), x_min(x0), x_max(x1), v_min(v0), v_max(v1) {
    if (Nx < 8 || Nv < 8) throw std::invalid_argument("grid: need Nx, Nv >= 8");
    if (!(x_max > x_min) || !(v_max > v_min))
      throw std::invalid_argument("grid: empty extent");
    dx = (x_max - x_min) / Nx;
    dv = (v_max - v_min) / Nv;
    f.assign((std::size_t)Nx * Nv, 0.0);
  }

  double xc(int i) const { return x_min + (i + 0.5) * dx; }  // cell centers
  double vc(int j) const { return v_min + (j + 0.5) * dv; }
  double vface(int j) const { return v_min + j * dv; }  // face j-1/2 of cell j

  double& at(int i, int j) { return f[(std::size_t)i * Nv + j]; }
  double at(int i, int j) const { return f[(std::size_t)i * Nv + j]; }

  double cell_measure() const { return dx * dv; }

  double mass() const {
    double s = 0.0;
    for (double q : f) s += q;
    return s * dx * dv;
  }
  double momentum() const {
    double s = 0.0;
    for (int i = 0; i < Nx; ++i)
      for (int j = 0; j < Nv; ++j) s += vc(j) * at(i, j);
    return s * dx * dv;
  }
  double sup() const {
    double m = 0.0;
    for (double q : f) m = std::max(m, q);
    return m;
  }
  double min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (double q : f) m = std::min(m, q);
    return m;
  }
};

struct MomentFields {
  std::vector<double> rho;  // int f dv
  std::vector<double> j;    // int v f dv
  std::vector<double> e2;   // int v^2 f dv
};

inline MomentFields compute_moments(const PhaseGrid& g) {
  MomentFields m;
  m.rho.assign(g.Nx, 0.0);
  m.j.assign(g.Nx, 0.0);
  m.e2.assign(g.Nx, 0.0);
  for (int i = 0; i < g.Nx; ++i) {
    double r = 0.0, p = 0.0, e = 0.0;
    for (int jj = 0; jj < g.Nv; ++jj) {
      const double fv = g.at(i, jj), v = g.vc(jj);
      r += fv;
      p += v * fv;
      e += v * v * fv;
    }
    m.rho[i] = r * g.dv;
    m.j[i] = p * g.dv;
    m.e2[i] = e * g.dv;
  }
  return m;
}

struct RegularizationParams {
  double delta = 0.0;    // density floor: u_delta = j / (delta + rho)
  double lambda = std::numeric_limits<double>::infinity();  // truncation level
  double eps_vac = 1e-12;  // *relative* vacuum threshold, absolute = eps_vac * max rho

  void validate() const {
    if (!(delta >= 0.0)) throw std::invalid_argument("reg: delta must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("reg: lambda must be > 0");
    if (!(eps_vac >= 0.0)) throw std::invalid_argument("reg: eps_vac must be >= 0");
  }
  double eps_vac_abs(const MomentFields& m) const {
    double r = 0.0;
    for (double q : m.rho) r = std::max(r, q);
    return eps_vac * r;
  }
};

// mean velocity u = j/rho with the vacuum rule: u = 0 where rho <= eps_abs
inline std::vector<double> compute_u(const MomentFields& m, double eps_abs) {
  std::vector<double> u(m.rho.size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (m.rho[i] > eps_abs) u[i] = m.j[i] / m.rho[i];
  return u;
}

// floor-regularized mean velocity u_delta = j/(delta + rho); |u_delta| <= |j|/delta
inline std::vector<double> compute_u_delta(const MomentFields& m, double delta) {
  std::vector<double> u(m.rho.size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double den = delta + m.rho[i];
    if (den > 0.0) u[i] = m.j[i] / den;
  }
  return u;
}

// chi_lambda in place: values with |u| > lambda are cut to zero (not clamped)
inline void truncate_field(std::vector<double>& u, double lambda) {
  for (double& q : u)
    if (std::abs(q) > lambda) q = 0.0;
}

// Nonlocal alignment coefficients of the factored operator L[f] = A(x) - B(x) v:
//   A_i = sum_k K0(x_i,x_k) j_k dx,   B_i = sum_k K0(x_i,x_k) rho_k dx
struct NonlocalField {
  std::vector<double> A, B;
};

// kernel table K[i*Nx+k] = K0(x_i, x_k); reusable across steps on a fixed grid
inline std::vector<double> kernel_table(const PhaseGrid& g, const InteractionKernel& kern) {
  std::vector<double> tab((std::size_t)g.Nx * g.Nx);
  for (int i = 0; i < g.Nx; ++i)
    for (int k = 0; k < g.Nx; ++k) tab[(std::size_t)i * g.Nx + k] = kern.eval1(g.xc(i), g.xc(k));
  return tab;
}

inline NonlocalField nonlocal_field(const PhaseGrid& g, const MomentFields& m,
                                    const std::vector<double>& ktab) {
  NonlocalField n;
  n.A.assign(g.Nx, 0.0);
  n.B.assign(g.Nx, 0.0);
  for (int i = 0; i < g.Nx; ++i) {
    double A = 0.0, B = 0.0;
    const double* row = &ktab[(std::size_t)i * g.Nx];
    for (int k = 0; k < g.Nx; ++k) {
      A += row[k] * m.j[k];
      B += row[k] * m.rho[k];
    }
    n.A[i] = A * g.dx;
    n.B[i] = B * g.dx;
  }
  return n;
}

inline NonlocalField nonlocal_field(const PhaseGrid& g, const MomentFields& m,
                                    const InteractionKernel& kern) {
  return nonlocal_field(g, m, kernel_table(g, kern));
}

// normalized mean velocity (kernel-weighted): utilde = (K0*j)/(K0*rho), with the
// vacuum rule applied to the convolved density
inline std::vector<double> mt_field(const PhaseGrid& g, const MomentFields& m,
                                    const InteractionKernel& kern, double eps_abs) {
  const NonlocalField n = nonlocal_field(g, m, kern);
  std::vector<double> ut(g.Nx, 0.0);
  for (int i = 0; i < g.Nx; ++i)
    if (n.B[i] > eps_abs) ut[i] = n.A[i] / n.B[i];
  return ut;
}

// discrete L^p norm of a per-cell x-field: (sum |w|^p dx)^{1/p}
inline double lp_norm_x(const std::vector<double>& w, double dx, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0.0;
  for (double q : w) s += std::pow(std::abs(q), p);
  return std::pow(s * dx, 1.0 / p);
}

}  // namespace kinflock
