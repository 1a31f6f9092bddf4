// init.hpp -- initial data: analytic phase-space profiles and particle draws.
//
// Grid profiles are evaluated at cell centers and rescaled so the *discrete*
// mass equals the requested one (keeps conservation checks exact at every
// resolution).  Particle draws are reproducible through counter-based streams.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kernels.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"
#include "rng.hpp"

namespace kinflock {

inline void normalize_mass(PhaseGrid& g, double mass) {
  const double m = g.mass();
  if (!(m > 0.0)) throw std::invalid_argument("init: profile has no mass on this grid");
  const double s = mass / m;
  for (double& q : g.f) q *= s;
}

// separable Gaussian bump in x and v
inline PhaseGrid maxwellian_bump_grid(int Nx, int Nv, double x_min, double x_max, double v_min,
                                      double v_max, double mass, double x0, double sx, double v0,
                                      double sv) {
  PhaseGrid g(Nx, Nv, x_min, x_max, v_min, v_max);
  for (int i = 0; i < Nx; ++i) {
    const double ex = std::exp(-0.5 * (g.xc(i) - x0) * (g.xc(i) - x0) / (sx * sx));
    for (int j = 0; j < Nv; ++j) {
      const double ev = std::exp(-0.5 * (g.vc(j) - v0) * (g.vc(j) - v0) / (sv * sv));
      g.at(i, j) = ex * ev;
    }
  }
  normalize_mass(g, mass);
  return g;
}

// two counter-propagating bumps, exactly symmetric under (x,v) -> (-x,-v)
// when the extents are symmetric (momentum is zero to round-off)
inline PhaseGrid counter_stream_grid(int Nx, int Nv, double x_min, double x_max, double v_min,
                                     double v_max, double mass, double x0, double sx, double v0,
                                     double sv) {
  PhaseGrid g(Nx, Nv, x_min, x_max, v_min, v_max);
  auto bump = [&](double x, double v, double xc, double vc) {
    return std::exp(-0.5 * (x - xc) * (x - xc) / (sx * sx)) *
           std::exp(-0.5 * (v - vc) * (v - vc) / (sv * sv));
  };
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < Nv; ++j) {
      const double x = g.xc(i), v = g.vc(j);
      g.at(i, j) = bump(x, v, x0, v0) + bump(x, v, -x0, -v0);
    }
  normalize_mass(g, mass);
  return g;
}

// Maxwellian with temperature theta in the potential well:
// f = c exp(-(v^2/2 + Phi(x)) / theta); steady for the pure local model
// (zero kernel, unit alignment strength) when theta = sigma
inline PhaseGrid steady_maxwellian_grid(int Nx, int Nv, double x_min, double x_max, double v_min,
                                        double v_max, double mass, double theta,
                                        const ConfinementPotential& pot) {
  if (!(theta > 0.0)) throw std::invalid_argument("init: theta must be > 0");
  PhaseGrid g(Nx, Nv, x_min, x_max, v_min, v_max);
  for (int i = 0; i < Nx; ++i) {
    const double ex = std::exp(-pot.value1(g.xc(i)) / theta);
    for (int j = 0; j < Nv; ++j)
      g.at(i, j) = ex * std::exp(-0.5 * g.vc(j) * g.vc(j) / theta);
  }
  normalize_mass(g, mass);
  return g;
}

// independent Gaussian positions and velocities
inline ParticleEnsemble gaussian_ensemble(int N, int dim, const double* x0, double sx,
                                          const double* v0, double sv, std::uint64_t seed) {
  ParticleEnsemble e(N, dim);
  for (int i = 0; i < N; ++i)
    for (int c = 0; c < dim; ++c) {
      e.x[i * dim + c] = x0[c] + sx * normal_draw(seed, 101, (std::uint64_t)(i * dim + c));
      e.v[i * dim + c] = v0[c] + sv * normal_draw(seed, 102, (std::uint64_t)(i * dim + c));
    }
  return e;
}

// two groups with distinct bulk velocities; group one holds frac1 of the
// particles around x = -gap/2, group two the rest around x = +gap/2
inline ParticleEnsemble two_group_ensemble(int N, int dim, double frac1, double gap, double v1,
                                           double v2, double spread_x, double spread_v,
                                           std::uint64_t seed) {
  ParticleEnsemble e(N, dim);
  const int n1 = std::max(1, std::min(N - 1, (int)std::lround(frac1 * N)));
  for (int i = 0; i < N; ++i) {
    const bool first = i < n1;
    for (int c = 0; c < dim; ++c) {
      const double xc = c == 0 ? (first ? -0.5 * gap : 0.5 * gap) : 0.0;
      const double vc = c == 0 ? (first ? v1 : v2) : 0.0;
      e.x[i * dim + c] = xc + spread_x * normal_draw(seed, 103, (std::uint64_t)(i * dim + c));
      e.v[i * dim + c] = vc + spread_v * normal_draw(seed, 104, (std::uint64_t)(i * dim + c));
    }
  }
  return e;
}

// inverse-CDF draw from a phase-space profile: pick a cell by cumulative mass,
// then place the particle uniformly inside it
inline ParticleEnsemble sample_from_grid(const PhaseGrid& g, int N, std::uint64_t seed) {
  const std::size_t n = g.f.size();
  std::vector<double> cdf(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) cdf[k + 1] = cdf[k] + std::max(g.f[k], 0.0);
  const double total = cdf[n];
  if (!(total > 0.0)) throw std::invalid_argument("sample: profile has no mass");
  ParticleEnsemble e(N, 1);
  UniformStream s{seed, 7};
  for (int p = 0; p < N; ++p) {
    const double target = s.next() * total;
    const std::size_t k =
        std::upper_bound(cdf.begin() + 1, cdf.end(), target) - cdf.begin() - 1;
    const int i = (int)(k / g.Nv), j = (int)(k % g.Nv);
    e.x[p] = g.x_min + (i + s.next()) * g.dx;
    e.v[p] = g.v_min + (j + s.next()) * g.dv;
  }
  return e;
}

}  // namespace kinflock
