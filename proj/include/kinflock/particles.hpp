// particles.hpp -- N-particle flocking dynamics.
//
//   dx_i = v_i dt
//   dv_i = [ align_i - grad Phi(x_i) + (a - b|v_i|^2) v_i ] dt + sqrt(2 sigma) dW_i
//
// Alignment terms by model kind:
//   cucker-smale    (1/N) sum_j K0(x_i,x_j) (v_j - v_i)        pairwise, momentum-safe
//   motsch-tadmor   sum_j K0 (v_j - v_i) / sum_j K0            normalized, not momentum-safe
//   local-alignment beta (chi_lambda(u_loc(x_i)) - v_i)        mollified local mean velocity
//   combined        cucker-smale + local-alignment
//
// Time stepping: Heun (predictor-corrector) when sigma = 0, Euler-Maruyama else.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cell_list.hpp"
#include "kernels.hpp"
#include "rng.hpp"

namespace kinflock {

enum class ModelKind { cucker_smale, motsch_tadmor, local_alignment, combined };

struct ModelConfig {
  ModelKind kind = ModelKind::cucker_smale;
  double beta = 1.0;    // local alignment strength
  double sigma = 0.0;   // velocity diffusion
  double a = 0.0;       // self-propulsion
  double b = 0.0;       // friction
  double epsilon = 0.5; // mollifier width for the local mean velocity
  double delta = 0.0;   // density floor in the regularized mean velocity
  double lambda = std::numeric_limits<double>::infinity();  // truncation level

  void validate() const {
    if (!(beta >= 0.0)) throw std::invalid_argument("model: beta must be >= 0");
    if (!(sigma >= 0.0)) throw std::invalid_argument("model: sigma must be >= 0");
    if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("model: a, b must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("model: epsilon must be > 0");
    if (!(delta >= 0.0)) throw std::invalid_argument("model: delta must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("model: lambda must be > 0");
  }
};

// velocity truncation chi_lambda: hard cutoff to zero above level lambda
inline void truncate_velocity(double* u, int dim, double lambda) {
  double s2 = 0.0;
  for (int c = 0; c < dim; ++c) s2 += u[c] * u[c];
  if (s2 > lambda * lambda)
    for (int c = 0; c < dim; ++c) u[c] = 0.0;
}

struct ParticleEnsemble {
  int N = 0;
  int dim = 1;
  std::vector<double> x;  // N*dim, layout x[i*dim + c]
  std::vector<double> v;

  ParticleEnsemble() = default;
  ParticleEnsemble(int N_, int dim_) : N(N_), dim(dim_), x(N_ * dim_, 0.0), v(N_ * dim_, 0.0) {
    if (N < 2) throw std::invalid_argument("ensemble: N must be >= 2");
    if (dim < 1 || dim > 3) throw std::invalid_argument("ensemble: dim must be 1..3");
  }
};

// normalized polynomial mollifier psi_eps(s) = c_d/eps^d (1-|s/eps|^2)^2 on |s|<eps
inline double mollifier(const double* s, int dim, double eps) {
  static const double cd[4] = {0.0, 15.0 / 16.0, 3.0 / M_PI, 105.0 / (32.0 * M_PI)};
  double q = 0.0;
  for (int c = 0; c < dim; ++c) q += s[c] * s[c];
  q /= eps * eps;
  if (q >= 1.0) return 0.0;
  const double w = 1.0 - q;
  return cd[dim] * w * w / std::pow(eps, dim);
}

// regularized local mean velocity at a point:
//   u_loc(x) = (1/N) sum_j psi_eps(x - x_j) v_j / (delta + (1/N) sum_j psi_eps(x - x_j))
// With delta = 0 and no mass near x both sums vanish: convention u_loc = 0.
inline void local_mean_velocity(const ParticleEnsemble& ens, const double* xq, double eps,
                                double delta, double* u_out) {
  const int d = ens.dim;
  double num[3] = {0, 0, 0};
  double den = 0.0;
  double s[3];
  for (int j = 0; j < ens.N; ++j) {
    for (int c = 0; c < d; ++c) s[c] = xq[c] - ens.x[j * d + c];
    const double w = mollifier(s, d, eps);
    if (w == 0.0) continue;
    den += w;
    for (int c = 0; c < d; ++c) num[c] += w * ens.v[j * d + c];
  }
  const double denom = delta * ens.N + den;
  for (int c = 0; c < d; ++c) u_out[c] = denom > 0.0 ? num[c] / denom : 0.0;
}

namespace detail {

// threshold above which compact kernels go through the cell list
constexpr int kBinThreshold = 400;

inline void add_cucker_smale(const ParticleEnsemble& ens, const InteractionKernel& kern,
                             std::vector<double>& acc) {
  const int d = ens.dim, N = ens.N;
  if (kern.kind == KernelKind::constant) {
    // (1/N) sum_j k0 (v_j - v_i) = k0 (vbar - v_i); algebraically identical, O(N)
    double vbar[3] = {0, 0, 0};
    for (int i = 0; i < N; ++i)
      for (int c = 0; c < d; ++c) vbar[c] += ens.v[i * d + c];
    for (int c = 0; c < d; ++c) vbar[c] /= N;
    for (int i = 0; i < N; ++i)
      for (int c = 0; c < d; ++c) acc[i * d + c] += kern.k0 * (vbar[c] - ens.v[i * d + c]);
    return;
  }
  // pairwise antisymmetric accumulation: momentum exact to round-off
  auto pair = [&](int i, int j, double r2) {
    const double w = kern.eval_r2(r2) / N;
    for (int c = 0; c < d; ++c) {
      const double dv = w * (ens.v[j * d + c] - ens.v[i * d + c]);
      acc[i * d + c] += dv;
      acc[j * d + c] -= dv;
    }
  };
  if (kern.kind == KernelKind::compact && N > kBinThreshold)
    for_each_pair_within(ens.x, N, d, kern.R, pair);
  else
    for_each_pair_within_naive(ens.x, N, d,
                               kern.kind == KernelKind::compact ? kern.R
                                                                : std::numeric_limits<double>::infinity(),
                               pair);
}

inline void add_motsch_tadmor(const ParticleEnsemble& ens, const InteractionKernel& kern,
                              std::vector<double>& acc) {
  const int d = ens.dim, N = ens.N;
  // tilde-u_i = sum_j K0 v_j / sum_j K0, self term included: denominator >= K0(x_i,x_i) = k0 > 0
  for (int i = 0; i < N; ++i) {
    double num[3] = {0, 0, 0};
    double den = 0.0;
    for (int j = 0; j < N; ++j) {
      const double w = kern.eval(&ens.x[i * d], &ens.x[j * d], d);
      den += w;
      for (int c = 0; c < d; ++c) num[c] += w * ens.v[j * d + c];
    }
    for (int c = 0; c < d; ++c) acc[i * d + c] += num[c] / den - ens.v[i * d + c];
  }
}

inline void add_local_alignment(const ParticleEnsemble& ens, const ModelConfig& cfg,
                                std::vector<double>& acc) {
  const int d = ens.dim;
  double u[3];
  for (int i = 0; i < ens.N; ++i) {
    local_mean_velocity(ens, &ens.x[i * d], cfg.epsilon, cfg.delta, u);
    truncate_velocity(u, d, cfg.lambda);
    for (int c = 0; c < d; ++c) acc[i * d + c] += cfg.beta * (u[c] - ens.v[i * d + c]);
  }
}

}  // namespace detail

// total deterministic acceleration (alignment + confinement + self-propulsion)
inline void particle_accel(const ParticleEnsemble& ens, const ModelConfig& cfg,
                           const InteractionKernel& kern, const ConfinementPotential& pot,
                           std::vector<double>& acc) {
  const int d = ens.dim, N = ens.N;
  acc.assign((std::size_t)N * d, 0.0);
  if (cfg.kind == ModelKind::cucker_smale || cfg.kind == ModelKind::combined)
    detail::add_cucker_smale(ens, kern, acc);
  if (cfg.kind == ModelKind::motsch_tadmor) detail::add_motsch_tadmor(ens, kern, acc);
  if (cfg.kind == ModelKind::local_alignment || cfg.kind == ModelKind::combined)
    detail::add_local_alignment(ens, cfg, acc);
  double g[3];
  for (int i = 0; i < N; ++i) {
    pot.grad(&ens.x[i * d], d, g);
    double v2 = 0.0;
    for (int c = 0; c < d; ++c) v2 += ens.v[i * d + c] * ens.v[i * d + c];
    const double sp = cfg.a - cfg.b * v2;
    for (int c = 0; c < d; ++c) acc[i * d + c] += sp * ens.v[i * d + c] - g[c];
  }
}

// One step.  step_index feeds the noise counter so trajectories are
// reproducible for a fixed (seed, config) regardless of call batching.
inline void step_particles(ParticleEnsemble& ens, const ModelConfig& cfg,
                           const InteractionKernel& kern, const ConfinementPotential& pot,
                           double dt, std::uint64_t seed, std::uint64_t step_index) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  const int d = ens.dim, N = ens.N;
  static thread_local std::vector<double> a1, a2, x0, v0;
  particle_accel(ens, cfg, kern, pot, a1);
  if (cfg.sigma == 0.0) {
    // Heun: predict with Euler, correct with the trapezoid average
    x0 = ens.x;
    v0 = ens.v;
    for (int k = 0; k < N * d; ++k) {
      ens.x[k] = x0[k] + dt * v0[k];
      ens.v[k] = v0[k] + dt * a1[k];
    }
    particle_accel(ens, cfg, kern, pot, a2);
    for (int k = 0; k < N * d; ++k) {
      ens.x[k] = x0[k] + 0.5 * dt * (v0[k] + ens.v[k]);
      ens.v[k] = v0[k] + 0.5 * dt * (a1[k] + a2[k]);
    }
  } else {
    // Euler-Maruyama with per-(particle, component) counter streams
    const double amp = std::sqrt(2.0 * cfg.sigma * dt);
    for (int i = 0; i < N; ++i)
      for (int c = 0; c < d; ++c) {
        const int k = i * d + c;
        ens.x[k] += dt * ens.v[k];
        ens.v[k] += dt * a1[k] + amp * normal_draw(seed, (std::uint64_t)k, step_index);
      }
  }
}

// ensemble observables ------------------------------------------------------

inline void mean_velocity(const ParticleEnsemble& ens, double* vbar) {
  for (int c = 0; c < ens.dim; ++c) vbar[c] = 0.0;
  for (int i = 0; i < ens.N; ++i)
    for (int c = 0; c < ens.dim; ++c) vbar[c] += ens.v[i * ens.dim + c];
  for (int c = 0; c < ens.dim; ++c) vbar[c] /= ens.N;
}

// E = (1/N) sum_i ( |v_i|^2/2 + Phi(x_i) )
inline double particle_energy(const ParticleEnsemble& ens, const ConfinementPotential& pot) {
  double e = 0.0;
  for (int i = 0; i < ens.N; ++i) {
    double v2 = 0.0;
    for (int c = 0; c < ens.dim; ++c) v2 += ens.v[i * ens.dim + c] * ens.v[i * ens.dim + c];
    e += 0.5 * v2 + pot.value(&ens.x[i * ens.dim], ens.dim);
  }
  return e / ens.N;
}

// pairwise velocity dissipation (1/2N^2) sum_ij K0 |v_i - v_j|^2
inline double particle_dissipation(const ParticleEnsemble& ens, const InteractionKernel& kern) {
  const int d = ens.dim;
  if (kern.kind == KernelKind::constant) {
    // (k0/2N^2) sum_ij |v_i - v_j|^2 = k0 (<|v|^2> - |<v>|^2); O(N)
    double m2 = 0.0, m1[3] = {0, 0, 0};
    for (int i = 0; i < ens.N; ++i)
      for (int c = 0; c < d; ++c) {
        const double v = ens.v[i * d + c];
        m1[c] += v;
        m2 += v * v;
      }
    double b2 = 0.0;
    for (int c = 0; c < d; ++c) b2 += (m1[c] / ens.N) * (m1[c] / ens.N);
    return kern.k0 * (m2 / ens.N - b2);
  }
  double s = 0.0;
  for (int i = 0; i < ens.N; ++i)
    for (int j = i + 1; j < ens.N; ++j) {
      const double w = kern.eval(&ens.x[i * d], &ens.x[j * d], d);
      double dv2 = 0.0;
      for (int c = 0; c < d; ++c) {
        const double dv = ens.v[i * d + c] - ens.v[j * d + c];
        dv2 += dv * dv;
      }
      s += w * dv2;  // unordered pairs twice -> the 1/2 cancels
    }
  return s / ((double)ens.N * ens.N);
}

}  // namespace kinflock
