// kernels.hpp -- communication kernels K0(x,y) and confinement potentials Phi(x).
//
// All kernels are radial, symmetric and bounded: K0(x,y) = phi(|x-y|) with
// sup phi = phi(0) = k0.  The compact kind is the bump (1-(s/R)^2)^2 on s<R.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kinflock {

enum class KernelKind { constant, algebraic, compact };

struct InteractionKernel {
  KernelKind kind = KernelKind::algebraic;
  double k0 = 1.0;     // strength; also sup K0 for every kind
  double gamma = 1.0;  // algebraic decay exponent (algebraic kind only)
  double r = 1.0;      // inner radius used by the normalization bound (compact)
  double R = 2.0;      // support radius (compact kind only)

  void validate() const {
    if (k0 < 0.0) throw std::invalid_argument("kernel: k0 must be >= 0");
    if (kind == KernelKind::algebraic && gamma < 0.0)
      throw std::invalid_argument("kernel: gamma must be >= 0");
    if (kind == KernelKind::compact && !(R > 0.0))
      throw std::invalid_argument("kernel: R must be > 0");
    if (kind == KernelKind::compact && !(r > 0.0 && r <= R))
      throw std::invalid_argument("kernel: need 0 < r <= R");
  }

  // evaluate from the squared separation
  double eval_r2(double s2) const {
    switch (kind) {
      case KernelKind::constant: return k0;
      case KernelKind::algebraic: return k0 / std::pow(1.0 + s2, gamma);
      case KernelKind::compact: {
        const double q = s2 / (R * R);
        if (q >= 1.0) return 0.0;
        const double w = 1.0 - q;
        return k0 * w * w;
      }
    }
    return 0.0;
  }

  double eval(const double* x, const double* y, int dim) const {
    double s2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double d = x[c] - y[c];
      s2 += d * d;
    }
    return eval_r2(s2);
  }

  double eval1(double x, double y) const {
    const double d = x - y;
    return eval_r2(d * d);
  }

  double bound() const { return k0; }  // sup over all (x,y)

  // interaction radius for neighbor binning; infinite for non-compact kinds
  double support_radius() const {
    return kind == KernelKind::compact ? R : std::numeric_limits<double>::infinity();
  }
};

// Growth-rate constant for the normalized-alignment (mean over neighbors) model:
// energy obeys E(t) <= E(0) exp(C t) with the covering-count constant
//   C = ceil(4R/r)^d * sup(phi) / inf_{B_r(0)} phi.
// ceil(4R/r)^d balls of radius r cover a ball of radius 2R in dim <= 4
// (a minimal cover needs ceil(2*sqrt(d)*R/r)^d boxes, and 2*sqrt(d) <= 4).
inline double mt_normalization_bound(double sup_over_inf, double r, double R, int dim) {
  if (!(sup_over_inf >= 1.0)) throw std::invalid_argument("mt bound: sup/inf ratio must be >= 1");
  if (!(r > 0.0 && R >= r)) throw std::invalid_argument("mt bound: need 0 < r <= R");
  if (dim < 1 || dim > 4) throw std::invalid_argument("mt bound: covering count valid for dim 1..4");
  const double cells = std::ceil(4.0 * R / r);
  return std::pow(cells, dim) * sup_over_inf;
}

inline double mt_normalization_bound(const InteractionKernel& kern, int dim) {
  if (kern.kind != KernelKind::compact)
    throw std::invalid_argument("mt bound: kernel must have compact support");
  if (!(kern.r < kern.R))
    throw std::invalid_argument("mt bound: need r < R so that inf over B_r is positive");
  const double q = (kern.r * kern.r) / (kern.R * kern.R);
  const double inf_ball = (1.0 - q) * (1.0 - q);  // phi(r)/k0, the inf over B_r(0)
  return mt_normalization_bound(1.0 / inf_ball, kern.r, kern.R, dim);
}

enum class PotentialKind { none, quadratic };

struct ConfinementPotential {
  PotentialKind kind = PotentialKind::quadratic;
  double omega2 = 1.0;  // curvature: Phi(x) = omega2 |x|^2 / 2

  void validate() const {
    if (kind == PotentialKind::quadratic && !(omega2 > 0.0))
      throw std::invalid_argument("potential: omega2 must be > 0");
  }

  double value1(double x) const {
    return kind == PotentialKind::none ? 0.0 : 0.5 * omega2 * x * x;
  }
  double grad1(double x) const {
    return kind == PotentialKind::none ? 0.0 : omega2 * x;
  }

  double value(const double* x, int dim) const {
    double s = 0.0;
    for (int c = 0; c < dim; ++c) s += x[c] * x[c];
    return kind == PotentialKind::none ? 0.0 : 0.5 * omega2 * s;
  }
  void grad(const double* x, int dim, double* out) const {
    for (int c = 0; c < dim; ++c)
      out[c] = kind == PotentialKind::none ? 0.0 : omega2 * x[c];
  }

  // closed forms of the growth-condition integrals (quadratic kind only):
  //   int exp(-Phi) dx = (2 pi / omega2)^{d/2},  int exp(-Phi/2) dx = (4 pi / omega2)^{d/2}
  double integral_exp_minus_phi(int dim) const {
    if (kind != PotentialKind::quadratic)
      throw std::domain_error("potential: exp(-Phi) not integrable for this kind");
    return std::pow(2.0 * M_PI / omega2, 0.5 * dim);
  }
  double integral_exp_minus_half_phi(int dim) const {
    if (kind != PotentialKind::quadratic)
      throw std::domain_error("potential: exp(-Phi/2) not integrable for this kind");
    return std::pow(4.0 * M_PI / omega2, 0.5 * dim);
  }
};

}  // namespace kinflock
