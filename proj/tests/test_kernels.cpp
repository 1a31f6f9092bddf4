// Kernel and potential unit tests: pinned point values, exact symmetry,
// closed-form integrals against quadrature, and the normalized-model
// mass-ratio bound checked on random densities.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kinflock/kernels.hpp"
#include "kinflock/rng.hpp"

using namespace kinflock;

TEST_CASE("kernel point values") {
  InteractionKernel cst{KernelKind::constant, 2.0};
  CHECK(cst.eval1(-3.0, 7.5) == 2.0);

  InteractionKernel alg{KernelKind::algebraic, 1.0, 1.0};
  CHECK(alg.eval1(0.0, 1.0) == Catch::Approx(0.5).epsilon(1e-15));
  alg.gamma = 0.0;  // gamma = 0 degenerates to the constant kernel
  CHECK(alg.eval1(0.0, 5.0) == Catch::Approx(1.0).epsilon(1e-15));

  InteractionKernel cpt{KernelKind::compact, 1.0, 1.0, 1.0, 2.0};
  CHECK(cpt.eval1(0.0, 3.0) == 0.0);  // |x-y| = 3 >= R = 2
  CHECK(cpt.eval1(0.0, 0.0) == 1.0);
  CHECK(cpt.eval1(0.0, 1.0) == Catch::Approx(0.5625).epsilon(1e-15));  // (1 - 1/4)^2
  CHECK(cpt.eval1(0.0, 1.9999) < 1e-7);  // continuous approach to the support edge
}

TEST_CASE("kernel validation") {
  InteractionKernel k;
  k.k0 = -1.0;
  CHECK_THROWS(k.validate());
  k = InteractionKernel{KernelKind::compact, 1.0, 1.0, 3.0, 2.0};  // r > R
  CHECK_THROWS(k.validate());
  k = InteractionKernel{KernelKind::algebraic, 1.0, -0.5};
  CHECK_THROWS(k.validate());
}

TEST_CASE("kernel symmetry is exact on random pairs") {
  UniformStream s{99, 0};
  for (KernelKind kind : {KernelKind::constant, KernelKind::algebraic, KernelKind::compact}) {
    InteractionKernel k{kind, 1.3, 1.7, 0.8, 1.9};
    for (int dim = 1; dim <= 3; ++dim) {
      for (int trial = 0; trial < 3400; ++trial) {
        double x[3], y[3];
        for (int c = 0; c < dim; ++c) {
          x[c] = 8.0 * s.next() - 4.0;
          y[c] = 8.0 * s.next() - 4.0;
        }
        REQUIRE(k.eval(x, y, dim) == k.eval(y, x, dim));  // bitwise
      }
    }
  }
}

TEST_CASE("kernel bound is the value at zero separation") {
  UniformStream s{7, 1};
  for (KernelKind kind : {KernelKind::constant, KernelKind::algebraic, KernelKind::compact}) {
    InteractionKernel k{kind, 0.9, 1.1, 1.0, 2.5};
    CHECK(k.eval1(0.3, 0.3) == k.bound());
    for (int trial = 0; trial < 2000; ++trial) {
      const double x = 10.0 * s.next() - 5.0, y = 10.0 * s.next() - 5.0;
      CHECK(k.eval1(x, y) <= k.bound());
    }
  }
}

TEST_CASE("normalized-model growth constant") {
  // ratio 1 at R = r gives the base covering count 4 in one dimension
  CHECK(mt_normalization_bound(1.0, 1.0, 1.0, 1) == Catch::Approx(4.0));
  // ratio 2 at R/r = 2: ceil(8) * 2 = 16
  CHECK(mt_normalization_bound(2.0, 1.0, 2.0, 1) == Catch::Approx(16.0));
  // kernel overload computes the sup/inf ratio of the bump itself
  InteractionKernel cpt{KernelKind::compact, 2.0, 1.0, 1.0, 2.0};
  // phi(0)/phi(r) = 1/(1-(1/2)^2)^2 = 16/9, cells = ceil(8) = 8
  CHECK(mt_normalization_bound(cpt, 1) == Catch::Approx(8.0 * 16.0 / 9.0).epsilon(1e-14));
  CHECK(mt_normalization_bound(cpt, 2) == Catch::Approx(64.0 * 16.0 / 9.0).epsilon(1e-14));

  CHECK_THROWS(mt_normalization_bound(0.5, 1.0, 1.0, 1));   // ratio below 1
  CHECK_THROWS(mt_normalization_bound(1.0, 2.0, 1.0, 1));   // r > R
  CHECK_THROWS(mt_normalization_bound(1.0, 1.0, 1.0, 5));   // covering count untrusted
  InteractionKernel equal_radii{KernelKind::compact, 1.0, 1.0, 2.0, 2.0};
  CHECK_THROWS(mt_normalization_bound(equal_radii, 1));     // inf over B_r would be 0
  InteractionKernel alg{KernelKind::algebraic, 1.0, 1.0};
  CHECK_THROWS(mt_normalization_bound(alg, 1));             // needs compact support
}

TEST_CASE("mass-ratio quadrature stays under the growth constant") {
  // int phi(x-y) rho(x)/rho~(x) dx <= C for random nonnegative densities,
  // rho~ = phi * rho.  Piecewise-constant rho, midpoint quadrature.
  InteractionKernel phi{KernelKind::compact, 2.0, 0.5, 0.5, 1.0};
  const double C = mt_normalization_bound(phi, 1);  // ceil(8) * 16/9
  const int n = 240;
  const double L = 3.0, dx = 2.0 * L / n;
  UniformStream s{2024, 3};
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<double> rho(n), xs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = -L + (i + 0.5) * dx;
      const double zero_it = s.next();
      rho[i] = zero_it < 0.3 ? 0.0 : s.next();
    }
    std::vector<double> conv(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += phi.eval1(xs[i], xs[k]) * rho[k];
      conv[i] = acc * dx;
    }
    for (int trial = 0; trial < 10; ++trial) {
      const double y = 2.0 * L * s.next() - L;
      double integral = 0.0;
      for (int i = 0; i < n; ++i) {
        if (rho[i] == 0.0) continue;
        REQUIRE(conv[i] > 0.0);  // the cell itself contributes to its own average
        integral += phi.eval1(xs[i], y) * (rho[i] / conv[i]);
      }
      integral *= dx;
      CHECK(integral <= C);
    }
  }
}

TEST_CASE("potential values and gradient consistency") {
  ConfinementPotential q{PotentialKind::quadratic, 2.0};
  CHECK(q.value1(3.0) == Catch::Approx(9.0));
  CHECK(q.grad1(3.0) == Catch::Approx(6.0));
  double x2[2] = {1.0, 2.0};
  CHECK(q.value(x2, 2) == Catch::Approx(5.0));
  double g2[2];
  q.grad(x2, 2, g2);
  CHECK(g2[0] == Catch::Approx(2.0));
  CHECK(g2[1] == Catch::Approx(4.0));

  ConfinementPotential none{PotentialKind::none, 0.0};
  CHECK(none.value1(5.0) == 0.0);
  CHECK(none.grad1(5.0) == 0.0);

  // centered difference reproduces the gradient (exact for a quadratic)
  UniformStream s{5, 8};
  const double h = 1e-3;
  for (int trial = 0; trial < 100; ++trial) {
    const double x = 8.0 * s.next() - 4.0;
    const double num = (q.value1(x + h) - q.value1(x - h)) / (2.0 * h);
    CHECK(std::abs(num - q.grad1(x)) <= 1e-9 * std::max(1.0, std::abs(q.grad1(x))));
  }
}

TEST_CASE("growth-condition integrals match quadrature") {
  ConfinementPotential q{PotentialKind::quadratic, 1.7};
  // midpoint quadrature over a wide interval, fine step
  const double h = 2e-4, L = 15.0;
  const int n = (int)(2.0 * L / h);
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -L + (i + 0.5) * h;
    s1 += std::exp(-q.value1(x));
    s2 += std::exp(-0.5 * q.value1(x));
  }
  s1 *= h;
  s2 *= h;
  CHECK(q.integral_exp_minus_phi(1) == Catch::Approx(s1).epsilon(1e-8));
  CHECK(q.integral_exp_minus_half_phi(1) == Catch::Approx(s2).epsilon(1e-8));
  // d-dimensional closed form is the 1-d value to the d-th power
  CHECK(q.integral_exp_minus_phi(2) ==
        Catch::Approx(q.integral_exp_minus_phi(1) * q.integral_exp_minus_phi(1)).epsilon(1e-13));
  ConfinementPotential none{PotentialKind::none, 0.0};
  CHECK_THROWS(none.integral_exp_minus_phi(1));  // not integrable without growth
}
