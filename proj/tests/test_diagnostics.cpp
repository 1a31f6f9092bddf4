// Functional-level checks: energy/entropy values against closed forms,
// dissipation identities, balance-law residual algebra, flag assembly.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kinflock/diagnostics.hpp"
#include "kinflock/driver.hpp"
#include "kinflock/init.hpp"
#include "kinflock/rng.hpp"

using namespace kinflock;

namespace {

PhaseGrid random_grid(int nx, int nv, std::uint64_t seed, double lo = 0.1, double hi = 1.1) {
  PhaseGrid g(nx, nv, -1.0, 1.0, -1.0, 1.0);
  UniformStream us{seed, 50};
  for (double& q : g.f) q = lo + (hi - lo) * us.next();
  return g;
}

}  // namespace

TEST_CASE("energy matches the Gaussian closed form") {
  const double M = 0.8, v0 = 0.3, sv = 0.5, x0 = 0.2, sx = 0.6;
  PhaseGrid g = maxwellian_bump_grid(192, 192, -4, 4, -4, 4, M, x0, sx, v0, sv);
  ConfinementPotential pot{PotentialKind::quadratic, 2.0};
  // E = M (v0^2 + sv^2)/2 + (omega^2/2) M (x0^2 + sx^2)
  const double exact = 0.5 * M * (v0 * v0 + sv * sv) + 0.5 * 2.0 * M * (x0 * x0 + sx * sx);
  CHECK(kinetic_energy_functional(g, pot) == Catch::Approx(exact).epsilon(1e-5));
}

TEST_CASE("entropy of the uniform distribution is the plain kinetic term") {
  // f = 1 on [0,1]x[-1/2,1/2], sigma/beta = 1: log f = 0, Phi = 0 -> F = int v^2/2 = 1/24
  PhaseGrid g(64, 64, 0.0, 1.0, -0.5, 0.5);
  for (double& q : g.f) q = 1.0;
  ConfinementPotential pot{PotentialKind::none, 0.0};
  CHECK(kinetic_entropy_functional(g, pot, 1.0, 1.0) == Catch::Approx(1.0 / 24.0).margin(1e-4));
  CHECK(std::isnan(kinetic_entropy_functional(g, pot, 1.0, 0.0)));
}

TEST_CASE("entropy scaling identity F(c f) = c F(f) + (sigma/beta) c log c M") {
  PhaseGrid g = random_grid(24, 24, 77);
  ConfinementPotential pot{PotentialKind::quadratic, 1.0};
  const double sigma = 0.3, beta = 1.5, c = 2.0;
  const double F1 = kinetic_entropy_functional(g, pot, sigma, beta);
  const double M = g.mass();
  PhaseGrid gc = g;
  for (double& q : gc.f) q *= c;
  const double F2 = kinetic_entropy_functional(gc, pot, sigma, beta);
  CHECK(F2 == Catch::Approx(c * F1 + (sigma / beta) * c * std::log(c) * M).epsilon(1e-12));
}

TEST_CASE("D1 vanishes on the centered Maxwellian and converges at 4th order") {
  const double sigma = 0.2, beta = 2.0;  // temperature 0.1
  const double sv = std::sqrt(sigma / beta);
  double d1_coarse = 0.0;
  for (int n : {96, 192}) {
    PhaseGrid g = maxwellian_bump_grid(n, n, -2, 2, -2, 2, 1.0, 0.0, 0.5, 0.0, sv);
    std::vector<double> u(n, 0.0);
    const double d1 = entropy_dissipation_d1(g, u, sigma, beta, 1e-14 * g.sup());
    CHECK(d1 >= 0.0);
    CHECK(d1 < 1e-4);
    if (n == 96)
      d1_coarse = d1;
    else
      CHECK(d1 * 8.0 < d1_coarse);  // centered differences: error ~ dv^4
  }
}

TEST_CASE("D1 at sigma = 0 reduces to half the local alignment term") {
  PhaseGrid g = random_grid(20, 20, 3);
  std::vector<double> u(20);
  UniformStream us{9, 51};
  for (double& q : u) q = 2.0 * us.next() - 1.0;
  const double beta = 1.7;
  const double d1 = entropy_dissipation_d1(g, u, 0.0, beta, 0.0);
  const double loc = local_alignment_term(g, u, beta);
  CHECK(d1 == Catch::Approx(0.5 * loc).epsilon(1e-13));
  CHECK(d1 >= 0.0);
}

TEST_CASE("factored D2 equals the four-index sum") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    PhaseGrid g = random_grid(14, 11, seed, 0.0, 1.0);
    InteractionKernel kern{KernelKind::algebraic, 0.8, 1.3};
    const std::vector<double> ktab = kernel_table(g, kern);
    MomentFields m = compute_moments(g);
    const double fast = alignment_dissipation_d2(m, ktab, g.dx);
    const double brute = alignment_dissipation_d2_brute(g, ktab);
    CHECK(fast == Catch::Approx(brute).epsilon(1e-12));
    CHECK(fast >= 0.0);
  }
}

TEST_CASE("velocity-gap dissipation: two-cell hand value and null cases") {
  PhaseGrid g(8, 8, 0.0, 1.0, -1.0, 1.0);
  InteractionKernel kern{KernelKind::algebraic, 1.0, 1.0};
  const std::vector<double> ktab = kernel_table(g, kern);
  MomentFields m;
  m.rho.assign(8, 0.0);
  m.j.assign(8, 0.0);
  m.e2.assign(8, 0.0);
  m.rho[1] = 2.0;
  m.rho[6] = 3.0;
  std::vector<double> u(8, 0.0);
  u[1] = 0.4;
  u[6] = -0.2;
  // Du = dx^2 K(x1,x6) rho1 rho6 (u1-u6)^2  (the symmetric pair counted once)
  const double K = ktab[1 * 8 + 6];
  const double expect = g.dx * g.dx * K * 2.0 * 3.0 * 0.6 * 0.6;
  CHECK(velocity_gap_dissipation(m, u, ktab, g.dx) == Catch::Approx(expect).epsilon(1e-13));
  std::vector<double> uc(8, 0.7);  // constant field -> 0
  CHECK(velocity_gap_dissipation(m, uc, ktab, g.dx) == 0.0);
  const std::vector<double> kz(64, 0.0);  // zero kernel -> 0
  CHECK(velocity_gap_dissipation(m, u, kz, g.dx) == 0.0);
}

TEST_CASE("entropy RHS with a constant kernel is (sigma d / beta) k0 M^2") {
  PhaseGrid g = random_grid(22, 13, 5, 0.0, 1.0);
  InteractionKernel kern{KernelKind::constant, 0.9};
  const std::vector<double> ktab = kernel_table(g, kern);
  MomentFields m = compute_moments(g);
  const double M = g.mass();
  const double sigma = 0.25, beta = 1.25;
  CHECK(entropy_rhs_functional(m, ktab, g.dx, sigma, beta, 1) ==
        Catch::Approx((sigma / beta) * 0.9 * M * M).epsilon(1e-12));
  CHECK(std::isnan(entropy_rhs_functional(m, ktab, g.dx, sigma, 0.0, 1)));
}

TEST_CASE("sup-norm growth rate formula") {
  InteractionKernel kern{KernelKind::constant, 2.5};
  CHECK(linf_growth_rate(kern, 3.0, 2) == Catch::Approx(2.0 * (1.0 + 2.5 * 3.0)));
}

TEST_CASE("negative-log-density bound: uniform block hand value, Gaussian holds") {
  ConfinementPotential pot{PotentialKind::quadratic, 1.0};
  {
    // rho = 0.1 on [0,1]: lhs = -0.1 log 0.1, potential term = 0.05 int_0^1 x^2/2
    const int n = 400;
    MomentFields m;
    m.rho.assign(n, 0.0);
    const double dx = 4.0 / n;  // domain [-2,2]
    for (int i = 0; i < n; ++i) {
      const double x = -2.0 + (i + 0.5) * dx;
      if (x > 0.0 && x < 1.0) m.rho[i] = 0.1;
    }
    ConfinementBound b = confinement_bound(m, dx, -2.0, pot, 1);
    CHECK(b.lhs == Catch::Approx(-0.1 * std::log(0.1)).epsilon(2e-2));
    CHECK(b.rhs >= 0.5 * 0.1 / 6.0);
    CHECK(b.ok);
  }
  {
    // rho >= 1 on its support -> lhs = 0, holds trivially
    MomentFields m;
    m.rho.assign(100, 1.5);
    ConfinementBound b = confinement_bound(m, 0.01, -0.5, pot, 1);
    CHECK(b.lhs == 0.0);
    CHECK(b.ok);
  }
  {
    // wide low Gaussian density (lots of rho < 1 mass): theorem still holds
    PhaseGrid g = maxwellian_bump_grid(256, 16, -6, 6, -1, 1, 1.0, 0.0, 2.0, 0.0, 0.2);
    MomentFields m = compute_moments(g);
    ConfinementBound b = confinement_bound(m, g.dx, -6.0, pot, 1);
    CHECK(b.lhs > 0.0);
    CHECK(b.ok);
  }
}

TEST_CASE("balance residual and entropy defect formulas on synthetic pairs") {
  DiagnosticsRecord a, b;
  a.t = 0.0;
  b.t = 0.25;
  a.energy = 1.0;
  b.energy = 0.9;
  a.local_align = 0.30;
  b.local_align = 0.20;
  a.d2 = 0.08;
  b.d2 = 0.04;
  a.mass = 1.0;
  b.mass = 1.0;
  const double sigma = 0.1;
  // dE/dt = -0.4, avg loc = 0.25, avg d2 = 0.06, source = 0.1
  CHECK(energy_balance_residual(a, b, sigma, 1) == Catch::Approx(0.19).epsilon(1e-12));

  a.entropy = 0.50;
  b.entropy = 0.47;
  a.d1 = 0.06;
  b.d1 = 0.02;
  a.entropy_rhs = 0.11;
  b.entropy_rhs = 0.09;
  // dF/dt = -0.12, avg d1 = 0.04, avg d2 = 0.06, avg rhs = 0.10
  CHECK(entropy_balance_defect(a, b) == Catch::Approx(-0.12).epsilon(1e-12));
  // identity margin adds a second avg d1
  CHECK(entropy_identity_margin(a, b) == Catch::Approx(0.08).epsilon(1e-12));
}

TEST_CASE("energy inequality checks accept valid runs and flag violations") {
  std::vector<DiagnosticsRecord> recs(3);
  const double sigma = 0.2;
  for (int k = 0; k < 3; ++k) {
    recs[k].t = 0.5 * k;
    recs[k].mass = 1.0;
    recs[k].energy = 1.0 + 0.5 * sigma * recs[k].t;  // half the allowed growth
  }
  CHECK(check_energy_inequality(recs, sigma, 1, 1e-9));
  recs[2].energy = 1.0 + 2.0 * sigma * recs[2].t;
  CHECK_FALSE(check_energy_inequality(recs, sigma, 1, 1e-9));

  const double aa = 0.3;
  for (int k = 0; k < 3; ++k)
    recs[k].energy = (1.0 + sigma / (2.0 * aa)) * std::exp(2.0 * aa * recs[k].t) - 0.01;
  CHECK(check_energy_selfprop(recs, sigma, 1, aa, 1e-9));
  recs[1].energy = (recs[0].energy + sigma / (2.0 * aa)) * std::exp(2.0 * aa * recs[1].t) + 0.05;
  CHECK_FALSE(check_energy_selfprop(recs, sigma, 1, aa, 1e-9));
  CHECK_FALSE(check_energy_selfprop(recs, sigma, 1, 0.0, 1e-9));  // needs a > 0
}

TEST_CASE("cumulative dissipation is the trapezoid rule") {
  std::vector<DiagnosticsRecord> recs(3);
  recs[0].t = 0.0;
  recs[1].t = 0.1;
  recs[2].t = 0.3;
  recs[0].d1 = 1.0;
  recs[1].d1 = 0.6;
  recs[2].d1 = 0.2;
  recs[0].d2 = 0.4;
  recs[1].d2 = 0.2;
  recs[2].d2 = 0.0;
  const std::vector<double> acc = cumulative_dissipation(recs);
  CHECK(acc[0] == 0.0);
  CHECK(acc[1] == Catch::Approx(0.5 * 0.1 * (1.4 + 0.8)).epsilon(1e-14));
  CHECK(acc[2] == Catch::Approx(acc[1] + 0.5 * 0.2 * (0.8 + 0.2)).epsilon(1e-14));
}

TEST_CASE("entropy envelope check: vacuous for F0 <= 0, strict otherwise") {
  InteractionKernel kern{KernelKind::constant, 1.0};
  std::vector<DiagnosticsRecord> recs(2);
  recs[0].t = 0.0;
  recs[1].t = 1.0;
  recs[0].mass = recs[1].mass = 1.0;
  recs[0].d1 = recs[1].d1 = recs[0].d2 = recs[1].d2 = 0.0;
  recs[0].entropy = -0.5;
  recs[1].entropy = 10.0;
  CHECK(check_entropy_envelope(recs, kern, 0.1, 1.0, 1, 0.0));  // F0 < 0: not applicable
  recs[0].entropy = 0.5;
  recs[1].entropy = 0.5 * std::exp(0.1) * 0.99;  // inside e^{(sigma d/beta)k0 M^2 t} F0
  CHECK(check_entropy_envelope(recs, kern, 0.1, 1.0, 1, 0.0));
  recs[1].entropy = 0.5 * std::exp(0.1) * 1.01;
  CHECK_FALSE(check_entropy_envelope(recs, kern, 0.1, 1.0, 1, 0.0));
}

TEST_CASE("kinetic record fields are consistent with the grid state") {
  PhaseGrid g = maxwellian_bump_grid(48, 48, -3, 3, -3, 3, 1.0, 0.3, 0.6, 0.2, 0.4);
  ModelConfig cfg;
  cfg.kind = ModelKind::combined;
  cfg.beta = 1.0;
  cfg.sigma = 0.1;
  InteractionKernel kern{KernelKind::algebraic, 1.0, 1.0};
  ConfinementPotential pot{PotentialKind::quadratic, 1.0};
  RegularizationParams reg;
  KineticWorkspace ws;
  DiagnosticsRecord r = kinetic_record(0.0, g, cfg, kern, pot, reg, ws);
  CHECK(r.mass == Catch::Approx(g.mass()).epsilon(1e-14));
  CHECK(r.momentum == Catch::Approx(g.momentum()).epsilon(1e-12));
  CHECK(r.sup_f == g.sup());
  CHECK(r.energy > 0.0);
  CHECK(r.d1 >= 0.0);
  CHECK(r.d2 > 0.0);
  CHECK(r.du >= 0.0);
  CHECK(r.entropy_rhs > 0.0);
  CHECK(r.lp_rho_2 > 0.0);
  CHECK(r.lp_j_14 > 0.0);
  CHECK(r.cauchy_gap <= 1e-12);  // |j| <= sqrt(rho e2) cellwise
  CHECK(std::isnan(r.residual_energy));
}

TEST_CASE("particle record two-body hand values") {
  ParticleEnsemble ens(2, 1);
  ens.x = {0.0, 1.0};
  ens.v = {0.5, -0.5};
  ModelConfig cfg;
  InteractionKernel kern{KernelKind::constant, 2.0};
  ConfinementPotential pot{PotentialKind::quadratic, 1.0};
  DiagnosticsRecord r = particle_record(0.0, ens, cfg, kern, pot);
  CHECK(r.mass == 1.0);
  CHECK(r.momentum == Catch::Approx(0.0).margin(1e-15));
  // E = avg(v^2/2 + x^2/2) = ((0.125 + 0) + (0.125 + 0.5))/2
  CHECK(r.energy == Catch::Approx(0.375).epsilon(1e-14));
  // D2 = (1/(2 N^2)) sum_{ij} k0 |vi-vj|^2 = (1/8)(2 pairs)(2.0)(1.0) = 0.5
  CHECK(r.d2 == Catch::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("finalize_records fills residuals and all flags pass on a quiet run") {
  PhaseGrid g = maxwellian_bump_grid(64, 64, -4, 4, -4, 4, 1.0, 0.5, 0.7, 0.3, 0.5);
  const double f0_sup = g.sup();
  ModelConfig cfg;
  cfg.kind = ModelKind::combined;
  cfg.beta = 1.0;
  cfg.sigma = 0.1;
  InteractionKernel kern{KernelKind::algebraic, 1.0, 1.0};
  ConfinementPotential pot{PotentialKind::quadratic, 1.0};
  RegularizationParams reg;
  KineticWorkspace ws;
  KineticRunParams rp;
  rp.t_end = 0.3;
  rp.output_every = 0.05;
  std::vector<DiagnosticsRecord> recs = run_kinetic(g, cfg, kern, pot, reg, rp);
  REQUIRE(recs.size() == 7);
  CHECK(std::isnan(recs[0].residual_energy));
  for (std::size_t k = 1; k < recs.size(); ++k) CHECK(recs[k].residual_energy >= 0.0);
  for (const auto& r : recs) {
    CHECK(r.flags.find("energy_ineq=pass") != std::string::npos);
    CHECK(r.flags.find("entropy_env=pass") != std::string::npos);
    CHECK(r.flags.find("linf=pass") != std::string::npos);
    CHECK(r.flags.find("cauchy=pass") != std::string::npos);
    CHECK(r.flags.find("fail") == std::string::npos);
  }
  CHECK(recs[0].flags.find("entropy_ineq=na") != std::string::npos);
  CHECK(recs[1].flags.find("entropy_ineq=pass") != std::string::npos);
  CHECK(f0_sup > 0.0);
}

TEST_CASE("moment norms evaluate the requested exponent list") {
  MomentFields m;
  m.rho = {1.0, 2.0, 3.0};
  m.j = {0.5, -0.5, 1.0};
  const double dx = 0.1;
  std::vector<double> nr = moment_norms(m, dx, false, {1.0, 2.0});
  CHECK(nr[0] == Catch::Approx(0.6).epsilon(1e-14));
  CHECK(nr[1] == Catch::Approx(std::sqrt(0.1 * 14.0)).epsilon(1e-14));
  std::vector<double> nj = moment_norms(m, dx, true, {1.0});
  CHECK(nj[0] == Catch::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("mt energy envelope: equality at t=0, rejects crossings") {
  std::vector<DiagnosticsRecord> recs(3);
  const double C = 0.5, e0 = 2.0;
  for (int k = 0; k < 3; ++k) {
    recs[k].t = 0.4 * k;
    recs[k].energy = e0 * std::exp(C * recs[k].t);  // exactly on the envelope
  }
  CHECK(check_mt_energy(recs, C, 1e-12));
  recs[1].energy *= 1.001;
  CHECK_FALSE(check_mt_energy(recs, C, 1e-12));
  recs[1].energy = 0.1;  // decay far below: fine
  recs[2].energy = 0.05;
  CHECK(check_mt_energy(recs, C, 0.0));
  CHECK_FALSE(check_mt_energy(recs, -1.0, 0.0));
}
