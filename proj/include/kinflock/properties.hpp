// properties.hpp -- named invariant checks over every module, run by the CLI
// `check` command.  Each property exercises one structural guarantee at small
// problem sizes; the whole suite runs in well under a minute.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cell_list.hpp"
#include "compare.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "driver.hpp"
#include "init.hpp"
#include "io.hpp"
#include "kernels.hpp"
#include "kinetic.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"
#include "rng.hpp"
#include "weak_form.hpp"

namespace kinflock {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string sci(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

}  // namespace detail

inline std::vector<PropertyResult> run_property_suite() {
  using detail::sci;
  std::vector<PropertyResult> out;
  auto prop = [&out](const char* name, const std::function<void(PropertyResult&)>& fn) {
    PropertyResult r;
    r.name = name;
    try {
      fn(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  };

  // ---- kernels ------------------------------------------------------------

  prop("kernel symmetry, positivity, uniform bound", [](PropertyResult& r) {
    InteractionKernel ks[3];
    ks[0] = {KernelKind::constant, 0.7};
    ks[1] = {KernelKind::algebraic, 1.3, 0.8};
    ks[2] = {KernelKind::compact, 2.0, 1.0, 0.8, 1.6};
    UniformStream s{99, 1};
    double worst = 0.0;
    bool ok = true;
    for (const auto& k : ks)
      for (int t = 0; t < 200; ++t) {
        const double x = -5.0 + 10.0 * s.next(), y = -5.0 + 10.0 * s.next();
        const double a = k.eval1(x, y), b = k.eval1(y, x);
        ok = ok && a == b && a >= 0.0 && a <= k.bound();
        worst = std::max(worst, std::abs(a - b));
      }
    ok = ok && ks[2].eval1(0.0, 1.6) == 0.0 && ks[2].eval1(0.0, 4.0) == 0.0;
    r.pass = ok;
    r.detail = "600 random pairs, 3 kinds; max asymmetry " + sci(worst);
  });

  prop("normalized-alignment growth constant", [](PropertyResult& r) {
    InteractionKernel k{KernelKind::compact, 1.0, 1.0, 1.0, 2.0};
    const double b = mt_normalization_bound(k, 1);
    const double expect = 8.0 / 0.5625;  // ceil(4R/r) / (1 - r^2/R^2)^2
    bool threw = false;
    try {
      mt_normalization_bound(InteractionKernel{KernelKind::algebraic, 1.0}, 1);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    r.pass = std::abs(b - expect) <= 1e-12 * expect && b >= 1.0 && threw;
    r.detail = "compact r=1, R=2: C = " + sci(b) + "; non-compact kinds rejected";
  });

  // ---- velocity flux ------------------------------------------------------

  prop("fitted flux coefficients: sign, drift difference, series branch", [](PropertyResult& r) {
    UniformStream s{3, 5};
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 300; ++t) {
      const double alpha = -6.0 + 12.0 * s.next();
      const double sigma = 0.01 + s.next();
      const double dv = 0.02 + 0.2 * s.next();
      double c1, c2;
      fitted_flux_coeffs(alpha, sigma, dv, c1, c2);
      ok = ok && c1 >= 0.0 && c2 >= 0.0;
      worst = std::max(worst, std::abs((c1 - c2) - alpha) / std::max(1.0, c1 + c2));
    }
    double c1, c2;
    fitted_flux_coeffs(1.5, 0.0, 0.1, c1, c2);
    ok = ok && c1 == 1.5 && c2 == 0.0;
    fitted_flux_coeffs(-2.0, 0.0, 0.1, c1, c2);
    ok = ok && c1 == 0.0 && c2 == 2.0;
    // series branch agrees with the exact formula at the same P (just under the switch)
    double c1a, c2a;
    fitted_flux_coeffs(0.99e-5, 1.0, 0.1, c1a, c2a);  // P = 0.99e-6: series branch
    const double s0 = 1.0 / 0.1, P0 = 0.99e-6;
    const double c1x = s0 * P0 / (-std::expm1(-P0)), c2x = s0 * P0 / std::expm1(P0);
    ok = ok && std::abs(c1a - c1x) <= 1e-12 * c1x && std::abs(c2a - c2x) <= 1e-12 * c2x;
    r.pass = ok && worst <= 1e-12;
    r.detail = "c1 - c2 = drift to " + sci(worst) + "; upwind at sigma=0; series continuous";
  });

  prop("x-advection: limiter keeps f >= 0 and mass exact", [](PropertyResult& r) {
    PhaseGrid g(64, 16, -4, 4, -2, 2);
    for (int i = 0; i < g.Nx; ++i)
      for (int j = 0; j < g.Nv; ++j) g.at(i, j) = std::abs(g.xc(i)) < 1.0 ? 1.0 : 0.0;
    const double m0 = g.mass();
    KineticWorkspace ws;
    const double dt = 0.8 * g.dx / 2.0;  // CFL 0.8 at the largest |v|
    for (int n = 0; n < 30; ++n) detail::advect_x(g, dt, ws);
    const double drift = std::abs(g.mass() - m0) / m0;
    r.pass = g.min_value() >= 0.0 && drift <= 1e-13;
    r.detail = "square wave, 30 sweeps: min f = " + sci(g.min_value()) + ", mass drift " +
               sci(drift);
  });

  // ---- kinetic solver (one shared default-config run) ---------------------

  {
    RunConfig rc;
    rc.grid_Nx = 48;
    rc.grid_Nv = 48;
    rc.run_t_end = 0.3;
    rc.run_output_every = 0.1;
    PhaseGrid g = build_initial_grid(rc);
    const double m0 = g.mass();
    double fmin = g.min_value();
    KineticRunParams krp;
    krp.t_end = rc.run_t_end;
    krp.output_every = rc.run_output_every;
    std::vector<DiagnosticsRecord> recs =
        run_kinetic(g, make_model(rc), make_kernel(rc), make_potential(rc), make_reg(rc), krp,
                    [&fmin](const DiagnosticsRecord&, const PhaseGrid& gg) {
                      fmin = std::min(fmin, gg.min_value());
                    });

    prop("kinetic run: exact mass conservation", [&](PropertyResult& r) {
      double worst = 0.0;
      for (const auto& rec : recs) worst = std::max(worst, std::abs(rec.mass - m0) / m0);
      r.pass = worst <= 1e-12;
      r.detail = "48x48 default run to t=0.3: max relative drift " + sci(worst);
    });

    prop("kinetic run: f stays nonnegative", [&](PropertyResult& r) {
      r.pass = fmin >= 0.0;
      r.detail = "min over all outputs " + sci(fmin);
    });

    prop("kinetic run: balance and bound flags all pass", [&](PropertyResult& r) {
      bool ok = true;
      for (const auto& rec : recs) ok = ok && rec.flags.find("fail") == std::string::npos;
      r.pass = ok;
      r.detail = ok ? "energy/entropy/sup/moment flags clean on " +
                          std::to_string(recs.size()) + " records"
                    : "flag failure: " + recs.back().flags;
    });
  }

  prop("kinetic run: round-off momentum for symmetric data", [](PropertyResult& r) {
    PhaseGrid g = counter_stream_grid(48, 48, -4, 4, -4, 4, 1.0, 1.0, 0.4, 0.8, 0.3);
    ModelConfig cfg;
    cfg.kind = ModelKind::cucker_smale;
    cfg.sigma = 0.0;
    InteractionKernel kern{KernelKind::constant, 1.0};
    ConfinementPotential pot{PotentialKind::none, 0.0};
    KineticRunParams krp;
    krp.t_end = 0.3;
    krp.output_every = 0.1;
    std::vector<DiagnosticsRecord> recs = run_kinetic(g, cfg, kern, pot, {}, krp);
    double worst = 0.0;
    for (const auto& rec : recs) worst = std::max(worst, std::abs(rec.momentum));
    r.pass = worst <= 1e-8;
    r.detail = "counter-streams, no potential: max |momentum| " + sci(worst);
  });

  prop("kinetic run: energy decays without diffusion or propulsion", [](PropertyResult& r) {
    PhaseGrid g = maxwellian_bump_grid(48, 48, -4, 4, -4, 4, 1.0, 0.5, 0.7, 0.3, 0.5);
    ModelConfig cfg;
    cfg.kind = ModelKind::combined;
    cfg.sigma = 0.0;
    InteractionKernel kern{KernelKind::algebraic, 1.0, 1.0};
    ConfinementPotential pot{PotentialKind::quadratic, 1.0};
    KineticRunParams krp;
    krp.t_end = 0.4;
    krp.output_every = 0.1;
    std::vector<DiagnosticsRecord> recs = run_kinetic(g, cfg, kern, pot, {}, krp);
    bool ok = true;
    for (std::size_t k = 1; k < recs.size(); ++k)
      ok = ok && recs[k].energy <= recs[k - 1].energy + 1e-10 * std::abs(recs[0].energy);
    r.pass = ok;
    r.detail = "E: " + sci(recs.front().energy) + " -> " + sci(recs.back().energy) +
               " over " + std::to_string(recs.size()) + " outputs";
  });

  prop("local equilibrium is a numerical fixed point", [](PropertyResult& r) {
    ConfinementPotential pot{PotentialKind::quadratic, 1.0};
    PhaseGrid g = steady_maxwellian_grid(64, 64, -4, 4, -4, 4, 1.0, 0.5, pot);
    const PhaseGrid g0 = g;
    ModelConfig cfg;
    cfg.kind = ModelKind::local_alignment;
    cfg.beta = 1.0;
    cfg.sigma = 0.5;
    InteractionKernel kern{KernelKind::constant, 0.0};
    KineticRunParams krp;
    krp.t_end = 0.5;
    krp.output_every = 0.25;
    run_kinetic(g, cfg, kern, pot, {}, krp);
    double l1 = 0.0;
    for (std::size_t k = 0; k < g.f.size(); ++k) l1 += std::abs(g.f[k] - g0.f[k]);
    l1 *= g.cell_measure();
    r.pass = l1 <= 1e-2;
    r.detail = "64x64 Maxwellian, t=0.5: L1 drift " + sci(l1);
  });

  // ---- moment fields ------------------------------------------------------

  prop("nonlocal coefficients equal the direct double sum", [](PropertyResult& r) {
    PhaseGrid g(12, 10, -2, 2, -3, 3);
    UniformStream s{7, 2};
    for (double& q : g.f) q = s.next();
    InteractionKernel kern{KernelKind::algebraic, 1.2, 0.6};
    const MomentFields m = compute_moments(g);
    const NonlocalField n = nonlocal_field(g, m, kern);
    double worst = 0.0;
    for (int i = 0; i < g.Nx; ++i) {
      double A = 0.0, B = 0.0;
      for (int k = 0; k < g.Nx; ++k) {
        A += kern.eval1(g.xc(i), g.xc(k)) * m.j[k] * g.dx;
        B += kern.eval1(g.xc(i), g.xc(k)) * m.rho[k] * g.dx;
      }
      worst = std::max(worst, std::abs(A - n.A[i]) + std::abs(B - n.B[i]));
    }
    r.pass = worst <= 1e-12;
    r.detail = "12x10 random field: max |table - direct| " + sci(worst);
  });

  prop("mean-velocity fields obey the speed bound", [](PropertyResult& r) {
    PhaseGrid g(24, 20, -3, 3, -2.5, 2.5);
    UniformStream s{11, 4};
    for (double& q : g.f) q = s.next() < 0.3 ? 0.0 : s.next();  // holes included
    const MomentFields m = compute_moments(g);
    const double vmax = std::max(std::abs(g.v_min), std::abs(g.v_max));
    RegularizationParams reg;
    bool ok = true;
    double worst = 0.0;
    for (const std::vector<double>& u :
         {compute_u(m, reg.eps_vac_abs(m)), compute_u_delta(m, 1e-3),
          mt_field(g, m, InteractionKernel{KernelKind::compact, 1.0, 1.0, 0.5, 1.0},
                   reg.eps_vac_abs(m))})
      for (double q : u) {
        ok = ok && std::abs(q) <= vmax;
        worst = std::max(worst, std::abs(q));
      }
    std::vector<double> u = compute_u(m, reg.eps_vac_abs(m));
    truncate_field(u, 0.5);
    for (double q : u) ok = ok && std::abs(q) <= 0.5;
    r.pass = ok;
    r.detail = "plain/floored/normalized fields: sup |u| = " + sci(worst) + " <= " + sci(vmax) +
               "; cutoff at 0.5 enforced";
  });

  // ---- particle system ----------------------------------------------------

  prop("particles: symmetric alignment conserves momentum", [](PropertyResult& r) {
    ParticleEnsemble ens = two_group_ensemble(300, 1, 0.5, 2.0, 0.6, -0.4, 0.2, 0.1, 77);
    ModelConfig cfg;
    cfg.kind = ModelKind::cucker_smale;
    cfg.sigma = 0.0;
    InteractionKernel kern{KernelKind::algebraic, 1.0, 1.0};
    ConfinementPotential pot{PotentialKind::none, 0.0};
    double p0 = 0.0, scale = 0.0;
    for (double v : ens.v) {
      p0 += v;
      scale += std::abs(v);
    }
    for (int n = 0; n < 500; ++n) step_particles(ens, cfg, kern, pot, 1e-3, 77, n);
    double p1 = 0.0;
    for (double v : ens.v) p1 += v;
    const double drift = std::abs(p1 - p0) / scale;
    r.pass = drift <= 1e-12;
    r.detail = "N=300 pair model, 500 steps: relative momentum drift " + sci(drift);
  });

  prop("particles: velocity diameter contracts under full communication", [](PropertyResult& r) {
    ParticleEnsemble ens = two_group_ensemble(200, 1, 0.5, 1.0, 0.8, -0.8, 0.3, 0.1, 5);
    ModelConfig cfg;
    cfg.kind = ModelKind::cucker_smale;
    cfg.sigma = 0.0;
    InteractionKernel kern{KernelKind::constant, 1.0};
    ConfinementPotential pot{PotentialKind::none, 0.0};
    auto diam = [&ens] {
      auto [lo, hi] = std::minmax_element(ens.v.begin(), ens.v.end());
      return *hi - *lo;
    };
    const double d0 = diam();
    bool ok = true;
    double prev = d0;
    for (int n = 0; n < 400; ++n) {
      step_particles(ens, cfg, kern, pot, 1e-3, 5, n);
      if (n % 50 == 49) {
        const double d = diam();
        ok = ok && d < prev;
        prev = d;
      }
    }
    r.pass = ok && prev < 0.7 * d0;
    r.detail = "diameter " + sci(d0) + " -> " + sci(prev) + " monotonically";
  });

  prop("particles: energy decays without diffusion", [](PropertyResult& r) {
    ParticleEnsemble ens = two_group_ensemble(200, 1, 0.4, 1.5, 0.7, -0.5, 0.25, 0.1, 13);
    ModelConfig cfg;
    cfg.kind = ModelKind::cucker_smale;
    cfg.sigma = 0.0;
    InteractionKernel kern{KernelKind::algebraic, 1.0, 0.5};
    ConfinementPotential pot{PotentialKind::quadratic, 1.0};
    double prev = particle_energy(ens, pot);
    const double e0 = prev;
    bool ok = true;
    for (int n = 0; n < 400; ++n) {
      step_particles(ens, cfg, kern, pot, 1e-3, 13, n);
      if (n % 50 == 49) {
        const double e = particle_energy(ens, pot);
        ok = ok && e <= prev + 1e-10 * e0;
        prev = e;
      }
    }
    r.pass = ok;
    r.detail = "E: " + sci(e0) + " -> " + sci(prev);
  });

  prop("particles: normalized weights break momentum conservation", [](PropertyResult& r) {
    ParticleEnsemble ens = two_group_ensemble(200, 1, 0.3, 2.0, 0.6, -0.6, 0.15, 0.05, 21);
    ModelConfig cfg;
    cfg.kind = ModelKind::motsch_tadmor;
    cfg.sigma = 0.0;
    InteractionKernel kern{KernelKind::algebraic, 1.0, 1.0};
    ConfinementPotential pot{PotentialKind::none, 0.0};
    double p0 = 0.0;
    for (double v : ens.v) p0 += v;
    for (int n = 0; n < 500; ++n) step_particles(ens, cfg, kern, pot, 1e-3, 21, n);
    double p1 = 0.0;
    for (double v : ens.v) p1 += v;
    const double drift = std::abs(p1 - p0) / ens.N;
    r.pass = drift > 1e-6;
    r.detail = "uneven two-group mean-velocity drift " + sci(drift) + " (> 1e-06 expected)";
  });

  prop("neighbor bins visit exactly the close pairs", [](PropertyResult& r) {
    UniformStream s{31, 9};
    const int N = 500;
    std::vector<double> x(N);
    for (double& q : x) q = 10.0 * s.next();
    auto collect = [&x, N](bool naive) {
      std::vector<std::pair<int, int>> pairs;
      double sum = 0.0;
      auto f = [&pairs, &sum](int i, int j, double r2) {
        pairs.emplace_back(i, j);
        sum += r2;
      };
      if (naive)
        for_each_pair_within_naive(x, N, 1, 1.3, f);
      else
        for_each_pair_within(x, N, 1, 1.3, f);
      std::sort(pairs.begin(), pairs.end());
      return std::make_pair(pairs, sum);
    };
    auto [pa, sa] = collect(false);
    auto [pb, sb] = collect(true);
    r.pass = pa == pb && std::abs(sa - sb) <= 1e-12 * std::max(1.0, sb);
    r.detail = std::to_string(pa.size()) + " pairs at N=500, identical sets both ways";
  });

  // ---- randomness and sampling -------------------------------------------

  prop("counter rng: reproducible, stream-separated, well-scaled", [](PropertyResult& r) {
    bool ok = true;
    for (int k = 0; k < 50; ++k)
      ok = ok && counter_hash(42, 3, k) == counter_hash(42, 3, k) &&
           counter_hash(42, 3, k) != counter_hash(42, 4, k);
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
      const double z = normal_draw(1234, 0, k);
      mean += z;
      var += z * z;
      const double u = u01(counter_hash(9, 9, k));
      ok = ok && u >= 0.0 && u < 1.0;
    }
    mean /= n;
    var = var / n - mean * mean;
    r.pass = ok && std::abs(mean) <= 0.03 && std::abs(var - 1.0) <= 0.05;
    r.detail = "normal draws: mean " + sci(mean) + ", var " + sci(var);
  });

  prop("grid sampler reproduces the profile's moments", [](PropertyResult& r) {
    PhaseGrid g = maxwellian_bump_grid(64, 64, -4, 4, -4, 4, 1.0, 0.5, 0.7, 0.3, 0.5);
    const int N = 50000;
    ParticleEnsemble ens = sample_from_grid(g, N, 2718);
    double mx = 0.0, mv = 0.0;
    for (int k = 0; k < N; ++k) {
      mx += ens.x[k];
      mv += ens.v[k];
    }
    mx /= N;
    mv /= N;
    // grid-side means
    const MomentFields m = compute_moments(g);
    double gx = 0.0, gv = 0.0, mass = 0.0;
    for (int i = 0; i < g.Nx; ++i) {
      gx += g.xc(i) * m.rho[i];
      gv += m.j[i];
      mass += m.rho[i];
    }
    gx /= mass;
    gv /= mass;
    const double tolx = 5.0 * 0.7 / std::sqrt((double)N), tolv = 5.0 * 0.5 / std::sqrt((double)N);
    r.pass = std::abs(mx - gx) <= tolx && std::abs(mv - gv) <= tolv;
    r.detail = "mean x err " + sci(std::abs(mx - gx)) + " (tol " + sci(tolx) + "), mean v err " +
               sci(std::abs(mv - gv)) + " (tol " + sci(tolv) + ")";
  });

  prop("mollified particle moments carry exact mass", [](PropertyResult& r) {
    PhaseGrid g = maxwellian_bump_grid(64, 64, -4, 4, -4, 4, 1.0, 0.0, 0.6, 0.2, 0.4);
    ParticleEnsemble ens = sample_from_grid(g, 5000, 99);
    SmoothedMoments s = smooth_particle_moments(ens, g.Nx, g.x_min, g.dx, 0.1, g.mass());
    double m = 0.0;
    for (double q : s.rho) m += q;
    m *= g.dx;
    const double err = std::abs(m - g.mass());
    r.pass = err <= 1e-12;
    r.detail = "5000 stamps: deposited mass error " + sci(err);
  });

  // ---- weak form ----------------------------------------------------------

  prop("test functions are C^2 with compact support", [](PropertyResult& r) {
    bool ok = bump1(1.0) == 0.0 && bump1_d(1.0) == 0.0 && bump1_dd(1.0) == 0.0 &&
              bump1(-1.0) == 0.0 && bump1_d(-1.0) == 0.0 && bump1_dd(-1.0) == 0.0;
    double worst = 0.0;
    const double h = 1e-4;  // second differences drown in round-off below this
    for (double s = -0.9; s <= 0.95; s += 0.25) {
      const double fd1 = (bump1(s + h) - bump1(s - h)) / (2.0 * h);
      const double fd2 = (bump1(s + h) - 2.0 * bump1(s) + bump1(s - h)) / (h * h);
      worst = std::max({worst, std::abs(fd1 - bump1_d(s)), std::abs(fd2 - bump1_dd(s))});
    }
    r.pass = ok && worst <= 1e-6;
    r.detail = "edge values vanish to second order; max FD mismatch " + sci(worst);
  });

  prop("weak residual vanishes for frozen states", [](PropertyResult& r) {
    // f independent of t with zero drift and no transport under the bump:
    // residual reduces to -int f (psi_t + v psi_x) which Simpson kills in t
    // only if f evolves consistently; instead check the stronger exact case
    // f = 0 on the support of every test function.
    RunConfig rc;
    rc.grid_Nx = 32;
    rc.grid_Nv = 32;
    PhaseGrid g = build_initial_grid(rc);
    for (int i = 0; i < g.Nx; ++i)
      for (int j = 0; j < g.Nv; ++j)
        if (g.xc(i) > -3.7) g.at(i, j) = 0.0;  // family supports live in x > -3.6
    WeakResidualAccumulator acc(default_test_family(g, 0.2), make_model(rc), make_kernel(rc),
                                make_potential(rc), make_reg(rc));
    for (int k = 0; k <= 4; ++k) acc.sample(0.05 * k, g);
    double worst = 0.0;
    for (double q : acc.residuals()) worst = std::max(worst, std::abs(q));
    r.pass = worst == 0.0;
    r.detail = "max |residual| " + sci(worst) + " with f = 0 under every test function";
  });

  // ---- io and config ------------------------------------------------------

  prop("diagnostics csv round-trips bit-exactly", [](PropertyResult& r) {
    PhaseGrid g = maxwellian_bump_grid(32, 32, -4, 4, -4, 4, 1.0, 0.5, 0.7, 0.3, 0.5);
    KineticRunParams krp;
    krp.t_end = 0.1;
    krp.output_every = 0.05;
    RunConfig rc;
    std::vector<DiagnosticsRecord> recs =
        run_kinetic(g, make_model(rc), make_kernel(rc), make_potential(rc), make_reg(rc), krp);
    const std::string path = "/tmp/kinflock_prop_roundtrip.csv";
    write_records_csv(path, recs);
    std::vector<DiagnosticsRecord> back = read_records_csv(path);
    std::remove(path.c_str());
    bool ok = back.size() == recs.size();
    auto same = [](double a, double b) {
      return (std::isnan(a) && std::isnan(b)) || a == b;
    };
    for (std::size_t k = 0; ok && k < recs.size(); ++k)
      ok = same(back[k].t, recs[k].t) && same(back[k].mass, recs[k].mass) &&
           same(back[k].energy, recs[k].energy) && same(back[k].entropy, recs[k].entropy) &&
           same(back[k].d1, recs[k].d1) && same(back[k].d2, recs[k].d2) &&
           same(back[k].residual_energy, recs[k].residual_energy) &&
           back[k].flags == recs[k].flags;
    r.pass = ok;
    r.detail = std::to_string(recs.size()) + " records through write/read unchanged";
  });

  prop("config echo re-parses to the same state", [](PropertyResult& r) {
    RunConfig rc;
    config_set(rc, "model.kind", "motsch-tadmor");
    config_set(rc, "kernel.kind", "compact");
    config_set(rc, "run.dt", "0.002");
    config_set(rc, "reg.lambda", "25");
    const std::string text = effective_config_text(rc);
    const std::string path = "/tmp/kinflock_prop_echo.cfg";
    {
      std::FILE* fp = std::fopen(path.c_str(), "w");
      std::fwrite(text.data(), 1, text.size(), fp);
      std::fclose(fp);
    }
    RunConfig rc2;
    load_config_file(rc2, path);
    std::remove(path.c_str());
    r.pass = effective_config_text(rc2) == text;
    r.detail = "echo -> parse -> echo fixed point over " + std::to_string(text.size()) + " bytes";
  });

  return out;
}

// print one line per property; returns the number of failures
inline int report_properties(const std::vector<PropertyResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-55s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("properties: %d/%zu passed\n", (int)results.size() - failures, results.size());
  return failures;
}

}  // namespace kinflock
