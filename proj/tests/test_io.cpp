// Text output round-trips: the %.17g formatting, the diagnostics CSV, grid
// snapshots and particle dumps must reproduce doubles bit-exactly.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "kinflock/init.hpp"
#include "kinflock/io.hpp"
#include "kinflock/rng.hpp"

using namespace kinflock;

namespace {

std::string tmp_path(const char* name) {
  return std::string("kinflock_io_test_") + name;
}

bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

}  // namespace

TEST_CASE("format_double round-trips awkward values") {
  for (double v : {0.1, 1.0 / 3.0, 1e-308, 6.02214076e23, -0.0, 2.0,
                   0x1.fffffffffffffp-2, 1e300}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(std::isnan(std::strtod(format_double(kNaN).c_str(), nullptr)));
}

TEST_CASE("records CSV round-trip is bit-exact, header pinned") {
  std::vector<DiagnosticsRecord> recs(3);
  UniformStream us{4242, 60};
  for (std::size_t k = 0; k < recs.size(); ++k) {
    DiagnosticsRecord& r = recs[k];
    r.t = 0.05 * (double)k;
    r.mass = us.next();
    r.momentum = 2.0 * us.next() - 1.0;
    r.energy = us.next();
    r.entropy = us.next() - 0.5;
    r.d1 = us.next();
    r.d2 = us.next();
    r.du = us.next();
    r.residual_energy = k == 0 ? kNaN : us.next() * 1e-3;
    r.entropy_rhs = us.next();
    r.flux_boundary = us.next() * 1e-9;
    r.sup_f = us.next() + 0.5;
    r.lp_rho_2 = us.next();
    r.lp_j_14 = us.next();
    r.flags = k == 0 ? "" : "energy_ineq=pass;entropy_ineq=pass;linf=pass";
  }
  const std::string path = tmp_path("records.csv");
  write_records_csv(path, recs);

  // header is the documented schema
  {
    std::FILE* fp = std::fopen(path.c_str(), "r");
    REQUIRE(fp != nullptr);
    char line[256];
    REQUIRE(std::fgets(line, sizeof(line), fp) != nullptr);
    std::fclose(fp);
    CHECK(std::string(line) ==
          "t,M,P,E,F,D1,D2,D_u,residual_energy,rhs_entropy,flux_boundary,sup_f,"
          "lp_rho_2,lp_j_1_4,flags\n");
  }

  std::vector<DiagnosticsRecord> back = read_records_csv(path);
  REQUIRE(back.size() == recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    CHECK(same_double(back[k].t, recs[k].t));
    CHECK(same_double(back[k].mass, recs[k].mass));
    CHECK(same_double(back[k].momentum, recs[k].momentum));
    CHECK(same_double(back[k].energy, recs[k].energy));
    CHECK(same_double(back[k].entropy, recs[k].entropy));
    CHECK(same_double(back[k].d1, recs[k].d1));
    CHECK(same_double(back[k].d2, recs[k].d2));
    CHECK(same_double(back[k].du, recs[k].du));
    CHECK(same_double(back[k].residual_energy, recs[k].residual_energy));
    CHECK(same_double(back[k].entropy_rhs, recs[k].entropy_rhs));
    CHECK(same_double(back[k].flux_boundary, recs[k].flux_boundary));
    CHECK(same_double(back[k].sup_f, recs[k].sup_f));
    CHECK(same_double(back[k].lp_rho_2, recs[k].lp_rho_2));
    CHECK(same_double(back[k].lp_j_14, recs[k].lp_j_14));
    CHECK(back[k].flags == recs[k].flags);
  }
  std::remove(path.c_str());
}

TEST_CASE("grid snapshot round-trip is bit-exact") {
  PhaseGrid g = maxwellian_bump_grid(24, 16, -3, 3, -2.5, 2.5, 0.7, 0.1, 0.5, -0.2, 0.4);
  const std::string path = tmp_path("grid.txt");
  write_grid_snapshot(path, g, 0.375);
  GridSnapshot s = read_grid_snapshot(path);
  CHECK(s.t == 0.375);
  REQUIRE(s.grid.Nx == g.Nx);
  REQUIRE(s.grid.Nv == g.Nv);
  CHECK(s.grid.x_min == g.x_min);
  CHECK(s.grid.x_max == g.x_max);
  CHECK(s.grid.v_min == g.v_min);
  CHECK(s.grid.v_max == g.v_max);
  for (std::size_t k = 0; k < g.f.size(); ++k) CHECK(s.grid.f[k] == g.f[k]);
  std::remove(path.c_str());
}

TEST_CASE("particle dump round-trip is bit-exact") {
  double x0[3] = {0.1, -0.4, 0.0}, v0[3] = {0.3, 0.0, -0.1};
  ParticleEnsemble ens = gaussian_ensemble(37, 2, x0, 0.5, v0, 0.3, 999);
  const std::string path = tmp_path("particles.txt");
  write_particles(path, ens, 1.25);
  ParticleSnapshot s = read_particles(path);
  CHECK(s.t == 1.25);
  REQUIRE(s.ens.N == ens.N);
  REQUIRE(s.ens.dim == ens.dim);
  for (std::size_t k = 0; k < ens.x.size(); ++k) {
    CHECK(s.ens.x[k] == ens.x[k]);
    CHECK(s.ens.v[k] == ens.v[k]);
  }
  std::remove(path.c_str());
}

TEST_CASE("readers reject missing files and bad headers") {
  CHECK_THROWS_AS(read_records_csv("kinflock_io_nonexistent.csv"), std::runtime_error);
  CHECK_THROWS_AS(read_grid_snapshot("kinflock_io_nonexistent.txt"), std::runtime_error);
  CHECK_THROWS_AS(read_particles("kinflock_io_nonexistent.txt"), std::runtime_error);
  const std::string path = tmp_path("badheader.txt");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  REQUIRE(fp != nullptr);
  std::fprintf(fp, "something-else 1\n");
  std::fclose(fp);
  CHECK_THROWS_AS(read_grid_snapshot(path), std::runtime_error);
  CHECK_THROWS_AS(read_particles(path), std::runtime_error);
  CHECK_THROWS_AS(read_records_csv(path), std::runtime_error);
  std::remove(path.c_str());
}
