// io.hpp -- plain-text output: diagnostics CSV, grid snapshots, particle
// state dumps.  All numbers are written with %.17g so a read-back reproduces
// the doubles bit-exactly (NaN round-trips as NaN).

#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "particles.hpp"
#include "phase_grid.hpp"

namespace kinflock {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "t,M,P,E,F,D1,D2,D_u,residual_energy,rhs_entropy,flux_boundary,sup_f,"
    "lp_rho_2,lp_j_1_4,flags";

inline void write_records_csv(const std::string& path,
                              const std::vector<DiagnosticsRecord>& recs) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(fp, "%s\n", kCsvHeader);
  for (const DiagnosticsRecord& r : recs) {
    const double cols[14] = {r.t,          r.mass,          r.momentum,      r.energy,
                             r.entropy,    r.d1,            r.d2,            r.du,
                             r.residual_energy, r.entropy_rhs, r.flux_boundary, r.sup_f,
                             r.lp_rho_2,   r.lp_j_14};
    for (int c = 0; c < 14; ++c) std::fprintf(fp, "%s%.17g", c ? "," : "", cols[c]);
    std::fprintf(fp, ",%s\n", r.flags.c_str());
  }
  std::fclose(fp);
}

inline std::vector<DiagnosticsRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("bad records header in " + path);
  std::vector<DiagnosticsRecord> recs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double cols[14];
    for (int c = 0; c < 14; ++c) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("short record row in " + path);
      cols[c] = std::strtod(cell.c_str(), nullptr);
    }
    DiagnosticsRecord r;
    r.t = cols[0];
    r.mass = cols[1];
    r.momentum = cols[2];
    r.energy = cols[3];
    r.entropy = cols[4];
    r.d1 = cols[5];
    r.d2 = cols[6];
    r.du = cols[7];
    r.residual_energy = cols[8];
    r.entropy_rhs = cols[9];
    r.flux_boundary = cols[10];
    r.sup_f = cols[11];
    r.lp_rho_2 = cols[12];
    r.lp_j_14 = cols[13];
    std::getline(ss, r.flags);  // remainder (flags contain ';', never ',')
    recs.push_back(std::move(r));
  }
  return recs;
}

// snapshot: small text header, then Nx*Nv values one per line, v fastest
inline void write_grid_snapshot(const std::string& path, const PhaseGrid& g, double t) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(fp, "kinflock-grid 1\n");
  std::fprintf(fp, "t %.17g\n", t);
  std::fprintf(fp, "n %d %d\n", g.Nx, g.Nv);
  std::fprintf(fp, "x %.17g %.17g\n", g.x_min, g.x_max);
  std::fprintf(fp, "v %.17g %.17g\n", g.v_min, g.v_max);
  for (double q : g.f) std::fprintf(fp, "%.17g\n", q);
  std::fclose(fp);
}

struct GridSnapshot {
  double t = 0.0;
  PhaseGrid grid;
};

inline GridSnapshot read_grid_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "kinflock-grid" || version != 1)
    throw std::runtime_error("bad snapshot header in " + path);
  double t, x0, x1, v0, v1;
  int nx, nv;
  std::string key;
  in >> key >> t;
  in >> key >> nx >> nv;
  in >> key >> x0 >> x1;
  in >> key >> v0 >> v1;
  if (!in) throw std::runtime_error("truncated snapshot header in " + path);
  GridSnapshot s{t, PhaseGrid(nx, nv, x0, x1, v0, v1)};
  for (double& q : s.grid.f)
    if (!(in >> q)) throw std::runtime_error("truncated snapshot data in " + path);
  return s;
}

inline void write_particles(const std::string& path, const ParticleEnsemble& ens, double t) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(fp, "kinflock-particles 1\n");
  std::fprintf(fp, "t %.17g\n", t);
  std::fprintf(fp, "n %d %d\n", ens.N, ens.dim);
  for (int i = 0; i < ens.N; ++i) {
    for (int c = 0; c < ens.dim; ++c)
      std::fprintf(fp, "%s%.17g", c ? " " : "", ens.x[(std::size_t)i * ens.dim + c]);
    for (int c = 0; c < ens.dim; ++c)
      std::fprintf(fp, " %.17g", ens.v[(std::size_t)i * ens.dim + c]);
    std::fprintf(fp, "\n");
  }
  std::fclose(fp);
}

struct ParticleSnapshot {
  double t = 0.0;
  ParticleEnsemble ens;
};

inline ParticleSnapshot read_particles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "kinflock-particles" || version != 1)
    throw std::runtime_error("bad particle header in " + path);
  std::string key;
  double t;
  int n, dim;
  in >> key >> t >> key >> n >> dim;
  if (!in) throw std::runtime_error("truncated particle header in " + path);
  ParticleSnapshot s{t, ParticleEnsemble(n, dim)};
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c)
      if (!(in >> s.ens.x[(std::size_t)i * dim + c]))
        throw std::runtime_error("truncated particle data in " + path);
    for (int c = 0; c < dim; ++c)
      if (!(in >> s.ens.v[(std::size_t)i * dim + c]))
        throw std::runtime_error("truncated particle data in " + path);
  }
  return s;
}

}  // namespace kinflock
