// cell_list.hpp -- uniform spatial binning for compact-support pair sums.
//
// Bins have edge length = interaction radius, so all partners of a particle
// sit in its own or directly adjacent bins.  Pair visits are ordered (i < j,
// deterministic bin sweep) so floating-point accumulations are reproducible.

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace kinflock {

struct ParticleEnsemble;  // fwd (particles.hpp)

namespace detail {

struct BinGrid {
  int dim = 1;
  double cell = 1.0;
  double lo[3] = {0, 0, 0};
  int n[3] = {1, 1, 1};
  std::vector<std::vector<int>> bins;  // dense, index = ((iz*ny)+iy)*nx+ix

  int flat(const int* c) const {
    int idx = 0;
    for (int k = dim - 1; k >= 0; --k) idx = idx * n[k] + c[k];
    return idx;
  }
};

// build bins over the bounding box of the positions
inline BinGrid build_bins(const std::vector<double>& x, int N, int dim, double radius) {
  BinGrid g;
  g.dim = dim;
  g.cell = radius;
  double hi[3];
  for (int c = 0; c < dim; ++c) {
    g.lo[c] = x[c];
    hi[c] = x[c];
  }
  for (int i = 1; i < N; ++i)
    for (int c = 0; c < dim; ++c) {
      const double xc = x[i * dim + c];
      if (xc < g.lo[c]) g.lo[c] = xc;
      if (xc > hi[c]) hi[c] = xc;
    }
  std::size_t total = 1;
  for (int c = 0; c < dim; ++c) {
    g.n[c] = 1 + (int)((hi[c] - g.lo[c]) / radius);
    total *= (std::size_t)g.n[c];
  }
  if (total > (std::size_t)1 << 24) {  // bin table would be huge: caller falls back
    BinGrid sentinel;
    sentinel.n[0] = 0;
    return sentinel;
  }
  g.bins.assign(total, {});
  for (int i = 0; i < N; ++i) {
    int c[3] = {0, 0, 0};
    for (int k = 0; k < dim; ++k) {
      c[k] = (int)((x[i * dim + k] - g.lo[k]) / radius);
      if (c[k] >= g.n[k]) c[k] = g.n[k] - 1;
    }
    g.bins[g.flat(c)].push_back(i);
  }
  return g;
}

}  // namespace detail

// Visit every unordered pair with |x_i - x_j| <= radius (inclusive), i < j.
// Callback signature: f(int i, int j, double r2).
template <class F>
void for_each_pair_within_naive(const std::vector<double>& x, int N, int dim, double radius, F&& f) {
  const double r2max = radius * radius;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      double r2 = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double d = x[i * dim + c] - x[j * dim + c];
        r2 += d * d;
      }
      if (r2 <= r2max) f(i, j, r2);
    }
}

template <class F>
void for_each_pair_within(const std::vector<double>& x, int N, int dim, double radius, F&& f) {
  if (N < 2) return;
  const detail::BinGrid g = detail::build_bins(x, N, dim, radius);
  if (g.n[0] == 0) {  // degenerate box (bin table would be huge): brute force
    for_each_pair_within_naive(x, N, dim, radius, f);
    return;
  }
  const double r2max = radius * radius;
  auto pair_check = [&](int i, int j, bool ordered) {
    // ordered=false: emit with the smaller index first
    if (!ordered && i > j) std::swap(i, j);
    double r2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double d = x[i * dim + c] - x[j * dim + c];
      r2 += d * d;
    }
    if (r2 <= r2max) f(i, j, r2);
  };
  int c[3];
  for (int iz = 0; iz < (dim > 2 ? g.n[2] : 1); ++iz)
    for (int iy = 0; iy < (dim > 1 ? g.n[1] : 1); ++iy)
      for (int ix = 0; ix < g.n[0]; ++ix) {
        c[0] = ix; c[1] = iy; c[2] = iz;
        const auto& home = g.bins[g.flat(c)];
        if (home.empty()) continue;
        // pairs inside the home bin
        for (std::size_t a = 0; a + 1 < home.size(); ++a)
          for (std::size_t b = a + 1; b < home.size(); ++b)
            pair_check(home[a], home[b], home[a] < home[b]);
        // forward half-stencil of neighbor bins (no double visits)
        for (int dz = (dim > 2 ? -1 : 0); dz <= (dim > 2 ? 1 : 0); ++dz)
          for (int dy = (dim > 1 ? -1 : 0); dy <= (dim > 1 ? 1 : 0); ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              if (dz < 0 || (dz == 0 && dy < 0) || (dz == 0 && dy == 0 && dx <= 0)) continue;
              int nb[3] = {ix + dx, iy + dy, iz + dz};
              bool ok = true;
              for (int k = 0; k < dim; ++k)
                if (nb[k] < 0 || nb[k] >= g.n[k]) ok = false;
              if (!ok) continue;
              const auto& other = g.bins[g.flat(nb)];
              for (int i : home)
                for (int j : other) pair_check(i, j, false);
            }
      }
}

}  // namespace kinflock
