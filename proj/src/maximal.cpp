#include <cmath>
#include <cstdint>
#include <vector>

#include "dclab/operators.hpp"

namespace dclab::operators {

namespace {

//! Inclusive prefix sums of |g| with one layer of padding: P(i,j,k) holds the
//! sum over cells [0,i) x [0,j) x [0,k).
std::vector<Real> prefix_abs(const ScalarField& g, int nx, int ny, int nz) {
  std::vector<Real> P(static_cast<size_t>(nx + 1) * (ny + 1) * (nz + 1), 0.0);
  auto at = [&](int i, int j, int k) -> Real& {
    return P[(static_cast<size_t>(k) * (ny + 1) + j) * (nx + 1) + i];
  };
  for (int k = 1; k <= nz; ++k)
    for (int j = 1; j <= ny; ++j)
      for (int i = 1; i <= nx; ++i)
        at(i, j, k) = std::abs(g.a(i - 1, j - 1, k - 1)) + at(i - 1, j, k) + at(i, j - 1, k) +
                      at(i, j, k - 1) - at(i - 1, j - 1, k) - at(i - 1, j, k - 1) -
                      at(i, j - 1, k - 1) + at(i - 1, j - 1, k - 1);
  return P;
}

}  // namespace

ScalarField maximal_function(const ScalarField& g) {
  const Grid& gr = g.grid;
  const int nx = gr.n[0], ny = gr.n[1], nz = gr.n[2];
  auto P = prefix_abs(g, nx, ny, nz);
  auto box_sum = [&](int i0, int i1, int j0, int j1, int k0, int k1) {
    // clamp to the grid; cells outside contribute zero
    i0 = std::max(i0, 0);
    j0 = std::max(j0, 0);
    k0 = std::max(k0, 0);
    i1 = std::min(i1, nx - 1);
    j1 = std::min(j1, ny - 1);
    k1 = std::min(k1, nz - 1);
    if (i0 > i1 || j0 > j1 || k0 > k1) return 0.0;
    auto at = [&](int i, int j, int k) {
      return P[(static_cast<size_t>(k) * (ny + 1) + j) * (nx + 1) + i];
    };
    return at(i1 + 1, j1 + 1, k1 + 1) - at(i0, j1 + 1, k1 + 1) - at(i1 + 1, j0, k1 + 1) -
           at(i1 + 1, j1 + 1, k0) + at(i0, j0, k1 + 1) + at(i0, j1 + 1, k0) +
           at(i1 + 1, j0, k0) - at(i0, j0, k0);
  };

  int nmax = std::max(nx, std::max(ny, nz));
  std::vector<int> radii;
  for (int m = 0;; ++m) {
    int r = (1 << m) - 1;
    radii.push_back(r);
    if (r >= nmax) break;
  }

  ScalarField out(gr);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        Real best = 0;
        for (int r : radii) {
          Real denom = std::pow(2.0 * r + 1, 3);
          Real avg = box_sum(i - r, i + r, j - r, j + r, k - r, k + r) / denom;
          best = std::max(best, avg);
        }
        out.a(i, j, k) = best;
      }
  return out;
}

}  // namespace dclab::operators
