#include <cmath>
#include <functional>
#include <stdexcept>

#include "dclab/operators.hpp"

namespace dclab::operators {

namespace {

//! Signed vorticity vector gathered to the cell center by edge averaging.
std::array<Real, 3> edge_vector_at_cell(const StaggeredField& w, int i, int j, int k) {
  Real ax = 0.25 * (w.c[0](i, j, k) + w.c[0](i, j + 1, k) + w.c[0](i, j, k + 1) +
                    w.c[0](i, j + 1, k + 1));
  Real ay = 0.25 * (w.c[1](i, j, k) + w.c[1](i + 1, j, k) + w.c[1](i, j, k + 1) +
                    w.c[1](i + 1, j, k + 1));
  Real az = 0.25 * (w.c[2](i, j, k) + w.c[2](i + 1, j, k) + w.c[2](i, j + 1, k) +
                    w.c[2](i + 1, j + 1, k));
  return {ax, ay, az};
}

Real vec_norm(const std::array<Real, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

//! (kappa + |w|)^(p-2) w applied to a vector, continuously extended by 0 at
//! the degenerate point kappa = 0, w = 0, p < 2.
std::array<Real, 3> nonlinearity(Real p, Real kappa, const std::array<Real, 3>& w) {
  Real m = vec_norm(w);
  Real base = kappa + m;
  if (base == 0) return {0, 0, 0};
  Real s = std::pow(base, p - 2);
  return {s * w[0], s * w[1], s * w[2]};
}

Real gap_core(const StressParams& sp, const std::function<Real(int, int, int)>& dist,
              const StaggeredField& w1, const StaggeredField& w2) {
  validate(sp);
  if (w1.stag != Stag::edge || w2.stag != Stag::edge || !(w1.grid == w2.grid))
    throw std::invalid_argument("monotonicity_gap: edge fields on one grid required");
  const Grid& g = w1.grid;
  Real acc = 0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        auto a = edge_vector_at_cell(w1, i, j, k);
        auto b = edge_vector_at_cell(w2, i, j, k);
        auto sa = nonlinearity(sp.p, sp.kappa, a);
        auto sb = nonlinearity(sp.p, sp.kappa, b);
        Real d = dist(i, j, k);
        Real wgt = sp.alpha == 0 ? 1.0 : std::pow(d, sp.alpha);
        Real term = 0;
        for (int c = 0; c < 3; ++c) term += (sa[c] - sb[c]) * (a[c] - b[c]);
        acc += wgt * term;
      }
  return acc * g.cell_volume();
}

StaggeredField stress_core(const StressParams& sp, const geometry::PowerWeight& w,
                           const StaggeredField& source, const StaggeredField& omega,
                           Real dist_shift, Real mag_floor) {
  validate(sp);
  if (omega.stag != Stag::edge || source.stag != Stag::edge || !(source.grid == omega.grid))
    throw std::invalid_argument("stress: edge fields on one grid required");
  const Grid& g = omega.grid;

  // squared magnitude at cells, then averaged to each edge (adjacent cells in
  // range only, so boundary edges do not see artificial zero padding)
  ScalarField m2(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        auto a = edge_vector_at_cell(source, i, j, k);
        m2.a(i, j, k) = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
      }

  StaggeredField out(g, Stag::edge);
  for (int c = 0; c < 3; ++c) {
    auto sh = fields::stag_shape(Stag::edge, g.n, c);
    // the four cells around a c-edge differ from the edge index by 0/-1 in the
    // two transverse axes
    int a1 = (c + 1) % 3, a2 = (c + 2) % 3;
    for (int k = 0; k < sh[2]; ++k)
      for (int j = 0; j < sh[1]; ++j)
        for (int i = 0; i < sh[0]; ++i) {
          int idx[3] = {i, j, k};
          Real s = 0;
          int cnt = 0;
          for (int d1 = -1; d1 <= 0; ++d1)
            for (int d2 = -1; d2 <= 0; ++d2) {
              int cc[3] = {idx[0], idx[1], idx[2]};
              cc[a1] += d1;
              cc[a2] += d2;
              if (cc[0] < 0 || cc[1] < 0 || cc[2] < 0 || cc[0] >= g.n[0] || cc[1] >= g.n[1] ||
                  cc[2] >= g.n[2])
                continue;
              s += m2.a(cc[0], cc[1], cc[2]);
              ++cnt;
            }
          Real mag = cnt ? std::sqrt(s / cnt) : 0.0;
          Real base = sp.kappa + mag_floor + mag;
          Real factor = base == 0 ? 0.0 : std::pow(base, sp.p - 2);
          if (sp.alpha != 0) {
            auto x = fields::stag_pos(g, Stag::edge, c, i, j, k);
            factor *= std::pow(dist_shift + geometry::distance(w.domain, x), sp.alpha);
          }
          out.c[c](i, j, k) = factor * omega.c[c](i, j, k);
        }
  }
  return out;
}

}  // namespace

void validate(const StressParams& sp) {
  if (!(sp.p > 1)) throw std::invalid_argument("stress: exponent p must exceed 1");
  if (!(sp.alpha >= 0)) throw std::invalid_argument("stress: weight power must be >= 0");
  if (!(sp.kappa >= 0)) throw std::invalid_argument("stress: shift kappa must be >= 0");
}

StaggeredField stress(const StressParams& sp, const geometry::PowerWeight& w,
                      const StaggeredField& omega, Real dist_shift) {
  return stress_core(sp, w, omega, omega, dist_shift, 0.0);
}

StaggeredField stress_frozen(const StressParams& sp, const geometry::PowerWeight& w,
                             const StaggeredField& omega_frozen, const StaggeredField& omega,
                             Real dist_shift, Real mag_floor) {
  if (!(mag_floor >= 0)) throw std::invalid_argument("stress_frozen: mag_floor must be >= 0");
  return stress_core(sp, w, omega_frozen, omega, dist_shift, mag_floor);
}

Real monotonicity_gap(const StressParams& sp, const geometry::PowerWeight& w,
                      const StaggeredField& omega1, const StaggeredField& omega2) {
  const Grid& g = omega1.grid;
  return gap_core(
      sp,
      [&](int i, int j, int k) {
        auto x = fields::stag_pos(g, Stag::cell, 0, i, j, k);
        return geometry::distance(w.domain, x);
      },
      omega1, omega2);
}

Real monotonicity_gap(const StressParams& sp, const ScalarField& dist_cells,
                      const StaggeredField& omega1, const StaggeredField& omega2) {
  if (!(dist_cells.grid == omega1.grid))
    throw std::invalid_argument("monotonicity_gap: distance field grid mismatch");
  return gap_core(
      sp, [&](int i, int j, int k) { return dist_cells.a(i, j, k); }, omega1, omega2);
}

StaggeredField p_stokes_core(const StaggeredField& v_src, const StaggeredField& v,
                             Real p_reg, Real eps, Real mag_floor) {
  if (!(p_reg > 1)) throw std::invalid_argument("p_stokes_operator: p_reg must exceed 1");
  if (!(eps >= 0)) throw std::invalid_argument("p_stokes_operator: eps must be >= 0");
  if (!(v_src.grid == v.grid))
    throw std::invalid_argument("p_stokes_operator: fields on one grid required");
  const Grid& g = v.grid;
  if (eps == 0) return StaggeredField(g, Stag::face);

  auto Ds = fields::sym_grad(v_src);

  // Frobenius magnitude squared at cells: diagonal entries live there, each
  // off-diagonal pair contributes twice via its four surrounding a-edges
  ScalarField m2(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real s = 0;
        for (int a = 0; a < 3; ++a) {
          Real d = Ds.diag[a](i, j, k);
          s += d * d;
        }
        auto sq = [](Real t) { return t * t; };
        s += 2 * 0.25 *
             (sq(Ds.off[0](i, j, k)) + sq(Ds.off[0](i, j + 1, k)) + sq(Ds.off[0](i, j, k + 1)) +
              sq(Ds.off[0](i, j + 1, k + 1)));
        s += 2 * 0.25 *
             (sq(Ds.off[1](i, j, k)) + sq(Ds.off[1](i + 1, j, k)) + sq(Ds.off[1](i, j, k + 1)) +
              sq(Ds.off[1](i + 1, j, k + 1)));
        s += 2 * 0.25 *
             (sq(Ds.off[2](i, j, k)) + sq(Ds.off[2](i + 1, j, k)) + sq(Ds.off[2](i, j + 1, k)) +
              sq(Ds.off[2](i + 1, j + 1, k)));
        m2.a(i, j, k) = s;
      }

  auto D = fields::sym_grad(v);

  const Real ex = (p_reg - 2) / 2;
  // at msq = 0 the product s * D vanishes for every p_reg > 1, so the scale is
  // extended by 0 there (the components feeding a zero average are zero)
  auto scale = [&](Real msq) {
    if (ex == 0) return eps;
    if (mag_floor == 0) return msq == 0 ? 0.0 : eps * std::pow(msq, ex);
    return eps * std::pow(mag_floor + std::sqrt(msq), p_reg - 2);
  };

  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < g.n[2]; ++k)
      for (int j = 0; j < g.n[1]; ++j)
        for (int i = 0; i < g.n[0]; ++i) D.diag[a](i, j, k) *= scale(m2.a(i, j, k));

  for (int c = 0; c < 3; ++c) {
    auto sh = fields::stag_shape(Stag::edge, g.n, c);
    int a1 = (c + 1) % 3, a2 = (c + 2) % 3;
    for (int k = 0; k < sh[2]; ++k)
      for (int j = 0; j < sh[1]; ++j)
        for (int i = 0; i < sh[0]; ++i) {
          int idx[3] = {i, j, k};
          Real s = 0;
          int cnt = 0;
          for (int d1 = -1; d1 <= 0; ++d1)
            for (int d2 = -1; d2 <= 0; ++d2) {
              int cc[3] = {idx[0], idx[1], idx[2]};
              cc[a1] += d1;
              cc[a2] += d2;
              if (cc[0] < 0 || cc[1] < 0 || cc[2] < 0 || cc[0] >= g.n[0] || cc[1] >= g.n[1] ||
                  cc[2] >= g.n[2])
                continue;
              s += m2.a(cc[0], cc[1], cc[2]);
              ++cnt;
            }
          D.off[c](i, j, k) *= scale(cnt ? s / cnt : 0.0);
        }
  }

  return fields::sym_grad_t(D);
}

StaggeredField p_stokes_operator(const StaggeredField& v, Real p_reg, Real eps) {
  return p_stokes_core(v, v, p_reg, eps, 0.0);
}

StaggeredField p_stokes_frozen(const StaggeredField& v_frozen, const StaggeredField& v,
                               Real p_reg, Real eps, Real mag_floor) {
  if (!(mag_floor >= 0))
    throw std::invalid_argument("p_stokes_frozen: mag_floor must be >= 0");
  return p_stokes_core(v_frozen, v, p_reg, eps, mag_floor);
}

}  // namespace dclab::operators
