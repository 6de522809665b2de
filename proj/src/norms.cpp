#include <cmath>
#include <limits>
#include <vector>

#include "dclab/fields.hpp"

namespace dclab::fields {

namespace {

void check_spec(const NormSpec& spec) {
  if (!(spec.p >= 1)) throw std::invalid_argument("norm: exponent p must be >= 1");
  if (spec.sobolev_order != 0 && spec.sobolev_order != 1)
    throw std::invalid_argument("norm: sobolev_order must be 0 or 1");
  if (spec.fractional_s) {
    if (!(*spec.fractional_s > 0 && *spec.fractional_s < 1))
      throw std::invalid_argument("norm: fractional order must lie in (0,1)");
    if (spec.sobolev_order != 0)
      throw std::invalid_argument("norm: fractional order excludes sobolev_order");
  }
}

//! Exact average of min(x_1..x_m)^alpha over the box prod [0, ext_i] whose
//! first coordinate has the smallest extent. Uses the layer-cake identity
//! int min^alpha = int_0^a t^alpha * (-d/dt) prod (ext_i - t) dt.
Real min_power_avg(const std::vector<Real>& ext, Real alpha) {
  Real a = ext[0];
  for (Real e : ext) a = std::min(a, e);
  const int m = static_cast<int>(ext.size());
  Real vol = 1;
  for (Real e : ext) vol *= e;
  if (m == 1) return std::pow(a, alpha) / (1 + alpha);
  if (m == 2) {
    Real s = ext[0] + ext[1];
    Real val = s * std::pow(a, 1 + alpha) / (1 + alpha) - 2 * std::pow(a, 2 + alpha) / (2 + alpha);
    return val / vol;
  }
  Real s1 = ext[0] + ext[1] + ext[2];
  Real s2 = ext[0] * ext[1] + ext[0] * ext[2] + ext[1] * ext[2];
  Real val = 3 * std::pow(a, 3 + alpha) / (3 + alpha) -
             2 * s1 * std::pow(a, 2 + alpha) / (2 + alpha) +
             s2 * std::pow(a, 1 + alpha) / (1 + alpha);
  return val / vol;
}

}  // namespace

Real cell_weight(const Grid& g, const geometry::DomainSpec& dom, Real alpha, int i, int j,
                 int k) {
  if (alpha == 0) return 1;
  auto x = stag_pos(g, Stag::cell, 0, i, j, k);
  if (alpha > 0 || alpha <= -1 || dom.kind != geometry::DomainKind::box)
    return std::pow(geometry::distance(dom, x), alpha);
  std::vector<Real> ext;
  const int idx[3] = {i, j, k};
  for (int a = 0; a < 3; ++a)
    if (idx[a] == 0 || idx[a] == g.n[a] - 1) ext.push_back(g.h(a));
  if (ext.empty()) return std::pow(geometry::distance(dom, x), alpha);
  return min_power_avg(ext, alpha);
}

namespace {

//! Centered interior / one-sided boundary difference along one axis.
Real cell_grad(const Array3& u, int axis, int i, int j, int k, Real h) {
  const int n = u.shape()[axis];
  int c = axis == 0 ? i : (axis == 1 ? j : k);
  auto val = [&](int m) {
    if (axis == 0) return u(m, j, k);
    if (axis == 1) return u(i, m, k);
    return u(i, j, m);
  };
  if (n == 1) return 0;
  if (c == 0) return (val(1) - val(0)) / h;
  if (c == n - 1) return (val(n - 1) - val(n - 2)) / h;
  return (val(c + 1) - val(c - 1)) / (2 * h);
}

Real fractional_scalar(const ScalarField& f, Real s, Real p) {
  const Grid& g = f.grid;
  for (int a = 0; a < 3; ++a)
    if (g.n[a] > 32)
      throw std::invalid_argument("norm: fractional seminorm limited to 32 cells per axis");
  const long n = g.cell_count();
  std::vector<Real> vals(n);
  std::vector<std::array<Real, 3>> pos(n);
  long m = 0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        vals[m] = f.a(i, j, k);
        pos[m] = stag_pos(g, Stag::cell, 0, i, j, k);
        ++m;
      }
  const Real expo = 3 + s * p;
  const Real w2 = g.cell_volume() * g.cell_volume();
  Real acc = 0;
  for (long a = 0; a < n; ++a)
    for (long b = a + 1; b < n; ++b) {
      Real dx = pos[a][0] - pos[b][0];
      Real dy = pos[a][1] - pos[b][1];
      Real dz = pos[a][2] - pos[b][2];
      Real r = std::sqrt(dx * dx + dy * dy + dz * dz);
      acc += std::pow(std::abs(vals[a] - vals[b]), p) / std::pow(r, expo);
    }
  return std::pow(2 * acc * w2, 1 / p);
}

}  // namespace

Real norm(const ScalarField& f, const NormSpec& spec) {
  check_spec(spec);
  const Grid& g = f.grid;
  if (spec.fractional_s) return fractional_scalar(f, *spec.fractional_s, spec.p);

  if (std::isinf(spec.p)) {
    Real m = 0;
    for (long i = 0; i < f.a.size(); ++i) m = std::max(m, std::abs(f.a.data()[i]));
    return m;
  }

  const auto dom = g.domain();
  const Real alpha = spec.weight_alpha.value_or(0);
  const Real vol = g.cell_volume();
  Real acc = 0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real w = spec.weight_alpha ? cell_weight(g, dom, alpha, i, j, k) : 1;
        Real t = std::pow(std::abs(f.a(i, j, k)), spec.p);
        if (spec.sobolev_order == 1) {
          Real gx = cell_grad(f.a, 0, i, j, k, g.h(0));
          Real gy = cell_grad(f.a, 1, i, j, k, g.h(1));
          Real gz = cell_grad(f.a, 2, i, j, k, g.h(2));
          t += std::pow(std::sqrt(gx * gx + gy * gy + gz * gz), spec.p);
        }
        acc += w * t * vol;
      }
  return std::pow(acc, 1 / spec.p);
}

Real norm(const StaggeredField& f, const NormSpec& spec) {
  check_spec(spec);
  const Grid& g = f.grid;
  ScalarField mag = f.stag == Stag::edge ? edge_magnitude_cells(f) : face_magnitude_cells(f);

  if (spec.fractional_s) {
    // componentwise Gagliardo seminorms of the cell-collocated components
    Real acc = 0;
    for (int c = 0; c < 3; ++c) {
      ScalarField comp(g);
      for (int k = 0; k < g.n[2]; ++k)
        for (int j = 0; j < g.n[1]; ++j)
          for (int i = 0; i < g.n[0]; ++i) {
            if (f.stag == Stag::face) {
              comp.a(i, j, k) = c == 0 ? 0.5 * (f.c[0](i, j, k) + f.c[0](i + 1, j, k))
                               : c == 1 ? 0.5 * (f.c[1](i, j, k) + f.c[1](i, j + 1, k))
                                        : 0.5 * (f.c[2](i, j, k) + f.c[2](i, j, k + 1));
            } else {
              comp.a(i, j, k) =
                  c == 0 ? 0.25 * (f.c[0](i, j, k) + f.c[0](i, j + 1, k) +
                                   f.c[0](i, j, k + 1) + f.c[0](i, j + 1, k + 1))
                  : c == 1 ? 0.25 * (f.c[1](i, j, k) + f.c[1](i + 1, j, k) +
                                     f.c[1](i, j, k + 1) + f.c[1](i + 1, j, k + 1))
                           : 0.25 * (f.c[2](i, j, k) + f.c[2](i + 1, j, k) +
                                     f.c[2](i, j + 1, k) + f.c[2](i + 1, j + 1, k));
            }
          }
      NormSpec cs = spec;
      acc += std::pow(norm(comp, cs), spec.p);
    }
    return std::pow(acc, 1 / spec.p);
  }

  if (std::isinf(spec.p)) {
    Real m = 0;
    for (int c = 0; c < 3; ++c)
      for (long i = 0; i < f.c[c].size(); ++i) m = std::max(m, std::abs(f.c[c].data()[i]));
    return m;
  }

  const auto dom = g.domain();
  const Real alpha = spec.weight_alpha.value_or(0);
  const Real vol = g.cell_volume();
  TensorField9 G;
  if (spec.sobolev_order == 1) G = grad_full(f);
  Real acc = 0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real w = spec.weight_alpha ? cell_weight(g, dom, alpha, i, j, k) : 1;
        Real t = std::pow(mag.a(i, j, k), spec.p);
        if (spec.sobolev_order == 1) {
          Real fr = 0;
          for (int m = 0; m < 9; ++m) fr += G.comp[m](i, j, k) * G.comp[m](i, j, k);
          t += std::pow(std::sqrt(fr), spec.p);
        }
        acc += w * t * vol;
      }
  return std::pow(acc, 1 / spec.p);
}

Real grad_norm(const StaggeredField& v, Real p, std::optional<Real> weight_alpha) {
  if (!(p >= 1)) throw std::invalid_argument("grad_norm: exponent p must be >= 1");
  const Grid& g = v.grid;
  const auto dom = g.domain();
  const Real alpha = weight_alpha.value_or(0);
  const Real vol = g.cell_volume();
  TensorField9 G = grad_full(v);
  Real acc = 0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real fr = 0;
        for (int m = 0; m < 9; ++m) fr += G.comp[m](i, j, k) * G.comp[m](i, j, k);
        Real w = weight_alpha ? cell_weight(g, dom, alpha, i, j, k) : 1;
        acc += w * std::pow(std::sqrt(fr), p) * vol;
      }
  return std::pow(acc, 1 / p);
}

Real norm(const Line1D& f, const NormSpec& spec) {
  check_spec(spec);
  const Real h = f.h();

  if (spec.fractional_s) {
    const Real s = *spec.fractional_s;
    const Real expo = 1 + s * spec.p;
    Real acc = 0;
    for (int a = 0; a < f.n; ++a)
      for (int b = a + 1; b < f.n; ++b) {
        Real r = (b - a) * h;
        acc += std::pow(std::abs(f.v[a] - f.v[b]), spec.p) / std::pow(r, expo);
      }
    return std::pow(2 * acc * h * h, 1 / spec.p);
  }

  if (std::isinf(spec.p)) {
    Real m = 0;
    for (int i = 0; i < f.n; ++i) m = std::max(m, std::abs(f.v[i]));
    return m;
  }

  const Real alpha = spec.weight_alpha.value_or(0);
  Real acc = 0;
  for (int i = 0; i < f.n; ++i) {
    Real w = 1;
    if (spec.weight_alpha && alpha != 0) {
      auto dist = [&](Real x) { return std::min(x, f.L - x); };
      if (alpha > -1 && alpha < 0 && (i == 0 || i == f.n - 1)) {
        w = min_power_avg({h}, alpha);
      } else {
        w = std::pow(dist(f.x(i)), alpha);
      }
    }
    Real t = std::pow(std::abs(f.v[i]), spec.p);
    if (spec.sobolev_order == 1) {
      Real d;
      if (f.n == 1)
        d = 0;
      else if (i == 0)
        d = (f.v[1] - f.v[0]) / h;
      else if (i == f.n - 1)
        d = (f.v[f.n - 1] - f.v[f.n - 2]) / h;
      else
        d = (f.v[i + 1] - f.v[i - 1]) / (2 * h);
      t += std::pow(std::abs(d), spec.p);
    }
    acc += w * t * h;
  }
  return std::pow(acc, 1 / spec.p);
}

}  // namespace dclab::fields
