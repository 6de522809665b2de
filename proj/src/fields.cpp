#include "dclab/fields.hpp"

#include <cmath>

namespace dclab::fields {

std::array<int, 3> stag_shape(Stag s, const std::array<int, 3>& n, int c) {
  const int nx = n[0], ny = n[1], nz = n[2];
  switch (s) {
    case Stag::cell:
      return {nx, ny, nz};
    case Stag::face:
      if (c == 0) return {nx + 1, ny, nz};
      if (c == 1) return {nx, ny + 1, nz};
      return {nx, ny, nz + 1};
    case Stag::edge:
      if (c == 0) return {nx, ny + 1, nz + 1};
      if (c == 1) return {nx + 1, ny, nz + 1};
      return {nx + 1, ny + 1, nz};
  }
  return {0, 0, 0};
}

std::array<Real, 3> stag_pos(const Grid& g, Stag s, int c, int i, int j, int k) {
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  const Real ic = i + 0.5, jc = j + 0.5, kc = k + 0.5;
  switch (s) {
    case Stag::cell:
      return {ic * hx, jc * hy, kc * hz};
    case Stag::face:
      if (c == 0) return {i * hx, jc * hy, kc * hz};
      if (c == 1) return {ic * hx, j * hy, kc * hz};
      return {ic * hx, jc * hy, k * hz};
    case Stag::edge:
      if (c == 0) return {ic * hx, j * hy, k * hz};
      if (c == 1) return {i * hx, jc * hy, k * hz};
      return {i * hx, j * hy, kc * hz};
  }
  return {0, 0, 0};
}

TensorField6::TensorField6(const Grid& g) : grid(g) {
  for (int a = 0; a < 3; ++a) {
    diag[a] = Array3(g.n[0], g.n[1], g.n[2]);
    auto sh = stag_shape(Stag::edge, g.n, a);
    off[a] = Array3(sh[0], sh[1], sh[2]);
  }
}

TensorField9::TensorField9(const Grid& g) : grid(g) {
  for (int m = 0; m < 9; ++m) comp[m] = Array3(g.n[0], g.n[1], g.n[2]);
}

StaggeredField& StaggeredField::operator+=(const StaggeredField& o) {
  for (int a = 0; a < 3; ++a) c[a].data() += o.c[a].data();
  return *this;
}
StaggeredField& StaggeredField::operator-=(const StaggeredField& o) {
  for (int a = 0; a < 3; ++a) c[a].data() -= o.c[a].data();
  return *this;
}
StaggeredField& StaggeredField::operator*=(Real s) {
  for (int a = 0; a < 3; ++a) c[a].data() *= s;
  return *this;
}

StaggeredField sample_staggered(const Grid& g, Stag s,
                                const std::function<Real(int, Real, Real, Real)>& f) {
  StaggeredField out(g, s);
  for (int a = 0; a < 3; ++a) {
    auto& arr = out.c[a];
    for (int k = 0; k < arr.n(2); ++k)
      for (int j = 0; j < arr.n(1); ++j)
        for (int i = 0; i < arr.n(0); ++i) {
          auto x = stag_pos(g, s, a, i, j, k);
          arr(i, j, k) = f(a, x[0], x[1], x[2]);
        }
  }
  return out;
}

ScalarField sample_cells(const Grid& g, const std::function<Real(Real, Real, Real)>& f) {
  ScalarField out(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        auto x = stag_pos(g, Stag::cell, 0, i, j, k);
        out.a(i, j, k) = f(x[0], x[1], x[2]);
      }
  return out;
}

void zero_normal_boundary(StaggeredField& face) {
  auto& u = face.c[0];
  auto& v = face.c[1];
  auto& w = face.c[2];
  for (int k = 0; k < u.n(2); ++k)
    for (int j = 0; j < u.n(1); ++j) {
      u(0, j, k) = 0;
      u(u.n(0) - 1, j, k) = 0;
    }
  for (int k = 0; k < v.n(2); ++k)
    for (int i = 0; i < v.n(0); ++i) {
      v(i, 0, k) = 0;
      v(i, v.n(1) - 1, k) = 0;
    }
  for (int j = 0; j < w.n(1); ++j)
    for (int i = 0; i < w.n(0); ++i) {
      w(i, j, 0) = 0;
      w(i, j, w.n(2) - 1) = 0;
    }
}

Real dot(const ScalarField& a, const ScalarField& b) {
  return (a.a.data() * b.a.data()).sum() * a.grid.cell_volume();
}

Real dot(const StaggeredField& a, const StaggeredField& b) {
  Real s = 0;
  for (int c = 0; c < 3; ++c) s += (a.c[c].data() * b.c[c].data()).sum();
  return s * a.grid.cell_volume();
}

Real dot(const TensorField9& a, const TensorField9& b) {
  Real s = 0;
  for (int m = 0; m < 9; ++m) s += (a.comp[m].data() * b.comp[m].data()).sum();
  return s * a.grid.cell_volume();
}

Real norm2(const StaggeredField& a) { return std::sqrt(dot(a, a)); }

ScalarField divergence(const StaggeredField& f) {
  const Grid& g = f.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  ScalarField out(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        out.a(i, j, k) = (f.c[0](i + 1, j, k) - f.c[0](i, j, k)) / hx +
                         (f.c[1](i, j + 1, k) - f.c[1](i, j, k)) / hy +
                         (f.c[2](i, j, k + 1) - f.c[2](i, j, k)) / hz;
  return out;
}

StaggeredField gradient(const ScalarField& p) {
  const Grid& g = p.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  StaggeredField out(g, Stag::face);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 1; i < g.n[0]; ++i)
        out.c[0](i, j, k) = (p.a(i, j, k) - p.a(i - 1, j, k)) / hx;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 1; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        out.c[1](i, j, k) = (p.a(i, j, k) - p.a(i, j - 1, k)) / hy;
  for (int k = 1; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        out.c[2](i, j, k) = (p.a(i, j, k) - p.a(i, j, k - 1)) / hz;
  return out;
}

StaggeredField curl_fe(const StaggeredField& v) {
  const Grid& g = v.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  StaggeredField w(g, Stag::edge);
  const Array3& vx = v.c[0];
  const Array3& vy = v.c[1];
  const Array3& vz = v.c[2];
  auto& wx = w.c[0];
  auto& wy = w.c[1];
  auto& wz = w.c[2];
  for (int k = 0; k < wx.n(2); ++k)
    for (int j = 0; j < wx.n(1); ++j)
      for (int i = 0; i < wx.n(0); ++i)
        wx(i, j, k) = (vz.at0(i, j, k) - vz.at0(i, j - 1, k)) / hy -
                      (vy.at0(i, j, k) - vy.at0(i, j, k - 1)) / hz;
  for (int k = 0; k < wy.n(2); ++k)
    for (int j = 0; j < wy.n(1); ++j)
      for (int i = 0; i < wy.n(0); ++i)
        wy(i, j, k) = (vx.at0(i, j, k) - vx.at0(i, j, k - 1)) / hz -
                      (vz.at0(i, j, k) - vz.at0(i - 1, j, k)) / hx;
  for (int k = 0; k < wz.n(2); ++k)
    for (int j = 0; j < wz.n(1); ++j)
      for (int i = 0; i < wz.n(0); ++i)
        wz(i, j, k) = (vy.at0(i, j, k) - vy.at0(i - 1, j, k)) / hx -
                      (vx.at0(i, j, k) - vx.at0(i, j - 1, k)) / hy;
  return w;
}

StaggeredField curl_ef(const StaggeredField& A) {
  const Grid& g = A.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  StaggeredField v(g, Stag::face);
  const Array3& Ax = A.c[0];
  const Array3& Ay = A.c[1];
  const Array3& Az = A.c[2];
  auto& vx = v.c[0];
  auto& vy = v.c[1];
  auto& vz = v.c[2];
  for (int k = 0; k < vx.n(2); ++k)
    for (int j = 0; j < vx.n(1); ++j)
      for (int i = 0; i < vx.n(0); ++i)
        vx(i, j, k) = (Az(i, j + 1, k) - Az(i, j, k)) / hy -
                      (Ay(i, j, k + 1) - Ay(i, j, k)) / hz;
  for (int k = 0; k < vy.n(2); ++k)
    for (int j = 0; j < vy.n(1); ++j)
      for (int i = 0; i < vy.n(0); ++i)
        vy(i, j, k) = (Ax(i, j, k + 1) - Ax(i, j, k)) / hz -
                      (Az(i + 1, j, k) - Az(i, j, k)) / hx;
  for (int k = 0; k < vz.n(2); ++k)
    for (int j = 0; j < vz.n(1); ++j)
      for (int i = 0; i < vz.n(0); ++i)
        vz(i, j, k) = (Ay(i + 1, j, k) - Ay(i, j, k)) / hx -
                      (Ax(i, j + 1, k) - Ax(i, j, k)) / hy;
  return v;
}

TensorField6 sym_grad(const StaggeredField& v) {
  const Grid& g = v.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  TensorField6 T(g);
  const Array3& vx = v.c[0];
  const Array3& vy = v.c[1];
  const Array3& vz = v.c[2];
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        T.diag[0](i, j, k) = (vx(i + 1, j, k) - vx(i, j, k)) / hx;
        T.diag[1](i, j, k) = (vy(i, j + 1, k) - vy(i, j, k)) / hy;
        T.diag[2](i, j, k) = (vz(i, j, k + 1) - vz(i, j, k)) / hz;
      }
  auto& t23 = T.off[0];
  for (int k = 0; k < t23.n(2); ++k)
    for (int j = 0; j < t23.n(1); ++j)
      for (int i = 0; i < t23.n(0); ++i)
        t23(i, j, k) = 0.5 * ((vy.at0(i, j, k) - vy.at0(i, j, k - 1)) / hz +
                              (vz.at0(i, j, k) - vz.at0(i, j - 1, k)) / hy);
  auto& t13 = T.off[1];
  for (int k = 0; k < t13.n(2); ++k)
    for (int j = 0; j < t13.n(1); ++j)
      for (int i = 0; i < t13.n(0); ++i)
        t13(i, j, k) = 0.5 * ((vx.at0(i, j, k) - vx.at0(i, j, k - 1)) / hz +
                              (vz.at0(i, j, k) - vz.at0(i - 1, j, k)) / hx);
  auto& t12 = T.off[2];
  for (int k = 0; k < t12.n(2); ++k)
    for (int j = 0; j < t12.n(1); ++j)
      for (int i = 0; i < t12.n(0); ++i)
        t12(i, j, k) = 0.5 * ((vx.at0(i, j, k) - vx.at0(i, j - 1, k)) / hy +
                              (vy.at0(i, j, k) - vy.at0(i - 1, j, k)) / hx);
  return T;
}

StaggeredField sym_grad_t(const TensorField6& T) {
  const Grid& g = T.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  StaggeredField f(g, Stag::face);
  const Array3& txx = T.diag[0];
  const Array3& tyy = T.diag[1];
  const Array3& tzz = T.diag[2];
  const Array3& t23 = T.off[0];
  const Array3& t13 = T.off[1];
  const Array3& t12 = T.off[2];
  auto& fx = f.c[0];
  for (int k = 0; k < fx.n(2); ++k)
    for (int j = 0; j < fx.n(1); ++j)
      for (int i = 0; i < fx.n(0); ++i)
        fx(i, j, k) = (txx.at0(i - 1, j, k) - txx.at0(i, j, k)) / hx +
                      (t12(i, j, k) - t12(i, j + 1, k)) / hy +
                      (t13(i, j, k) - t13(i, j, k + 1)) / hz;
  auto& fy = f.c[1];
  for (int k = 0; k < fy.n(2); ++k)
    for (int j = 0; j < fy.n(1); ++j)
      for (int i = 0; i < fy.n(0); ++i)
        fy(i, j, k) = (tyy.at0(i, j - 1, k) - tyy.at0(i, j, k)) / hy +
                      (t12(i, j, k) - t12(i + 1, j, k)) / hx +
                      (t23(i, j, k) - t23(i, j, k + 1)) / hz;
  auto& fz = f.c[2];
  for (int k = 0; k < fz.n(2); ++k)
    for (int j = 0; j < fz.n(1); ++j)
      for (int i = 0; i < fz.n(0); ++i)
        fz(i, j, k) = (tzz.at0(i, j, k - 1) - tzz.at0(i, j, k)) / hz +
                      (t13(i, j, k) - t13(i + 1, j, k)) / hx +
                      (t23(i, j, k) - t23(i, j + 1, k)) / hy;
  return f;
}

TensorField9 grad_full(const StaggeredField& v) {
  const Grid& g = v.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  TensorField9 G(g);
  const Array3& vx = v.c[0];
  const Array3& vy = v.c[1];
  const Array3& vz = v.c[2];
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        G.comp[0](i, j, k) = (vx(i + 1, j, k) - vx(i, j, k)) / hx;
        G.comp[4](i, j, k) = (vy(i, j + 1, k) - vy(i, j, k)) / hy;
        G.comp[8](i, j, k) = (vz(i, j, k + 1) - vz(i, j, k)) / hz;
        Real s = 0;
        for (int I = i; I <= i + 1; ++I)
          for (int J = j; J <= j + 1; ++J)
            s += vx.at0(I, J, k) - vx.at0(I, J - 1, k);
        G.comp[3](i, j, k) = 0.25 * s / hy;
        s = 0;
        for (int I = i; I <= i + 1; ++I)
          for (int K = k; K <= k + 1; ++K)
            s += vx.at0(I, j, K) - vx.at0(I, j, K - 1);
        G.comp[6](i, j, k) = 0.25 * s / hz;
        s = 0;
        for (int I = i; I <= i + 1; ++I)
          for (int J = j; J <= j + 1; ++J)
            s += vy.at0(I, J, k) - vy.at0(I - 1, J, k);
        G.comp[1](i, j, k) = 0.25 * s / hx;
        s = 0;
        for (int J = j; J <= j + 1; ++J)
          for (int K = k; K <= k + 1; ++K)
            s += vy.at0(i, J, K) - vy.at0(i, J, K - 1);
        G.comp[7](i, j, k) = 0.25 * s / hz;
        s = 0;
        for (int I = i; I <= i + 1; ++I)
          for (int K = k; K <= k + 1; ++K)
            s += vz.at0(I, j, K) - vz.at0(I - 1, j, K);
        G.comp[2](i, j, k) = 0.25 * s / hx;
        s = 0;
        for (int J = j; J <= j + 1; ++J)
          for (int K = k; K <= k + 1; ++K)
            s += vz.at0(i, J, K) - vz.at0(i, J - 1, K);
        G.comp[5](i, j, k) = 0.25 * s / hy;
      }
  return G;
}

StaggeredField grad_full_t(const TensorField9& F) {
  const Grid& g = F.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  StaggeredField f(g, Stag::face);
  const Array3& f00 = F.comp[0];
  const Array3& f01 = F.comp[1];
  const Array3& f02 = F.comp[2];
  const Array3& f10 = F.comp[3];
  const Array3& f11 = F.comp[4];
  const Array3& f12 = F.comp[5];
  const Array3& f20 = F.comp[6];
  const Array3& f21 = F.comp[7];
  const Array3& f22 = F.comp[8];
  auto& fx = f.c[0];
  for (int k = 0; k < fx.n(2); ++k)
    for (int j = 0; j < fx.n(1); ++j)
      for (int i = 0; i < fx.n(0); ++i) {
        Real s = (f00.at0(i - 1, j, k) - f00.at0(i, j, k)) / hx;
        Real t = 0;
        for (int I = i - 1; I <= i; ++I) t += f10.at0(I, j - 1, k) - f10.at0(I, j + 1, k);
        s += 0.25 * t / hy;
        t = 0;
        for (int I = i - 1; I <= i; ++I) t += f20.at0(I, j, k - 1) - f20.at0(I, j, k + 1);
        s += 0.25 * t / hz;
        fx(i, j, k) = s;
      }
  auto& fy = f.c[1];
  for (int k = 0; k < fy.n(2); ++k)
    for (int j = 0; j < fy.n(1); ++j)
      for (int i = 0; i < fy.n(0); ++i) {
        Real s = (f11.at0(i, j - 1, k) - f11.at0(i, j, k)) / hy;
        Real t = 0;
        for (int J = j - 1; J <= j; ++J) t += f01.at0(i - 1, J, k) - f01.at0(i + 1, J, k);
        s += 0.25 * t / hx;
        t = 0;
        for (int J = j - 1; J <= j; ++J) t += f21.at0(i, J, k - 1) - f21.at0(i, J, k + 1);
        s += 0.25 * t / hz;
        fy(i, j, k) = s;
      }
  auto& fz = f.c[2];
  for (int k = 0; k < fz.n(2); ++k)
    for (int j = 0; j < fz.n(1); ++j)
      for (int i = 0; i < fz.n(0); ++i) {
        Real s = (f22.at0(i, j, k - 1) - f22.at0(i, j, k)) / hz;
        Real t = 0;
        for (int K = k - 1; K <= k; ++K) t += f02.at0(i - 1, j, K) - f02.at0(i + 1, j, K);
        s += 0.25 * t / hx;
        t = 0;
        for (int K = k - 1; K <= k; ++K) t += f12.at0(i, j - 1, K) - f12.at0(i, j + 1, K);
        s += 0.25 * t / hy;
        fz(i, j, k) = s;
      }
  return f;
}

StaggeredField convective_rot_frozen(const StaggeredField& w, const StaggeredField& v) {
  const Grid& g = v.grid;
  StaggeredField out(g, Stag::face);
  const Array3& vx = v.c[0];
  const Array3& vy = v.c[1];
  const Array3& vz = v.c[2];
  const Array3& wx = w.c[0];
  const Array3& wy = w.c[1];
  const Array3& wz = w.c[2];

  // velocity components interpolated to the edge carrying each vorticity sample
  auto ivy_at_zedge = [&](int i, int j, int k) {
    return 0.5 * (vy.at0(i - 1, j, k) + vy.at0(i, j, k));
  };
  auto ivz_at_yedge = [&](int i, int j, int k) {
    return 0.5 * (vz.at0(i - 1, j, k) + vz.at0(i, j, k));
  };
  auto ivx_at_zedge = [&](int i, int j, int k) {
    return 0.5 * (vx.at0(i, j - 1, k) + vx.at0(i, j, k));
  };
  auto ivz_at_xedge = [&](int i, int j, int k) {
    return 0.5 * (vz.at0(i, j - 1, k) + vz.at0(i, j, k));
  };
  auto ivy_at_xedge = [&](int i, int j, int k) {
    return 0.5 * (vy.at0(i, j, k - 1) + vy.at0(i, j, k));
  };
  auto ivx_at_yedge = [&](int i, int j, int k) {
    return 0.5 * (vx.at0(i, j, k - 1) + vx.at0(i, j, k));
  };

  auto& ox = out.c[0];
  for (int k = 0; k < ox.n(2); ++k)
    for (int j = 0; j < ox.n(1); ++j)
      for (int i = 0; i < ox.n(0); ++i)
        ox(i, j, k) =
            0.5 * (wy(i, j, k) * ivz_at_yedge(i, j, k) +
                   wy(i, j, k + 1) * ivz_at_yedge(i, j, k + 1)) -
            0.5 * (wz(i, j, k) * ivy_at_zedge(i, j, k) +
                   wz(i, j + 1, k) * ivy_at_zedge(i, j + 1, k));
  auto& oy = out.c[1];
  for (int k = 0; k < oy.n(2); ++k)
    for (int j = 0; j < oy.n(1); ++j)
      for (int i = 0; i < oy.n(0); ++i)
        oy(i, j, k) =
            0.5 * (wz(i, j, k) * ivx_at_zedge(i, j, k) +
                   wz(i + 1, j, k) * ivx_at_zedge(i + 1, j, k)) -
            0.5 * (wx(i, j, k) * ivz_at_xedge(i, j, k) +
                   wx(i, j, k + 1) * ivz_at_xedge(i, j, k + 1));
  auto& oz = out.c[2];
  for (int k = 0; k < oz.n(2); ++k)
    for (int j = 0; j < oz.n(1); ++j)
      for (int i = 0; i < oz.n(0); ++i)
        oz(i, j, k) =
            0.5 * (wx(i, j, k) * ivy_at_xedge(i, j, k) +
                   wx(i, j + 1, k) * ivy_at_xedge(i, j + 1, k)) -
            0.5 * (wy(i, j, k) * ivx_at_yedge(i, j, k) +
                   wy(i + 1, j, k) * ivx_at_yedge(i + 1, j, k));
  return out;
}

StaggeredField convective_rot(const StaggeredField& v) {
  return convective_rot_frozen(curl_fe(v), v);
}

StaggeredField convective_div(const StaggeredField& v) {
  const Grid& g = v.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  const Array3& vx = v.c[0];
  const Array3& vy = v.c[1];
  const Array3& vz = v.c[2];

  Array3 cxx(g.n[0], g.n[1], g.n[2]), cyy(g.n[0], g.n[1], g.n[2]), czz(g.n[0], g.n[1], g.n[2]);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real ux = 0.5 * (vx(i, j, k) + vx(i + 1, j, k));
        Real uy = 0.5 * (vy(i, j, k) + vy(i, j + 1, k));
        Real uz = 0.5 * (vz(i, j, k) + vz(i, j, k + 1));
        cxx(i, j, k) = ux * ux;
        cyy(i, j, k) = uy * uy;
        czz(i, j, k) = uz * uz;
      }

  auto zsh = stag_shape(Stag::edge, g.n, 2);
  Array3 txy(zsh[0], zsh[1], zsh[2]);
  for (int k = 0; k < zsh[2]; ++k)
    for (int j = 0; j < zsh[1]; ++j)
      for (int i = 0; i < zsh[0]; ++i)
        txy(i, j, k) = 0.25 * (vy.at0(i - 1, j, k) + vy.at0(i, j, k)) *
                       (vx.at0(i, j - 1, k) + vx.at0(i, j, k));
  auto ysh = stag_shape(Stag::edge, g.n, 1);
  Array3 txz(ysh[0], ysh[1], ysh[2]);
  for (int k = 0; k < ysh[2]; ++k)
    for (int j = 0; j < ysh[1]; ++j)
      for (int i = 0; i < ysh[0]; ++i)
        txz(i, j, k) = 0.25 * (vz.at0(i - 1, j, k) + vz.at0(i, j, k)) *
                       (vx.at0(i, j, k - 1) + vx.at0(i, j, k));
  auto xsh = stag_shape(Stag::edge, g.n, 0);
  Array3 tyz(xsh[0], xsh[1], xsh[2]);
  for (int k = 0; k < xsh[2]; ++k)
    for (int j = 0; j < xsh[1]; ++j)
      for (int i = 0; i < xsh[0]; ++i)
        tyz(i, j, k) = 0.25 * (vz.at0(i, j - 1, k) + vz.at0(i, j, k)) *
                       (vy.at0(i, j, k - 1) + vy.at0(i, j, k));

  StaggeredField out(g, Stag::face);
  auto& ox = out.c[0];
  for (int k = 0; k < ox.n(2); ++k)
    for (int j = 0; j < ox.n(1); ++j)
      for (int i = 0; i < ox.n(0); ++i)
        ox(i, j, k) = (cxx.at0(i, j, k) - cxx.at0(i - 1, j, k)) / hx +
                      (txy(i, j + 1, k) - txy(i, j, k)) / hy +
                      (txz(i, j, k + 1) - txz(i, j, k)) / hz;
  auto& oy = out.c[1];
  for (int k = 0; k < oy.n(2); ++k)
    for (int j = 0; j < oy.n(1); ++j)
      for (int i = 0; i < oy.n(0); ++i)
        oy(i, j, k) = (cyy.at0(i, j, k) - cyy.at0(i, j - 1, k)) / hy +
                      (txy(i + 1, j, k) - txy(i, j, k)) / hx +
                      (tyz(i, j, k + 1) - tyz(i, j, k)) / hz;
  auto& oz = out.c[2];
  for (int k = 0; k < oz.n(2); ++k)
    for (int j = 0; j < oz.n(1); ++j)
      for (int i = 0; i < oz.n(0); ++i)
        oz(i, j, k) = (czz.at0(i, j, k) - czz.at0(i, j, k - 1)) / hz +
                      (txz(i + 1, j, k) - txz(i, j, k)) / hx +
                      (tyz(i, j + 1, k) - tyz(i, j, k)) / hy;
  return out;
}

StaggeredField convective_div_frozen(const StaggeredField& w, const StaggeredField& v) {
  const Grid& g = v.grid;
  const Real hx = g.h(0), hy = g.h(1), hz = g.h(2);
  const Array3& vx = v.c[0];
  const Array3& vy = v.c[1];
  const Array3& vz = v.c[2];
  const Array3& wx = w.c[0];
  const Array3& wy = w.c[1];
  const Array3& wz = w.c[2];

  Array3 cxx(g.n[0], g.n[1], g.n[2]), cyy(g.n[0], g.n[1], g.n[2]), czz(g.n[0], g.n[1], g.n[2]);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        cxx(i, j, k) = 0.25 * (wx(i, j, k) + wx(i + 1, j, k)) * (vx(i, j, k) + vx(i + 1, j, k));
        cyy(i, j, k) = 0.25 * (wy(i, j, k) + wy(i, j + 1, k)) * (vy(i, j, k) + vy(i, j + 1, k));
        czz(i, j, k) = 0.25 * (wz(i, j, k) + wz(i, j, k + 1)) * (vz(i, j, k) + vz(i, j, k + 1));
      }

  // each transverse flux exists in two variants because the transported
  // component differs between the two momentum equations sharing an edge
  auto zsh = stag_shape(Stag::edge, g.n, 2);
  Array3 txy_x(zsh[0], zsh[1], zsh[2]), txy_y(zsh[0], zsh[1], zsh[2]);
  for (int k = 0; k < zsh[2]; ++k)
    for (int j = 0; j < zsh[1]; ++j)
      for (int i = 0; i < zsh[0]; ++i) {
        txy_x(i, j, k) = 0.25 * (wy.at0(i - 1, j, k) + wy.at0(i, j, k)) *
                         (vx.at0(i, j - 1, k) + vx.at0(i, j, k));
        txy_y(i, j, k) = 0.25 * (wx.at0(i, j - 1, k) + wx.at0(i, j, k)) *
                         (vy.at0(i - 1, j, k) + vy.at0(i, j, k));
      }
  auto ysh = stag_shape(Stag::edge, g.n, 1);
  Array3 txz_x(ysh[0], ysh[1], ysh[2]), txz_z(ysh[0], ysh[1], ysh[2]);
  for (int k = 0; k < ysh[2]; ++k)
    for (int j = 0; j < ysh[1]; ++j)
      for (int i = 0; i < ysh[0]; ++i) {
        txz_x(i, j, k) = 0.25 * (wz.at0(i - 1, j, k) + wz.at0(i, j, k)) *
                         (vx.at0(i, j, k - 1) + vx.at0(i, j, k));
        txz_z(i, j, k) = 0.25 * (wx.at0(i, j, k - 1) + wx.at0(i, j, k)) *
                         (vz.at0(i - 1, j, k) + vz.at0(i, j, k));
      }
  auto xsh = stag_shape(Stag::edge, g.n, 0);
  Array3 tyz_y(xsh[0], xsh[1], xsh[2]), tyz_z(xsh[0], xsh[1], xsh[2]);
  for (int k = 0; k < xsh[2]; ++k)
    for (int j = 0; j < xsh[1]; ++j)
      for (int i = 0; i < xsh[0]; ++i) {
        tyz_y(i, j, k) = 0.25 * (wz.at0(i, j - 1, k) + wz.at0(i, j, k)) *
                         (vy.at0(i, j, k - 1) + vy.at0(i, j, k));
        tyz_z(i, j, k) = 0.25 * (wy.at0(i, j, k - 1) + wy.at0(i, j, k)) *
                         (vz.at0(i, j - 1, k) + vz.at0(i, j, k));
      }

  StaggeredField out(g, Stag::face);
  auto& ox = out.c[0];
  for (int k = 0; k < ox.n(2); ++k)
    for (int j = 0; j < ox.n(1); ++j)
      for (int i = 0; i < ox.n(0); ++i)
        ox(i, j, k) = (cxx.at0(i, j, k) - cxx.at0(i - 1, j, k)) / hx +
                      (txy_x(i, j + 1, k) - txy_x(i, j, k)) / hy +
                      (txz_x(i, j, k + 1) - txz_x(i, j, k)) / hz;
  auto& oy = out.c[1];
  for (int k = 0; k < oy.n(2); ++k)
    for (int j = 0; j < oy.n(1); ++j)
      for (int i = 0; i < oy.n(0); ++i)
        oy(i, j, k) = (cyy.at0(i, j, k) - cyy.at0(i, j - 1, k)) / hy +
                      (txy_y(i + 1, j, k) - txy_y(i, j, k)) / hx +
                      (tyz_y(i, j, k + 1) - tyz_y(i, j, k)) / hz;
  auto& oz = out.c[2];
  for (int k = 0; k < oz.n(2); ++k)
    for (int j = 0; j < oz.n(1); ++j)
      for (int i = 0; i < oz.n(0); ++i)
        oz(i, j, k) = (czz.at0(i, j, k) - czz.at0(i, j, k - 1)) / hz +
                      (txz_z(i + 1, j, k) - txz_z(i, j, k)) / hx +
                      (tyz_z(i, j + 1, k) - tyz_z(i, j, k)) / hy;
  return out;
}

ScalarField face_magnitude_cells(const StaggeredField& v) {
  const Grid& g = v.grid;
  ScalarField out(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real ux = 0.5 * (v.c[0](i, j, k) + v.c[0](i + 1, j, k));
        Real uy = 0.5 * (v.c[1](i, j, k) + v.c[1](i, j + 1, k));
        Real uz = 0.5 * (v.c[2](i, j, k) + v.c[2](i, j, k + 1));
        out.a(i, j, k) = std::sqrt(ux * ux + uy * uy + uz * uz);
      }
  return out;
}

ScalarField edge_magnitude_cells(const StaggeredField& w) {
  const Grid& g = w.grid;
  ScalarField out(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real ax = 0.25 * (w.c[0](i, j, k) + w.c[0](i, j + 1, k) + w.c[0](i, j, k + 1) +
                          w.c[0](i, j + 1, k + 1));
        Real ay = 0.25 * (w.c[1](i, j, k) + w.c[1](i + 1, j, k) + w.c[1](i, j, k + 1) +
                          w.c[1](i + 1, j, k + 1));
        Real az = 0.25 * (w.c[2](i, j, k) + w.c[2](i + 1, j, k) + w.c[2](i, j + 1, k) +
                          w.c[2](i + 1, j + 1, k));
        out.a(i, j, k) = std::sqrt(ax * ax + ay * ay + az * az);
      }
  return out;
}

}  // namespace dclab::fields
