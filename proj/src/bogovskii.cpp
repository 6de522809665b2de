#include <cmath>
#include <stdexcept>
#include <vector>

#include "dclab/operators.hpp"

namespace dclab::operators {

namespace {

constexpr int kGauss = 5;
constexpr Real kGx[kGauss] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                              0.5384693101056831, 0.9061798459386640};
constexpr Real kGw[kGauss] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                              0.4786286704993665, 0.2369268850561891};

struct Source {
  std::array<Real, 3> y;
  Real weight;  // f(y) * cell volume share
};

Real dist3(const std::array<Real, 3>& a, const std::array<Real, 3>& b) {
  Real dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

void validate(const BogovskiiKernel& k, const Grid& g) {
  if (!(k.radius > 0)) throw std::invalid_argument("bogovskii: radius must be positive");
  if (!(k.core_frac > 0 && k.core_frac < 1))
    throw std::invalid_argument("bogovskii: core_frac must lie in (0,1)");
  for (int a = 0; a < 3; ++a)
    if (k.center[a] - k.radius < -1e-12 || k.center[a] + k.radius > g.L[a] + 1e-12)
      throw std::invalid_argument("bogovskii: ball must fit inside the grid box");
}

StaggeredField bogovskii(const BogovskiiKernel& kern, const ScalarField& f) {
  const Grid& g = f.grid;
  validate(kern, g);
  const Real R = kern.radius;
  const Real rho = kern.core_frac * R;
  const auto& c = kern.center;
  // normalization of (1 - r^2/rho^2)^3 over the core ball
  const Real cnorm = 315.0 / (64.0 * M_PI * rho * rho * rho);
  auto theta = [&](const std::array<Real, 3>& z) {
    Real r2 = 0;
    for (int a = 0; a < 3; ++a) r2 += (z[a] - c[a]) * (z[a] - c[a]);
    Real t = 1 - r2 / (rho * rho);
    return t > 0 ? cnorm * t * t * t : 0.0;
  };

  const Real vol = g.cell_volume();
  Real mean = 0, linf = 0, outside = 0;
  std::vector<Source> sources;
  sources.reserve(1024);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real val = f.a(i, j, k);
        if (val == 0) continue;
        auto y = fields::stag_pos(g, Stag::cell, 0, i, j, k);
        Real d = dist3(y, c);
        linf = std::max(linf, std::abs(val));
        if (d > R) {
          outside = std::max(outside, std::abs(val));
          continue;
        }
        mean += val * vol;
        sources.push_back({y, val * vol});
      }
  if (outside > 1e-12 * (linf + 1e-300))
    throw std::invalid_argument("bogovskii: f has support outside the ball");
  Real ball_vol = 4.0 / 3.0 * M_PI * R * R * R;
  if (std::abs(mean / ball_vol) > 1e-10 * (linf + 1e-300))
    throw std::invalid_argument("bogovskii: f must have zero mean over the ball, got mean " +
                                std::to_string(mean / ball_vol));

  const Real hmin = g.hmin();

  // scalar ray integral int theta(x + t w) (1 + t/d)^2 dt over the segment
  // where the ray meets the core ball; the integrand is a degree-8 polynomial
  // there, so 5-point Gauss is exact
  auto ray = [&](const std::array<Real, 3>& x, const std::array<Real, 3>& y) {
    Real d = dist3(x, y);
    if (d < 1e-14) return 0.0;
    std::array<Real, 3> w{(x[0] - y[0]) / d, (x[1] - y[1]) / d, (x[2] - y[2]) / d};
    // |x + t w - c|^2 = rho^2
    Real b = 0, q = -rho * rho;
    for (int a = 0; a < 3; ++a) {
      Real xc = x[a] - c[a];
      b += w[a] * xc;
      q += xc * xc;
    }
    Real disc = b * b - q;
    if (disc <= 0) return 0.0;
    Real sq = std::sqrt(disc);
    Real t0 = std::max(-b - sq, 0.0), t1 = -b + sq;
    if (t1 <= t0) return 0.0;
    Real mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    Real acc = 0;
    for (int n = 0; n < kGauss; ++n) {
      Real t = mid + half * kGx[n];
      std::array<Real, 3> z{x[0] + t * w[0], x[1] + t * w[1], x[2] + t * w[2]};
      Real s = 1 + t / d;
      acc += kGw[n] * theta(z) * s * s;
    }
    return acc * half;
  };

  // vector contribution of one source at the output point x. The kernel
  // curvature grows like |x-y|^-4, so a cell of size sigma at distance d is
  // integrated by midpoint only once sigma <= d/4; closer cells are split
  // octree-fashion (depth-capped, cost is geometric in the shell distance)
  struct Piece {
    std::array<Real, 3> y;
    Real weight;
    int depth;
  };
  auto contrib = [&](const std::array<Real, 3>& x, const Source& s, int comp) {
    Real acc = 0;
    Piece stack[80];
    int top = 0;
    stack[top++] = {s.y, s.weight, 0};
    while (top > 0) {
      Piece pc = stack[--top];
      Real d = dist3(x, pc.y);
      Real size = hmin / (1 << pc.depth);
      if (d >= 4 * size || pc.depth >= 5) {
        if (d < 1e-14) continue;
        Real val = ray(x, pc.y);
        if (val != 0) acc += pc.weight * val * (x[comp] - pc.y[comp]) / d;
        continue;
      }
      // split into the 8 child subcells (offsets are a quarter cell per axis)
      Real f4 = 1.0 / (4 << pc.depth);
      for (int a = -1; a <= 1; a += 2)
        for (int b = -1; b <= 1; b += 2)
          for (int e = -1; e <= 1; e += 2)
            stack[top++] = {{pc.y[0] + a * f4 * g.h(0), pc.y[1] + b * f4 * g.h(1),
                             pc.y[2] + e * f4 * g.h(2)},
                            pc.weight / 8,
                            pc.depth + 1};
    }
    return acc;
  };

  StaggeredField u(g, Stag::face);
  for (int comp = 0; comp < 3; ++comp) {
    auto sh = fields::stag_shape(Stag::face, g.n, comp);
    for (int k = 0; k < sh[2]; ++k)
      for (int j = 0; j < sh[1]; ++j)
        for (int i = 0; i < sh[0]; ++i) {
          auto x = fields::stag_pos(g, Stag::face, comp, i, j, k);
          if (dist3(x, c) > R) continue;  // support stays inside the ball
          Real acc = 0;
          for (const auto& s : sources) acc += contrib(x, s, comp);
          u.c[comp](i, j, k) = acc;
        }
  }
  return u;
}

}  // namespace dclab::operators
