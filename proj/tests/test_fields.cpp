/// @file
/// Staggered fields and the mimetic operator set. The load-bearing checks are
/// the exact discrete identities: div(curl) = 0, curl(grad) = 0 away from the
/// boundary, operator/transpose pairings agreeing to rounding, and exact
/// energy neutrality of the rotational convection stencil.

#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "dclab/fields.hpp"

using namespace dclab;
using namespace dclab::fields;

namespace {

Grid small_grid(int n) { return Grid{{n, n, n}, {1, 1, 1}}; }

void randomize(Array3& a, Rng& rng) {
  for (long i = 0; i < a.size(); ++i) a.data()[i] = rng.uniform(-1, 1);
}

StaggeredField random_field(const Grid& g, Stag s, std::uint64_t seed) {
  StaggeredField f(g, s);
  Rng rng(seed);
  for (int c = 0; c < 3; ++c) randomize(f.c[c], rng);
  return f;
}

ScalarField random_scalar(const Grid& g, std::uint64_t seed) {
  ScalarField f(g);
  Rng rng(seed);
  randomize(f.a, rng);
  return f;
}

Real max_abs(const Array3& a) { return a.data().abs().maxCoeff(); }

//! Polynomial bump vanishing with its derivative at 0 and 1.
Real bump(Real t) { return t * t * (1 - t) * (1 - t); }

}  // namespace

TEST_CASE("staggered shapes and sample positions") {
  Grid g = small_grid(4);
  CHECK(stag_shape(Stag::face, g.n, 0) == std::array<int, 3>{5, 4, 4});
  CHECK(stag_shape(Stag::face, g.n, 1) == std::array<int, 3>{4, 5, 4});
  CHECK(stag_shape(Stag::edge, g.n, 0) == std::array<int, 3>{4, 5, 5});
  CHECK(stag_shape(Stag::edge, g.n, 2) == std::array<int, 3>{5, 5, 4});

  auto p = stag_pos(g, Stag::face, 0, 0, 0, 0);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(0.125));
  CHECK(p[2] == doctest::Approx(0.125));
  auto e = stag_pos(g, Stag::edge, 0, 0, 0, 0);
  CHECK(e[0] == doctest::Approx(0.125));
  CHECK(e[1] == 0.0);
  CHECK(e[2] == 0.0);

  auto v = sample_staggered(g, Stag::face, [](int c, Real x, Real, Real) {
    return c == 0 ? x : 0.0;
  });
  CHECK(v.c[0](2, 1, 3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("curl of a linear field is exact in the interior") {
  Grid g = small_grid(6);
  auto v = sample_staggered(g, Stag::face, [](int c, Real, Real, Real z) {
    return c == 0 ? z : 0.0;  // curl (z,0,0) = (0,1,0)
  });
  auto w = curl_fe(v);
  for (int k = 1; k < 6; ++k)
    for (int j = 1; j < 6 - 1; ++j)
      for (int i = 1; i < 6; ++i)
        CHECK(w.c[1](i, j, k) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("divergence of curl_ef vanishes identically") {
  Grid g = small_grid(7);
  auto A = random_field(g, Stag::edge, 11);
  auto v = curl_ef(A);
  auto d = divergence(v);
  CHECK(max_abs(d.a) <= 1e-12 * max_abs(A.c[0]) / (g.h(0) * g.h(0)));
}

TEST_CASE("curl of a discrete gradient vanishes away from the boundary") {
  Grid g = small_grid(8);
  auto p = random_scalar(g, 7);
  auto w = curl_fe(gradient(p));
  Real scale = max_abs(p.a) / (g.h(0) * g.h(0));
  for (int k = 1; k < 8; ++k)
    for (int j = 1; j < 8; ++j)
      for (int i = 1; i < 8; ++i) {
        CHECK(std::abs(w.c[0].at0(i, j, k)) <= 1e-12 * scale);
        CHECK(std::abs(w.c[1].at0(i, j, k)) <= 1e-12 * scale);
        CHECK(std::abs(w.c[2].at0(i, j, k)) <= 1e-12 * scale);
      }
}

TEST_CASE("curl_ef is the exact transpose of curl_fe") {
  Grid g{{5, 6, 7}, {1.0, 1.3, 0.9}};
  auto v = random_field(g, Stag::face, 21);
  auto A = random_field(g, Stag::edge, 22);
  Real lhs = dot(curl_fe(v), A);
  Real rhs = dot(v, curl_ef(A));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("gradient pairs with minus divergence on impermeable fields") {
  Grid g{{6, 5, 4}, {1.1, 1.0, 0.8}};
  auto p = random_scalar(g, 31);
  auto v = random_field(g, Stag::face, 32);
  zero_normal_boundary(v);
  Real lhs = dot(gradient(p), v);
  Real rhs = -dot(p, divergence(v));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("symmetric gradient transpose pairing") {
  Grid g{{5, 4, 6}, {1.0, 0.7, 1.2}};
  auto v = random_field(g, Stag::face, 41);
  TensorField6 T(g);
  Rng rng(42);
  for (int a = 0; a < 3; ++a) {
    randomize(T.diag[a], rng);
    randomize(T.off[a], rng);
  }
  auto D = sym_grad(v);
  Real rhs = 0;
  for (int a = 0; a < 3; ++a) {
    rhs += (T.diag[a].data() * D.diag[a].data()).sum();
    rhs += 2 * (T.off[a].data() * D.off[a].data()).sum();
  }
  rhs *= g.cell_volume();
  Real lhs = dot(sym_grad_t(T), v);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("full gradient transpose pairing") {
  Grid g{{4, 6, 5}, {0.9, 1.0, 1.1}};
  auto v = random_field(g, Stag::face, 51);
  TensorField9 F(g);
  Rng rng(52);
  for (int m = 0; m < 9; ++m) randomize(F.comp[m], rng);
  Real lhs = dot(grad_full_t(F), v);
  Real rhs = dot(F, grad_full(v));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("full gradient of a linear field is exact in the interior") {
  Grid g = small_grid(6);
  auto v = sample_staggered(g, Stag::face, [](int c, Real, Real y, Real) {
    return c == 0 ? 3 * y : 0.0;
  });
  auto G = grad_full(v);
  for (int k = 1; k < 5; ++k)
    for (int j = 1; j < 5; ++j)
      for (int i = 1; i < 5; ++i) {
        CHECK(G.comp[3](i, j, k) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(std::abs(G.comp[0](i, j, k)) < 1e-12);
      }
}

TEST_CASE("rotational convection is energy-neutral to rounding") {
  Grid g{{6, 7, 5}, {1, 1, 1}};
  auto v = random_field(g, Stag::face, 61);
  auto conv = convective_rot(v);
  Real pairing = dot(conv, v);
  Real scale = norm2(conv) * norm2(v) + 1e-300;
  CHECK(std::abs(pairing) / scale < 1e-13);

  // also with an independently frozen vorticity
  auto w = random_field(g, Stag::edge, 62);
  Real pairing2 = dot(convective_rot_frozen(w, v), v);
  Real scale2 = norm2(convective_rot_frozen(w, v)) * norm2(v) + 1e-300;
  CHECK(std::abs(pairing2) / scale2 < 1e-13);
}

TEST_CASE("rotational and divergence convection differ by an exact gradient") {
  // away from the walls the two stencils satisfy the discrete analogue of
  // (grad v)v = w x v + grad(|v|^2 / 2) identically: the raw fields differ at
  // O(1) but the solenoidal parts coincide to solver tolerance, for any
  // interior-supported solenoidal field
  Grid g = small_grid(12);
  StaggeredField psi(g, Stag::edge);
  Rng rng(99);
  for (int c = 0; c < 3; ++c) {
    auto sh = stag_shape(Stag::edge, g.n, c);
    for (int k = 0; k < sh[2]; ++k)
      for (int j = 0; j < sh[1]; ++j)
        for (int i = 0; i < sh[0]; ++i) {
          Real val = rng.uniform(-1, 1);
          bool inner = i >= 3 && i <= sh[0] - 4 && j >= 3 && j <= sh[1] - 4 && k >= 3 &&
                       k <= sh[2] - 4;
          psi.c[c](i, j, k) = inner ? val : 0.0;
        }
  }
  auto v = curl_ef(psi);
  auto rot = convective_rot(v);
  auto dv = convective_div(v);
  StaggeredField raw = rot;
  raw -= dv;
  CHECK(norm2(raw) / norm2(rot) > 0.1);  // the raw stencils really differ

  auto pr = leray_project(rot, 1e-12);
  auto pd = leray_project(dv, 1e-12);
  StaggeredField diff = pr.v;
  diff -= pd.v;
  CHECK(norm2(diff) / (norm2(pr.v) + 1e-300) < 1e-9);

  // with support touching the walls the zero extension breaks the identity in
  // the boundary shell only, so the mismatch shrinks under refinement
  Real err_prev = 0;
  for (int n : {8, 16}) {
    Grid gb = small_grid(n);
    auto psib = sample_staggered(gb, Stag::edge, [](int c, Real x, Real y, Real z) {
      return c == 2 ? bump(x) * bump(y) * bump(z) * 40 : 0.0;
    });
    auto vb = curl_ef(psib);
    auto prb = leray_project(convective_rot(vb), 1e-11);
    auto pdb = leray_project(convective_div(vb), 1e-11);
    StaggeredField db = prb.v;
    db -= pdb.v;
    Real err = norm2(db) / (norm2(prb.v) + 1e-300);
    if (n == 16) CHECK(err < 0.6 * err_prev);
    err_prev = err;
  }
}

TEST_CASE("leray projection removes gradients and keeps curls") {
  Grid g = small_grid(10);

  // a discrete curl is already solenoidal: projection must not move it
  auto psi = random_field(g, Stag::edge, 71);
  auto v = curl_ef(psi);
  auto res = leray_project(v, 1e-11);
  StaggeredField moved = res.v;
  moved -= v;
  CHECK(norm2(moved) <= 1e-9 * norm2(v));

  // generic impermeable field: divergence drops by the solver tolerance
  auto u = random_field(g, Stag::face, 72);
  zero_normal_boundary(u);
  Real div0 = std::sqrt(dot(divergence(u), divergence(u)));
  auto pu = leray_project(u, 1e-10);
  Real div1 = std::sqrt(dot(divergence(pu.v), divergence(pu.v)));
  CHECK(div1 <= 1e-8 * div0);

  // idempotence and orthogonality to discrete gradients
  auto ppu = leray_project(pu.v, 1e-10);
  StaggeredField drift = ppu.v;
  drift -= pu.v;
  CHECK(norm2(drift) <= 1e-8 * norm2(pu.v));
  auto q = random_scalar(g, 73);
  Real ortho = dot(pu.v, gradient(q));
  CHECK(std::abs(ortho) <= 1e-8 * norm2(pu.v) * norm2(gradient(q)));
}

TEST_CASE("poisson solve inverts the lattice operator") {
  // eigenvector of the zero-ghost lattice Laplacian gives an exact pair
  const int n = 12;
  Array3 u(n, n, n), rhs(n, n, n);
  const Real h = 1.0 / n;
  Real lam = 0;
  for (int a = 0; a < 3; ++a) lam += (2 - 2 * std::cos(M_PI / (n + 1))) / (h * h);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        Real s = std::sin(M_PI * (i + 1.0) / (n + 1)) * std::sin(M_PI * (j + 1.0) / (n + 1)) *
                 std::sin(M_PI * (k + 1.0) / (n + 1));
        u(i, j, k) = s;
        rhs(i, j, k) = lam * s;
      }
  auto res = poisson_dirichlet(rhs, {h, h, h}, 1e-12);
  CHECK(res.rel_residual <= 1e-12);
  Real err = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) err = std::max(err, std::abs(res.u(i, j, k) - u(i, j, k)));
  CHECK(err < 1e-9);
}

TEST_CASE("norms against closed forms") {
  // interval: sin has exact midpoint quadrature, the hat weight integrates to 1/4
  Line1D f(1.0, 256);
  for (int i = 0; i < f.n; ++i) f.v[i] = std::sin(M_PI * f.x(i));
  CHECK(norm(f, {.p = 2}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  Line1D one(1.0, 64);
  for (auto& t : one.v) t = 1;
  CHECK(norm(one, {.p = 1, .weight_alpha = 1.0}) == doctest::Approx(0.25).epsilon(1e-13));

  NormSpec w1{.p = 2, .sobolev_order = 1};
  Real full = norm(f, w1);
  CHECK(full == doctest::Approx(std::sqrt(0.5 + M_PI * M_PI / 2)).epsilon(1e-3));

  // Gagliardo seminorm of u = x at s = 1/2, p = 2 is exactly 1; the midpoint
  // double sum evaluates to sqrt(1 - 1/n)
  Line1D lin(1.0, 128);
  for (int i = 0; i < lin.n; ++i) lin.v[i] = lin.x(i);
  Real gs = norm(lin, {.p = 2, .fractional_s = 0.5});
  CHECK(gs == doctest::Approx(std::sqrt(1.0 - 1.0 / 128)).epsilon(1e-12));
  CHECK(gs == doctest::Approx(1.0).epsilon(0.01));

  // 3D: constants and weighted volumes
  Grid g = small_grid(16);
  ScalarField c1(g);
  c1.a.fill(1);
  CHECK(norm(c1, {.p = 3}) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(norm(c1, {.p = 1, .weight_alpha = 1.0}) == doctest::Approx(0.125).epsilon(5e-3));

  // integrable singular weight: E[d^-1/2] = 16 sqrt(2)/5 over the unit cube
  Grid g32 = small_grid(32);
  ScalarField c2(g32);
  c2.a.fill(1);
  CHECK(norm(c2, {.p = 1, .weight_alpha = -0.5}) ==
        doctest::Approx(16 * std::sqrt(2.0) / 5).epsilon(0.02));

  auto v = sample_staggered(g, Stag::face, [](int c, Real, Real, Real) {
    return c == 0 ? 1.0 : 0.0;
  });
  CHECK(norm(v, {.p = 3}) == doctest::Approx(1.0).epsilon(1e-13));

  // stream-function field vanishing on the boundary: psi = sin^2(pi x) sin^2(pi y)
  // sin^2(pi z) / pi gives |grad v|_2 = pi sqrt(15) / 4
  Grid g24 = small_grid(24);
  auto sf = sample_staggered(g24, Stag::face, [](int c, Real x, Real y, Real z) {
    auto s2 = [](Real t) { Real s = std::sin(M_PI * t); return s * s; };
    if (c == 0) return s2(x) * std::sin(2 * M_PI * y) * s2(z);
    if (c == 1) return -std::sin(2 * M_PI * x) * s2(y) * s2(z);
    return 0.0;
  });
  CHECK(grad_norm(sf, 2.0) == doctest::Approx(M_PI * std::sqrt(15.0) / 4).epsilon(0.03));

  CHECK_THROWS_AS(norm(c1, {.p = 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(norm(c1, {.p = 2, .fractional_s = 1.5}), std::invalid_argument);
}

TEST_CASE("field serialization round trip") {
  Grid g{{5, 4, 6}, {1.0, 0.5, 2.0}};
  auto v = random_field(g, Stag::edge, 91);
  save_field("io_roundtrip_edge.bin", v);
  auto back = load_field("io_roundtrip_edge.bin");
  REQUIRE(!back.scalar);
  CHECK(back.stag == Stag::edge);
  CHECK(back.grid == g);
  for (int c = 0; c < 3; ++c)
    CHECK((back.v.c[c].data() - v.c[c].data()).abs().maxCoeff() == 0.0);

  auto s = random_scalar(g, 92);
  save_field("io_roundtrip_cell.bin", s);
  auto back2 = load_field("io_roundtrip_cell.bin");
  REQUIRE(back2.scalar);
  CHECK((back2.s.a.data() - s.a.data()).abs().maxCoeff() == 0.0);
  std::remove("io_roundtrip_edge.bin");
  std::remove("io_roundtrip_cell.bin");
}
