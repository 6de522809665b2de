#include <cmath>

#include "dclab/fields.hpp"

namespace dclab::fields {

namespace {

//! -lap with zero Dirichlet ghosts on the array's own lattice.
void neg_lap(const Array3& u, const std::array<Real, 3>& h, Array3& out) {
  const Real ax = 1 / (h[0] * h[0]), ay = 1 / (h[1] * h[1]), az = 1 / (h[2] * h[2]);
  for (int k = 0; k < u.n(2); ++k)
    for (int j = 0; j < u.n(1); ++j)
      for (int i = 0; i < u.n(0); ++i)
        out(i, j, k) = (2 * u(i, j, k) - u.at0(i - 1, j, k) - u.at0(i + 1, j, k)) * ax +
                       (2 * u(i, j, k) - u.at0(i, j - 1, k) - u.at0(i, j + 1, k)) * ay +
                       (2 * u(i, j, k) - u.at0(i, j, k - 1) - u.at0(i, j, k + 1)) * az;
}

Real asum(const Array3& a, const Array3& b) { return (a.data() * b.data()).sum(); }

}  // namespace

PoissonResult poisson_dirichlet(const Array3& rhs, std::array<Real, 3> h, Real tol,
                                int max_iter) {
  PoissonResult res;
  res.u = Array3(rhs.n(0), rhs.n(1), rhs.n(2));
  const Real rhs2 = asum(rhs, rhs);
  if (rhs2 == 0) return res;
  const Real stop2 = rhs2 * tol * tol;

  Array3 r = rhs, p = rhs, Ap(rhs.n(0), rhs.n(1), rhs.n(2));
  Real rr = rhs2;
  for (int it = 0; it < max_iter; ++it) {
    neg_lap(p, h, Ap);
    Real pAp = asum(p, Ap);
    if (pAp <= 0 || !std::isfinite(pAp)) throw NumericalError("poisson_dirichlet: breakdown");
    Real alpha = rr / pAp;
    res.u.data() += alpha * p.data();
    r.data() -= alpha * Ap.data();
    Real rr_new = asum(r, r);
    if (rr_new <= stop2) {
      res.iters = it + 1;
      res.rel_residual = std::sqrt(rr_new / rhs2);
      return res;
    }
    p.data() = r.data() + (rr_new / rr) * p.data();
    rr = rr_new;
  }
  res.iters = max_iter;
  res.rel_residual = std::sqrt(rr / rhs2);
  return res;
}

LerayResult leray_project(const StaggeredField& v, Real tol, const ScalarField* warm) {
  const Grid& g = v.grid;
  LerayResult res;
  res.phi = ScalarField(g);

  // solve -div(grad phi) = -div v, then subtract grad phi
  ScalarField rhs = divergence(v);
  rhs.a.data() = -rhs.a.data();
  rhs.a.data() -= rhs.a.data().mean();

  const Real rhs2 = asum(rhs.a, rhs.a);
  if (rhs2 == 0) {
    res.v = v;
    return res;
  }
  const Real stop2 = rhs2 * tol * tol;

  ScalarField x(g);
  if (warm && warm->grid == g) {
    x.a = warm->a;
    x.a.data() -= x.a.data().mean();
  }

  auto apply = [&g](const ScalarField& q, ScalarField& out) {
    ScalarField d = divergence(gradient(q));
    out.a.data() = -d.a.data();
  };

  ScalarField r(g), p(g), Ap(g);
  apply(x, Ap);
  r.a.data() = rhs.a.data() - Ap.a.data();
  p.a = r.a;
  Real rr = asum(r.a, r.a);
  int it = 0;
  const int max_iter = 50000;
  while (rr > stop2 && it < max_iter) {
    apply(p, Ap);
    Real pAp = asum(p.a, Ap.a);
    if (pAp <= 0 || !std::isfinite(pAp)) throw NumericalError("leray_project: breakdown");
    Real alpha = rr / pAp;
    x.a.data() += alpha * p.a.data();
    r.a.data() -= alpha * Ap.a.data();
    Real rr_new = asum(r.a, r.a);
    p.a.data() = r.a.data() + (rr_new / rr) * p.a.data();
    rr = rr_new;
    ++it;
  }
  if (!std::isfinite(rr)) throw NumericalError("leray_project: diverged");

  x.a.data() -= x.a.data().mean();
  res.phi = x;
  res.iters = it;
  res.rel_residual = std::sqrt(rr / rhs2);
  res.v = v;
  StaggeredField gp = gradient(x);
  res.v -= gp;
  return res;
}

}  // namespace dclab::fields
