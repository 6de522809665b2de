#pragma once

#include <array>

#include "dclab/fields.hpp"
#include "dclab/geometry.hpp"

namespace dclab::operators {

using fields::Grid;
using fields::ScalarField;
using fields::Stag;
using fields::StaggeredField;

//! Parameters of the degenerate stress d^alpha (kappa + |w|)^(p-2) w.
struct StressParams {
  Real p = 3;
  Real alpha = 2;
  Real kappa = 0;
};

//! Throws std::invalid_argument unless p > 1, alpha >= 0, kappa >= 0.
void validate(const StressParams& sp);

//! Stress evaluated at edge samples: the scalar factor uses the full vorticity
//! magnitude gathered to cells and averaged back to the edge, the weight is
//! evaluated at the edge position. Odd in w by construction. dist_shift
//! replaces the weight base d by dist_shift + d.
StaggeredField stress(const StressParams& sp, const geometry::PowerWeight& w,
                      const StaggeredField& omega_edge, Real dist_shift = 0);

//! Stress with the scalar factor frozen at omega_frozen and applied to omega,
//! hence linear in omega. mag_floor is added to the frozen magnitude so the
//! factor stays positive where omega_frozen vanishes.
StaggeredField stress_frozen(const StressParams& sp, const geometry::PowerWeight& w,
                             const StaggeredField& omega_frozen, const StaggeredField& omega,
                             Real dist_shift = 0, Real mag_floor = 0);

//! Integral of (S(w1) - S(w2)) . (w1 - w2) with both vorticities gathered to
//! cell-collocated vectors, so the integrand is pointwise nonnegative for any
//! input pair. Weight d^alpha from the power weight's distance function.
Real monotonicity_gap(const StressParams& sp, const geometry::PowerWeight& w,
                      const StaggeredField& omega1, const StaggeredField& omega2);

//! Same with an arbitrary nonnegative cell field in place of the boundary
//! distance.
Real monotonicity_gap(const StressParams& sp, const ScalarField& dist_cells,
                      const StaggeredField& omega1, const StaggeredField& omega2);

//! Discrete -eps div(|Dv|^(p_reg-2) Dv) at faces, assembled as the exact
//! transpose of the symmetric gradient so <op(v), v> >= 0 for every v.
StaggeredField p_stokes_operator(const StaggeredField& v_face, Real p_reg, Real eps);

//! p-Stokes with the scalar factor frozen at v_frozen and applied to v, hence
//! linear in v. The frozen coefficient is eps (mag_floor + |Dv_frozen|)^(p_reg-2).
StaggeredField p_stokes_frozen(const StaggeredField& v_frozen, const StaggeredField& v,
                               Real p_reg, Real eps, Real mag_floor = 0);

//! Star-shaped right inverse of the divergence on a ball: u = Bog(f) with
//! div u = f and u = 0 outside the ball. The core function is the normalized
//! bump (1 - |y-c|^2/rho^2)^3 with rho = core_frac * radius.
struct BogovskiiKernel {
  std::array<Real, 3> center{0.5, 0.5, 0.5};
  Real radius = 0.45;
  Real core_frac = 0.5;
};

void validate(const BogovskiiKernel& k, const Grid& g);

//! Quadrature of the explicit kernel: per output sample x and source cell y,
//! the ray integral of the core along x + t (x-y)/|x-y| is a polynomial over
//! the core ball and is integrated exactly by Gauss-Legendre. Throws
//! std::invalid_argument when f has nonzero mean over the ball (reporting the
//! mean) or support outside it.
StaggeredField bogovskii(const BogovskiiKernel& k, const ScalarField& f);

//! Hardy-Littlewood maximal function over concentric cubes of dyadic cell
//! radius 2^m - 1 (m = 0 gives |g| itself), zero extension outside the grid.
ScalarField maximal_function(const ScalarField& g);

}  // namespace dclab::operators
