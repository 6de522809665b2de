#pragma once

#include <array>
#include <vector>

#include "dclab/core.hpp"

namespace dclab::geometry {

enum class DomainKind { box, ball };

//! Axis-aligned box [0,extent] or origin-centered ball of radius extent[0].
//! dim selects how many coordinates are active (1, 2 or 3).
struct DomainSpec {
  DomainKind kind = DomainKind::box;
  int dim = 3;
  std::array<Real, 3> extent{1, 1, 1};
};

//! Distance to the boundary, measured inside the domain; 0 on and outside it.
Real distance(const DomainSpec& dom, const std::array<Real, 3>& x);

//! Weight d(x)^alpha built from the boundary distance of a domain.
struct PowerWeight {
  DomainSpec domain;
  Real alpha = 0;

  //! d^alpha at x. Returns 0 outside the domain for alpha > 0 and +inf for
  //! alpha < 0 on the boundary itself; quadrature points never sit exactly there.
  Real eval(const std::array<Real, 3>& x) const;
};

//! Dyadic decomposition of the cube [lo, lo+side]^dim into levels 0..J,
//! level j holding 2^(j*dim) congruent subcubes.
struct DyadicCubeFamily {
  std::array<Real, 3> lo{0, 0, 0};
  Real side = 1;
  int J = 4;
  int dim = 3;
};

//! Smallest axis-aligned cube covering the domain, split to depth J.
DyadicCubeFamily bounding_family(const DomainSpec& dom, int J);

struct ApProfile {
  Real value = 0;                //! max over all cubes of all levels
  std::vector<Real> level_max;   //! max over cubes of each level j = 0..J
};

//! Muckenhoupt-type constant sup over the cube family of
//! avg(w) * avg(w^(1/(1-p)))^(p-1), averages taken over domain samples only.
//! Every cube is sampled on the same absolute midpoint lattice with q points
//! per axis across a finest-level cube, so refining J genuinely refines the
//! quadrature everywhere. Requires p > 1.
Real ap_constant(const PowerWeight& w, const DyadicCubeFamily& fam, Real p, int q = 8);

ApProfile ap_profile(const PowerWeight& w, const DyadicCubeFamily& fam, Real p, int q = 8);

//! Midpoint integral of d^alpha over the domain with n points per axis.
//! Samples falling outside the domain are skipped.
Real integrate_weight(const DomainSpec& dom, Real alpha, int n);

}  // namespace dclab::geometry
