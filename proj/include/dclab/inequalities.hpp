#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dclab/core.hpp"
#include "dclab/fields.hpp"

namespace dclab::inequalities {

using fields::Grid;
using fields::Line1D;
using fields::ScalarField;
using fields::StaggeredField;

enum class Ineq {
  poincare,
  korn,
  sobolev,
  div_curl,
  grad_curl_weighted,
  gen_sobolev,
  embedding_L1,
  hardy,
};

//! Random test ensembles. boundary_layer stacks wall-spanning sheets at
//! dyadic distances from one wall; it is the adversarial family for the
//! criticality demos, where interior bumps cannot expose the failure.
enum class FieldKind { dirichlet, solenoidal_dirichlet, interior_bump, boundary_layer };

struct InequalityCase {
  Ineq name = Ineq::poincare;
  Real p = 2;
  Real alpha = 0;  //!< weight exponent of d^alpha
  Real delta = 0;  //!< gradient weight d^(p delta) in the averaged Sobolev bound
  Real s = 0.25;   //!< fractional order
  Real q = 0;      //!< target exponent; 0 selects the largest admissible
  int samples = 50;
  std::uint64_t seed = 1;
  FieldKind kind = FieldKind::dirichlet;
  bool hypothesis_demo = false;  //!< parameters deliberately out of range
};

//! Throws std::invalid_argument unless the parameters satisfy the hypotheses
//! of the named estimate; hypothesis_demo lifts only the range restrictions
//! the demo is meant to break.
void validate(const InequalityCase& c);

//! Largest admissible exponent q = 3p/(3 - p(1 - delta)) for the averaged
//! Sobolev bound, or the explicit q of the case when set.
Real gen_sobolev_q(const InequalityCase& c);

enum class Verdict { bounded, unstable, violated_hypothesis_demo };

struct InequalityReport {
  Real max_ratio = 0;
  std::array<Real, 3> quantiles{0, 0, 0};  //!< 50 / 90 / 100 percentiles
  Real refined_max_ratio = 0;              //!< same ensemble on the doubled grid
  Real drift = 0;                          //!< relative change of the max ratio
  Verdict verdict = Verdict::bounded;
  int samples_used = 0;
  std::vector<Real> ratios;  //!< base-grid ratios in sample order
};

//! Smooth random field: superposition of polynomial bumps compactly supported
//! away from the boundary. All random draws depend on the seed only, so the
//! same seed on a finer grid resamples the same underlying field. The
//! solenoidal variant is post-composed with the discrete projection.
StaggeredField sample_field(const Grid& g, FieldKind kind, std::uint64_t seed);

//! Scalar variant for the estimates that act on scalar functions. Rejects
//! solenoidal_dirichlet, which has no scalar meaning.
ScalarField sample_scalar(const Grid& g, FieldKind kind, std::uint64_t seed);

//! Runs the ensemble on g, then once more on the doubled grid. The verdict is
//! bounded when the max ratio moves < 10% under the doubling, unstable when
//! it moves more, and violated_hypothesis_demo when an out-of-range case
//! exhibits the instability it was built to show (or a ratio is infinite).
InequalityReport check(const InequalityCase& c, const Grid& g);

struct EmbeddingMargin {
  std::array<Real, 3> levels{0, 0, 0};  //!< integral of d^(-alpha/(p-1)) at n/4, n/2, n
  Real increment_ratio = 0;             //!< (levels[2]-levels[1]) / (levels[1]-levels[0])
  bool stable = false;
};

//! Quadrature of the dual weight whose finiteness decides whether the
//! alpha-weighted p-integrable functions embed into the integrable ones.
//! Converging increments (ratio < 0.9) mean a stable limit; a ratio near 1 is
//! the logarithmic borderline and larger ratios are power divergence.
EmbeddingMargin embedding_margin(Real p, Real alpha, const Grid& g);

struct HardyReport {
  Real lhs = 0;    //!< || u / d^s ||_p
  Real rhs = 0;    //!< fractional seminorm of order s
  Real ratio = 0;  //!< lhs / rhs; 0 when both vanish, inf when only rhs does
};

//! Fractional Hardy quotient on a compactly supported sample. Refuses grids
//! whose pair count makes the double sum impractical and orders with
//! |s - 1/p - 1/2| < 0.05, where the equivalence is known to break.
HardyReport hardy_check(Real s, Real p, const ScalarField& u);
HardyReport hardy_check(Real s, Real p, const Line1D& u);

//! 1D reduced quotient ||u||_p / ||u'||_p with zero extension at the segment
//! ends; the closed-form eigenfunction checks run here.
Real poincare_ratio(const Line1D& u, Real p);

}  // namespace dclab::inequalities
