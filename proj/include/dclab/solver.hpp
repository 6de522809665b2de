#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dclab/fields.hpp"
#include "dclab/operators.hpp"

namespace dclab::solver {

using fields::Grid;
using fields::ScalarField;
using fields::StaggeredField;
using fields::TensorField9;

//! How the iteration regains coercivity when nu0 = 0: an added p-Stokes term
//! of weight eps, or the stress weight d^alpha replaced by (eps + d)^alpha.
enum class RegFlavor { sym_grad, shifted_weight };

enum class ConvectiveForm { rotational, divergence };

//! Parameters of the steady model with stress d^alpha (kappa + |w|)^(p-2) w,
//! Newtonian part nu0 and regularization weight eps.
struct ModelParams {
  Real p = 3;
  Real alpha = 1;
  Real kappa = 0;
  Real nu0 = 0;
  Real eps = 0;
  Real p_reg = 3;
  RegFlavor reg_flavor = RegFlavor::sym_grad;
  ConvectiveForm convective_form = ConvectiveForm::rotational;
};

//! Throws std::invalid_argument unless p, p_reg > 1, kappa, alpha >= 0, and at
//! least one of nu0, eps is positive. Without the Newtonian part the weight
//! power must stay below p - 1, and below 3/2 for the rotational convective
//! form at p = 3.
void validate(const ModelParams& mp);

//! Body force on faces, given directly or through a cell tensor potential F
//! with <force, phi> = -<F, grad phi> exactly on the grid. Exactly one of the
//! two members must be set.
struct ForcingSpec {
  std::optional<StaggeredField> body;
  std::optional<TensorField9> potential;
};

void validate(const ForcingSpec& fs, const Grid& g);

//! The face force: body as given, or the exact transpose -grad_full_t(F).
StaggeredField body_force(const ForcingSpec& fs, const Grid& g);

//! Every pairing of the discrete weak form tested with the solution itself,
//! plus the norms entering the a-priori estimate it is compared against.
struct EnergyLedger {
  Real eps_energy = 0;       //! eps integral |Dv|^p_reg
  Real visc_energy = 0;      //! nu0 integral |Dv|^2
  Real stress_energy = 0;    //! <stress(w), w>, weight d^alpha or (eps+d)^alpha
  Real conv_pairing = 0;     //! <convective term, v>
  Real forcing_pairing = 0;  //! <force, v>
  Real balance_residual = 0; //! relative defect of eps+visc+stress+conv = forcing
  Real weighted_stress = 0;  //! cell-collocated integral of weight * |w|^p
  Real weighted_F_norm = 0;  //! ||F|| in L^p' with weight d^(-alpha/(p-1)), or L^2 when nu0 > 0
  Real rhs_energy = 0;       //! forcing term of the a-priori estimate
  Real lhs_energy = 0;       //! eps_energy + stress_energy + nu0 half-share
  Real C_obs = 0;            //! lhs_energy / rhs_energy
  std::array<Real, 3> grad_q_norms{};  //! full-gradient norms at q = 1.2, 1.33, 1.45
  std::optional<Real> energy_equality_rel;  //! |stress - forcing| gap, p = 3, nu0 = 0, alpha < 6/5
};

struct SolveReport {
  StaggeredField velocity;
  ScalarField pressure;
  std::vector<Real> residual_history;
  int iterations = 0;
  bool converged = false;
  Real forcing_scale = 0;  //! the norm the residual history is relative to
  EnergyLedger ledger;
};

struct SolverConfig {
  Real tol = 1e-8;
  int max_iter = 500;
  Real damping = 0.5;
  Real inner_tol = 1e-2;
  int inner_max_iter = 400;
};

//! Full nonlinear operator at faces, no projection: regularization + Newtonian
//! part + curl of the stress + convective term.
StaggeredField apply_operator(const ModelParams& mp, const StaggeredField& v);

//! Leray projection of apply_operator(v) - force, with wall-normal faces
//! masked to zero first so only the constrained equations are measured.
StaggeredField residual(const ModelParams& mp, const ForcingSpec& fs, const Grid& g,
                        const StaggeredField& v);

//! Weak-form defect <apply_operator(v) - force, phi> divided by the sum of the
//! absolute values of the individual pairings, for a solenoidal Dirichlet phi.
Real weak_residual(const ModelParams& mp, const ForcingSpec& fs, const StaggeredField& v,
                   const StaggeredField& phi);

//! Damped Picard iteration with frozen-coefficient linear solves. Stops when
//! the projected residual falls below tol relative to the projected forcing.
//! Non-convergence is reported through the flag; NaN aborts with
//! NumericalError.
SolveReport solve(const ModelParams& mp, const ForcingSpec& fs, const Grid& g,
                  const SolverConfig& cfg, const StaggeredField* initial = nullptr);

EnergyLedger energy_ledger(const ModelParams& mp, const ForcingSpec& fs, const Grid& g,
                           const StaggeredField& v);

struct ContinuationStage {
  Real eps = 0;
  bool converged = false;
  int iterations = 0;
  Real eps_energy = 0;
  Real stress_energy = 0;
  Real eps_share = 0;        //! eps_energy / (eps_energy + visc_energy + stress_energy)
  Real weighted_stress = 0;
  Real C_obs = 0;
  Real omega_cauchy = 0;     //! L^3 distance of the vorticity to the previous stage on K
  Real stress_cauchy = 0;    //! L^p' distance of the stress to the previous stage on K
};

struct ContinuationReport {
  std::vector<ContinuationStage> stages;
  std::vector<StaggeredField> velocities;
  bool all_converged = false;
};

//! Solves along a strictly decreasing eps schedule, each stage warm-started
//! from the previous velocity. Stage-to-stage distances are measured on the
//! compact core K = {distance >= compact_threshold}.
ContinuationReport continuation(const ModelParams& mp, const ForcingSpec& fs, const Grid& g,
                                const std::vector<Real>& eps_schedule, const SolverConfig& cfg,
                                Real compact_threshold = 0.25);

//! Ball B for the localized monotonicity diagnostic; 2B must fit strictly
//! inside the domain.
struct BallSpec {
  std::array<Real, 3> center{0.5, 0.5, 0.5};
  Real radius = 0.15;
};

//! The localized monotonicity identity evaluated on a pair of fields: lhs is
//! the bump-weighted monotonicity gap, terms holds the six decomposition
//! values with the fifth recovered as the closure residual of the identity.
struct LocalizationReport {
  Real lhs = 0;
  std::array<Real, 6> terms{};
  Real max_div_w = 0;
  Real w_norm = 0;
};

LocalizationReport localization_diagnostic(const ModelParams& mp, const Grid& g,
                                           const StaggeredField& v_eps,
                                           const StaggeredField& v_limit, const BallSpec& ball);

}  // namespace dclab::solver
