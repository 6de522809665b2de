#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dclab/core.hpp"
#include "dclab/geometry.hpp"

namespace dclab::fields {

//! Dense 3D array of doubles, x-fastest layout, zero-initialized.
class Array3 {
 public:
  Array3() = default;
  Array3(int nx, int ny, int nz)
      : n_{nx, ny, nz},
        a_(Eigen::ArrayXd::Zero(static_cast<long>(nx) * ny * nz)) {}

  int n(int axis) const { return n_[axis]; }
  const std::array<int, 3>& shape() const { return n_; }
  long size() const { return a_.size(); }

  Real& operator()(int i, int j, int k) { return a_[idx(i, j, k)]; }
  Real operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }

  //! Zero-extended read: indices outside the array return 0.
  Real at0(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i >= n_[0] || j >= n_[1] || k >= n_[2]) return 0;
    return a_[idx(i, j, k)];
  }

  Eigen::ArrayXd& data() { return a_; }
  const Eigen::ArrayXd& data() const { return a_; }
  void fill(Real v) { a_.setConstant(v); }

 private:
  long idx(int i, int j, int k) const {
    return i + static_cast<long>(n_[0]) * (j + static_cast<long>(n_[1]) * k);
  }
  std::array<int, 3> n_{0, 0, 0};
  Eigen::ArrayXd a_;
};

//! Uniform box grid [0,L] with n cells per axis.
struct Grid {
  std::array<int, 3> n{8, 8, 8};
  std::array<Real, 3> L{1, 1, 1};

  Real h(int axis) const { return L[axis] / n[axis]; }
  Real hmin() const { return std::min(h(0), std::min(h(1), h(2))); }
  Real cell_volume() const { return h(0) * h(1) * h(2); }
  long cell_count() const { return static_cast<long>(n[0]) * n[1] * n[2]; }

  geometry::DomainSpec domain() const {
    return {geometry::DomainKind::box, 3, {L[0], L[1], L[2]}};
  }
  bool operator==(const Grid&) const = default;
};

//! Sample placement: cell centers, face centers (velocity), edge midpoints
//! (vorticity and stress).
enum class Stag { cell, face, edge };

//! Index extents of component c for a staggered layout on grid n.
std::array<int, 3> stag_shape(Stag s, const std::array<int, 3>& n, int c);

//! Physical position of sample (i,j,k) of component c.
std::array<Real, 3> stag_pos(const Grid& g, Stag s, int c, int i, int j, int k);

struct ScalarField {
  Grid grid;
  Array3 a;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), a(g.n[0], g.n[1], g.n[2]) {}
};

struct StaggeredField {
  Grid grid;
  Stag stag = Stag::face;
  std::array<Array3, 3> c;

  StaggeredField() = default;
  StaggeredField(const Grid& g, Stag s) : grid(g), stag(s) {
    for (int a = 0; a < 3; ++a) {
      auto sh = stag_shape(s, g.n, a);
      c[a] = Array3(sh[0], sh[1], sh[2]);
    }
  }

  StaggeredField& operator+=(const StaggeredField& o);
  StaggeredField& operator-=(const StaggeredField& o);
  StaggeredField& operator*=(Real s);
};

//! Symmetric 3x3 tensor samples: diagonal entries at cell centers, off-diagonal
//! entry skipping axis a at a-edge midpoints (off[0]=T23, off[1]=T13, off[2]=T12).
struct TensorField6 {
  Grid grid;
  std::array<Array3, 3> diag;
  std::array<Array3, 3> off;

  TensorField6() = default;
  explicit TensorField6(const Grid& g);
};

//! Full gradient samples at cell centers: comp[3*a+b] holds d_a v_b.
struct TensorField9 {
  Grid grid;
  std::array<Array3, 9> comp;

  TensorField9() = default;
  explicit TensorField9(const Grid& g);
};

// ---------------------------------------------------------------------------
// construction helpers

StaggeredField sample_staggered(const Grid& g, Stag s,
                                const std::function<Real(int c, Real, Real, Real)>& f);
ScalarField sample_cells(const Grid& g, const std::function<Real(Real, Real, Real)>& f);

//! Zero the boundary-normal face samples (Dirichlet velocity constraint set).
void zero_normal_boundary(StaggeredField& face);

// ---------------------------------------------------------------------------
// inner products (uniform h^3 sample weight throughout)

Real dot(const ScalarField& a, const ScalarField& b);
Real dot(const StaggeredField& a, const StaggeredField& b);
Real dot(const TensorField9& a, const TensorField9& b);
Real norm2(const StaggeredField& a);

// ---------------------------------------------------------------------------
// mimetic operators; all reads are zero-extended outside index ranges

ScalarField divergence(const StaggeredField& face);
StaggeredField gradient(const ScalarField& p);

//! Vorticity: faces -> edges.
StaggeredField curl_fe(const StaggeredField& face);

//! Exact transpose of curl_fe: edges -> faces. div(curl_ef(A)) vanishes
//! identically and <curl_fe v, A> = <v, curl_ef A> holds to rounding.
StaggeredField curl_ef(const StaggeredField& edge);

TensorField6 sym_grad(const StaggeredField& face);

//! Transpose of sym_grad with off-diagonal multiplicity 2:
//! <sym_grad_t T, v> = sum_cells T_aa D_aa + 2 sum_edges T_ab D_ab (times h^3).
StaggeredField sym_grad_t(const TensorField6& T);

TensorField9 grad_full(const StaggeredField& face);

//! Transpose of grad_full: <grad_full_t F, v> = <F, grad_full v> exactly.
StaggeredField grad_full_t(const TensorField9& F);

//! Rotational-form convection omega x v with omega = curl_fe(v); the
//! interpolation pairs edge values symmetrically so <conv, v> = 0 to rounding.
StaggeredField convective_rot(const StaggeredField& v_face);

//! Same stencil with the edge vorticity frozen at a given value.
StaggeredField convective_rot_frozen(const StaggeredField& omega_edge,
                                     const StaggeredField& v_face);

//! Divergence-form convection div(v (x) v) at faces.
StaggeredField convective_div(const StaggeredField& v_face);

//! Divergence-form convection with frozen transport: every flux product uses
//! w for the transporting factor and v for the advected one, so the result is
//! linear in v and equals convective_div(v) at w = v.
StaggeredField convective_div_frozen(const StaggeredField& w, const StaggeredField& v);

//! Pointwise magnitudes collocated to cell centers by component averaging.
ScalarField face_magnitude_cells(const StaggeredField& face);
ScalarField edge_magnitude_cells(const StaggeredField& edge);

// ---------------------------------------------------------------------------
// Poisson solves and the discrete solenoidal projection

struct PoissonResult {
  Array3 u;
  int iters = 0;
  Real rel_residual = 0;
};

//! CG solve of -lap u = rhs on a plain lattice with zero Dirichlet ghosts.
PoissonResult poisson_dirichlet(const Array3& rhs, std::array<Real, 3> h, Real tol,
                                int max_iter = 20000);

struct LerayResult {
  StaggeredField v;
  ScalarField phi;
  int iters = 0;
  Real rel_residual = 0;
};

//! Remove the discrete gradient part of a face field. Normal boundary values
//! are preserved; with Dirichlet input the result is divergence-free in every
//! cell up to the solver tolerance.
LerayResult leray_project(const StaggeredField& face, Real tol = 1e-10,
                          const ScalarField* warm = nullptr);

// ---------------------------------------------------------------------------
// norms

//! Lebesgue/Sobolev norm request. weight_alpha adds the factor d(x)^alpha with
//! d the boundary distance of the field's grid box. sobolev_order 1 includes
//! first derivatives. fractional_s requests the Gagliardo seminorm instead,
//! which is quadratic in the number of cells and refuses grids beyond 32^3.
struct NormSpec {
  Real p = 2;
  std::optional<Real> weight_alpha;
  int sobolev_order = 0;
  std::optional<Real> fractional_s;
};

Real norm(const ScalarField& f, const NormSpec& spec);
Real norm(const StaggeredField& f, const NormSpec& spec);

//! Cell-average of d(x)^alpha used by the weighted norms. Boundary cells of a
//! box domain get the exact closed-form average when -1 < alpha < 0; all other
//! cases evaluate at the cell midpoint.
Real cell_weight(const Grid& g, const geometry::DomainSpec& dom, Real alpha, int i, int j,
                 int k);

//! Plain gradient seminorm (int w |grad v|^p)^(1/p) with the full Jacobian
//! collocated at cell centers.
Real grad_norm(const StaggeredField& v, Real p, std::optional<Real> weight_alpha = {});

//! 1D segment [0,L] with n midpoint samples; used by the closed-form checks.
struct Line1D {
  Real L = 1;
  int n = 64;
  std::vector<Real> v;

  Line1D() = default;
  Line1D(Real length, int count) : L(length), n(count), v(count, 0) {}
  Real h() const { return L / n; }
  Real x(int i) const { return (i + 0.5) * h(); }
};

Real norm(const Line1D& f, const NormSpec& spec);

// ---------------------------------------------------------------------------
// serialization

struct FieldFile {
  Grid grid;
  bool scalar = false;
  Stag stag = Stag::face;
  ScalarField s;
  StaggeredField v;
};

void save_field(const std::string& path, const ScalarField& f);
void save_field(const std::string& path, const StaggeredField& f);
FieldFile load_field(const std::string& path);

}  // namespace dclab::fields
