#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dclab/inequalities.hpp"

namespace dclab::inequalities {

namespace {

using fields::Array3;
using fields::NormSpec;
using fields::Stag;
using fields::TensorField9;

Real bump(Real t2) {
  if (t2 >= 1) return 0;
  Real w = 1 - t2;
  return w * w * w;
}

struct Bump {
  std::array<Real, 3> ctr{0.5, 0.5, 0.5};
  Real r = 0.2;
  std::array<Real, 3> amp{0, 0, 0};
};

//! Wall-spanning layer at distance y from the wall {x2 = 0}, faded out
//! tangentially well inside the side walls.
struct Sheet {
  Real y = 0.25;
  Real half = 0.1;
  Real cx = 0.5, cz = 0.5;
  Real tx = 0.4, tz = 0.4;
  std::array<Real, 3> amp{0, 0, 0};
};

//! All draws depend on the seed and the box size only, never on the grid
//! resolution, so refining the grid resamples the same continuum field.
std::vector<Bump> draw_bumps(const Grid& g, FieldKind kind, std::uint64_t seed, int amps) {
  const Real lmin = std::min(g.L[0], std::min(g.L[1], g.L[2]));
  std::vector<Bump> out;
  Rng rng(seed);
  const int count = kind == FieldKind::interior_bump ? 1 : 6;
  for (int b = 0; b < count; ++b) {
    Bump bb;
    const Real margin = kind == FieldKind::interior_bump ? 0.1 * lmin : 0.03 * lmin;
    bb.r = kind == FieldKind::interior_bump ? rng.uniform(0.18, 0.28) * lmin
                                            : rng.uniform(0.16, 0.30) * lmin;
    for (int a = 0; a < 3; ++a)
      bb.ctr[a] = rng.uniform(bb.r + margin, g.L[a] - bb.r - margin);
    for (int c = 0; c < amps; ++c) bb.amp[c] = rng.amplitude(0.2, 1);
    out.push_back(bb);
  }
  return out;
}

//! Dyadic stack of sheets, one per resolvable scale; the amplitude grows like
//! the inverse distance so every extra resolved layer carries comparable mass
//! against the critical weights.
std::vector<Sheet> draw_sheets(const Grid& g, std::uint64_t seed, int amps) {
  const Real lmin = std::min(g.L[0], std::min(g.L[1], g.L[2]));
  const Real hmax = std::max(g.h(0), std::max(g.h(1), g.h(2)));
  std::vector<Sheet> out;
  for (int j = 0; j <= 6; ++j) {
    const Real d = 0.3 * lmin / (1 << j);
    if (d < 3.5 * hmax) break;
    Rng rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(j + 1)));
    Sheet s;
    s.y = d;
    s.half = 0.45 * d;
    s.cx = rng.uniform(0.45, 0.55) * g.L[0];
    s.cz = rng.uniform(0.45, 0.55) * g.L[2];
    s.tx = 0.4 * g.L[0];
    s.tz = 0.4 * g.L[2];
    for (int c = 0; c < amps; ++c) s.amp[c] = rng.amplitude(0.5, 1) * (lmin / d);
    out.push_back(s);
  }
  return out;
}

Real eval_bumps(const std::vector<Bump>& bumps, int c, Real x, Real y, Real z) {
  Real v = 0;
  for (const Bump& b : bumps) {
    const Real dx = x - b.ctr[0], dy = y - b.ctr[1], dz = z - b.ctr[2];
    v += b.amp[c] * bump((dx * dx + dy * dy + dz * dz) / (b.r * b.r));
  }
  return v;
}

Real eval_sheets(const std::vector<Sheet>& sheets, int c, Real x, Real y, Real z) {
  Real v = 0;
  for (const Sheet& s : sheets) {
    const Real ty = (y - s.y) / s.half;
    const Real ux = (x - s.cx) / s.tx;
    const Real uz = (z - s.cz) / s.tz;
    v += s.amp[c] * bump(ty * ty) * bump(ux * ux) * bump(uz * uz);
  }
  return v;
}

void hardy_validate(Real s, Real p) {
  if (!(p > 1)) throw std::invalid_argument("hardy: p must exceed 1");
  if (!(s > 0 && s < 1)) throw std::invalid_argument("hardy: order s must lie in (0,1)");
  if (std::abs(s - 1 / p - 0.5) < 0.05)
    throw std::invalid_argument(
        "hardy: s - 1/p too close to 1/2, where the equivalence breaks");
}

//! Weighted integrals of the cell-collocated gradient and its algebraic
//! parts. The pointwise relations |sym| <= |full|, |trace| <= 2 |full| and
//! |curl| <= 2 |full| are exact matrix algebra and enforced on every cell.
struct GradStats {
  Real grad_int = 0;
  Real sym_int = 0;
  Real div_int = 0;
  Real curl_int = 0;
};

GradStats grad_stats(const StaggeredField& v, Real p, std::optional<Real> alpha) {
  const Grid& g = v.grid;
  const auto dom = g.domain();
  const Real vol = g.cell_volume();
  const TensorField9 G = fields::grad_full(v);
  GradStats st;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        Real a[9];
        Real f2 = 0;
        for (int m = 0; m < 9; ++m) {
          a[m] = G.comp[m](i, j, k);
          f2 += a[m] * a[m];
        }
        const Real af = std::sqrt(f2);
        const Real d01 = 0.5 * (a[1] + a[3]);
        const Real d02 = 0.5 * (a[2] + a[6]);
        const Real d12 = 0.5 * (a[5] + a[7]);
        const Real sf = std::sqrt(a[0] * a[0] + a[4] * a[4] + a[8] * a[8] +
                                  2 * (d01 * d01 + d02 * d02 + d12 * d12));
        const Real dv = a[0] + a[4] + a[8];
        const Real cx = a[5] - a[7];
        const Real cy = a[6] - a[2];
        const Real cz = a[1] - a[3];
        const Real cf = std::sqrt(cx * cx + cy * cy + cz * cz);
        const Real tol = 1e-12 * (1 + af);
        if (sf > af + tol || std::abs(dv) > 2 * af + tol || cf > 2 * af + tol)
          throw NumericalError("gradient part exceeds its pointwise bound");
        const Real w = alpha ? fields::cell_weight(g, dom, *alpha, i, j, k) : 1;
        st.grad_int += w * std::pow(af, p) * vol;
        st.sym_int += w * std::pow(sf, p) * vol;
        st.div_int += w * std::pow(std::abs(dv), p) * vol;
        st.curl_int += w * std::pow(cf, p) * vol;
      }
  return st;
}

struct Pair {
  Real lhs = 0;
  Real rhs = 0;
};

Pair eval_vector(const InequalityCase& c, const StaggeredField& v) {
  switch (c.name) {
    case Ineq::poincare:
      return {fields::norm(v, {.p = c.p}), fields::grad_norm(v, c.p)};
    case Ineq::korn: {
      GradStats st = grad_stats(v, c.p, {});
      return {std::pow(st.grad_int, 1 / c.p), std::pow(st.sym_int, 1 / c.p)};
    }
    case Ineq::sobolev: {
      GradStats st = grad_stats(v, c.p, {});
      const Real pstar = 3 * c.p / (3 - c.p);
      return {fields::norm(v, {.p = pstar}), std::pow(st.sym_int, 1 / c.p)};
    }
    case Ineq::div_curl: {
      GradStats st = grad_stats(v, c.p, {});
      return {std::pow(st.grad_int, 1 / c.p),
              std::pow(st.div_int, 1 / c.p) + std::pow(st.curl_int, 1 / c.p)};
    }
    case Ineq::grad_curl_weighted: {
      GradStats st = grad_stats(v, c.p, c.alpha);
      return {st.grad_int, st.curl_int};
    }
    default:
      throw std::invalid_argument("inequality: scalar estimate fed a vector field");
  }
}

Pair eval_scalar(const InequalityCase& c, const ScalarField& u) {
  const Grid& g = u.grid;
  switch (c.name) {
    case Ineq::gen_sobolev: {
      const Real q = gen_sobolev_q(c);
      Real mean = 0;
      for (long m = 0; m < u.a.size(); ++m) mean += u.a.data()[m];
      mean *= g.cell_volume() / (g.L[0] * g.L[1] * g.L[2]);
      ScalarField um(g);
      um.a.data() = u.a.data() - mean;
      return {fields::norm(um, {.p = q}),
              fields::norm(fields::gradient(u), {.p = c.p, .weight_alpha = c.p * c.delta})};
    }
    case Ineq::embedding_L1:
      return {fields::norm(u, {.p = 1}),
              fields::norm(u, {.p = c.p, .weight_alpha = c.alpha})};
    case Ineq::hardy: {
      HardyReport hr = hardy_check(c.s, c.p, u);
      return {hr.lhs, hr.rhs};
    }
    default:
      throw std::invalid_argument("inequality: vector estimate fed a scalar field");
  }
}

bool scalar_case(Ineq name) {
  return name == Ineq::gen_sobolev || name == Ineq::embedding_L1 || name == Ineq::hardy;
}

}  // namespace

void validate(const InequalityCase& c) {
  if (!(c.p > 1)) throw std::invalid_argument("inequality: p must exceed 1");
  if (c.samples < 1) throw std::invalid_argument("inequality: at least one sample");
  switch (c.name) {
    case Ineq::sobolev:
      if (!(c.p < 3)) throw std::invalid_argument("sobolev: needs p < 3");
      break;
    case Ineq::grad_curl_weighted:
      if (!(c.alpha > -1))
        throw std::invalid_argument("grad_curl_weighted: needs alpha > -1");
      if (!c.hypothesis_demo && !(c.alpha < c.p - 1))
        throw std::invalid_argument(
            "grad_curl_weighted: needs alpha < p - 1 outside a hypothesis demo");
      break;
    case Ineq::gen_sobolev: {
      if (!(c.delta >= 0 && c.delta <= 1))
        throw std::invalid_argument("gen_sobolev: delta must lie in [0,1]");
      const Real den = 3 - c.p * (1 - c.delta);
      if (c.q == 0) {
        if (!(den > 0))
          throw std::invalid_argument(
              "gen_sobolev: every exponent is admissible here, give q explicitly");
      } else {
        if (!(c.q >= 1)) throw std::invalid_argument("gen_sobolev: q must be >= 1");
        if (!c.hypothesis_demo && den > 0 && c.q > 3 * c.p / den + 1e-12)
          throw std::invalid_argument("gen_sobolev: q exceeds the admissible range");
      }
      break;
    }
    case Ineq::embedding_L1:
      if (!(c.alpha > -1))
        throw std::invalid_argument("embedding: weight must stay integrable, alpha > -1");
      if (!c.hypothesis_demo && !(c.alpha < c.p - 1))
        throw std::invalid_argument(
            "embedding: needs alpha < p - 1 outside a hypothesis demo");
      break;
    case Ineq::hardy:
      hardy_validate(c.s, c.p);
      break;
    default:
      break;
  }
}

Real gen_sobolev_q(const InequalityCase& c) {
  if (c.q > 0) return c.q;
  return 3 * c.p / (3 - c.p * (1 - c.delta));
}

StaggeredField sample_field(const Grid& g, FieldKind kind, std::uint64_t seed) {
  if (kind == FieldKind::solenoidal_dirichlet) {
    StaggeredField v = sample_field(g, FieldKind::dirichlet, seed);
    fields::zero_normal_boundary(v);
    return fields::leray_project(v, 1e-12).v;
  }
  if (kind == FieldKind::boundary_layer) {
    const auto sheets = draw_sheets(g, seed, 3);
    return fields::sample_staggered(g, Stag::face, [&](int c, Real x, Real y, Real z) {
      return eval_sheets(sheets, c, x, y, z);
    });
  }
  const auto bumps = draw_bumps(g, kind, seed, 3);
  return fields::sample_staggered(g, Stag::face, [&](int c, Real x, Real y, Real z) {
    return eval_bumps(bumps, c, x, y, z);
  });
}

ScalarField sample_scalar(const Grid& g, FieldKind kind, std::uint64_t seed) {
  if (kind == FieldKind::solenoidal_dirichlet)
    throw std::invalid_argument("sample_scalar: a scalar cannot be solenoidal");
  if (kind == FieldKind::boundary_layer) {
    const auto sheets = draw_sheets(g, seed, 1);
    return fields::sample_cells(
        g, [&](Real x, Real y, Real z) { return eval_sheets(sheets, 0, x, y, z); });
  }
  const auto bumps = draw_bumps(g, kind, seed, 1);
  return fields::sample_cells(
      g, [&](Real x, Real y, Real z) { return eval_bumps(bumps, 0, x, y, z); });
}

InequalityReport check(const InequalityCase& c, const Grid& g) {
  validate(c);
  const bool scalar = scalar_case(c.name);
  if (c.name == Ineq::hardy) {
    for (int a = 0; a < 3; ++a)
      if (2 * g.n[a] > 32)
        throw std::invalid_argument("hardy: doubled grid exceeds the pair-sum cap");
  }
  Grid fine = g;
  for (int a = 0; a < 3; ++a) fine.n[a] *= 2;

  bool infinite = false;
  auto run = [&](const Grid& gr) {
    std::vector<Real> ratios;
    for (int i = 0; i < c.samples; ++i) {
      const std::uint64_t seed = c.seed + 1000003ull * static_cast<std::uint64_t>(i);
      Pair pr;
      if (scalar) {
        pr = eval_scalar(c, sample_scalar(gr, c.kind, seed));
      } else {
        StaggeredField v = sample_field(gr, c.kind, seed);
        if (c.name == Ineq::grad_curl_weighted && c.kind != FieldKind::solenoidal_dirichlet)
          v = fields::leray_project(v, 1e-12).v;
        pr = eval_vector(c, v);
      }
      if (!std::isfinite(pr.lhs) || !std::isfinite(pr.rhs))
        throw NumericalError("inequality: non-finite sample value");
      if (pr.rhs == 0) {
        if (pr.lhs == 0) continue;
        infinite = true;
        ratios.push_back(std::numeric_limits<Real>::infinity());
        continue;
      }
      ratios.push_back(pr.lhs / pr.rhs);
    }
    return ratios;
  };

  InequalityReport rep;
  rep.ratios = run(g);
  rep.samples_used = static_cast<int>(rep.ratios.size());
  if (rep.samples_used == 0) return rep;

  std::vector<Real> sorted = rep.ratios;
  std::sort(sorted.begin(), sorted.end());
  const int m = rep.samples_used;
  rep.quantiles = {sorted[(m - 1) / 2], sorted[static_cast<int>(0.9 * (m - 1))],
                   sorted[m - 1]};
  rep.max_ratio = sorted[m - 1];

  std::vector<Real> refined = run(fine);
  for (Real r : refined) rep.refined_max_ratio = std::max(rep.refined_max_ratio, r);
  rep.drift = rep.max_ratio > 0
                  ? std::abs(rep.refined_max_ratio - rep.max_ratio) / rep.max_ratio
                  : 0;

  if (infinite)
    rep.verdict = Verdict::violated_hypothesis_demo;
  else if (rep.drift < 0.10)
    rep.verdict = Verdict::bounded;
  else
    rep.verdict =
        c.hypothesis_demo ? Verdict::violated_hypothesis_demo : Verdict::unstable;
  return rep;
}

EmbeddingMargin embedding_margin(Real p, Real alpha, const Grid& g) {
  if (!(p > 1)) throw std::invalid_argument("embedding_margin: p must exceed 1");
  if (g.n[1] != g.n[0] || g.n[2] != g.n[0])
    throw std::invalid_argument("embedding_margin: cubic grids only");
  if (g.n[0] < 8 || g.n[0] % 4 != 0)
    throw std::invalid_argument("embedding_margin: need a multiple of 4, at least 8");
  const Real expo = -alpha / (p - 1);
  const auto dom = g.domain();
  EmbeddingMargin em;
  em.levels = {geometry::integrate_weight(dom, expo, g.n[0] / 4),
               geometry::integrate_weight(dom, expo, g.n[0] / 2),
               geometry::integrate_weight(dom, expo, g.n[0])};
  const Real i1 = em.levels[1] - em.levels[0];
  const Real i2 = em.levels[2] - em.levels[1];
  const Real scale = std::max(Real(1), std::abs(em.levels[2]));
  em.increment_ratio = std::abs(i1) < 1e-14 * scale ? 0 : i2 / i1;
  em.stable = em.increment_ratio < 0.9;
  return em;
}

HardyReport hardy_check(Real s, Real p, const ScalarField& u) {
  hardy_validate(s, p);
  const Grid& g = u.grid;
  for (int a = 0; a < 3; ++a)
    if (g.n[a] > 32)
      throw std::invalid_argument("hardy: grid too large for the pair sum");
  const auto dom = g.domain();
  const Real vol = g.cell_volume();
  HardyReport hr;
  Real acc = 0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i)
        acc += std::pow(std::abs(u.a(i, j, k)), p) *
               fields::cell_weight(g, dom, -s * p, i, j, k) * vol;
  hr.lhs = std::pow(acc, 1 / p);
  hr.rhs = fields::norm(u, {.p = p, .fractional_s = s});
  hr.ratio = hr.rhs == 0
                 ? (hr.lhs == 0 ? 0 : std::numeric_limits<Real>::infinity())
                 : hr.lhs / hr.rhs;
  return hr;
}

HardyReport hardy_check(Real s, Real p, const Line1D& u) {
  hardy_validate(s, p);
  if (u.n > 4096) throw std::invalid_argument("hardy: segment too fine for the pair sum");
  HardyReport hr;
  hr.lhs = fields::norm(u, {.p = p, .weight_alpha = -s * p});
  hr.rhs = fields::norm(u, {.p = p, .fractional_s = s});
  hr.ratio = hr.rhs == 0
                 ? (hr.lhs == 0 ? 0 : std::numeric_limits<Real>::infinity())
                 : hr.lhs / hr.rhs;
  return hr;
}

Real poincare_ratio(const Line1D& u, Real p) {
  if (!(p >= 1)) throw std::invalid_argument("poincare_ratio: p must be >= 1");
  const Real h = u.h();
  Real acc = 0;
  for (int i = 0; i <= u.n; ++i) {
    const Real lo = i == 0 ? 0 : u.v[i - 1];
    const Real hi = i == u.n ? 0 : u.v[i];
    acc += std::pow(std::abs(hi - lo) / h, p) * h;
  }
  const Real den = std::pow(acc, 1 / p);
  const Real num = fields::norm(u, {.p = p});
  if (den == 0) return num == 0 ? 0 : std::numeric_limits<Real>::infinity();
  return num / den;
}

}  // namespace dclab::inequalities
