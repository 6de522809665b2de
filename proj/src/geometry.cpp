#include "dclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dclab {

std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string to_g17(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace dclab

namespace dclab::geometry {

Real distance(const DomainSpec& dom, const std::array<Real, 3>& x) {
  if (dom.kind == DomainKind::box) {
    Real d = std::numeric_limits<Real>::max();
    for (int a = 0; a < dom.dim; ++a) {
      if (x[a] < 0 || x[a] > dom.extent[a]) return 0;
      d = std::min(d, std::min(x[a], dom.extent[a] - x[a]));
    }
    return d;
  }
  Real r2 = 0;
  for (int a = 0; a < dom.dim; ++a) r2 += x[a] * x[a];
  return std::max<Real>(0, dom.extent[0] - std::sqrt(r2));
}

Real PowerWeight::eval(const std::array<Real, 3>& x) const {
  if (alpha == 0) return 1;
  return std::pow(distance(domain, x), alpha);
}

DyadicCubeFamily bounding_family(const DomainSpec& dom, int J) {
  DyadicCubeFamily fam;
  fam.J = J;
  fam.dim = dom.dim;
  if (dom.kind == DomainKind::box) {
    Real side = 0;
    for (int a = 0; a < dom.dim; ++a) side = std::max(side, dom.extent[a]);
    fam.side = side;
  } else {
    Real R = dom.extent[0];
    fam.side = 2 * R;
    for (int a = 0; a < dom.dim; ++a) fam.lo[a] = -R;
  }
  return fam;
}

namespace {

void validate(const DyadicCubeFamily& fam, Real p, int q) {
  if (p <= 1) throw std::invalid_argument("ap_constant requires p > 1");
  if (q < 1) throw std::invalid_argument("ap_constant requires q >= 1");
  if (fam.J < 0 || fam.J > 12) throw std::invalid_argument("dyadic depth J out of range");
  if (fam.dim < 1 || fam.dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
}

//! Lattice-cell quadrature value for t^beta on [m*s, (m+1)*s], divided by s.
//! Integrable powers use the exact interval average, so singular-but-summable
//! weights converge fast; non-integrable powers fall back to the midpoint
//! sample, whose finite values then grow without bound under refinement,
//! which is the honest signature of a weight outside the admissible range.
Real power_cell(Real beta, Real s, long m) {
  if (beta == 0) return 1;
  if (beta > -1) {
    Real a = std::pow(static_cast<Real>(m), beta + 1);
    Real b = std::pow(static_cast<Real>(m) + 1, beta + 1);
    return std::pow(s, beta) * (b - a) / (beta + 1);
  }
  return std::pow(s * (static_cast<Real>(m) + 0.5), beta);
}

//! Cubic box coinciding with the cube family: per-axis boundary distance is a
//! function of the global sample index alone, so the two powers of d come from
//! precomputed tables indexed by an integer min.
ApProfile ap_profile_lattice(const PowerWeight& w, const DyadicCubeFamily& fam, Real p, int q) {
  const int J = fam.J, dim = fam.dim;
  const long N = static_cast<long>(q) << J;
  const Real s = fam.side / static_cast<Real>(N);
  const Real dual = -w.alpha / (p - 1);

  std::vector<int> dmin(N);
  std::vector<Real> t1(N), t2(N);
  for (long g = 0; g < N; ++g) {
    dmin[g] = static_cast<int>(std::min(g, N - 1 - g));
  }
  for (long i = 0; i < N; ++i) {
    t1[i] = power_cell(w.alpha, s, i);
    t2[i] = power_cell(dual, s, i);
  }

  ApProfile out;
  out.level_max.assign(J + 1, 0);
  for (int j = 0; j <= J; ++j) {
    const long m = static_cast<long>(q) << (J - j);
    const long nc = 1l << j;
    Real cnt = 1;
    for (int a = 0; a < dim; ++a) cnt *= static_cast<Real>(m);
    const long ncy = dim >= 2 ? nc : 1, ncz = dim >= 3 ? nc : 1;
    const long my = dim >= 2 ? m : 1, mz = dim >= 3 ? m : 1;
    for (long cx = 0; cx < nc; ++cx)
      for (long cy = 0; cy < ncy; ++cy)
        for (long cz = 0; cz < ncz; ++cz) {
          Real s1 = 0, s2 = 0;
          for (long gx = cx * m; gx < (cx + 1) * m; ++gx) {
            const int dx = dmin[gx];
            for (long gy = cy * my; gy < cy * my + my; ++gy) {
              const int dxy = dim >= 2 ? std::min(dx, dmin[gy]) : dx;
              const long z0 = cz * mz;
              for (long gz = z0; gz < z0 + mz; ++gz) {
                const int idx = dim >= 3 ? std::min(dxy, dmin[gz]) : dxy;
                s1 += t1[idx];
                s2 += t2[idx];
              }
            }
          }
          Real prod = (s1 / cnt) * std::pow(s2 / cnt, p - 1);
          out.level_max[j] = std::max(out.level_max[j], prod);
        }
    out.value = std::max(out.value, out.level_max[j]);
  }
  return out;
}

ApProfile ap_profile_generic(const PowerWeight& w, const DyadicCubeFamily& fam, Real p, int q) {
  const int J = fam.J, dim = fam.dim;
  const long N = static_cast<long>(q) << J;
  const Real s = fam.side / static_cast<Real>(N);
  const Real dual = -w.alpha / (p - 1);

  ApProfile out;
  out.level_max.assign(J + 1, 0);
  for (int j = 0; j <= J; ++j) {
    const long m = static_cast<long>(q) << (J - j);
    const long nc = 1l << j;
    const long ncy = dim >= 2 ? nc : 1, ncz = dim >= 3 ? nc : 1;
    const long my = dim >= 2 ? m : 1, mz = dim >= 3 ? m : 1;
    for (long cx = 0; cx < nc; ++cx)
      for (long cy = 0; cy < ncy; ++cy)
        for (long cz = 0; cz < ncz; ++cz) {
          Real s1 = 0, s2 = 0;
          long inside = 0;
          std::array<Real, 3> x{0, 0, 0};
          for (long gx = cx * m; gx < (cx + 1) * m; ++gx) {
            x[0] = fam.lo[0] + s * (static_cast<Real>(gx) + 0.5);
            for (long gy = cy * my; gy < cy * my + my; ++gy) {
              if (dim >= 2) x[1] = fam.lo[1] + s * (static_cast<Real>(gy) + 0.5);
              for (long gz = cz * mz; gz < cz * mz + mz; ++gz) {
                if (dim >= 3) x[2] = fam.lo[2] + s * (static_cast<Real>(gz) + 0.5);
                Real d = distance(w.domain, x);
                if (d <= 0) continue;
                ++inside;
                if (w.alpha == 0) {
                  s1 += 1;
                  s2 += 1;
                } else {
                  s1 += std::pow(d, w.alpha);
                  s2 += std::pow(d, dual);
                }
              }
            }
          }
          if (inside == 0) continue;
          Real cnt = static_cast<Real>(inside);
          Real prod = (s1 / cnt) * std::pow(s2 / cnt, p - 1);
          out.level_max[j] = std::max(out.level_max[j], prod);
        }
    out.value = std::max(out.value, out.level_max[j]);
  }
  return out;
}

bool lattice_compatible(const PowerWeight& w, const DyadicCubeFamily& fam) {
  if (w.domain.kind != DomainKind::box) return false;
  for (int a = 0; a < fam.dim; ++a) {
    if (fam.lo[a] != 0) return false;
    if (w.domain.extent[a] != fam.side) return false;
  }
  return fam.dim == w.domain.dim;
}

}  // namespace

ApProfile ap_profile(const PowerWeight& w, const DyadicCubeFamily& fam, Real p, int q) {
  validate(fam, p, q);
  if (lattice_compatible(w, fam)) return ap_profile_lattice(w, fam, p, q);
  return ap_profile_generic(w, fam, p, q);
}

Real ap_constant(const PowerWeight& w, const DyadicCubeFamily& fam, Real p, int q) {
  return ap_profile(w, fam, p, q).value;
}

Real integrate_weight(const DomainSpec& dom, Real alpha, int n) {
  if (n < 1) throw std::invalid_argument("integrate_weight requires n >= 1");
  std::array<Real, 3> lo{0, 0, 0}, len{1, 1, 1};
  if (dom.kind == DomainKind::box) {
    for (int a = 0; a < dom.dim; ++a) len[a] = dom.extent[a];
  } else {
    for (int a = 0; a < dom.dim; ++a) {
      lo[a] = -dom.extent[0];
      len[a] = 2 * dom.extent[0];
    }
  }
  Real cellvol = 1;
  for (int a = 0; a < dom.dim; ++a) cellvol *= len[a] / n;

  const long ny = dom.dim >= 2 ? n : 1, nz = dom.dim >= 3 ? n : 1;
  Real sum = 0;
  std::array<Real, 3> x{0, 0, 0};
  for (long i = 0; i < n; ++i) {
    x[0] = lo[0] + len[0] * (static_cast<Real>(i) + 0.5) / n;
    for (long j = 0; j < ny; ++j) {
      if (dom.dim >= 2) x[1] = lo[1] + len[1] * (static_cast<Real>(j) + 0.5) / n;
      for (long k = 0; k < nz; ++k) {
        if (dom.dim >= 3) x[2] = lo[2] + len[2] * (static_cast<Real>(k) + 0.5) / n;
        Real d = distance(dom, x);
        if (d <= 0) continue;
        sum += alpha == 0 ? 1 : std::pow(d, alpha);
      }
    }
  }
  return sum * cellvol;
}

}  // namespace dclab::geometry
