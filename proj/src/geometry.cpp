#include "frontlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace frontlab::geom {

namespace {

constexpr double kMembershipTol = 1e-11;
constexpr double kInteriorNormTol = 1e-12;
constexpr double kInteriorProbe = 1e-9;

double max_norm(const std::vector<Vec>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, norm(p));
  return m;
}

void require_nonempty(const std::vector<Vec>& pts, const char* who) {
  if (pts.empty()) throw std::invalid_argument(std::string(who) + ": empty point set");
  std::size_t d = pts[0].size();
  if (d == 0) throw std::invalid_argument(std::string(who) + ": zero-dimensional points");
  for (const auto& p : pts)
    if (p.size() != d) throw std::invalid_argument(std::string(who) + ": mixed dimensions");
}

// Solve the bordered system for the affine minimum-norm point over the
// corral: minimize |sum a_i s_i|^2 subject to sum a_i = 1.  Returns false on
// a (near-)singular system, which signals an affinely dependent corral.
bool affine_min_norm(const std::vector<Vec>& pts, const std::vector<int>& corral,
                     std::vector<double>& alpha) {
  int m = static_cast<int>(corral.size());
  int n = m + 1;
  std::vector<double> M(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> rhs(n, 0.0);
  rhs[0] = 1.0;
  for (int j = 0; j < m; ++j) {
    M[0 * n + (j + 1)] = 1.0;
    M[(j + 1) * n + 0] = 1.0;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      M[(i + 1) * n + (j + 1)] = dot(pts[corral[i]], pts[corral[j]]);

  // Gaussian elimination with partial pivoting.
  std::vector<int> piv(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (int col = 0; col < n; ++col) {
    int best = col;
    double bestabs = std::fabs(M[piv[col] * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double a = std::fabs(M[piv[r] * n + col]);
      if (a > bestabs) {
        bestabs = a;
        best = r;
      }
    }
    if (bestabs < 1e-14) return false;
    std::swap(piv[col], piv[best]);
    double pivval = M[piv[col] * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = M[piv[r] * n + col] / pivval;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) M[piv[r] * n + c] -= f * M[piv[col] * n + c];
      rhs[piv[r]] -= f * rhs[piv[col]];
    }
  }
  std::vector<double> sol(n);
  for (int col = n - 1; col >= 0; --col) {
    double s = rhs[piv[col]];
    for (int c = col + 1; c < n; ++c) s -= M[piv[col] * n + c] * sol[c];
    sol[col] = s / M[piv[col] * n + col];
  }
  alpha.assign(sol.begin() + 1, sol.end());
  return true;
}

Vec combine(const std::vector<Vec>& pts, const std::vector<int>& corral,
            const std::vector<double>& lambda) {
  Vec p = zeros(pts[0].size());
  for (std::size_t i = 0; i < corral.size(); ++i) axpy(lambda[i], pts[corral[i]], p);
  return p;
}

}  // namespace

Cone::Cone(Vec a, double ap) : axis(std::move(a)), aperture(ap) {
  if (!all_finite(axis)) throw std::invalid_argument("Cone: non-finite axis");
  if (std::fabs(norm(axis) - 1.0) > 1e-12) throw std::invalid_argument("Cone: axis not unit");
  if (ap < 0.0 || ap > 1.0) throw std::invalid_argument("Cone: aperture outside [0,1]");
}

bool cone_membership(const Vec& x, const Cone& cone) {
  if (x.size() != cone.axis.size())
    throw std::invalid_argument("cone_membership: dimension mismatch");
  double nx = norm(x);
  return dot(x, cone.axis) >= cone.aperture * nx - 1e-14 * (1.0 + nx);
}

MinNormResult min_norm_point(const std::vector<Vec>& pts) {
  require_nonempty(pts, "min_norm_point");
  const int n = static_cast<int>(pts.size());
  const double scale2 = std::max(1.0, max_norm(pts) * max_norm(pts));
  const double gap_tol = 1e-14 * scale2;

  int start = 0;
  double bestn = norm2(pts[0]);
  for (int i = 1; i < n; ++i) {
    double v = norm2(pts[i]);
    if (v < bestn) {
      bestn = v;
      start = i;
    }
  }
  std::vector<int> corral = {start};
  std::vector<double> lambda = {1.0};
  Vec p = pts[start];
  double gap = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < 10000; ++iter) {
    int jstar = 0;
    double mindot = dot(p, pts[0]);
    for (int i = 1; i < n; ++i) {
      double v = dot(p, pts[i]);
      if (v < mindot) {
        mindot = v;
        jstar = i;
      }
    }
    gap = norm2(p) - mindot;
    if (gap <= gap_tol) break;
    if (std::find(corral.begin(), corral.end(), jstar) != corral.end()) break;

    corral.push_back(jstar);
    lambda.push_back(0.0);

    // Minor cycle: project onto the affine hull of the corral, walking back
    // onto the simplex and dropping vanished vertices until feasible.
    for (int minor = 0; minor < 4 * n + 16; ++minor) {
      std::vector<double> alpha;
      if (!affine_min_norm(pts, corral, alpha)) {
        // Affinely dependent corral: drop the smallest-weight member.
        std::size_t drop = 0;
        for (std::size_t i = 1; i < lambda.size(); ++i)
          if (lambda[i] < lambda[drop]) drop = i;
        corral.erase(corral.begin() + static_cast<long>(drop));
        lambda.erase(lambda.begin() + static_cast<long>(drop));
        double s = std::accumulate(lambda.begin(), lambda.end(), 0.0);
        if (s <= 0.0) {
          lambda.assign(corral.size(), 1.0 / static_cast<double>(corral.size()));
        } else {
          for (auto& l : lambda) l /= s;
        }
        continue;
      }
      bool feasible = true;
      for (double a : alpha)
        if (a < -1e-13) feasible = false;
      if (feasible) {
        lambda = alpha;
        for (auto& l : lambda) l = std::max(l, 0.0);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] < 0.0 && lambda[i] > alpha[i])
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      }
      for (std::size_t i = 0; i < lambda.size(); ++i)
        lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
      for (std::size_t i = corral.size(); i-- > 0;) {
        if (lambda[i] <= 1e-14) {
          corral.erase(corral.begin() + static_cast<long>(i));
          lambda.erase(lambda.begin() + static_cast<long>(i));
        }
      }
    }
    double s = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (auto& l : lambda) l /= s;
    p = combine(pts, corral, lambda);
  }

  MinNormResult res;
  res.point = p;
  res.gap = gap;
  res.coeffs.assign(pts.size(), 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) res.coeffs[corral[i]] = lambda[i];
  return res;
}

std::optional<SeparationResult> separating_direction(const std::vector<Vec>& pts) {
  require_nonempty(pts, "separating_direction");
  MinNormResult mn = min_norm_point(pts);
  double n = norm(mn.point);
  if (n <= 1e-10 * std::max(1.0, max_norm(pts))) return std::nullopt;
  Vec zeta = (1.0 / n) * mn.point;
  double margin = dot(pts[0], zeta);
  for (const auto& s : pts) margin = std::min(margin, dot(s, zeta));
  if (margin <= 0.0) return std::nullopt;  // borderline; treat as 0 in ch
  return SeparationResult{zeta, margin};
}

bool hull_contains(const std::vector<Vec>& pts, const Vec& q) {
  require_nonempty(pts, "hull_contains");
  std::vector<Vec> shifted;
  shifted.reserve(pts.size());
  for (const auto& s : pts) shifted.push_back(s - q);
  MinNormResult mn = min_norm_point(shifted);
  double scale = std::max(1.0, std::max(max_norm(pts), norm(q)));
  return norm(mn.point) <= kMembershipTol * scale;
}

std::optional<std::vector<double>> hull_coefficients(const std::vector<Vec>& pts, const Vec& q) {
  require_nonempty(pts, "hull_coefficients");
  std::vector<Vec> shifted;
  shifted.reserve(pts.size());
  for (const auto& s : pts) shifted.push_back(s - q);
  MinNormResult mn = min_norm_point(shifted);
  double scale = std::max(1.0, std::max(max_norm(pts), norm(q)));
  if (norm(mn.point) > kMembershipTol * scale) return std::nullopt;
  return mn.coeffs;
}

bool origin_interior(const std::vector<Vec>& pts) {
  require_nonempty(pts, "origin_interior");
  std::size_t d = pts[0].size();
  if (pts.size() < d + 1) return false;
  MinNormResult mn = min_norm_point(pts);
  if (norm(mn.point) > kInteriorNormTol * std::max(1.0, max_norm(pts))) return false;
  for (std::size_t j = 0; j < d; ++j) {
    if (!hull_contains(pts, unit_axis(d, j, kInteriorProbe))) return false;
    if (!hull_contains(pts, unit_axis(d, j, -kInteriorProbe))) return false;
  }
  return true;
}

std::vector<Vec> dedupe_points(const std::vector<Vec>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      if (norm(p - q) <= 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

std::vector<Vec> caratheodory_reduce(const std::vector<Vec>& points, const Vec& x) {
  require_nonempty(points, "caratheodory_reduce");
  std::vector<Vec> pts = dedupe_points(points);
  std::size_t d = x.size();
  std::vector<Vec> shifted;
  shifted.reserve(pts.size());
  for (const auto& s : pts) shifted.push_back(s - x);
  if (!origin_interior(shifted)) throw NotInterior("caratheodory_reduce: x not interior to ch(S)");

  const std::size_t n = pts.size();
  const std::size_t kmax = std::min<std::size_t>(2 * d, n);
  for (std::size_t k = d + 1; k <= kmax; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<Vec> subset;
      subset.reserve(k);
      for (std::size_t i : idx) subset.push_back(shifted[i]);
      if (origin_interior(subset)) {
        std::vector<Vec> out;
        out.reserve(k);
        for (std::size_t i : idx) out.push_back(pts[i]);
        return out;
      }
      // next k-combination in lexicographic order
      std::size_t pos = k;
      while (pos-- > 0) {
        if (idx[pos] != pos + n - k) break;
        if (pos == 0) {
          pos = std::numeric_limits<std::size_t>::max();
          break;
        }
      }
      if (pos == std::numeric_limits<std::size_t>::max()) break;
      ++idx[pos];
      for (std::size_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  // Unreachable for interior inputs: some subset of size <= 2d must work.
  throw std::logic_error("caratheodory_reduce: no interior subset found");
}

std::vector<double> positive_combination(const std::vector<Vec>& points) {
  require_nonempty(points, "positive_combination");
  std::vector<Vec> pts = dedupe_points(points);
  if (pts.size() != points.size())
    throw std::invalid_argument("positive_combination: duplicate points");
  if (!origin_interior(pts)) throw NotInterior("positive_combination: 0 not interior");
  const std::size_t n = pts.size();
  const std::size_t d = pts[0].size();

  std::vector<double> a = min_norm_point(pts).coeffs;  // sum a_i x_i ~ 0

  double rin = interior_radius(pts);
  double delta = 0.9 * rin / std::max(max_norm(pts), 1e-300);

  // c_i = a_i + delta + sum_j b_ji, where -delta x_i = sum_j b_ij x_j.
  std::vector<double> c(n, delta);
  for (std::size_t i = 0; i < n; ++i) c[i] += a[i];
  for (std::size_t i = 0; i < n; ++i) {
    auto b = hull_coefficients(pts, (-delta) * pts[i]);
    if (!b) throw std::logic_error("positive_combination: shifted point left the hull");
    for (std::size_t j = 0; j < n; ++j) c[j] += (*b)[j];
  }

  // Least-squares polish: remove the accumulated residual r = sum c_i x_i by
  // the minimum-norm correction c -= X^T (X X^T)^{-1} r.
  Vec r = zeros(d);
  for (std::size_t i = 0; i < n; ++i) axpy(c[i], pts[i], r);
  std::vector<double> G(d * d, 0.0);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += pts[i][p] * pts[i][q];
      G[p * d + q] = s;
    }
  // Solve G y = r (small SPD system, plain elimination).
  std::vector<double> y(r);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t rr = col + 1; rr < d; ++rr)
      if (std::fabs(G[rr * d + col]) > std::fabs(G[piv * d + col])) piv = rr;
    for (std::size_t cc = 0; cc < d; ++cc) std::swap(G[col * d + cc], G[piv * d + cc]);
    std::swap(y[col], y[piv]);
    for (std::size_t rr = col + 1; rr < d; ++rr) {
      double f = G[rr * d + col] / G[col * d + col];
      for (std::size_t cc = col; cc < d; ++cc) G[rr * d + cc] -= f * G[col * d + cc];
      y[rr] -= f * y[col];
    }
  }
  for (std::size_t col = d; col-- > 0;) {
    for (std::size_t cc = col + 1; cc < d; ++cc) y[col] -= G[col * d + cc] * y[cc];
    y[col] /= G[col * d + col];
  }
  for (std::size_t i = 0; i < n; ++i) {
    double corr = 0.0;
    for (std::size_t p = 0; p < d; ++p) corr += pts[i][p] * y[p];
    c[i] -= corr;
    if (c[i] <= 0.0) throw std::logic_error("positive_combination: polish broke positivity");
  }
  return c;
}

double interior_radius(const std::vector<Vec>& points) {
  require_nonempty(points, "interior_radius");
  std::vector<Vec> pts = dedupe_points(points);
  if (!origin_interior(pts)) throw NotInterior("interior_radius: 0 not interior");
  const std::size_t n = pts.size();
  const std::size_t d = pts[0].size();
  const double side_tol = 1e-9 * (1.0 + max_norm(pts));

  if (d == 1) {
    double lo = 0.0, hi = 0.0;
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return std::min(-lo, hi);
  }

  if (d == 2 || d == 3) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Vec nrm;
      if (d == 2) {
        Vec e = pts[idx[1]] - pts[idx[0]];
        nrm = {-e[1], e[0]};
      } else {
        Vec u = pts[idx[1]] - pts[idx[0]];
        Vec v = pts[idx[2]] - pts[idx[0]];
        nrm = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
      }
      double nn = norm(nrm);
      if (nn > 1e-12) {
        Vec nh = (1.0 / nn) * nrm;
        double off = dot(nh, pts[idx[0]]);
        if (off < 0.0) {
          nh = -1.0 * nh;
          off = -off;
        }
        bool supporting = true;
        for (const auto& p : pts)
          if (dot(nh, p) > off + side_tol) {
            supporting = false;
            break;
          }
        if (supporting) best = std::min(best, off);
      }
      // next combination
      std::size_t pos = d;
      bool done = false;
      while (pos-- > 0) {
        if (idx[pos] != pos + n - d) break;
        if (pos == 0) done = true;
      }
      if (done) break;
      ++idx[pos];
      for (std::size_t i = pos + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!std::isfinite(best)) throw std::logic_error("interior_radius: no supporting facet found");
    return best;
  }

  if (d == 4) {
    // Inradius of the largest inscribed cross-polytope: a certified lower
    // bound on the true interior radius.
    double inv2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double rj = std::numeric_limits<double>::infinity();
      for (double sign : {1.0, -1.0}) {
        double lo = 0.0, hi = max_norm(pts);
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          if (hull_contains(pts, unit_axis(d, j, sign * mid)))
            lo = mid;
          else
            hi = mid;
        }
        rj = std::min(rj, lo);
      }
      if (rj <= 0.0) throw NotInterior("interior_radius: axis probe failed");
      inv2 += 1.0 / (rj * rj);
    }
    return 1.0 / std::sqrt(inv2);
  }

  throw std::invalid_argument("interior_radius: dimension > 4 unsupported");
}

WiggleCertificate wiggle_radius(const std::vector<Vec>& points) {
  require_nonempty(points, "wiggle_radius");
  std::vector<Vec> pts = dedupe_points(points);
  if (!origin_interior(pts)) throw NotInterior("wiggle_radius: 0 not interior");
  const std::size_t k = pts.size();

  std::vector<double> c = positive_combination(pts);
  double cmax = *std::max_element(c.begin(), c.end());
  for (auto& ci : c) ci /= cmax;  // scale is free; normalize for the bounds below

  // r0: |a_ij| <= r0 keeps det(I + A) > 0 via ||A||_F <= k r0 <= 1/2.
  double r0 = 1.0 / (2.0 * static_cast<double>(k));

  // r1: keeps every Cramer numerator positive.  M_l splits into the exactly
  // invertible matrix with column l replaced by c (det = c_l) plus the
  // perturbation with that column zeroed; a Frobenius bound on the product
  // keeps the spectrum away from -1.
  double sumc2 = 0.0;
  for (double ci : c) sumc2 += ci * ci;
  double offdiag = std::sqrt(static_cast<double>(k) * (static_cast<double>(k) - 1.0));
  double r1 = std::numeric_limits<double>::infinity();
  if (k == 1) {
    r1 = r0;  // single point at the origin cannot occur (0 would not be interior)
  } else {
    for (std::size_t l = 0; l < k; ++l) {
      double invF2 =
          (static_cast<double>(k) - 1.0) + (1.0 + (sumc2 - c[l] * c[l])) / (c[l] * c[l]);
      r1 = std::min(r1, 1.0 / (2.0 * std::sqrt(invF2) * offdiag));
    }
  }

  double r = std::min(r0, r1);
  double delta = interior_radius(pts);

  WiggleCertificate cert;
  cert.interior_radius = delta;
  cert.coefficients = c;
  cert.epsilon = r * delta;
  return cert;
}

}  // namespace frontlab::geom
