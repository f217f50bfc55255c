#include "frontlab/widthlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "frontlab/linfield.hpp"

namespace frontlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D squared distance transform (Felzenszwalb-Huttenlocher lower envelope
// of parabolas), grid units.
void edt_1d(const std::vector<double>& f, std::vector<double>& out, std::vector<int>& v,
            std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (f[v[k]] == kInf) {
      v[k] = q;
      z[k] = -kInf;
      z[k + 1] = kInf;
      continue;
    }
    double s;
    while (true) {
      int p = v[k];
      s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    if (f[v[0]] == kInf) {
      out[q] = kInf;
      continue;
    }
    while (z[k + 1] < q) ++k;
    double dq = q - v[k];
    out[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

CellMask superlevel_mask(const Field& f, double eps) {
  CellMask m(f.cells());
  for (std::size_t c = 0; c < f.cells(); ++c) m[c] = f.u[c] >= eps ? 1 : 0;
  return m;
}

CellMask sublevel_mask(const Field& f, double eps) {
  CellMask m(f.cells());
  for (std::size_t c = 0; c < f.cells(); ++c) m[c] = f.u[c] <= eps ? 1 : 0;
  return m;
}

std::size_t mask_count(const CellMask& m) {
  std::size_t n = 0;
  for (auto b : m) n += b;
  return n;
}

std::vector<double> distance_transform(const Field& geom, const CellMask& from) {
  const std::size_t nx = geom.n[0];
  const std::size_t ny = geom.dim == 2 ? geom.n[1] : 1;
  std::vector<double> d2(nx * ny);
  for (std::size_t c = 0; c < nx * ny; ++c) d2[c] = from[c] ? 0.0 : kInf;

  std::vector<double> row(std::max(nx, ny)), out(std::max(nx, ny));
  std::vector<int> v(std::max(nx, ny));
  std::vector<double> z(std::max(nx, ny) + 1);

  for (std::size_t iy = 0; iy < ny; ++iy) {
    row.assign(nx, kInf);
    for (std::size_t ix = 0; ix < nx; ++ix) row[ix] = d2[iy * nx + ix];
    out.resize(nx);
    edt_1d(row, out, v, z);
    for (std::size_t ix = 0; ix < nx; ++ix) d2[iy * nx + ix] = out[ix];
  }
  if (ny > 1) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      row.assign(ny, kInf);
      for (std::size_t iy = 0; iy < ny; ++iy) row[iy] = d2[iy * nx + ix];
      out.resize(ny);
      edt_1d(row, out, v, z);
      for (std::size_t iy = 0; iy < ny; ++iy) d2[iy * nx + ix] = out[iy];
    }
  }
  for (auto& x : d2) x = x == kInf ? kInf : geom.dx * std::sqrt(x);
  return d2;
}

InclusionResult inclusion_radius(const Field& geom, const CellMask& source,
                                 const CellMask& target) {
  InclusionResult r;
  std::size_t ns = mask_count(source), nt = mask_count(target);
  if (ns == 0) {
    r.source_empty = true;
    return r;
  }
  if (nt == 0) {
    r.target_empty = true;
    r.radius = kInf;
    return r;
  }
  std::vector<double> dist = distance_transform(geom, target);
  for (std::size_t c = 0; c < source.size(); ++c)
    if (source[c]) r.radius = std::max(r.radius, dist[c]);
  return r;
}

WidthProfile width_profile(const Trajectory& traj, const AtomicMeasure& mu, double eps,
                           const std::optional<Classification>& cls) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("width_profile: eps in (0, 1/2)");
  if (traj.snapshots.empty()) throw std::invalid_argument("width_profile: empty trajectory");
  for (const auto& f : traj.snapshots) {
    if (f.dim != traj.snapshots[0].dim || f.dx != traj.snapshots[0].dx)
      throw GridMismatch("width_profile: snapshots disagree on grid layout");
  }

  bool graph_applicable = false;
  Vec zeta;
  if (cls && cls->verdict == Verdict::H1_FrontAndBounded) {
    graph_applicable = true;
    zeta = cls->zeta;
    for (const auto& a : mu.atoms)
      if (!(dot(a.xi, zeta) > 0.0)) graph_applicable = false;
  }

  WidthProfile prof;
  prof.eps = eps;
  for (const auto& f : traj.snapshots) {
    WidthRow row;
    row.t = f.t;
    auto sup_eps = superlevel_mask(f, eps);
    auto sup_top = superlevel_mask(f, 1.0 - eps);
    auto inc = inclusion_radius(f, sup_eps, sup_top);
    row.L = inc.radius;
    row.L_sentinel = inc.target_empty;
    auto sub_top = sublevel_mask(f, 1.0 - eps);
    auto sub_eps = sublevel_mask(f, eps);
    auto incp = inclusion_radius(f, sub_top, sub_eps);
    row.L_prime = incp.radius;
    row.L_prime_sentinel = incp.target_empty;

    if (graph_applicable) {
      // Boundary cells of the half superlevel set (interior cells only).
      std::vector<Vec> bdry;
      const std::size_t nx = f.n[0];
      const std::size_t ny = f.dim == 2 ? f.n[1] : 1;
      auto half = superlevel_mask(f, 0.5);
      for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
          if (!half[iy * nx + ix]) continue;
          bool edge = false;
          if (ix > 0 && !half[iy * nx + ix - 1]) edge = true;
          if (ix + 1 < nx && !half[iy * nx + ix + 1]) edge = true;
          if (ny > 1 && iy > 0 && !half[(iy - 1) * nx + ix]) edge = true;
          if (ny > 1 && iy + 1 < ny && !half[(iy + 1) * nx + ix]) edge = true;
          if (edge) bdry.push_back(f.coord(ix, iy));
        }
      // Sample the half-level graph of the linearized field over the
      // hyperplane orthogonal to the axis.
      std::vector<Vec> graph;
      if (f.dim == 1) {
        AxisRoot root = axis_level_root(mu, f.t, zeta, 0.5, zeros(1));
        if (root.status == AxisRootStatus::Found) graph.push_back(root.s * zeta);
      } else {
        auto basis = orthonormal_complement(zeta);
        const Vec& b = basis[0];
        // Projection range of the box corners onto the base direction.
        double blo = kInf, bhi = -kInf;
        for (int cx = 0; cx < 2; ++cx)
          for (int cy = 0; cy < 2; ++cy) {
            Vec corner = {cx ? f.hi[0] : f.lo[0], cy ? f.hi[1] : f.lo[1]};
            double p = dot(corner, b);
            blo = std::min(blo, p);
            bhi = std::max(bhi, p);
          }
        int nsamp = static_cast<int>(std::ceil((bhi - blo) / (0.5 * f.dx)));
        for (int j = 0; j <= nsamp; ++j) {
          double s0 = blo + (bhi - blo) * static_cast<double>(j) / nsamp;
          Vec base = s0 * b;
          AxisRoot root = axis_level_root(mu, f.t, zeta, 0.5, base);
          if (root.status == AxisRootStatus::Found) {
            Vec p = base;
            axpy(root.s, zeta, p);
            graph.push_back(p);
          }
        }
      }
      if (!graph.empty() && !bdry.empty()) {
        double worst = 0.0;
        for (const auto& bc : bdry) {
          double best = kInf;
          for (const auto& gp : graph) best = std::min(best, norm(bc - gp));
          worst = std::max(worst, best);
        }
        row.graph_L = worst;
        row.graph_ok = true;
      } else if (bdry.empty() && !graph.empty()) {
        row.graph_L = 0.0;  // nothing at the half level inside the box
        row.graph_ok = true;
      }
    }

    if (row.L_sentinel)
      prof.any_L_sentinel = true;
    else
      prof.max_L = std::max(prof.max_L, row.L);
    if (row.graph_ok) prof.max_graph_L = std::max(prof.max_graph_L, row.graph_L);
    prof.rows.push_back(row);
  }
  return prof;
}

std::string width_profile_csv(const WidthProfile& p) {
  std::ostringstream os;
  os << "t,L,L_prime,graph_L,graph_ok\n";
  char buf[64];
  auto put = [&](double x) {
    snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (const auto& r : p.rows) {
    put(r.t);
    os << ",";
    put(r.L_sentinel ? kInf : r.L);
    os << ",";
    put(r.L_prime_sentinel ? kInf : r.L_prime);
    os << ",";
    put(r.graph_ok ? r.graph_L : std::nan(""));
    os << "," << (r.graph_ok ? 1 : 0) << "\n";
  }
  return os.str();
}

}  // namespace frontlab
