#include "frontlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "frontlab/linfield.hpp"

namespace frontlab {

namespace {

std::size_t thread_budget() {
  static std::size_t budget = [] {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRONTLAB_THREADS")) {
      long v = std::atol(env);
      if (v >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
    }
    return hw;
  }();
  return budget;
}

// Chunked map over [0, n): every index is computed by a pure function, so
// the result is bitwise independent of the thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::size_t nt = std::min(thread_budget(), std::max<std::size_t>(1, n / 4096));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t k = 0; k < nt; ++k) {
    std::size_t b = k * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([b, e, &fn] {
      for (std::size_t i = b; i < e; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

void fill_boundary(Field& f, const BoundaryFn& g, double t) {
  if (f.dim == 1) {
    f.at(0) = g(t, f.coord(0));
    f.at(f.n[0] - 1) = g(t, f.coord(f.n[0] - 1));
    return;
  }
  for (std::size_t ix = 0; ix < f.n[0]; ++ix) {
    f.at(ix, 0) = g(t, f.coord(ix, 0));
    f.at(ix, f.n[1] - 1) = g(t, f.coord(ix, f.n[1] - 1));
  }
  for (std::size_t iy = 0; iy < f.n[1]; ++iy) {
    f.at(0, iy) = g(t, f.coord(0, iy));
    f.at(f.n[0] - 1, iy) = g(t, f.coord(f.n[0] - 1, iy));
  }
}

// k = Laplacian(u) + f(u) on interior points; zero on the boundary ring.
void rhs(const Field& f, const ReactionFn& reaction, std::vector<double>& k) {
  const double inv2 = 1.0 / (f.dx * f.dx);
  const auto& u = f.u;
  const std::size_t nx = f.n[0];
  if (f.dim == 1) {
    k[0] = 0.0;
    k[nx - 1] = 0.0;
    parallel_for(nx - 2, [&](std::size_t j) {
      std::size_t i = j + 1;
      k[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv2 + reaction.f(u[i]);
    });
    return;
  }
  const std::size_t ny = f.n[1];
  parallel_for(ny, [&](std::size_t iy) {
    if (iy == 0 || iy == ny - 1) {
      for (std::size_t ix = 0; ix < nx; ++ix) k[iy * nx + ix] = 0.0;
      return;
    }
    k[iy * nx] = 0.0;
    k[iy * nx + nx - 1] = 0.0;
    for (std::size_t ix = 1; ix < nx - 1; ++ix) {
      std::size_t c = iy * nx + ix;
      k[c] = (u[c - 1] + u[c + 1] + u[c - nx] + u[c + nx] - 4.0 * u[c]) * inv2 +
             reaction.f(u[c]);
    }
  });
}

}  // namespace

Vec Field::coord(std::size_t ix, std::size_t iy) const {
  Vec x(dim);
  x[0] = lo[0] + static_cast<double>(ix) * dx;
  if (dim == 2) x[1] = lo[1] + static_cast<double>(iy) * dx;
  return x;
}

Field make_field(std::size_t dim, const std::vector<double>& lo, const std::vector<double>& hi,
                 double dx) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("make_field: dim must be 1 or 2");
  if (lo.size() != dim || hi.size() != dim) throw std::invalid_argument("make_field: bad box");
  if (!(dx > 0.0)) throw std::invalid_argument("make_field: dx must be positive");
  Field f;
  f.dim = dim;
  f.dx = dx;
  for (std::size_t c = 0; c < dim; ++c) {
    double len = hi[c] - lo[c];
    double cells = len / dx;
    if (!(len > 0.0) || std::fabs(cells - std::llround(cells)) > 1e-9)
      throw std::invalid_argument("make_field: grid must cover the box exactly");
    f.lo[c] = lo[c];
    f.hi[c] = hi[c];
    f.n[c] = static_cast<std::size_t>(std::llround(cells)) + 1;
  }
  f.u.assign(f.cells(), 0.0);
  return f;
}

BoundaryFn sandwich_boundary(const AtomicMeasure& mu) {
  return [mu](double t, const Vec& x) {
    double lv = eval_v(mu, t, x).log_value;
    return lv >= 0.0 ? 1.0 : std::exp(lv);
  };
}

Field init_from_linearization(const AtomicMeasure& mu, double t0, const std::vector<double>& lo,
                              const std::vector<double>& hi, double dx) {
  if (!(t0 < 0.0)) throw std::invalid_argument("init_from_linearization: t0 must be negative");
  Field f = make_field(mu.dimension, lo, hi, dx);
  f.t = t0;
  const std::size_t nx = f.n[0];
  parallel_for(f.cells(), [&](std::size_t c) {
    std::size_t ix = c % nx, iy = c / nx;
    double lv = eval_v(mu, t0, f.coord(ix, iy)).log_value;
    f.u[c] = lv >= 0.0 ? 1.0 : std::exp(lv);
  });
  return f;
}

Trajectory integrate(Field field, const ReactionFn& reaction, const BoundaryFn& boundary,
                     const std::vector<double>& snapshot_times, const IntegrateOptions& opts) {
  if (snapshot_times.empty()) throw std::invalid_argument("integrate: no snapshot times");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < field.t - 1e-12)
      throw std::invalid_argument("integrate: snapshot before start time");
    if (i > 0 && snapshot_times[i] <= snapshot_times[i - 1])
      throw std::invalid_argument("integrate: snapshot times must increase");
  }
  const double dt_cap = opts.cfl * field.dx * field.dx / (2.0 * static_cast<double>(field.dim));
  double dt_max = dt_cap;
  if (opts.dt) {
    if (*opts.dt > dt_cap * (1.0 + 1e-12)) {
      std::ostringstream m;
      m << "integrate: dt " << *opts.dt << " violates the parabolic bound " << dt_cap;
      throw CFLViolation(m.str());
    }
    dt_max = *opts.dt;
  }

  Trajectory traj;
  const std::size_t cells = field.cells();
  std::vector<double> k1(cells), k2(cells), k3(cells), k4(cells);
  Field stage = field;

  fill_boundary(field, boundary, field.t);

  auto step = [&](double dt) {
    const double t = field.t;
    rhs(field, reaction, k1);
    stage.t = t + 0.5 * dt;
    parallel_for(cells, [&](std::size_t c) { stage.u[c] = field.u[c] + 0.5 * dt * k1[c]; });
    fill_boundary(stage, boundary, stage.t);
    rhs(stage, reaction, k2);
    parallel_for(cells, [&](std::size_t c) { stage.u[c] = field.u[c] + 0.5 * dt * k2[c]; });
    fill_boundary(stage, boundary, stage.t);
    rhs(stage, reaction, k3);
    stage.t = t + dt;
    parallel_for(cells, [&](std::size_t c) { stage.u[c] = field.u[c] + dt * k3[c]; });
    fill_boundary(stage, boundary, stage.t);
    rhs(stage, reaction, k4);
    parallel_for(cells, [&](std::size_t c) {
      field.u[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    });
    field.t = t + dt;
    fill_boundary(field, boundary, field.t);

    double worst = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      double v = field.u[c];
      if (!std::isfinite(v)) throw NonFiniteValue("integrate: solution diverged");
      if (v < 0.0) worst = std::max(worst, -v);
      if (v > 1.0) worst = std::max(worst, v - 1.0);
    }
    traj.max_excursion = std::max(traj.max_excursion, worst);
    if (worst > 1e-6) throw NonFiniteValue("integrate: excursion outside [0,1] beyond 1e-6");
    if (opts.clamp)
      for (auto& v : field.u) v = std::clamp(v, 0.0, 1.0);
    ++traj.steps;
  };

  auto maybe_shift_window = [&](void) {
    if (!opts.moving_window || field.dim != 1) return;
    double fp = front_position_1d(field);
    if (!std::isfinite(fp) || fp < field.hi[0] - opts.window_margin) return;
    std::size_t s = std::min(opts.window_shift_cells, field.n[0] - 2);
    for (std::size_t i = 0; i + s < field.n[0]; ++i) field.u[i] = field.u[i + s];
    field.lo[0] += static_cast<double>(s) * field.dx;
    field.hi[0] += static_cast<double>(s) * field.dx;
    for (std::size_t i = field.n[0] - s; i < field.n[0]; ++i)
      field.u[i] = boundary(field.t, field.coord(i));
  };

  for (double target : snapshot_times) {
    double span = target - field.t;
    if (span > 1e-12) {
      long nsteps = static_cast<long>(std::ceil(span / dt_max - 1e-9));
      double dt = span / static_cast<double>(nsteps);
      for (long s = 0; s < nsteps; ++s) {
        step(dt);
        maybe_shift_window();
      }
    }
    field.t = target;  // kill accumulated rounding in the time stamp
    traj.snapshots.push_back(field);
  }
  return traj;
}

SandwichReport check_sandwich(const Trajectory& traj, const AtomicMeasure& mu, const HTable& h) {
  SandwichReport rep;
  rep.lower_x = zeros(mu.dimension);
  rep.upper_x = zeros(mu.dimension);
  for (const auto& f : traj.snapshots) {
    const std::size_t nx = f.n[0];
    for (std::size_t c = 0; c < f.cells(); ++c) {
      std::size_t ix = c % nx, iy = c / nx;
      Vec x = f.coord(ix, iy);
      double lv = eval_v(mu, f.t, x).log_value;
      double v = std::exp(std::min(lv, 700.0));
      double env = lv >= 0.0 ? 1.0 : std::exp(lv);
      double uval = f.u[c];
      double lowviol = h.eval(v) - uval;
      if (lowviol > rep.max_lower_violation) {
        rep.max_lower_violation = lowviol;
        rep.lower_t = f.t;
        rep.lower_x = x;
      }
      double upviol = uval - env;
      if (upviol > rep.max_upper_violation) {
        rep.max_upper_violation = upviol;
        rep.upper_t = f.t;
        rep.upper_x = x;
      }
      if (v <= 1e-3 && v > 0.0) {
        double rd = std::fabs(uval - v) / v;
        rep.max_linear_regime_reldiff = std::max(rep.max_linear_regime_reldiff, rd);
      }
    }
  }
  return rep;
}

double front_position_1d(const Field& f, double level) {
  if (f.dim != 1) throw std::invalid_argument("front_position_1d: 1-D fields only");
  for (std::size_t i = f.n[0] - 1; i-- > 0;) {
    double a = f.u[i], b = f.u[i + 1];
    if (a >= level && b < level) {
      double frac = (a - level) / (a - b);
      return f.lo[0] + (static_cast<double>(i) + frac) * f.dx;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

HTable estimate_h(const ReactionFn& reaction, const std::vector<double>& lambdas,
                  const HCalibrationOptions& opts) {
  if (lambdas.empty()) throw std::invalid_argument("estimate_h: no decay rates");
  for (double l : lambdas)
    if (!(l > 0.0 && l <= 1.0)) throw std::invalid_argument("estimate_h: rates must be in (0,1]");

  std::vector<double> t0s = opts.t0_study;
  std::sort(t0s.begin(), t0s.end(), std::greater<>());  // shallowest first

  auto collect = [&](double lambda, double t0, std::vector<std::pair<double, double>>& pairs) {
    double c = wave_speed(lambda);
    AtomicMeasure mu = make_measure(1, {{Vec{lambda}, 1.0}});
    double lo = c * t0 - 10.0;
    double hi = c * opts.t_end + 18.0 / lambda + 2.0;
    lo = std::floor(lo / opts.dx) * opts.dx;
    hi = std::ceil(hi / opts.dx) * opts.dx;
    Field f0 = init_from_linearization(mu, t0, {lo}, {hi}, opts.dx);
    IntegrateOptions io;
    io.cfl = opts.cfl;
    Trajectory traj = integrate(std::move(f0), reaction, sandwich_boundary(mu), opts.sample_times, io);
    for (const auto& f : traj.snapshots) {
      for (std::size_t i = 5; i + 5 < f.n[0]; ++i) {
        double v = std::exp(eval_v(mu, f.t, f.coord(i)).log_value);
        if (v < 1e-6 || v > 1e9) continue;
        pairs.push_back({v, f.u[i]});
      }
    }
  };

  std::vector<HTable> tables;
  for (double t0 : t0s) {
    std::vector<std::pair<double, double>> pairs;
    for (double l : lambdas) collect(l, t0, pairs);
    tables.push_back(HTable::from_samples(std::move(pairs)));
  }

  // Convergence study: successive initialization depths must agree.
  double worst = 0.0;
  for (std::size_t k = 1; k < tables.size(); ++k) {
    double vlo = std::max(tables[k - 1].v.front(), tables[k].v.front());
    double vhi = std::min(tables[k - 1].v.back(), tables[k].v.back());
    for (int j = 0; j < 400; ++j) {
      double vv = vlo * std::pow(vhi / vlo, j / 399.0);
      worst = std::max(worst, std::fabs(tables[k - 1].eval(vv) - tables[k].eval(vv)));
    }
  }
  if (worst > opts.tol) {
    std::ostringstream m;
    m << "estimate_h: t0 study disagreement " << worst << " exceeds " << opts.tol;
    throw NotConverged(m.str());
  }

  HTable out = tables.back();  // deepest initialization
  {
    std::ostringstream m;
    m << worst;
    out.meta["t0_disagreement"] = m.str();
  }
  {
    std::ostringstream m;
    for (std::size_t i = 0; i < lambdas.size(); ++i) m << (i ? "," : "") << lambdas[i];
    out.meta["lambdas"] = m.str();
  }
  {
    std::ostringstream m;
    for (std::size_t i = 0; i < t0s.size(); ++i) m << (i ? "," : "") << t0s[i];
    out.meta["t0_study"] = m.str();
  }
  out.meta["reaction"] = reaction.name;
  {
    std::ostringstream m;
    m << opts.dx;
    out.meta["dx"] = m.str();
  }
  out.recompute_id();
  out.check();
  return out;
}

void save_snapshot(const Field& f, const std::string& base) {
  {
    std::ofstream bin(base + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot write " + base + ".bin");
    // doubles are IEEE little-endian on every supported target
    bin.write(reinterpret_cast<const char*>(f.u.data()),
              static_cast<std::streamsize>(f.u.size() * sizeof(double)));
  }
  nlohmann::ordered_json j;
  j["t"] = f.t;
  j["d"] = f.dim;
  j["dx"] = f.dx;
  j["box"] = nlohmann::json::array();
  for (std::size_t c = 0; c < f.dim; ++c) j["box"].push_back({f.lo[c], f.hi[c]});
  j["n"] = nlohmann::json::array();
  for (std::size_t c = 0; c < f.dim; ++c) j["n"].push_back(f.n[c]);
  std::ofstream meta(base + ".json");
  if (!meta) throw std::runtime_error("cannot write " + base + ".json");
  meta << j.dump(2) << "\n";
}

Field load_snapshot(const std::string& base) {
  std::ifstream meta(base + ".json");
  if (!meta) throw std::runtime_error("cannot open " + base + ".json");
  nlohmann::json j;
  meta >> j;
  std::vector<double> lo, hi;
  for (const auto& b : j.at("box")) {
    lo.push_back(b[0].get<double>());
    hi.push_back(b[1].get<double>());
  }
  Field f = make_field(j.at("d").get<std::size_t>(), lo, hi, j.at("dx").get<double>());
  f.t = j.at("t").get<double>();
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + base + ".bin");
  bin.read(reinterpret_cast<char*>(f.u.data()),
           static_cast<std::streamsize>(f.u.size() * sizeof(double)));
  if (bin.gcount() != static_cast<std::streamsize>(f.u.size() * sizeof(double)))
    throw std::runtime_error("snapshot data truncated: " + base);
  return f;
}

std::string field_slice_csv(const Field& f) {
  if (f.dim != 1) throw std::invalid_argument("field_slice_csv: 1-D fields only");
  std::ostringstream os;
  os << "x,u\n";
  char buf[64];
  for (std::size_t i = 0; i < f.n[0]; ++i) {
    snprintf(buf, sizeof buf, "%.17g", f.lo[0] + static_cast<double>(i) * f.dx);
    os << buf << ",";
    snprintf(buf, sizeof buf, "%.17g", f.u[i]);
    os << buf << "\n";
  }
  return os.str();
}

}  // namespace frontlab
