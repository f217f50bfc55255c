#include "frontlab/linfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace frontlab {

namespace {

// Shared core: log-space sum over a subset of atoms.  Exponents are factored
// around their maximum and the residual exponentials are Kahan-summed in
// descending order, so results do not depend on atom file order.
LinEval eval_subset(const std::vector<const Atom*>& atoms, std::size_t d, double t,
                    const Vec& x) {
  LinEval out;
  out.gradient = zeros(d);
  out.grad_over_value = zeros(d);
  if (atoms.empty()) {
    out.value = 0.0;
    out.log_value = -std::numeric_limits<double>::infinity();
    return out;
  }
  const std::size_t n = atoms.size();
  std::vector<double> expo(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = *atoms[i];
    expo[i] = std::log(a.w) - dot(a.xi, x) + (norm2(a.xi) + 1.0) * t;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return expo[a] > expo[b]; });
  const double m = expo[order[0]];
  Kahan sum;
  std::vector<Kahan> grad(d);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = order[k];
    double e = std::exp(expo[i] - m);
    sum.add(e);
    const Vec& xi = atoms[i]->xi;
    for (std::size_t c = 0; c < d; ++c) grad[c].add(-xi[c] * e);
  }
  out.log_value = m + std::log(sum.sum);
  out.value = std::exp(out.log_value);
  for (std::size_t c = 0; c < d; ++c) {
    double g = grad[c].sum / sum.sum;
    out.grad_over_value[c] = g;
    out.gradient[c] = (g == 0.0) ? 0.0 : out.value * g;
  }
  return out;
}

std::vector<const Atom*> all_atoms(const AtomicMeasure& mu) {
  std::vector<const Atom*> ptrs;
  ptrs.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) ptrs.push_back(&a);
  return ptrs;
}

}  // namespace

LinEval eval_v(const AtomicMeasure& mu, double t, const Vec& x) {
  if (x.size() != mu.dimension) throw std::invalid_argument("eval_v: dimension mismatch");
  return eval_subset(all_atoms(mu), mu.dimension, t, x);
}

SplitEval eval_v_split(const AtomicMeasure& mu, double t, const Vec& x, double delta,
                       double delta_prime) {
  if (!(0.0 < delta_prime && delta_prime < delta && delta < 1.0))
    throw BadRadii("eval_v_split: need 0 < delta_prime < delta < 1");
  if (x.size() != mu.dimension) throw std::invalid_argument("eval_v_split: dimension mismatch");
  std::vector<const Atom*> outer, inner, core;
  for (const auto& a : mu.atoms) {
    double r = norm(a.xi);
    if (r >= delta)
      outer.push_back(&a);
    else
      inner.push_back(&a);
    if (r < delta_prime) core.push_back(&a);
  }
  SplitEval s;
  s.outer = eval_subset(outer, mu.dimension, t, x);
  s.inner = eval_subset(inner, mu.dimension, t, x);
  s.core = eval_subset(core, mu.dimension, t, x);
  return s;
}

double wave_speed(double lambda) {
  if (lambda <= 0.0) throw NonpositiveRadius("wave_speed: radius must be positive");
  if (lambda > 1.0) throw std::domain_error("wave_speed: radius outside (0,1]");
  return lambda + 1.0 / lambda;
}

std::vector<Vec> orthonormal_complement(const Vec& zeta) {
  const std::size_t d = zeta.size();
  std::vector<Vec> basis;
  // Gram-Schmidt over the axis vectors, skipping the one most aligned with
  // zeta; fixed order keeps the embedding deterministic.
  std::size_t skip = 0;
  for (std::size_t j = 1; j < d; ++j)
    if (std::fabs(zeta[j]) > std::fabs(zeta[skip])) skip = j;
  for (std::size_t j = 0; j < d; ++j) {
    if (j == skip) continue;
    Vec b = unit_axis(d, j);
    axpy(-dot(b, zeta), zeta, b);
    for (const auto& prev : basis) axpy(-dot(b, prev), prev, b);
    double n = norm(b);
    if (n < 1e-12) throw std::logic_error("orthonormal_complement: degenerate basis");
    basis.push_back((1.0 / n) * b);
  }
  return basis;
}

AxisRoot axis_level_root(const AtomicMeasure& mu, double t, const Vec& zeta, double level,
                         const Vec& base_embedded) {
  if (level <= 0.0) throw std::invalid_argument("axis_level_root: level must be positive");
  double min_axial = std::numeric_limits<double>::infinity();
  for (const auto& a : mu.atoms) {
    if (norm(a.xi) == 0.0) continue;
    min_axial = std::min(min_axial, dot(a.xi, zeta));
  }
  if (!(min_axial > 0.0))
    throw MonotonicityViolated("axis_level_root: some atom has xi . zeta <= 0");

  const double log_level = std::log(level);
  auto g = [&](double s) {
    Vec x = base_embedded;
    axpy(s, zeta, x);
    return eval_v(mu, t, x).log_value - log_level;
  };

  // v is strictly decreasing in s toward the origin-mass plateau.
  double w0 = mu.origin_mass();
  if (w0 > 0.0 && std::log(w0) + t >= log_level) return {AxisRootStatus::LevelBelowFarLimit, 0.0, 0.0};

  const double s_cap = 1e3;
  double lo = 0.0, hi = 0.0;
  double g0 = g(0.0);
  if (g0 > 0.0) {
    double step = 1.0;
    hi = step;
    while (g(hi) > 0.0) {
      step *= 2.0;
      hi += step;
      if (hi > s_cap) return {AxisRootStatus::BracketExceeded, 0.0, 0.0};
    }
    lo = hi - step;
  } else {
    double step = 1.0;
    lo = -step;
    while (g(lo) <= 0.0) {
      step *= 2.0;
      lo -= step;
      if (lo < -s_cap) return {AxisRootStatus::BracketExceeded, 0.0, 0.0};
    }
    hi = lo + step;
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * (1.0 + std::fabs(mid))) break;
  }
  double s = 0.5 * (lo + hi);
  Vec x = base_embedded;
  axpy(s, zeta, x);
  double v = std::exp(eval_v(mu, t, x).log_value);
  return {AxisRootStatus::Found, s, std::fabs(v - level)};
}

double gamma_level(const AtomicMeasure& mu, double t, const Vec& base, const Vec& zeta) {
  if (zeta.size() != mu.dimension) throw std::invalid_argument("gamma_level: dimension mismatch");
  if (base.size() + 1 != mu.dimension)
    throw std::invalid_argument("gamma_level: base must live in the orthogonal hyperplane");
  for (const auto& a : mu.atoms)
    if (!(dot(a.xi, zeta) > 0.0))
      throw MonotonicityViolated("gamma_level: atom with xi . zeta <= 0");
  Vec embedded = zeros(mu.dimension);
  auto basis = orthonormal_complement(zeta);
  for (std::size_t j = 0; j < base.size(); ++j) axpy(base[j], basis[j], embedded);
  AxisRoot r = axis_level_root(mu, t, zeta, 0.5, embedded);
  if (r.status != AxisRootStatus::Found)
    throw std::runtime_error("gamma_level: bracketing failed");
  if (r.residual > 1e-10) throw std::runtime_error("gamma_level: residual above tolerance");
  return r.s;
}

std::string grid_eval_csv(const AtomicMeasure& mu, double t, const std::vector<double>& lo,
                          const std::vector<double>& hi, double dx) {
  const std::size_t d = mu.dimension;
  if (lo.size() != d || hi.size() != d) throw std::invalid_argument("grid_eval_csv: bad box");
  std::ostringstream os;
  os << "t";
  for (std::size_t c = 0; c < d; ++c) os << ",x_" << (c + 1);
  os << ",v,log_v\n";
  char buf[64];
  auto put = [&](double val) {
    snprintf(buf, sizeof buf, "%.17g", val);
    os << buf;
  };
  std::vector<std::size_t> n(d);
  for (std::size_t c = 0; c < d; ++c)
    n[c] = static_cast<std::size_t>(std::llround((hi[c] - lo[c]) / dx)) + 1;
  std::vector<std::size_t> ix(d, 0);
  while (true) {
    Vec x(d);
    for (std::size_t c = 0; c < d; ++c) x[c] = lo[c] + static_cast<double>(ix[c]) * dx;
    LinEval e = eval_v(mu, t, x);
    put(t);
    for (std::size_t c = 0; c < d; ++c) {
      os << ",";
      put(x[c]);
    }
    os << ",";
    put(e.value);
    os << ",";
    put(e.log_value);
    os << "\n";
    std::size_t c = 0;
    while (c < d && ++ix[c] == n[c]) ix[c++] = 0;
    if (c == d) break;
  }
  return os.str();
}

}  // namespace frontlab
