#pragma once

#include <optional>
#include <vector>

#include "frontlab/measure.hpp"
#include "frontlab/vec.hpp"

namespace frontlab {

// One evaluation of the linearized field: a superposition of exponentials
// e^{-xi.x + (|xi|^2 + 1) t} weighted by the measure.  log_value is always
// finite for finite (t, x); value saturates to +inf past the double range.
struct LinEval {
  double value = 0.0;
  double log_value = 0.0;
  Vec gradient;         // value * grad_over_value; may overflow with value
  Vec grad_over_value;  // grad(v)/v, norm strictly below 1
};

LinEval eval_v(const AtomicMeasure& mu, double t, const Vec& x);

// Radial split of the field: outer sums atoms with |xi| >= delta, inner
// those with |xi| < delta, core those with |xi| < delta_prime.
// outer + inner recovers eval_v.
struct SplitEval {
  LinEval outer;
  LinEval inner;
  LinEval core;
};

class BadRadii : public std::invalid_argument {
 public:
  explicit BadRadii(const std::string& w) : std::invalid_argument(w) {}
};

SplitEval eval_v_split(const AtomicMeasure& mu, double t, const Vec& x, double delta,
                       double delta_prime);

// Speed of the planar exponential wave with decay rate lambda in (0, 1].
class NonpositiveRadius : public std::domain_error {
 public:
  explicit NonpositiveRadius(const std::string& w) : std::domain_error(w) {}
};

double wave_speed(double lambda);

class MonotonicityViolated : public std::domain_error {
 public:
  explicit MonotonicityViolated(const std::string& w) : std::domain_error(w) {}
};

// Deterministic orthonormal basis of the hyperplane orthogonal to zeta.
std::vector<Vec> orthonormal_complement(const Vec& zeta);

// Root of v(t, base' + s*zeta) = level along the axis, where base' embeds
// the (d-1)-dimensional base into the hyperplane orthogonal to zeta.  The
// field must be strictly decreasing along zeta (every nonzero atom with
// xi . zeta > 0); an atom weight at the origin only shifts the far limit.
enum class AxisRootStatus {
  Found,
  LevelBelowFarLimit,  // v stays above the level for all s (root at +infinity)
  BracketExceeded,     // no sign change within |s| <= 1e3
};

struct AxisRoot {
  AxisRootStatus status;
  double s = 0.0;       // meaningful when status == Found
  double residual = 0;  // |v - level| at the root
};

AxisRoot axis_level_root(const AtomicMeasure& mu, double t, const Vec& zeta, double level,
                         const Vec& base_embedded);

// The half-level graph coordinate: unique s with v(t, base' + s zeta) = 1/2.
// Requires xi . zeta > 0 for every atom (origin atoms violate this).
double gamma_level(const AtomicMeasure& mu, double t, const Vec& base, const Vec& zeta);

// CSV dump of the field over a rectangular grid: header t,x_1..x_d,v,log_v.
std::string grid_eval_csv(const AtomicMeasure& mu, double t, const std::vector<double>& lo,
                          const std::vector<double>& hi, double dx);

}  // namespace frontlab
