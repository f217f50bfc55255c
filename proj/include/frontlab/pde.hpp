#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/htable.hpp"
#include "frontlab/measure.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/vec.hpp"

namespace frontlab {

class CFLViolation : public std::invalid_argument {
 public:
  explicit CFLViolation(const std::string& w) : std::invalid_argument(w) {}
};
class NonFiniteValue : public std::runtime_error {
 public:
  explicit NonFiniteValue(const std::string& w) : std::runtime_error(w) {}
};
class NotConverged : public std::runtime_error {
 public:
  explicit NotConverged(const std::string& w) : std::runtime_error(w) {}
};

// Sampled solution on a uniform rectangular grid, boundaries included.
struct Field {
  std::size_t dim = 1;                 // 1 or 2
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
  double dx = 0.0;
  std::array<std::size_t, 2> n{1, 1};  // grid points per axis
  double t = 0.0;
  std::vector<double> u;               // row-major: [iy * n[0] + ix]

  double& at(std::size_t ix, std::size_t iy = 0) { return u[iy * n[0] + ix]; }
  double at(std::size_t ix, std::size_t iy = 0) const { return u[iy * n[0] + ix]; }
  Vec coord(std::size_t ix, std::size_t iy = 0) const;
  std::size_t cells() const { return n[0] * n[1]; }
};

// The grid must cover the box exactly: (hi-lo)/dx integral per axis.
Field make_field(std::size_t dim, const std::vector<double>& lo, const std::vector<double>& hi,
                 double dx);

using BoundaryFn = std::function<double(double t, const Vec& x)>;

// Dirichlet data from the upper sandwich envelope min(v, 1).
BoundaryFn sandwich_boundary(const AtomicMeasure& mu);

// Field sampled from min(v(t0, .), 1): the upper envelope of the entire
// solution, used as the initial state of every run.
Field init_from_linearization(const AtomicMeasure& mu, double t0, const std::vector<double>& lo,
                              const std::vector<double>& hi, double dx);

struct IntegrateOptions {
  double cfl = 0.4;                 // dt = cfl dx^2 / (2 dim)
  std::optional<double> dt;         // explicit step; must satisfy the CFL bound
  bool clamp = true;                // clamp to [0,1] after each step
  // 1-D moving window: when the half-level front comes within `margin` of
  // the right edge, shift the box right by `shift_cells`, refilling entries
  // from the boundary rule.
  bool moving_window = false;
  double window_margin = 10.0;
  std::size_t window_shift_cells = 200;
};

struct Trajectory {
  std::vector<Field> snapshots;
  double max_excursion = 0.0;  // worst pre-clamp departure from [0,1]
  long steps = 0;
};

// Method of lines: second-order central Laplacian, classical four-stage
// Runge-Kutta, time-dependent Dirichlet boundary.  Snapshot times must be
// increasing and start at or after field.t.
Trajectory integrate(Field field, const ReactionFn& reaction, const BoundaryFn& boundary,
                     const std::vector<double>& snapshot_times, const IntegrateOptions& opts = {});

struct SandwichReport {
  double max_lower_violation = 0.0;  // max (h(v) - u)_+
  double lower_t = 0.0;
  Vec lower_x;
  double max_upper_violation = 0.0;  // max (u - min(v,1))_+
  double upper_t = 0.0;
  Vec upper_x;
  double max_linear_regime_reldiff = 0.0;  // max |u-v|/v where v <= 1e-3
};

SandwichReport check_sandwich(const Trajectory& traj, const AtomicMeasure& mu, const HTable& h);

struct HCalibrationOptions {
  std::vector<double> t0_study = {-8.0, -12.0, -16.0};
  double t_end = 6.0;
  std::vector<double> sample_times = {0.0, 2.0, 4.0, 6.0};
  double dx = 0.05;
  double cfl = 0.4;
  double tol = 5e-3;  // max disagreement between t0 levels
};

// Calibrates the comparison function from converged 1-D single-atom runs:
// collects (v, u) pairs and takes the monotone lower envelope over all
// decay rates.  Throws NotConverged when the t0 study disagrees.
HTable estimate_h(const ReactionFn& reaction, const std::vector<double>& lambdas,
                  const HCalibrationOptions& opts = {});

// Interpolated half-level crossing of a monotone 1-D profile (rightmost).
double front_position_1d(const Field& f, double level = 0.5);

// Snapshot persistence: <base>.bin holds little-endian doubles row-major,
// <base>.json the grid metadata.
void save_snapshot(const Field& f, const std::string& base);
Field load_snapshot(const std::string& base);
std::string field_slice_csv(const Field& f);  // 1-D fields: x,u rows

}  // namespace frontlab
