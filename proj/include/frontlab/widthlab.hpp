#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/classifier.hpp"
#include "frontlab/pde.hpp"

namespace frontlab {

class GridMismatch : public std::invalid_argument {
 public:
  explicit GridMismatch(const std::string& w) : std::invalid_argument(w) {}
};

using CellMask = std::vector<std::uint8_t>;

CellMask superlevel_mask(const Field& f, double eps);  // u >= eps
CellMask sublevel_mask(const Field& f, double eps);    // u <= eps
std::size_t mask_count(const CellMask& m);

// Exact squared Euclidean distance transform (per-row parabola envelopes);
// distances in length units, +inf where the mask is empty.
std::vector<double> distance_transform(const Field& geom, const CellMask& from);

struct InclusionResult {
  double radius = 0.0;      // sup over source cells of dist to the target set
  bool target_empty = false;  // +inf sentinel: the inclusion fails outright
  bool source_empty = false;  // trivially satisfied
};

InclusionResult inclusion_radius(const Field& geom, const CellMask& source,
                                 const CellMask& target);

struct WidthRow {
  double t;
  double L;            // superlevel eps -> superlevel 1-eps
  bool L_sentinel;     // target empty within the box
  double L_prime;      // sublevel 1-eps -> sublevel eps
  bool L_prime_sentinel;
  double graph_L = 0.0;  // half-level boundary -> sampled half-level graph of v
  bool graph_ok = false;
};

struct WidthProfile {
  double eps;
  std::vector<WidthRow> rows;
  double max_L = 0.0;        // over non-sentinel rows
  bool any_L_sentinel = false;
  double max_graph_L = 0.0;  // over rows with graph_ok
};

// Per-snapshot inclusion radii; when the classification is the cone case
// without origin mass, also the distance from the half-level boundary to
// the graph of the linearized field's half-level set.
WidthProfile width_profile(const Trajectory& traj, const AtomicMeasure& mu, double eps,
                           const std::optional<Classification>& cls = std::nullopt);

std::string width_profile_csv(const WidthProfile& p);

}  // namespace frontlab
