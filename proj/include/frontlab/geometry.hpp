#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "frontlab/vec.hpp"

namespace frontlab::geom {

// Closed cone {x : x . axis >= aperture * |x|}.  aperture = 0 is the half
// space with inner normal `axis`.
struct Cone {
  Vec axis;         // unit vector
  double aperture;  // in [0, 1]

  Cone(Vec a, double ap);
};

struct SeparationResult {
  Vec zeta;       // unit direction with s . zeta >= margin for all s in S
  double margin;  // > 0
};

// Perturbation-stability certificate for "0 stays in the hull".
struct WiggleCertificate {
  double epsilon;                    // allowed per-point perturbation radius
  std::vector<double> coefficients;  // all > 0, sum c_i x_i = 0
  double interior_radius;            // ball of this radius fits inside ch(S)
};

struct MinNormResult {
  Vec point;                   // the minimum-norm point of ch(S)
  std::vector<double> coeffs;  // convex coefficients realizing it
  double gap;                  // final duality gap
};

class NotInterior : public std::domain_error {
 public:
  explicit NotInterior(const std::string& what) : std::domain_error(what) {}
};

bool cone_membership(const Vec& x, const Cone& cone);

// Wolfe's minimum-norm-point iteration over the simplex of convex
// coefficients (Frank-Wolfe vertex selection plus affine corral solves).
MinNormResult min_norm_point(const std::vector<Vec>& points);

// Some (zeta, margin) with x . zeta >= margin > 0 for all x iff 0 is outside
// the closed hull; nullopt otherwise.
std::optional<SeparationResult> separating_direction(const std::vector<Vec>& points);

// Closed-hull membership of q, within the library's fixed tolerance.
bool hull_contains(const std::vector<Vec>& points, const Vec& q);

// Convex coefficients with sum lambda_i points_i ~= q; nullopt if q is not in
// the hull.
std::optional<std::vector<double>> hull_coefficients(const std::vector<Vec>& points, const Vec& q);

// 0 in int(ch(points)): min-norm point at zero plus membership of small
// probes along all 2d axis directions.
bool origin_interior(const std::vector<Vec>& points);

// Smallest subset S* (|S*| <= 2d) with x still interior to ch(S*); subsets
// are scanned by size then lexicographically by index for determinism.
std::vector<Vec> caratheodory_reduce(const std::vector<Vec>& points, const Vec& x);

// Strictly positive c with |sum c_i x_i| <= 1e-9 * sum c_i, built from
// barycentric coefficients plus delta-shift representations of -delta*x_i.
std::vector<double> positive_combination(const std::vector<Vec>& points);

// dist(0, boundary of ch(points)); exact facet enumeration for d <= 3, a
// certified inscribed-cross-polytope lower bound for d == 4.
double interior_radius(const std::vector<Vec>& points);

// Certified epsilon such that moving each point within epsilon keeps 0 in
// the (closed) hull.
WiggleCertificate wiggle_radius(const std::vector<Vec>& points);

// Merge points closer than 1e-12; order of first appearance is kept.
std::vector<Vec> dedupe_points(const std::vector<Vec>& points);

}  // namespace frontlab::geom
