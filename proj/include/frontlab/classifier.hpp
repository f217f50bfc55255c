#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/geometry.hpp"
#include "frontlab/htable.hpp"
#include "frontlab/linfield.hpp"
#include "frontlab/measure.hpp"

namespace frontlab {

enum class Verdict {
  H1_FrontAndBounded,   // cone with positive aperture, no mass at the origin
  H2_Neither,           // cone with positive aperture plus an origin atom
  H3_BoundedNotFront,   // origin interior to the support hull
  HalfSpaceEdge,        // origin on the hull boundary: half-space but no cone
};

std::string verdict_name(Verdict v);

struct Classification {
  Verdict verdict;
  Vec zeta;                  // cone axis (H1/H2) or supporting direction (edge)
  double alpha = 0.0;        // certified aperture: min over atoms of (xi.zeta)/|xi|
  std::vector<Vec> witness;  // H3: interior Caratheodory subset, <= 2d points
  bool origin_in_support = false;
  std::string note;
};

class OnlyOriginAtom : public std::domain_error {
 public:
  explicit OnlyOriginAtom(const std::string& w) : std::domain_error(w) {}
};
class NotH3 : public std::domain_error {
 public:
  explicit NotH3(const std::string& w) : std::domain_error(w) {}
};
class NotH2 : public std::domain_error {
 public:
  explicit NotH2(const std::string& w) : std::domain_error(w) {}
};
class BadLevel : public std::invalid_argument {
 public:
  explicit BadLevel(const std::string& w) : std::invalid_argument(w) {}
};

Classification classify(const AtomicMeasure& mu);

// Arg-max over unit directions of min over nonzero atoms of (xi.zeta)/|xi|.
// Exact (arc sweep / min-norm duality) in every dimension when the value is
// positive; subgradient ascent with deterministic restarts otherwise.  The
// reported aperture is the certified objective value at the returned axis
// and may be <= 0 when no cone fits.
struct BestCone {
  Vec zeta;
  double alpha;
};
BestCone best_cone(const AtomicMeasure& mu);

struct StructureConstants {
  double a_star;  // inf over directions of the mass strictly behind a half-space
  int N;          // smallest cap scale giving every direction positive mass
  double b_star;  // inf over directions of the mass in the scale-N cap
  std::string method;
};

StructureConstants structure_constants(const AtomicMeasure& mu);

// Volume fraction |W_{1/2,zeta} ∩ B_1| / |B_1| (independent of zeta).
double cap_volume_fraction(std::size_t d);

struct WidthCertificate {
  double epsilon;
  double L_eps;         // +inf when unbounded
  bool unbounded;
  std::map<std::string, double> intermediates;
  std::string h_table_id;
  Verdict verdict;
};

WidthCertificate certified_width_bound(const AtomicMeasure& mu, double eps, const HTable& h);

// Divergence diagnostics for the origin-atom case: tracks the annulus and
// core components along the escaping ray Y(t) and the level coordinate s_t.
struct DivergenceSample {
  double t;
  double r_t;           // ray coordinate
  double v_outer;       // annulus component at Y(t)
  double v_outer_bound; // certified decay bound mass * e^{-t}
  double v_core;        // core component at Y(t)
  double v_core_bound;  // certified growth bound
  double s_t;           // level coordinate; +inf when the level is unreachable
  bool s_t_found;
  bool s_t_diverged;    // far-field plateau already above the level
};

struct DivergenceDiagnostic {
  Vec zeta;
  double alpha;
  double delta;
  double delta_prime;
  double level;              // h^{-1}(eps)
  double lower_bound_L;      // ln(2)/delta, valid for every admissible width
  double t0;                 // ln(2 * origin mass)
  double far_limit;          // origin_mass * e^{-t0} (= 1/2)
  std::vector<double> far_samples;  // v(-t0, R zeta) for R in {10,100,1000}
  std::vector<DivergenceSample> samples;
  bool outer_decay_ok;       // v_outer <= bound and decreasing on the horizon
  bool core_growth_ok;       // v_core >= bound and increasing on the horizon
  bool ray_below_level_ok;   // s_t > r_t at every sample
  double core_crosses_1e6_at;  // first sampled time with v_core > 1e6 (+inf if none)
};

DivergenceDiagnostic h2_divergence_diagnostic(const AtomicMeasure& mu, double eps, double delta,
                                              double horizon, int n_samples, const HTable& h);

std::string classification_to_json(const Classification& c);
std::string certificate_to_json(const WidthCertificate& c);
std::string diagnostic_to_csv(const DivergenceDiagnostic& d);
std::string diagnostic_to_json(const DivergenceDiagnostic& d);

}  // namespace frontlab
