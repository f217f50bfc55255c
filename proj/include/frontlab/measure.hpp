#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontlab/vec.hpp"

namespace frontlab {

// One weighted atom of the measure: position strictly inside the unit ball,
// positive weight.
struct Atom {
  Vec xi;
  double w;
};

// Finite atomic measure on the open unit ball; the parameter of every
// solution in this library.  Construct through validate().
struct AtomicMeasure {
  std::size_t dimension = 0;
  std::vector<Atom> atoms;

  double total_mass() const;
  double origin_mass() const;  // weight sitting exactly at 0
  bool has_origin_atom() const { return origin_mass() > 0.0; }
  std::vector<Vec> positions() const;
  std::vector<Vec> nonzero_positions() const;  // positions of atoms away from 0
  // Total weight of atoms with |xi| in [r_lo, r_hi).
  double mass_in_band(double r_lo_inclusive, double r_hi_exclusive) const;
};

enum class MeasureIssueCode {
  EmptyMeasure,
  AtomOutsideBall,
  NonpositiveWeight,
  NonFiniteAtom,
  DuplicateAtom,  // warning: merged by weight addition
};

struct MeasureIssue {
  MeasureIssueCode code;
  bool fatal;
  std::string message;
};

// Structured validation result: either a usable measure plus warnings, or
// the full list of violated invariants.
struct MeasureValidation {
  std::optional<AtomicMeasure> measure;
  std::vector<MeasureIssue> issues;
  bool ok() const { return measure.has_value(); }
};

// Checks every invariant and reports all violations at once.  Atoms closer
// than 1e-12 are merged (weights added) with a warning; positions within
// 1e-12 of the origin are snapped to exact zero.
MeasureValidation validate_measure(std::size_t dimension, const std::vector<Atom>& raw);

// Shorthand that throws std::invalid_argument with the joined issue list.
AtomicMeasure make_measure(std::size_t dimension, const std::vector<Atom>& raw);

struct SupportGeometry {
  double delta;           // dist(supp, 0) = min |xi|
  double outer;           // max |xi|
  bool origin_atom;       // an atom sits exactly at 0 (then delta == 0)
  std::vector<Vec> hull;  // vertices of ch(atom positions), in input order
};

SupportGeometry support_geometry(const AtomicMeasure& mu);

// Measure-spec file round trip: {"dimension": d, "atoms": [{"xi": [...], "w": ...}]}.
std::string measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json_text(const std::string& text);
AtomicMeasure load_measure(const std::string& path);
void save_measure(const AtomicMeasure& mu, const std::string& path);

}  // namespace frontlab
