#include "frontlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frontlab/geometry.hpp"

namespace frontlab {

double AtomicMeasure::total_mass() const {
  Kahan k;
  for (const auto& a : atoms) k.add(a.w);
  return k.sum;
}

double AtomicMeasure::origin_mass() const {
  for (const auto& a : atoms)
    if (norm(a.xi) == 0.0) return a.w;
  return 0.0;
}

std::vector<Vec> AtomicMeasure::positions() const {
  std::vector<Vec> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(a.xi);
  return out;
}

std::vector<Vec> AtomicMeasure::nonzero_positions() const {
  std::vector<Vec> out;
  for (const auto& a : atoms)
    if (norm(a.xi) > 0.0) out.push_back(a.xi);
  return out;
}

double AtomicMeasure::mass_in_band(double r_lo, double r_hi) const {
  Kahan k;
  for (const auto& a : atoms) {
    double r = norm(a.xi);
    if (r >= r_lo && r < r_hi) k.add(a.w);
  }
  return k.sum;
}

MeasureValidation validate_measure(std::size_t dimension, const std::vector<Atom>& raw) {
  MeasureValidation out;
  auto issue = [&](MeasureIssueCode code, bool fatal, std::string msg) {
    out.issues.push_back({code, fatal, std::move(msg)});
  };

  if (dimension == 0) {
    issue(MeasureIssueCode::EmptyMeasure, true, "dimension must be >= 1");
    return out;
  }
  if (raw.empty()) {
    issue(MeasureIssueCode::EmptyMeasure, true, "measure has no atoms");
    return out;
  }

  bool fatal = false;
  std::vector<Atom> cleaned;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Atom a = raw[i];
    std::ostringstream tag;
    tag << "atom " << i;
    if (a.xi.size() != dimension || !all_finite(a.xi) || !std::isfinite(a.w)) {
      issue(MeasureIssueCode::NonFiniteAtom, true,
            tag.str() + ": non-finite entries or wrong dimension");
      fatal = true;
      continue;
    }
    double r = norm(a.xi);
    if (r >= 1.0) {
      std::ostringstream m;
      m << tag.str() << ": |xi| = " << r << " not < 1";
      issue(MeasureIssueCode::AtomOutsideBall, true, m.str());
      fatal = true;
    }
    if (a.w <= 0.0) {
      std::ostringstream m;
      m << tag.str() << ": weight " << a.w << " not > 0";
      issue(MeasureIssueCode::NonpositiveWeight, true, m.str());
      fatal = true;
    }
    if (r <= 1e-12 && r != 0.0) a.xi = zeros(dimension);  // snap to the origin
    cleaned.push_back(a);
  }
  if (fatal) return out;

  // Merge coincident atoms (1e-12 tolerance) by weight addition.
  std::vector<Atom> merged;
  for (const auto& a : cleaned) {
    bool found = false;
    for (auto& m : merged) {
      if (norm(m.xi - a.xi) <= 1e-12) {
        m.w += a.w;
        issue(MeasureIssueCode::DuplicateAtom, false,
              "coincident atoms merged by weight addition");
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(a);
  }

  AtomicMeasure mu;
  mu.dimension = dimension;
  mu.atoms = std::move(merged);
  out.measure = std::move(mu);
  return out;
}

AtomicMeasure make_measure(std::size_t dimension, const std::vector<Atom>& raw) {
  MeasureValidation v = validate_measure(dimension, raw);
  if (!v.ok()) {
    std::string msg = "invalid measure:";
    for (const auto& is : v.issues)
      if (is.fatal) msg += " [" + is.message + "]";
    throw std::invalid_argument(msg);
  }
  return *v.measure;
}

SupportGeometry support_geometry(const AtomicMeasure& mu) {
  SupportGeometry g;
  g.delta = std::numeric_limits<double>::infinity();
  g.outer = 0.0;
  g.origin_atom = false;
  for (const auto& a : mu.atoms) {
    double r = norm(a.xi);
    g.delta = std::min(g.delta, r);
    g.outer = std::max(g.outer, r);
    if (r == 0.0) g.origin_atom = true;
  }
  // Hull vertices: points not contained in the hull of the others.  For a
  // purely atomic measure this is exactly ch(mu): the atom set is an
  // essential support and every essential support contains all atoms.
  std::vector<Vec> pts = mu.positions();
  if (pts.size() == 1) {
    g.hull = pts;
    return g;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!geom::hull_contains(others, pts[i])) g.hull.push_back(pts[i]);
  }
  if (g.hull.empty()) g.hull.push_back(pts[0]);  // all atoms coincide
  return g;
}

std::string measure_to_json(const AtomicMeasure& mu) {
  nlohmann::ordered_json j;
  j["dimension"] = mu.dimension;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : mu.atoms) {
    nlohmann::ordered_json ja;
    ja["xi"] = a.xi;
    ja["w"] = a.w;
    j["atoms"].push_back(ja);
  }
  return j.dump(2);
}

AtomicMeasure measure_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::size_t d = j.at("dimension").get<std::size_t>();
  std::vector<Atom> raw;
  for (const auto& ja : j.at("atoms")) {
    Atom a;
    a.xi = ja.at("xi").get<std::vector<double>>();
    a.w = ja.at("w").get<double>();
    raw.push_back(std::move(a));
  }
  return make_measure(d, raw);
}

AtomicMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return measure_from_json_text(ss.str());
}

void save_measure(const AtomicMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write measure file: " + path);
  out << measure_to_json(mu) << "\n";
}

}  // namespace frontlab
