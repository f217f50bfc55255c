#include "frontlab/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "frontlab/rng.hpp"

namespace frontlab {

namespace {

constexpr double kEdgeTol = 1e-9;
const double kPi = 3.14159265358979323846;

std::vector<Vec> unit_directions(const std::vector<Vec>& pts) {
  std::vector<Vec> u;
  u.reserve(pts.size());
  for (const auto& p : pts) u.push_back(normalized(p));
  return u;
}

double maximin_at(const std::vector<Vec>& units, const Vec& zeta) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& u : units) m = std::min(m, dot(u, zeta));
  return m;
}

// d = 2: the optimal axis is the center of the minimal arc enclosing all
// atom directions, i.e. the complement of the largest angular gap.
BestCone best_cone_2d(const std::vector<Vec>& units) {
  std::vector<double> ang;
  ang.reserve(units.size());
  for (const auto& u : units) ang.push_back(std::atan2(u[1], u[0]));
  std::sort(ang.begin(), ang.end());
  ang.erase(std::unique(ang.begin(), ang.end(),
                        [](double a, double b) { return std::fabs(a - b) < 1e-15; }),
            ang.end());
  if (ang.size() == 1) {
    Vec z = {std::cos(ang[0]), std::sin(ang[0])};
    return {z, maximin_at(units, z)};
  }
  double best_gap = -1.0;
  std::vector<double> centers;
  for (std::size_t i = 0; i < ang.size(); ++i) {
    double next = (i + 1 < ang.size()) ? ang[i + 1] : ang[0] + 2.0 * kPi;
    double gap = next - ang[i];
    double center = ang[i] + 0.5 * gap + kPi;  // midpoint of the complementary arc
    if (gap > best_gap + 1e-12) {
      best_gap = gap;
      centers.assign(1, center);
    } else if (std::fabs(gap - best_gap) <= 1e-12) {
      centers.push_back(center);
    }
  }
  Vec best;
  bool first = true;
  for (double c : centers) {
    Vec z = {std::cos(c), std::sin(c)};
    if (first || lex_less(best, z)) {
      best = z;
      first = false;
    }
  }
  return {best, maximin_at(units, best)};
}

BestCone best_cone_general(const std::vector<Vec>& units, std::size_t d) {
  // 0 outside ch(units): minimax duality makes the normalized min-norm point
  // the exact arg-max and its norm the exact maximin value.
  geom::MinNormResult mn = geom::min_norm_point(units);
  if (norm(mn.point) > 1e-10) {
    Vec z = normalized(mn.point);
    return {z, maximin_at(units, z)};
  }
  // Otherwise the maximin is <= 0; polish with projected subgradient ascent
  // from deterministic restarts.
  Rng rng(0x5eedULL);
  std::vector<Vec> starts;
  Vec mean = zeros(d);
  for (const auto& u : units) mean += u;
  if (norm(mean) > 1e-12) starts.push_back(normalized(mean));
  for (int r = 0; r < 32; ++r) starts.push_back(rng.on_sphere(d));
  Vec best;
  double best_val = -std::numeric_limits<double>::infinity();
  for (const auto& s0 : starts) {
    Vec z = s0;
    for (int it = 1; it <= 600; ++it) {
      std::size_t amin = 0;
      double mv = dot(units[0], z);
      for (std::size_t i = 1; i < units.size(); ++i) {
        double v = dot(units[i], z);
        if (v < mv) {
          mv = v;
          amin = i;
        }
      }
      double step = 0.8 / std::sqrt(static_cast<double>(it));
      Vec cand = z;
      axpy(step, units[amin], cand);
      double n = norm(cand);
      if (n < 1e-14) break;
      z = (1.0 / n) * cand;
    }
    double v = maximin_at(units, z);
    if (v > best_val || (v == best_val && lex_less(best, z))) {
      best_val = v;
      best = z;
    }
  }
  return {best, best_val};
}

// min over unit directions zeta of sum of weights whose cap condition
// center_i . zeta > threshold_i holds.  Cells of the boundary arrangement
// are sampled at their interiors; boundary points themselves never beat the
// adjacent cells because the conditions are strict.
struct Cap {
  Vec center;        // unit vector
  double threshold;  // cos of the angular radius
  double weight;
};

double min_cap_weight_1d(const std::vector<Cap>& caps) {
  double best = std::numeric_limits<double>::infinity();
  for (double z : {1.0, -1.0}) {
    double s = 0.0;
    for (const auto& c : caps)
      if (c.center[0] * z > c.threshold) s += c.weight;
    best = std::min(best, s);
  }
  return best;
}

double min_cap_weight_2d(const std::vector<Cap>& caps) {
  std::vector<double> breaks;
  for (const auto& c : caps) {
    if (c.threshold >= 1.0) continue;  // empty condition
    double psi = std::atan2(c.center[1], c.center[0]);
    if (c.threshold <= -1.0) continue;  // always true: no breakpoints
    double beta = std::acos(std::clamp(c.threshold, -1.0, 1.0));
    breaks.push_back(psi - beta);
    breaks.push_back(psi + beta);
  }
  if (breaks.empty()) breaks.push_back(0.0);
  for (auto& b : breaks) {
    b = std::fmod(b, 2.0 * kPi);
    if (b < 0.0) b += 2.0 * kPi;
  }
  std::sort(breaks.begin(), breaks.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    double next = (i + 1 < breaks.size()) ? breaks[i + 1] : breaks[0] + 2.0 * kPi;
    double mid = 0.5 * (breaks[i] + next);
    Vec z = {std::cos(mid), std::sin(mid)};
    double s = 0.0;
    for (const auto& c : caps)
      if (dot(c.center, z) > c.threshold) s += c.weight;
    best = std::min(best, s);
  }
  return best;
}

double eval_caps(const std::vector<Cap>& caps, const Vec& z) {
  double s = 0.0;
  for (const auto& c : caps)
    if (dot(c.center, z) > c.threshold) s += c.weight;
  return s;
}

double min_cap_weight_3d(const std::vector<Cap>& caps, int grid_n) {
  std::vector<Vec> cands;
  const double ga = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < grid_n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / grid_n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    cands.push_back({r * std::cos(ga * i), r * std::sin(ga * i), z});
  }
  for (const auto& c : caps) {
    cands.push_back(c.center);
    cands.push_back(-1.0 * c.center);
  }
  // Cap-boundary intersections plus quadrant probes around them.
  const double eta = 1e-6;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      const Vec &a = caps[i].center, &b = caps[j].center;
      double ab = dot(a, b);
      double det = 1.0 - ab * ab;
      if (det < 1e-12) continue;
      double ta = caps[i].threshold, tb = caps[j].threshold;
      double x = (ta - ab * tb) / det;
      double y = (tb - ab * ta) / det;
      double rem = 1.0 - (x * x + y * y + 2.0 * x * y * ab);
      if (rem < 0.0) continue;
      Vec n = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
      double nn = norm(n);
      if (nn < 1e-12) continue;
      n = (1.0 / nn) * n;
      for (double s : {1.0, -1.0}) {
        Vec base = x * a + y * b + (s * std::sqrt(rem)) * n;
        double bn = norm(base);
        if (bn < 1e-9) continue;
        base = (1.0 / bn) * base;
        cands.push_back(base);
        Vec wa = a - dot(a, base) * base;
        Vec wb = b - dot(b, base) * base;
        double na = norm(wa), nb = norm(wb);
        if (na > 1e-12) wa = (1.0 / na) * wa;
        if (nb > 1e-12) wb = (1.0 / nb) * wb;
        for (double sa : {1.0, -1.0})
          for (double sb : {1.0, -1.0}) {
            Vec p = base + (sa * eta) * wa + (sb * eta) * wb;
            cands.push_back(normalized(p));
          }
      }
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : cands) best = std::min(best, eval_caps(caps, z));
  return best;
}

double min_cap_weight(std::size_t d, const std::vector<Cap>& caps, int grid_n) {
  if (caps.empty()) return 0.0;
  if (d == 1) return min_cap_weight_1d(caps);
  if (d == 2) return min_cap_weight_2d(caps);
  if (d == 3) return min_cap_weight_3d(caps, grid_n);
  throw std::invalid_argument("structure constants: d > 3 unsupported");
}

// Regularized incomplete beta via the standard continued fraction.
double betacf(double a, double b, double x) {
  const int maxit = 300;
  const double eps = 3e-16, fpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, dnm = 1.0 - qab * x / qap;
  if (std::fabs(dnm) < fpmin) dnm = fpmin;
  dnm = 1.0 / dnm;
  double h = dnm;
  for (int m = 1; m <= maxit; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    dnm = 1.0 + aa * dnm;
    if (std::fabs(dnm) < fpmin) dnm = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    dnm = 1.0 / dnm;
    h *= dnm * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    dnm = 1.0 + aa * dnm;
    if (std::fabs(dnm) < fpmin) dnm = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    dnm = 1.0 / dnm;
    double del = dnm * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
              b * std::log(1.0 - x);
  double bt = std::exp(ln);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

void put_num(std::ostringstream& os, double x) {
  char buf[64];
  snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::H1_FrontAndBounded: return "H1_FrontAndBounded";
    case Verdict::H2_Neither: return "H2_Neither";
    case Verdict::H3_BoundedNotFront: return "H3_BoundedNotFront";
    case Verdict::HalfSpaceEdge: return "HalfSpaceEdge";
  }
  return "?";
}

BestCone best_cone(const AtomicMeasure& mu) {
  std::vector<Vec> nz = mu.nonzero_positions();
  if (nz.empty()) throw OnlyOriginAtom("best_cone: no nonzero atoms");
  std::vector<Vec> units = unit_directions(nz);
  if (mu.dimension == 1) {
    double plus = maximin_at(units, {1.0});
    double minus = maximin_at(units, {-1.0});
    if (plus >= minus) return {{1.0}, plus};
    return {{-1.0}, minus};
  }
  if (mu.dimension == 2) return best_cone_2d(units);
  return best_cone_general(units, mu.dimension);
}

Classification classify(const AtomicMeasure& mu) {
  Classification c;
  c.origin_in_support = mu.has_origin_atom();
  std::vector<Vec> nz = mu.nonzero_positions();

  if (nz.empty()) {
    // Pure point mass at the origin: contained in every cone.
    c.verdict = Verdict::H2_Neither;
    c.zeta = unit_axis(mu.dimension, 0);
    c.alpha = 1.0;
    c.note = "support is {0}; any cone certificate applies";
    return c;
  }

  BestCone bc = best_cone(mu);
  if (bc.alpha > kEdgeTol) {
    c.zeta = bc.zeta;
    c.alpha = bc.alpha;
    c.verdict = c.origin_in_support ? Verdict::H2_Neither : Verdict::H1_FrontAndBounded;
    return c;
  }

  if (geom::origin_interior(nz)) {
    c.verdict = Verdict::H3_BoundedNotFront;
    c.witness = geom::caratheodory_reduce(nz, zeros(mu.dimension));
    return c;
  }

  c.verdict = Verdict::HalfSpaceEdge;
  c.zeta = bc.zeta;
  c.alpha = bc.alpha;
  c.note = c.origin_in_support
               ? "origin on the hull boundary and in the support: width and front "
                 "status undetermined"
               : "origin on the hull boundary, not in the support: bounded width; "
                 "front status conjectured negative, not settled";
  return c;
}

StructureConstants structure_constants(const AtomicMeasure& mu) {
  Classification c = classify(mu);
  if (c.verdict != Verdict::H3_BoundedNotFront)
    throw NotH3("structure_constants: measure is not in the interior case");
  const std::size_t d = mu.dimension;
  const int grid_n = 20000;

  std::vector<Cap> half;
  for (const auto& a : mu.atoms) {
    if (norm(a.xi) == 0.0) continue;  // the origin never lands strictly behind
    half.push_back({-1.0 * normalized(a.xi), 0.0, a.w});
  }
  StructureConstants sc;
  sc.a_star = min_cap_weight(d, half, grid_n);

  sc.N = 0;
  sc.b_star = 0.0;
  for (int n = 2; n <= 100000; ++n) {
    double inv = 1.0 / n;
    std::vector<Cap> caps;
    for (const auto& a : mu.atoms) {
      double r = norm(a.xi);
      if (r <= inv) continue;  // needs |xi| strictly above 1/N
      caps.push_back({-1.0 * normalized(a.xi), inv, a.w});
    }
    if (caps.empty()) continue;
    double b = min_cap_weight(d, caps, grid_n);
    if (b > 0.0) {
      sc.N = n;
      sc.b_star = b;
      break;
    }
  }
  if (sc.N == 0) throw std::runtime_error("structure_constants: no cap scale found");
  sc.method = (d <= 2) ? "exact" : ("grid:" + std::to_string(grid_n));
  return sc;
}

double cap_volume_fraction(std::size_t d) {
  if (d == 0) throw std::invalid_argument("cap_volume_fraction: d >= 1 required");
  if (d == 1) return 0.5;
  // Fraction of the sphere within angle pi/3 of the axis:
  // (1/2) I_{sin^2(pi/3)}((d-1)/2, 1/2).
  return 0.5 * reg_inc_beta((static_cast<double>(d) - 1.0) / 2.0, 0.5, 0.75);
}

WidthCertificate certified_width_bound(const AtomicMeasure& mu, double eps, const HTable& h) {
  if (!(eps > 0.0 && eps < 0.5)) throw BadLevel("certified_width_bound: eps outside (0, 1/2)");
  Classification c = classify(mu);
  WidthCertificate cert;
  cert.epsilon = eps;
  cert.h_table_id = h.id;
  cert.verdict = c.verdict;
  cert.unbounded = false;

  if (c.verdict == Verdict::HalfSpaceEdge)
    throw std::domain_error("certified_width_bound: half-space edge case has no certificate");

  if (c.verdict == Verdict::H2_Neither) {
    cert.unbounded = true;
    cert.L_eps = std::numeric_limits<double>::infinity();
    cert.intermediates["t0"] = std::log(2.0 * mu.origin_mass());
    return cert;
  }

  double hinv_top = h.inverse(1.0 - eps);

  if (c.verdict == Verdict::H1_FrontAndBounded) {
    SupportGeometry g = support_geometry(mu);
    double s = std::log(hinv_top / eps) / (c.alpha * g.delta);
    cert.L_eps = s + 1.0;
    cert.intermediates["alpha"] = c.alpha;
    cert.intermediates["delta"] = g.delta;
    cert.intermediates["s"] = s;
    // Graph certificate: the same bound evaluated at the half-level image.
    double eh = h.eval(0.5);
    if (eh > 0.0 && eh < 0.5) {
      double sg = std::log(h.inverse(1.0 - eh) / eh) / (c.alpha * g.delta);
      cert.intermediates["graph_level"] = eh;
      cert.intermediates["L_graph"] = sg + 1.0;
    }
    return cert;
  }

  // Interior case: the full structure-constant chain.
  StructureConstants sc = structure_constants(mu);
  double mass = mu.total_mass();
  double frac = cap_volume_fraction(mu.dimension);
  double a = 0.5 * eps * frac;
  double K = 3.0 * static_cast<double>(sc.N) * sc.N;
  double T = std::log(hinv_top / sc.b_star);
  double la = std::fabs(std::log(a / mass));
  double T_a = std::max(T, 1.0 + la);
  double delta_a = (1.0 / K) * (1.0 - la / T_a);
  double L_minus = (2.0 / delta_a) * std::log(hinv_top / a);
  double L_plus = static_cast<double>(sc.N) * sc.N * (std::fabs(std::log(hinv_top / sc.b_star)) + 2.0 * T_a);
  cert.L_eps = std::max(L_minus, L_plus);
  cert.intermediates["a_star"] = sc.a_star;
  cert.intermediates["N"] = sc.N;
  cert.intermediates["b_star"] = sc.b_star;
  cert.intermediates["cap_fraction"] = frac;
  cert.intermediates["a"] = a;
  cert.intermediates["K"] = K;
  cert.intermediates["T"] = T;
  cert.intermediates["T_a"] = T_a;
  cert.intermediates["delta_a"] = delta_a;
  cert.intermediates["L_minus"] = L_minus;
  cert.intermediates["L_plus"] = L_plus;
  return cert;
}

DivergenceDiagnostic h2_divergence_diagnostic(const AtomicMeasure& mu, double eps, double delta,
                                              double horizon, int n_samples, const HTable& h) {
  Classification c = classify(mu);
  if (c.verdict != Verdict::H2_Neither)
    throw NotH2("h2_divergence_diagnostic: measure is not in the origin-atom cone case");
  if (mu.nonzero_positions().empty())
    throw OnlyOriginAtom("h2_divergence_diagnostic: needs at least one nonzero atom");
  if (!(delta > 0.0 && delta < 1.0)) throw BadRadii("h2_divergence_diagnostic: delta in (0,1)");
  if (!(eps > 0.0 && eps < 0.25))
    throw BadLevel("h2_divergence_diagnostic: eps must lie in (0, 1/4)");
  double level = h.inverse(eps);
  if (level > 0.25)
    throw BadLevel("h2_divergence_diagnostic: h^{-1}(eps) must be <= 1/4; lower eps");
  if (n_samples < 2) throw std::invalid_argument("h2_divergence_diagnostic: n_samples >= 2");

  DivergenceDiagnostic out;
  BestCone bc = best_cone(mu);
  out.zeta = bc.zeta;
  out.alpha = bc.alpha;
  out.delta = delta;
  out.delta_prime = bc.alpha * delta / 6.0;
  out.level = level;
  out.lower_bound_L = std::log(2.0) / delta;

  double w0 = mu.origin_mass();
  out.t0 = std::log(2.0 * w0);
  out.far_limit = w0 * std::exp(-out.t0);
  for (double R : {10.0, 100.0, 1000.0}) {
    Vec x = R * out.zeta;
    out.far_samples.push_back(eval_v(mu, -out.t0, x).value);
  }

  double c_delta = wave_speed(delta);
  double mass_outer = mu.mass_in_band(delta, 1.0);  // |xi| >= delta
  // per-atom growth exponents for the core bound
  std::vector<std::pair<double, double>> core_atoms;  // (weight, exponent rate)
  for (const auto& a : mu.atoms) {
    double r = norm(a.xi);
    if (r < out.delta_prime)
      core_atoms.push_back({a.w, r == 0.0 ? 1.0 : r * c_delta / bc.alpha});
  }
  // The origin term grows exactly like e^t; nonzero core atoms at least like
  // e^{|xi| c_delta t / alpha}.
  out.outer_decay_ok = true;
  out.core_growth_ok = true;
  out.ray_below_level_ok = true;
  out.core_crosses_1e6_at = std::numeric_limits<double>::infinity();

  double prev_outer = std::numeric_limits<double>::infinity();
  double prev_core = -1.0;
  for (int j = 0; j < n_samples; ++j) {
    double t = horizon * static_cast<double>(j) / static_cast<double>(n_samples - 1);
    DivergenceSample s;
    s.t = t;
    s.r_t = (2.0 / bc.alpha) * c_delta * t;
    Vec y = s.r_t * out.zeta;
    SplitEval sp = eval_v_split(mu, t, y, delta, out.delta_prime);
    s.v_outer = sp.outer.value;
    s.v_outer_bound = mass_outer * std::exp(-t);
    s.v_core = sp.core.value;
    Kahan cb;
    for (const auto& [w, rate] : core_atoms)
      cb.add(rate == 1.0 ? w * std::exp(t) : w * std::exp(rate * t));
    s.v_core_bound = cb.sum;

    AxisRoot root = axis_level_root(mu, t, out.zeta, level, zeros(mu.dimension));
    s.s_t_found = root.status == AxisRootStatus::Found;
    s.s_t_diverged = root.status == AxisRootStatus::LevelBelowFarLimit;
    s.s_t = s.s_t_found ? root.s : std::numeric_limits<double>::infinity();

    if (s.v_outer > s.v_outer_bound * (1.0 + 1e-12)) out.outer_decay_ok = false;
    if (j > 0 && s.v_outer > prev_outer) out.outer_decay_ok = false;
    if (s.v_core < s.v_core_bound * (1.0 - 1e-12)) out.core_growth_ok = false;
    if (j > 0 && s.v_core <= prev_core) out.core_growth_ok = false;
    if (!(s.s_t > s.r_t)) out.ray_below_level_ok = false;
    if (s.v_core > 1e6 && !std::isfinite(out.core_crosses_1e6_at)) out.core_crosses_1e6_at = t;

    prev_outer = s.v_outer;
    prev_core = s.v_core;
    out.samples.push_back(s);
  }
  return out;
}

std::string classification_to_json(const Classification& c) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(c.verdict);
  j["zeta"] = c.zeta;
  j["alpha"] = c.alpha;
  j["origin_in_support"] = c.origin_in_support;
  if (!c.witness.empty()) {
    j["witness"] = nlohmann::json::array();
    for (const auto& w : c.witness) j["witness"].push_back(w);
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j.dump(2);
}

std::string certificate_to_json(const WidthCertificate& c) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(c.verdict);
  j["eps"] = c.epsilon;
  j["unbounded"] = c.unbounded;
  if (c.unbounded)
    j["L_eps"] = "inf";
  else
    j["L_eps"] = c.L_eps;
  j["constants"] = c.intermediates;
  j["h_table_id"] = c.h_table_id;
  return j.dump(2);
}

std::string diagnostic_to_csv(const DivergenceDiagnostic& d) {
  std::ostringstream os;
  os << "t,r_t,v_outer,v_outer_bound,v_core,v_core_bound,s_t,s_t_found,s_t_diverged\n";
  for (const auto& s : d.samples) {
    put_num(os, s.t);
    for (double x : {s.r_t, s.v_outer, s.v_outer_bound, s.v_core, s.v_core_bound, s.s_t}) {
      os << ",";
      put_num(os, x);
    }
    os << "," << (s.s_t_found ? 1 : 0) << "," << (s.s_t_diverged ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string diagnostic_to_json(const DivergenceDiagnostic& d) {
  nlohmann::ordered_json j;
  j["zeta"] = d.zeta;
  j["alpha"] = d.alpha;
  j["delta"] = d.delta;
  j["delta_prime"] = d.delta_prime;
  j["level"] = d.level;
  j["lower_bound_L"] = d.lower_bound_L;
  j["t0"] = d.t0;
  j["far_limit"] = d.far_limit;
  j["far_samples"] = d.far_samples;
  j["outer_decay_ok"] = d.outer_decay_ok;
  j["core_growth_ok"] = d.core_growth_ok;
  j["ray_below_level_ok"] = d.ray_below_level_ok;
  if (std::isfinite(d.core_crosses_1e6_at))
    j["core_crosses_1e6_at"] = d.core_crosses_1e6_at;
  else
    j["core_crosses_1e6_at"] = "inf";
  return j.dump(2);
}

}  // namespace frontlab
