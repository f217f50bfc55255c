#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/classifier.hpp"
#include "frontlab/rng.hpp"
#include "oracles.hpp"

using namespace frontlab;

namespace {

HTable rational_h() {
  return HTable::from_function([](double v) { return v / (1.0 + v); }, 1e-8, 1e8, 4000,
                               "rational");
}

// Brute-force verdict from a dense direction scan over the nonzero atoms.
enum class BfVerdict { Cone, Interior, Ambiguous };

BfVerdict brute_force_case(const AtomicMeasure& mu, int ndirs, double margin) {
  std::vector<Vec> units;
  for (const auto& p : mu.nonzero_positions()) units.push_back(normalized(p));
  double mm = oracles::grid_maximin(units, oracles::direction_grid(mu.dimension, ndirs));
  if (mm > margin) return BfVerdict::Cone;
  if (mm < -margin) return BfVerdict::Interior;
  return BfVerdict::Ambiguous;
}

AtomicMeasure random_measure(Rng& rng, std::size_t d, std::size_t max_atoms, bool allow_origin) {
  std::vector<Atom> atoms;
  std::size_t n = 1 + rng.next_u64() % max_atoms;
  for (std::size_t i = 0; i < n; ++i) {
    Vec p = rng.in_ball(d, 0.95);
    if (norm(p) < 0.02) continue;
    atoms.push_back({p, rng.uniform(0.1, 2.0)});
  }
  if (atoms.empty()) atoms.push_back({0.5 * rng.on_sphere(d), 1.0});
  if (allow_origin && rng.uniform01() < 0.3) atoms.push_back({zeros(d), rng.uniform(0.1, 2.0)});
  return make_measure(d, atoms);
}

}  // namespace

TEST_CASE("classification of the canonical examples") {
  auto h1 = classify(make_measure(1, {{{0.5}, 1.0}}));
  CHECK(h1.verdict == Verdict::H1_FrontAndBounded);
  CHECK(h1.zeta[0] == doctest::Approx(1.0));
  CHECK(h1.alpha == doctest::Approx(1.0));

  auto h2 = classify(make_measure(1, {{{0.0}, 1.0}, {{0.5}, 1.0}}));
  CHECK(h2.verdict == Verdict::H2_Neither);
  CHECK(h2.origin_in_support);
  CHECK(h2.alpha == doctest::Approx(1.0));

  double s = 1.0 / std::sqrt(2.0);
  auto h3 = classify(
      make_measure(2, {{{0.5, 0.0}, 1.0}, {{0.0, 0.5}, 1.0}, {{-0.4 * s, -0.4 * s}, 1.0}}));
  CHECK(h3.verdict == Verdict::H3_BoundedNotFront);
  CHECK(h3.witness.size() <= 4);
  CHECK(oracles::origin_interior_bf(h3.witness, 20000, 1e-9));

  auto edge = classify(make_measure(2, {{{0.5, 0.0}, 1.0}, {{-0.5, 0.0}, 1.0}}));
  CHECK(edge.verdict == Verdict::HalfSpaceEdge);
  CHECK_FALSE(edge.origin_in_support);
  CHECK(std::fabs(edge.zeta[0]) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(edge.zeta[1] == doctest::Approx(1.0));  // lexicographically largest of +-e_2

  auto origin_only = classify(make_measure(2, {{{0.0, 0.0}, 1.0}}));
  CHECK(origin_only.verdict == Verdict::H2_Neither);
}

TEST_CASE("best cone on symmetric configurations") {
  auto single = best_cone(make_measure(2, {{{0.5, 0.0}, 1.0}}));
  CHECK(single.zeta[0] == doctest::Approx(1.0));
  CHECK(single.alpha == doctest::Approx(1.0));

  auto pair = best_cone(make_measure(2, {{{0.5, 0.0}, 1.0}, {{0.0, 0.5}, 1.0}}));
  double s = 1.0 / std::sqrt(2.0);
  CHECK(pair.zeta[0] == doctest::Approx(s).epsilon(1e-12));
  CHECK(pair.zeta[1] == doctest::Approx(s).epsilon(1e-12));
  CHECK(pair.alpha == doctest::Approx(s).epsilon(1e-12));

  CHECK_THROWS_AS(best_cone(make_measure(1, {{{0.0}, 1.0}})), OnlyOriginAtom);
}

TEST_CASE("best cone maximin matches a dense direction grid in 3-D") {
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 5; ++i) atoms.push_back({rng.in_ball(3, 0.9), 1.0});
    auto mu = make_measure(3, atoms);
    auto bc = best_cone(mu);
    std::vector<Vec> units;
    for (const auto& p : mu.nonzero_positions()) units.push_back(normalized(p));
    double grid = oracles::grid_maximin(units, oracles::direction_grid(3, 1000000));
    CHECK(bc.alpha >= grid - 1e-9);  // the exact optimum dominates the grid
    CHECK(bc.alpha <= grid + 1e-3);  // and the grid tracks it to its resolution
  }
}

TEST_CASE("classification is invariant under weight scaling and rotation") {
  auto mu = make_measure(2, {{{0.4, 0.1}, 1.0}, {{0.2, 0.3}, 0.5}});
  auto base = classify(mu);

  std::vector<Atom> scaled = mu.atoms;
  for (auto& a : scaled) a.w *= 123.0;
  auto cs = classify(make_measure(2, scaled));
  CHECK(cs.verdict == base.verdict);
  CHECK(norm(cs.zeta - base.zeta) < 1e-12);

  double th = 1.1;
  std::vector<Atom> rotated;
  for (const auto& a : mu.atoms) {
    Vec p = {std::cos(th) * a.xi[0] - std::sin(th) * a.xi[1],
             std::sin(th) * a.xi[0] + std::cos(th) * a.xi[1]};
    rotated.push_back({p, a.w});
  }
  auto cr = classify(make_measure(2, rotated));
  CHECK(cr.verdict == base.verdict);
  Vec zr = {std::cos(th) * base.zeta[0] - std::sin(th) * base.zeta[1],
            std::sin(th) * base.zeta[0] + std::cos(th) * base.zeta[1]};
  CHECK(norm(cr.zeta - zr) < 1e-9);
  CHECK(cr.alpha == doctest::Approx(base.alpha).epsilon(1e-12));
}

TEST_CASE("verdicts match the brute-force direction scan") {
  Rng rng(2025);
  int done = 0;
  while (done < 60) {
    std::size_t d = 2 + (rng.next_u64() % 2);
    AtomicMeasure mu = random_measure(rng, d, 8, true);
    BfVerdict bf = brute_force_case(mu, 100000, 5e-3);
    if (bf == BfVerdict::Ambiguous) continue;
    ++done;
    Classification c = classify(mu);
    if (bf == BfVerdict::Cone) {
      CHECK(c.verdict ==
            (mu.has_origin_atom() ? Verdict::H2_Neither : Verdict::H1_FrontAndBounded));
    } else {
      CHECK(c.verdict == Verdict::H3_BoundedNotFront);
    }
  }
}

TEST_CASE("structure constants in one dimension") {
  auto mu = make_measure(1, {{{0.5}, 1.0}, {{-0.5}, 1.0}});
  auto sc = structure_constants(mu);
  CHECK(sc.a_star == doctest::Approx(1.0));
  CHECK(sc.N == 3);
  CHECK(sc.b_star == doctest::Approx(1.0));
  CHECK(sc.method == "exact");

  CHECK_THROWS_AS(structure_constants(make_measure(1, {{{0.5}, 1.0}})), NotH3);
}

TEST_CASE("structure constants match a dense scan in 2-D") {
  Rng rng(7);
  auto dirs = oracles::direction_grid(2, 100000);
  int done = 0;
  while (done < 15) {
    AtomicMeasure mu = random_measure(rng, 2, 6, false);
    if (classify(mu).verdict != Verdict::H3_BoundedNotFront) continue;
    ++done;
    auto sc = structure_constants(mu);
    CHECK(sc.a_star > 0.0);
    CHECK(sc.b_star > 0.0);
    CHECK(sc.b_star <= sc.a_star + 1e-12);
    CHECK(sc.a_star <= mu.total_mass() + 1e-12);

    double a_grid = 1e300;
    for (const auto& z : dirs) {
      double s = 0.0;
      for (const auto& a : mu.atoms)
        if (dot(a.xi, z) < 0.0) s += a.w;
      a_grid = std::min(a_grid, s);
    }
    CHECK(std::fabs(sc.a_star - a_grid) <= 1e-9);

    double b_grid = 1e300;
    for (const auto& z : dirs) {
      double s = 0.0;
      for (const auto& a : mu.atoms) {
        double r = norm(a.xi);
        if (r <= 1.0 / sc.N) continue;
        if (-dot(a.xi, z) > r / sc.N) s += a.w;
      }
      b_grid = std::min(b_grid, s);
    }
    CHECK(std::fabs(sc.b_star - b_grid) <= 1e-9);
    // N is minimal: at N-1 some direction must see an empty cap
    if (sc.N > 2) {
      double b_prev = 1e300;
      for (const auto& z : dirs) {
        double s = 0.0;
        for (const auto& a : mu.atoms) {
          double r = norm(a.xi);
          if (r <= 1.0 / (sc.N - 1)) continue;
          if (-dot(a.xi, z) > r / (sc.N - 1)) s += a.w;
        }
        b_prev = std::min(b_prev, s);
      }
      CHECK(b_prev == 0.0);
    }
  }
}

TEST_CASE("cap volume fraction") {
  CHECK(cap_volume_fraction(1) == doctest::Approx(0.5));
  CHECK(cap_volume_fraction(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(cap_volume_fraction(3) == doctest::Approx(0.25).epsilon(1e-12));
  // Monte-Carlo validation
  Rng rng(99);
  for (std::size_t d : {2ul, 3ul}) {
    Vec zeta = unit_axis(d, d - 1);
    int hits = 0, total = 400000;
    for (int i = 0; i < total; ++i) {
      Vec x = rng.in_ball(d);
      if (dot(x, zeta) >= 0.5 * norm(x)) ++hits;
    }
    double frac = static_cast<double>(hits) / total;
    CHECK(frac == doctest::Approx(cap_volume_fraction(d)).epsilon(0.01));
  }
}

TEST_CASE("certified width bound, cone case with a closed-form table") {
  auto mu = make_measure(1, {{{0.5}, 1.0}});
  HTable h = rational_h();
  auto cert = certified_width_bound(mu, 0.1, h);
  CHECK_FALSE(cert.unbounded);
  // alpha = 1, delta = 1/2, h^{-1}(0.9) = 9: L = 2 ln 90 + 1
  CHECK(cert.L_eps == doctest::Approx(2.0 * std::log(90.0) + 1.0).epsilon(1e-3));
  CHECK(cert.intermediates.at("alpha") == doctest::Approx(1.0));
  CHECK(cert.intermediates.at("delta") == doctest::Approx(0.5));
  // identities hold exactly as recomputed
  double s = std::log(h.inverse(0.9) / 0.1) / (cert.intermediates.at("alpha") *
                                               cert.intermediates.at("delta"));
  CHECK(cert.L_eps == doctest::Approx(s + 1.0).epsilon(1e-12));
  CHECK(cert.h_table_id == h.id);

  CHECK_THROWS_AS(certified_width_bound(mu, 0.6, h), BadLevel);
  CHECK_THROWS_AS(certified_width_bound(mu, 0.0, h), BadLevel);
}

TEST_CASE("certified width bound, interior case") {
  double r3 = std::sqrt(3.0) / 2.0;
  auto mu = make_measure(2, {{{0.0, 0.5}, 1.0},
                             {{0.5 * r3, -0.25}, 1.0},
                             {{-0.5 * r3, -0.25}, 1.0}});
  HTable h = rational_h();
  auto cert = certified_width_bound(mu, 0.1, h);
  CHECK_FALSE(cert.unbounded);
  const auto& im = cert.intermediates;
  double mass = mu.total_mass();
  double hinv = h.inverse(0.9);
  CHECK(im.at("a") == doctest::Approx(0.05 * im.at("cap_fraction")).epsilon(1e-12));
  CHECK(im.at("K") == doctest::Approx(3.0 * im.at("N") * im.at("N")).epsilon(1e-12));
  CHECK(im.at("T") == doctest::Approx(std::log(hinv / im.at("b_star"))).epsilon(1e-12));
  double la = std::fabs(std::log(im.at("a") / mass));
  CHECK(im.at("T_a") == doctest::Approx(std::max(im.at("T"), 1.0 + la)).epsilon(1e-12));
  CHECK(im.at("delta_a") ==
        doctest::Approx((1.0 - la / im.at("T_a")) / im.at("K")).epsilon(1e-12));
  CHECK(im.at("L_minus") ==
        doctest::Approx(2.0 / im.at("delta_a") * std::log(hinv / im.at("a"))).epsilon(1e-12));
  CHECK(im.at("L_plus") ==
        doctest::Approx(im.at("N") * im.at("N") *
                        (std::fabs(std::log(hinv / im.at("b_star"))) + 2.0 * im.at("T_a")))
            .epsilon(1e-12));
  CHECK(cert.L_eps == doctest::Approx(std::max(im.at("L_minus"), im.at("L_plus"))));
  CHECK(im.at("delta_a") > 0.0);
  CHECK(im.at("T_a") > 0.0);
}

TEST_CASE("certified width bound flags the origin-atom case unbounded") {
  auto mu = make_measure(1, {{{0.0}, 1.0}, {{0.5}, 1.0}});
  auto cert = certified_width_bound(mu, 0.1, rational_h());
  CHECK(cert.unbounded);
  CHECK(std::isinf(cert.L_eps));
  CHECK(cert.intermediates.at("t0") == doctest::Approx(std::log(2.0)));
}

TEST_CASE("divergence diagnostic on the canonical origin-atom measure") {
  auto mu = make_measure(1, {{{0.0}, 1.0}, {{0.5}, 1.0}});
  HTable h = rational_h();
  auto diag = h2_divergence_diagnostic(mu, 0.1, 0.25, 20.0, 21, h);

  CHECK(diag.t0 == doctest::Approx(std::log(2.0)));
  CHECK(diag.far_limit == doctest::Approx(0.5));
  CHECK(diag.far_samples.back() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(diag.alpha == doctest::Approx(1.0));
  CHECK(diag.delta_prime == doctest::Approx(0.25 / 6.0));
  CHECK(diag.lower_bound_L == doctest::Approx(std::log(2.0) / 0.25));

  CHECK(diag.outer_decay_ok);
  CHECK(diag.core_growth_ok);
  CHECK(diag.ray_below_level_ok);
  CHECK(std::isfinite(diag.core_crosses_1e6_at));
  for (const auto& s : diag.samples) {
    if (s.t > 0.0) CHECK(s.v_outer <= std::exp(-s.t) * (1.0 + 1e-12));
    CHECK(s.s_t > s.r_t);
  }
  // the plateau swallows the level by t = ln(level): all later roots diverge
  CHECK(diag.samples.back().s_t_diverged);

  CHECK_THROWS_AS(h2_divergence_diagnostic(make_measure(1, {{{0.5}, 1.0}}), 0.1, 0.25, 10, 5, h),
                  NotH2);
  CHECK_THROWS_AS(h2_divergence_diagnostic(mu, 0.4, 0.25, 10, 5, h), BadLevel);
}

TEST_CASE("serialization carries the contract fields") {
  auto c = classify(make_measure(1, {{{0.5}, 1.0}}));
  auto js = classification_to_json(c);
  CHECK(js.find("\"verdict\": \"H1_FrontAndBounded\"") != std::string::npos);
  CHECK(js.find("\"zeta\"") != std::string::npos);
  CHECK(js.find("\"alpha\"") != std::string::npos);

  auto cert = certified_width_bound(make_measure(1, {{{0.5}, 1.0}}), 0.1, rational_h());
  auto cj = certificate_to_json(cert);
  CHECK(cj.find("\"L_eps\"") != std::string::npos);
  CHECK(cj.find("\"constants\"") != std::string::npos);
  CHECK(cj.find("\"h_table_id\"") != std::string::npos);
}
