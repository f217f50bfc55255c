#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/geometry.hpp"
#include "frontlab/rng.hpp"
#include "oracles.hpp"

using namespace frontlab;
using namespace frontlab::geom;

namespace {

std::vector<Vec> random_points_with_origin_interior(Rng& rng, std::size_t d, std::size_t n) {
  // Rejection-sample until the brute-force oracle confirms interiority.  The
  // margin must dominate the direction-grid resolution (~0.025 rad in d=3),
  // otherwise near-boundary sets slip through.
  while (true) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.in_ball(d));
    if (oracles::origin_interior_bf(pts, 20000, 0.05)) return pts;
  }
}

}  // namespace

TEST_CASE("cone membership basics") {
  Cone up({0.0, 1.0}, 0.5);
  CHECK(cone_membership({0.0, 1.0}, up));
  CHECK(cone_membership({0.0, 0.0}, Cone({0.0, 1.0}, 0.99)));
  double s = 1.0 / std::sqrt(2.0);
  CHECK_FALSE(cone_membership({s, s}, Cone({0.0, 1.0}, 0.8)));
  CHECK_THROWS_AS(cone_membership({1.0, 0.0, 0.0}, up), std::invalid_argument);
}

TEST_CASE("cone membership is scale invariant") {
  Rng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t d = 2 + rep % 3;
    Cone cone(rng.on_sphere(d), rng.uniform01());
    Vec x = rng.in_ball(d, 3.0);
    bool a = cone_membership(x, cone);
    bool b = cone_membership(2.0 * x, cone);
    CHECK(a == b);
  }
}

TEST_CASE("separating direction on simple sets") {
  auto one = separating_direction({{1.0, 0.0}});
  REQUIRE(one.has_value());
  CHECK(one->zeta[0] == doctest::Approx(1.0));
  CHECK(one->margin == doctest::Approx(1.0));

  CHECK_FALSE(separating_direction({{1.0, 0.0}, {-1.0, 0.0}}).has_value());

  // Min-norm oracle by dense sampling of convex combinations.
  std::vector<Vec> pair = {{0.4, 0.1}, {0.4, -0.1}};
  double best = 1e300;
  Vec bestp;
  for (int i = 0; i <= 100000; ++i) {
    double l = i / 100000.0;
    Vec p = l * pair[0] + (1.0 - l) * pair[1];
    if (norm(p) < best) {
      best = norm(p);
      bestp = p;
    }
  }
  auto sep = separating_direction(pair);
  REQUIRE(sep.has_value());
  Vec expected = normalized(bestp);
  CHECK(sep->zeta[0] == doctest::Approx(expected[0]).epsilon(1e-6));
  CHECK(sep->zeta[1] == doctest::Approx(expected[1]).epsilon(1e-6));
  CHECK(sep->margin == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("separating direction matches brute-force membership") {
  Rng rng(7);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t d = 1 + rep % 4;
    std::size_t n = 1 + rng.next_u64() % 8;
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.in_ball(d, 2.0));
    bool inside_bf = oracles::hull_contains_bf(pts, zeros(d));
    auto sep = separating_direction(pts);
    if (sep.has_value()) {
      CHECK_FALSE(inside_bf);
      for (const auto& p : pts) CHECK(dot(p, sep->zeta) >= sep->margin - 1e-12);
      CHECK(sep->margin > 0.0);
    } else {
      CHECK(inside_bf);
    }
  }
}

TEST_CASE("min norm point against dense sampling on triangles") {
  Rng rng(99);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<Vec> pts = {rng.in_ball(2, 2.0), rng.in_ball(2, 2.0), rng.in_ball(2, 2.0)};
    double best = 1e300;
    int steps = 300;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps - i; ++j) {
        double a = double(i) / steps, b = double(j) / steps;
        Vec p = a * pts[0] + b * pts[1] + (1.0 - a - b) * pts[2];
        best = std::min(best, norm(p));
      }
    double got = norm(min_norm_point(pts).point);
    CHECK(got <= best + 1e-9);
    CHECK(got >= best - 2e-2);  // sampling resolution of the oracle
  }
}

TEST_CASE("caratheodory reduction") {
  SUBCASE("1-D endpoints are required") {
    auto out = caratheodory_reduce({{-1.0}, {1.0}}, {0.0});
    CHECK(out.size() == 2);
  }
  SUBCASE("square plus interior extra point") {
    std::vector<Vec> S = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0.9, 0.0}};
    auto out = caratheodory_reduce(S, zeros(2));
    CHECK(out.size() <= 4);
    std::vector<Vec> shifted;
    for (const auto& p : out) shifted.push_back(p);
    CHECK(oracles::origin_interior_bf(shifted, 20000, 1e-9));
  }
  SUBCASE("random interior instances stay within 2d points") {
    Rng rng(11);
    for (int rep = 0; rep < 60; ++rep) {
      std::size_t d = 2 + rep % 2;
      auto pts = random_points_with_origin_interior(rng, d, 10);
      auto out = caratheodory_reduce(pts, zeros(d));
      CHECK(out.size() <= 2 * d);
      CHECK(oracles::origin_interior_bf(out, 20000, 1e-9));
      // Library's own re-verification path.
      CHECK(origin_interior(out));
    }
  }
  SUBCASE("rejects non-interior targets") {
    CHECK_THROWS_AS(caratheodory_reduce({{1.0, 0.0}, {0.0, 1.0}}, zeros(2)), NotInterior);
    CHECK_THROWS_AS(caratheodory_reduce({{1.0, 0.0}, {-1.0, 0.0}}, zeros(2)), NotInterior);
  }
}

TEST_CASE("positive combination") {
  SUBCASE("symmetric pair") {
    auto c = positive_combination({{-1.0}, {1.0}});
    CHECK(c[0] / c[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("three vectors summing to zero") {
    auto c = positive_combination({{1, 0}, {0, 1}, {-1, -1}});
    CHECK(c[1] / c[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c[2] / c[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("random instances satisfy the residual bound") {
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
      std::size_t d = 2 + rep % 2;
      auto pts = random_points_with_origin_interior(rng, d, 5 + rep % 4);
      auto c = positive_combination(pts);
      double sumc = 0.0;
      Vec r = zeros(d);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(c[i] > 0.0);
        sumc += c[i];
        axpy(c[i], pts[i], r);
      }
      CHECK(norm(r) <= 1e-9 * sumc);
    }
  }
  SUBCASE("rejects boundary") {
    CHECK_THROWS_AS(positive_combination({{1.0, 0.0}, {-1.0, 0.0}}), NotInterior);
  }
}

TEST_CASE("interior radius") {
  // Equilateral triangle with circumradius 1 has inradius 1/2.
  double r3 = std::sqrt(3.0) / 2.0;
  std::vector<Vec> tri = {{0.0, 1.0}, {r3, -0.5}, {-r3, -0.5}};
  CHECK(interior_radius(tri) == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<Vec> square = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  CHECK(interior_radius(square) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<Vec> seg = {{-0.3}, {0.7}};
  CHECK(interior_radius(seg) == doctest::Approx(0.3));

  // d=4 lower bound: cross polytope with semi-axes 1 has inradius 1/2.
  std::vector<Vec> cross4;
  for (std::size_t j = 0; j < 4; ++j) {
    cross4.push_back(unit_axis(4, j, 1.0));
    cross4.push_back(unit_axis(4, j, -1.0));
  }
  double lb = interior_radius(cross4);
  CHECK(lb <= 0.5 + 1e-9);
  CHECK(lb >= 0.45);
}

TEST_CASE("wiggle radius certificates survive random perturbations") {
  Rng rng(2024);
  auto validate = [&](const std::vector<Vec>& pts, int trials) {
    auto cert = wiggle_radius(pts);
    CHECK(cert.epsilon > 0.0);
    double sumc = 0.0;
    Vec r = zeros(pts[0].size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(cert.coefficients[i] > 0.0);
      sumc += cert.coefficients[i];
      axpy(cert.coefficients[i], pts[i], r);
    }
    CHECK(norm(r) <= 1e-9 * sumc);
    Rng mc = rng.split(static_cast<std::uint64_t>(trials));
    for (int t = 0; t < trials; ++t) {
      std::vector<Vec> moved;
      moved.reserve(pts.size());
      for (const auto& p : pts) moved.push_back(p + mc.in_ball(p.size(), cert.epsilon));
      REQUIRE(oracles::hull_contains_bf(moved, zeros(pts[0].size()), 1e-9));
    }
    return cert;
  };

  SUBCASE("symmetric 1-D pair") {
    auto cert = validate({{-1.0}, {1.0}}, 10000);
    CHECK(cert.epsilon <= 1.0);
  }
  SUBCASE("equilateral triangle") {
    double r3 = std::sqrt(3.0) / 2.0;
    auto cert = validate({{0.0, 1.0}, {r3, -0.5}, {-r3, -0.5}}, 10000);
    CHECK(cert.interior_radius == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cert.epsilon <= 0.5);
  }
  SUBCASE("random 2d-point sets") {
    for (int rep = 0; rep < 6; ++rep) {
      std::size_t d = 2 + rep % 2;
      auto pts = random_points_with_origin_interior(rng, d, 2 * d);
      validate(pts, 2000);
    }
  }
}

TEST_CASE("dedupe points merges within tolerance") {
  std::vector<Vec> pts = {{0.5, 0.5}, {0.5, 0.5 + 1e-13}, {0.4, 0.4}};
  CHECK(dedupe_points(pts).size() == 2);
}
