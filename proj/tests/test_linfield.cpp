#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frontlab/linfield.hpp"
#include "frontlab/rng.hpp"

using namespace frontlab;

namespace {

// Extended-precision direct summation, no factoring tricks.
long double eval_v_oracle(const AtomicMeasure& mu, double t, const Vec& x) {
  long double s = 0.0L;
  for (const auto& a : mu.atoms) {
    long double e = 0.0L;
    for (std::size_t c = 0; c < x.size(); ++c) e -= (long double)a.xi[c] * x[c];
    long double n2 = 0.0L;
    for (double xc : a.xi) n2 += (long double)xc * xc;
    e += (n2 + 1.0L) * t;
    s += (long double)a.w * expl(e);
  }
  return s;
}

}  // namespace

TEST_CASE("single-atom field reduces to a traveling exponential") {
  auto mu = make_measure(1, {{{0.5}, 1.0}});
  CHECK(eval_v(mu, 0.0, {0.0}).value == doctest::Approx(1.0));

  double lambda = 0.5;
  double c = wave_speed(lambda);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    double t = rng.uniform(-5.0, 5.0);
    double x = rng.uniform(-20.0, 20.0);
    double expect = std::exp(-lambda * (x - c * t));
    CHECK(eval_v(mu, t, {x}).value == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("matches extended-precision summation") {
  auto mu = make_measure(2, {{{0.3, 0.1}, 0.7}, {{-0.2, 0.45}, 1.3}});
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    Vec x = {rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
    double t = -3.0;
    double got = eval_v(mu, t, x).value;
    long double want = eval_v_oracle(mu, t, x);
    CHECK(std::fabs(got - (double)want) <= 1e-13 * (double)want);
  }
}

TEST_CASE("no overflow across the diagnostic range") {
  auto mu = make_measure(1, {{{0.9}, 2.0}, {{0.1}, 0.5}});
  LinEval big = eval_v(mu, 600.0, {-500.0});
  CHECK(std::isfinite(big.log_value));
  CHECK(big.log_value > 700.0);  // the raw value overflows a double
  LinEval tiny = eval_v(mu, -600.0, {2000.0});
  CHECK(std::isfinite(tiny.log_value));
  CHECK(tiny.log_value < -700.0);
  CHECK(tiny.value == 0.0);  // underflow is benign
  for (double g : big.grad_over_value) CHECK(std::isfinite(g));
}

TEST_CASE("gradient matches central differences") {
  auto mu = make_measure(2, {{{0.3, 0.2}, 1.0}, {{-0.1, 0.5}, 0.4}, {{0.0, -0.6}, 2.0}});
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Vec x = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    double t = rng.uniform(-2.0, 2.0);
    LinEval e = eval_v(mu, t, x);
    for (std::size_t c = 0; c < 2; ++c) {
      double h = 1e-6;
      Vec xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      double fd = (eval_v(mu, t, xp).value - eval_v(mu, t, xm).value) / (2.0 * h);
      CHECK(e.gradient[c] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("gradient norm never exceeds the value") {
  Rng rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Atom> atoms;
    std::size_t n = 1 + rng.next_u64() % 5;
    for (std::size_t i = 0; i < n; ++i) atoms.push_back({rng.in_ball(2, 0.95), rng.uniform(0.1, 2.0)});
    auto mu = make_measure(2, atoms);
    Vec x = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    LinEval e = eval_v(mu, rng.uniform(-3.0, 3.0), x);
    CHECK(norm(e.grad_over_value) <= 1.0 + 1e-12);
  }
}

TEST_CASE("radial split partitions the field") {
  auto mu = make_measure(1, {{{0.1}, 1.0}, {{0.8}, 2.0}});
  SUBCASE("atoms only in the annulus") {
    auto solo = make_measure(1, {{{0.8}, 2.0}});
    auto s = eval_v_split(solo, 1.0, {0.5}, 0.5, 0.2);
    CHECK(s.inner.value == 0.0);
    CHECK(s.core.value == 0.0);
    CHECK(s.outer.value == doctest::Approx(eval_v(solo, 1.0, {0.5}).value));
  }
  SUBCASE("partition by radius") {
    auto s = eval_v_split(mu, 0.7, {0.3}, 0.5, 0.2);
    auto inner_only = make_measure(1, {{{0.1}, 1.0}});
    auto outer_only = make_measure(1, {{{0.8}, 2.0}});
    CHECK(s.inner.value == doctest::Approx(eval_v(inner_only, 0.7, {0.3}).value));
    CHECK(s.core.value == doctest::Approx(eval_v(inner_only, 0.7, {0.3}).value));
    CHECK(s.outer.value == doctest::Approx(eval_v(outer_only, 0.7, {0.3}).value));
  }
  SUBCASE("sum recovers the field and the inner gradient bound holds") {
    Rng rng(5);
    for (int i = 0; i < 60; ++i) {
      double t = rng.uniform(-4.0, 4.0);
      Vec x = {rng.uniform(-6.0, 6.0)};
      auto s = eval_v_split(mu, t, x, 0.5, 0.2);
      double whole = eval_v(mu, t, x).value;
      CHECK(std::fabs(s.outer.value + s.inner.value - whole) <= 1e-12 * whole);
      CHECK(norm(s.inner.gradient) <= 0.5 * s.inner.value * (1.0 + 1e-12));
    }
  }
  SUBCASE("bad radii rejected") {
    CHECK_THROWS_AS(eval_v_split(mu, 0.0, {0.0}, 0.2, 0.5), BadRadii);
    CHECK_THROWS_AS(eval_v_split(mu, 0.0, {0.0}, 1.2, 0.5), BadRadii);
  }
}

TEST_CASE("wave speed formula") {
  CHECK(wave_speed(1.0) == doctest::Approx(2.0));
  CHECK(wave_speed(0.5) == doctest::Approx(2.5));
  CHECK(wave_speed(0.25) == doctest::Approx(4.25));
  CHECK_THROWS_AS(wave_speed(0.0), NonpositiveRadius);
  CHECK_THROWS_AS(wave_speed(-1.0), NonpositiveRadius);
  // the default split alpha*delta/6 guarantees speed ratio >= 3/alpha
  double alpha = 0.8, delta = 0.3;
  double dp = alpha * delta / 6.0;
  CHECK(wave_speed(dp) >= (3.0 / alpha) * wave_speed(delta));
}

TEST_CASE("translation covariance") {
  auto mu = make_measure(2, {{{0.3, 0.0}, 1.0}, {{0.0, 0.4}, 0.5}});
  Vec y = {1.7, -2.3};
  std::vector<Atom> shifted;
  for (const auto& a : mu.atoms) shifted.push_back({a.xi, a.w * std::exp(-dot(a.xi, y))});
  auto mu_y = make_measure(2, shifted);
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    Vec x = {rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
    double t = rng.uniform(-2.0, 2.0);
    double lhs = eval_v(mu, t, x + y).value;
    double rhs = eval_v(mu_y, t, x).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("solves the linearized equation") {
  auto mu = make_measure(2, {{{0.25, -0.3}, 1.0}, {{-0.1, 0.55}, 2.0}});
  Vec x = {0.7, -0.4};
  double t = 0.3;
  // analytic time derivative: sum of (|xi|^2 + 1) w e^{...}
  double vt = 0.0;
  for (const auto& a : mu.atoms)
    vt += (norm2(a.xi) + 1.0) * a.w * std::exp(-dot(a.xi, x) + (norm2(a.xi) + 1.0) * t);
  double v = eval_v(mu, t, x).value;

  auto residual = [&](double h, double dxs) {
    double dt_num = (eval_v(mu, t + h, x).value - eval_v(mu, t - h, x).value) / (2.0 * h);
    double lap = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
      Vec xp = x, xm = x;
      xp[c] += dxs;
      xm[c] -= dxs;
      lap += (eval_v(mu, t, xp).value - 2.0 * v + eval_v(mu, t, xm).value) / (dxs * dxs);
    }
    return std::fabs(dt_num - lap - v);
  };
  // second-order convergence of the discrete residual
  double r1 = residual(0.08, 0.08);
  double r2 = residual(0.04, 0.04);
  CHECK(r2 <= r1 / 3.0);
  // analytic identity: v_t = lap v + v exactly, via the atom sum
  double lap_exact = vt - v;  // from the equation itself
  double lap_num = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    Vec xp = x, xm = x;
    xp[c] += 1e-4;
    xm[c] -= 1e-4;
    lap_num += (eval_v(mu, t, xp).value - 2.0 * v + eval_v(mu, t, xm).value) / 1e-8;
  }
  CHECK(lap_num == doctest::Approx(lap_exact).epsilon(1e-5));
}

TEST_CASE("half-level graph coordinate") {
  SUBCASE("closed form for a single atom") {
    double lambda = 0.4;
    auto mu = make_measure(1, {{{lambda}, 1.0}});
    for (double t : {-3.0, 0.0, 2.5}) {
      double s = gamma_level(mu, t, {}, {1.0});
      double expect = wave_speed(lambda) * t + std::log(2.0) / lambda;
      CHECK(s == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  SUBCASE("two aligned atoms against a dense scan") {
    auto mu = make_measure(1, {{{0.3}, 1.0}, {{0.7}, 0.5}});
    double t = 1.2;
    double s = gamma_level(mu, t, {}, {1.0});
    // two-stage dense scan: coarse pass over the window, fine pass around
    // the best coarse candidate
    auto scan = [&](double lo, double hi, int steps) {
      double best = lo, bestdiff = 1e300;
      for (int i = 0; i <= steps; ++i) {
        double cand = lo + (hi - lo) * i / steps;
        double diff = std::fabs(eval_v(mu, t, {cand}).value - 0.5);
        if (diff < bestdiff) {
          bestdiff = diff;
          best = cand;
        }
      }
      return best;
    };
    double coarse = scan(-20.0, 20.0, 2000000);
    double fine = scan(coarse - 1e-4, coarse + 1e-4, 2000000);
    CHECK(s == doctest::Approx(fine).epsilon(1e-8));
  }
  SUBCASE("monotonicity precondition enforced") {
    auto mu = make_measure(2, {{{0.5, 0.0}, 1.0}, {{-0.1, 0.2}, 1.0}});
    CHECK_THROWS_AS(gamma_level(mu, 0.0, {0.0}, {1.0, 0.0}), MonotonicityViolated);
  }
}

TEST_CASE("grid dump carries the expected header") {
  auto mu = make_measure(1, {{{0.5}, 1.0}});
  std::string csv = grid_eval_csv(mu, 0.0, {-1.0}, {1.0}, 0.5);
  CHECK(csv.substr(0, csv.find('\n')) == "t,x_1,v,log_v");
  int rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 6);  // header + 5 grid points
}
