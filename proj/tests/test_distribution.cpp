#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "distribution.hpp"
#include "oracles.hpp"
#include "testcheck.hpp"

using namespace oic;

namespace {

ChannelSpec example2_spec() { return ChannelSpec({0.4, 0.2, 0.4}, {0.8, 0.3, 0.1}, 1.0); }

PiecewiseExpDist example3_density() {
  // merged bounded-cost channel h=(0.4,0.6), alpha=(0.4,0.1)
  return PiecewiseExpDist({0.4}, {4.2702963681437085, 0.0});
}

std::vector<BoundedDist> dist_zoo() {
  std::vector<BoundedDist> zoo;
  zoo.push_back(BoundedDist(DiscreteDist({0.0, 1.0}, {0.5, 0.5})));
  zoo.push_back(BoundedDist(DiscreteDist({0.1, 0.3, 0.55, 0.9}, {0.2, 0.3, 0.4, 0.1})));
  zoo.push_back(point_mass(0.7));
  zoo.push_back(BoundedDist(maximally_convex(example2_spec())));
  zoo.push_back(BoundedDist(example3_density()));
  zoo.push_back(
      BoundedDist(PiecewiseExpDist({0.4, 0.6}, {-2.917636649604785, 6.598723310837058, 0.0})));
  zoo.push_back(BoundedDist(PiecewiseExpDist({}, {0.0})));  // uniform
  return zoo;
}

}  // namespace

TEST_CASE("stop-loss transform boundary values") {
  for (const auto& d : dist_zoo()) {
    CHECK_NEAR(d.slt(1.0), 0.0, 1e-15);
    CHECK_NEAR(d.slt(0.0), d.mean(), 1e-12);
  }
  CHECK_THROWS_AS(dist_zoo()[0].slt(-0.1), std::domain_error);
  CHECK_THROWS_AS(dist_zoo()[0].slt(1.1), std::domain_error);
}

TEST_CASE("discrete stop-loss is the exact expectation sum") {
  DiscreteDist d({0.0, 1.0}, {0.5, 0.5});
  // brute force: sum of mass * (x - t)_+
  const double expected = 0.5 * std::max(0.0 - 0.25, 0.0) + 0.5 * (1.0 - 0.25);
  CHECK_NEAR(expected, 0.375, 1e-16);
  CHECK_NEAR(d.slt(0.25), 0.375, 1e-15);
}

TEST_CASE("quantile is the generalized inverse") {
  CHECK_NEAR(point_mass(0.3).quantile(0.001), 0.3, 0.0);
  CHECK_NEAR(point_mass(0.3).quantile(1.0), 0.3, 0.0);

  DiscreteDist two({0.0, 1.0}, {0.3, 0.7});
  // brute force inf{x : p <= F(x)} over the support
  auto brute = [&](double p) {
    for (double x : two.support()) {
      if (two.cdf(x) >= p) return x;
    }
    return 1.0;
  };
  CHECK(two.quantile(0.3) == brute(0.3));
  CHECK(two.quantile(0.3) == 0.0);
  CHECK(two.quantile(0.31) == brute(0.31));
  CHECK(two.quantile(0.31) == 1.0);

  PiecewiseExpDist uniform({}, {0.0});
  CHECK_NEAR(uniform.quantile(0.5), 0.5, 1e-12);

  CHECK_THROWS_AS(two.quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(two.quantile(1.0000001), std::domain_error);
}

TEST_CASE("Galois inequality on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& d : dist_zoo()) {
    for (int i = 0; i < 400; ++i) {
      const double x = u(rng);
      const double p = std::nextafter(u(rng), 1.0);
      const bool lhs = d.cdf(x) >= p;
      const bool rhs = x >= d.quantile(p);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("quantile integrates to the mean") {
  for (const auto& d : dist_zoo()) {
    const double q_integral =
        test::integrate([&](double p) { return d.quantile(std::max(p, 1e-14)); }, 0.0, 1.0, 1e-11);
    CHECK_NEAR(q_integral, d.mean(), 1e-8);
  }
}

TEST_CASE("area under the quantile equals the stop-loss transform") {
  for (const auto& d : dist_zoo()) {
    for (double t : {0.0, 0.2, 0.45, 0.7, 0.95}) {
      const double area = test::integrate(
          [&](double p) { return std::max(d.quantile(std::max(p, 1e-14)) - t, 0.0); }, 0.0, 1.0,
          1e-9);
      CHECK_NEAR(area, d.slt(t), 1e-6);
    }
  }
}

TEST_CASE("stop-loss transform shape properties on a fine grid") {
  const int N = 1000;
  for (const auto& d : dist_zoo()) {
    std::vector<double> pi(N + 1);
    for (int i = 0; i <= N; ++i) pi[i] = d.slt(static_cast<double>(i) / N);
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      CHECK(pi[i] >= -1e-12);
      CHECK(pi[i] <= 1.0 - t + 1e-12);
      if (i > 0) CHECK(pi[i] <= pi[i - 1] + 1e-12);
      if (i > 0 && i < N) CHECK(pi[i + 1] - 2.0 * pi[i] + pi[i - 1] >= -1e-10);
    }
  }
}

TEST_CASE("cdf properties") {
  for (const auto& d : dist_zoo()) {
    CHECK_NEAR(d.cdf(1.0), 1.0, 1e-12);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = static_cast<double>(i) / 200;
      const double F = d.cdf(x);
      CHECK(F >= prev - 1e-13);
      prev = F;
    }
  }
}

TEST_CASE("maximally convex law") {
  SUBCASE("single antenna") {
    ChannelSpec spec({1.0}, {0.35}, 1.0);
    auto mc = maximally_convex(spec);
    REQUIRE(mc.support().size() == 2);
    CHECK_NEAR(mc.support()[0], 0.0, 0.0);
    CHECK_NEAR(mc.support()[1], 1.0, 0.0);
    CHECK_NEAR(mc.masses()[0], 0.65, 1e-15);
    CHECK_NEAR(mc.masses()[1], 0.35, 1e-15);
  }
  SUBCASE("worked three-antenna example") {
    auto spec = example2_spec();
    auto mc = maximally_convex(spec);
    REQUIRE(mc.support().size() == 4);
    // direct evaluation of the definition
    const double sup[] = {0.0, 0.4, 0.6, 1.0};
    const double mas[] = {0.2, 0.5, 0.2, 0.1};
    for (int i = 0; i < 4; ++i) {
      CHECK_NEAR(mc.support()[i], sup[i], 1e-14);
      CHECK_NEAR(mc.masses()[i], mas[i], 1e-14);
    }
  }
  SUBCASE("stop-loss hits the breakpoint values") {
    auto spec = example2_spec();
    auto mc = maximally_convex(spec);
    for (std::size_t k = 0; k <= spec.n(); ++k) {
      const double Hk = spec.Hcum()[k];
      CHECK_NEAR(mc.slt(Hk), (1.0 - Hk) * spec.alpha_bar()[k], 1e-12);
    }
  }
  SUBCASE("variance equals the closed form") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      auto spec = test::random_spec(rng, 2 + trial % 5);
      auto mc = maximally_convex(spec);
      double v = 0.0;
      for (std::size_t i = 0; i < spec.n(); ++i) {
        for (std::size_t j = 0; j < spec.n(); ++j) {
          v += spec.h()[i] * spec.h()[j] *
               (std::min(spec.alpha()[i], spec.alpha()[j]) - spec.alpha()[i] * spec.alpha()[j]);
        }
      }
      CHECK_NEAR(mc.variance(), v, 1e-12);
    }
  }
}

TEST_CASE("sampling is inverse-cdf and reproducible") {
  std::mt19937_64 rng(123);
  SUBCASE("point mass") {
    auto pm = point_mass(0.7);
    for (int i = 0; i < 100; ++i) CHECK(pm.sample(rng) == 0.7);
  }
  SUBCASE("binary empirical mean within three sigmas") {
    BoundedDist d(DiscreteDist({0.0, 1.0}, {0.5, 0.5}));
    const int N = 1000000;
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += d.sample(rng);
    const double band = 3.0 * 0.5 / std::sqrt(static_cast<double>(N));
    CHECK(std::abs(acc / N - 0.5) < band);
  }
  SUBCASE("piecewise-exponential empirical mean matches quadrature") {
    BoundedDist d(example3_density());
    const double exact = test::expect(d, [](double s) { return s; });
    CHECK_NEAR(exact, 0.22, 1e-3);  // h'alpha of the merged channel
    const int N = 1000000;
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += d.sample(rng);
    CHECK(std::abs(acc / N - exact) < 0.002);
  }
  SUBCASE("same seed, same stream") {
    BoundedDist d(example3_density());
    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 50; ++i) CHECK(d.sample(a) == d.sample(b));
  }
}

TEST_CASE("piecewise-exponential closed forms against quadrature") {
  PiecewiseExpDist p({0.4, 0.6}, {-2.917636649604785, 6.598723310837058, 0.0});
  BoundedDist d(p);
  const double norm = test::expect(d, [](double) { return 1.0; });
  CHECK_NEAR(norm, 1.0, 1e-9);
  for (double t : {0.0, 0.1, 0.4, 0.55, 0.83}) {
    const double o = test::expect(d, [&](double s) { return std::max(s - t, 0.0); }, 1e-12, {t});
    CHECK_NEAR(p.slt(t), o, 1e-10);
  }
  const double mu = test::expect(d, [](double s) { return s; });
  const double var = test::expect(d, [&](double s) { return (s - mu) * (s - mu); });
  CHECK_NEAR(p.mean(), mu, 1e-10);
  CHECK_NEAR(p.variance(), var, 1e-10);
  for (double x : {0.05, 0.4, 0.71, 0.999}) {
    const double F = test::expect(d, [&](double s) { return s <= x ? 1.0 : 0.0; }, 1e-11, {x});
    CHECK_NEAR(p.cdf(x), F, 1e-8);
  }
  // density strictly positive
  for (int i = 0; i <= 100; ++i) CHECK(p.density(i / 100.0) > 0.0);
}

TEST_CASE("piecewise-exponential nu0 validation") {
  // paper-rounded coefficients are accepted and renormalized exactly
  PiecewiseExpDist ok({0.4}, {4.270, 0.0}, 1.466);
  CHECK_NEAR(test::expect(BoundedDist(ok), [](double) { return 1.0; }), 1.0, 1e-9);
  CHECK_THROWS_AS(PiecewiseExpDist({0.4}, {4.270, 0.0}, 2.0), std::invalid_argument);
}

TEST_CASE("reflection stays in the family") {
  std::mt19937_64 rng(5);
  for (const auto& d : dist_zoo()) {
    auto r = d.reflected();
    CHECK_NEAR(r.mean(), 1.0 - d.mean(), 1e-10);
    // pi_{1-S}(t) = E[(1 - S - t)_+]
    for (double t : {0.0, 0.3, 0.8}) {
      const double o =
          test::expect(d, [&](double s) { return std::max(1.0 - s - t, 0.0); }, 1e-11, {1.0 - t});
      CHECK_NEAR(r.slt(t), o, 1e-9);
    }
    auto rr = r.reflected();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      CHECK_NEAR(rr.cdf(x), d.cdf(x), 1e-9);
    }
  }
}

TEST_CASE("discrete validation") {
  CHECK_THROWS_AS(DiscreteDist({0.5, 0.2}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDist({0.1, 0.2}, {0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDist({-0.1, 0.2}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDist({0.1}, {1.0, 0.0}), std::invalid_argument);
}
