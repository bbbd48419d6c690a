#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "feasibility.hpp"
#include "maxent.hpp"
#include "oracles.hpp"
#include "testcheck.hpp"

using namespace oic;

namespace {

ChannelSpec example2_spec() { return ChannelSpec({0.4, 0.2, 0.4}, {0.8, 0.3, 0.1}, 1.0); }
ChannelSpec example3_merged() { return ChannelSpec({0.4, 0.6}, {0.4, 0.1}, 0.05); }

}  // namespace

TEST_CASE("equal-cost feasibility") {
  auto spec = example2_spec();
  SUBCASE("maximally convex law is feasible with zero slack at breakpoints") {
    auto rep = check_ec(BoundedDist(maximally_convex(spec)), spec);
    CHECK(rep.feasible);
    CHECK_NEAR(rep.mean_residual, 0.0, 1e-12);
    for (double s : rep.slack) CHECK_NEAR(s, 0.0, 1e-12);
  }
  SUBCASE("point mass at the mean budget") {
    auto rep = check_ec(point_mass(0.42), spec);
    CHECK(rep.feasible);
    // direct arithmetic: (0.42-0.4)_+ = 0.02 <= 0.1, (0.42-0.6)_+ = 0 <= 0.04
    CHECK_NEAR(rep.slack[0], 0.1 - 0.02, 1e-12);
    CHECK_NEAR(rep.slack[1], 0.04, 1e-12);
  }
  SUBCASE("mean-only relaxed max-entropy law is infeasible") {
    // the amplitude-limited single-input law with matching mean ignores the
    // stop-loss constraints and lands above them
    ChannelSpec siso({1.0}, {0.42}, 1.0);
    auto relaxed = solve_gamma(siso, Kind::EC);
    auto rep = check_ec(BoundedDist(relaxed.density), spec);
    CHECK_FALSE(rep.feasible);
    CHECK_NEAR(rep.mean_residual, 0.0, 1e-9);
    CHECK(rep.slack[0] < 0.0);
  }
}

TEST_CASE("bounded-cost feasibility") {
  auto spec = example3_merged();
  SUBCASE("nonequiprobable on-off keying") {
    BoundedDist ook(DiscreteDist({0.0, 1.0}, {0.9, 0.1}));
    auto rep = check_bc(ook, spec);
    CHECK(rep.feasible);
    CHECK_NEAR(rep.mean_residual, 0.1 - 0.22, 1e-14);
    CHECK_NEAR(rep.slack[0], 0.0, 1e-14);  // pi(0.4) = 0.06 = (1-0.4) abar_1
  }
  SUBCASE("point mass at zero") { CHECK(check_bc(point_mass(0.0), spec).feasible); }
  SUBCASE("mean above the budget is infeasible") {
    ChannelSpec fatter({0.4, 0.6}, {0.48, 0.12}, 0.05);
    auto rep = check_bc(BoundedDist(maximally_convex(fatter)), spec);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.mean_residual > 0.0);
  }
}

TEST_CASE("bounded-cost intensity allocation") {
  auto spec = example3_merged();
  SUBCASE("on-off keying splits evenly at beta = 0.1") {
    BoundedDist ook(DiscreteDist({0.0, 1.0}, {0.9, 0.1}));
    auto alloc = bc_allocation(ook, spec);
    CHECK(alloc.beta == 0.1);
    CHECK(alloc.a[0] == 0.1);
    CHECK(alloc.a[1] == 0.1);
  }
  SUBCASE("zero mean gives the zero split") {
    auto alloc = bc_allocation(point_mass(0.0), spec);
    CHECK(alloc.beta == 0.0);
    CHECK(alloc.a[0] == 0.0);
    CHECK(alloc.a[1] == 0.0);
  }
  SUBCASE("full budget returns alpha itself") {
    auto alloc = bc_allocation(BoundedDist(maximally_convex(spec)), spec);
    CHECK_NEAR(alloc.beta, 0.4, 1e-12);
    CHECK_NEAR(alloc.a[0], 0.4, 1e-12);
    CHECK_NEAR(alloc.a[1], 0.1, 1e-12);
  }
  SUBCASE("infeasible input throws") {
    ChannelSpec fatter({0.4, 0.6}, {0.48, 0.12}, 0.05);
    CHECK_THROWS_AS(bc_allocation(BoundedDist(maximally_convex(fatter)), spec), InfeasibleError);
  }
  SUBCASE("allocation invariants on random feasible inputs") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
      auto sp = test::random_spec(rng, 2 + trial % 5);
      // scale a feasible equal-cost law down to make the mean strictly smaller
      auto base = test::random_feasible_discrete(rng, sp);
      std::vector<double> shrunk(base.support());
      const double c = 0.3 + 0.7 * (trial % 7) / 7.0;
      for (double& x : shrunk) x *= c;
      BoundedDist S{DiscreteDist(shrunk, base.masses())};
      REQUIRE(check_bc(S, sp).feasible);
      auto alloc = bc_allocation(S, sp);
      double ha = 0.0;
      for (std::size_t k = 0; k < sp.n(); ++k) {
        CHECK(alloc.a[k] >= -1e-15);
        CHECK(alloc.a[k] <= sp.alpha()[k] + 1e-15);
        CHECK_NEAR(alloc.a[k], std::min(alloc.beta, sp.alpha()[k]), 1e-15);
        ha += sp.h()[k] * alloc.a[k];
      }
      CHECK_NEAR(ha, S.mean(), 1e-12);
      // bounded-cost feasible implies equal-cost feasible for the allocation
      // itself (checked when the allocation has no ties)
      bool strict = true;
      for (std::size_t k = 1; k < sp.n(); ++k)
        strict = strict && alloc.a[k] < alloc.a[k - 1] - 1e-12;
      if (strict && alloc.beta > 1e-12) {
        ChannelSpec ec_spec(sp.h(), alloc.a, sp.sigma());
        CHECK(check_ec(S, ec_spec).feasible);
      }
    }
  }
}

TEST_CASE("convex order against the maximally convex law") {
  auto spec = example2_spec();
  SUBCASE("the maximum itself dominates with equality at breakpoints") {
    CHECK(convex_order_dominates(BoundedDist(maximally_convex(spec)), spec, 500));
  }
  SUBCASE("the max-entropy law is dominated") {
    auto me = solve_gamma(spec, Kind::EC);
    CHECK(convex_order_dominates(BoundedDist(me.density), spec, 500));
  }
  SUBCASE("two-point law with the right mean but too much spread fails") {
    // brute force over two-point laws on {0,1}: the only mean-matching one
    // puts mass h'alpha at one, and it violates the first prefix inequality
    BoundedDist spread(DiscreteDist({0.0, 1.0}, {1.0 - 0.42, 0.42}));
    const double pi1 = 0.42 * (1.0 - spec.Hcum()[1]);  // exact stop-loss at H_1
    CHECK(pi1 > (1.0 - spec.Hcum()[1]) * spec.alpha_bar()[1]);
    CHECK_FALSE(convex_order_dominates(spread, spec, 500));
    CHECK_FALSE(check_ec(spread, spec).feasible);
  }
  SUBCASE("mean mismatch is a domain error") {
    CHECK_THROWS_AS(convex_order_dominates(point_mass(0.3), spec, 100), std::domain_error);
  }
}

TEST_CASE("prefix feasibility matches the convex-order test") {
  std::mt19937_64 rng(29);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto sp = test::random_spec(rng, 2 + trial % 5);
    BoundedDist S = (trial % 2 == 0)
                        ? BoundedDist(test::random_feasible_discrete(rng, sp))
                        : BoundedDist(test::random_discrete_with_mean(rng, sp.mean_budget()));
    const bool fe = check_ec(S, sp).feasible;
    CHECK(fe == convex_order_dominates(S, sp, 1000));
    (fe ? feasible_seen : infeasible_seen)++;
    if (fe) {
      // convex order implies the variance order
      CHECK(S.variance() <= maximally_convex(sp).variance() + 1e-10);
    }
  }
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 10);
}

TEST_CASE("prefix test certifies every index set") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    auto sp = test::random_spec(rng, 2 + trial % 4);
    auto S = BoundedDist(test::random_feasible_discrete(rng, sp));
    REQUIRE(check_ec(S, sp).feasible);
    for (const auto& [mask, slack] : subset_slacks(S, sp)) {
      CHECK(slack >= -1e-9);
    }
  }
}
