#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "centropy/errors.hpp"
#include "centropy/portfolio.hpp"
#include "support.hpp"

using namespace centropy;

namespace {

PricePanel two_asset_panel() {
    PricePanel panel;
    panel.assets = {"a", "b"};
    panel.prices = {{10.0, 11.0}, {100.0, 90.0}};
    return panel;
}

WeightVector make_weights(std::vector<std::string> assets,
                          std::vector<double> values,
                          WeightScheme scheme = WeightScheme::uniform) {
    WeightVector w;
    w.scheme = scheme;
    w.assets = std::move(assets);
    w.values = std::move(values);
    return w;
}

} // namespace

TEST_CASE("simulate_lazy two-asset hand example") {
    const PricePanel panel = two_asset_panel();
    const WeightVector w = make_weights({"a", "b"}, {0.5, 0.5});
    const WealthTrajectory traj = simulate_lazy(panel, w, 100.0);
    // 2 marks -> 2 monthly rows; shares: 5 of a, 0.5 of b.  Month 1 is
    // valued at the second mark; the final month has no later mark and is
    // revalued there as well.
    REQUIRE(traj.months() == 2);
    CHECK(traj.strategy == Strategy::lazy);
    CHECK(traj.wealth[0][0] == doctest::Approx(55.0).epsilon(1e-12));
    CHECK(traj.wealth[0][1] == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(traj.totals[0] == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(traj.wealth[1][0] == doctest::Approx(55.0).epsilon(1e-12));
    CHECK(traj.totals[1] == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("lazy wealth telescopes when prices double every mark") {
    PricePanel panel;
    panel.assets = {"a", "b"};
    panel.prices = {{1.0, 2.0, 4.0, 8.0}, {3.0, 6.0, 12.0, 24.0}};
    const WeightVector w = make_weights({"a", "b"}, {0.7, 0.3});
    const double W0 = 1000.0;
    const WealthTrajectory traj = simulate_lazy(panel, w, W0);
    REQUIRE(traj.months() == 4);
    // month m sits at mark min(m, 3): 2x, 4x, 8x, then the final month
    // repeats the last boundary
    CHECK(traj.totals[0] == doctest::Approx(2.0 * W0).epsilon(1e-12));
    CHECK(traj.totals[1] == doctest::Approx(4.0 * W0).epsilon(1e-12));
    CHECK(traj.totals[2] == doctest::Approx(8.0 * W0).epsilon(1e-12));
    CHECK(traj.totals[3] == doctest::Approx(8.0 * W0).epsilon(1e-12));
}

TEST_CASE("active wealth resets to the initial split every month") {
    PricePanel panel;
    panel.assets = {"a", "b"};
    panel.prices = {{1.0, 2.0, 4.0, 8.0}, {3.0, 6.0, 12.0, 24.0}};
    const double W0 = 1000.0;
    std::vector<WeightVector> monthly;
    for (int m = 0; m < 4; ++m) {
        monthly.push_back(make_weights({"a", "b"}, {0.25, 0.75}));
    }
    const WealthTrajectory traj = simulate_active(panel, monthly, W0);
    REQUIRE(traj.months() == 4);
    // months 1..3 each earn one doubling on re-invested W0; the final
    // month allocates at the last boundary and is valued right there
    CHECK(traj.totals[0] == doctest::Approx(2.0 * W0).epsilon(1e-12));
    CHECK(traj.totals[1] == doctest::Approx(2.0 * W0).epsilon(1e-12));
    CHECK(traj.totals[2] == doctest::Approx(2.0 * W0).epsilon(1e-12));
    CHECK(traj.totals[3] == doctest::Approx(W0).epsilon(1e-12));
    CHECK(traj.strategy == Strategy::active);
}

TEST_CASE("lazy and active agree on constant prices") {
    PricePanel panel;
    panel.assets = {"x", "y", "z"};
    panel.prices = {{5.0, 5.0, 5.0}, {7.0, 7.0, 7.0}, {2.0, 2.0, 2.0}};
    const WeightVector w = make_weights({"x", "y", "z"}, {0.2, 0.3, 0.5});
    const double W0 = 250.0;
    const WealthTrajectory lazy = simulate_lazy(panel, w, W0);
    const WealthTrajectory active =
        simulate_active(panel, {w, w, w}, W0);
    REQUIRE(lazy.months() == active.months());
    for (std::size_t m = 0; m < lazy.months(); ++m) {
        CHECK(lazy.totals[m] == doctest::Approx(W0).epsilon(1e-12));
        CHECK(active.totals[m] == doctest::Approx(W0).epsilon(1e-12));
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(lazy.wealth[m][i] ==
                  doctest::Approx(active.wealth[m][i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("doubling the initial wealth doubles every cell bitwise") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> price(50.0, 150.0);
    PricePanel panel;
    panel.assets = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
        std::vector<double> row;
        for (int m = 0; m < 13; ++m) {
            row.push_back(price(eng));
        }
        panel.prices.push_back(std::move(row));
    }
    const WeightVector w = make_weights({"a", "b", "c"}, {0.5, 0.25, 0.25});
    const WealthTrajectory base = simulate_lazy(panel, w, 500000.0);
    const WealthTrajectory twice = simulate_lazy(panel, w, 1000000.0);
    REQUIRE(base.months() == twice.months());
    for (std::size_t m = 0; m < base.months(); ++m) {
        CHECK(twice.totals[m] == 2.0 * base.totals[m]);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(twice.wealth[m][i] == 2.0 * base.wealth[m][i]);
        }
    }
}

TEST_CASE("totals equal the per-asset row sums") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> price(10.0, 300.0);
    PricePanel panel;
    panel.assets = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i) {
        std::vector<double> row;
        for (int m = 0; m < 13; ++m) {
            row.push_back(price(eng));
        }
        panel.prices.push_back(std::move(row));
    }
    const WeightVector w = make_weights({"a", "b", "c", "d"},
                                        {0.1, 0.2, 0.3, 0.4});
    const WealthTrajectory traj = simulate_lazy(panel, w, 500000.0);
    for (std::size_t m = 0; m < traj.months(); ++m) {
        double acc = 0.0;
        for (const double cell : traj.wealth[m]) {
            acc += cell;
        }
        CHECK(traj.totals[m] == doctest::Approx(acc).epsilon(1e-12));
    }
}

TEST_CASE("profit_report subtracts the initial wealth and sums the year") {
    WealthTrajectory traj;
    traj.assets = {"a"};
    traj.wealth = {{110.0}, {95.0}, {130.0}};
    traj.totals = {110.0, 95.0, 130.0};
    const ProfitReport report = profit_report(traj, 100.0);
    REQUIRE(report.monthly.size() == 3);
    CHECK(report.monthly[0] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(report.monthly[1] == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(report.monthly[2] == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(report.year == doctest::Approx(35.0).epsilon(1e-12));

    WealthTrajectory empty;
    CHECK_THROWS_AS(profit_report(empty, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(profit_report(traj, 0.0), std::invalid_argument);
}

TEST_CASE("simulation validation errors") {
    const PricePanel panel = two_asset_panel();
    const double W0 = 100.0;

    // weights must cover exactly the panel's assets
    CHECK_THROWS_AS(
        simulate_lazy(panel, make_weights({"a", "z"}, {0.5, 0.5}), W0),
        std::invalid_argument);
    CHECK_THROWS_AS(simulate_lazy(panel, make_weights({"a"}, {1.0}), W0),
                    std::invalid_argument);
    // sum tolerance is 1e-3: 1.0005 passes, 1.01 does not
    CHECK_NOTHROW(
        simulate_lazy(panel, make_weights({"a", "b"}, {0.5005, 0.5}), W0));
    CHECK_THROWS_AS(
        simulate_lazy(panel, make_weights({"a", "b"}, {0.51, 0.5}), W0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        simulate_lazy(panel, make_weights({"a", "b"}, {-0.1, 1.1}), W0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        simulate_lazy(panel, make_weights({"a", "b"}, {0.5, 0.5}), 0.0),
        std::invalid_argument);

    // active needs one weight vector per month
    const WeightVector w = make_weights({"a", "b"}, {0.5, 0.5});
    CHECK_THROWS_AS(simulate_active(panel, {w}, W0), std::invalid_argument);
    CHECK_NOTHROW(simulate_active(panel, {w, w}, W0));

    // panel invariants
    PricePanel ragged = panel;
    ragged.prices[1].push_back(1.0);
    CHECK_THROWS_AS(simulate_lazy(ragged, w, W0), std::invalid_argument);
    PricePanel nonpos = panel;
    nonpos.prices[0][1] = 0.0;
    CHECK_THROWS_AS(simulate_lazy(nonpos, w, W0), std::invalid_argument);
    PricePanel dup = panel;
    dup.assets = {"a", "a"};
    CHECK_THROWS_AS(
        simulate_lazy(dup, make_weights({"a", "a"}, {0.5, 0.5}), W0),
        std::invalid_argument);
    PricePanel single_mark = panel;
    single_mark.prices = {{10.0}, {100.0}};
    CHECK_THROWS_AS(simulate_lazy(single_mark, w, W0), std::invalid_argument);
}

TEST_CASE("weights bound to other assets are rejected in any order") {
    // same ids, different order: accepted and applied by id
    PricePanel panel = two_asset_panel();
    const WeightVector flipped = make_weights({"b", "a"}, {0.5, 0.5});
    const WealthTrajectory traj = simulate_lazy(panel, flipped, 100.0);
    CHECK(traj.wealth[0][0] == doctest::Approx(55.0).epsilon(1e-12));
    CHECK(traj.wealth[0][1] == doctest::Approx(45.0).epsilon(1e-12));
}

TEST_CASE("sharpe_ratio hand value one half") {
    const double d = 0.01 * std::sqrt(2.0);
    ReturnPanel panel;
    panel.assets = {"solo"};
    panel.returns = {{0.01 + d, 0.01 - d}};
    const WeightVector w = make_weights({"solo"}, {1.0});
    // mean 0.01, sample std d*sqrt(2) = 0.02
    CHECK(sharpe_ratio(panel, w) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sharpe_ratio matches the reference implementation") {
    std::mt19937_64 eng(8);
    std::normal_distribution<double> gauss(0.003, 0.02);
    ReturnPanel panel;
    panel.assets = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
        std::vector<double> row;
        for (int t = 0; t < 36; ++t) {
            row.push_back(gauss(eng));
        }
        panel.returns.push_back(std::move(row));
    }
    const WeightVector w = make_weights({"a", "b", "c"}, {0.5, 0.3, 0.2});
    CHECK(sharpe_ratio(panel, w) ==
          doctest::Approx(
              testsupport::reference_sharpe(panel.returns, w.values))
              .epsilon(1e-12));
}

TEST_CASE("sharpe_ratio degenerate and precondition errors") {
    ReturnPanel flat;
    flat.assets = {"a"};
    flat.returns = {{0.01, 0.01, 0.01}};
    CHECK_THROWS_AS(sharpe_ratio(flat, make_weights({"a"}, {1.0})),
                    numeric_error);

    ReturnPanel panel;
    panel.assets = {"a"};
    panel.returns = {{0.01}};
    CHECK_THROWS_AS(sharpe_ratio(panel, make_weights({"a"}, {1.0})),
                    std::invalid_argument);
}

TEST_CASE("maximize_sharpe finds an interior minimum-variance split") {
    // two uncorrelated assets with the same mean: the Sharpe optimum is the
    // minimum-variance mix w1 = s2^2 / (s1^2 + s2^2) = 0.8
    const double a = 0.01;
    ReturnPanel panel;
    panel.assets = {"a", "b"};
    panel.returns = {
        {a + 0.01, a - 0.01, a + 0.01, a - 0.01},
        {a + 0.02, a + 0.02, a - 0.02, a - 0.02},
    };
    const WeightVector w = maximize_sharpe(panel);
    REQUIRE(w.size() == 2);
    CHECK(w.scheme == WeightScheme::sharpe);
    CHECK(w.values[0] == doctest::Approx(0.8).epsilon(2e-3));
    CHECK(w.values[1] == doctest::Approx(0.2).epsilon(2e-3));
    CHECK(w.values[0] + w.values[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("maximize_sharpe picks the dominant vertex") {
    // asset b dominates: same volatility pattern, larger mean
    ReturnPanel panel;
    panel.assets = {"a", "b"};
    panel.returns = {
        {0.001 + 0.01, 0.001 - 0.01, 0.001 + 0.01, 0.001 - 0.01},
        {0.010 + 0.01, 0.010 - 0.01, 0.010 + 0.01, 0.010 - 0.01},
    };
    const WeightVector w = maximize_sharpe(panel);
    CHECK(w.values[0] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(w.values[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("maximize_sharpe ties resolve to the smallest weight vector") {
    // identical assets: every mix has the same Sharpe ratio, so the
    // lexicographically smallest candidate must win deterministically
    ReturnPanel panel;
    panel.assets = {"a", "b"};
    panel.returns = {
        {0.02, -0.01, 0.03, 0.00},
        {0.02, -0.01, 0.03, 0.00},
    };
    const WeightVector w = maximize_sharpe(panel);
    CHECK(w.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximize_sharpe beats an exhaustive three-asset grid") {
    std::mt19937_64 eng(123);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        ReturnPanel panel;
        panel.assets = {"a", "b", "c"};
        std::uniform_real_distribution<double> mean_pick(-0.002, 0.01);
        std::uniform_real_distribution<double> vol_pick(0.005, 0.04);
        for (int i = 0; i < 3; ++i) {
            const double mu = mean_pick(eng);
            const double sigma = vol_pick(eng);
            std::vector<double> row;
            for (int t = 0; t < 24; ++t) {
                row.push_back(mu + sigma * gauss(eng));
            }
            panel.returns.push_back(std::move(row));
        }
        const WeightVector w = maximize_sharpe(panel);
        const double opt =
            testsupport::reference_sharpe(panel.returns, w.values);
        const double grid =
            testsupport::grid_best_sharpe3(panel.returns, 0.001);
        CHECK(opt >= grid - 1e-9);
    }
}

TEST_CASE("maximize_sharpe rejects fully degenerate panels") {
    ReturnPanel panel;
    panel.assets = {"a", "b"};
    panel.returns = {{0.01, 0.01, 0.01}, {0.02, 0.02, 0.02}};
    CHECK_THROWS_AS(maximize_sharpe(panel), numeric_error);
}

TEST_CASE("strategy names round-trip") {
    CHECK(to_string(Strategy::lazy) == "lazy");
    CHECK(to_string(Strategy::active) == "active");
    CHECK(strategy_from_string("lazy") == Strategy::lazy);
    CHECK(strategy_from_string("active") == Strategy::active);
    CHECK_THROWS_AS(strategy_from_string("bold"), std::invalid_argument);
}
