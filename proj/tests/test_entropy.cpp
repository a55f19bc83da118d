#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "centropy/clusters.hpp"
#include "centropy/entropy.hpp"
#include "centropy/errors.hpp"
#include "centropy/fbm.hpp"
#include "centropy/numeric.hpp"
#include "support.hpp"

using namespace centropy;

namespace {

// Hand-built distribution over cells of a single window.
DurationDistribution make_dist(std::size_t window,
                               const std::vector<double>& masses) {
    DurationDistribution dist;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const DurationCell cell{window, i + 1};
        dist.masses[cell] = masses[i];
        dist.counts[cell] = 1;
    }
    dist.total_clusters = masses.size();
    return dist;
}

} // namespace

TEST_CASE("kl_component hand values") {
    CHECK(kl_component(0.5, 0.5) == 0.0);
    CHECK(kl_component(0.0, 0.3) == 0.0);
    CHECK(kl_component(0.5, 0.25) ==
          doctest::Approx(0.34657359027997264).epsilon(1e-14));
    // p < q makes the term negative
    CHECK(kl_component(0.25, 0.5) < 0.0);
}

TEST_CASE("kl_component violated support and domain") {
    CHECK_THROWS_AS(kl_component(0.5, 0.0), support_error);
    CHECK_THROWS_AS(kl_component(-0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(kl_component(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("shannon_component hand values") {
    CHECK(shannon_component(1.0) == 0.0);
    CHECK(shannon_component(0.0) == 0.0);
    CHECK(shannon_component(0.5) ==
          doctest::Approx(0.34657359027997264).epsilon(1e-14));
    CHECK_THROWS_AS(shannon_component(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(shannon_component(1.1), std::invalid_argument);
}

TEST_CASE("kl_cluster_entropy of identical distributions is exactly zero") {
    const DurationDistribution p = make_dist(10, {0.5, 0.3, 0.2});
    const EntropyProfile profile = kl_cluster_entropy(p, p);
    CHECK(profile.aggregate == 0.0);
    CHECK(profile.dropped_mass == 0.0);
    for (const auto& [cell, c] : profile.components) {
        CHECK(c == 0.0);
    }
}

TEST_CASE("kl_cluster_entropy two-cell hand example") {
    const DurationDistribution p = make_dist(10, {0.5, 0.5});
    const DurationDistribution q = make_dist(10, {0.25, 0.75});
    const EntropyProfile profile = kl_cluster_entropy(p, q);
    // 0.5 ln 2 + 0.5 ln(2/3)
    CHECK(profile.aggregate ==
          doctest::Approx(0.14384103622589042).epsilon(1e-12));
    CHECK(profile.components.at({10, 1}) ==
          doctest::Approx(0.34657359027997264).epsilon(1e-14));
    CHECK(profile.kind == EntropyKind::kl);
}

TEST_CASE("aggregate equals the recomputed component sum") {
    const DurationDistribution p = make_dist(7, {0.1, 0.2, 0.3, 0.4});
    const DurationDistribution q = make_dist(7, {0.4, 0.3, 0.2, 0.1});
    const EntropyProfile profile = kl_cluster_entropy(p, q);
    compensated_sum acc;
    for (const auto& [cell, c] : profile.components) {
        acc.add(c);
    }
    CHECK(profile.aggregate == doctest::Approx(acc.value()).epsilon(1e-15));
}

TEST_CASE("off-support mass below the budget is dropped and renormalized") {
    // P puts 0.1 on a cell Q lacks; with a loose budget the rest is
    // renormalized by 1/0.9 and compared as usual
    DurationDistribution p = make_dist(10, {0.9});
    p.masses[{10, 5}] = 0.1;
    p.counts[{10, 5}] = 1;
    p.total_clusters = 2;
    DurationDistribution q = make_dist(10, {0.5});
    q.masses[{10, 3}] = 0.5;
    q.counts[{10, 3}] = 1;
    q.total_clusters = 2;

    const EntropyProfile profile = kl_cluster_entropy(p, q, KlOptions{0.2});
    CHECK(profile.dropped_mass == doctest::Approx(0.1).epsilon(1e-12));
    // single kept cell renormalizes to mass 1 against q-mass 0.5
    CHECK(profile.aggregate ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // the dropped cell contributes no component
    CHECK(profile.components.count({10, 5}) == 0);
}

TEST_CASE("off-support mass beyond the budget raises support_error") {
    const DurationDistribution p = make_dist(10, {0.5, 0.5});
    DurationDistribution q = make_dist(10, {1.0});
    try {
        kl_cluster_entropy(p, q);
        FAIL("expected support_error");
    } catch (const support_error& e) {
        CHECK(e.uncovered_mass() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("default off-support budget is one percent") {
    DurationDistribution p = make_dist(10, {0.98});
    p.masses[{10, 9}] = 0.02;
    p.counts[{10, 9}] = 1;
    p.total_clusters = 2;
    const DurationDistribution q = make_dist(10, {1.0});
    CHECK_THROWS_AS(kl_cluster_entropy(p, q), support_error);
    CHECK_NOTHROW(kl_cluster_entropy(p, q, KlOptions{0.05}));
}

TEST_CASE("gibbs inequality on random shared-support distributions") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> U(0.01, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t k = 2 + eng() % 8;
        std::vector<double> pm(k);
        std::vector<double> qm(k);
        double ps = 0.0;
        double qs = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            pm[i] = U(eng);
            qm[i] = U(eng);
            ps += pm[i];
            qs += qm[i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            pm[i] /= ps;
            qm[i] /= qs;
        }
        const EntropyProfile profile =
            kl_cluster_entropy(make_dist(5, pm), make_dist(5, qm));
        CHECK(profile.aggregate >= -1e-9);
    }
}

TEST_CASE("distribution validation") {
    const DurationDistribution empty;
    const DurationDistribution good = make_dist(5, {1.0});
    CHECK_THROWS_AS(kl_cluster_entropy(empty, good), std::invalid_argument);
    CHECK_THROWS_AS(kl_cluster_entropy(good, empty), std::invalid_argument);
    CHECK_THROWS_AS(shannon_cluster_entropy(empty), std::invalid_argument);
    const DurationDistribution bad = make_dist(5, {0.5, 0.4}); // sums to 0.9
    CHECK_THROWS_AS(kl_cluster_entropy(bad, good), std::invalid_argument);
    CHECK_THROWS_AS(shannon_cluster_entropy(bad), std::invalid_argument);
}

TEST_CASE("shannon hand values and the support bound") {
    const EntropyProfile tri =
        shannon_cluster_entropy(make_dist(5, {0.5, 0.25, 0.25}));
    CHECK(tri.aggregate == doctest::Approx(1.0397207708399179).epsilon(1e-12));
    CHECK(tri.kind == EntropyKind::shannon);

    const EntropyProfile single = shannon_cluster_entropy(make_dist(5, {1.0}));
    CHECK(single.aggregate == 0.0);

    for (const std::size_t k : {2, 4, 8}) {
        std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
        const EntropyProfile prof = shannon_cluster_entropy(make_dist(9, uniform));
        CHECK(prof.aggregate ==
              doctest::Approx(std::log(static_cast<double>(k))).epsilon(1e-12));
    }

    std::mt19937_64 eng(17);
    std::uniform_real_distribution<double> U(0.01, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t k = 2 + eng() % 10;
        std::vector<double> m(k);
        double s = 0.0;
        for (double& x : m) {
            x = U(eng);
            s += x;
        }
        for (double& x : m) {
            x /= s;
        }
        const EntropyProfile prof = shannon_cluster_entropy(make_dist(4, m));
        CHECK(prof.aggregate <=
              std::log(static_cast<double>(k)) + 1e-12);
        for (const auto& [cell, c] : prof.components) {
            CHECK(c >= 0.0);
        }
    }
}

TEST_CASE("closed forms reproduce the worked constants") {
    CHECK(kl_closed_form_alpha(1.5, 1.5) == 0.0);
    CHECK(kl_closed_form_alpha(1.3, 1.5) ==
          doctest::Approx(0.15584104290067592).epsilon(1e-12));
    CHECK(kl_closed_form_alpha(1.7, 1.5) ==
          doctest::Approx(0.05075795090692719).epsilon(1e-12));
    CHECK(kl_closed_form_hurst(0.5, 0.5) == 0.0);
    CHECK(kl_closed_form_hurst(0.7, 0.5) ==
          doctest::Approx(0.15584104290067592).epsilon(1e-12));
    CHECK(kl_closed_form_hurst(0.3, 0.5) ==
          doctest::Approx(0.05075795090692719).epsilon(1e-12));
}

TEST_CASE("closed-form identity across the hurst grid is exact") {
    for (int i = 1; i <= 9; ++i) {
        for (int j = 1; j <= 9; ++j) {
            const double h1 = 0.1 * i;
            const double h2 = 0.1 * j;
            CHECK(kl_closed_form_hurst(h1, h2) ==
                  kl_closed_form_alpha(2.0 - h1, 2.0 - h2));
            if (i == j) {
                CHECK(kl_closed_form_hurst(h1, h2) == 0.0);
            }
        }
    }
}

TEST_CASE("closed-form domain errors") {
    CHECK_THROWS_AS(kl_closed_form_alpha(1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(kl_closed_form_alpha(1.5, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(kl_closed_form_hurst(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(kl_closed_form_hurst(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("quadrature oracle agrees with the closed forms") {
    CHECK(std::abs(kl_integral_oracle(1.4, 1.4, 1e8)) < 1e-10);
    CHECK(kl_integral_oracle(1.3, 1.5, 1e8) ==
          doctest::Approx(0.15584104290067592).epsilon(1e-7));
    CHECK(kl_integral_oracle(1.7, 1.5, 1e8) ==
          doctest::Approx(0.05075795090692719).epsilon(1e-7));
    for (const double a1 : {1.1, 1.5, 1.9}) {
        for (const double a2 : {1.2, 1.6}) {
            CHECK(std::abs(kl_integral_oracle(a1, a2, 1e8) -
                           kl_closed_form_alpha(a1, a2)) < 1e-5);
        }
    }
    // split-point consistency: moving the split must not move the value
    CHECK(std::abs(kl_integral_oracle(1.3, 1.5, 1e7) -
                   kl_integral_oracle(1.3, 1.5, 1e8)) < 1e-9);
}

TEST_CASE("empirical profiles order by distance from the reference") {
    // one-path distributions against a small reference ensemble: larger
    // generating exponent mismatch gives a larger aggregate
    const std::size_t n = std::size_t{1} << 14;
    const WindowSet windows{20, 40};
    const DurationDistribution q =
        model_duration_distribution({0.5, n, 900, 4}, windows);
    const KlOptions loose{0.5};
    const DurationDistribution p6 =
        model_duration_distribution({0.6, n, 1, 1}, windows);
    const DurationDistribution p7 =
        model_duration_distribution({0.7, n, 1, 1}, windows);
    const double d6 = kl_cluster_entropy(p6, q, loose).aggregate;
    const double d7 = kl_cluster_entropy(p7, q, loose).aggregate;
    CHECK(d6 > 0.0);
    CHECK(d7 > d6);
}

TEST_CASE("component shapes against duration for a persistent path") {
    const std::size_t n = std::size_t{1} << 15;
    const WindowSet windows{50, 100};
    const DurationDistribution q =
        model_duration_distribution({0.5, n, 900, 4}, windows);
    const DurationDistribution p =
        model_duration_distribution({0.7, n, 1, 1}, windows);
    const EntropyProfile kl = kl_cluster_entropy(p, q, KlOptions{0.5});

    // signed components at the shortest durations are negative for a
    // persistent input against an uncorrelated reference
    CHECK(kl.components.at({100, 1}) < 0.0);
    CHECK(kl.components.at({100, 2}) < 0.0);

    // magnitude profile peaks at short durations: rank correlation of
    // |component| against duration over the window-100 cells is negative
    std::vector<double> taus;
    std::vector<double> mags;
    for (const auto& [cell, c] : kl.components) {
        if (cell.window == 100 && cell.duration < 100) {
            taus.push_back(static_cast<double>(cell.duration));
            mags.push_back(std::abs(c));
        }
    }
    REQUIRE(taus.size() > 20);
    CHECK(testsupport::spearman(taus, mags) < 0.0);

    // cumulative per-duration Shannon aggregate rises then saturates
    const EntropyProfile sh = shannon_cluster_entropy(p);
    std::map<std::size_t, double> per_tau;
    for (const auto& [cell, c] : sh.components) {
        if (cell.duration < 100) {
            per_tau[cell.duration] += c;
        }
    }
    std::vector<double> ts;
    std::vector<double> cum;
    double run = 0.0;
    for (const auto& [tau, s] : per_tau) {
        run += s;
        ts.push_back(static_cast<double>(tau));
        cum.push_back(run);
    }
    REQUIRE(cum.size() > 20);
    CHECK(testsupport::spearman(ts, cum) > 0.9);
    // early increments dwarf late ones
    const std::size_t m = cum.size();
    const double early = cum[m / 5] - cum.front();
    const double late = cum[m - 1] - cum[m - 1 - m / 5];
    CHECK(early > 4.0 * late);
}
