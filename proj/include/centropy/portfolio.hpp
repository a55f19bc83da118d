// portfolio.hpp
// Monthly portfolio simulation on a price panel, profit reports, and
// Sharpe-ratio evaluation/optimization over the weight simplex.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "centropy/weights.hpp"

namespace centropy {

// Prices of A assets at successive monthly marks (prices[i][m] is asset i
// at mark m).  A panel with M marks produces M monthly valuation rows; the
// final month has no later mark and is revalued at the last one.
// Invariants: at least one asset, unique ids, equal row lengths >= 2, all
// prices positive.
struct PricePanel {
    std::vector<std::string> assets;
    std::vector<std::vector<double>> prices;

    std::size_t asset_count() const noexcept { return assets.size(); }
    std::size_t months() const noexcept {
        return prices.empty() ? 0 : prices.front().size();
    }
};

// Returns of A assets over a common clock (returns[i][t] is asset i at
// step t).  Invariants: unique ids, equal row lengths >= 2.
struct ReturnPanel {
    std::vector<std::string> assets;
    std::vector<std::vector<double>> returns;

    std::size_t asset_count() const noexcept { return assets.size(); }
};

enum class Strategy { lazy, active };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

// Month-by-month wealth of a simulated portfolio.  wealth[m-1][i] is the
// wealth held in asset i at the end of month m (m = 1..months);
// totals[m-1] is the row sum.  The final month is valued at the last
// available price boundary.
struct WealthTrajectory {
    Strategy strategy = Strategy::lazy;
    WeightScheme scheme = WeightScheme::uniform;
    std::vector<std::string> assets;
    std::vector<std::vector<double>> wealth;
    std::vector<double> totals;

    std::size_t months() const noexcept { return totals.size(); }
};

// Monthly profits relative to the initial wealth plus their sum over the
// simulated year.
struct ProfitReport {
    std::vector<double> monthly;
    double year = 0.0;
};

// Buy-and-hold: initial wealth is split by `weights` once, converted to
// shares at the first price boundary, and held.  Months 1..M-1 are valued
// at the next month's boundary; month M at the final boundary.
// Preconditions: weights cover exactly the panel's assets (same ids),
// nonnegative, summing to 1 within 1e-3; initial_wealth > 0.
WealthTrajectory simulate_lazy(const PricePanel& panel,
                               const WeightVector& weights,
                               double initial_wealth);

// Monthly rebalancing: each month m the full initial wealth is reallocated
// by that month's weight vector and earns the month's price relatives; the
// final month is valued at the final boundary (so its allocation equals
// the initial wealth split by that month's weights).
// Preconditions: one weight vector per month, each as in simulate_lazy.
WealthTrajectory simulate_active(const PricePanel& panel,
                                 const std::vector<WeightVector>& weights,
                                 double initial_wealth);

// Monthly totals minus the initial wealth; `year` is their sum.
ProfitReport profit_report(const WealthTrajectory& trajectory,
                           double initial_wealth);

// Sharpe ratio (mean over sample standard deviation, no risk-free leg) of
// the weighted return series.  Preconditions: weights cover the panel's
// assets; at least two return samples.  Zero variance raises numeric_error.
double sharpe_ratio(const ReturnPanel& panel, const WeightVector& weights);

// Maximizes the Sharpe ratio over the probability simplex: deterministic
// multi-start (uniform, vertices, a coarse simplex grid, and the
// unconstrained tangent portfolio when the covariance is invertible)
// followed by projected-gradient polish of the leading candidates.  Ties
// within 1e-12 resolve to the lexicographically smallest weight vector.
// Preconditions: at least one asset, rows of length >= 2.  Raises
// numeric_error when every candidate has degenerate variance.
WeightVector maximize_sharpe(const ReturnPanel& panel);

} // namespace centropy
