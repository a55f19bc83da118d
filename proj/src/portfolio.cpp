// portfolio.cpp

#include "centropy/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "centropy/errors.hpp"
#include "centropy/numeric.hpp"

namespace centropy {

std::string to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::lazy: return "lazy";
        case Strategy::active: return "active";
    }
    throw std::invalid_argument("to_string: unknown strategy");
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "lazy") return Strategy::lazy;
    if (name == "active") return Strategy::active;
    throw std::invalid_argument("unknown strategy: " + name);
}

// ============================================================================
// Validation helpers
// ============================================================================

namespace {

void validate_unique_assets(const std::vector<std::string>& assets) {
    std::unordered_map<std::string, int> seen;
    for (const std::string& asset : assets) {
        if (++seen[asset] > 1) {
            throw std::invalid_argument("panel: duplicate asset id: " + asset);
        }
    }
}

void validate_price_panel(const PricePanel& panel) {
    if (panel.assets.empty()) {
        throw std::invalid_argument("price panel: no assets");
    }
    if (panel.prices.size() != panel.assets.size()) {
        throw std::invalid_argument("price panel: asset/price row mismatch");
    }
    validate_unique_assets(panel.assets);
    const std::size_t marks = panel.prices.front().size();
    if (marks < 2) {
        throw std::invalid_argument(
            "price panel: need at least 2 monthly prices per asset");
    }
    for (std::size_t i = 0; i < panel.prices.size(); ++i) {
        if (panel.prices[i].size() != marks) {
            throw std::invalid_argument(
                "price panel: unequal row lengths (asset " + panel.assets[i] +
                ")");
        }
        for (double price : panel.prices[i]) {
            if (!std::isfinite(price) || price <= 0.0) {
                throw std::invalid_argument(
                    "price panel: prices must be positive and finite (asset " +
                    panel.assets[i] + ")");
            }
        }
    }
}

void validate_return_panel(const ReturnPanel& panel) {
    if (panel.assets.empty()) {
        throw std::invalid_argument("return panel: no assets");
    }
    if (panel.returns.size() != panel.assets.size()) {
        throw std::invalid_argument("return panel: asset/row mismatch");
    }
    validate_unique_assets(panel.assets);
    const std::size_t length = panel.returns.front().size();
    if (length < 2) {
        throw std::invalid_argument(
            "return panel: need at least 2 return samples per asset");
    }
    for (std::size_t i = 0; i < panel.returns.size(); ++i) {
        if (panel.returns[i].size() != length) {
            throw std::invalid_argument(
                "return panel: unequal row lengths (asset " + panel.assets[i] +
                ")");
        }
        for (double value : panel.returns[i]) {
            if (!std::isfinite(value)) {
                throw std::invalid_argument(
                    "return panel: non-finite return (asset " +
                    panel.assets[i] + ")");
            }
        }
    }
}

// Reorders a weight vector onto the panel's asset order.  Externally
// supplied vectors (e.g. transcribed at 4 decimals) are accepted as long
// as they are nonnegative and sum to 1 within 1e-3; weights produced by
// the library are far inside that.
std::vector<double> align_weights(const std::vector<std::string>& panel_assets,
                                  const WeightVector& weights) {
    if (weights.assets.size() != weights.values.size()) {
        throw std::invalid_argument("weights: asset/value size mismatch");
    }
    if (weights.assets.size() != panel_assets.size()) {
        throw std::invalid_argument(
            "weights: vector covers " + std::to_string(weights.assets.size()) +
            " assets, panel has " + std::to_string(panel_assets.size()));
    }
    std::unordered_map<std::string, double> by_id;
    for (std::size_t i = 0; i < weights.assets.size(); ++i) {
        if (!by_id.emplace(weights.assets[i], weights.values[i]).second) {
            throw std::invalid_argument("weights: duplicate asset id: " +
                                        weights.assets[i]);
        }
    }
    std::vector<double> aligned(panel_assets.size());
    compensated_sum total;
    for (std::size_t i = 0; i < panel_assets.size(); ++i) {
        auto it = by_id.find(panel_assets[i]);
        if (it == by_id.end()) {
            throw std::invalid_argument("weights: no weight for asset " +
                                        panel_assets[i]);
        }
        if (!(it->second >= 0.0)) {
            throw std::invalid_argument("weights: negative weight for asset " +
                                        panel_assets[i]);
        }
        aligned[i] = it->second;
        total.add(it->second);
    }
    if (std::abs(total.value() - 1.0) > 1e-3) {
        throw std::invalid_argument("weights: values do not sum to 1");
    }
    return aligned;
}

void validate_wealth(double initial_wealth) {
    if (!(initial_wealth > 0.0) || !std::isfinite(initial_wealth)) {
        throw std::invalid_argument(
            "simulate: initial wealth must be positive and finite");
    }
}

} // namespace

// ============================================================================
// Simulation
// ============================================================================

WealthTrajectory simulate_lazy(const PricePanel& panel,
                               const WeightVector& weights,
                               double initial_wealth) {
    validate_price_panel(panel);
    validate_wealth(initial_wealth);
    const std::vector<double> w = align_weights(panel.assets, weights);

    const std::size_t assets = panel.asset_count();
    const std::size_t months = panel.prices.front().size();

    // Shares bought once at the first monthly mark and held.
    std::vector<double> shares(assets);
    for (std::size_t i = 0; i < assets; ++i) {
        shares[i] = initial_wealth * w[i] / panel.prices[i][0];
    }

    WealthTrajectory trajectory;
    trajectory.strategy = Strategy::lazy;
    trajectory.scheme = weights.scheme;
    trajectory.assets = panel.assets;
    trajectory.wealth.resize(months, std::vector<double>(assets));
    trajectory.totals.resize(months);
    for (std::size_t m = 1; m <= months; ++m) {
        // Month m is valued at the next monthly mark; the final month has
        // no later mark and is revalued at the last one.
        const std::size_t mark = std::min(m, months - 1);
        compensated_sum total;
        for (std::size_t i = 0; i < assets; ++i) {
            const double value = shares[i] * panel.prices[i][mark];
            trajectory.wealth[m - 1][i] = value;
            total.add(value);
        }
        trajectory.totals[m - 1] = total.value();
    }
    return trajectory;
}

WealthTrajectory simulate_active(const PricePanel& panel,
                                 const std::vector<WeightVector>& weights,
                                 double initial_wealth) {
    validate_price_panel(panel);
    validate_wealth(initial_wealth);
    const std::size_t months = panel.prices.front().size();
    if (weights.size() != months) {
        throw std::invalid_argument(
            "simulate_active: need one weight vector per month (" +
            std::to_string(months) + "), got " +
            std::to_string(weights.size()));
    }

    const std::size_t assets = panel.asset_count();
    WealthTrajectory trajectory;
    trajectory.strategy = Strategy::active;
    trajectory.scheme = weights.front().scheme;
    trajectory.assets = panel.assets;
    trajectory.wealth.resize(months, std::vector<double>(assets));
    trajectory.totals.resize(months);

    for (std::size_t m = 1; m <= months; ++m) {
        const std::vector<double> w = align_weights(panel.assets, weights[m - 1]);
        compensated_sum total;
        for (std::size_t i = 0; i < assets; ++i) {
            double value;
            if (m < months) {
                // The full wealth is reallocated each month and earns that
                // month's price relative.
                value = initial_wealth * w[i] * panel.prices[i][m] /
                        panel.prices[i][m - 1];
            } else {
                // The final month's allocation is valued at the same mark
                // it was formed at.
                value = initial_wealth * w[i];
            }
            trajectory.wealth[m - 1][i] = value;
            total.add(value);
        }
        trajectory.totals[m - 1] = total.value();
    }
    return trajectory;
}

ProfitReport profit_report(const WealthTrajectory& trajectory,
                           double initial_wealth) {
    validate_wealth(initial_wealth);
    if (trajectory.totals.empty()) {
        throw std::invalid_argument("profit_report: empty trajectory");
    }
    ProfitReport report;
    report.monthly.resize(trajectory.totals.size());
    compensated_sum year;
    for (std::size_t m = 0; m < trajectory.totals.size(); ++m) {
        report.monthly[m] = trajectory.totals[m] - initial_wealth;
        year.add(report.monthly[m]);
    }
    report.year = year.value();
    return report;
}

// ============================================================================
// Sharpe ratio
// ============================================================================

double sharpe_ratio(const ReturnPanel& panel, const WeightVector& weights) {
    validate_return_panel(panel);
    const std::vector<double> w = align_weights(panel.assets, weights);

    const std::size_t length = panel.returns.front().size();
    std::vector<double> portfolio(length);
    for (std::size_t t = 0; t < length; ++t) {
        compensated_sum step;
        for (std::size_t i = 0; i < panel.returns.size(); ++i) {
            step.add(w[i] * panel.returns[i][t]);
        }
        portfolio[t] = step.value();
    }
    const double sd = sample_std(portfolio);
    if (sd <= 0.0) {
        throw numeric_error(
            "sharpe_ratio: portfolio return variance is zero");
    }
    return mean(portfolio) / sd;
}

// ============================================================================
// Sharpe maximization over the simplex
// ============================================================================

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct SharpeObjective {
    std::vector<double> mu;
    std::vector<std::vector<double>> cov;

    explicit SharpeObjective(const ReturnPanel& panel) {
        const std::size_t assets = panel.asset_count();
        const std::size_t length = panel.returns.front().size();
        mu.resize(assets);
        for (std::size_t i = 0; i < assets; ++i) {
            mu[i] = mean(panel.returns[i]);
        }
        cov.assign(assets, std::vector<double>(assets, 0.0));
        for (std::size_t i = 0; i < assets; ++i) {
            for (std::size_t j = i; j < assets; ++j) {
                compensated_sum acc;
                for (std::size_t t = 0; t < length; ++t) {
                    acc.add((panel.returns[i][t] - mu[i]) *
                            (panel.returns[j][t] - mu[j]));
                }
                const double value =
                    acc.value() / static_cast<double>(length - 1);
                cov[i][j] = value;
                cov[j][i] = value;
            }
        }
    }

    std::size_t size() const noexcept { return mu.size(); }

    std::vector<double> cov_times(const std::vector<double>& w) const {
        std::vector<double> out(w.size(), 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            compensated_sum acc;
            for (std::size_t j = 0; j < w.size(); ++j) {
                acc.add(cov[i][j] * w[j]);
            }
            out[i] = acc.value();
        }
        return out;
    }

    // Sharpe ratio of a weight vector; -inf when the variance degenerates.
    double value(const std::vector<double>& w) const {
        double m = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            m += w[i] * mu[i];
        }
        const std::vector<double> cw = cov_times(w);
        double v = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            v += w[i] * cw[i];
        }
        if (!(v > 0.0)) {
            return kNegInf;
        }
        return m / std::sqrt(v);
    }
};

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_to_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double running = 0.0;
    double theta = 0.0;
    std::size_t support = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        running += u[j];
        const double candidate =
            (running - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            support = j + 1;
            theta = candidate;
        }
    }
    if (support == 0) {
        // All coordinates equal and tiny: fall back to uniform.
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
        return v;
    }
    for (double& x : v) {
        x = std::max(x - theta, 0.0);
    }
    return v;
}

// Solves cov * x = mu by Gaussian elimination with partial pivoting;
// returns an empty vector when the system is numerically singular.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        if (std::abs(a[pivot][col]) < 1e-100) {
            return {};
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t k = row + 1; k < n; ++k) {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    return x;
}

// Deterministic enumeration of the simplex grid with `steps` subdivisions.
void enumerate_grid(std::size_t assets, std::size_t steps,
                    std::vector<std::size_t>& partial,
                    std::vector<std::vector<double>>& out) {
    if (partial.size() + 1 == assets) {
        std::size_t used = 0;
        for (std::size_t c : partial) {
            used += c;
        }
        std::vector<double> w(assets);
        for (std::size_t i = 0; i < partial.size(); ++i) {
            w[i] = static_cast<double>(partial[i]) / static_cast<double>(steps);
        }
        w[assets - 1] =
            static_cast<double>(steps - used) / static_cast<double>(steps);
        out.push_back(std::move(w));
        return;
    }
    std::size_t used = 0;
    for (std::size_t c : partial) {
        used += c;
    }
    for (std::size_t c = 0; c <= steps - used; ++c) {
        partial.push_back(c);
        enumerate_grid(assets, steps, partial, out);
        partial.pop_back();
    }
}

std::size_t grid_steps_for(std::size_t assets) {
    if (assets == 2) return 1000;
    if (assets == 3) return 50;
    if (assets == 4) return 20;
    if (assets == 5) return 10;
    return 4;
}

// Ascent polish: projected gradient with backtracking step control.
std::vector<double> polish(const SharpeObjective& objective,
                           std::vector<double> w) {
    double current = objective.value(w);
    if (current == kNegInf) {
        return w;
    }
    double step = 0.1;
    for (int iter = 0; iter < 500 && step > 1e-10; ++iter) {
        // Gradient of m / sqrt(v).
        double m = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            m += w[i] * objective.mu[i];
        }
        const std::vector<double> cw = objective.cov_times(w);
        double v = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            v += w[i] * cw[i];
        }
        if (!(v > 0.0)) {
            break;
        }
        const double root = std::sqrt(v);
        std::vector<double> gradient(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            gradient[i] = objective.mu[i] / root - m * cw[i] / (v * root);
        }

        std::vector<double> trial(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            trial[i] = w[i] + step * gradient[i];
        }
        trial = project_to_simplex(std::move(trial));
        const double proposed = objective.value(trial);
        if (proposed > current + 1e-14) {
            w = std::move(trial);
            current = proposed;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }
    return w;
}

// Preference order: higher Sharpe wins; ties within 1e-12 go to the
// lexicographically smallest weight vector.
bool better_candidate(double sharpe_a, const std::vector<double>& a,
                      double sharpe_b, const std::vector<double>& b) {
    if (sharpe_a > sharpe_b + 1e-12) {
        return true;
    }
    if (sharpe_b > sharpe_a + 1e-12) {
        return false;
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

WeightVector maximize_sharpe(const ReturnPanel& panel) {
    validate_return_panel(panel);
    const std::size_t assets = panel.asset_count();

    WeightVector result;
    result.scheme = WeightScheme::sharpe;
    result.assets = panel.assets;

    if (assets == 1) {
        result.values = {1.0};
        return result;
    }

    SharpeObjective objective(panel);

    std::vector<std::vector<double>> candidates;
    candidates.push_back(
        std::vector<double>(assets, 1.0 / static_cast<double>(assets)));
    for (std::size_t i = 0; i < assets; ++i) {
        std::vector<double> vertex(assets, 0.0);
        vertex[i] = 1.0;
        candidates.push_back(std::move(vertex));
    }
    {
        std::vector<std::size_t> partial;
        enumerate_grid(assets, grid_steps_for(assets), partial, candidates);
    }
    {
        // Unconstrained tangent portfolio, clamped back onto the simplex.
        std::vector<double> x = solve_linear(objective.cov, objective.mu);
        if (!x.empty()) {
            double total = 0.0;
            for (double& value : x) {
                value = std::max(value, 0.0);
                total += value;
            }
            if (total > 0.0) {
                for (double& value : x) {
                    value /= total;
                }
                candidates.push_back(std::move(x));
            }
        }
    }

    // Rank candidates and polish the leaders.
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ranked.emplace_back(objective.value(candidates[i]), i);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) {
                         return a.first > b.first;
                     });

    std::vector<double> best;
    double best_sharpe = kNegInf;
    const std::size_t polish_count = std::min<std::size_t>(8, ranked.size());
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        std::vector<double> w = candidates[ranked[r].second];
        if (r < polish_count && ranked[r].first != kNegInf) {
            w = polish(objective, std::move(w));
        }
        const double s = objective.value(w);
        if (s == kNegInf) {
            continue;
        }
        if (best.empty() || better_candidate(s, w, best_sharpe, best)) {
            best = std::move(w);
            best_sharpe = s;
        }
    }
    if (best.empty()) {
        throw numeric_error(
            "maximize_sharpe: every candidate has degenerate variance");
    }

    // Exact renormalization against projection rounding.
    double total = 0.0;
    for (double value : best) {
        total += value;
    }
    for (double& value : best) {
        value /= total;
    }
    result.values = std::move(best);
    return result;
}

} // namespace centropy
