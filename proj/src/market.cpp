// market.cpp

#include "centropy/market.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "centropy/errors.hpp"
#include "centropy/numeric.hpp"

namespace centropy {

// ============================================================================
// Tick parsing
// ============================================================================

namespace {

std::string location(const std::string& origin, std::size_t line) {
    return origin + ", line " + std::to_string(line);
}

bool parse_int64(const std::string& text, std::int64_t& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !text.empty();
}

bool parse_double(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !text.empty();
}

} // namespace

TickSeries parse_ticks(const std::string& text, const std::string& origin_name) {
    std::istringstream stream(text);
    std::string line;
    std::size_t line_number = 0;
    TickSeries ticks;

    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line_number == 1) {
            if (line != "timestamp,price") {
                throw data_error(location(origin_name, 1) +
                                 ": expected header 'timestamp,price'");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw data_error(location(origin_name, line_number) +
                             ": expected 'timestamp,price' row");
        }
        std::int64_t timestamp = 0;
        double price = 0.0;
        if (!parse_int64(line.substr(0, comma), timestamp)) {
            throw data_error(location(origin_name, line_number) +
                             ": malformed timestamp");
        }
        if (!parse_double(line.substr(comma + 1), price)) {
            throw data_error(location(origin_name, line_number) +
                             ": malformed price");
        }
        if (!std::isfinite(price) || price <= 0.0) {
            throw data_error(location(origin_name, line_number) +
                             ": price must be positive and finite");
        }
        if (!ticks.empty() && timestamp < ticks.back().timestamp) {
            throw data_error(
                location(origin_name, line_number) + ": timestamp " +
                std::to_string(timestamp) + " decreases below previous " +
                std::to_string(ticks.back().timestamp));
        }
        ticks.push_back(Tick{timestamp, price});
    }
    if (line_number == 0) {
        throw data_error(origin_name + ": empty tick file");
    }
    if (ticks.empty()) {
        throw data_error(origin_name + ": no data rows");
    }
    return ticks;
}

TickSeries load_ticks(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw data_error("cannot open tick file: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_ticks(buffer.str(), path);
}

// ============================================================================
// Resampling and returns
// ============================================================================

RegularSeries resample(const TickSeries& ticks, std::int64_t delta_seconds) {
    if (ticks.empty()) {
        throw std::invalid_argument("resample: empty tick series");
    }
    if (delta_seconds < 1) {
        throw std::invalid_argument("resample: delta must be >= 1 second");
    }
    const std::int64_t start = ticks.front().timestamp;
    const std::int64_t stop = ticks.back().timestamp;
    const std::size_t samples =
        static_cast<std::size_t>((stop - start) / delta_seconds) + 1;

    RegularSeries series;
    series.step = delta_seconds;
    series.origin = start;
    series.values.resize(samples);

    // Last observation carried forward: with several ticks on or before a
    // grid point, the latest one wins.
    std::size_t next_tick = 0;
    double current = ticks.front().price;
    for (std::size_t k = 0; k < samples; ++k) {
        const std::int64_t grid_time =
            start + static_cast<std::int64_t>(k) * delta_seconds;
        while (next_tick < ticks.size() &&
               ticks[next_tick].timestamp <= grid_time) {
            current = ticks[next_tick].price;
            ++next_tick;
        }
        series.values[k] = current;
    }
    return series;
}

RegularSeries log_returns(const RegularSeries& prices) {
    if (prices.size() < 2) {
        throw std::invalid_argument("log_returns: need at least 2 prices");
    }
    RegularSeries returns;
    returns.step = prices.step;
    returns.origin = prices.origin + prices.step;
    returns.values.resize(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        const double prev = prices.values[t - 1];
        const double cur = prices.values[t];
        if (!(prev > 0.0) || !(cur > 0.0)) {
            throw std::invalid_argument(
                "log_returns: prices must be positive (sample " +
                std::to_string(t) + ")");
        }
        returns.values[t - 1] = std::log(cur / prev);
    }
    return returns;
}

// ============================================================================
// Rolling statistics
// ============================================================================

namespace {

void check_rolling_args(const RegularSeries& returns, std::size_t window,
                        const char* name) {
    if (window < 2) {
        throw std::invalid_argument(std::string(name) +
                                    ": window must be >= 2");
    }
    if (returns.size() < window) {
        throw std::invalid_argument(
            std::string(name) + ": need at least " + std::to_string(window) +
            " samples, have " + std::to_string(returns.size()));
    }
}

// Rolling first and second moments about the global mean, via prefix sums.
// Centering once keeps the catastrophic cancellation of raw second moments
// out of the windowed variance.
struct RollingMoments {
    std::vector<double> sum;        // prefix sums of centered values
    std::vector<double> sum_sq;     // prefix sums of squared centered values
    double center = 0.0;

    explicit RollingMoments(const std::vector<double>& values) {
        center = mean(values);
        sum.resize(values.size() + 1, 0.0);
        sum_sq.resize(values.size() + 1, 0.0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double d = values[i] - center;
            sum[i + 1] = sum[i] + d;
            sum_sq[i + 1] = sum_sq[i] + d * d;
        }
    }

    double window_mean(std::size_t begin, std::size_t window) const {
        return center + (sum[begin + window] - sum[begin]) /
                            static_cast<double>(window);
    }

    double window_variance(std::size_t begin, std::size_t window) const {
        const double s1 = sum[begin + window] - sum[begin];
        const double s2 = sum_sq[begin + window] - sum_sq[begin];
        const double w = static_cast<double>(window);
        const double var = (s2 - s1 * s1 / w) / (w - 1.0);
        return var < 0.0 ? 0.0 : var;
    }
};

RegularSeries rolling_output_shell(const RegularSeries& returns,
                                   std::size_t window) {
    RegularSeries out;
    out.step = returns.step;
    out.origin = returns.origin +
                 static_cast<std::int64_t>(window - 1) * returns.step;
    out.values.resize(returns.size() - window + 1);
    return out;
}

} // namespace

RegularSeries expected_return(const RegularSeries& returns,
                              std::size_t window) {
    check_rolling_args(returns, window, "expected_return");
    RollingMoments moments(returns.values);
    RegularSeries out = rolling_output_shell(returns, window);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.values[k] = moments.window_mean(k, window);
    }
    return out;
}

RegularSeries realized_volatility(const RegularSeries& returns,
                                  std::size_t window) {
    check_rolling_args(returns, window, "realized_volatility");
    RollingMoments moments(returns.values);
    RegularSeries out = rolling_output_shell(returns, window);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.values[k] = std::sqrt(moments.window_variance(k, window));
    }
    return out;
}

} // namespace centropy
