// numeric.cpp

#include "centropy/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace centropy {

double compensated_total(const std::vector<double>& values) noexcept {
    compensated_sum acc;
    for (double v : values) {
        acc.add(v);
    }
    return acc.value();
}

double mean(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("mean: empty input");
    }
    return compensated_total(values) / static_cast<double>(values.size());
}

double sample_variance(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw std::invalid_argument("sample_variance: need at least 2 values");
    }
    double m = mean(values);
    compensated_sum acc;
    for (double v : values) {
        double d = v - m;
        acc.add(d * d);
    }
    double var = acc.value() / static_cast<double>(values.size() - 1);
    return var < 0.0 ? 0.0 : var;
}

double sample_std(const std::vector<double>& values) {
    return std::sqrt(sample_variance(values));
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("ols_slope: size mismatch");
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("ols_slope: need at least 2 points");
    }
    double mx = mean(xs);
    double my = mean(ys);
    compensated_sum sxy;
    compensated_sum sxx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx;
        sxy.add(dx * (ys[i] - my));
        sxx.add(dx * dx);
    }
    double denom = sxx.value();
    if (denom <= 0.0) {
        throw std::invalid_argument("ols_slope: regressor has no variation");
    }
    return sxy.value() / denom;
}

} // namespace centropy
