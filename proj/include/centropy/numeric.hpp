// numeric.hpp
// Small numerical helpers used across the library: compensated summation,
// moments, and ordinary least squares on a single regressor.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace centropy {

// ============================================================================
// Compensated (Neumaier) summation
// ============================================================================

// Accumulates doubles with a running compensation term so that long
// alternating-sign sums keep close to full precision.  The result is
// deterministic for a fixed insertion order.
class compensated_sum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_total(const std::vector<double>& values) noexcept;

// ============================================================================
// Moments
// ============================================================================

// Arithmetic mean.  Precondition: values is non-empty.
double mean(const std::vector<double>& values);

// Sample standard deviation with divisor (n - 1).
// Precondition: values.size() >= 2.
double sample_std(const std::vector<double>& values);

// Sample variance with divisor (n - 1).  Precondition: values.size() >= 2.
double sample_variance(const std::vector<double>& values);

// ============================================================================
// Regression
// ============================================================================

// Slope of the least-squares line through (xs[i], ys[i]).
// Preconditions: equal sizes, at least two points, xs not all equal.
double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace centropy
