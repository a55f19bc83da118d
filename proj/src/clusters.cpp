// clusters.cpp

#include "centropy/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "centropy/errors.hpp"
#include "centropy/numeric.hpp"

namespace centropy {

// ============================================================================
// Moving average
// ============================================================================

std::vector<double> moving_average(const std::vector<double>& values,
                                   std::size_t n) {
    const std::size_t count = values.size();
    if (n < 1) {
        throw std::invalid_argument("moving_average: window must be >= 1");
    }
    if (n > count) {
        throw std::invalid_argument(
            "moving_average: window " + std::to_string(n) +
            " exceeds series length " + std::to_string(count));
    }
    // Prefix sums keep this O(N); for the magnitudes the segmentation deals
    // in, cancellation stays far below the deviation scale.
    std::vector<double> prefix(count + 1, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        prefix[i + 1] = prefix[i] + values[i];
    }
    std::vector<double> out(count - n + 1);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j + n <= count; ++j) {
        out[j] = (prefix[j + n] - prefix[j]) * inv;
    }
    return out;
}

// ============================================================================
// Segmentation
// ============================================================================

namespace {

int sign_of(double x) {
    if (x > 0.0) return 1;
    if (x < 0.0) return -1;
    return 0;
}

} // namespace

ClusterPartition segment_clusters(const std::vector<double>& values,
                                  std::size_t n) {
    const std::size_t count = values.size();
    if (n < 2 || n + 1 > count) {
        throw std::invalid_argument(
            "segment_clusters: window must satisfy 2 <= n <= N-1 (n=" +
            std::to_string(n) + ", N=" + std::to_string(count) + ")");
    }
    const std::size_t overlap = count - n + 1;
    if (overlap < 3) {
        throw std::invalid_argument(
            "segment_clusters: overlap of length " + std::to_string(overlap) +
            " is too short to segment (need >= 3)");
    }

    const std::vector<double> ma = moving_average(values, n);
    // Deviation of the series from its own moving average over the samples
    // where both are defined: eps[i] = values[i + n - 1] - ma[i].
    std::vector<int> signs(overlap);
    for (std::size_t i = 0; i < overlap; ++i) {
        signs[i] = sign_of(values[i + n - 1] - ma[i]);
    }

    // The scan opens with a crossing at the first overlap sample; after
    // that, a crossing falls on the first sample of each new sign regime.
    // Zeros are crossings themselves: a zero run contributes one crossing
    // at its first zero and leaving the run starts a fresh regime without
    // an extra crossing.
    std::vector<std::size_t> crossings;
    crossings.push_back(0);
    int last_nonzero = 0;
    bool in_zero_run = false;
    for (std::size_t i = 0; i < overlap; ++i) {
        const int s = signs[i];
        if (s == 0) {
            if (!in_zero_run) {
                if (crossings.back() != i) {
                    crossings.push_back(i);
                }
                in_zero_run = true;
            }
        } else {
            if (in_zero_run) {
                in_zero_run = false;
            } else if (last_nonzero != 0 && s != last_nonzero) {
                crossings.push_back(i);
            }
            last_nonzero = s;
        }
    }

    ClusterPartition partition;
    partition.window = n;
    for (std::size_t k = 1; k < crossings.size(); ++k) {
        partition.durations.push_back(crossings[k] - crossings[k - 1]);
    }
    // The stretch after the final crossing never completed; it is dropped.
    return partition;
}

// ============================================================================
// Duration distributions
// ============================================================================

DurationDistribution duration_distribution(
    const std::vector<ClusterPartition>& partitions,
    Normalization normalization) {
    DurationDistribution dist;
    dist.normalization = normalization;

    std::map<std::size_t, std::size_t> per_window_totals;
    for (const ClusterPartition& part : partitions) {
        for (std::size_t duration : part.durations) {
            DurationCell cell{part.window, duration};
            dist.counts[cell] += 1;
            per_window_totals[part.window] += 1;
            dist.total_clusters += 1;
        }
    }
    if (dist.total_clusters == 0) {
        throw std::invalid_argument(
            "duration_distribution: no clusters in any partition");
    }

    if (normalization == Normalization::joint) {
        const double denom = static_cast<double>(dist.total_clusters);
        for (const auto& [cell, count] : dist.counts) {
            dist.masses[cell] = static_cast<double>(count) / denom;
        }
    } else {
        const double windows = static_cast<double>(per_window_totals.size());
        for (const auto& [cell, count] : dist.counts) {
            const double in_window =
                static_cast<double>(per_window_totals.at(cell.window));
            dist.masses[cell] =
                static_cast<double>(count) / (in_window * windows);
        }
    }
    return dist;
}

// ============================================================================
// Duration-exponent fit
// ============================================================================

namespace {

// E[ln tau] of the discrete law p(tau) ~ tau^-alpha on {lo..hi}; strictly
// decreasing in alpha, which makes the likelihood equation bisectable.
double discrete_log_mean(double alpha, std::size_t lo, std::size_t hi) {
    double z = 0.0;
    double m = 0.0;
    for (std::size_t t = lo; t <= hi; ++t) {
        const double tau = static_cast<double>(t);
        const double w = std::pow(tau, -alpha);
        z += w;
        m += w * std::log(tau);
    }
    return m / z;
}

} // namespace

double fit_duration_exponent(const std::vector<std::size_t>& durations,
                             std::size_t cutoff) {
    if (cutoff < 16) {
        throw std::invalid_argument(
            "fit_duration_exponent: cutoff must be >= 16");
    }
    // Duration histograms deviate from the asymptotic power law at both
    // ends: lattice effects flatten the first couple of counts, and
    // clusters commensurate with the averaging window pile up below the
    // cutoff.  The likelihood is therefore restricted to the interior
    // scaling range.
    const std::size_t range_lo = 3;
    const std::size_t range_hi = cutoff / 4;

    std::vector<double> logs;
    bool distinct = false;
    std::size_t first = 0;
    for (std::size_t d : durations) {
        if (d < range_lo || d > range_hi) {
            continue;
        }
        if (logs.empty()) {
            first = d;
        } else if (d != first) {
            distinct = true;
        }
        logs.push_back(std::log(static_cast<double>(d)));
    }
    if (logs.size() < 10) {
        throw std::invalid_argument(
            "fit_duration_exponent: need at least 10 durations in the "
            "scaling range, have " + std::to_string(logs.size()));
    }
    if (!distinct) {
        throw numeric_error(
            "fit_duration_exponent: all durations in the scaling range are "
            "equal");
    }

    const double target = compensated_total(logs) / static_cast<double>(logs.size());

    // E[ln tau] is decreasing in alpha, so bisect on the bracket below.
    double lo = 1.0 + 1e-6;
    double hi = 20.0;
    const double flo = discrete_log_mean(lo, range_lo, range_hi) - target;
    const double fhi = discrete_log_mean(hi, range_lo, range_hi) - target;
    if (flo < 0.0) {
        return lo; // sample is heavier than any admissible power law
    }
    if (fhi > 0.0) {
        return hi; // sample is steeper than the bracket allows
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = discrete_log_mean(mid, range_lo, range_hi) - target;
        if (fmid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace centropy
