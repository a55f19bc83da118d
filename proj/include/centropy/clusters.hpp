// clusters.hpp
// Cluster segmentation of a series against its moving average and the
// duration statistics built on top of it.
//
// A cluster is the stretch between two consecutive crossings of the series
// through its own n-sample moving average.  The deviation
//
//     eps_t = x_t - MA_n(t)
//
// is defined for t = n-1 .. N-1.  The scan opens with a crossing at the
// first such sample; afterwards a crossing is recorded at the first sample
// of every new sign regime.  A run of exact zeros counts as a single
// crossing at its first zero, and leaving the run does not add another one.
// Cluster durations are the gaps between consecutive crossings; the
// unterminated stretch after the last crossing is discarded.

#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace centropy {

// ============================================================================
// Windows and partitions
// ============================================================================

// Strictly increasing set of moving-average window lengths; every window n
// must satisfy 2 <= n <= N-1 for the series it is applied to.
using WindowSet = std::vector<std::size_t>;

// Result of segmenting one series with one window.
struct ClusterPartition {
    std::size_t window = 0;                // moving-average length n
    std::vector<std::size_t> durations;    // cluster lengths, in samples
};

// Moving average of length n over `values`; output element j averages
// values[j..j+n-1], so the result has size N - n + 1.
// Preconditions: 1 <= n <= values.size().
std::vector<double> moving_average(const std::vector<double>& values,
                                   std::size_t n);

// Segments `values` against its n-sample moving average (see file header
// for the crossing convention).  The result is invariant under any affine
// map x -> a*x + b with a != 0.
// Preconditions: 2 <= n <= N-1 and the overlap length N-n+1 >= 3.
ClusterPartition segment_clusters(const std::vector<double>& values,
                                  std::size_t n);

// ============================================================================
// Duration distributions
// ============================================================================

// Cell of a duration distribution: durations are kept per generating
// window, so mass sits on (window, duration) pairs.
struct DurationCell {
    std::size_t window = 0;
    std::size_t duration = 0;

    friend auto operator<=>(const DurationCell&, const DurationCell&) = default;
};

enum class Normalization {
    joint,      // cell mass = count / total number of clusters
    per_window, // cell mass = count / (clusters in window * number of windows)
};

// Normalized histogram of cluster durations pooled over one or more
// partitions.  Masses always sum to 1 (up to rounding); `counts` keeps the
// raw tallies so distributions can be merged without losing information.
struct DurationDistribution {
    std::map<DurationCell, double> masses;
    std::map<DurationCell, std::size_t> counts;
    std::size_t total_clusters = 0;
    Normalization normalization = Normalization::joint;
};

// Builds the distribution from one or more partitions (several partitions
// for the same window pool their counts).
// Precondition: at least one cluster in total.
DurationDistribution duration_distribution(
    const std::vector<ClusterPartition>& partitions,
    Normalization normalization = Normalization::joint);

// ============================================================================
// Duration-exponent fit
// ============================================================================

// Maximum-likelihood exponent of the power-law scaling range of a cluster
// duration histogram.  Durations are modeled as a discrete truncated power
// law p(tau) ~ tau^-alpha on the integer range 3 <= tau <= cutoff/4 and the
// likelihood equation is solved by bisection.  The range excludes the two
// ends where duration counts systematically deviate from the asymptotic
// law: the first lattice points (tau <= 2) and the band near the cutoff
// where clusters commensurate with the averaging window pile up.
// Preconditions: cutoff >= 16; at least 10 durations inside the scaling
// range; at least two distinct values among them.
double fit_duration_exponent(const std::vector<std::size_t>& durations,
                             std::size_t cutoff);

} // namespace centropy
