// fbm.hpp
// Fractional Brownian motion sample paths, Hurst-exponent estimation, and
// model duration distributions used as reference inputs for the relative
// entropy measures.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "centropy/clusters.hpp"
#include "centropy/series.hpp"

namespace centropy {

// Parameters of a fractional Brownian motion ensemble.
//
// Invariants: 0 < hurst < 1, length >= 16, ensemble >= 1.
struct FbmSpec {
    double hurst = 0.5;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::size_t ensemble = 1;
};

// One path of fractional Brownian motion with unit-variance increments,
// starting at zero, sampled at integer times 0..length-1.
//
// The same spec always yields bit-identical output.  Path i of an ensemble
// is the single path generated with seed `spec.seed + i`; generate_fbm
// itself always returns the path for `spec.seed` (ensembles are handled by
// the helpers below).
//
// hurst == 0.5 reduces to a plain cumulative sum of i.i.d. standard normal
// draws from the seeded generator.
RegularSeries generate_fbm(const FbmSpec& spec);

// All `spec.ensemble` paths, path i seeded with spec.seed + i.
std::vector<RegularSeries> generate_fbm_ensemble(const FbmSpec& spec);

// Estimates the Hurst exponent from the scaling of the mean squared
// increment E|x(t+tau) - x(t)|^2 ~ tau^{2H}: half the slope of the log-log
// least squares fit over lags 1..max_lag.
//
// Preconditions: values.size() >= 4 * max_lag and max_lag >= 2.
double estimate_hurst(const std::vector<double>& values, std::size_t max_lag);

// Duration distribution of an fBm model ensemble: every path of `spec` is
// segmented with every window in `windows` and the resulting partitions are
// pooled into a single distribution under the requested normalization.
DurationDistribution model_duration_distribution(
    const FbmSpec& spec, const WindowSet& windows,
    Normalization normalization = Normalization::joint);

namespace detail {

// Deterministic stream of standard normal draws: a seeded mt19937_64 mapped
// through the Box-Muller transform.  Draw order is part of the
// reproducibility contract of generate_fbm.
class gaussian_stream {
public:
    explicit gaussian_stream(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace detail

} // namespace centropy
